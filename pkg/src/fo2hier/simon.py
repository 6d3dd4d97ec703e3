"""Subword sets, the congruence ~_k and the quotient monoid A*/~_k."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import BudgetExceeded, UnknownLetter
from .monoid import FiniteMonoid, Morphism

DEFAULT_QUOTIENT_BUDGET = 100_000


def _length_lex(w: str):
    return (len(w), w)


@dataclass(frozen=True)
class SubwordClass:
    """The set of subwords of length <= k of some word (always contains "")."""

    alphabet: tuple[str, ...]
    k: int
    members: frozenset[str]

    @property
    def sorted_members(self) -> list[str]:
        order = {a: i for i, a in enumerate(self.alphabet)}
        return sorted(self.members, key=lambda w: (len(w), [order[c] for c in w]))

    def restrict(self, k: int) -> SubwordClass:
        return SubwordClass(self.alphabet, k, frozenset(w for w in self.members if len(w) <= k))

    def __mul__(self, other: SubwordClass) -> SubwordClass:
        k = self.k
        return SubwordClass(
            self.alphabet,
            k,
            frozenset(r + s for r in self.members for s in other.members if len(r) + len(s) <= k),
        )

    def __str__(self):
        return "{" + ", ".join(w or "ε" for w in self.sorted_members) + "}"


def subword_class(word: str, k: int, alphabet: Sequence[str] | None = None) -> SubwordClass:
    """Subwords of ``word`` of length at most ``k``, by dynamic programming over prefixes."""
    letters = tuple(alphabet) if alphabet is not None else tuple(sorted(set(word)))
    allowed = set(letters)
    members = {""}
    for a in word:
        if a not in allowed:
            raise UnknownLetter(a)
        members |= {u + a for u in members if len(u) < k}
    return SubwordClass(letters, k, frozenset(members))


def equivalent_k(u: str, v: str, k: int) -> bool:
    letters = tuple(sorted(set(u) | set(v)))
    return subword_class(u, k, letters) == subword_class(v, k, letters)


@dataclass(frozen=True)
class SimonQuotient:
    alphabet: tuple[str, ...]
    k: int
    monoid: FiniteMonoid
    morphism: Morphism
    classes: tuple[SubwordClass, ...]

    @cached_property
    def index(self) -> dict[frozenset, int]:
        return {c.members: i for i, c in enumerate(self.classes)}

    def class_of(self, word: str) -> int:
        return self.index[subword_class(word, self.k, self.alphabet).members]

    def __iter__(self):
        return iter((self.monoid, self.morphism))


def simon_quotient(alphabet: Sequence[str], k: int, size_budget: int = DEFAULT_QUOTIENT_BUDGET) -> SimonQuotient:
    """A*/~_k with the projection psi_k.

    Elements are numbered breadth-first from the class of the empty word;
    names are length-lex first representatives.
    """
    letters = tuple(alphabet)
    if k < 0:
        raise ValueError("k must be non-negative")
    unit = SubwordClass(letters, k, frozenset([""]))
    letter_classes = [subword_class(a, k, letters) for a in letters]
    classes = [unit]
    names = [""]
    index = {unit.members: 0}
    for x in classes:
        for a, ca in zip(letters, letter_classes):
            y = x * ca
            if y.members not in index:
                if len(classes) >= size_budget:
                    raise BudgetExceeded(
                        f"A*/~_{k} over {len(letters)} letters exceeds {size_budget} elements",
                        len(classes),
                    )
                index[y.members] = len(classes)
                classes.append(y)
                names.append(names[index[x.members]] + a)
    table = tuple(tuple(index[(x * y).members] for y in classes) for x in classes)
    monoid = FiniteMonoid(table, 0, tuple(n or "1" for n in names))
    morphism = Morphism(letters, monoid, tuple(index[c.members] for c in letter_classes))
    return SimonQuotient(letters, k, monoid, morphism, tuple(classes))
