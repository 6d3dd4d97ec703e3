"""Enumerated and hand-picked monoids used for exhaustive checking."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .language import Dfa, RecognizedLanguage, language_from_spec, syntactic_monoid
from .monoid import FiniteMonoid, cyclic_group, trivial_monoid, u1


def minimal_dfas(alphabet: Sequence[str], max_states: int) -> list[Dfa]:
    """Every minimal complete DFA with at most ``max_states`` states, up to isomorphism."""
    letters = tuple(alphabet)
    seen = {}
    for n in range(1, max_states + 1):
        for flat in product(range(n), repeat=n * len(letters)):
            delta = tuple(tuple(flat[q * len(letters) : (q + 1) * len(letters)]) for q in range(n))
            for mask in range(1 << n):
                acc = frozenset(q for q in range(n) if mask >> q & 1)
                d = Dfa(letters, n, 0, acc, delta).minimize()
                seen.setdefault((d.states, d.accepting, d.delta), d)
    return list(seen.values())


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    monoid: FiniteMonoid
    generator_count: int
    language: RecognizedLanguage | None = None


def curated() -> list[CorpusEntry]:
    entries = [
        CorpusEntry("trivial", trivial_monoid(), 1),
        CorpusEntry("U1", u1(), 1),
        CorpusEntry("Z3", cyclic_group(3), 1),
    ]
    for name, regex, alphabet in [
        ("aA*", "a(a|b)*", None),
        ("(ab)*", "(ab)*", None),
        ("contains-a", "(a|b)*a(a|b)*", None),
        ("a", "a", None),
        ("A*ab A*", "(a|b)*ab(a|b)*", None),
        ("aA*b", "a(a|b)*b", None),
        ("A*a A*b A*c A*", "(a|b|c)*a(a|b|c)*b(a|b|c)*c(a|b|c)*", None),
    ]:
        r = language_from_spec(regex, alphabet=alphabet)
        entries.append(CorpusEntry(name, r.monoid, len(r.alphabet), r))
    return entries


def corpus(max_binary: int = 3, max_unary: int = 4) -> list[CorpusEntry]:
    """Syntactic monoids of all small minimal DFAs plus the curated examples."""
    out = curated()
    for alphabet, bound in (("a", max_unary), ("ab", max_binary)):
        for i, d in enumerate(minimal_dfas(alphabet, bound)):
            r = syntactic_monoid(d)
            out.append(CorpusEntry(f"dfa-{alphabet}-{i}", r.monoid, len(alphabet), r))
    return out
