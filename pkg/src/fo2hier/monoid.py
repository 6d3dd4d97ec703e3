"""Finite monoids given by explicit multiplication tables.

Elements are dense integers ``0 .. size-1``; ``table[a][b]`` is the product
``ab``.  Every value here is immutable once built.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BadIdentity,
    BudgetExceeded,
    IndexOutOfRange,
    NonAssociative,
    UnknownLetter,
)

DIVIDES_MAX_SIZE = 8


@dataclass(frozen=True, eq=True)
class FiniteMonoid:
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    names: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elements: Iterable[int]) -> int:
        acc = self.identity
        t = self.table
        for x in elements:
            acc = t[acc][x]
        return acc

    def name(self, a: int) -> str:
        if self.names is not None:
            return self.names[a]
        return str(a)

    @cached_property
    def omega_table(self) -> tuple[int, ...]:
        return tuple(omega(self, a) for a in self.elements)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if self.table[a][a] == a)

    def relabel(self, order: Sequence[int]) -> FiniteMonoid:
        """Return the isomorphic copy whose element ``i`` is ``order[i]`` of self."""
        inv = {old: new for new, old in enumerate(order)}
        t = self.table
        table = tuple(tuple(inv[t[a][b]] for b in order) for a in order)
        names = None if self.names is None else tuple(self.names[a] for a in order)
        return FiniteMonoid(table, inv[self.identity], names)

    def canonical(self) -> FiniteMonoid:
        """Move the identity to index 0, keeping the relative order of the rest."""
        if self.identity == 0:
            return self
        order = [self.identity] + [a for a in self.elements if a != self.identity]
        return self.relabel(order)

    # serialization

    def to_dict(self) -> dict:
        m = self.canonical()
        d = {"size": m.size, "identity": 0, "table": [list(row) for row in m.table]}
        if m.names is not None:
            d["names"] = list(m.names)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> FiniteMonoid:
        m = from_table(d["size"], d["table"], d.get("identity", 0), d.get("names"))
        return m.canonical()

    @classmethod
    def loads(cls, s: str) -> FiniteMonoid:
        return cls.from_dict(json.loads(s))


def from_table(size: int, table, identity: int = 0, names=None) -> FiniteMonoid:
    """Validate a multiplication table and wrap it.

    Raises IndexOutOfRange, BadIdentity or NonAssociative (with a witness
    triple).  Associativity is checked in full, so this is cubic in size.
    """
    if size < 1:
        raise IndexOutOfRange("a monoid needs at least one element")
    if len(table) != size or any(len(row) != size for row in table):
        raise IndexOutOfRange(f"table must be {size}x{size}")
    if not 0 <= identity < size:
        raise IndexOutOfRange(f"identity {identity} out of range")
    t = tuple(tuple(int(x) for x in row) for row in table)
    for row in t:
        for x in row:
            if not 0 <= x < size:
                raise IndexOutOfRange(f"table entry {x} out of range")
    if names is not None:
        names = tuple(str(n) for n in names)
        if len(names) != size:
            raise IndexOutOfRange("names must have one entry per element")
    for a in range(size):
        if t[identity][a] != a or t[a][identity] != a:
            raise BadIdentity(a)
    for a in range(size):
        ta = t[a]
        for b in range(size):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(size):
                if tab[c] != ta[tb[c]]:
                    raise NonAssociative(a, b, c)
    return FiniteMonoid(t, identity, names)


def omega(m: FiniteMonoid, a: int) -> int:
    """The idempotent power of ``a``.

    Walks a, a^2, ... for at most 2*|M| steps; the first idempotent power is
    the unique one.
    """
    t = m.table
    p = a
    for _ in range(2 * m.size + 1):
        if t[p][p] == p:
            return p
        p = t[p][a]
    raise AssertionError("no idempotent power found; table is not a finite monoid")


def closure(m: FiniteMonoid, generators: Iterable[int]):
    """Submonoid generated by ``generators``.

    Returns ``(elements, witness)`` where ``witness[x]`` is a tuple of
    generators whose product is ``x``.  Breadth-first search, so witnesses
    are shortest words in the generators (ties broken by generator order).
    """
    gens = sorted(set(generators))
    t = m.table
    witness = {m.identity: ()}
    queue = deque([m.identity])
    while queue:
        x = queue.popleft()
        wx = witness[x]
        for g in gens:
            y = t[x][g]
            if y not in witness:
                witness[y] = wx + (g,)
                queue.append(y)
    return frozenset(witness), witness


def direct_product(m: FiniteMonoid, n: FiniteMonoid):
    """Componentwise product.  Element ``(i, j)`` is stored as ``i*|N| + j``.

    Returns the product monoid and the two projection maps as tuples.
    """
    sn = n.size
    pairs = [(i, j) for i in m.elements for j in n.elements]
    table = tuple(
        tuple(m.table[i][k] * sn + n.table[j][l] for (k, l) in pairs) for (i, j) in pairs
    )
    names = None
    if m.names is not None or n.names is not None:
        names = tuple(f"({m.name(i)},{n.name(j)})" for (i, j) in pairs)
    prod = FiniteMonoid(table, m.identity * sn + n.identity, names)
    return prod, (tuple(i for i, _ in pairs), tuple(j for _, j in pairs))


def two_sided_ideal(m: FiniteMonoid, s: int) -> frozenset[int]:
    t = m.table
    left = {t[x][s] for x in m.elements}
    return frozenset(t[y][z] for y in left for z in m.elements)


def structural_j_check(m: FiniteMonoid) -> bool:
    """True iff distinct elements generate distinct two-sided ideals."""
    seen = set()
    for s in m.elements:
        ideal = two_sided_ideal(m, s)
        if ideal in seen:
            return False
        seen.add(ideal)
    return True


def structural_da_check(m: FiniteMonoid) -> bool:
    """True iff e = e M_e e for every idempotent e.

    M_e is the submonoid generated by the elements whose ideal contains e.
    """
    t = m.table
    ideals = [two_sided_ideal(m, s) for s in m.elements]
    for e in m.idempotents:
        gens = [x for x in m.elements if e in ideals[x]]
        sub, _ = closure(m, gens)
        if any(t[t[e][x]][e] != e for x in sub):
            return False
    return True


def _submonoids(n: FiniteMonoid):
    found = set()
    others = [x for x in n.elements if x != n.identity]
    for mask in range(1 << len(others)):
        gens = [others[i] for i in range(len(others)) if mask >> i & 1]
        sub, _ = closure(n, gens)
        if sub not in found:
            found.add(sub)
            yield sub


def _generators(n: FiniteMonoid, sub: frozenset[int]) -> list[int]:
    gens: list[int] = []
    reached = frozenset([n.identity])
    for s in sorted(sub):
        if s not in reached:
            gens.append(s)
            reached, _ = closure(n, gens)
    return gens


def _surjects(n: FiniteMonoid, gens: list[int], m: FiniteMonoid) -> bool:
    tn, tm = n.table, m.table

    def extend(images: list[int]) -> bool:
        k = len(images)
        active = gens[:k]
        f = {n.identity: m.identity}
        queue = deque([n.identity])
        while queue:
            x = queue.popleft()
            for g, img in zip(active, images):
                y = tn[x][g]
                val = tm[f[x]][img]
                if y in f:
                    if f[y] != val:
                        return False
                else:
                    f[y] = val
                    queue.append(y)
        if k == len(gens):
            return len(set(f.values())) == m.size
        return any(extend(images + [img]) for img in m.elements)

    return extend([])


def divides(m: FiniteMonoid, n: FiniteMonoid, max_size: int = DIVIDES_MAX_SIZE) -> bool:
    """Exhaustive test of M < N (M a homomorphic image of a submonoid of N).

    Oracle use only: the search is exponential, so N is capped at
    ``max_size`` elements.
    """
    if n.size > max_size:
        raise BudgetExceeded(f"divides is limited to |N| <= {max_size}, got {n.size}", n.size)
    if m.size > n.size:
        return False
    for sub in _submonoids(n):
        if len(sub) < m.size:
            continue
        if _surjects(n, _generators(n, sub), m):
            return True
    return False


@dataclass(frozen=True)
class Morphism:
    """A letter assignment into a finite monoid, extended to words."""

    alphabet: tuple[str, ...]
    target: FiniteMonoid
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise IndexOutOfRange("one image per letter is required")
        for x in self.images:
            if not 0 <= x < self.target.size:
                raise IndexOutOfRange(f"letter image {x} out of range")

    @classmethod
    def from_mapping(cls, alphabet: Sequence[str], target: FiniteMonoid, letter_image: dict) -> Morphism:
        return cls(tuple(alphabet), target, tuple(letter_image[a] for a in alphabet))

    @cached_property
    def letter_image(self) -> dict[str, int]:
        return dict(zip(self.alphabet, self.images))

    def __call__(self, word: Iterable[str]) -> int:
        return apply_morphism(self, word)

    def is_surjective(self) -> bool:
        sub, _ = closure(self.target, self.images)
        return len(sub) == self.target.size


def apply_morphism(phi: Morphism, word: Iterable[str]) -> int:
    img = phi.letter_image
    t = phi.target.table
    acc = phi.target.identity
    for a in word:
        try:
            acc = t[acc][img[a]]
        except KeyError:
            raise UnknownLetter(a) from None
    return acc


# small named monoids


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(((0,),), 0, ("1",))


def u1() -> FiniteMonoid:
    """{1, 0} under multiplication."""
    return FiniteMonoid(((0, 1), (1, 1)), 0, ("1", "0"))


def cyclic_group(order: int) -> FiniteMonoid:
    table = tuple(tuple((i + j) % order for j in range(order)) for i in range(order))
    names = ("1",) + tuple(f"g^{i}" for i in range(1, order))
    return FiniteMonoid(table, 0, names)


def monogenic_monoid(index: int, period: int = 1) -> FiniteMonoid:
    """Monoid {1, a, a^2, ...} with a^(index+period) = a^index, index >= 1.

    Element i is a^i for i >= 1.  Aperiodic exactly when period == 1.
    """
    if index < 1 or period < 1:
        raise ValueError("index and period must be positive")
    size = index + period

    def power(e):
        if e < size:
            return e
        return index + (e - index) % period

    table = tuple(tuple(power(i + j) for j in range(size)) for i in range(size))
    names = ("1",) + tuple(f"a^{i}" for i in range(1, size))
    return FiniteMonoid(table, 0, names)


def union_semilattice(subsets: Sequence[frozenset]) -> FiniteMonoid:
    """Monoid of the given subsets under union; must contain the empty set and be closed."""
    index = {s: i for i, s in enumerate(subsets)}
    table = tuple(tuple(index[a | b] for b in subsets) for a in subsets)
    return from_table(len(subsets), table, index[frozenset()])
