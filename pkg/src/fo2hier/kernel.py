"""Kernel categories of a pair of morphisms  M <-phi- A* -psi-> N.

Objects are all pairs (n1, n2) of N.  An arrow (n1, n2) -u-> (n1', n2')
needs n1' = n1 psi(u) and psi(u) n2' = n2.  Two coterminal arrows u, u' are
identified when phi(v u w) = phi(v u' w) for all v, w with psi(v) = n1 and
psi(w) = n2'.  Since phi(vuw) = phi(v) phi(u) phi(w), the quantifier ranges
over the finite context set ``contexts(n) = {phi(v) : psi(v) = n}``, read off
the submonoid of M x N generated by the letter pairs.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import prod

from .errors import BudgetExceeded, IllDefinedProduct, InconsistentArrow
from .monoid import FiniteMonoid, Morphism, direct_product

DEFAULT_KERNEL_MAX_N = 64
DEFAULT_WITNESS_CAP = 100_000

Obj = tuple[int, int]


@dataclass(frozen=True)
class PairClosure:
    phi: Morphism
    psi: Morphism
    pairs: tuple[tuple[int, int], ...]
    witness: dict = field(compare=False)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.phi.alphabet

    @property
    def m(self) -> FiniteMonoid:
        return self.phi.target

    @property
    def n(self) -> FiniteMonoid:
        return self.psi.target

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        """fibers[n] = sorted phi-images of words with psi-image n."""
        out: list[set] = [set() for _ in self.n.elements]
        for m, n in self.pairs:
            out[n].add(m)
        return tuple(tuple(sorted(s)) for s in out)

    def contexts(self, n: int) -> tuple[int, ...]:
        return self.fibers[n]

    # left and right context sets coincide; both names kept for readability
    R = contexts
    L = contexts

    @cached_property
    def right_stabilizers(self) -> tuple[frozenset[int], ...]:
        t = self.n.table
        return tuple(frozenset(x for x in self.n.elements if t[p][x] == p) for p in self.n.elements)

    @cached_property
    def left_stabilizers(self) -> tuple[frozenset[int], ...]:
        t = self.n.table
        return tuple(frozenset(x for x in self.n.elements if t[x][s] == s) for s in self.n.elements)

    @cached_property
    def left_divisions(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """(n, n2) -> all n2' with n * n2' = n2."""
        t = self.n.table
        out: dict = {}
        for x in self.n.elements:
            for y in self.n.elements:
                out.setdefault((x, t[x][y]), []).append(y)
        return {key: tuple(v) for key, v in out.items()}

    def is_loop(self, obj: Obj, n: int) -> bool:
        p, s = obj
        return n in self.right_stabilizers[p] and n in self.left_stabilizers[s]

    def loop_witness(self, obj: Obj, m: int) -> str:
        """Shortest stored word with phi-image m that labels a loop at obj."""
        words = [self.witness[(mm, n)] for mm, n in self.pairs if mm == m and self.is_loop(obj, n)]
        if not words:
            raise InconsistentArrow(f"{m} labels no loop at {obj}")
        return min(words, key=lambda w: (len(w), w))

    def loop_elements(self, obj: Obj) -> tuple[int, ...]:
        p, s = obj
        ns = self.right_stabilizers[p] & self.left_stabilizers[s]
        return tuple(sorted({m for m, n in self.pairs if n in ns}))


def pair_closure(phi: Morphism, psi: Morphism) -> PairClosure:
    """Submonoid of M x N generated by (phi(a), psi(a)), breadth-first, with witness words."""
    if tuple(phi.alphabet) != tuple(psi.alphabet):
        raise ValueError("phi and psi must share one alphabet")
    tm, tn = phi.target.table, psi.target.table
    start = (phi.target.identity, psi.target.identity)
    witness = {start: ""}
    queue = deque([start])
    letters = list(zip(phi.alphabet, phi.images, psi.images))
    while queue:
        m, n = queue.popleft()
        w = witness[(m, n)]
        for a, ma, na in letters:
            y = (tm[m][ma], tn[n][na])
            if y not in witness:
                witness[y] = w + a
                queue.append(y)
    return PairClosure(phi, psi, tuple(witness), witness)


def transduce(psi: Morphism, word: str) -> tuple[tuple[int, str, int], ...]:
    """Letter i becomes (psi(prefix before i), a_i, psi(suffix after i))."""
    t = psi.target.table
    img = psi.letter_image
    k = len(word)
    pre = [psi.target.identity] * (k + 1)
    for i, a in enumerate(word):
        pre[i + 1] = t[pre[i]][img[a]]
    suf = [psi.target.identity] * (k + 1)
    for i in range(k - 1, -1, -1):
        suf[i] = t[img[word[i]]][suf[i + 1]]
    return tuple((pre[i], word[i], suf[i + 1]) for i in range(k))


def arrow_key(pc: PairClosure, n1: int, n2_target: int, m: int) -> tuple[int, ...]:
    """The context function (c1, c2) -> c1 m c2 over contexts(n1) x contexts(n2')."""
    t = pc.m.table
    right = pc.contexts(n2_target)
    return tuple(t[t[c1][m]][c2] for c1 in pc.contexts(n1) for c2 in right)


def _check_arrow(pc: PairClosure, src: Obj, tgt: Obj, m: int):
    (n1, n2), (n1p, n2p) = src, tgt
    t = pc.n.table
    for mm, n in pc.pairs:
        if mm == m and t[n1][n] == n1p and t[n][n2p] == n2:
            return
    raise InconsistentArrow(f"no word with phi-image {m} labels an arrow {src} -> {tgt}")


def arrows_equivalent(pc: PairClosure, src: Obj, tgt: Obj, m1: int, m2: int) -> bool:
    _check_arrow(pc, src, tgt, m1)
    _check_arrow(pc, src, tgt, m2)
    return arrow_key(pc, src[0], tgt[1], m1) == arrow_key(pc, src[0], tgt[1], m2)


@dataclass(frozen=True)
class ArrowClass:
    source: Obj
    target: Obj
    key: tuple[int, ...]
    representative: int
    witness: str


@dataclass(frozen=True)
class BaseMonoid:
    obj: Obj
    monoid: FiniteMonoid
    representatives: tuple[int, ...]  # least phi-image in each class
    quotient: dict = field(compare=False)  # loop phi-image -> element

    def element_of(self, m: int) -> int:
        return self.quotient[m]


def _base_from_loops(pc: PairClosure, obj: Obj, loops: tuple[int, ...]) -> BaseMonoid:
    p, s = obj
    t = pc.m.table
    keys: dict = {}
    groups: list[list[int]] = []
    for m in loops:  # ascending, so each group's first entry is its least member
        key = arrow_key(pc, p, s, m)
        if key not in keys:
            keys[key] = len(groups)
            groups.append([])
        groups[keys[key]].append(m)
    quotient = {m: keys[arrow_key(pc, p, s, m)] for m in loops}
    reps = tuple(g[0] for g in groups)
    table = []
    for g1 in groups:
        row = []
        for g2 in groups:
            vals = {quotient.get(t[a][b]) for a in g1 for b in g2}
            if len(vals) != 1 or None in vals:
                raise IllDefinedProduct(f"loop classes at {obj} do not multiply consistently")
            row.append(vals.pop())
        table.append(tuple(row))
    names = tuple(pc.m.name(r) for r in reps)
    monoid = FiniteMonoid(tuple(table), quotient[pc.m.identity], names)
    return BaseMonoid(obj, monoid, reps, quotient)


def base_monoid(pc: PairClosure, p: int, s: int) -> BaseMonoid:
    """Loop arrows at (P, S) modulo arrow equivalence."""
    return _base_from_loops(pc, (p, s), pc.loop_elements((p, s)))


def all_objects(pc: PairClosure) -> list[Obj]:
    return [(a, b) for a in pc.n.elements for b in pc.n.elements]


def base_monoids(pc: PairClosure, max_objects: int | None = None) -> dict[Obj, BaseMonoid]:
    """Base monoids at every object.

    Objects with the same loop set and context sets share one construction.
    """
    objs = all_objects(pc)
    if max_objects is not None and len(objs) > max_objects:
        raise BudgetExceeded(f"{len(objs)} objects exceed the budget of {max_objects}", len(objs))
    cache: dict = {}
    out = {}
    for obj in objs:
        loops = pc.loop_elements(obj)
        sig = (loops, pc.contexts(obj[0]), pc.contexts(obj[1]))
        if sig not in cache:
            cache[sig] = _base_from_loops(pc, obj, loops)
        b = cache[sig]
        out[obj] = b if b.obj == obj else BaseMonoid(obj, b.monoid, b.representatives, b.quotient)
    return out


@dataclass(frozen=True)
class KernelCategory:
    closure: PairClosure
    objects: tuple[Obj, ...]
    arrows: dict  # (src, tgt) -> tuple[ArrowClass, ...]
    bases: dict  # obj -> BaseMonoid

    @property
    def arrow_count(self) -> int:
        return sum(len(v) for v in self.arrows.values())

    def classify(self, src: Obj, tgt: Obj, m: int) -> ArrowClass:
        key = arrow_key(self.closure, src[0], tgt[1], m)
        for arrow in self.arrows[(src, tgt)]:
            if arrow.key == key:
                return arrow
        raise InconsistentArrow(f"{m} is not an arrow {src} -> {tgt}")

    def compose(self, first: ArrowClass, second: ArrowClass) -> ArrowClass:
        if first.target != second.source:
            raise InconsistentArrow("arrows are not consecutive")
        m = self.closure.m.table[first.representative][second.representative]
        return self.classify(first.source, second.target, m)

    def to_dict(self) -> dict:
        pc = self.closure
        objects = []
        for obj in self.objects:
            b = self.bases[obj]
            out_count = sum(len(v) for (s, _), v in self.arrows.items() if s == obj)
            objects.append(
                {
                    "object": [obj[0], obj[1]],
                    "names": [pc.n.name(obj[0]), pc.n.name(obj[1])],
                    "arrows_out": out_count,
                    "base_monoid": b.monoid.to_dict(),
                    "base_witnesses": [pc.loop_witness(obj, r) for r in b.representatives],
                }
            )
        return {
            "alphabet": list(pc.alphabet),
            "m_size": pc.m.size,
            "n_size": pc.n.size,
            "closure_size": len(pc.pairs),
            "closure_witnesses": [[m, n, pc.witness[(m, n)]] for (m, n) in sorted(pc.pairs)],
            "object_count": len(self.objects),
            "arrow_count": self.arrow_count,
            "objects": objects,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def kernel_category(pc: PairClosure, max_n: int = DEFAULT_KERNEL_MAX_N) -> KernelCategory:
    """Objects, every arrow class between every object pair, and the base monoids."""
    if pc.n.size > max_n:
        raise BudgetExceeded(f"|N| = {pc.n.size} exceeds the kernel budget of {max_n}", pc.n.size)
    tn = pc.n.table
    objects = tuple(all_objects(pc))
    arrows: dict = {}
    divisions = pc.left_divisions
    for (n1, n2) in objects:
        for (m, n) in pc.pairs:
            n1p = tn[n1][n]
            for n2p in divisions.get((n, n2), ()):
                bucket = arrows.setdefault(((n1, n2), (n1p, n2p)), {})
                key = arrow_key(pc, n1, n2p, m)
                if key not in bucket or m < bucket[key].representative:
                    bucket[key] = ArrowClass((n1, n2), (n1p, n2p), key, m, pc.witness[(m, n)])
    frozen = {
        st: tuple(sorted(b.values(), key=lambda a: a.representative)) for st, b in sorted(arrows.items())
    }
    return KernelCategory(pc, objects, frozen, base_monoids(pc))


@dataclass(frozen=True)
class LocalGlobalWitness:
    """The monoid P(N x N) x prod M_{P,S} and the morphism h on N x A x N.

    h sends (P, a, S) to ({(P, S)}, ...) with the (P, S) component equal to
    the loop class of a when a is a loop at (P, S), and 1 in every other
    component.  Elements of the product are kept as tuples; the table is
    only materialized on request.
    """

    closure: PairClosure
    bases: dict

    @cached_property
    def objects(self) -> tuple[Obj, ...]:
        return tuple(sorted(self.bases))

    @property
    def size(self) -> int:
        n = self.closure.n.size
        return 2 ** (n * n) * prod(self.bases[o].monoid.size for o in self.objects)

    def identity(self):
        return (frozenset(), tuple(self.bases[o].monoid.identity for o in self.objects))

    def h_letter(self, sigma):
        p, a, s = sigma
        pc = self.closure
        comps = []
        ma = pc.phi.letter_image[a]
        na = pc.psi.letter_image[a]
        for o in self.objects:
            b = self.bases[o]
            if o == (p, s) and pc.is_loop(o, na):
                comps.append(b.element_of(ma))
            else:
                comps.append(b.monoid.identity)
        return (frozenset([(p, s)]), tuple(comps))

    def multiply(self, x, y):
        tabs = [self.bases[o].monoid.table for o in self.objects]
        return (x[0] | y[0], tuple(t[a][b] for t, a, b in zip(tabs, x[1], y[1])))

    def h(self, sigmas):
        acc = self.identity()
        for sigma in sigmas:
            acc = self.multiply(acc, self.h_letter(sigma))
        return acc

    def factorization_check(self, w: str, w2: str) -> bool:
        """psi(w) = psi(w') and h(tau(w)) = h(tau(w')) must force phi(w) = phi(w')."""
        pc = self.closure
        if pc.psi(w) != pc.psi(w2):
            return True
        if self.h(transduce(pc.psi, w)) != self.h(transduce(pc.psi, w2)):
            return True
        return pc.phi(w) == pc.phi(w2)

    def witness_monoid(self, cap: int = DEFAULT_WITNESS_CAP):
        """Materialize the product monoid; returns ``(monoid, encode)``."""
        if self.size > cap:
            raise BudgetExceeded(f"witness monoid has {self.size} elements (cap {cap})", self.size)
        pairs = [(a, b) for a in self.closure.n.elements for b in self.closure.n.elements]
        subsets = [frozenset(q for i, q in enumerate(pairs) if mask >> i & 1) for mask in range(1 << len(pairs))]
        index = {s: i for i, s in enumerate(subsets)}
        table = tuple(tuple(index[a | b] for b in subsets) for a in subsets)
        acc = FiniteMonoid(table, index[frozenset()])
        for o in self.objects:
            acc, _ = direct_product(acc, self.bases[o].monoid)
        sizes = [self.bases[o].monoid.size for o in self.objects]

        def encode(x) -> int:
            code = index[x[0]]
            for comp, size in zip(x[1], sizes):
                code = code * size + comp
            return code

        return acc, encode


def local_global_witness(pc: PairClosure) -> LocalGlobalWitness:
    return LocalGlobalWitness(pc, base_monoids(pc))
