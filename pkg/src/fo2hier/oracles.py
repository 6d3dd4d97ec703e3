"""Slow brute-force oracles over word enumerations.

Each function here recomputes something the fast modules derive
algebraically, straight from definitions about words.  They exist to be
compared against, not to be fast.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import InconsistentArrow
from .kernel import PairClosure
from .language import Dfa


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterator[str]:
    """All words of length <= max_len in length-lexicographic order."""
    for n in range(max_len + 1):
        for letters in product(alphabet, repeat=n):
            yield "".join(letters)


def brute_syntactic_congruence(
    d: Dfa, max_len: int, context_len: int | None = None
) -> list[list[str]]:
    """Partition the words of length <= max_len by their two-sided behaviour.

    Two words fall together when x u y and x v y agree on membership for
    every context x, y of length <= context_len (default max_len).  Only
    ``d.accepts`` is used, as a black box.
    """
    if context_len is None:
        context_len = max_len
    contexts = list(words_up_to(d.alphabet, context_len))
    classes: dict[tuple, list[str]] = {}
    for u in words_up_to(d.alphabet, max_len):
        sig = tuple(d.accepts(x + u + y) for x in contexts for y in contexts)
        classes.setdefault(sig, []).append(u)
    return list(classes.values())


def brute_subwords(word: str, k: int) -> frozenset[str]:
    """Scattered subwords of length <= k, by choosing position sets."""
    out = set()
    for n in range(min(k, len(word)) + 1):
        for pos in combinations(range(len(word)), n):
            out.add("".join(word[i] for i in pos))
    return frozenset(out)


@dataclass(frozen=True)
class SimonCount:
    count: int
    representatives: tuple[str, ...]
    stabilized: bool


def brute_simon_classes(alphabet: Sequence[str], k: int, max_len: int) -> SimonCount:
    """Distinct subword sets over all words of length <= max_len.

    ``stabilized`` is true when words of length exactly max_len added no new
    class; then ``count`` equals |A*/~_k|.
    """
    seen: dict[frozenset, str] = {}
    shorter = None
    for w in words_up_to(alphabet, max_len):
        if len(w) == max_len and shorter is None:
            shorter = len(seen)
        seen.setdefault(brute_subwords(w, k), w)
    return SimonCount(len(seen), tuple(seen.values()), max_len > 0 and shorter == len(seen))


def brute_arrow_equivalence(
    pc: PairClosure,
    src: tuple[int, int],
    tgt: tuple[int, int],
    u: str,
    u2: str,
    max_len: int,
) -> bool:
    """phi(v u w) == phi(v u' w) for all v, w of length <= max_len with
    psi(v) = n1 and psi(w) = n2' (words evaluated whole)."""
    phi, psi = pc.phi, pc.psi
    tn = pc.n.table
    (n1, n2), (n1p, n2p) = src, tgt
    for x in (u, u2):
        nx = psi(x)
        if tn[n1][nx] != n1p or tn[nx][n2p] != n2:
            raise InconsistentArrow(f"{x!r} does not label an arrow {src} -> {tgt}")
    words = list(words_up_to(pc.alphabet, max_len))
    left = [v for v in words if psi(v) == n1]
    right = [w for w in words if psi(w) == n2p]
    return all(phi(v + u + w) == phi(v + u2 + w) for v in left for w in right)


# The suffix factorization used in the bounded-kernel argument


@dataclass(frozen=True)
class Factorization:
    prefix: str
    blocks: tuple[str, ...]
    content: frozenset[str]
    required: frozenset[str]

    @property
    def suffix(self) -> str:
        return "".join(self.blocks)


def _content_subsets(letters: frozenset[str], required: frozenset[str]):
    extra = sorted(letters - required)
    for n in range(len(extra), -1, -1):
        for chosen in combinations(extra, n):
            yield required | frozenset(chosen)


def suffix_factorization(z: str, required, q: int) -> Factorization | None:
    """Find a suffix z' = z_1 ... z_q with B <= alpha(z_1) = ... = alpha(z_q).

    For every candidate content C (B <= C <= alpha(z)) the suffix must lie in
    the longest suffix of z over C.  Carving minimal blocks that contain all
    of C from the right maximises the block count; the leftover on the left
    joins the first block.  The longest suffix over all C wins, ties going
    to the larger C.
    """
    B = frozenset(required)
    letters = frozenset(z)
    if not B <= letters:
        raise ValueError("required letters must occur in z")
    best = None
    for C in _content_subsets(letters, B):
        if not C:
            cand = Factorization(z, ("",) * q, C, B)
            best = best or cand
            continue
        start = len(z)
        while start > 0 and z[start - 1] in C:
            start -= 1
        region = z[start:]
        cuts = []  # left ends of greedy blocks, right to left
        seen: set[str] = set()
        i = len(region)
        while i > 0 and len(cuts) < q:
            i -= 1
            seen.add(region[i])
            if seen >= C:
                cuts.append(i)
                seen = set()
        if len(cuts) < q:
            continue
        bounds = [0] + sorted(cuts[: q - 1]) + [len(region)]
        blocks = tuple(region[bounds[j] : bounds[j + 1]] for j in range(q))
        cand = Factorization(z[:start], blocks, C, B)
        if best is None or len(cand.suffix) > len(best.suffix):
            best = cand
    return best


def latest_embedding_end(z: str, max_length: int) -> int:
    """Latest end position of a leftmost embedding of any subword u of z
    with |u| <= max_length (-1 when only the empty word qualifies).

    Tracks the set of reachable leftmost-embedding ends length by length.
    """
    letters = sorted(set(z))
    ends = {-1}
    best = -1
    for _ in range(max_length):
        ends = {p for e in ends for c in letters if (p := z.find(c, e + 1)) >= 0}
        if not ends:
            break
        best = max(best, max(ends))
    return best


def stable_under(z: str, b: str, t: int) -> bool:
    """psi_t(z b) == psi_t(z): every subword u of z with |u| < t has u b as a subword."""
    if t <= 0:
        return True
    return z.find(b, latest_embedding_end(z, t - 1) + 1) >= 0


def lemma_threshold(q: int, content_size: int) -> int:
    return q * (content_size**2 + content_size) // 2


def lemma_hypothesis(z: str, required, q: int) -> bool:
    """B <= alpha(z) and psi_T(z b) = psi_T(z) for b in B, T = q (c^2 + c) / 2, c = |alpha(z)|."""
    B = frozenset(required)
    if not B <= frozenset(z):
        return False
    t = lemma_threshold(q, len(set(z)))
    return all(stable_under(z, b, t) for b in B)


def random_lemma_instance(rng, alphabet: Sequence[str], q: int, max_tries: int = 1000):
    """Sample (z, B) satisfying the lemma hypothesis, by rejection.

    z is a random prefix followed by a few random segments, each pumped
    enough times to make stabilization likely.
    """
    for _ in range(max_tries):
        z = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6)))
        for _ in range(rng.randint(1, 3)):
            seg = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 4)))
            z += seg * rng.randint(1, 3 * q * len(alphabet) * 2)
        letters = sorted(set(z))
        t = lemma_threshold(q, len(letters))
        stable = [b for b in letters if stable_under(z, b, t)]
        if not stable:
            continue
        size = rng.randint(1, len(stable))
        B = frozenset(rng.sample(stable, size))
        return z, B
    raise RuntimeError("could not sample a hypothesis-satisfying instance")
