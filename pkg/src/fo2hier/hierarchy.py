"""Deciders: DA membership, exact alternation depth, and the V**J kernel test."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded
from .kernel import base_monoids, pair_closure
from .language import Dfa, RecognizedLanguage, compile_language, syntactic_monoid
from .monoid import FiniteMonoid, structural_da_check, structural_j_check
from .simon import DEFAULT_QUOTIENT_BUDGET, simon_quotient
from .terms import (
    APERIODIC,
    DEFAULT_VALUATION_BUDGET,
    VARIETIES,
    check_identity,
    first_failure,
    hierarchy_identity,
    variety_identities,
)

DEFAULT_K_SCHEDULE = (0, 1, 2, 3)
DEFAULT_OBJECT_BUDGET = 250_000


@dataclass(frozen=True)
class LevelVerdict:
    level: int
    holds: bool
    counterexample: dict[int, int] | None


@dataclass(frozen=True)
class DepthReport:
    in_ap: bool
    in_da: bool
    depth: int | None
    generator_count: int
    levels: tuple[LevelVerdict, ...]
    ap_counterexample: dict[int, int] | None = None
    da_counterexample: dict[int, int] | None = None

    @property
    def verdicts(self) -> tuple[bool, ...]:
        return tuple(v.holds for v in self.levels)

    def is_monotone(self) -> bool:
        v = self.verdicts
        return all(not a or b for a, b in zip(v, v[1:]))


def _unpack(r, generator_count):
    if isinstance(r, RecognizedLanguage):
        return r.monoid, len(r.alphabet) if generator_count is None else generator_count
    if generator_count is None:
        raise ValueError("a bare monoid needs an explicit generator_count")
    return r, generator_count


def alternation_depth(
    r: RecognizedLanguage | FiniteMonoid,
    generator_count: int | None = None,
    valuation_budget: int = DEFAULT_VALUATION_BUDGET,
    full: bool = False,
) -> DepthReport:
    """Least n with M |= u_n = v_n and M aperiodic, or None outside DA.

    Levels are tried from 1 upward.  Any DA monoid generated by c elements
    satisfies level c, so failing beyond max(c, 1) is a bug and asserts.
    With ``full`` the levels up to that bound are all evaluated, not just
    up to the first success.
    """
    m, gens = _unpack(r, generator_count)
    ap = check_identity(m, APERIODIC, valuation_budget)
    if not ap.holds:
        return DepthReport(False, False, None, gens, (), ap.counterexample, None)
    da_fail = first_failure(m, VARIETIES["DA"][:1], valuation_budget)
    if da_fail is not None:
        return DepthReport(True, False, None, gens, (), None, da_fail[1].counterexample)
    bound = max(gens, 1)
    levels = []
    depth = None
    n = 1
    while depth is None or (full and n <= bound):
        res = check_identity(m, hierarchy_identity(n), valuation_budget)
        levels.append(LevelVerdict(n, res.holds, res.counterexample))
        if res.holds and depth is None:
            depth = n
        if depth is None and n >= bound:
            raise AssertionError(f"DA monoid with {gens} generators fails level {n}")
        n += 1
    return DepthReport(True, True, depth, gens, tuple(levels))


@dataclass(frozen=True)
class KSummary:
    k: int
    n_size: int | None
    objects: int | None
    distinct_base_monoids: int | None
    failing_objects: int | None
    first_failure: dict | None = None
    note: str | None = None


@dataclass(frozen=True)
class BlockProductVerdict:
    outcome: str  # ProvedMember | ProvedNonMember | Infeasible
    witness_k: int | None
    k_bound: int  # |M| (|A|^2 + |A|) / 2
    k_bound_strict: int  # k_bound + 1
    summaries: tuple[KSummary, ...] = ()
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness_k": self.witness_k,
            "K": self.k_bound,
            "K_strict": self.k_bound_strict,
            "reason": self.reason,
            "per_k": [
                {
                    "k": s.k,
                    "n_size": s.n_size,
                    "objects": s.objects,
                    "distinct_base_monoids": s.distinct_base_monoids,
                    "failing_objects": s.failing_objects,
                    "first_failure": s.first_failure,
                    "note": s.note,
                }
                for s in self.summaries
            ],
        }


def k_bounds(monoid_size: int, alphabet_size: int) -> tuple[int, int]:
    k = monoid_size * (alphabet_size**2 + alphabet_size) // 2
    return k, k + 1


def decide_block_product(
    r: RecognizedLanguage,
    inner_variety,
    k_schedule: Sequence[int] | None = None,
    quotient_budget: int = DEFAULT_QUOTIENT_BUDGET,
    valuation_budget: int = DEFAULT_VALUATION_BUDGET,
    object_budget: int = DEFAULT_OBJECT_BUDGET,
) -> BlockProductVerdict:
    """Decide M in V**J from the base monoids of ker(psi_k o phi^-1).

    Every base monoid in V at some k proves membership.  Failure at
    k >= K_strict proves non-membership.  Anything else is Infeasible.
    """
    m = r.monoid
    alphabet = r.alphabet
    k_bound, k_strict = k_bounds(m.size, len(alphabet))
    if k_schedule is None:
        k_schedule = tuple(DEFAULT_K_SCHEDULE) + (k_strict,)
    schedule = sorted({k for k in k_schedule if 0 <= k <= k_strict})
    identities = variety_identities(inner_variety)
    summaries = []
    for k in schedule:
        try:
            quotient = simon_quotient(alphabet, k, quotient_budget)
            pc = pair_closure(r.morphism, quotient.morphism)
            bases = base_monoids(pc, max_objects=object_budget)
        except BudgetExceeded as exc:
            summaries.append(KSummary(k, None, None, None, None, note=str(exc)))
            return BlockProductVerdict(
                "Infeasible", None, k_bound, k_strict, tuple(summaries),
                f"budget exceeded at k={k}; largest k completed: {summaries[-2].k if len(summaries) > 1 else None}",
            )
        verdict_by_table: dict = {}
        failing = 0
        first = None
        for obj in sorted(bases):
            b = bases[obj].monoid
            if b.table not in verdict_by_table:
                verdict_by_table[b.table] = first_failure(b, identities, valuation_budget)
            fail = verdict_by_table[b.table]
            if fail is not None:
                failing += 1
                if first is None:
                    first = {
                        "object": [obj[0], obj[1]],
                        "object_names": [quotient.monoid.name(obj[0]), quotient.monoid.name(obj[1])],
                        "base_monoid_size": b.size,
                        "identity": str(fail[0]),
                        "counterexample": {f"x{v}": b.name(e) for v, e in fail[1].counterexample.items()},
                    }
        summaries.append(KSummary(k, quotient.monoid.size, len(bases), len(verdict_by_table), failing, first))
        if failing == 0:
            return BlockProductVerdict("ProvedMember", k, k_bound, k_strict, tuple(summaries))
        if k >= k_strict:
            return BlockProductVerdict("ProvedNonMember", None, k_bound, k_strict, tuple(summaries))
    return BlockProductVerdict(
        "Infeasible", None, k_bound, k_strict, tuple(summaries),
        f"K_strict={k_strict} not reached; largest k tried: {schedule[-1] if schedule else None}",
    )


def _named(m: FiniteMonoid, valuation):
    if valuation is None:
        return None
    return {f"x{v}": m.name(e) for v, e in sorted(valuation.items())}


def classify(
    spec: str | Dfa,
    alphabet: Sequence[str] | None = None,
    valuation_budget: int = DEFAULT_VALUATION_BUDGET,
    k_max: int | None = None,
    quotient_budget: int = DEFAULT_QUOTIENT_BUDGET,
) -> dict:
    """End-to-end report for a regex or DFA.

    With ``k_max`` set and depth n >= 2, the kernel route is also run with
    inner variety V_{n-1} over k = 0..k_max.
    """
    r = syntactic_monoid(compile_language(spec, alphabet))
    m = r.monoid
    varieties = {}
    counterexamples = {}
    for tag in ("J1", "J", "DA", "Ap"):
        fail = first_failure(m, VARIETIES[tag], valuation_budget)
        varieties[tag] = fail is None
        if fail is not None:
            counterexamples[tag] = {"identity": str(fail[0]), "valuation": _named(m, fail[1].counterexample)}
    report = alternation_depth(r, valuation_budget=valuation_budget, full=True)
    for lv in report.levels:
        if not lv.holds:
            counterexamples[f"level_{lv.level}"] = {
                "identity": str(hierarchy_identity(lv.level)),
                "valuation": _named(m, lv.counterexample),
            }
    block = None
    if k_max is not None and report.depth is not None and report.depth >= 2:
        verdict = decide_block_product(
            r, f"V{report.depth - 1}", range(k_max + 1), quotient_budget, valuation_budget
        )
        block = {"inner_variety": f"V{report.depth - 1}", **verdict.to_dict()}
    return {
        "language": spec.to_dict() if isinstance(spec, Dfa) else spec,
        "alphabet": list(r.alphabet),
        "dfa_states": r.dfa.states,
        "monoid_size": m.size,
        "monoid": m.to_dict(),
        "accepting": sorted(r.accepting),
        "varieties": varieties,
        "structural": {"J": structural_j_check(m), "DA": structural_da_check(m)},
        "depth": report.depth,
        "generator_count": report.generator_count,
        "levels": [{"level": lv.level, "holds": lv.holds} for lv in report.levels],
        "counterexamples": counterexamples,
        "block_product": block,
        "budgets": {"valuation_budget": valuation_budget, "quotient_budget": quotient_budget, "k_max": k_max},
    }
