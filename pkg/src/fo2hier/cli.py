"""Command line interface.

    fo2hier classify --regex "a(a|b)*"
    fo2hier monoid check --table m.json
    fo2hier monoid identity --table m.json --id "(x1 x2)^w = (x2 x1)^w"
    fo2hier lang syntactic --dfa d.json
    fo2hier simon quotient --alphabet ab --k 2
    fo2hier kernel build --regex "a(a|b)*" --k 1
    fo2hier kernel decide --regex "a(a|b)*" --variety J --k-max 3

Exit codes: 0 success, 1 internal error, 2 parse or usage error,
3 budget exceeded.  JSON mode writes exactly one document to stdout.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import BudgetExceeded, Fo2HierError, IllDefinedProduct
from .hierarchy import DEFAULT_K_SCHEDULE, classify, decide_block_product, k_bounds
from .kernel import DEFAULT_KERNEL_MAX_N, kernel_category, pair_closure
from .language import Dfa, compile_language, syntactic_monoid
from .monoid import FiniteMonoid, structural_da_check, structural_j_check
from .simon import DEFAULT_QUOTIENT_BUDGET, simon_quotient
from .terms import DEFAULT_VALUATION_BUDGET, VARIETIES, check_identity, first_failure, parse_identity

log = logging.getLogger("fo2hier")


def _add_budgets(p):
    p.add_argument("--valuation-budget", type=int, default=DEFAULT_VALUATION_BUDGET)
    p.add_argument("--quotient-budget", type=int, default=DEFAULT_QUOTIENT_BUDGET)
    p.add_argument("--format", choices=("json", "text"), default="json")


def _add_language(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--regex")
    src.add_argument("--dfa", type=Path, help="DFA JSON file")
    p.add_argument("--alphabet", help="declared alphabet, e.g. 'ab' (regex input only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fo2hier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="variety flags and alternation depth of a language")
    _add_language(p)
    p.add_argument("--k-max", type=int, help="also run the kernel cross-check for k <= K-MAX")
    _add_budgets(p)

    monoid = sub.add_parser("monoid").add_subparsers(dest="action", required=True)
    p = monoid.add_parser("check", help="variety membership of a monoid table")
    p.add_argument("--table", type=Path, required=True)
    _add_budgets(p)
    p = monoid.add_parser("identity", help="check one identity on a monoid table")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("--id", required=True, dest="identity")
    _add_budgets(p)

    lang = sub.add_parser("lang").add_subparsers(dest="action", required=True)
    p = lang.add_parser("syntactic", help="minimal DFA and syntactic monoid")
    _add_language(p)
    _add_budgets(p)

    simon = sub.add_parser("simon").add_subparsers(dest="action", required=True)
    p = simon.add_parser("quotient", help="the monoid A*/~k")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--k", type=int, required=True)
    _add_budgets(p)

    kernel = sub.add_parser("kernel").add_subparsers(dest="action", required=True)
    p = kernel.add_parser("build", help="kernel category of phi and psi_k")
    _add_language(p)
    p.add_argument("--k", type=int, required=True)
    _add_budgets(p)
    p = kernel.add_parser("decide", help="decide V**J membership from base monoids")
    _add_language(p)
    p.add_argument("--variety", required=True, help="J1, J, DA, Ap or Vn:<n>")
    p.add_argument("--k", type=int, help="try exactly this k")
    p.add_argument("--k-max", type=int, help="try k = 0..K-MAX (default 0..3 then K)")
    _add_budgets(p)
    return parser


def _budgets(args) -> dict:
    return {"valuation_budget": args.valuation_budget, "quotient_budget": args.quotient_budget}


def _language(args):
    alphabet = list(args.alphabet) if args.alphabet else None
    if args.regex is not None:
        return args.regex, compile_language(args.regex, alphabet)
    d = Dfa.loads(args.dfa.read_text())
    return d.to_dict(), compile_language(d)


def _monoid(path: Path) -> FiniteMonoid:
    return FiniteMonoid.loads(path.read_text())


def _named(m: FiniteMonoid, valuation):
    if valuation is None:
        return None
    return {f"x{v}": m.name(e) for v, e in sorted(valuation.items())}


def cmd_classify(args) -> dict:
    alphabet = list(args.alphabet) if args.alphabet else None
    spec = args.regex if args.regex is not None else Dfa.loads(args.dfa.read_text())
    return classify(spec, alphabet, args.valuation_budget, args.k_max, args.quotient_budget)


def cmd_monoid_check(args) -> dict:
    m = _monoid(args.table)
    varieties = {}
    counterexamples = {}
    for tag, ids in VARIETIES.items():
        fail = first_failure(m, ids, args.valuation_budget)
        varieties[tag] = fail is None
        if fail is not None:
            counterexamples[tag] = {"identity": str(fail[0]), "valuation": _named(m, fail[1].counterexample)}
    return {
        "size": m.size,
        "idempotents": [m.name(e) for e in m.idempotents],
        "varieties": varieties,
        "structural": {"J": structural_j_check(m), "DA": structural_da_check(m)},
        "counterexamples": counterexamples,
        "budgets": _budgets(args),
    }


def cmd_monoid_identity(args) -> dict:
    m = _monoid(args.table)
    ident = parse_identity(args.identity)
    res = check_identity(m, ident, args.valuation_budget)
    return {
        "identity": str(ident),
        "holds": res.holds,
        "counterexample": _named(m, res.counterexample),
        "valuations_checked": res.valuations_checked,
        "budgets": _budgets(args),
    }


def cmd_lang_syntactic(args) -> dict:
    spec, d = _language(args)
    r = syntactic_monoid(d)
    return {
        "language": spec,
        "dfa": d.to_dict(),
        "monoid": r.monoid.to_dict(),
        "letter_images": {a: r.monoid.name(x) for a, x in zip(r.alphabet, r.morphism.images)},
        "accepting": [r.monoid.name(x) for x in sorted(r.accepting)],
        "budgets": _budgets(args),
    }


def cmd_simon_quotient(args) -> dict:
    q = simon_quotient(list(args.alphabet), args.k, args.quotient_budget)
    d = q.monoid.to_dict()
    d["classes"] = [c.sorted_members for c in q.classes]
    d["budgets"] = _budgets(args)
    return d


def cmd_kernel_build(args) -> dict:
    spec, d = _language(args)
    r = syntactic_monoid(d)
    q = simon_quotient(r.alphabet, args.k, args.quotient_budget)
    kc = kernel_category(pair_closure(r.morphism, q.morphism), DEFAULT_KERNEL_MAX_N)
    out = {"language": spec, "k": args.k}
    out.update(kc.to_dict())
    out["budgets"] = {**_budgets(args), "kernel_max_n": DEFAULT_KERNEL_MAX_N}
    return out


def cmd_kernel_decide(args) -> dict:
    spec, d = _language(args)
    r = syntactic_monoid(d)
    if args.k is not None:
        schedule = [args.k]
    elif args.k_max is not None:
        schedule = list(range(args.k_max + 1))
    else:
        schedule = list(DEFAULT_K_SCHEDULE) + [k_bounds(r.monoid.size, len(r.alphabet))[1]]
    variety = args.variety
    verdict = decide_block_product(
        r, variety, schedule, args.quotient_budget, args.valuation_budget
    )
    out = {"language": spec, "inner_variety": variety, "k_schedule": schedule}
    out.update(verdict.to_dict())
    out["budgets"] = _budgets(args)
    return out


COMMANDS = {
    ("classify", None): cmd_classify,
    ("monoid", "check"): cmd_monoid_check,
    ("monoid", "identity"): cmd_monoid_identity,
    ("lang", "syntactic"): cmd_lang_syntactic,
    ("simon", "quotient"): cmd_simon_quotient,
    ("kernel", "build"): cmd_kernel_build,
    ("kernel", "decide"): cmd_kernel_decide,
}


def _text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.append(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append(f"{pad}{key}: [{len(value)} entries]")
        else:
            lines.append(f"{pad}{key}: {json.dumps(value)}")
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMANDS[(args.command, getattr(args, "action", None))]
    try:
        doc = handler(args)
    except BudgetExceeded as exc:
        log.error("budget exceeded: %s", exc)
        return 3
    except IllDefinedProduct as exc:
        log.error("internal error: %s", exc)
        return 1
    except (Fo2HierError, ValueError, KeyError, OSError) as exc:
        log.error("%s", exc)
        return 2
    except AssertionError as exc:
        log.error("internal assertion failed: %s", exc)
        return 1
    if args.format == "json":
        stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(_text(doc) + "\n")
    return 0


def main():
    logging.basicConfig(level=logging.WARNING, format="fo2hier: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
