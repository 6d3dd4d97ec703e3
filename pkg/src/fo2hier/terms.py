"""Omega-terms, identities and exhaustive identity checking.

Concrete syntax: juxtaposed factors, each either a variable ``x<i>`` (i >= 1)
or a parenthesised term; either may carry the suffix ``^w`` for the omega
power.  ``(x1 x2)^w x1`` is a term; ``u = v`` is an identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import BudgetExceeded, ParseError, UnboundVariable
from .monoid import FiniteMonoid

DEFAULT_VALUATION_BUDGET = 10**9


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Concat:
    children: tuple

    def __str__(self):
        return " ".join(str(c) for c in self.children)


@dataclass(frozen=True)
class Omega:
    child: object

    def __str__(self):
        return f"({self.child})^w"


Term = Union[Var, Concat, Omega]


def concat(*terms: Term) -> Term:
    """Flattening concatenation; a single factor is returned unchanged."""
    flat: list = []
    for t in terms:
        if isinstance(t, Concat):
            flat.extend(t.children)
        else:
            flat.append(t)
    if not flat:
        raise ValueError("empty concatenation has no term")
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def omega_of(t: Term) -> Term:
    return t if isinstance(t, Omega) else Omega(t)


def variables(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset([t.index])
    if isinstance(t, Omega):
        return variables(t.child)
    return frozenset().union(*(variables(c) for c in t.children))


@dataclass(frozen=True)
class Identity:
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left} = {self.right}"

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(variables(self.left) | variables(self.right)))


# parsing

_TOKEN = re.compile(r"\s*(?:(x\d+)|(\^w)|(\()|(\))|(\S))")


def _tokenize(s: str):
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:  # trailing whitespace
            break
        if m.lastindex is None:
            break
        start = m.start(m.lastindex)
        kind = ("var", "omega", "lpar", "rpar", "bad")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(s)))
    return out


def parse_term(s: str) -> Term:
    """Parse and canonicalize (flattened, omega collapsed)."""
    toks = _tokenize(s)
    i = 0

    def factor():
        nonlocal i
        kind, text, pos = toks[i]
        if kind == "var":
            idx = int(text[1:])
            if idx < 1:
                raise ParseError("variable indices start at 1", pos)
            node = Var(idx)
            i += 1
        elif kind == "lpar":
            i += 1
            node = term()
            if toks[i][0] != "rpar":
                raise ParseError("expected ')'", toks[i][2])
            i += 1
        else:
            raise ParseError(f"unexpected {text!r}" if text else "unexpected end", pos)
        while toks[i][0] == "omega":
            node = omega_of(node)
            i += 1
        return node

    def term():
        parts = [factor()]
        while toks[i][0] in ("var", "lpar"):
            parts.append(factor())
        return concat(*parts)

    t = term()
    if toks[i][0] != "end":
        raise ParseError(f"unexpected {toks[i][1]!r}", toks[i][2])
    return t


def parse_identity(s: str) -> Identity:
    if s.count("=") != 1:
        raise ParseError("an identity needs exactly one '='", s.find("=") if "=" in s else len(s))
    left, right = s.split("=")
    try:
        rhs = parse_term(right)
    except ParseError as e:
        raise ParseError(str(e).rsplit(" at position", 1)[0], e.position + len(left) + 1) from None
    return Identity(parse_term(left), rhs)


def parse_identity_file(text: str) -> list[Identity]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_identity(line))
    return out


def format_term(t: Term) -> str:
    return str(t)


# evaluation


def eval_term(t: Term, m: FiniteMonoid, valuation) -> int:
    if isinstance(t, Var):
        try:
            return valuation[t.index]
        except (KeyError, IndexError):
            raise UnboundVariable(t.index) from None
    if isinstance(t, Omega):
        return m.omega_table[eval_term(t.child, m, valuation)]
    return m.product(eval_term(c, m, valuation) for c in t.children)


@dataclass(frozen=True)
class IdentityResult:
    holds: bool
    counterexample: dict[int, int] | None = None
    valuations_checked: int = 0

    def __bool__(self):
        return self.holds


def _compile(ident: Identity):
    """Number each distinct subterm and bucket it by the position of its
    highest variable, so a subterm is recomputed only when that variable
    changes."""
    order = ident.variables
    level_of_var = {v: i for i, v in enumerate(order)}
    slots: dict = {}
    groups: list[list] = [[] for _ in order]

    def visit(t) -> tuple[int, int]:
        if t in slots:
            return slots[t]
        if isinstance(t, Var):
            lvl = level_of_var[t.index]
            entry = (len(slots), lvl)
            slots[t] = entry
            return entry
        if isinstance(t, Omega):
            c, lvl = visit(t.child)
            entry = (len(slots), lvl)
            slots[t] = entry
            groups[lvl].append((entry[0], 0, c))
            return entry
        kids = [visit(c) for c in t.children]
        lvl = max(k[1] for k in kids)
        entry = (len(slots), lvl)
        slots[t] = entry
        groups[lvl].append((entry[0], 1, tuple(k[0] for k in kids)))
        return entry

    left = visit(ident.left)[0]
    right = visit(ident.right)[0]
    var_slots = [slots[Var(v)][0] for v in order]
    return order, var_slots, groups, left, right, len(slots)


def check_identity(m: FiniteMonoid, ident: Identity, budget: int = DEFAULT_VALUATION_BUDGET) -> IdentityResult:
    """Exhaustive check of ``ident`` over every valuation into ``m``.

    Valuations are visited in lexicographic order (x1 most significant), so
    the reported counterexample is the lexicographically first one.
    """
    order, var_slots, groups, left, right, nslots = _compile(ident)
    total = m.size ** len(order)
    if total > budget:
        raise BudgetExceeded(f"{total} valuations exceed the budget of {budget}", total)
    t = m.table
    om = m.omega_table
    vals = [0] * nslots
    elements = list(m.elements)
    last = len(order) - 1
    choice = [0] * len(order)
    count = 0

    def rec(level):
        nonlocal count
        vslot = var_slots[level]
        group = groups[level]
        for x in elements:
            vals[vslot] = x
            choice[level] = x
            for slot, op, arg in group:
                if op == 0:
                    vals[slot] = om[vals[arg]]
                else:
                    acc = vals[arg[0]]
                    for c in arg[1:]:
                        acc = t[acc][vals[c]]
                    vals[slot] = acc
            if level == last:
                count += 1
                if vals[left] != vals[right]:
                    return True
            elif rec(level + 1):
                return True
        return False

    if rec(0):
        return IdentityResult(False, dict(zip(order, choice)), count)
    return IdentityResult(True, None, count)


def naive_check_identity(m: FiniteMonoid, ident: Identity) -> IdentityResult:
    """Unmemoized reference evaluator, for differential testing."""
    from itertools import product

    order = ident.variables
    count = 0
    for vals in product(m.elements, repeat=len(order)):
        count += 1
        v = dict(zip(order, vals))
        if eval_term(ident.left, m, v) != eval_term(ident.right, m, v):
            return IdentityResult(False, v, count)
    return IdentityResult(True, None, count)


# named identity families


def _word(indices: Iterable[int]) -> Term:
    return concat(*(Var(i) for i in indices))


def hierarchy_identity(n: int) -> Identity:
    """The pair (u_n, v_n): u_1 = (x1 x2)^w, v_1 = (x2 x1)^w and

    u_{n+1} = (x1 .. x_{2n} x_{2n+1})^w u_n (x_{2n+2} x1 .. x_{2n})^w,
    likewise for v.
    """
    if n < 1:
        raise ValueError("n must be positive")
    u = omega_of(_word([1, 2]))
    v = omega_of(_word([2, 1]))
    for k in range(1, n):
        left = omega_of(_word(list(range(1, 2 * k + 2))))
        right = omega_of(_word([2 * k + 2] + list(range(1, 2 * k + 1))))
        u = concat(left, u, right)
        v = concat(left, v, right)
    return Identity(u, v)


APERIODIC = parse_identity("(x1)^w = x1 (x1)^w")
DA_SINGLE = parse_identity("(x1 x2 x3)^w x2 (x1 x2 x3)^w = (x1 x2 x3)^w")
J_ALT = (
    parse_identity("(x1 x2)^w x1 = (x1 x2)^w"),
    parse_identity("x2 (x1 x2)^w = (x1 x2)^w"),
)

VARIETIES: dict[str, tuple[Identity, ...]] = {
    "J1": (parse_identity("x1 x1 = x1"), parse_identity("x1 x2 = x2 x1")),
    "J": (parse_identity("(x1 x2)^w = (x2 x1)^w"), APERIODIC),
    "DA": (parse_identity("(x1 x2)^w (x2 x1)^w (x1 x2)^w = (x1 x2)^w"), APERIODIC),
    "Ap": (APERIODIC,),
}


def level_identities(n: int) -> tuple[Identity, ...]:
    """Identities defining the n-th level V_n of the alternation hierarchy."""
    return (hierarchy_identity(n), APERIODIC)


def variety_identities(tag) -> tuple[Identity, ...]:
    """Resolve a variety tag (``J1``, ``J``, ``DA``, ``Ap``, ``V3``, ``Vn:3``)
    or pass an identity collection through."""
    if not isinstance(tag, str):
        return tuple(tag)
    if tag in VARIETIES:
        return VARIETIES[tag]
    m = re.fullmatch(r"V(?:n:)?(\d+)", tag)
    if m and int(m.group(1)) >= 1:
        return level_identities(int(m.group(1)))
    raise ValueError(f"unknown variety {tag!r}")


def first_failure(m: FiniteMonoid, identities, budget: int = DEFAULT_VALUATION_BUDGET):
    """``None`` if all identities hold, else ``(identity, IdentityResult)``."""
    for ident in identities:
        res = check_identity(m, ident, budget)
        if not res.holds:
            return ident, res
    return None


def variety_membership(m: FiniteMonoid, tag, budget: int = DEFAULT_VALUATION_BUDGET) -> bool:
    return first_failure(m, variety_identities(tag), budget) is None
