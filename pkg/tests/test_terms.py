import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fo2hier.errors import BudgetExceeded, ParseError, UnboundVariable
from fo2hier.language import language_from_spec
from fo2hier.monoid import cyclic_group, monogenic_monoid, trivial_monoid, u1
from fo2hier.terms import (
    APERIODIC,
    DA_SINGLE,
    VARIETIES,
    Concat,
    Omega,
    Var,
    check_identity,
    concat,
    eval_term,
    hierarchy_identity,
    naive_check_identity,
    omega_of,
    parse_identity,
    parse_identity_file,
    parse_term,
    variables,
    variety_membership,
)


@pytest.fixture(scope="module")
def aA():
    return language_from_spec("a(a|b)*")


@pytest.fixture(scope="module")
def small_tables(corpus_languages):
    seen = {}
    for r in corpus_languages:
        seen.setdefault(r.monoid.table, r.monoid)
    return list(seen.values()) + [cyclic_group(3), monogenic_monoid(2, 3)]


def test_parse_examples():
    assert parse_term("(x1 x2)^w") == Omega(Concat((Var(1), Var(2))))
    assert parse_term("((x1)^w)^w") == Omega(Var(1))
    with pytest.raises(ParseError):
        parse_term("x0")
    with pytest.raises(ParseError) as exc:
        parse_term("x1 (x2")
    assert exc.value.position == 6


def test_identity_file_skips_comments():
    ids = parse_identity_file("# header\n(x1 x2)^w = (x2 x1)^w  # J\n\nx1 x1 = x1\n")
    assert [str(i) for i in ids] == ["(x1 x2)^w = (x2 x1)^w", "x1 x1 = x1"]


terms = st.recursive(
    st.integers(1, 4).map(Var),
    lambda inner: st.one_of(
        inner.map(omega_of),
        st.lists(inner, min_size=2, max_size=3).map(lambda ts: concat(*ts)),
    ),
    max_leaves=8,
)


@given(terms)
def test_print_parse_round_trip(t):
    assert parse_term(str(t)) == t


def test_eval_examples(aA):
    m = u1()
    assert eval_term(Var(1), m, {1: 1}) == 1
    assert eval_term(parse_term("(x1 x2)^w"), m, {1: 1, 2: 0}) == 1
    a, b = 1, 2
    assert eval_term(parse_term("(x1 x2)^w"), aA.monoid, {1: a, 2: b}) == a
    assert eval_term(parse_term("(x2 x1)^w"), aA.monoid, {1: a, 2: b}) == b
    with pytest.raises(UnboundVariable):
        eval_term(Var(3), m, {1: 0})


def test_check_identity_examples(aA):
    res = check_identity(u1(), APERIODIC)
    assert res.holds and res.valuations_checked == 2
    res = check_identity(aA.monoid, hierarchy_identity(1))
    assert not res.holds and res.counterexample == {1: 1, 2: 2}
    assert check_identity(trivial_monoid(), hierarchy_identity(4)).holds


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        check_identity(cyclic_group(5), hierarchy_identity(3), budget=1000)
    assert exc.value.partial == 5**6


def test_hierarchy_identity_shapes():
    assert hierarchy_identity(1) == parse_identity("(x1 x2)^w = (x2 x1)^w")
    assert hierarchy_identity(2) == parse_identity(
        "(x1 x2 x3)^w (x1 x2)^w (x4 x1 x2)^w = (x1 x2 x3)^w (x2 x1)^w (x4 x1 x2)^w"
    )
    for n in range(1, 7):
        ident = hierarchy_identity(n)
        assert len(variables(ident.left)) == 2 * n == len(ident.variables)
    with pytest.raises(ValueError):
        hierarchy_identity(0)


def test_variety_membership_examples(aA):
    assert variety_membership(u1(), "J1")
    assert not variety_membership(aA.monoid, "J")
    assert variety_membership(aA.monoid, "DA")
    assert not variety_membership(cyclic_group(3), "Ap")


def test_memoized_checker_matches_naive(small_tables):
    idents = [APERIODIC, DA_SINGLE, hierarchy_identity(1), hierarchy_identity(2), *VARIETIES["J1"]]
    for m in small_tables:
        if m.size > 8:
            continue
        for ident in idents:
            if m.size ** len(ident.variables) > 5000:
                continue
            assert check_identity(m, ident) == naive_check_identity(m, ident), (m.table, str(ident))


def test_variety_inclusion_chain(small_tables):
    order = ["J1", "J", "DA", "Ap"]
    for m in small_tables:
        flags = [variety_membership(m, tag) for tag in order]
        assert all(not a or b for a, b in zip(flags, flags[1:])), m.table


def test_inclusions_are_strict(aA):
    ab = language_from_spec("(ab)*").monoid
    separating = {
        ("J1", "J"): monogenic_monoid(2),
        ("J", "DA"): aA.monoid,
        ("DA", "Ap"): ab,
    }
    for (smaller, larger), m in separating.items():
        assert variety_membership(m, larger) and not variety_membership(m, smaller)
    assert not variety_membership(cyclic_group(2), "Ap")


def test_single_identity_da_form(small_tables):
    for m in small_tables:
        alt = check_identity(m, DA_SINGLE).holds and check_identity(m, APERIODIC).holds
        assert alt == variety_membership(m, "DA"), m.table


def test_levels_are_nested(small_tables):
    for m in small_tables:
        if not variety_membership(m, "DA"):
            continue
        prev = None
        for n in (1, 2, 3):
            if m.size ** (2 * n) > 2_000_000:
                break
            cur = check_identity(m, hierarchy_identity(n)).holds
            assert prev is not True or cur
            prev = cur


@settings(max_examples=50, deadline=None)
@given(terms, st.sampled_from([u1(), cyclic_group(3), monogenic_monoid(2, 2)]))
def test_omega_collapse_semantics(t, m):
    v = {i: (i * 7) % m.size for i in range(1, 5)}
    assert eval_term(Omega(t), m, v) == eval_term(omega_of(omega_of(t)), m, v)
