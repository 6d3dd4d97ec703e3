import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fo2hier.errors import BadIdentity, IndexOutOfRange, NonAssociative, UnknownLetter
from fo2hier.language import language_from_spec
from fo2hier.monoid import (
    FiniteMonoid,
    Morphism,
    apply_morphism,
    closure,
    cyclic_group,
    direct_product,
    divides,
    from_table,
    monogenic_monoid,
    omega,
    structural_da_check,
    structural_j_check,
    trivial_monoid,
    u1,
    union_semilattice,
)


@pytest.fixture(scope="module")
def aA():
    """Syntactic monoid of aA*: 1, alpha = a, beta = b, with x y = x for x != 1."""
    return language_from_spec("a(a|b)*")


def test_trivial_from_table():
    m = from_table(1, [[0]], 0)
    assert m.size == 1 and m.table == ((0,),)


def test_u1_commutative_idempotent():
    m = from_table(2, [[0, 1], [1, 1]], 0)
    assert all(m.mul(x, x) == x for x in m.elements)
    assert all(m.mul(x, y) == m.mul(y, x) for x in m.elements for y in m.elements)
    assert m == u1()


def test_non_associative_witness():
    # identity 0; 1*1 = 2, 1*2 = 0, 2*2 = 2: (1*1)*2 = 2 but 1*(1*2) = 0
    table = [[0, 1, 2], [1, 2, 0], [2, 2, 2]]
    with pytest.raises(NonAssociative) as exc:
        from_table(3, table, 0)
    a, b, c = exc.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_bad_identity_and_range():
    with pytest.raises(BadIdentity):
        from_table(2, [[0, 0], [0, 1]], 0)
    with pytest.raises(IndexOutOfRange):
        from_table(2, [[0, 1], [1, 2]], 0)
    with pytest.raises(IndexOutOfRange):
        from_table(2, [[0, 1], [1, 1]], 5)


def _brute_valid(n, table, identity):
    if any(not 0 <= x < n for row in table for x in row):
        return False
    if not all(table[identity][a] == a == table[a][identity] for a in range(n)):
        return False
    return all(
        table[table[a][b]][c] == table[a][table[b][c]] for a, b, c in itertools.product(range(n), repeat=3)
    )


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_from_table_fuzz_matches_brute_validator(data):
    base = data.draw(st.sampled_from([u1(), cyclic_group(3), monogenic_monoid(2), monogenic_monoid(1, 2)]))
    table = [list(r) for r in base.table]
    for _ in range(data.draw(st.integers(0, 2))):
        i = data.draw(st.integers(0, base.size - 1))
        j = data.draw(st.integers(0, base.size - 1))
        table[i][j] = data.draw(st.integers(0, base.size))
    expected = _brute_valid(base.size, table, 0)
    try:
        from_table(base.size, table, 0)
        accepted = True
    except (NonAssociative, BadIdentity, IndexOutOfRange):
        accepted = False
    assert accepted == expected


def test_apply_morphism_examples(aA):
    phi = Morphism.from_mapping("ab", u1(), {"a": 1, "b": 0})
    assert apply_morphism(phi, "") == 0
    phi = Morphism.from_mapping("ab", u1(), {"a": 1, "b": 1})
    assert apply_morphism(phi, "ab") == 1
    assert aA.monoid.name(apply_morphism(aA.morphism, "ba")) == "b"
    with pytest.raises(UnknownLetter):
        apply_morphism(phi, "c")


@given(st.text("ab", max_size=8), st.text("ab", max_size=8))
def test_morphism_homomorphism_law(u, v):
    r = language_from_spec("(ab)*")
    m, phi = r.monoid, r.morphism
    assert phi(u + v) == m.mul(phi(u), phi(v))


def test_omega_examples():
    z3 = cyclic_group(3)
    assert omega(z3, 0) == 0
    assert omega(z3, 1) == 0
    assert omega(u1(), 1) == 1


@pytest.mark.parametrize("m", [cyclic_group(5), monogenic_monoid(3, 4), u1(), union_semilattice(
    [frozenset(), frozenset("a"), frozenset("b"), frozenset("ab")])])
def test_omega_is_idempotent_power(m):
    for a in m.elements:
        e = omega(m, a)
        assert m.mul(e, e) == e
        powers = [a]
        while len(powers) < 2 * m.size:
            powers.append(m.mul(powers[-1], a))
        assert e in powers
        assert e == next(p for p in powers if m.mul(p, p) == p)


def test_closure_examples(aA):
    m = u1()
    assert closure(m, [])[0] == {0}
    assert closure(m, [1])[0] == {0, 1}
    elems, witness = closure(aA.monoid, [1, 2])
    assert elems == {0, 1, 2}
    for x, word in witness.items():
        assert aA.monoid.product(word) == x


def test_direct_product_examples():
    m = monogenic_monoid(2)
    p, (pr1, pr2) = direct_product(m, trivial_monoid())
    assert p.table == m.table
    p, _ = direct_product(u1(), u1())
    assert p.size == 4 and p.identity == 0
    z3 = cyclic_group(3)
    p, (pr1, pr2) = direct_product(z3, u1())
    g0 = next(x for x in p.elements if pr1[x] == 1 and pr2[x] == 1)
    e = omega(p, g0)
    assert (pr1[e], pr2[e]) == (0, 1)


def test_structural_checks(aA):
    assert structural_j_check(trivial_monoid())
    assert structural_j_check(u1())
    assert not structural_j_check(aA.monoid)
    assert structural_da_check(u1())
    assert structural_da_check(aA.monoid)
    assert not structural_da_check(cyclic_group(3))


def test_divides_examples(aA):
    for n in (u1(), cyclic_group(3), aA.monoid):
        assert divides(trivial_monoid(), n)
        assert divides(n, n)
    assert not divides(u1(), cyclic_group(3))
    assert divides(u1(), aA.monoid)
    assert divides(cyclic_group(2), cyclic_group(4))
    assert not divides(cyclic_group(3), cyclic_group(4))


def test_json_round_trip_is_byte_stable(aA):
    for m in (u1(), cyclic_group(4), aA.monoid):
        text = m.dumps()
        again = FiniteMonoid.loads(text)
        assert again == m and again.dumps() == text
        assert json.loads(text)["size"] == m.size


def test_canonical_moves_identity_to_zero():
    m = FiniteMonoid(((0, 0), (0, 1)), 1)
    c = m.canonical()
    assert c.identity == 0 and c.table == u1().table
