import pytest
from hypothesis import given
from hypothesis import strategies as st

from fo2hier.errors import BudgetExceeded
from fo2hier.monoid import union_semilattice
from fo2hier.oracles import brute_simon_classes, brute_subwords
from fo2hier.simon import equivalent_k, simon_quotient, subword_class
from fo2hier.terms import variety_membership


def test_subword_class_examples():
    assert subword_class("", 3).members == {""}
    assert subword_class("ab", 1).members == {"", "a", "b"}
    assert subword_class("aba", 2).members == {"", "a", "b", "aa", "ab", "ba"}


def test_equivalent_k_examples():
    assert equivalent_k("ab", "ba", 1)
    assert not equivalent_k("ab", "ba", 2)
    assert equivalent_k("aab", "aaab", 2)


@given(st.text("abc", max_size=9), st.integers(0, 4))
def test_subword_class_matches_brute(w, k):
    assert subword_class(w, k, "abc").members == brute_subwords(w, k)


@given(st.text("ab", max_size=7), st.text("ab", max_size=7), st.integers(0, 3))
def test_class_product_is_concatenation(u, v, k):
    assert subword_class(u, k, "ab") * subword_class(v, k, "ab") == subword_class(u + v, k, "ab")


@given(st.text("ab", max_size=7), st.text("ab", max_size=7), st.integers(0, 3))
def test_quotient_morphism_is_homomorphism(u, v, k):
    q = simon_quotient("ab", k)
    m, psi = q
    assert psi(u + v) == m.mul(psi(u), psi(v))
    assert q.class_of(u) == psi(u)


@given(st.text("ab", max_size=8), st.text("ab", max_size=8), st.integers(0, 3))
def test_refinement(u, v, k):
    if equivalent_k(u, v, k + 1):
        assert equivalent_k(u, v, k)


def test_unary_sizes():
    assert [simon_quotient("a", k).monoid.size for k in range(11)] == list(range(1, 12))
    assert [c.sorted_members for c in simon_quotient("a", 3).classes] == [
        [""], ["", "a"], ["", "a", "aa"], ["", "a", "aa", "aaa"]
    ]


def test_binary_k1_is_letter_content_semilattice():
    q = simon_quotient("ab", 1)
    subsets = [frozenset(), frozenset("a"), frozenset("b"), frozenset("ab")]
    assert q.monoid.size == 4
    assert q.monoid.canonical().table == union_semilattice(subsets).table


def test_binary_k2_matches_brute():
    brute = brute_simon_classes("ab", 2, 8)
    assert brute.stabilized
    assert simon_quotient("ab", 2).monoid.size == brute.count == 16


def test_known_sizes():
    assert simon_quotient("ab", 3).monoid.size == 68
    assert simon_quotient("abc", 2).monoid.size == 152


@pytest.mark.parametrize("alphabet,k", [("a", 5), ("ab", 1), ("ab", 2), ("ab", 3), ("abc", 1)])
def test_quotients_are_j_trivial(alphabet, k):
    assert variety_membership(simon_quotient(alphabet, k).monoid, "J")


def test_restrict_commutes_with_class():
    for w in ["abba", "aab", "", "babab"]:
        assert subword_class(w, 3, "ab").restrict(1) == subword_class(w, 1, "ab")


def test_quotient_budget():
    with pytest.raises(BudgetExceeded) as exc:
        simon_quotient("ab", 3, size_budget=20)
    assert exc.value.partial == 20  # classes found when the search stopped
