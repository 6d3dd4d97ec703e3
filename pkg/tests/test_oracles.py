import random

import pytest

from fo2hier.language import compile_language
from fo2hier.monoid import Morphism, u1
from fo2hier.kernel import pair_closure
from fo2hier.oracles import (
    brute_arrow_equivalence,
    brute_simon_classes,
    brute_syntactic_congruence,
    latest_embedding_end,
    lemma_hypothesis,
    random_lemma_instance,
    stable_under,
    suffix_factorization,
    words_up_to,
)
from fo2hier.simon import simon_quotient, subword_class


def test_words_up_to_order():
    assert list(words_up_to("ab", 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]


def test_congruence_examples():
    assert len(brute_syntactic_congruence(compile_language("(a|b)*"), 3)) == 1
    assert len(brute_syntactic_congruence(compile_language("a(a|b)*"), 4)) == 3
    assert len(brute_syntactic_congruence(compile_language("(a|b)*a(a|b)*"), 4)) == 2


def test_simon_class_examples():
    assert brute_simon_classes("a", 2, 5).count == 3
    assert brute_simon_classes("ab", 1, 4).count == 4
    res = brute_simon_classes("ab", 2, 8)
    assert res.stabilized and res.count == simon_quotient("ab", 2).monoid.size


@pytest.mark.parametrize("q", [1, 2, 3])
def test_suffix_factorization_examples(q):
    f = suffix_factorization("ab" * q, {"a", "b"}, q)
    assert f.blocks == ("ab",) * q and f.prefix == ""
    f = suffix_factorization("b" + "ab" * q, {"a", "b"}, q)
    assert f.suffix.endswith("ab" * q) and f.prefix + f.suffix == "b" + "ab" * q


def test_suffix_factorization_absent():
    assert suffix_factorization("ab", {"a", "b"}, 2) is None
    with pytest.raises(ValueError):
        suffix_factorization("aa", {"b"}, 1)


def test_stable_under_matches_subword_classes():
    rng = random.Random(3)
    for _ in range(1500):
        z = "".join(rng.choice("abc") for _ in range(rng.randint(0, 10)))
        b = rng.choice("abc")
        for t in range(5):
            expected = subword_class(z + b, t, "abc") == subword_class(z, t, "abc")
            assert stable_under(z, b, t) == expected, (z, b, t)


def test_latest_embedding_end():
    assert latest_embedding_end("", 3) == -1
    assert latest_embedding_end("aab", 1) == 2
    assert latest_embedding_end("abab", 2) == 3


def test_random_instances_satisfy_hypothesis():
    rng = random.Random(5)
    for _ in range(50):
        z, required = random_lemma_instance(rng, "ab", 2)
        assert lemma_hypothesis(z, required, 2)


def test_brute_arrow_examples():
    phi = Morphism.from_mapping("a", u1(), {"a": 1})
    pc = pair_closure(phi, simon_quotient("a", 0).morphism)
    assert brute_arrow_equivalence(pc, (0, 0), (0, 0), "a", "a", 3)
    assert brute_arrow_equivalence(pc, (0, 0), (0, 0), "a", "aa", 3)
    assert not brute_arrow_equivalence(pc, (0, 0), (0, 0), "", "a", 3)
