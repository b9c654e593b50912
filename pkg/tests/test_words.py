import pytest
from hypothesis import given, strategies as st

from sclcert.surface import builtin_config
from sclcert.words import (
    TwistGen, TwistWord, WordError, conjugate, exponent_sums, free_reduce, invert, multiply, parse_word,
)

CFG = builtin_config("chain5", 3)

letters = st.lists(st.tuples(st.sampled_from(CFG.ids), st.sampled_from((1, -1))), max_size=20)


def W(text, cfg=CFG):
    return parse_word(text, cfg)


def nonzero(d):
    return {k: v for k, v in d.items() if v}


def test_parse_and_print():
    w = W("a4 a5 a3' a3' a1' a1'")
    assert len(w) == 6
    assert w[2] == TwistGen("a3", -1)
    assert str(w) == "a4 a5 a3' a3' a1' a1'"
    with pytest.raises(Exception):
        W("a9")


def test_multiply():
    assert len(W("a1") * W("a1'")) == 2
    assert TwistWord(CFG) * W("a2 a1") == W("a2 a1")
    assert len(W("a2 a1") * W("a2 a1")) == 4


def test_multiply_config_mismatch():
    with pytest.raises(WordError):
        multiply(W("a1"), W("a1", builtin_config("chain5", 2)))


def test_invert():
    assert invert(W("a1 a2")) == W("a2' a1'")
    assert invert(TwistWord(CFG)).is_empty()


def test_free_reduce():
    assert free_reduce(W("a1 a2 a2' a1")) == W("a1 a1")
    assert free_reduce(W("a1 a1'")).is_empty()
    w = W("a1 a2 a3")
    assert free_reduce(w) == w


def test_exponent_sums():
    assert nonzero(exponent_sums(W("a2 a1") ** 6)) == {"a2": 6, "a1": 6}
    assert nonzero(exponent_sums(W("a4 a5 a3' a3' a1' a1'"))) == {"a4": 1, "a5": 1, "a3": -2, "a1": -2}
    assert set(exponent_sums(TwistWord(CFG)).values()) == {0}


def test_conjugate():
    Y = W("a2 a3 a1 a2")
    assert conjugate(W("a2"), Y) == W("a2 a2 a3 a1 a2 a2'")
    assert conjugate(TwistWord(CFG), Y) == Y
    assert free_reduce(conjugate(Y, TwistWord(CFG))).is_empty()


@given(letters)
def test_inverse_cancels(ls):
    w = TwistWord(CFG, ls)
    assert free_reduce(multiply(w, invert(w))).is_empty()
    assert invert(invert(w)) == w


@given(letters)
def test_free_reduce_idempotent_and_shorter(ls):
    w = TwistWord(CFG, ls)
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert exponent_sums(r) == exponent_sums(w)
