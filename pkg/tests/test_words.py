import pytest
from hypothesis import given

from klein_actions.words import (
    F2_ALPHABET,
    ReducedWord,
    TruncatedSeries,
    all_reduced_words,
    f2_compare,
    f2_sign,
    magnus_expand,
    parse_syllables,
    phi_power,
    sigma,
)

from strategies import f2_words

W = lambda s: ReducedWord.parse(s)


def test_cancellation():
    assert (W("a") * W("a^-1")).is_identity()
    assert W("a g") * W("g^-1 a") == W("a^2")
    assert W("a g a^-1") * W("a g") == W("a g^2")


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        W("a") * ReducedWord.parse("b", ("a", "b"))


@pytest.mark.parametrize("text,expected", [
    ("a^2 g^-1", ((0, 2), (1, -1))),
    ("agA", ((0, 1), (1, 1), (0, -1))),
    ("α²γα⁻¹", ((0, 2), (1, 1), (0, -1))),
    ("a a a^-1", ((0, 1),)),
    ("e", ()),
])
def test_parse(text, expected):
    assert W(text).syllables == expected


def test_parse_rejects_unknown_letter():
    with pytest.raises(ValueError, match="unknown generator"):
        parse_syllables("a x", F2_ALPHABET)


def test_sigma():
    assert sigma(W("e")) == 0
    assert sigma(W("a^2 g a^-1")) == 1
    assert sigma(W("g^5")) == 0


def test_phi():
    assert phi_power(W("a g"), 2) == W("a g")
    assert phi_power(W("a g"), 1) == W("a g^-1")
    assert phi_power(W("g^3 a^-1 g^-1"), -1) == W("g^-3 a^-1 g")


def test_magnus_examples():
    assert magnus_expand(W("e"), 3) == TruncatedSeries.one(3)
    assert magnus_expand(W("a"), 2) == TruncatedSeries(2, {(): 1, (0,): 1})
    # commutator: 1 + XY - YX
    assert magnus_expand(W("a g a^-1 g^-1"), 2) == TruncatedSeries(2, {(): 1, (0, 1): 1, (1, 0): -1})


def test_magnus_rejects_negative_degree():
    with pytest.raises(ValueError):
        magnus_expand(W("a"), -1)


def test_all_reduced_words_counts():
    # 1 + 4 + 4*3 + 4*9
    assert len(all_reduced_words(3)) == 53
    assert len(set(all_reduced_words(4))) == len(all_reduced_words(4))


def test_magnus_kernel_trivial_up_to_length_6():
    for w in all_reduced_words(6):
        if not w.is_identity():
            assert not magnus_expand(w, len(w)).is_one(), str(w)


def test_magnus_injective_up_to_length_4():
    words = all_reduced_words(4)
    series = {magnus_expand(w, 8) for w in words}
    assert len(series) == len(words)


@given(f2_words, f2_words, f2_words)
def test_free_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert (u * u.inverse()).is_identity()
    assert u * ReducedWord.identity() == u


@given(f2_words)
def test_str_roundtrip(w):
    assert ReducedWord.parse(str(w)) == w


@given(f2_words, f2_words)
def test_phi_and_sigma_are_morphisms(u, v):
    assert phi_power(u * v, 1) == phi_power(u, 1) * phi_power(v, 1)
    assert phi_power(phi_power(u, 1), 1) == u
    assert sigma(u * v) == sigma(u) + sigma(v)


@given(f2_words, f2_words)
def test_magnus_is_multiplicative(u, v):
    d = 4
    assert magnus_expand(u * v, d) == magnus_expand(u, d) * magnus_expand(v, d)


@given(f2_words, f2_words, f2_words)
def test_f2_order_left_invariant_and_antisymmetric(u, v, g):
    c = f2_compare(u, v)
    assert c == -f2_compare(v, u)
    assert (c == 0) == (u == v)
    assert f2_compare(g * u, g * v) == c


@given(f2_words, f2_words)
def test_f2_positive_cone_closed(u, v):
    if f2_sign(u) > 0 and f2_sign(v) > 0:
        assert f2_sign(u * v) > 0
