import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from klein_actions.klein import (
    A,
    B,
    INT_MAX,
    RELATOR,
    BsElement,
    bs_inverse,
    bs_multiply,
    bs_reduce,
    bs_subgroup_membership,
    rewrite_letters,
)
from klein_actions.plane import ModelMap

from strategies import bs_elements, raw_words


def test_product_examples():
    assert BsElement(0, 1) * BsElement(1, 0) == BsElement(1, -1)
    assert BsElement(0, 3) * BsElement(0, -5) == BsElement(0, -2)
    for p in (-3, 1, 5):
        x = BsElement(p, 4)
        assert x * x == BsElement(2 * p, 0)


def test_inverse_examples():
    assert bs_inverse(BsElement()) == BsElement()
    assert bs_inverse(BsElement(1, 1)) == BsElement(-1, 1)
    assert bs_inverse(BsElement(2, 3)) == BsElement(-2, -3)


def test_reduce_examples():
    assert bs_reduce("bab") == BsElement(1, 0)
    assert bs_reduce("aba^-1b") == BsElement()
    assert bs_reduce("") == BsElement()
    assert bs_reduce(RELATOR) == BsElement()


def test_rewrite_puts_a_letters_first():
    out = rewrite_letters([(B, 1), (A, 1), (B, 1), (A, -1)])
    assert [g for g, _ in out] == [A, A, B, B]


def test_subgroups():
    assert bs_subgroup_membership(BsElement(2, 5), "even_a_and_b")
    assert not bs_subgroup_membership(BsElement(1, 0), "even_a_and_b")
    assert bs_subgroup_membership(BsElement(3, 2), "a_and_even_b")
    with pytest.raises(ValueError):
        bs_subgroup_membership(BsElement(), "other")


def test_a_and_even_b_reached_by_generators():
    gens = [BsElement(1, 0), BsElement(-1, 0), BsElement(0, 2), BsElement(0, -2)]
    seen = {BsElement()}
    frontier = set(seen)
    for _ in range(6):
        frontier = {x * g for x in frontier for g in gens} - seen
        seen |= frontier
    assert BsElement(3, 2) in seen
    assert all(bs_subgroup_membership(x, "a_and_even_b") for x in seen)


def test_overflow_is_checked():
    with pytest.raises(OverflowError):
        BsElement(INT_MAX, 0) * BsElement(1, 0)
    with pytest.raises(OverflowError):
        BsElement(0, INT_MAX + 1)


@pytest.mark.parametrize("bad,field", [
    ({"q": 1}, "'p'"),
    ({"p": 1, "q": "x"}, "'q'"),
    ({"p": True, "q": 0}, "'p'"),
])
def test_from_json_names_field(bad, field):
    with pytest.raises(ValueError, match=field):
        BsElement.from_json(bad)


@given(bs_elements, bs_elements, bs_elements)
def test_group_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == BsElement() == x.inverse() * x
    assert x * BsElement() == x


@given(bs_elements)
def test_json_roundtrip(x):
    assert BsElement.from_json(json.dumps(x.to_json())) == x
    assert bs_reduce(x.to_word()) == x


@given(raw_words, raw_words)
def test_reduce_is_homomorphism(u, v):
    assert bs_reduce(u + v) == bs_multiply(bs_reduce(u), bs_reduce(v))


@given(raw_words, st.integers(0, 12), st.booleans())
def test_relator_insertion(w, pos, invert):
    r = [(g, -s) for g, s in reversed(RELATOR)] if invert else list(RELATOR)
    pos = min(pos, len(w))
    assert bs_reduce(w[:pos] + r + w[pos:]) == bs_reduce(w)


def test_exhaustive_short_words():
    letters = [(A, 1), (A, -1), (B, 1), (B, -1)]
    for n in range(5):
        for w in itertools.product(letters, repeat=n):
            x = bs_reduce(w)
            y = BsElement()
            for g, s in w:
                y = y * (BsElement(s, 0) if g == A else BsElement(0, s))
            assert x == y


_SAMPLES = np.array([[0.3, 0.1], [1.1, -0.7], [-2.0, 0.4]])


@given(raw_words, raw_words)
def test_equal_iff_plane_images_agree(u, v):
    x, y = bs_reduce(u), bs_reduce(v)
    same = np.allclose(ModelMap(x)(_SAMPLES), ModelMap(y)(_SAMPLES), atol=1e-9)
    assert same == (x == y)
