import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from klein_actions.circle import (
    _two_copy_decode,
    _two_copy_encode,
    compactify,
    figure3_circle,
    figure3_generators,
    fixed_points,
    g1_action_checks,
    g1_circle_generators,
    g1_involution,
    identity_circle,
    lemma32_check,
    relation_error,
    rigid_rotation,
    rotation_number,
    sine_flow,
    translation,
    write_displacement_csv,
)

a_line, b_line = figure3_generators()


def test_line_b_fixes_integers():
    assert np.all(b_line(np.arange(-5, 6)) == np.arange(-5, 6))


def test_line_relation():
    x = np.linspace(-3, 3, 6001)
    assert np.max(np.abs(a_line(b_line(a_line.inverse()(x))) - b_line.inverse()(x))) < 1e-9


def test_line_b_half():
    assert b_line(0.5) == pytest.approx(2 / np.pi * np.arctan(np.exp(np.pi)), abs=1e-15)
    assert b_line(0.5) == pytest.approx(0.9725, abs=1e-4)


@given(st.floats(-20, 20))
def test_sine_flow_group_law(x):
    assert sine_flow(0.4)(sine_flow(0.6)(x)) == pytest.approx(float(sine_flow(1.0)(x)), abs=1e-12)
    assert float(b_line.inverse()(b_line(x))) == pytest.approx(x, abs=1e-9)
    assert float(b_line(-x)) == -float(b_line(x))


def test_rigid_rotations():
    assert rotation_number(rigid_rotation(0.5)) == 0.5
    assert rotation_number(identity_circle()) == 0.0


def test_map_with_fixed_point_has_small_rotation():
    n = 500
    assert abs(rotation_number(compactify(translation(3.0)), n)) <= 2 / n


def test_rotation_number_validation():
    with pytest.raises(ValueError):
        rotation_number(identity_circle(), 0)


def test_g1_rotation_numbers():
    a, b = g1_circle_generators()
    assert rotation_number(b, 10_000) == pytest.approx(0.5, abs=2e-4)
    assert rotation_number(a, 1000) == pytest.approx(0.0, abs=2e-3)


@given(st.floats(-10, 10))
def test_g1_b_squared_is_b_prime_on_first_copy(x):
    _, b = g1_circle_generators()
    u = _two_copy_encode(np.array([0]), np.array([x]))
    copy, y = _two_copy_decode(b.power(2)(u) % 1.0)
    assert copy[0] == 0
    assert y[0] == pytest.approx(float(b_line(x)), rel=1e-7, abs=1e-7)


def test_g1_b_is_involution_then_b_prime():
    r = g1_involution()
    u = np.arange(256) / 256
    assert np.max(np.abs(r.power(2)(u) - u - 1)) < 1e-12


def test_g1_action_report():
    rep = g1_action_checks(grid=1024, tol=1e-7, iterations=10_000)
    assert rep["pass"]
    assert all(v < 1e-7 for v in rep["relations"].values())
    assert all(v < 1e-7 for v in rep["commutators"].values())


def test_fixed_points_of_compactified_b():
    fb = fixed_points(figure3_circle()[1])
    # infinity plus the integers visible at grid resolution
    assert 0.0 in [float(x) for x in fb["points"]] or len(fb["components"]) > 1
    assert len(fb["points"]) > 10


def test_lemma32_figure3():
    rep = lemma32_check(*figure3_circle())
    assert rep["status"] == "pass" and rep["strict_inclusion"]
    assert rep["fix_a"] == [[0.0, 0.0]]


def test_lemma32_degenerate_inputs():
    rep = lemma32_check(identity_circle(), identity_circle())
    assert rep["pass"] and rep["vacuous"]
    rep = lemma32_check(rigid_rotation(0.5), identity_circle())
    assert rep["status"] == "precondition_failed"


def test_lemma32_relation_precondition():
    rep = lemma32_check(rigid_rotation(0.1), compactify(b_line))
    assert rep["status"] == "precondition_failed"


def test_relation_error_detects_difference():
    assert relation_error(rigid_rotation(0.1), rigid_rotation(0.1)) == 0.0
    assert relation_error(rigid_rotation(0.1), rigid_rotation(0.2)) == pytest.approx(0.1)


def test_displacement_csv():
    buf = io.StringIO()
    write_displacement_csv(buf, rigid_rotation(0.25), np.array([0.0, 0.5]))
    rows = buf.getvalue().splitlines()
    assert rows == ["x,f(x)-x", "0.0,0.25", "0.5,0.25"]
