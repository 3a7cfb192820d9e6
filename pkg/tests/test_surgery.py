import ast
import inspect
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from cmtangle import surgery
from cmtangle.graphlat import GoeritzMatrix
from cmtangle.surgery import (SurgeryError, SurgeryVerdict, VSequence, d_tilde, det_check,
                              gibbons_hypothesis_ok, greene_bound_ok, montesinos_slope,
                              slope_from_lattice, small_slope_verdict, theorem_slope, window,
                              z_count, z_count_enumerated)


def test_vsequence():
    V = VSequence.canonical(3)
    assert V.values == (3, 2, 1, 0)
    assert V.gtilde == 3
    assert V[10] == 0
    assert VSequence((0,)).gtilde == 0
    with pytest.raises(SurgeryError):
        VSequence((1, 2))
    with pytest.raises(SurgeryError):
        VSequence((-1,))


def test_d_tilde_examples():
    assert d_tilde(VSequence((0,)), 7, 2, 3) == 0
    assert d_tilde(VSequence((1, 0)), 7, 2, 0) == -2
    assert d_tilde(VSequence((1, 0)), 7, 2, 3) == 0


def test_d_tilde_errors():
    with pytest.raises(SurgeryError):
        d_tilde(VSequence((1, 0)), 7, 2, 7)
    with pytest.raises(SurgeryError):
        d_tilde(VSequence((1, 0)), 6, 2, 0)


def test_z_count_examples():
    assert z_count(0, 13, 5) == 13
    assert z_count(1, 7, 2) == 5
    assert z_count(2, 5, 2) == 0


def test_greene_examples():
    for n in range(1, 30):
        assert greene_bound_ok(0, n, 1)
    assert greene_bound_ok(1, 4, 1)
    assert not greene_bound_ok(2, 4, 1)


def test_greene_uses_integers_only():
    tree = ast.parse(inspect.getsource(surgery.greene_bound_ok))
    for node in ast.walk(tree):
        assert not (isinstance(node, ast.Constant) and isinstance(node.value, float))
        assert not (isinstance(node, ast.Attribute) and node.attr in ("sqrt", "isqrt"))
        assert not (isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Pow)))


def test_hypothesis_check_examples():
    assert gibbons_hypothesis_ok(0, 5, 2)
    assert gibbons_hypothesis_ok(1, 7, 2)
    assert not gibbons_hypothesis_ok(3, 7, 2)


def test_montesinos_examples():
    assert montesinos_slope(Fraction(2, 3), 21) == Fraction(-107, 5)
    for n in range(1, 20):
        assert montesinos_slope(Fraction(1), n - 1) == -(n - Fraction(1, 2))
    assert montesinos_slope(Fraction(0), 7) == -7
    with pytest.raises(SurgeryError):
        montesinos_slope(Fraction(-1, 2), 3)


def test_theorem_slope_examples():
    assert theorem_slope(22, 3, 5) == (107, Fraction(-107, 5))
    for n in range(1, 20):
        assert theorem_slope(n, 1, 2) == (2 * n - 1, Fraction(-(2 * n - 1), 2))
    assert theorem_slope(1, 1, 2) == (1, Fraction(-1, 2))
    with pytest.raises(SurgeryError):
        theorem_slope(5, 0, 3)
    with pytest.raises(SurgeryError):
        theorem_slope(5, 3, 3)


def test_slope_from_lattice():
    assert slope_from_lattice(Fraction(107, 5)) == (22, 3, 107, Fraction(-107, 5))


def test_small_slope_examples():
    assert small_slope_verdict(Fraction(1, 2))["knot"] == "unknot"
    assert small_slope_verdict(Fraction(3, 4))["manifold"] == "lens space"
    with pytest.raises(SurgeryError):
        small_slope_verdict(Fraction(5, 4))


def test_det_check_examples():
    assert det_check(GoeritzMatrix(1, ((3,),)), 3)
    assert det_check(GoeritzMatrix(2, ((5, -1), (-1, 2))), 9)
    assert not det_check(GoeritzMatrix(2, ((5, -1), (-1, 2))), 10)


def test_verdict_consistency():
    v = SurgeryVerdict(107, 5, 2)
    assert v.z == 107 - 3 * 5
    assert v.z_branch == "p/q>2gtilde-1"
    assert not v.obstructed
    v = SurgeryVerdict(7, 2, 3)
    assert v.z == 0 and v.z_branch == "p/q<=2gtilde-1" and v.obstructed
    assert SurgeryVerdict(13, 5, 0).z_branch == "gtilde=0"


def test_z_count_vs_enumeration_spot():
    for p in range(1, 60):
        for q in range(1, 8):
            if gcd(p, q) != 1:
                continue
            for g in range(6):
                assert z_count(g, p, q) == z_count_enumerated(VSequence.canonical(g), p, q)


@given(st.integers(1, 200), st.integers(1, 20), st.integers(0, 10))
def test_zero_window(p, q, g):
    if gcd(p, q) != 1:
        return
    V = VSequence.canonical(g)
    zeros = {i for i in range(p) if d_tilde(V, p, q, i) == 0}
    assert all(d_tilde(V, p, q, i) <= 0 for i in range(p))
    assert zeros == set(window(g, p, q)) & set(range(p))
    if g:
        assert zeros == {i for i in range(g * q, p + q - g * q)}


@given(st.integers(1, 30), st.integers(2, 20), st.data())
def test_slope_identity(n, q, data):
    r = data.draw(st.integers(1, q - 1))
    p, slope = theorem_slope(n, r, q)
    assert p == q * n - r
    assert montesinos_slope(Fraction(q - r, r), n - 1) == slope == Fraction(-p, q)
