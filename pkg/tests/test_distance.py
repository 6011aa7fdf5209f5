from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorexit.distance import (
    brute_force_cantor_distance,
    cantor_distance_via_exit,
    clearance_bound_check,
    format_report,
)
from cantorexit.orbit import exit_time, trace_orbit
from cantorexit.surd import InvalidPolynomial, QuadraticPoly, QuadraticSurd, RootChoice, surd_from_poly

F3 = QuadraticPoly(1, 2, -2)
SQRT3_M1 = QuadraticSurd(-1, 1, 3)


def test_sqrt3_closed_form():
    rep = cantor_distance_via_exit(exit_time(SQRT3_M1, poly=F3))
    assert rep.exit_time == 3
    assert rep.cantor_distance == QuadraticSurd(Fraction(47, 27), -1, 3)
    assert rep.nearest_cantor_point == Fraction(20, 27)
    assert brute_force_cantor_distance(SQRT3_M1, 3) == rep.cantor_distance


def test_sqrt2_level_one():
    x = QuadraticSurd(-1, 1, 2)
    assert brute_force_cantor_distance(x, 1) == QuadraticSurd(Fraction(-4, 3), 1, 2)


def test_half():
    half = QuadraticSurd(Fraction(1, 2), 0, 2)
    rep = cantor_distance_via_exit(trace_orbit(half))
    assert rep.exit_time == 1
    assert rep.cantor_distance == Fraction(1, 6)
    assert rep.nearest_cantor_point == Fraction(1, 3)
    assert brute_force_cantor_distance(half, 1) == Fraction(1, 6)


def test_point_inside_cantor_level():
    assert brute_force_cantor_distance(QuadraticSurd(Fraction(1, 4), 0, 2), 6) == 0


def test_truncated_orbit_rejected():
    with pytest.raises(ValueError):
        cantor_distance_via_exit(trace_orbit(QuadraticSurd(Fraction(1, 4), 0, 2), 20))


def test_level_range():
    with pytest.raises(ValueError):
        brute_force_cantor_distance(SQRT3_M1, 0)
    with pytest.raises(ValueError):
        brute_force_cantor_distance(SQRT3_M1, 21)


def test_bounds_sqrt3():
    chk = clearance_bound_check(F3, exit_time(SQRT3_M1, poly=F3))
    assert chk.N == 3 and chk.clearance_ok and chk.distance_ok


def test_report_fields():
    rep = format_report(cantor_distance_via_exit(exit_time(SQRT3_M1, poly=F3)))
    assert rep["nearest"] == "20/27"
    assert rep["distance_decimal"].startswith("0.00868993317")


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 15), st.integers(-15, 15), st.integers(-15, 15), st.sampled_from(list(RootChoice)))
def test_oracle_agreement(a, b, c, root):
    try:
        f = QuadraticPoly(a, b, c)
    except InvalidPolynomial:
        return
    rec = exit_time(surd_from_poly(f, root), poly=f)
    if rec.exit_time > 12:
        return
    rep = cantor_distance_via_exit(rec)
    N = rep.exit_time
    assert brute_force_cantor_distance(rec.theta0, max(N, 1)) == rep.cantor_distance
    assert rep.cantor_distance < Fraction(1, 3**N)
    # one level finer changes nothing once the gap has opened
    if N < 12:
        assert brute_force_cantor_distance(rec.theta0, N + 1) == rep.cantor_distance
