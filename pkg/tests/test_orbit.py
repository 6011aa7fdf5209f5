from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorexit.orbit import (
    ceil_log3,
    check_cover,
    check_deep_doubling,
    check_lrun_geometry,
    check_universal_lrun,
    classify_deep,
    delta_cantor,
    exit_time,
    fractional_part,
    is_baby_resonant,
    k_max_floor_formula,
    k_max_strict,
    next_digit,
    run_block_decomposition,
    shallow_contribution,
    trace_orbit,
)
from cantorexit.surd import InvalidPolynomial, QuadraticPoly, QuadraticSurd, RootChoice, surd_from_poly

SQRT3_M1 = QuadraticSurd(-1, 1, 3)
SQRT2_M1 = QuadraticSurd(-1, 1, 2)
F3 = QuadraticPoly(1, 2, -2)


def rat(r, D=2):
    return QuadraticSurd(r, 0, D)


def from_digits(digits: str, tail=Fraction(1, 2)):
    """Rational point whose ternary expansion starts with ``digits`` then ``tail``."""
    v = Fraction(0)
    for d in digits:
        v = 3 * v + int(d)
    return rat((v + tail) / 3 ** len(digits))


def orbit_cases():
    def build(t):
        a, b, c, plus = t
        try:
            f = QuadraticPoly(a, b, c)
        except InvalidPolynomial:
            return None
        return f, RootChoice.PLUS if plus else RootChoice.MINUS

    return st.tuples(
        st.integers(1, 30), st.integers(-30, 30), st.integers(-30, 30), st.booleans()
    ).map(build).filter(lambda x: x is not None)


class TestPoints:
    def test_fractional_part(self):
        assert fractional_part(SQRT3_M1) == SQRT3_M1
        assert fractional_part(rat(Fraction(5, 2))) == Fraction(1, 2)
        assert fractional_part(-SQRT2_M1) == QuadraticSurd(2, -1, 2)

    def test_next_digit(self):
        d, t = next_digit(SQRT3_M1)
        assert d == 2 and t == QuadraticSurd(-5, 3, 3)
        assert abs(float(t) - 0.19615) < 1e-5
        d, t = next_digit(t)
        assert d == 0 and t == QuadraticSurd(-15, 9, 3)
        assert abs(float(t) - 0.58846) < 1e-5
        assert next_digit(rat(0)) == (0, 0)

    def test_ceil_log3(self):
        assert [ceil_log3(n) for n in (1, 2, 3, 4, 9, 10)] == [0, 1, 1, 2, 2, 3]


class TestExitTime:
    def test_named(self):
        assert exit_time(SQRT2_M1).exit_time == 1
        rec = exit_time(SQRT3_M1, poly=F3)
        assert rec.exit_time == 3
        assert rec.itinerary == "RLM"
        assert exit_time(QuadraticSurd(Fraction(-1, 2), Fraction(1, 2), 5)).exit_time == 1

    def test_rational_rejected(self):
        with pytest.raises(ValueError):
            exit_time(rat(Fraction(1, 2)))

    def test_truncation(self):
        rec = trace_orbit(rat(Fraction(1, 4)), 50)
        assert rec.truncated and rec.exit_time is None
        assert rec.itinerary == "LR" * 25

    @settings(max_examples=200, deadline=None)
    @given(orbit_cases())
    def test_exit_convention(self, case):
        f, root = case
        rec = exit_time(surd_from_poly(f, root), poly=f)
        assert not rec.truncated
        assert rec.exit_time == rec.itinerary.index("M") + 1
        assert "M" not in rec.itinerary[:-1]

    @settings(max_examples=200, deadline=None)
    @given(orbit_cases(), st.integers(1, 60))
    def test_digit_reconstruction(self, case, N):
        f, root = case
        rec = exit_time(surd_from_poly(f, root), max_steps=N, poly=f)
        n = len(rec.itinerary)
        approx = Fraction(rec.prefix_value(n), 3**n)
        gap = rec.theta0 - approx
        assert gap >= 0
        assert gap < Fraction(1, 3**n)
        # independent of the batched kernel: step-by-step digit extraction
        t, digits = rec.theta0, ""
        for _ in range(n):
            d, t = next_digit(t)
            digits += str(d)
        assert digits == rec.digits
        assert rec.theta(n) == t


class TestDeltaCantor:
    def test_half(self):
        c = delta_cantor(rat(Fraction(1, 2)))
        assert c.distance == Fraction(1, 18) and c.k == 4

    def test_sqrt3(self):
        c = delta_cantor(SQRT3_M1)
        assert c.k == 7
        assert c.distance == QuadraticSurd(Fraction(16, 9), -1, 3)
        assert abs(float(c.distance) - 0.0457270) < 1e-7

    def test_sqrt2(self):
        c = delta_cantor(SQRT2_M1)
        assert c.k == 4
        assert c.distance == QuadraticSurd(Fraction(13, 9), -1, 2)
        assert abs(float(c.distance) - 0.03023) < 1e-5


class TestRuns:
    def test_blocks_rlm(self):
        rb = run_block_decomposition(exit_time(SQRT3_M1, poly=F3))
        assert rb.r_blocks == ((0, 0),)
        assert rb.rl_blocks == (((0, 0), (1, 1)),)

    def test_blocks_m(self):
        assert run_block_decomposition(exit_time(SQRT2_M1)).count == 0

    def test_blocks_rrllm(self):
        rec = trace_orbit(from_digits("22001"), poly=F3)
        assert rec.itinerary == "RRLLM"
        rb = run_block_decomposition(rec)
        assert rb.r_blocks == ((0, 1),)
        assert rb.rl_blocks == (((0, 1), (2, 2)),)

    def test_universal_lrun(self):
        (chk,) = check_universal_lrun(exit_time(SQRT3_M1, poly=F3))
        assert (chk.N0, chk.k, chk.ok) == (0, 1, True)
        assert check_universal_lrun(exit_time(SQRT2_M1, poly=QuadraticPoly(1, 2, -1))) == []

    def test_synthetic_run_length(self):
        # theta_0 = 2/3 + 1/100: delta = 1/100, 3^3/100 < 1/3 <= 3^4/100
        rec = trace_orbit(rat(Fraction(2, 3) + Fraction(1, 100)), poly=F3)
        assert rec.l_run_lengths[0] == 3
        assert k_max_strict(Fraction(1, 100)) == 3
        assert all(ok for _, _, ok in check_lrun_geometry(rec))

    @settings(max_examples=200, deadline=None)
    @given(orbit_cases())
    def test_geometry_and_cover(self, case):
        f, root = case
        rec = exit_time(surd_from_poly(f, root), poly=f)
        assert all(ok for _, _, ok in check_lrun_geometry(rec))
        assert check_cover(rec)
        assert all(c.ok for c in check_universal_lrun(rec))

    def test_floor_formula_agrees(self):
        delta = SQRT3_M1 - Fraction(2, 3)
        assert k_max_floor_formula(delta) == k_max_strict(delta) == 1


class TestDeep:
    def test_sqrt3(self):
        cls = classify_deep(exit_time(SQRT3_M1, poly=F3), 1)
        assert cls.deep == () and cls.shallow == (0,)
        assert cls.deficiency[0] == 1

    def test_height_one(self):
        # theta_0 = 2/3 + delta with run length 5
        rec = trace_orbit(from_digits("200000"), poly=QuadraticPoly(1, 1, -1))
        assert rec.l_run_lengths[0] == 5
        cls = classify_deep(rec, 2)
        assert cls.deep == (0,)
        assert cls.deficiency[0] == -5

    def test_empty(self):
        cls = classify_deep(exit_time(SQRT2_M1, poly=QuadraticPoly(1, 2, -1)), 1)
        assert cls.deep == () and cls.shallow == ()

    def test_shallow_contribution(self):
        assert shallow_contribution(exit_time(SQRT3_M1, poly=F3), 1).total == 2
        assert shallow_contribution(exit_time(SQRT2_M1, poly=QuadraticPoly(1, 2, -1)), 1).total == 0
        rec = trace_orbit(from_digits("22001"), poly=F3)
        s = shallow_contribution(rec, 1)
        assert s.shallow_indices == (0, 1)
        assert s.total == 4

    @settings(max_examples=200, deadline=None)
    @given(orbit_cases(), st.integers(1, 3))
    def test_doubling(self, case, T):
        f, root = case
        rec = exit_time(surd_from_poly(f, root), poly=f)
        assert all(ok for _, _, ok in check_deep_doubling(rec, T))


def test_baby_resonant():
    # coefficient triples, whether or not they are valid minimal polynomials
    assert is_baby_resonant((3, 1, 1))
    assert not is_baby_resonant((9, 1, 1))
    assert not is_baby_resonant((3, 1, 3))
    assert is_baby_resonant(QuadraticPoly(3, 5, 1))
