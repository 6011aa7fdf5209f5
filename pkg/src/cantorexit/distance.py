"""Exact distance from ``theta_0 = {alpha}`` to the middle-third Cantor set.

The distance is measured for the fractional part, the point whose orbit
the record describes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from cantorexit.orbit import OrbitRecord
from cantorexit.surd import QuadraticPoly, QuadraticSurd, compare_to_rational, format_rational

__all__ = [
    "DistanceReport",
    "ClearanceBoundCheck",
    "cantor_distance_via_exit",
    "brute_force_cantor_distance",
    "clearance_bound_check",
    "MAX_ORACLE_LEVEL",
    "DISTANCE_CSV_COLUMNS",
]

MAX_ORACLE_LEVEL = 20
ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class DistanceReport:
    alpha: QuadraticSurd
    exit_time: int
    exit_clearance: QuadraticSurd  # dist(theta_{N-1}, {1/3, 2/3})
    cantor_distance: QuadraticSurd
    nearest_cantor_point: Fraction

    def csv_row(self, f: QuadraticPoly, root: str) -> list:
        p = self.nearest_cantor_point
        return [
            f.a, f.b, f.c, root, self.exit_time,
            self.exit_clearance.decimal(30), self.cantor_distance.decimal(30),
            p.numerator, p.denominator,
        ]


DISTANCE_CSV_COLUMNS = (
    "a", "b", "c", "root", "exit", "clearance_decimal", "distance_decimal", "nearest_num", "nearest_den",
)


def cantor_distance_via_exit(rec: OrbitRecord) -> DistanceReport:
    """Distance through the scaling ``dist = dist(theta_{N-1}, {1/3, 2/3}) / 3^(N-1)``."""
    if rec.truncated or rec.exit_time is None:
        raise ValueError("orbit did not exit within its step budget")
    N = rec.exit_time
    t = rec.theta(N - 1)
    left, right = t - ONE_THIRD, TWO_THIRDS - t
    # ties resolve to the left endpoint
    if left <= right:
        clearance, digit = left, 1
    else:
        clearance, digit = right, 2
    scale = 3 ** (N - 1)
    distance = clearance / scale
    nearest = Fraction(3 * rec.prefix_value(N - 1) + digit, 3**N)
    assert abs(rec.theta0 - nearest) == distance
    assert compare_to_rational(distance, Fraction(1, 3**N)) < 0
    return DistanceReport(rec.alpha, N, clearance, distance, nearest)


def brute_force_cantor_distance(x: QuadraticSurd, level: int) -> QuadraticSurd:
    """Distance from ``x`` to the union of all ``2^level`` level-``level`` Cantor intervals.

    Enumerates every interval ``[e, e + 1] / 3^level`` whose left end ``e``
    has base-3 digits in ``{0, 2}``.
    """
    if not 1 <= level <= MAX_ORACLE_LEVEL:
        raise ValueError(f"level must be in 1..{MAX_ORACLE_LEVEL}")
    scale = 3**level
    X = x * scale
    below = None  # largest right end strictly left of X
    above = None  # smallest left end strictly right of X
    for digits in product((0, 2), repeat=level):
        e = 0
        for d in digits:
            e = 3 * e + d
        if compare_to_rational(X, e) < 0:
            if above is None or e < above:
                above = e
        elif compare_to_rational(X, e + 1) > 0:
            if below is None or e + 1 > below:
                below = e + 1
        else:
            return QuadraticSurd(0, 0, x.D)
    cands = []
    if above is not None:
        cands.append((X * -1 + above) / scale)
    if below is not None:
        cands.append((X - below) / scale)
    return min(cands)


@dataclass(frozen=True)
class ClearanceBoundCheck:
    N: int
    clearance_ok: bool  # clearance >= 1 / (30 H^2 3^N)
    distance_ok: bool  # distance >= 3^(-2N) / (30 H^2)


def clearance_bound_check(f: QuadraticPoly, rec: OrbitRecord) -> ClearanceBoundCheck:
    rep = cantor_distance_via_exit(rec)
    N, H2 = rep.exit_time, f.H**2
    c_ok = compare_to_rational(rep.exit_clearance, Fraction(1, 30 * H2 * 3**N)) >= 0
    d_ok = compare_to_rational(rep.cantor_distance, Fraction(1, 30 * H2 * 9**N)) >= 0
    return ClearanceBoundCheck(N, c_ok, d_ok)


def format_report(rep: DistanceReport) -> dict:
    return {
        "exit": rep.exit_time,
        "clearance": rep.exit_clearance.exact(),
        "clearance_decimal": rep.exit_clearance.decimal(30),
        "distance": rep.cantor_distance.exact(),
        "distance_decimal": rep.cantor_distance.decimal(30),
        "nearest": format_rational(rep.nearest_cantor_point),
    }
