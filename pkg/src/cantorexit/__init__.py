"""Exact arithmetic for ternary orbits of quadratic irrationals.

Exit times from the middle-third Cantor set, certified interval case
analyses, R-block / L-run statistics, bounded-norm 3-power equations and
exact distances to the Cantor set.
"""

from cantorexit.surd import (
    QuadraticPoly,
    QuadraticSurd,
    RootChoice,
    compare_to_rational,
    floor_surd,
    surd_from_poly,
)
from cantorexit.orbit import OrbitRecord, delta_cantor, exit_time, fractional_part, next_digit

__version__ = "0.1.0"

__all__ = [
    "QuadraticPoly",
    "QuadraticSurd",
    "RootChoice",
    "compare_to_rational",
    "floor_surd",
    "surd_from_poly",
    "OrbitRecord",
    "delta_cantor",
    "exit_time",
    "fractional_part",
    "next_digit",
]
