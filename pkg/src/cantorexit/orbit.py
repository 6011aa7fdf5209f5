"""Ternary orbits ``theta_{n+1} = {3 theta_n}`` of quadratic irrationals.

Symbols follow the half-open partition ``L = [0, 1/3)``, ``M = [1/3, 2/3)``,
``R = [2/3, 1)``, i.e. the symbol at step ``n`` is the ``n``-th ternary digit
of ``theta_0`` (0, 1, 2 -> L, M, R).  Inequalities that involve ``log_3 H``
are decided in the integer form ``3^x`` versus ``H^2 * 3^y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from cantorexit import kernels
from cantorexit.surd import QuadraticPoly, QuadraticSurd, compare_to_rational, floor_surd

__all__ = [
    "C_STAR",
    "DEFAULT_MAX_STEPS",
    "SYMBOLS",
    "OrbitRecord",
    "RunBlocks",
    "LRunCheck",
    "DeepClassification",
    "ShallowContribution",
    "Clearance",
    "fractional_part",
    "next_digit",
    "trace_orbit",
    "exit_time",
    "delta_cantor",
    "run_block_decomposition",
    "check_universal_lrun",
    "check_lrun_geometry",
    "k_max_strict",
    "k_max_floor_formula",
    "classify_deep",
    "check_deep_doubling",
    "shallow_contribution",
    "is_baby_resonant",
    "ceil_log3",
    "cover_intervals",
    "check_cover",
]

# Absolute constant in the |f'| <= C_* H^2 estimates; see check_universal_lrun.
C_STAR = 5
DEFAULT_MAX_STEPS = 10_000
SYMBOLS = "LMR"
_SYM = str.maketrans("012", SYMBOLS)

TWO_THIRDS = Fraction(2, 3)
ONE_THIRD = Fraction(1, 3)


def fractional_part(alpha: QuadraticSurd) -> QuadraticSurd:
    return alpha - floor_surd(alpha)


def next_digit(theta: QuadraticSurd) -> tuple[int, QuadraticSurd]:
    """One step of the shift: ``(floor(3 theta), 3 theta - floor(3 theta))``."""
    if compare_to_rational(theta, 0) < 0 or compare_to_rational(theta, 1) >= 0:
        raise ValueError(f"theta must lie in [0, 1), got {theta}")
    t = theta * 3
    d = floor_surd(t)
    return d, t - d


def ceil_log3(n: int) -> int:
    """Least ``j >= 0`` with ``3**j >= n`` (``n >= 1``)."""
    j = max(0, int((n.bit_length() - 1) / math.log2(3)) - 1)
    p = 3**j
    while p < n:
        p *= 3
        j += 1
    return j


@dataclass(frozen=True)
class OrbitRecord:
    """Itinerary of ``theta_0 = {alpha}`` up to (and including) the first M visit.

    ``exit_time`` is the index of the first M symbol plus one, and None when
    ``max_steps`` symbols were produced without reaching M (``truncated``).
    ``l_run_lengths[n]`` is the number of consecutive L symbols right after
    the R visit ``n``; for a truncated orbit the last run may be cut short.
    """

    alpha: QuadraticSurd
    theta0: QuadraticSurd
    itinerary: str
    exit_time: Optional[int]
    n_star: Optional[int]
    r_visits: tuple[int, ...]
    l_run_lengths: dict[int, int]
    transition_times: tuple[int, ...]
    truncated: bool
    poly: Optional[QuadraticPoly] = None
    max_steps: int = DEFAULT_MAX_STEPS
    _prefix_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def H(self) -> int:
        if self.poly is None:
            raise ValueError("orbit has no associated polynomial")
        return self.poly.H

    @property
    def digits(self) -> str:
        return self.itinerary.translate(str.maketrans(SYMBOLS, "012"))

    @property
    def complete(self) -> bool:
        return not self.truncated

    def prefix_value(self, n: int) -> int:
        """Integer whose base-3 digits are the first ``n`` symbols."""
        v = self._prefix_cache.get(n)
        if v is None:
            v = int(self.digits[:n], 3) if n else 0
            self._prefix_cache[n] = v
        return v

    def theta(self, n: int) -> QuadraticSurd:
        """Exact ``theta_n = 3^n theta_0 - (first n digits)``, for ``n <= len(itinerary)``."""
        if not 0 <= n <= len(self.itinerary):
            raise IndexError(f"theta_{n} is beyond the computed itinerary")
        return self.theta0 * 3**n - self.prefix_value(n)

    def run_length(self, n: int) -> int:
        return self.l_run_lengths[n]


def _record_from_itinerary(alpha, theta0, itinerary, poly, max_steps) -> OrbitRecord:
    i = itinerary.find("M")
    exit_ = i + 1 if i >= 0 else None
    before = itinerary if i < 0 else itinerary[:i]
    n_star = None
    for j, s in enumerate(itinerary):
        if s != "L":
            n_star = j
            break
    r_visits = tuple(j for j, s in enumerate(before) if s == "R")
    runs: dict[int, int] = {}
    for n in r_visits:
        k = 0
        while n + 1 + k < len(itinerary) and itinerary[n + 1 + k] == "L":
            k += 1
        runs[n] = k
    transitions = tuple(n for n in r_visits if runs[n] >= 1)
    return OrbitRecord(
        alpha=alpha,
        theta0=theta0,
        itinerary=itinerary,
        exit_time=exit_,
        n_star=n_star,
        r_visits=r_visits,
        l_run_lengths=runs,
        transition_times=transitions,
        truncated=exit_ is None,
        poly=poly,
        max_steps=max_steps,
    )


def trace_orbit(
    theta0: QuadraticSurd,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    alpha: Optional[QuadraticSurd] = None,
    poly: Optional[QuadraticPoly] = None,
) -> OrbitRecord:
    """Orbit of a point of ``[0, 1)``; rational points are allowed (test inputs)."""
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    if compare_to_rational(theta0, 0) < 0 or compare_to_rational(theta0, 1) >= 0:
        raise ValueError(f"theta0 must lie in [0, 1), got {theta0}")
    x, y, z = theta0.int_form()
    digits = kernels.orbit_digits(x, y, z, theta0.D, max_steps)
    return _record_from_itinerary(
        alpha if alpha is not None else theta0, theta0, digits.translate(_SYM), poly, max_steps
    )


def exit_time(
    alpha: QuadraticSurd,
    max_steps: int = DEFAULT_MAX_STEPS,
    poly: Optional[QuadraticPoly] = None,
) -> OrbitRecord:
    """Orbit record of ``alpha``; ``exit_time`` is 1 + index of the first M."""
    if alpha.is_rational:
        raise ValueError("exit_time requires an irrational alpha")
    return trace_orbit(fractional_part(alpha), max_steps, alpha=alpha, poly=poly)


@dataclass(frozen=True)
class Clearance:
    distance: QuadraticSurd
    k: int

    @property
    def point(self) -> Fraction:
        return Fraction(self.k, 9)


def delta_cantor(theta0: QuadraticSurd) -> Clearance:
    """Distance from ``theta0`` to ``{k/9 : 0 <= k <= 9}``; ties go to the smaller ``k``."""
    best = None
    best_k = -1
    for k in range(10):
        d = abs(theta0 - Fraction(k, 9))
        if best is None or d < best:
            best, best_k = d, k
    return Clearance(best, best_k)


@dataclass(frozen=True)
class RunBlocks:
    """Maximal R-blocks before exit, each paired with the L-run that follows it.

    Blocks are ``(first, last)`` index pairs; L-runs are ``(first, length)``.
    """

    r_blocks: tuple[tuple[int, int], ...]
    rl_blocks: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    partial: bool

    @property
    def count(self) -> int:
        return len(self.r_blocks)


def run_block_decomposition(rec: OrbitRecord) -> RunBlocks:
    it = rec.itinerary
    end = rec.exit_time - 1 if rec.exit_time is not None else len(it)
    blocks = []
    j = 0
    while j < end:
        if it[j] == "R":
            s = j
            while j + 1 < end and it[j + 1] == "R":
                j += 1
            blocks.append((s, j))
        j += 1
    rl = []
    for s, e in blocks:
        k = 0
        while e + 1 + k < end and it[e + 1 + k] == "L":
            k += 1
        rl.append(((s, e), (e + 1, k)))
    return RunBlocks(tuple(blocks), tuple(rl), rec.truncated)


@dataclass(frozen=True)
class LRunCheck:
    N0: int
    k: int
    ok: bool
    margin: float  # log_3(C_* H^2 3^N0 / 3^k), display only


def check_universal_lrun(rec: OrbitRecord, c_star: int = C_STAR) -> list[LRunCheck]:
    """``3^k <= c_star * H^2 * 3^N0`` at every R->L transition ``N0`` with run length ``k``.

    This is ``k <= N0 + 2 log_3 H + log_3 c_star``.  The default ``c_star = 5``
    comes from the estimate ``|f'(xi)| <= 5 H^2`` for the quadratic's
    derivative near its root; a violation means that choice is too small.
    """
    H2 = rec.H**2
    out = []
    for n0 in rec.transition_times:
        k = rec.l_run_lengths[n0]
        rhs = c_star * H2 * 3**n0
        lhs = 3**k
        margin = math.log(rhs, 3) - k
        out.append(LRunCheck(n0, k, lhs <= rhs, margin))
    return out


def k_max_strict(delta) -> int:
    """Largest ``k >= 0`` with ``3^k * delta < 1/3`` (``0 < delta < 1/3``)."""
    k = 0
    while (delta * 3 ** (k + 1)) < ONE_THIRD:
        k += 1
    return k


def k_max_floor_formula(delta) -> int:
    """``floor(-1 - log_3 delta)`` evaluated as the largest ``k`` with ``3^(k+1) delta <= 1``."""
    k = 0
    while (delta * 3 ** (k + 2)) <= 1:
        k += 1
    return k


def check_lrun_geometry(rec: OrbitRecord) -> list[tuple[int, int, bool]]:
    """Exact run geometry at every transition ``N0`` with run length ``k``.

    With ``delta = theta_N0 - 2/3``: ``theta_{N0+k} == 3^k delta``,
    ``3^k delta < 1/3`` and, when the run is followed by a non-L symbol,
    ``3^(k+1) delta >= 1/3``.  Returns ``(N0, k, ok)`` triples.
    """
    out = []
    for n0 in rec.transition_times:
        k = rec.l_run_lengths[n0]
        delta = rec.theta(n0) - TWO_THIRDS
        scaled = delta * 3**k
        ok = rec.theta(n0 + k) == scaled
        ok = ok and compare_to_rational(scaled, ONE_THIRD) < 0
        if n0 + k + 1 < len(rec.itinerary):
            ok = ok and compare_to_rational(scaled * 3, ONE_THIRD) >= 0
            ok = ok and k_max_strict(delta) == k
        if not delta.is_rational:
            ok = ok and k_max_floor_formula(delta) == k_max_strict(delta)
        out.append((n0, k, ok))
    return out


@dataclass(frozen=True)
class DeepClassification:
    T: int
    deep: tuple[int, ...]
    shallow: tuple[int, ...]
    deficiency: dict[int, int]


def _deficiency(N: int, k: int, H2: int) -> int:
    # least d with 3^(k+d) >= 3^N H^2
    return N + ceil_log3(H2) - k


def classify_deep(rec: OrbitRecord, T: int) -> DeepClassification:
    """Split transition times into T-deep (``3^k >= 3^(N+T) H^2``) and shallow."""
    if T < 1:
        raise ValueError("T must be a positive integer")
    H2 = rec.H**2
    deep, shallow, d = [], [], {}
    for n in rec.transition_times:
        k = rec.l_run_lengths[n]
        if 3**k >= 3 ** (n + T) * H2:
            deep.append(n)
        else:
            shallow.append(n)
        d[n] = _deficiency(n, k, H2)
    return DeepClassification(T, tuple(deep), tuple(shallow), d)


def check_deep_doubling(rec: OrbitRecord, T: int) -> list[tuple[int, int, bool]]:
    """``3^N' >= 3^(2N + T + 1) H^2`` for consecutive T-deep times ``N < N'``."""
    H2 = rec.H**2
    deep = classify_deep(rec, T).deep
    return [(n, m, 3**m >= 3 ** (2 * n + T + 1) * H2) for n, m in zip(deep, deep[1:])]


@dataclass(frozen=True)
class ShallowContribution:
    T: int
    total: int
    shallow_indices: tuple[int, ...]
    ratio: float  # total / ((log_3 H)^2 + 1)


def shallow_contribution(rec: OrbitRecord, T: int) -> ShallowContribution:
    """Sum of ``1 + l(n)`` over R visits that are not T-deep (measurement only)."""
    H2 = rec.H**2
    idx = tuple(
        n for n in rec.r_visits if not 3 ** rec.l_run_lengths[n] >= 3 ** (n + T) * H2
    )
    total = sum(1 + rec.l_run_lengths[n] for n in idx)
    log3h = math.log(rec.H, 3)
    return ShallowContribution(T, total, idx, total / (log3h * log3h + 1))


def cover_intervals(rec: OrbitRecord) -> list[tuple[int, int]]:
    """The index intervals ``{n, ..., n + l(n)}`` for every R visit ``n``."""
    return [(n, n + rec.l_run_lengths[n]) for n in rec.r_visits]


def check_cover(rec: OrbitRecord) -> bool:
    """Disjointness of the R-visit intervals and their cover of the pre-M indices.

    The intervals partition ``[n_star, exit - 2]`` (index ``exit - 1`` is the
    M visit), hence ``exit - 1 == n_star + sum(1 + l(n))``.  Vacuously true
    unless ``theta_{n_star}`` is in R.
    """
    if rec.truncated or rec.n_star is None or rec.itinerary[rec.n_star] != "R":
        return True
    covered: set[int] = set()
    for lo, hi in cover_intervals(rec):
        span = set(range(lo, hi + 1))
        if covered & span:
            return False
        covered |= span
    target = set(range(rec.n_star, rec.exit_time - 1))
    if not target <= covered:
        return False
    return rec.exit_time - 1 == rec.n_star + sum(1 + rec.l_run_lengths[n] for n in rec.r_visits)


def _v3(n: int) -> int:
    n = abs(n)
    v = 0
    while n and n % 3 == 0:
        n //= 3
        v += 1
    return v


def is_baby_resonant(f) -> bool:
    """``v_3(a) = 1`` and ``3 does not divide c``; ``f`` is a poly or an ``(a, b, c)`` triple."""
    a, _, c = f.coeffs if isinstance(f, QuadraticPoly) else f
    return _v3(a) == 1 and c % 3 != 0
