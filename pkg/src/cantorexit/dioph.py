"""Forced triadic approximants, the norm values ``A_N`` and bounded-norm 3-power equations.

The equations ``a p^2 + b p 3^n + c 3^(2n) = u`` are solved by exhaustive
search up to a caller-chosen ``n_max``; nothing is claimed beyond it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional

from cantorexit.orbit import C_STAR, OrbitRecord, classify_deep
from cantorexit.surd import QuadraticPoly, QuadraticSurd, compare_to_rational, floor_surd

__all__ = [
    "TriadicApproximant",
    "BoundedNormSolution",
    "ANCheck",
    "DeepBlock",
    "forced_approximant",
    "norm_value",
    "an_bound_check",
    "solve_bounded_norm",
    "naive_bounded_norm",
    "discriminant_identity_check",
    "deep_block_report",
    "deficiency_stratification",
    "u_bound",
    "solutions_to_csv",
    "solutions_from_csv",
]

TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class TriadicApproximant:
    N: int
    p: int
    q: int


@dataclass(frozen=True, order=True)
class BoundedNormSolution:
    n: int
    p: int
    u: int

    def as_row(self, f: QuadraticPoly) -> tuple[int, ...]:
        return (f.a, f.b, f.c, self.p, self.n, self.u)


def forced_approximant(alpha: QuadraticSurd, N: int) -> TriadicApproximant:
    """``p = 3 floor(3^N alpha) + 2`` over ``q = 3^(N+1)``.

    When ``theta_N`` is in R the identity ``alpha - p/q = (theta_N - 2/3)/3^N``
    is checked exactly (AssertionError if it fails).
    """
    if alpha.is_rational:
        raise ValueError("alpha must be irrational")
    scaled = alpha * 3**N
    m = floor_surd(scaled)
    p, q = 3 * m + 2, 3 ** (N + 1)
    theta = scaled - m
    if compare_to_rational(theta, TWO_THIRDS) >= 0:
        assert alpha - Fraction(p, q) == (theta - TWO_THIRDS) / 3**N
    return TriadicApproximant(N, p, q)


def norm_value(f: QuadraticPoly, p: int, q: int) -> int:
    """``a p^2 + b p q + c q^2``."""
    if q <= 0:
        raise ValueError("q must be positive")
    return f.homogeneous(p, q)


@dataclass(frozen=True)
class ANCheck:
    N: int
    A: int
    bound_ok: bool  # |A_N| <= C_* H^2 q_N (theta_N - 2/3)
    k: int
    run_ok: Optional[bool]  # |A_N| 3^k <= C_* H^2 3^N, when k >= 1
    nonzero: bool


def an_bound_check(f: QuadraticPoly, rec: OrbitRecord, c_star: int = C_STAR) -> list[ANCheck]:
    """Size of ``A_N`` at every R visit ``N`` before exit."""
    H2 = f.H**2
    out = []
    for N in rec.r_visits:
        appr = forced_approximant(rec.alpha, N)
        A = norm_value(f, appr.p, appr.q)
        rhs = (rec.theta(N) - TWO_THIRDS) * (c_star * H2 * appr.q)
        bound_ok = compare_to_rational(rhs, abs(A)) >= 0
        k = rec.l_run_lengths[N]
        run_ok = abs(A) * 3**k <= c_star * H2 * 3**N if k >= 1 else None
        out.append(ANCheck(N, A, bound_ok, k, run_ok, A != 0))
    return out


def _is_square(n: int) -> Optional[int]:
    if n < 0:
        return None
    s = isqrt(n)
    return s if s * s == n else None


def solve_bounded_norm(f: QuadraticPoly, u_max: int, n_max: int) -> list[BoundedNormSolution]:
    """All ``(p, n, u)``, ``0 < |u| <= u_max``, ``0 <= n <= n_max``, sorted by ``(n, p, u)``.

    For fixed ``n`` and ``u`` the equation is quadratic in ``p`` with
    discriminant ``Δ 9^n + 4 a u``; an integer root needs that to be a perfect
    square and ``-b 3^n ± s`` to be divisible by ``2a``.
    """
    if u_max < 1:
        raise ValueError("u_max must be at least 1")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    a, b, delta = f.a, f.b, f.delta
    out = set()
    for n in range(n_max + 1):
        q = 3**n
        dq = delta * q * q
        for u in range(-u_max, u_max + 1):
            if u == 0:
                continue
            s = _is_square(dq + 4 * a * u)
            if s is None:
                continue
            for num in (-b * q + s, -b * q - s):
                if num % (2 * a) == 0:
                    out.add(BoundedNormSolution(n, num // (2 * a), u))
    return sorted(out)


def naive_bounded_norm(f: QuadraticPoly, u_max: int, n_max: int) -> list[BoundedNormSolution]:
    """Reference search: evaluate the form at every ``p`` near ``3^n`` times a root.

    ``|a (p - q r1)(p - q r2)| <= u`` forces ``p`` within ``sqrt(u/|a|)`` of
    ``q r1`` or ``q r2``, so a window of that half-width around each suffices.
    """
    from cantorexit.surd import RootChoice, surd_from_poly

    roots = [surd_from_poly(f, RootChoice.PLUS), surd_from_poly(f, RootChoice.MINUS)]
    w = isqrt(u_max // abs(f.a)) + 2
    out = set()
    for n in range(n_max + 1):
        q = 3**n
        cands = set()
        for r in roots:
            centre = floor_surd(r * q)
            cands.update(range(centre - w, centre + w + 1))
        for p in cands:
            v = f.a * p * p + f.b * p * q + f.c * q * q
            if v != 0 and abs(v) <= u_max:
                out.add(BoundedNormSolution(n, p, v))
    return sorted(out)


def discriminant_identity_check(f: QuadraticPoly, sol: BoundedNormSolution) -> bool:
    """``(2ap + b 3^n)^2 - Δ 3^(2n) == 4au``."""
    q = 3**sol.n
    return (2 * f.a * sol.p + f.b * q) ** 2 - f.delta * q * q == 4 * f.a * sol.u


def u_bound(T: int, c_star: int = C_STAR) -> int:
    """``ceil(c_star / 3^T)``."""
    return -((-c_star) // 3**T)


@dataclass(frozen=True)
class DeepBlock:
    N: int
    approximant: TriadicApproximant
    u: int
    bound_ok: bool
    in_solver: Optional[bool]
    identity_ok: bool


def deep_block_report(f: QuadraticPoly, rec: OrbitRecord, T: int, c_star: int = C_STAR) -> list[DeepBlock]:
    """``A_N`` at every T-deep transition, against ``U_T`` and the equation solver."""
    U = u_bound(T, c_star)
    out = []
    for N in classify_deep(rec, T).deep:
        appr = forced_approximant(rec.alpha, N)
        A = norm_value(f, appr.p, appr.q)
        sol = BoundedNormSolution(N + 1, appr.p, A)
        ok = 0 < abs(A) <= U
        in_solver = sol in set(solve_bounded_norm(f, U, N + 1)) if ok else None
        out.append(DeepBlock(N, appr, A, ok, in_solver, discriminant_identity_check(f, sol)))
    return out


def deficiency_stratification(
    f: QuadraticPoly, rec: OrbitRecord, T: int = 1, c_star: int = C_STAR
) -> tuple[dict[int, list[int]], list[int]]:
    """Transition times grouped by deficiency, plus those violating ``|A_N| <= c_star 3^d``."""
    cls = classify_deep(rec, T)
    strata: dict[int, list[int]] = {}
    bad = []
    for N in rec.transition_times:
        d = cls.deficiency[N]
        strata.setdefault(d, []).append(N)
        appr = forced_approximant(rec.alpha, N)
        A = abs(norm_value(f, appr.p, appr.q))
        ok = A * 3 ** (-d) <= c_star if d < 0 else A <= c_star * 3**d
        if not ok or A == 0:
            bad.append(N)
    return strata, bad


CSV_COLUMNS = ("a", "b", "c", "p", "n", "u")


def solutions_to_csv(f: QuadraticPoly, sols: Iterable[BoundedNormSolution]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s in sols:
        w.writerow(s.as_row(f))
    return buf.getvalue()


def solutions_from_csv(text: str) -> list[tuple[QuadraticPoly, BoundedNormSolution]]:
    rows = csv.DictReader(io.StringIO(text))
    out = []
    for r in rows:
        f = QuadraticPoly(int(r["a"]), int(r["b"]), int(r["c"]))
        out.append((f, BoundedNormSolution(int(r["n"]), int(r["p"]), int(r["u"]))))
    return out
