"""Corpus scans: every check evaluated on every root of every polynomial up to a height."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from cantorexit.dioph import (
    BoundedNormSolution,
    an_bound_check,
    deep_block_report,
    deficiency_stratification,
    discriminant_identity_check,
    forced_approximant,
    norm_value,
    solve_bounded_norm,
    u_bound,
)
from cantorexit.distance import cantor_distance_via_exit, clearance_bound_check
from cantorexit.orbit import (
    C_STAR,
    DEFAULT_MAX_STEPS,
    check_cover,
    check_deep_doubling,
    check_lrun_geometry,
    check_universal_lrun,
    classify_deep,
    delta_cantor,
    exit_time,
    fractional_part,
    is_baby_resonant,
    run_block_decomposition,
    shallow_contribution,
)
from cantorexit.surd import InvalidPolynomial, QuadraticPoly, RootChoice, format_rational, surd_from_poly

__all__ = [
    "ScanConfig",
    "ROW_FIELDS",
    "CHECK_FIELDS",
    "corpus",
    "random_corpus",
    "analyse_root",
    "run_scan",
    "summarize",
    "rows_to_csv",
    "rows_to_jsonl",
]


@dataclass(frozen=True)
class ScanConfig:
    h_max: int = 30
    max_steps: int = DEFAULT_MAX_STEPS
    T: int = 1
    clearance_filter: Optional[Fraction] = None
    output_path: Optional[str] = None
    format: str = "csv"
    jobs: int = 1
    random_count: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.h_max < 1:
            raise ValueError("h_max must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.T < 1:
            raise ValueError("T must be >= 1")
        if self.format not in ("csv", "jsonl"):
            raise ValueError(f"unknown format {self.format!r}")


def _valid(a: int, b: int, c: int) -> Optional[QuadraticPoly]:
    try:
        return QuadraticPoly(a, b, c)
    except InvalidPolynomial:
        return None


def corpus(h_max: int) -> Iterator[QuadraticPoly]:
    """Every primitive irreducible ``(a, b, c)`` with ``a > 0``, height ``<= h_max``, real roots."""
    for a in range(1, h_max + 1):
        for b in range(-h_max, h_max + 1):
            for c in range(-h_max, h_max + 1):
                f = _valid(a, b, c)
                if f is not None:
                    yield f


def random_corpus(h_max: int, count: int, seed: int) -> list[QuadraticPoly]:
    """``count`` distinct valid polynomials drawn uniformly, returned in canonical order."""
    rng = random.Random(seed)
    seen: set[tuple[int, int, int]] = set()
    attempts = 0
    while len(seen) < count and attempts < 100 * count + 1000:
        attempts += 1
        a = rng.randint(1, h_max)
        b = rng.randint(-h_max, h_max)
        c = rng.randint(-h_max, h_max)
        if (a, b, c) not in seen and _valid(a, b, c) is not None:
            seen.add((a, b, c))
    return [QuadraticPoly(*t) for t in sorted(seen)]


CHECK_FIELDS = (
    "an_bound_ok",
    "an_run_ok",
    "lrun_ok",
    "lrun_geom_ok",
    "cover_ok",
    "doubling_ok",
    "deficiency_ok",
    "deep_tm_ok",
    "clearance_ok",
    "distance_ok",
    "far_theorem_ok",
    "early_r_ok",
    "equation_ok",
)

ROW_FIELDS = (
    "a", "b", "c", "root", "H", "disc", "baby_resonant",
    "delta_c", "delta_k", "exit", "truncated", "n_star", "r_blocks", "r_visits", "transitions",
    "deep", "max_run", "shallow_total", "shallow_ratio",
    "distance", "distance_decimal", "nearest", "max_sol_n",
) + CHECK_FIELDS + ("all_ok",)


def _all(xs: Iterable[bool]) -> bool:
    return all(xs)


# exponent measurement: largest n <= EXPONENT_N_MAX with a solution of |u| <= EXPONENT_U_MAX
EXPONENT_U_MAX = 5
EXPONENT_N_MAX = 40


def max_solution_exponent(f: QuadraticPoly, u_max: int = EXPONENT_U_MAX, n_max: int = EXPONENT_N_MAX) -> int:
    """Measurement only; -1 when there is no solution at all."""
    return max((s.n for s in solve_bounded_norm(f, u_max, n_max)), default=-1)


def _equation_ok(f: QuadraticPoly, alpha, N: int) -> bool:
    appr = forced_approximant(alpha, N)
    A = norm_value(f, appr.p, appr.q)
    sol = BoundedNormSolution(N + 1, appr.p, A)
    return appr.p % 3 == 2 and f.homogeneous(sol.p, 3**sol.n) == A and discriminant_identity_check(f, sol)


def analyse_root(f: QuadraticPoly, root: RootChoice, max_steps: int = DEFAULT_MAX_STEPS, T: int = 1) -> dict:
    """One scan row: orbit statistics and the outcome of every inequality check.

    Check fields are True/False, or None where the check does not apply
    (e.g. distance checks on a truncated orbit).
    """
    alpha = surd_from_poly(f, root)
    rec = exit_time(alpha, max_steps, poly=f)
    clr = delta_cantor(rec.theta0)
    blocks = run_block_decomposition(rec)
    deep = classify_deep(rec, T)
    shallow = shallow_contribution(rec, T)
    an = an_bound_check(f, rec)
    row = {
        "a": f.a, "b": f.b, "c": f.c, "root": root.value, "H": f.H, "disc": f.delta,
        "baby_resonant": is_baby_resonant(f),
        "delta_c": clr.distance.decimal(30), "delta_k": clr.k,
        "exit": rec.exit_time, "truncated": rec.truncated, "n_star": rec.n_star,
        "r_blocks": blocks.count, "r_visits": len(rec.r_visits), "transitions": len(rec.transition_times),
        "deep": len(deep.deep),
        "max_run": max((rec.l_run_lengths[n] for n in rec.r_visits), default=0),
        "shallow_total": shallow.total, "shallow_ratio": round(shallow.ratio, 12),
        "distance": None, "distance_decimal": None, "nearest": None, "max_sol_n": None,
        "an_bound_ok": _all(c.bound_ok and c.nonzero for c in an),
        "an_run_ok": _all(c.run_ok for c in an if c.run_ok is not None),
        "lrun_ok": _all(c.ok for c in check_universal_lrun(rec)),
        "lrun_geom_ok": _all(ok for _, _, ok in check_lrun_geometry(rec)),
        "cover_ok": None if rec.truncated else check_cover(rec),
        "doubling_ok": _all(ok for _, _, ok in check_deep_doubling(rec, T)),
        "deficiency_ok": not deficiency_stratification(f, rec, T)[1],
        "deep_tm_ok": _all(b.bound_ok and b.in_solver and b.identity_ok for b in deep_block_report(f, rec, T)),
        "clearance_ok": None, "distance_ok": None,
        "far_theorem_ok": None, "early_r_ok": None,
    }
    if not rec.truncated:
        rep = cantor_distance_via_exit(rec)
        cb = clearance_bound_check(f, rec)
        row["distance"] = rep.cantor_distance.exact()
        row["distance_decimal"] = rep.cantor_distance.decimal(30)
        row["nearest"] = format_rational(rep.nearest_cantor_point)
        row["clearance_ok"] = cb.clearance_ok
        row["distance_ok"] = cb.distance_ok
    if clr.distance >= Fraction(1, 25):
        row["far_theorem_ok"] = rec.exit_time is not None and rec.exit_time <= 3
    if clr.distance >= Fraction(1, 50):
        it = rec.itinerary
        row["early_r_ok"] = "M" in it[:5] or "R" in it[:6]
    row["equation_ok"] = all(_equation_ok(f, rec.alpha, N) for N in rec.transition_times)
    row["all_ok"] = all(row[k] is not False for k in CHECK_FIELDS)
    return row


def _rows_for(args) -> list[dict]:
    f, max_steps, T, clearance = args
    rows = []
    max_n = max_solution_exponent(f)
    for root in (RootChoice.PLUS, RootChoice.MINUS):
        if clearance is not None:
            theta0 = fractional_part(surd_from_poly(f, root))
            if delta_cantor(theta0).distance < clearance:
                continue
        row = analyse_root(f, root, max_steps, T)
        row["max_sol_n"] = max_n
        rows.append(row)
    return rows


def run_scan(config: ScanConfig) -> list[dict]:
    """Rows in canonical ``(a, b, c, root)`` order."""
    if config.random_count is not None:
        polys = random_corpus(config.h_max, config.random_count, config.seed)
    else:
        polys = list(corpus(config.h_max))
    tasks = [(f, config.max_steps, config.T, config.clearance_filter) for f in polys]
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as ex:
            chunks = list(ex.map(_rows_for, tasks, chunksize=64))
    else:
        chunks = [_rows_for(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def summarize(rows: list[dict], config: ScanConfig) -> dict:
    """Aggregate statistics; deterministic in the rows."""
    exits = Counter(r["exit"] for r in rows if not r["truncated"])
    blocks = Counter(r["r_blocks"] for r in rows)
    truncated = [f"{r['a']},{r['b']},{r['c']},{r['root']}" for r in rows if r["truncated"]]
    failures = {k: sum(1 for r in rows if r[k] is False) for k in CHECK_FIELDS}
    per_h: dict[int, dict] = {}
    for r in rows:
        h = per_h.setdefault(
            r["H"], {"count": 0, "max_exit": 0, "max_shallow": 0, "max_r_blocks": 0, "max_sol_n": -1}
        )
        h["count"] += 1
        if r["max_sol_n"] is not None:
            h["max_sol_n"] = max(h["max_sol_n"], r["max_sol_n"])
        if r["exit"] is not None:
            h["max_exit"] = max(h["max_exit"], r["exit"])
        h["max_shallow"] = max(h["max_shallow"], r["shallow_total"])
        h["max_r_blocks"] = max(h["max_r_blocks"], r["r_blocks"])
    for H, h in per_h.items():
        if H >= 2:
            l3 = math.log(H, 3)
            h["max_exit_over_log3H"] = round(h["max_exit"] / l3, 9)
            h["max_exit_over_log3H_sq"] = round(h["max_exit"] / (l3 * l3), 9)
    finite = [r for r in rows if r["exit"] is not None]
    worst = max(finite, key=lambda r: (r["exit"], -r["H"]), default=None)
    baby = [r for r in rows if r["baby_resonant"]]
    headline = []
    if truncated:
        headline.append(f"ANOMALY: {len(truncated)} orbit(s) did not exit within {config.max_steps} steps")
    for k, n in failures.items():
        if n:
            headline.append(f"FAILED {k}: {n} row(s)")
    return {
        "config": {
            "h_max": config.h_max, "max_steps": config.max_steps, "T": config.T,
            "clearance_filter": None if config.clearance_filter is None else format_rational(config.clearance_filter),
            "random_count": config.random_count, "seed": config.seed if config.random_count else None,
            "c_star": C_STAR, "U_T": u_bound(config.T),
            "exponent_u_max": EXPONENT_U_MAX, "exponent_n_max": EXPONENT_N_MAX,
        },
        "orbits": len(rows),
        "polynomials": len({(r["a"], r["b"], r["c"]) for r in rows}),
        "truncated": truncated,
        "exit_histogram": {str(k): exits[k] for k in sorted(exits)},
        "r_block_histogram": {str(k): blocks[k] for k in sorted(blocks)},
        "baby_resonant": {
            "orbits": len(baby),
            "max_r_blocks": max((r["r_blocks"] for r in baby), default=0),
            "max_exit": max((r["exit"] or 0 for r in baby), default=0),
        },
        "max_exit": None if worst is None else {
            "exit": worst["exit"], "a": worst["a"], "b": worst["b"], "c": worst["c"], "root": worst["root"],
        },
        "deep_orbits": sum(1 for r in rows if r["deep"]),
        "max_shallow_total": max((r["shallow_total"] for r in rows), default=0),
        "max_shallow_ratio": max((r["shallow_ratio"] for r in rows), default=0),
        "per_height": {str(H): per_h[H] for H in sorted(per_h)},
        "check_failures": failures,
        "all_ok": not any(failures.values()),
        "headline": headline,
    }


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def rows_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ROW_FIELDS)
    for r in rows:
        w.writerow([_cell(r[k]) for k in ROW_FIELDS])
    return buf.getvalue()


def rows_to_jsonl(rows: Iterable[dict]) -> str:
    return "".join(json.dumps({k: r[k] for k in ROW_FIELDS}, separators=(",", ":")) + "\n" for r in rows)
