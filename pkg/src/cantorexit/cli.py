"""Command-line front end: ``cantorexit {verify,orbit,scan,solve,dist}``.

Every subcommand exits 0 iff all of the checks it asserts pass; usage and
input errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from cantorexit import kernels
from cantorexit.dioph import (
    an_bound_check,
    deep_block_report,
    deficiency_stratification,
    discriminant_identity_check,
    solutions_from_csv,
    solutions_to_csv,
    solve_bounded_norm,
)
from cantorexit.distance import MAX_ORACLE_LEVEL, brute_force_cantor_distance, cantor_distance_via_exit, format_report
from cantorexit.intervals import verify_early_r_hit, verify_far_from_boundary
from cantorexit.orbit import DEFAULT_MAX_STEPS, classify_deep, delta_cantor, exit_time, run_block_decomposition
from cantorexit.scan import ScanConfig, analyse_root, rows_to_csv, rows_to_jsonl, run_scan, summarize
from cantorexit.surd import InvalidPolynomial, QuadraticPoly, RootChoice, format_rational, parse_rational, surd_from_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _poly(args) -> QuadraticPoly:
    try:
        return QuadraticPoly(args.a, args.b, args.c)
    except InvalidPolynomial as exc:
        raise UsageError(str(exc)) from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_verify(args) -> int:
    kw = {}
    if args.lower is not None:
        kw["lower"] = args.lower
    if args.which == "far":
        if args.upper is not None:
            raise UsageError("--upper only applies to early-r")
        cert = verify_far_from_boundary(**kw)
    else:
        if args.upper is not None:
            kw["upper"] = args.upper
        cert = verify_early_r_hit(**kw)
    if args.out:
        Path(args.out).write_text(cert.to_text())
    if cert.ok:
        print(f"OK ({len(cert.branches)} branches)")
        return EXIT_OK
    if not cert.cover_checked:
        print("FAIL: branches do not cover the target")
    if cert.counterexample is not None:
        print("FAIL: counterexample branch " + cert.counterexample.line())
    return EXIT_FAIL


def _orbit_report(f: QuadraticPoly, root: RootChoice, max_steps: int, T: int) -> tuple[dict, bool]:
    alpha = surd_from_poly(f, root)
    rec = exit_time(alpha, max_steps, poly=f)
    clr = delta_cantor(rec.theta0)
    blocks = run_block_decomposition(rec)
    cls = classify_deep(rec, T)
    row = analyse_root(f, root, max_steps, T)
    strata, _ = deficiency_stratification(f, rec, T)
    rep = {
        "poly": list(f.coeffs),
        "root": root.value,
        "alpha": alpha.exact(),
        "alpha_decimal": alpha.decimal(30),
        "theta0": rec.theta0.exact(),
        "exit": rec.exit_time,
        "truncated": rec.truncated,
        "itinerary": rec.itinerary,
        "delta_c": clr.distance.exact(),
        "delta_c_decimal": clr.distance.decimal(30),
        "delta_c_point": format_rational(clr.point),
        "r_blocks": [list(b) for b in blocks.r_blocks],
        "r_visits": list(rec.r_visits),
        "l_runs": {str(n): rec.l_run_lengths[n] for n in rec.r_visits},
        "deficiency": {str(n): cls.deficiency[n] for n in rec.transition_times},
        "deficiency_strata": {str(d): strata[d] for d in sorted(strata)},
        "deep": list(cls.deep),
        "shallow": list(cls.shallow),
        "T": T,
        "A_N": {str(c.N): c.A for c in an_bound_check(f, rec)},
        "deep_blocks": [
            {"N": b.N, "p": b.approximant.p, "q": b.approximant.q, "u": b.u, "in_solver": b.in_solver}
            for b in deep_block_report(f, rec, T)
        ],
        "distance": None if rec.truncated else format_report(cantor_distance_via_exit(rec)),
        "checks": {k: row[k] for k in row if k.endswith("_ok")},
    }
    return rep, row["all_ok"]


def cmd_orbit(args) -> int:
    f = _poly(args)
    rep, ok = _orbit_report(f, RootChoice(args.root), args.max_steps, args.deep_t)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        print(f"polynomial   {f.a} {f.b} {f.c}  (H = {f.H}, disc = {f.delta})")
        print(f"alpha        {rep['alpha']}  ~ {rep['alpha_decimal']}")
        print(f"theta0       {rep['theta0']}")
        if rep["truncated"]:
            print(f"exit         none within {args.max_steps} steps (truncated)")
        else:
            print(f"exit         {rep['exit']}")
        print(f"itinerary    {','.join(rep['itinerary'])}")
        print(f"delta_C      {rep['delta_c_decimal']}  (= {rep['delta_c']}, nearest {rep['delta_c_point']})")
        print(f"R-blocks     {rep['r_blocks']}")
        print(f"L-runs       {rep['l_runs']}")
        print(f"A_N          {rep['A_N']}")
        print(f"deficiency   {rep['deficiency']}")
        print(f"T={args.deep_t}-deep     {rep['deep']}   shallow {rep['shallow']}")
        if rep["distance"]:
            d = rep["distance"]
            print(f"distance     {d['distance']}  ~ {d['distance_decimal']}  (nearest {d['nearest']})")
        bad = [k for k, v in rep["checks"].items() if v is False]
        print("checks       " + ("OK" if not bad else "FAIL " + " ".join(bad)))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scan(args) -> int:
    try:
        cfg = ScanConfig(
            h_max=args.h_max, max_steps=args.max_steps, T=args.deep_t, clearance_filter=args.clearance,
            output_path=args.out, format=args.format, jobs=args.jobs, random_count=args.random, seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = run_scan(cfg)
    summary = summarize(rows, cfg)
    body = rows_to_csv(rows) if cfg.format == "csv" else rows_to_jsonl(rows)
    summary_text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(body)
        Path(args.summary or args.out + ".summary.json").write_text(summary_text)
    else:
        sys.stdout.write(body)
        if args.summary:
            Path(args.summary).write_text(summary_text)
    log = sys.stderr if not args.out else sys.stdout
    for line in summary["headline"]:
        print(line, file=log)
    print(f"{summary['orbits']} orbits, max exit {summary['max_exit'] and summary['max_exit']['exit']}", file=log)
    print("OK" if summary["all_ok"] else "FAIL", file=log)
    return EXIT_OK if summary["all_ok"] else EXIT_FAIL


def cmd_solve(args) -> int:
    if args.check_csv:
        rows = solutions_from_csv(Path(args.check_csv).read_text())
        bad = [(f, s) for f, s in rows if not discriminant_identity_check(f, s) or f.homogeneous(s.p, 3**s.n) != s.u]
        for f, s in bad:
            print(f"FAIL: row {','.join(map(str, s.as_row(f)))} violates the discriminant identity")
        print(f"{len(rows)} rows checked, {len(bad)} bad")
        return EXIT_FAIL if bad else EXIT_OK
    if args.a is None:
        raise UsageError("solve needs A B C or --check-csv")
    f = _poly(args)
    if args.u_max is None or args.n_max is None:
        raise UsageError("solve needs --u-max and --n-max")
    try:
        sols = solve_bounded_norm(f, args.u_max, args.n_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = all(discriminant_identity_check(f, s) for s in sols)
    _write(args.out, solutions_to_csv(f, sols))
    if args.out:
        print(f"{len(sols)} solutions written to {args.out}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dist(args) -> int:
    f = _poly(args)
    rec = exit_time(surd_from_poly(f, RootChoice(args.root)), args.max_steps, poly=f)
    if rec.truncated:
        print(f"FAIL: no exit within {args.max_steps} steps")
        return EXIT_FAIL
    rep = cantor_distance_via_exit(rec)
    level = args.oracle_level if args.oracle_level is not None else max(rep.exit_time, 1)
    if level < rep.exit_time:
        raise UsageError(f"oracle level {level} is below the exit time {rep.exit_time}")
    if level > MAX_ORACLE_LEVEL:
        raise UsageError(f"oracle level {level} exceeds {MAX_ORACLE_LEVEL}")
    oracle = brute_force_cantor_distance(rec.theta0, level)
    out = format_report(rep)
    out["oracle_level"] = level
    out["oracle_distance"] = oracle.exact()
    out["agree"] = oracle == rep.cantor_distance
    print(json.dumps(out, indent=2))
    return EXIT_OK if out["agree"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cantorexit", description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=kernels.available_backends(), help="kernel implementation")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="certified interval verification")
    v.add_argument("which", choices=["far", "early-r"])
    v.add_argument("--lower", type=_rational)
    v.add_argument("--upper", type=_rational)
    v.add_argument("--out", help="certificate file")
    v.set_defaults(func=cmd_verify)

    def poly_args(sp, optional=False):
        nargs = "?" if optional else None
        sp.add_argument("a", type=int, nargs=nargs)
        sp.add_argument("b", type=int, nargs=nargs)
        sp.add_argument("c", type=int, nargs=nargs)

    o = sub.add_parser("orbit", help="inspect a single orbit")
    poly_args(o)
    o.add_argument("--root", choices=["plus", "minus"], default="plus")
    o.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    o.add_argument("--deep-t", type=int, default=1)
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_orbit)

    s = sub.add_parser("scan", help="exhaustive corpus scan")
    s.add_argument("--h-max", type=int, default=30)
    s.add_argument("--clearance", type=_rational)
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.add_argument("--deep-t", type=int, default=1)
    s.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    s.add_argument("--out")
    s.add_argument("--summary", help="summary JSON path (default OUT.summary.json)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--random", type=int, metavar="COUNT", help="seeded random sample instead of exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_scan)

    so = sub.add_parser("solve", help="bounded-norm 3-power equations")
    poly_args(so, optional=True)
    so.add_argument("--u-max", type=int)
    so.add_argument("--n-max", type=int)
    so.add_argument("--out")
    so.add_argument("--check-csv", metavar="PATH", help="re-check an existing solution CSV")
    so.set_defaults(func=cmd_solve)

    d = sub.add_parser("dist", help="exact distance to the Cantor set")
    poly_args(d)
    d.add_argument("--root", choices=["plus", "minus"], default="plus")
    d.add_argument("--oracle-level", type=int)
    d.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    d.set_defaults(func=cmd_dist)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.backend:
        kernels.use_backend(args.backend)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
