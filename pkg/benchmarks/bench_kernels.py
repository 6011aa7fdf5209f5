"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--h-max 12] [--steps 2000] [--repeat 3]

Three workloads: exit times over a small exhaustive corpus (short orbits,
overhead-bound), points placed just off the Cantor point 1/4 so that their
orbits run for dozens of steps, and raw sign decisions on word-size integers.
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from cantorexit import kernels
from cantorexit.orbit import exit_time
from cantorexit.scan import corpus
from cantorexit.surd import QuadraticSurd, RootChoice, is_square, surd_from_poly


def exits(points):
    return [exit_time(a).exit_time for a in points]


def near_cantor(count):
    """``1/4 + sqrt(D) / (8 * 3^k)``: the orbit alternates L, R for about k steps."""
    pts = []
    D = 2
    while len(pts) < count:
        D += 1
        if is_square(D):
            continue
        for k in (20, 25, 30, 34):
            pts.append(QuadraticSurd(Fraction(1, 4), Fraction(1, 8 * 3**k), D))
    return pts[:count]


def long_digits(thetas, steps):
    out = []
    for t in thetas:
        x, y, z = t.int_form()
        out.append(kernels.orbit_digits(x, y, z, t.D, steps))
    return out


def signs(triples):
    f = kernels.surd_sign
    return [f(a, b, d) for a, b, d in triples]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h-max", type=int, default=12)
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    points = [surd_from_poly(f, r) for f in corpus(args.h_max) for r in RootChoice]
    thetas = near_cantor(400)
    rng = random.Random(0)
    triples = [(rng.randint(-10**9, 10**9), rng.randint(-10**4, 10**4), rng.randint(2, 10**6)) for _ in range(100_000)]
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not available; timing the Python kernels only")
    results = {}
    for name in backends:
        kernels.use_backend(name)
        t_exit, r_exit = best_of(lambda: exits(points), args.repeat)
        t_dig, r_dig = best_of(lambda: long_digits(thetas, args.steps), args.repeat)
        t_sgn, r_sgn = best_of(lambda: signs(triples), args.repeat)
        results[name] = ((t_exit, t_dig, t_sgn), (r_exit, r_dig, r_sgn))
        mean_len = sum(map(len, r_dig)) / len(r_dig)
        print(f"{name:>7}: exit times of {len(points)} roots {t_exit:.3f}s | "
              f"{len(thetas)} near-Cantor orbits (mean {mean_len:.0f} digits) {t_dig:.3f}s | "
              f"{len(triples)} signs {t_sgn:.3f}s")
    if len(results) == 2:
        (tp, rp), (tc, rc) = results["python"], results["cython"]
        assert rp == rc, "backends disagree"
        ratios = ", ".join(f"x{p / c:.2f}" for p, c in zip(tp, tc))
        print(f"speedup (python / cython): {ratios}; outputs identical")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
