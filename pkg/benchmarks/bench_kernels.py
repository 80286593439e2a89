"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, size) with both timings and the speedup, plus
an end-to-end alpha-boundary search, which is dominated by repeated
banded LDL^T factorizations.
"""
import argparse
import time
from fractions import Fraction

import numpy as np

from cryptoherm import _core_py, kernels
from cryptoherm.closed_forms import assemble_metric
from cryptoherm.model import ModelParams, build_laguerre_hamiltonian


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(N):
    p = ModelParams(N, 1.0)
    theta = assemble_metric(p, 3, [0.01, 0.001, 0.0001], classify=False).theta
    H = build_laguerre_hamiltonian(p)
    bands = theta.band_array()
    bands[0] += 2 * np.abs(bands).sum(axis=0)  # keep it PD so LDL^T runs to the end
    z = np.linspace(0.1, 4 * N, N)
    v = np.ones(N)
    d, s, b = (np.array(x, float) for x in (H.diag, H.sup, H.sub))
    return {
        "laguerre_table": lambda m: m.laguerre_table(N - 1, 1.0, z),
        "banded_ldlt": lambda m: m.banded_ldlt(bands),
        "tridiag_matvec": lambda m: m.tridiag_matvec(d, s, b, v),
        "dieudonne_maxnorm": lambda m: m.dieudonne_maxnorm(d, s, b, bands),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 128, 1024])
    args = ap.parse_args()
    impls = kernels.available_implementations()
    if "cython" not in impls:
        print("compiled core not built; only the pure-Python kernels are available")
    print(f"{'kernel':<20}{'N':>6}{'python [s]':>14}{'cython [s]':>14}{'speedup':>10}")
    for N in args.sizes:
        for name, fn in cases(N).items():
            tp = best_of(lambda: fn(_core_py), args.repeat)
            if "cython" in impls:
                tc = best_of(lambda: fn(impls["cython"]), args.repeat)
                print(f"{name:<20}{N:>6}{tp:>14.3e}{tc:>14.3e}{tp / tc:>10.1f}")
            else:
                print(f"{name:<20}{N:>6}{tp:>14.3e}{'-':>14}{'-':>10}")

    # end to end: the bisection calls banded_ldlt ~40 times
    from cryptoherm import analysis

    p = ModelParams(2000, Fraction(1))
    for label, impl in impls.items():
        saved = analysis.kernels.banded_ldlt
        analysis.kernels.banded_ldlt = impl.banded_ldlt
        try:
            t = best_of(lambda: analysis.find_alpha_boundary(p.as_float(), 1, [1.0]), 3)
        finally:
            analysis.kernels.banded_ldlt = saved
        print(f"find_alpha_boundary N=2000 ({label}): {t:.3e} s")


if __name__ == "__main__":
    main()
