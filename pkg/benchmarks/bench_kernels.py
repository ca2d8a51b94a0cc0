"""Compare the compiled and pure-Python kernels on realistic workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload is timed with both backends swapped into ``fracgb.kernels``;
results are checked to agree before timings are printed.
"""
import argparse
import time
from contextlib import contextmanager

from fracgb import _kernels_py, kernels, oracle
from fracgb.algebra import LexOrder
from fracgb.encode import cube_zero_masks, encode
from fracgb.groebner import buchberger
from fracgb.instances import NOT2, OXR, generate_satisfiable
from fracgb.tailor import tailor

try:
    from fracgb import _ckernels
except ImportError:
    _ckernels = None


@contextmanager
def backend(module):
    saved = kernels._impl, kernels.sat_counts
    kernels._impl, kernels.sat_counts = module, module.sat_counts
    try:
        yield
    finally:
        kernels._impl, kernels.sat_counts = saved


def _system(kind, n, m, seed):
    inst, _ = generate_satisfiable(kind, n, m, seed)
    out, rec = tailor(inst)
    return inst, encode(out, rec)


def workloads():
    not2_inst, not2_sys = _system(NOT2, 12, 40, 1)
    oxr_inst, oxr_sys = _system(OXR, 12, 40, 2)
    big_inst, big_sys = _system(NOT2, 18, 60, 3)

    def gb(sys):
        return lambda: buchberger(sys.polys, LexOrder.default(sys.nvars)).generators

    return [
        ("buchberger not2 (reduce_terms)", gb(not2_sys)),
        ("buchberger oxr (reduce_terms)", gb(oxr_sys)),
        ("satisfaction counts n=18 (sat_counts)", lambda: list(oracle.satisfaction_counts(big_inst)[1])),
        ("cube zeros n=%d (zero_flags)" % big_sys.nvars,
         lambda: cube_zero_masks(big_sys.polys, big_sys.nvars, big_sys.modulus)),
    ]


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'workload':44s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads():
        with backend(_kernels_py):
            t_py, r_py = best_time(fn, args.repeat)
        if _ckernels is None:
            print(f"{name:44s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        with backend(_ckernels):
            t_cy, r_cy = best_time(fn, args.repeat)
        if r_py != r_cy:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:44s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
