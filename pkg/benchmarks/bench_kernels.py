"""Time the compiled kernels against the pure-Python fallback on identical
inputs and check that both give the same output.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from stoned_billiards import billiards as bl
from stoned_billiards import chains as ch
from stoned_billiards import kernels, scan


def chain_case(backend):
    chain = ch.stoned_masep_chain((1, 2, 3), (1, 2, 2), (1, 2, 2), 0)
    return ch.simulate(chain, 1, 200_000, backend=backend)


def billiard_case(backend):
    word = bl.ray_word(bl.RayConfig(bl.delta_vector(4)))
    tr = bl.simulate(word, 0.75, 100_000, 2, True, backend=backend)
    return np.concatenate([tr.windows.ravel(), tr.crossed])


def scan_case(backend):
    cfg, _ = scan.scan_process(0.5, 0.25, 1000, 3, backend=backend)
    return np.asarray(cfg.to_partition())


CASES = {"chain_walk": chain_case, "billiard_walk": billiard_case, "scan_sweeps": scan_case}


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels._ckernels is None:
        print("compiled kernels not built; only the python backend is available")
        return
    print(f"{'kernel':<15}{'python s':>10}{'cython s':>10}{'speedup':>9}  same")
    for name, fn in CASES.items():
        tp, op = best_of(fn, "python", args.repeat)
        tc, oc = best_of(fn, "cython", args.repeat)
        print(f"{name:<15}{tp:>10.3f}{tc:>10.3f}{tp / tc:>9.1f}  {np.array_equal(op, oc)}")


if __name__ == "__main__":
    main()
