"""Compare the JIT-compiled kernels against the pure-numpy fallback.

Runs FK, Jacobian, and IK workloads through both implementations and
prints per-call timings plus the speedup. The JIT lane is what you get
by default; the fallback is what runs with TELEMAP_NO_NUMBA=1.

Run from the repo root: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from telemap import kernels

LENGTHS = np.array([0.075, 0.0675])
LO = np.array([-0.7, -0.3, -0.3])
HI = np.array([0.7, 1.6, 1.6])


def bench(fn, args_list, repeat=5):
    """Best-of-repeat total time over the workload, per call."""
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best / len(args_list)


def main():
    if not kernels.USE_NUMBA:
        print("numba unavailable or disabled; nothing to compare")
        return
    kernels.warmup()
    rng = np.random.default_rng(7)

    states = [(rng.uniform(LO, HI), LENGTHS, True) for _ in range(2000)]
    ik_cases = []
    for _ in range(200):
        goal = rng.uniform(LO, HI)
        target = kernels.chain_tip(goal, LENGTHS, True)
        ik_cases.append(
            (target, np.zeros(3), LENGTHS, True, LO, HI, 0.01, 200, 1e-6, 0.2)
        )

    rows = [
        ("chain_tip", kernels.chain_tip, kernels.chain_tip_py, states),
        ("chain_jacobian", kernels.chain_jacobian, kernels.chain_jacobian_py, states),
        ("dls_solve", kernels.dls_solve, kernels.dls_solve_py, ik_cases),
    ]
    print(f"{'kernel':<16}{'jit':>12}{'fallback':>12}{'speedup':>10}")
    for name, jit_fn, py_fn, cases in rows:
        t_jit = bench(jit_fn, cases)
        t_py = bench(py_fn, cases)
        print(f"{name:<16}{t_jit * 1e6:>10.2f}us{t_py * 1e6:>10.2f}us{t_py / t_jit:>9.1f}x")


if __name__ == "__main__":
    main()
