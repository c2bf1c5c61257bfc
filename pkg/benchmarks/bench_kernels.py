#!/usr/bin/env python3
"""Benchmark the Monte Carlo tally kernel: numba njit versus pure numpy.

The kernel reduces per-station powers to a per-trial strongest-station
winner; it dominates `simulate_association` runtime. Both implementations
consume identical pre-drawn inputs, so this measures execution only.

Run:  python benchmarks/bench_kernels.py [--trials N ...] [--repeats K]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from irscap import _kernels
from irscap.oracle import OracleConfig, simulate_association, window_radius_for_count


def numba_kernel():
    if hasattr(_kernels, "_tally_micro_wins_numba"):
        return _kernels._tally_micro_wins_numba
    try:
        import numba
    except ImportError:
        return None
    return numba.njit(cache=True)(_kernels._tally_micro_wins_loops)


def draw_workload(n_trials: int, mu_ma: float = 30.0, mu_mi: float = 150.0, seed: int = 0):
    rng = np.random.Generator(np.random.Philox(key=seed))
    counts_ma = rng.poisson(mu_ma, n_trials).astype(np.int64)
    counts_mi = rng.poisson(mu_mi, n_trials).astype(np.int64)
    u_ma = rng.random(int(counts_ma.sum()))
    u_mi = rng.random(int(counts_mi.sum()))
    return u_ma, counts_ma, u_mi, counts_mi


def time_call(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, nargs="+",
                        default=[1_000, 10_000, 100_000])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    njit_fn = numba_kernel()
    print(f"active backend: {_kernels.BACKEND}"
          + ("" if njit_fn else "  (numba unavailable: numpy only)"))
    print(f"{'trials':>10} {'stations':>12} {'numpy [s]':>12} {'numba [s]':>12} {'speedup':>9}")

    for n_trials in args.trials:
        work = draw_workload(n_trials)
        stations = work[0].size + work[2].size
        kernel_args = (*work, 25.0, 1.0, 2.5, 2.5, 300.0)

        t_np = time_call(_kernels._tally_micro_wins_numpy, kernel_args, args.repeats)
        if njit_fn is not None:
            njit_fn(*kernel_args)  # JIT warm-up outside the timed region
            t_nb = time_call(njit_fn, kernel_args, args.repeats)
            wins_np = _kernels._tally_micro_wins_numpy(*kernel_args)
            wins_nb = njit_fn(*kernel_args)
            assert wins_np == wins_nb, "backends disagree on the tally"
            print(f"{n_trials:>10} {stations:>12} {t_np:>12.4f} {t_nb:>12.4f} "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{n_trials:>10} {stations:>12} {t_np:>12.4f} {'-':>12} {'-':>9}")

    # end-to-end: one full oracle run at the largest size
    n = max(args.trials)
    cfg = OracleConfig(lambda_ma=2e-4, lambda_mi=1e-3, p_ma_w=25.0, p_mi_w=1.0,
                       alpha=2.5, window_radius_m=window_radius_for_count(2e-4, 30.0),
                       n_trials=n, seed=1)
    t0 = time.perf_counter()
    res = simulate_association(cfg)
    dt = time.perf_counter() - t0
    print(f"\nsimulate_association({n} trials, backend={res.backend}): {dt:.3f}s, "
          f"estimate={res.estimate:.5f}, closed_form={res.closed_form:.5f}")


if __name__ == "__main__":
    main()
