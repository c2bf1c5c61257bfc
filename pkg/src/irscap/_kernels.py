"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The Monte Carlo association oracle spends essentially all of its time
reducing per-station powers to a per-trial winner; that reduction lives
here. Within a tier every station transmits the same power, so the
strongest station is the nearest one: the scan tracks the minimal
squared-radius fraction per trial and evaluates the power law once per
tier, not once per station. Both implementations consume identical
pre-drawn inputs and produce identical integer tallies, so the backend
choice never changes a result.

Backend selection, decided once at import:

* ``IRSCAP_DISABLE_NUMBA=1`` in the environment forces the numpy path;
* otherwise numba is used when importable, numpy when not.

``BACKEND`` records which path is active. ``benchmarks/bench_kernels.py``
times the two implementations side by side.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("IRSCAP_DISABLE_NUMBA", "0") == "1"


def _tier_best_numpy(uniforms, counts, tier_power, alpha, radius):
    # Per-trial max of power * r^-alpha; trials with no station get -inf.
    total = uniforms.size
    best = np.full(counts.size, -np.inf)
    if total == 0:
        return best
    offsets = np.zeros(counts.size, dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    # reduceat needs in-range indices; clipped offsets only occur for
    # trailing zero-count trials, which keep -inf via the mask below.
    nearest_u = np.minimum.reduceat(uniforms, np.minimum(offsets, total - 1))
    occupied = counts > 0
    best[occupied] = tier_power * (radius * np.sqrt(nearest_u[occupied])) ** (-alpha)
    return best


def _tally_micro_wins_numpy(u_ma, counts_ma, u_mi, counts_mi,
                            p_ma, p_mi, alpha_ma, alpha_mi, radius):
    best_ma = _tier_best_numpy(u_ma, counts_ma, p_ma, alpha_ma, radius)
    best_mi = _tier_best_numpy(u_mi, counts_mi, p_mi, alpha_mi, radius)
    return int(np.count_nonzero(best_mi > best_ma))


def _tally_micro_wins_loops(u_ma, counts_ma, u_mi, counts_mi,
                            p_ma, p_mi, alpha_ma, alpha_mi, radius):
    wins = 0
    off_ma = 0
    off_mi = 0
    for t in range(counts_ma.size):
        nearest_ma = np.inf
        for i in range(off_ma, off_ma + counts_ma[t]):
            if u_ma[i] < nearest_ma:
                nearest_ma = u_ma[i]
        nearest_mi = np.inf
        for i in range(off_mi, off_mi + counts_mi[t]):
            if u_mi[i] < nearest_mi:
                nearest_mi = u_mi[i]
        off_ma += counts_ma[t]
        off_mi += counts_mi[t]
        best_ma = -np.inf
        if counts_ma[t] > 0:
            best_ma = p_ma * (radius * np.sqrt(nearest_ma)) ** (-alpha_ma)
        best_mi = -np.inf
        if counts_mi[t] > 0:
            best_mi = p_mi * (radius * np.sqrt(nearest_mi)) ** (-alpha_mi)
        if best_mi > best_ma:
            wins += 1
    return wins


if not _DISABLE:
    try:
        import numba

        _tally_micro_wins_numba = numba.njit(cache=True)(_tally_micro_wins_loops)
        BACKEND = "numba"
        tally_micro_wins = _tally_micro_wins_numba
    except ImportError:
        BACKEND = "numpy"
        tally_micro_wins = _tally_micro_wins_numpy
else:
    BACKEND = "numpy"
    tally_micro_wins = _tally_micro_wins_numpy
