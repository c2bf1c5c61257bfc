"""Cross-checks between the numba kernel and its pure-numpy fallback."""

import numpy as np
import pytest

from irscap import _kernels

try:
    import numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def random_inputs(seed, n_trials=500, mu_ma=6.0, mu_mi=15.0):
    rng = np.random.Generator(np.random.Philox(key=seed))
    counts_ma = rng.poisson(mu_ma, n_trials).astype(np.int64)
    counts_mi = rng.poisson(mu_mi, n_trials).astype(np.int64)
    u_ma = rng.random(int(counts_ma.sum()))
    u_mi = rng.random(int(counts_mi.sum()))
    return u_ma, counts_ma, u_mi, counts_mi


@needs_numba
@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_backends_agree(seed):
    u_ma, c_ma, u_mi, c_mi = random_inputs(seed)
    args = (u_ma, c_ma, u_mi, c_mi, 25.0, 1.0, 2.5, 2.5, 300.0)
    assert (_kernels._tally_micro_wins_loops(*args)
            == _kernels._tally_micro_wins_numpy(*args))


@needs_numba
def test_backends_agree_with_empty_tiers(
):
    # sparse tiers: many zero-count trials, including trailing zeros that
    # stress the reduceat bookkeeping in the numpy path
    u_ma, c_ma, u_mi, c_mi = random_inputs(10, n_trials=2_000, mu_ma=0.4, mu_mi=0.7)
    c_ma[-3:] = 0
    c_mi[-3:] = 0
    u_ma = u_ma[: int(c_ma.sum())]
    u_mi = u_mi[: int(c_mi.sum())]
    args = (u_ma, c_ma, u_mi, c_mi, 2.0, 1.0, 3.5, 3.5, 100.0)
    assert (_kernels._tally_micro_wins_loops(*args)
            == _kernels._tally_micro_wins_numpy(*args))


def test_numpy_path_empty_macro_tier_always_micro():
    c_ma = np.zeros(50, dtype=np.int64)
    c_mi = np.ones(50, dtype=np.int64)
    u_mi = np.linspace(0.1, 0.9, 50)
    wins = _kernels._tally_micro_wins_numpy(
        np.empty(0), c_ma, u_mi, c_mi, 100.0, 1.0, 2.5, 2.5, 50.0)
    assert wins == 50


def test_numpy_path_both_tiers_empty_is_not_a_micro_win():
    c = np.zeros(10, dtype=np.int64)
    wins = _kernels._tally_micro_wins_numpy(
        np.empty(0), c, np.empty(0), c, 1.0, 1.0, 2.5, 2.5, 50.0)
    assert wins == 0


def test_nearer_station_wins_at_equal_power():
    # one station per tier: micro at r=0.25 window, macro at r=0.81 window
    c = np.ones(1, dtype=np.int64)
    wins = _kernels._tally_micro_wins_numpy(
        np.array([0.81**2]), c, np.array([0.25**2]), c, 1.0, 1.0, 2.5, 2.5, 100.0)
    assert wins == 1


def test_power_bias_can_overcome_distance():
    c = np.ones(1, dtype=np.int64)
    # macro nearer but micro transmits 1e6 times stronger
    wins = _kernels._tally_micro_wins_numpy(
        np.array([0.01]), c, np.array([0.64]), c, 1.0, 1e6, 2.5, 2.5, 100.0)
    assert wins == 1


def test_backend_flag_is_exposed():
    assert _kernels.BACKEND in ("numba", "numpy")
