"""Estimators vs the independent brute-force oracles at small N."""
import numpy as np
import pytest

from vemse import (
    EntropyParams,
    MultichannelSeries,
    ToleranceRule,
    coarse_grain,
    mmse,
    sampen,
    vemse,
)
from oracles import (
    naive_coarse_grain,
    naive_mmse,
    naive_phi,
    naive_sampen,
    naive_vemse,
)


def test_coarse_grain_matches_naive():
    rng = np.random.default_rng(0)
    for tau in (1, 2, 3, 7):
        x = rng.standard_normal(50)
        assert np.allclose(coarse_grain(x, tau), naive_coarse_grain(list(x), tau),
                           atol=1e-15)


@pytest.mark.parametrize("seed", range(8))
def test_sampen_matches_naive(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(40, 200))
    m = int(rng.integers(1, 4))
    lag = int(rng.integers(1, 3))
    x = rng.standard_normal(n)
    radius = 0.2 * np.var(x, ddof=1)
    got = sampen(x, m, radius, lag)
    want = naive_sampen(list(x), m, radius, lag)
    if want is None:
        assert got is None
    else:
        assert got == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_vemse_matches_naive(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(60, 220))
    m = int(rng.integers(1, 4))
    lag = int(rng.integers(1, 3))
    chans = rng.standard_normal((2, n))
    scales = [1, 2, 3]
    params = EntropyParams(m=m, r=0.2, L=lag, scales=scales)
    got = vemse(MultichannelSeries(chans), params).values
    want = naive_vemse([list(c) for c in chans], m, 0.2, lag, scales)
    for g, w in zip(got, want):
        if w is None:
            assert g is None
        else:
            assert g == pytest.approx(w, abs=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_mmse_matches_naive(seed):
    rng = np.random.default_rng(200 + seed)
    n = int(rng.integers(60, 220))
    m = int(rng.integers(1, 3))
    chans = rng.standard_normal((2, n))
    scales = [1, 2]
    got = mmse(MultichannelSeries(chans), [m, m], ToleranceRule.trace(0.2),
               scales=scales).values
    want = naive_mmse([list(c) for c in chans], [m, m], 0.2, [1, 1], scales)
    for g, w in zip(got, want):
        if w is None:
            assert g is None
        else:
            assert g == pytest.approx(w, abs=1e-12)


def test_undefinedness_monotone_in_dimension():
    # whenever the base-dimension probability is zero, the incremented
    # one is too; asserted on the oracle over many small draws
    rng = np.random.default_rng(42)
    seen_zero = 0
    for _ in range(200):
        n = int(rng.integers(10, 25))
        x = list(10.0 * rng.standard_normal(n))
        for m in (1, 2):
            lo = naive_phi(x, m, 1, 0.05)
            hi = naive_phi(x, m + 1, 1, 0.05)
            if lo == 0 and hi is not None:
                seen_zero += 1
                assert hi == 0
    assert seen_zero > 0  # the property was actually exercised
