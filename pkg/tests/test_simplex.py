import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from rqobj.rng import seed_source
from rqobj.simplex import (
    RPV_METHODS,
    is_probability_vector,
    pv_from_kraemer_draws,
    pv_from_norm_draws,
    pv_from_trig_draws,
    pv_from_zhsl_draws,
    sample_rpv,
)

import oracles

FLAT = ("zhsl", "devroye", "kraemer")


@pytest.mark.parametrize("oracle", oracles.SIMPLEX_ORACLES, ids=lambda f: f.__name__)
def test_oracle(oracle):
    oracle()


def _samples(method, d, n, seed=1):
    src = seed_source("mt", seed)
    return np.array([sample_rpv(src, d, method) for _ in range(n)])


def _marginal_cdf(d):
    return lambda p: 1.0 - (1.0 - p) ** (d - 1)


@pytest.mark.parametrize("method", FLAT)
@pytest.mark.parametrize("d", [3, 4, 8])
def test_flat_marginal(method, d):
    p = _samples(method, d, 100_000, seed=d)
    for j in (0, d - 1):
        assert stats.kstest(p[:, j], _marginal_cdf(d)).statistic < 0.01


def test_group_separation():
    p = {m: _samples(m, 4, 100_000, seed=11)[:, 0] for m in RPV_METHODS}
    for a in FLAT:
        for b in FLAT:
            if a < b:
                assert stats.ks_2samp(p[a], p[b]).statistic < 0.015
        for biased in ("trig", "norm"):
            assert stats.ks_2samp(p[a], p[biased]).statistic > 0.05


@pytest.mark.parametrize("method", RPV_METHODS)
def test_exchangeable_means(method):
    n, d = 100_000, 4
    p = _samples(method, d, n, seed=12)
    sigma = p.std(axis=0) / np.sqrt(n)
    assert np.all(np.abs(p.mean(axis=0) - 1 / d) < 5 * sigma)


@pytest.mark.parametrize("method", RPV_METHODS)
def test_invariants_on_samples(method):
    src = seed_source("gnu", 5)
    for d in (1, 2, 3, 7, 20):
        for _ in range(200):
            assert is_probability_vector(sample_rpv(src, d, method))


unit = st.floats(0.0, 1.0)
draws = st.lists(unit, min_size=0, max_size=30)


@settings(max_examples=200, deadline=None)
@given(r=draws)
def test_cores_land_on_simplex(r):
    for core in (pv_from_trig_draws, pv_from_norm_draws, pv_from_zhsl_draws, pv_from_kraemer_draws):
        p = core(r)
        assert p.size == len(r) + 1
        assert is_probability_vector(p)


@settings(max_examples=100, deadline=None)
@given(r=draws)
def test_kraemer_order_invariant(r):
    np.testing.assert_array_equal(pv_from_kraemer_draws(r), pv_from_kraemer_draws(r[::-1]))
