import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from rqobj.rng import seed_source
from rqobj.unitary import (
    RU_METHODS,
    ginibre_matrix,
    householder_qr_unitary,
    hurwitz_angles_count,
    hurwitz_from_draws,
    sample_ru,
    unitarity_residual,
)

import oracles

D, N = 8, 10_000


@pytest.mark.parametrize("oracle", oracles.UNITARY_ORACLES, ids=lambda f: f.__name__)
def test_oracle(oracle):
    oracle()


@pytest.fixture(scope="module")
def haar_samples():
    out = {}
    for m in RU_METHODS:
        src = seed_source("mt", 100 + RU_METHODS.index(m))
        out[m] = np.array([sample_ru(src, D, m) for _ in range(N)])
    return out


@pytest.mark.parametrize("method", RU_METHODS)
def test_first_entry_beta_marginal(haar_samples, method):
    x = np.abs(haar_samples[method][:, 0, 0]) ** 2
    assert stats.kstest(x, stats.beta(1, D - 1).cdf).statistic < 0.02


@pytest.mark.parametrize("method", RU_METHODS)
def test_mean_squared_moduli(haar_samples, method):
    m = np.mean(np.abs(haar_samples[method]) ** 2, axis=0)
    assert np.max(np.abs(m - 1 / D)) < 0.005


@pytest.mark.parametrize("method", ("hhr", "hurwitz"))
def test_cross_method_equivalence(haar_samples, method):
    a = np.abs(haar_samples["gso"][:, 0, 0]) ** 2
    b = np.abs(haar_samples[method][:, 0, 0]) ** 2
    assert stats.ks_2samp(a, b).statistic < 0.02


@pytest.mark.parametrize("method", RU_METHODS)
def test_trace_moments(haar_samples, method):
    # E|Tr U|^2 = 1 and E|Tr U|^4 = 2 for Haar unitaries with d >= 2
    t = np.abs(np.trace(haar_samples[method], axis1=1, axis2=2)) ** 2
    assert abs(t.mean() - 1.0) < 5 * t.std() / np.sqrt(N)
    assert abs(np.mean(t**2) - 2.0) < 5 * np.std(t**2) / np.sqrt(N)


def test_householder_without_phase_fix_is_not_haar():
    src = seed_source("mt", 9)
    u = np.array([householder_qr_unitary(ginibre_matrix(src, D, D), phase_fix=False)
                  for _ in range(2000)])
    phases = np.angle(u[:, 0, 0]) / (2 * np.pi) % 1.0
    assert stats.kstest(phases, "uniform").statistic > 0.3


def test_ginibre_entry_moments():
    src = seed_source("mt", 8)
    g = ginibre_matrix(src, 100, 100).ravel()
    x = g.real
    assert abs(x.mean()) < 5 / np.sqrt(x.size)
    assert abs(x.var() - 1.0) < 0.02


@pytest.mark.parametrize("method", RU_METHODS)
def test_unitarity_up_to_64(method):
    src = seed_source("mt", 10)
    for d in (33, 48, 64):
        assert unitarity_residual(sample_ru(src, d, method)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(d=st.integers(1, 12), data=st.data())
def test_hurwitz_any_draws_unitary(d, data):
    n = hurwitz_angles_count(d)
    u = data.draw(st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n))
    assert unitarity_residual(hurwitz_from_draws(u, d)) < 1e-12
