import numpy as np
import pytest
from scipy import stats

from rqobj.measures import fidelity_pure, is_ppt
from rqobj.rng import seed_source
from rqobj.states import (
    RDM_METHODS,
    RSV_METHODS,
    is_density_matrix,
    is_state_vector,
    rdm_ptrace,
    sample_rdm,
    sample_rsv,
)

import oracles


@pytest.mark.parametrize("oracle", oracles.STATES_ORACLES, ids=lambda f: f.__name__)
def test_oracle(oracle):
    oracle()


@pytest.mark.parametrize("method", RSV_METHODS)
def test_first_amplitude_mean(method):
    src = seed_source("mt", 70)
    c1 = np.array([abs(sample_rsv(src, 8, method)[0]) ** 2 for _ in range(10_000)])
    assert abs(c1.mean() - 1 / 8) < 0.005
    if method == "ru":
        assert stats.kstest(c1, stats.beta(1, 7).cdf).statistic < 0.02


@pytest.mark.parametrize("method", RSV_METHODS)
def test_qubit_fidelity(method):
    src = seed_source("mt", 71)
    f = [fidelity_pure(sample_rsv(src, 2, method), sample_rsv(src, 2, method)) for _ in range(1000)]
    assert abs(np.mean(f) - 0.5) < 0.05


@pytest.mark.parametrize("pair", [("gauss", "std"), ("gauss", "ru"), ("std", "ru")])
@pytest.mark.parametrize("d", [2, 4, 8, 16])
def test_cross_method_fidelity(pair, d):
    src = seed_source("mt", 72 + d)
    f = np.array([fidelity_pure(sample_rsv(src, d, pair[0]), sample_rsv(src, d, pair[1]))
                  for _ in range(1000)])
    assert abs(f.mean() - 1 / d) < 3 * f.std(ddof=1) / np.sqrt(f.size)


@pytest.mark.parametrize("method", RDM_METHODS)
@pytest.mark.parametrize("d", [2, 4, 8])
def test_density_matrix_invariants(method, d):
    src = seed_source("gnu", 73)
    for _ in range(1000):
        rho = sample_rdm(src, d, method)
        assert is_density_matrix(rho)
        purity = np.trace(rho @ rho).real
        assert 1 / d - 1e-12 <= purity <= 1 + 1e-12


@pytest.mark.parametrize("method", RDM_METHODS)
def test_larger_dimensions_valid(method):
    src = seed_source("mt", 74)
    for d in (16, 32):
        assert is_density_matrix(sample_rdm(src, d, method))


@pytest.mark.parametrize("method", RSV_METHODS)
def test_state_vectors_valid(method):
    src = seed_source("mt", 75)
    for d in (1, 3, 17, 64):
        assert is_state_vector(sample_rsv(src, d, method))


def test_ptrace_rectangular_ancilla():
    rho = rdm_ptrace(seed_source("mt", 76), 3, ancilla_dim=1)
    # a one-dimensional ancilla leaves the state pure
    assert abs(np.trace(rho @ rho).real - 1.0) < 1e-12
    rho = rdm_ptrace(seed_source("mt", 76), 3, ancilla_dim=5)
    assert is_density_matrix(rho)


def _ppt_fraction(method, n=10_000, seed=77):
    src = seed_source("mt", seed)
    rho = np.array([sample_rdm(src, 4, method) for _ in range(n)])
    return float(np.mean(is_ppt(rho, 2, 2)[0]))


def test_ptrace_matches_ginibre_ppt():
    assert abs(_ppt_fraction("ptrace") - _ppt_fraction("ginibre", seed=78)) < 0.03
