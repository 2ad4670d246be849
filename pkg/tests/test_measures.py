import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rqobj.measures import coherence_l1, coherence_re, fidelity_pure, is_ppt, vn_entropy
from rqobj.rng import seed_source
from rqobj.states import RDM_METHODS, sample_rdm, sample_rsv

import oracles

seeds = st.integers(0, 2**32)


@pytest.mark.parametrize("oracle", oracles.MEASURES_ORACLES, ids=lambda f: f.__name__)
def test_oracle(oracle):
    oracle()


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=st.integers(1, 12))
def test_fidelity_bounds_and_symmetry(seed, d):
    src = seed_source("mt", seed)
    psi, phi = sample_rsv(src, d, "gauss"), sample_rsv(src, d, "std")
    f = fidelity_pure(psi, phi)
    assert -1e-15 <= f <= 1 + 1e-12
    assert abs(f - fidelity_pure(phi, psi)) < 1e-15


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=st.integers(1, 8), method=st.sampled_from(RDM_METHODS))
def test_entropy_and_coherence_bounds(seed, d, method):
    src = seed_source("mt", seed)
    rho = sample_rdm(src, d, method)
    s = vn_entropy(rho)
    assert -1e-12 <= s <= np.log2(d) + 1e-9
    assert coherence_re(rho) >= 0.0
    assert coherence_l1(rho) <= d - 1 + 1e-9
    # diagonal unitaries leave both coherences unchanged
    phase = np.exp(2j * np.pi * src.u01(d))
    rotated = (phase[:, None] * rho) * phase.conj()[None, :]
    assert abs(coherence_re(rotated) - coherence_re(rho)) < 1e-9
    assert abs(coherence_l1(rotated) - coherence_l1(rho)) < 1e-12


def test_separable_mixtures_are_ppt():
    src = seed_source("mt", 81)
    for _ in range(1000):
        k = 1 + int(src.next_u01() * 4)
        w = src.u01(k)
        w /= w.sum()
        rho = sum(wi * np.kron(sample_rdm(src, 2, "ginibre"), sample_rdm(src, 3, "std"))
                  for wi in w)
        assert is_ppt(rho, 2, 3)[0]


def test_batched_ppt_matches_single():
    src = seed_source("mt", 82)
    rho = np.array([sample_rdm(src, 4, "ginibre") for _ in range(50)])
    ok, lam = is_ppt(rho, 2, 2)
    for k in range(50):
        o, m = is_ppt(rho[k], 2, 2)
        assert o == ok[k]
        assert abs(m - lam[k]) < 1e-13
