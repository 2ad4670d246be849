"""Fixed-seed invariant battery over every module.

Each check yields one report line ``STATUS name statistic threshold``.  The
seeds are constants, so two runs print identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy import stats

from ..linalg import hermitian_eig, partial_trace, partial_transpose, unitary_eigenphases
from ..measures import coherence_l1, coherence_re, fidelity_pure, is_ppt, vn_entropy
from ..rng import sample_exponential, sample_gaussian, seed_source
from ..simplex import sample_rpv
from ..states import is_density_matrix, rdm_from_bures, rdm_from_ginibre, sample_rdm, sample_rsv
from ..unitary import (
    ginibre_matrix,
    householder_qr_unitary,
    sample_ru,
    unitarity_residual,
)

__all__ = ["Check", "run_selftest", "format_report"]

SEED = 20240101


@dataclass(frozen=True)
class Check:
    name: str
    statistic: float
    threshold: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: statistic={self.statistic:.6e} threshold={self.threshold:.6e}"


def _below(name: str, stat: float, thr: float) -> Check:
    stat = float(stat)
    return Check(name, stat, thr, bool(stat < thr))


def _rng_checks() -> Iterator[Check]:
    first = seed_source("mt", 5489).next_u32()
    yield Check("mt reference first word", float(first), 3499211612.0, first == 3499211612)
    n = 200_000
    for alg in ("mt", "gnu"):
        x = seed_source(alg, SEED).u01(n)
        worst = 0.0
        for j in (1, 2, 3, 4):
            se = math.sqrt((1.0 / (2 * j + 1) - 1.0 / (j + 1) ** 2) / n)
            worst = max(worst, abs(np.mean(x ** j) - 1.0 / (j + 1)) / se)
        yield _below(f"{alg} uniform moments (max |z|)", worst, 5.0)
    z = sample_gaussian(seed_source("mt", SEED), n)
    yield _below("gaussian mean (|z|)", abs(z.mean()) * math.sqrt(n), 5.0)
    yield _below("gaussian variance (|z|)", abs(z.var() - 1.0) / math.sqrt(2.0 / n), 5.0)
    e = sample_exponential(seed_source("mt", SEED), n)
    yield _below("exponential mean deviation", abs(e.mean() - 1.0), 0.01)


def _simplex_checks() -> Iterator[Check]:
    d, n = 4, 20_000
    cdf = lambda p: 1.0 - (1.0 - p) ** (d - 1)  # noqa: E731
    for method in ("zhsl", "devroye", "kraemer"):
        src = seed_source("mt", SEED)
        p = np.array([sample_rpv(src, d, method) for _ in range(n)])
        yield _below(f"rpv {method} sums to one (max error)", np.max(np.abs(p.sum(1) - 1.0)), 1e-12)
        yield _below(f"rpv {method} marginal KS d=4", stats.kstest(p[:, 0], cdf).statistic, 0.02)


def _unitary_checks(hhr_phase_fix: bool) -> Iterator[Check]:
    d, n = 8, 4000
    beta = stats.beta(1, d - 1).cdf
    for method in ("gso", "hhr", "hurwitz"):
        src = seed_source("mt", SEED)
        if method == "hhr":
            u = np.array([householder_qr_unitary(ginibre_matrix(src, d, d),
                                                 phase_fix=hhr_phase_fix) for _ in range(n)])
        else:
            u = np.array([sample_ru(src, d, method) for _ in range(n)])
        u11 = u[:, 0, 0]
        # |U11|^2 alone cannot see the column phases, so the phase of U11 is
        # tested for uniformity alongside the Beta modulus law.
        ks_mod = stats.kstest(np.abs(u11) ** 2, beta).statistic
        ks_arg = stats.kstest((np.angle(u11) / (2 * np.pi)) % 1.0, "uniform").statistic
        yield _below(f"ru {method} Haar first-entry marginal KS d=8", max(ks_mod, ks_arg), 0.03)
        yield _below(f"ru {method} unitarity residual", max(unitarity_residual(x) for x in u), 1e-10)


def _states_checks() -> Iterator[Check]:
    d = 4
    for method in ("gauss", "std", "ru"):
        src = seed_source("mt", SEED)
        err = max(abs(np.linalg.norm(sample_rsv(src, d, method)) - 1.0) for _ in range(200))
        yield _below(f"rsv {method} unit norm (max error)", err, 1e-12)
    for method in ("std", "ginibre", "bures", "ptrace"):
        src = seed_source("mt", SEED)
        bad = sum(not is_density_matrix(sample_rdm(src, d, method)) for _ in range(200))
        yield _below(f"rdm {method} density-matrix validity (failures)", bad, 0.5)
    g = ginibre_matrix(seed_source("mt", SEED), d, d)
    diff = np.max(np.abs(rdm_from_bures(g, np.zeros((d, d))) - rdm_from_ginibre(g)))
    yield _below("bures with U=0 equals ginibre", diff, 1e-14)


def _linalg_checks() -> Iterator[Check]:
    src = seed_source("mt", SEED)
    g = ginibre_matrix(src, 10, 10)
    h = g + g.conj().T
    w, v = hermitian_eig(h)
    yield _below("jacobi reconstruction d=10", np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)), 1e-12)
    u = sample_ru(src, 12, "gso")
    theta = unitary_eigenphases(u)
    det_err = abs(np.exp(1j * theta.sum()) - np.linalg.det(u))
    yield _below("eigenphases reproduce det U", det_err, 1e-10)
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1.0 / math.sqrt(2.0)
    rho = np.outer(bell, bell.conj())
    yield _below("bell partial trace is I/2", np.max(np.abs(partial_trace(rho, 2, 2) - np.eye(2) / 2)), 1e-15)
    lam = hermitian_eig(partial_transpose(rho, 2, 2))[0]
    yield _below("bell partial transpose spectrum", np.max(np.abs(lam - [-0.5, 0.5, 0.5, 0.5])), 1e-12)


def _measures_checks() -> Iterator[Check]:
    src = seed_source("mt", SEED)
    psi = sample_rsv(src, 5)
    yield _below("fidelity of a state with itself", abs(fidelity_pure(psi, psi) - 1.0), 1e-14)
    d = 4
    yield _below("entropy of maximally mixed state", abs(vn_entropy(np.eye(d) / d) - 2.0), 1e-12)
    plus = np.full((d, d), 1.0 / d)
    yield _below("l1 coherence of uniform superposition", abs(coherence_l1(plus) - (d - 1)), 1e-12)
    yield _below("relative-entropy coherence of uniform superposition",
                 abs(coherence_re(plus) - 2.0), 1e-9)
    ok, _ = is_ppt(np.eye(d) / d, 2, 2)
    yield Check("maximally mixed state is PPT", float(ok), 1.0, bool(ok))


_BATTERIES: tuple[Callable[..., Iterator[Check]], ...] = (
    _rng_checks,
    _simplex_checks,
    _states_checks,
    _linalg_checks,
    _measures_checks,
)


def run_selftest(*, hhr_phase_fix: bool = True) -> list[Check]:
    """Run every invariant check.

    ``hhr_phase_fix=False`` corrupts the Householder phase normalization for
    the hhr check only, a hook for verifying that the battery detects it.
    """
    checks: list[Check] = []
    for battery in _BATTERIES[:2]:
        checks.extend(battery())
    checks.extend(_unitary_checks(hhr_phase_fix))
    for battery in _BATTERIES[2:]:
        checks.extend(battery())
    return checks


def format_report(checks: list[Check]) -> str:
    failed = sum(not c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
