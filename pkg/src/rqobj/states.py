"""Random pure states and random density matrices.

State vectors are 1-D complex arrays of unit norm; density matrices are 2-D
complex arrays that are Hermitian, unit-trace and positive semidefinite.

Each sampler has a deterministic core (``rsv_from_*`` / ``rdm_from_*``) that
builds the object from explicit ingredients, which is what the tests pin.
"""

from __future__ import annotations

import numpy as np

from . import rng
from .errors import DegenerateInputError, DomainError, InternalError, ShapeError, UnsupportedMethodError
from .linalg import dagger, hermitian_eigvals, hs_norm
from .simplex import DEFAULT_RPV_METHOD, sample_rpv
from .unitary import DEFAULT_RU_METHOD, ginibre_matrix, sample_ru

__all__ = [
    "RSV_METHODS",
    "RDM_METHODS",
    "DEFAULT_RSV_METHOD",
    "DEFAULT_RDM_METHOD",
    "rsv_from_pv_phases",
    "rsv_gauss",
    "rsv_std",
    "rsv_ru",
    "sample_rsv",
    "rdm_from_spectrum",
    "rdm_from_ginibre",
    "rdm_from_bures",
    "rdm_from_bipartite_state",
    "rdm_std",
    "rdm_ginibre",
    "rdm_bures",
    "rdm_ptrace",
    "sample_rdm",
    "is_state_vector",
    "is_density_matrix",
]

RSV_METHODS = ("gauss", "std", "ru")
RDM_METHODS = ("std", "ginibre", "bures", "ptrace")
DEFAULT_RSV_METHOD = "std"
DEFAULT_RDM_METHOD = "std"

# largest rounding asymmetry tolerated before re-symmetrizing
_HERMITIZE_LIMIT = 1e-13


def _check_dim(d: int) -> None:
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")


def rsv_from_pv_phases(p, phases) -> np.ndarray:
    """Amplitudes ``sqrt(p_j) * exp(i phi_j)``."""
    p = np.asarray(p, dtype=float)
    phases = np.asarray(phases, dtype=float)
    if p.shape != phases.shape:
        raise ShapeError(f"probabilities {p.shape} and phases {phases.shape} differ in shape")
    return np.sqrt(p) * np.exp(1j * phases)


def rsv_gauss(source: rng.RandomSource, d: int) -> np.ndarray:
    """Normalized vector of complex standard normals."""
    _check_dim(d)
    c = ginibre_matrix(source, d, 1)[:, 0]
    return c / np.linalg.norm(c)


def rsv_std(source: rng.RandomSource, d: int, pv_method: str = DEFAULT_RPV_METHOD) -> np.ndarray:
    """Random probability vector for the moduli, uniform phases on ``[0, 2pi)``."""
    _check_dim(d)
    p = sample_rpv(source, d, pv_method)
    return rsv_from_pv_phases(p, 2.0 * np.pi * source.u01(d))


def rsv_ru(source: rng.RandomSource, d: int, ru_method: str = DEFAULT_RU_METHOD) -> np.ndarray:
    """First column of a random unitary."""
    _check_dim(d)
    return sample_ru(source, d, ru_method)[:, 0].copy()


def sample_rsv(
    source: rng.RandomSource,
    d: int,
    method: str = DEFAULT_RSV_METHOD,
    *,
    pv_method: str = DEFAULT_RPV_METHOD,
    ru_method: str = DEFAULT_RU_METHOD,
) -> np.ndarray:
    """Draw one random state vector by ``method`` (``gauss``, ``std`` or ``ru``)."""
    if method == "gauss":
        return rsv_gauss(source, d)
    if method == "std":
        return rsv_std(source, d, pv_method)
    if method == "ru":
        return rsv_ru(source, d, ru_method)
    raise UnsupportedMethodError(
        f"unknown rsv method {method!r}; valid: {', '.join(RSV_METHODS)}"
    )


def _hermitize(rho: np.ndarray) -> np.ndarray:
    skew = np.max(np.abs(rho - dagger(rho)), initial=0.0) / 2.0
    if skew > _HERMITIZE_LIMIT:
        raise InternalError(f"density matrix asymmetry {skew:.3e} exceeds rounding level")
    return 0.5 * (rho + dagger(rho))


def rdm_from_spectrum(r, u) -> np.ndarray:
    """``u @ diag(r) @ u^dagger``: eigenvalues ``r``, eigenvectors the columns of ``u``."""
    r = np.asarray(r, dtype=float)
    u = np.asarray(u, dtype=complex)
    if u.shape != (r.size, r.size):
        raise ShapeError(f"spectrum of length {r.size} does not match unitary {u.shape}")
    return _hermitize((u * r) @ dagger(u))


def _normalized_gram(m: np.ndarray, name: str) -> np.ndarray:
    nrm = hs_norm(m)
    if not nrm > 0.0:
        raise DegenerateInputError(f"{name}: zero Hilbert-Schmidt norm")
    m = m / nrm
    return _hermitize(m @ dagger(m))


def rdm_from_ginibre(g) -> np.ndarray:
    """``G G^dagger / ||G||_2^2``."""
    return _normalized_gram(np.asarray(g, dtype=complex), "ginibre")


def rdm_from_bures(g, u) -> np.ndarray:
    """``(I + U) G G^dagger (I + U^dagger) / ||(I + U) G||_2^2``."""
    g = np.asarray(g, dtype=complex)
    u = np.asarray(u, dtype=complex)
    if g.shape != u.shape:
        raise ShapeError(f"G {g.shape} and U {u.shape} differ in shape")
    return _normalized_gram(g + u @ g, "bures")


def rdm_from_bipartite_state(psi, d: int, ancilla_dim: int) -> np.ndarray:
    """Reduced state ``Tr_b |psi><psi|`` of a pure state on ``d * ancilla_dim``.

    Uses the composite index ``j_a * ancilla_dim + j_b``; reshaping ``psi`` to a
    ``d x ancilla_dim`` matrix ``M`` gives the partial trace as ``M M^dagger``.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size != d * ancilla_dim:
        raise ShapeError(f"state of size {psi.size} does not factor as {d} x {ancilla_dim}")
    m = psi.reshape(d, ancilla_dim)
    return _hermitize(m @ dagger(m))


def rdm_std(
    source: rng.RandomSource,
    d: int,
    pv_method: str = DEFAULT_RPV_METHOD,
    ru_method: str = DEFAULT_RU_METHOD,
) -> np.ndarray:
    """Random spectrum from the simplex, random eigenbasis from a unitary."""
    _check_dim(d)
    r = sample_rpv(source, d, pv_method)
    return rdm_from_spectrum(r, sample_ru(source, d, ru_method))


def rdm_ginibre(source: rng.RandomSource, d: int) -> np.ndarray:
    """Hilbert-Schmidt ensemble from a square Ginibre matrix."""
    _check_dim(d)
    return rdm_from_ginibre(ginibre_matrix(source, d, d))


def rdm_bures(source: rng.RandomSource, d: int, ru_method: str = DEFAULT_RU_METHOD) -> np.ndarray:
    """Bures ensemble; draws ``G`` first, then ``U``."""
    _check_dim(d)
    g = ginibre_matrix(source, d, d)
    return rdm_from_bures(g, sample_ru(source, d, ru_method))


def rdm_ptrace(
    source: rng.RandomSource,
    d: int,
    ancilla_dim: int | None = None,
    rsv_method: str = DEFAULT_RSV_METHOD,
) -> np.ndarray:
    """Reduced state of a random pure state on ``d x ancilla_dim`` (default square)."""
    _check_dim(d)
    ancilla_dim = d if ancilla_dim is None else ancilla_dim
    if ancilla_dim < 1:
        raise DomainError(f"ancilla dimension must be >= 1, got {ancilla_dim}")
    psi = sample_rsv(source, d * ancilla_dim, rsv_method)
    return rdm_from_bipartite_state(psi, d, ancilla_dim)


def sample_rdm(
    source: rng.RandomSource,
    d: int,
    method: str = DEFAULT_RDM_METHOD,
    *,
    pv_method: str = DEFAULT_RPV_METHOD,
    ru_method: str = DEFAULT_RU_METHOD,
    rsv_method: str = DEFAULT_RSV_METHOD,
    ancilla_dim: int | None = None,
) -> np.ndarray:
    """Draw one random density matrix by ``method``."""
    if method == "std":
        return rdm_std(source, d, pv_method, ru_method)
    if method == "ginibre":
        return rdm_ginibre(source, d)
    if method == "bures":
        return rdm_bures(source, d, ru_method)
    if method == "ptrace":
        return rdm_ptrace(source, d, ancilla_dim, rsv_method)
    raise UnsupportedMethodError(
        f"unknown rdm method {method!r}; valid: {', '.join(RDM_METHODS)}"
    )


def is_state_vector(c, atol: float = 1e-12) -> bool:
    c = np.asarray(c)
    return bool(c.ndim == 1 and abs(np.vdot(c, c).real - 1.0) <= atol)


def is_density_matrix(rho, *, herm_tol: float = 1e-12, trace_tol: float = 1e-12,
                      psd_tol: float = 1e-10) -> bool:
    """Check Hermiticity, unit trace and positivity (eigenvalues via Jacobi)."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.max(np.abs(rho - dagger(rho))) > herm_tol:
        return False
    if abs(np.trace(rho) - 1.0) > trace_tol:
        return False
    return bool(hermitian_eigvals(rho)[0] >= -psd_tol)
