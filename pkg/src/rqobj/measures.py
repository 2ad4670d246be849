"""Quantumness functionals: fidelity, entropy, coherence and the PPT test.

Logarithms are base 2.  Matrix arguments may be stacks ``(..., d, d)``.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import hermitian_eigvals, partial_transpose

__all__ = [
    "PSD_TOL",
    "fidelity_pure",
    "shannon_entropy",
    "vn_entropy",
    "coherence_l1",
    "coherence_re",
    "ppt_min_eigenvalue",
    "is_ppt",
]

# shared with the density-matrix positivity check
PSD_TOL = 1e-10


def fidelity_pure(psi, phi):
    """``|<psi|phi>|^2`` for state vectors (or stacks of them)."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape[-1] != phi.shape[-1]:
        raise ShapeError(f"dimension mismatch: {psi.shape[-1]} vs {phi.shape[-1]}")
    return np.abs(np.sum(np.conj(psi) * phi, axis=-1)) ** 2


def shannon_entropy(p):
    """Entropy in bits of probability vectors along the last axis, ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0.0, p, 1.0)
    return -np.sum(np.where(p > 0.0, p * np.log2(safe), 0.0), axis=-1)


def vn_entropy(rho):
    """von Neumann entropy ``-Tr(rho log2 rho)``."""
    lam = hermitian_eigvals(rho)
    if np.any(lam < -PSD_TOL):
        raise DomainError(f"matrix is not positive semidefinite (min eigenvalue {lam.min():.3e})")
    return shannon_entropy(np.clip(lam, 0.0, None))


def coherence_l1(rho):
    """Sum of magnitudes of the off-diagonal entries."""
    rho = np.asarray(rho)
    off = ~np.eye(rho.shape[-1], dtype=bool)
    return np.abs(rho[..., off]).sum(axis=-1)


def coherence_re(rho):
    """Relative entropy of coherence ``S(diag(rho)) - S(rho)``."""
    rho = np.asarray(rho)
    diag = np.clip(np.diagonal(rho, axis1=-2, axis2=-1).real, 0.0, None)
    # sorted like the eigenvalues, so a diagonal rho gives exactly 0
    c = shannon_entropy(np.sort(diag, axis=-1)) - vn_entropy(rho)
    # rounding can leave tiny negatives
    c = np.where((c < 0.0) & (c >= -1e-9), 0.0, c)
    return c if np.ndim(c) else float(c)


def ppt_min_eigenvalue(rho, d_a: int, d_b: int):
    """Smallest eigenvalue of the partial transpose over subsystem ``b``."""
    return hermitian_eigvals(partial_transpose(rho, d_a, d_b, "b"))[..., 0]


def is_ppt(rho, d_a: int, d_b: int):
    """Peres-Horodecki test.

    Returns
    -------
    ppt : bool or ndarray of bool
        True where the partial transpose has no eigenvalue below ``-1e-10``.
    min_eig : float or ndarray
        The smallest partial-transpose eigenvalue, kept for diagnostics.
    """
    lam = ppt_min_eigenvalue(rho, d_a, d_b)
    ok = lam >= -PSD_TOL
    if np.ndim(lam) == 0:
        return bool(ok), float(lam)
    return ok, lam
