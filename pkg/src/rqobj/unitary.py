"""Haar-random unitary matrices.

Option strings: ``gso`` (modified Gram-Schmidt QR of a Ginibre matrix, the
default), ``hhr`` (Householder QR with phase correction) and ``hurwitz``
(product of random two-level rotations).
"""

from __future__ import annotations

import numpy as np

from . import rng
from .errors import DegenerateInputError, DomainError, ShapeError, UnsupportedMethodError

__all__ = [
    "RU_METHODS",
    "DEFAULT_RU_METHOD",
    "ginibre_matrix",
    "mgs_qr_unitary",
    "householder_qr_unitary",
    "hurwitz_angles_count",
    "hurwitz_from_draws",
    "hurwitz_unitary",
    "sample_ru",
    "unitarity_residual",
]

RU_METHODS = ("gso", "hhr", "hurwitz")
DEFAULT_RU_METHOD = "gso"

RANK_TOL = 1e-13


def ginibre_matrix(source: rng.RandomSource, rows: int, cols: int) -> np.ndarray:
    """Matrix of independent complex standard normals ``x + iy``.

    Entries are filled row-major; entry ``k`` takes Gaussians ``2k`` (real
    part) and ``2k + 1`` (imaginary part), i.e. one Box-Muller pair each.
    """
    if rows < 1 or cols < 1:
        raise DomainError(f"ginibre_matrix: shape must be positive, got ({rows}, {cols})")
    z = rng.sample_gaussian(source, 2 * rows * cols).reshape(rows, cols, 2)
    return z[..., 0] + 1j * z[..., 1]


def _square(g, name: str) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ShapeError(f"{name}: expected a square matrix, got shape {g.shape}")
    return g


def mgs_qr_unitary(g) -> np.ndarray:
    """Orthonormalize the columns of ``g`` by modified Gram-Schmidt.

    Column ``j`` of the result spans the same flag as columns ``1..j`` of
    ``g``, and the implied ``R`` has a positive real diagonal, so Ginibre
    input gives a Haar-distributed output.
    """
    q = _square(g, "mgs_qr_unitary").copy()
    d = q.shape[0]
    for k in range(d):
        nrm = np.linalg.norm(q[:, k])
        if nrm < RANK_TOL:
            raise DegenerateInputError(f"mgs_qr_unitary: column {k} is linearly dependent")
        q[:, k] /= nrm
        if k + 1 < d:
            q[:, k + 1:] -= np.outer(q[:, k], q[:, k].conj() @ q[:, k + 1:])
    return q


def householder_qr_unitary(g, *, phase_fix: bool = True) -> np.ndarray:
    """Q factor of ``g`` from Householder reflections.

    With ``phase_fix`` the columns are rescaled by ``R_jj / |R_jj|`` so the
    matching ``R`` has a positive real diagonal; without it the output is a
    valid unitary but not Haar distributed.
    """
    a = _square(g, "householder_qr_unitary").copy()
    d = a.shape[0]
    q = np.eye(d, dtype=complex)
    rdiag = np.empty(d, dtype=complex)
    for k in range(d):
        x = a[k:, k]
        nx = np.linalg.norm(x)
        if nx < RANK_TOL:
            raise DegenerateInputError(f"householder_qr_unitary: column {k} is linearly dependent")
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * nx
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        # reflector I - 2 v v^H applied to the trailing block and accumulated in q
        a[k:, k:] -= 2.0 * np.outer(v, v.conj() @ a[k:, k:])
        q[:, k:] -= 2.0 * np.outer(q[:, k:] @ v, v.conj())
        rdiag[k] = alpha
    if phase_fix:
        q *= rdiag / np.abs(rdiag)
    return q


def hurwitz_angles_count(d: int) -> int:
    """Number of uniform draws :func:`hurwitz_from_draws` consumes."""
    pairs = d * (d - 1) // 2
    return 1 + 2 * pairs + (d - 1)


def hurwitz_from_draws(u, d: int) -> np.ndarray:
    """Build a unitary from ``hurwitz_angles_count(d)`` uniform draws.

    ``E^{(i, i+1)}(phi, psi, chi)`` is the identity except on rows/columns
    ``(i, i+1)``::

        [[ cos(phi) e^{i psi},   sin(phi) e^{i chi} ],
         [-sin(phi) e^{-i chi},  cos(phi) e^{-i psi}]]

    The result is ``e^{i alpha} B_d B_{d-1} ... B_2`` where block ``B_m`` acts
    on the last ``m`` coordinates ``o = d - m, ..., d - 1`` and is the
    left-to-right product of adjacent rotations at positions ``k = 1..m-1``
    on the pairs ``(o + m - 1 - k, o + m - k)``.  Block ``B_m`` maps ``e_o`` to
    a uniformly distributed unit vector of its subspace, which by the subgroup
    recursion makes the product Haar on SU(d); the global phase lifts it to
    U(d).  Each rotation uses ``phi = arcsin(xi ** (1 / (2k)))``; ``chi`` is
    drawn only for the rotation at position ``k = 1`` of each block.

    Draw layout: ``alpha``, then for every rotation in order ``(psi, xi)``,
    followed by ``chi`` when ``k = 1``.
    """
    if d < 1:
        raise DomainError(f"hurwitz: dimension must be >= 1, got {d}")
    u = np.asarray(u, dtype=float)
    if u.size != hurwitz_angles_count(d):
        raise ShapeError(f"hurwitz: expected {hurwitz_angles_count(d)} draws, got {u.size}")
    two_pi = 2.0 * np.pi
    it = iter(u)
    U = np.exp(1j * two_pi * next(it)) * np.eye(d, dtype=complex)
    for m in range(d, 1, -1):
        o = d - m
        for k in range(1, m):
            psi = two_pi * next(it)
            xi = next(it)
            chi = two_pi * next(it) if k == 1 else 0.0
            phi = np.arcsin(xi ** (1.0 / (2 * k)))
            e_ii = np.cos(phi) * np.exp(1j * psi)
            e_ij = np.sin(phi) * np.exp(1j * chi)
            i, j = o + m - 1 - k, o + m - k
            # right-multiply by E^{(i, j)}: mixes columns i and j
            ci, cj = U[:, i].copy(), U[:, j].copy()
            U[:, i] = ci * e_ii - cj * np.conj(e_ij)
            U[:, j] = ci * e_ij + cj * np.conj(e_ii)
    return U


def hurwitz_unitary(source: rng.RandomSource, d: int) -> np.ndarray:
    """Haar unitary from the Hurwitz parametrization."""
    if d < 1:
        raise DomainError(f"hurwitz: dimension must be >= 1, got {d}")
    return hurwitz_from_draws(source.u01(hurwitz_angles_count(d)), d)


def sample_ru(source: rng.RandomSource, d: int, method: str = DEFAULT_RU_METHOD) -> np.ndarray:
    """Draw one ``d x d`` Haar-random unitary."""
    if method not in RU_METHODS:
        raise UnsupportedMethodError(
            f"unknown ru method {method!r}; valid: {', '.join(RU_METHODS)}"
        )
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if method == "hurwitz":
        return hurwitz_unitary(source, d)
    g = ginibre_matrix(source, d, d)
    if method == "gso":
        return mgs_qr_unitary(g)
    return householder_qr_unitary(g)


def unitarity_residual(u) -> float:
    """Max-norm of ``u^dagger u - I``."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
