"""Dense complex matrix kernels.

All functions accept a single matrix or a stack of matrices with shape
``(..., d, d)``, in the style of :mod:`numpy.linalg`.  Stacks are processed
together, which is what makes the Monte-Carlo experiments affordable: the
Jacobi sweep applies the same pivot sequence to every matrix in the batch.

Bipartite index convention: a composite basis index is ``k = j_a * d_b + j_b``
(row-major over ``(a, b)``, 0-based), i.e. the ordering of ``np.kron(A, B)``.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NumericalFailureError, ShapeError

__all__ = [
    "hermitian_eig",
    "hermitian_eigvals",
    "unitary_eigenphases",
    "partial_trace",
    "partial_transpose",
    "hs_norm",
    "dagger",
]

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
CLUSTER_GAP = 1e-8


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def _square_stack(a, name: str) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ShapeError(f"{name}: expected square matrices, got shape {a.shape}")
    return a


def _jacobi_rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    """Zero ``A[:, p, q]`` in place for every matrix of the stack."""
    apq = A[:, p, q]
    b = np.abs(apq)
    active = b > 0.0
    if not active.any():
        return
    app = A[:, p, p].real
    aqq = A[:, q, q].real
    safe_b = np.where(active, b, 1.0)
    tau = (aqq - app) / (2.0 * safe_b)
    t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # phase that makes the (p, q) entry real: A[p, q] = b * e^{i phi}
    eph = np.where(active, np.conj(apq) / safe_b, 1.0)  # e^{-i phi}
    # J = diag(1, e^{-i phi}) @ [[c, s], [-s, c]] restricted to (p, q)
    jpp, jpq = c, s
    jqp, jqq = -s * eph, c * eph
    jpp_, jpq_, jqp_, jqq_ = (x[:, None] for x in (jpp, jpq, jqp, jqq))

    cp, cq = A[:, :, p].copy(), A[:, :, q].copy()
    A[:, :, p] = cp * jpp_ + cq * jqp_
    A[:, :, q] = cp * jpq_ + cq * jqq_
    rp, rq = A[:, p, :].copy(), A[:, q, :].copy()
    A[:, p, :] = np.conj(jpp_) * rp + np.conj(jqp_) * rq
    A[:, q, :] = np.conj(jpq_) * rp + np.conj(jqq_) * rq
    A[:, p, q] = 0.0
    A[:, q, p] = 0.0
    A[:, p, p] = A[:, p, p].real
    A[:, q, q] = A[:, q, q].real

    vp, vq = V[:, :, p].copy(), V[:, :, q].copy()
    V[:, :, p] = vp * jpp_ + vq * jqp_
    V[:, :, q] = vp * jpq_ + vq * jqq_


def hermitian_eig(a, *, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of Hermitian matrices by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (..., d, d)
        Hermitian within ``1e-10`` (max-norm of ``a - a^dagger``).
    tol : float
        A matrix is converged once every off-diagonal magnitude is below
        ``tol * max|a|``.
    max_sweeps : int
        Sweep limit before :class:`NumericalFailureError` is raised.

    Returns
    -------
    w : ndarray, shape (..., d)
        Eigenvalues in ascending order.
    v : ndarray, shape (..., d, d)
        Unitary matrix whose columns are the matching eigenvectors, so that
        ``a = v @ diag(w) @ v^dagger``.
    """
    a = _square_stack(a, "hermitian_eig").astype(complex)
    asym = np.max(np.abs(a - dagger(a)), initial=0.0)
    if asym > HERMITIAN_TOL:
        raise DomainError(f"hermitian_eig: input not Hermitian (max|a - a^H| = {asym:.3e})")
    batch, d = a.shape[:-2], a.shape[-1]
    A = (0.5 * (a + dagger(a))).reshape(-1, d, d)
    V = np.broadcast_to(np.eye(d, dtype=complex), A.shape).copy()
    n = A.shape[0]
    if n and d > 1:
        scale = np.max(np.abs(A), axis=(1, 2))
        off_mask = ~np.eye(d, dtype=bool)
        for _ in range(max_sweeps):
            off = np.max(np.abs(A[:, off_mask]), axis=1)
            if np.all(off <= tol * scale):
                break
            for p in range(d - 1):
                for q in range(p + 1, d):
                    _jacobi_rotate(A, V, p, q)
        else:
            off = np.max(np.abs(A[:, off_mask]), axis=1)
            if not np.all(off <= tol * scale):
                raise NumericalFailureError(
                    f"Jacobi did not converge in {max_sweeps} sweeps"
                )
    w = np.diagonal(A, axis1=1, axis2=2).real
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    return w.reshape(batch + (d,)), V.reshape(batch + (d, d))


def hermitian_eigvals(a, **kwargs) -> np.ndarray:
    return hermitian_eig(a, **kwargs)[0]


def _unitarity_residual(u: np.ndarray) -> float:
    d = u.shape[-1]
    return float(np.max(np.abs(dagger(u) @ u - np.eye(d)), initial=0.0))


def unitary_eigenphases(u, *, gap: float = CLUSTER_GAP) -> np.ndarray:
    """Eigenphases of unitary matrices, ascending in ``[-pi, pi)``.

    A unitary is normal, so its Hermitian part ``H = (u + u^H) / 2`` and
    ``K = (u - u^H) / 2i`` commute and share eigenvectors.  ``H`` is
    diagonalized first; within clusters of ``H`` eigenvalues closer than
    ``gap`` the eigenvectors are rotated to also diagonalize ``K``.  Each phase
    is ``atan2(<v|K|v>, <v|H|v>)``.
    """
    u = _square_stack(u, "unitary_eigenphases").astype(complex)
    res = _unitarity_residual(u)
    if res > UNITARY_TOL:
        raise DomainError(f"unitary_eigenphases: input not unitary (residual {res:.3e})")
    batch, d = u.shape[:-2], u.shape[-1]
    U = u.reshape(-1, d, d)
    H = 0.5 * (U + dagger(U))
    K = -0.5j * (U - dagger(U))
    w, V = hermitian_eig(H)
    for i, j0, j1 in _clusters(w, gap):
        Vc = V[i, :, j0:j1]
        _, W = hermitian_eig(dagger(Vc) @ K[i] @ Vc)
        V[i, :, j0:j1] = Vc @ W
    h = np.einsum("nji,njk,nki->ni", V.conj(), H, V).real
    k = np.einsum("nji,njk,nki->ni", V.conj(), K, V).real
    theta = np.arctan2(k, h)
    theta[theta >= np.pi] -= 2.0 * np.pi
    theta.sort(axis=1)
    return theta.reshape(batch + (d,))


def _clusters(w: np.ndarray, gap: float):
    """Yield ``(matrix, start, stop)`` for runs of near-equal sorted eigenvalues."""
    if w.shape[1] < 2:
        return
    close = np.diff(w, axis=1) < gap
    for i in np.flatnonzero(close.any(axis=1)):
        j = 0
        row = close[i]
        while j < row.size:
            if row[j]:
                start = j
                while j < row.size and row[j]:
                    j += 1
                yield i, start, j + 1
            j += 1


def _bipartite(rho, d_a: int, d_b: int, name: str) -> np.ndarray:
    rho = _square_stack(rho, name)
    if d_a < 1 or d_b < 1 or rho.shape[-1] != d_a * d_b:
        raise ShapeError(
            f"{name}: matrix of size {rho.shape[-1]} does not factor as {d_a} x {d_b}"
        )
    return rho.reshape(rho.shape[:-2] + (d_a, d_b, d_a, d_b))


def partial_trace(rho, d_a: int, d_b: int, traced_side: str = "b") -> np.ndarray:
    """Reduced matrix after tracing out subsystem ``traced_side`` (``"a"`` or ``"b"``)."""
    r = _bipartite(rho, d_a, d_b, "partial_trace")
    if traced_side == "b":
        return np.einsum("...ajbj->...ab", r)
    if traced_side == "a":
        return np.einsum("...jajb->...ab", r)
    raise DomainError(f"traced_side must be 'a' or 'b', got {traced_side!r}")


def partial_transpose(rho, d_a: int, d_b: int, side: str = "b") -> np.ndarray:
    """Transpose the indices of one subsystem only."""
    r = _bipartite(rho, d_a, d_b, "partial_transpose")
    if side == "b":
        r = np.swapaxes(r, -3, -1)
    elif side == "a":
        r = np.swapaxes(r, -4, -2)
    else:
        raise DomainError(f"side must be 'a' or 'b', got {side!r}")
    n = d_a * d_b
    return r.reshape(r.shape[:-4] + (n, n)).copy()


def hs_norm(m) -> np.ndarray:
    """Hilbert-Schmidt (Frobenius) norm ``sqrt(Tr(m^dagger m))``."""
    m = np.asarray(m)
    return np.sqrt(np.sum(np.abs(m) ** 2, axis=(-2, -1)))
