"""Random probability vectors: points on the unit simplex.

The ``pv_from_*_draws`` functions are pure maps from explicit random draws to
a probability vector.  :func:`sample_rpv` draws the numbers from a
:class:`~rqobj.rng.RandomSource`, applies the matching map and, for the
``trig`` and ``norm`` methods, shuffles the components.

Methods (option strings):

=========  ==================================================  ===========
id         construction                                        flat law
=========  ==================================================  ===========
trig       products of squared cosines of random angles        no
norm       sequential uniform share of the remaining budget    no
zhsl       sequential share with ``1 - r**(1/(d-j))`` (default)  yes
iid        normalized uniform draws                            no
devroye    normalized exponential draws                        yes
kraemer    spacings of sorted uniform draws                    yes
=========  ==================================================  ===========
"""

from __future__ import annotations

import numpy as np

from . import rng
from .errors import DegenerateInputError, DomainError, InternalError, UnsupportedMethodError

__all__ = [
    "RPV_METHODS",
    "DEFAULT_RPV_METHOD",
    "pv_from_trig_draws",
    "pv_from_norm_draws",
    "pv_from_zhsl_draws",
    "pv_from_iid_draws",
    "pv_from_devroye_draws",
    "pv_from_kraemer_draws",
    "sample_rpv",
    "is_probability_vector",
]

RPV_METHODS = ("trig", "norm", "zhsl", "iid", "devroye", "kraemer")
DEFAULT_RPV_METHOD = "zhsl"

# Rounding may push the remainder slightly below zero; anything beyond this is a bug.
_REMAINDER_SLACK = 1e-14


def _unit_draws(r, name: str) -> np.ndarray:
    r = np.asarray(r, dtype=float).ravel()
    if r.size and (np.any(r < 0.0) or np.any(r > 1.0) or np.any(np.isnan(r))):
        raise DomainError(f"{name}: draws must lie in [0, 1]")
    return r


def _close(p: np.ndarray, head_sum: float) -> np.ndarray:
    last = 1.0 - head_sum
    if last < 0.0:
        if last < -_REMAINDER_SLACK:
            raise InternalError(f"negative remainder {last:.3e} on the simplex")
        last = 0.0
    p[-1] = last
    return p


def pv_from_trig_draws(r) -> np.ndarray:
    """Trigonometric map from ``d - 1`` uniform draws.

    With ``theta_j = arccos(sqrt(r_j))`` and the leading angle fixed at
    ``pi / 2``::

        p_j = sin^2(theta_{j-1}) * prod_{k >= j} cos^2(theta_k)
        p_d = sin^2(theta_{d-1})

    ``cos^2(theta_j)`` and ``sin^2(theta_j)`` are evaluated as ``r_j`` and
    ``1 - r_j``, which is exact and avoids the round trip through arccos.
    """
    r = _unit_draws(r, "trig")
    cos2 = r
    sin2 = np.concatenate(([1.0], 1.0 - r))
    # tail[j] = prod_{k >= j} cos^2(theta_k), with the empty product at the end
    tail = np.concatenate((np.cumprod(cos2[::-1])[::-1], [1.0]))
    return sin2 * tail


def pv_from_norm_draws(u) -> np.ndarray:
    """Each component takes a uniform fraction of what the previous ones left."""
    u = _unit_draws(u, "norm")
    p = np.empty(u.size + 1)
    acc = 0.0
    for j, uj in enumerate(u):
        p[j] = uj * (1.0 - acc)
        acc += p[j]
    return _close(p, acc)


def pv_from_zhsl_draws(r) -> np.ndarray:
    """Zyczkowski-Horodecki-Sanpera-Lewenstein construction.

    ``p_j = (1 - r_j ** (1 / (d - j))) * (1 - sum_{k<j} p_k)`` for
    ``j = 1..d-1``, last component the remainder.  Uniform on the simplex when
    the ``r_j`` are uniform.
    """
    r = _unit_draws(r, "zhsl")
    d = r.size + 1
    p = np.empty(d)
    acc = 0.0
    for j, rj in enumerate(r, start=1):
        p[j - 1] = (1.0 - rj ** (1.0 / (d - j))) * (1.0 - acc)
        acc += p[j - 1]
    return _close(p, acc)


def _normalize(x: np.ndarray, name: str) -> np.ndarray:
    if np.any(x < 0.0) or np.any(np.isnan(x)):
        raise DomainError(f"{name}: draws must be non-negative")
    total = x.sum()
    if not total > 0.0:
        raise DegenerateInputError(f"{name}: draws sum to zero")
    return x / total


def pv_from_iid_draws(r) -> np.ndarray:
    """Normalize ``d`` non-negative draws."""
    return _normalize(np.asarray(r, dtype=float).ravel(), "iid")


def pv_from_devroye_draws(e) -> np.ndarray:
    """Normalize ``d`` unit-exponential draws (flat Dirichlet)."""
    return _normalize(np.asarray(e, dtype=float).ravel(), "devroye")


def pv_from_kraemer_draws(r) -> np.ndarray:
    """Spacings of ``d - 1`` sorted uniform draws padded with 0 and 1."""
    r = _unit_draws(r, "kraemer")
    return np.diff(np.concatenate(([0.0], np.sort(r), [1.0])))


def sample_rpv(source: rng.RandomSource, d: int, method: str = DEFAULT_RPV_METHOD) -> np.ndarray:
    """Draw one random probability vector of length ``d``."""
    if method not in RPV_METHODS:
        raise UnsupportedMethodError(
            f"unknown rpv method {method!r}; valid: {', '.join(RPV_METHODS)}"
        )
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if method == "iid":
        return pv_from_iid_draws(source.u01(d))
    if method == "devroye":
        return pv_from_devroye_draws(rng.sample_exponential(source, d))
    core = {
        "trig": pv_from_trig_draws,
        "norm": pv_from_norm_draws,
        "zhsl": pv_from_zhsl_draws,
        "kraemer": pv_from_kraemer_draws,
    }[method]
    p = core(source.u01(d - 1))
    if method in ("trig", "norm"):
        p = p[rng.random_permutation(source, d) - 1]
    return p


def is_probability_vector(p, atol: float = 1e-12) -> bool:
    p = np.asarray(p)
    return bool(p.ndim == 1 and np.all(p >= 0.0) and abs(p.sum() - 1.0) <= atol)
