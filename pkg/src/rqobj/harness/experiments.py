"""Sampling and Monte-Carlo experiments that write CSV tables.

Sub-stream rule: the samples for dimension ``d`` are split into ``shards``
nearly equal parts; part ``k`` draws from ``seed_source(rng, derive_seed(seed,
d, k))``.  Shard results are reduced to sums and pooled in shard order, so a
table depends only on ``(config, seed, shards)`` and never on ``jobs``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .. import __version__
from ..errors import UsageError
from ..linalg import unitary_eigenphases
from ..measures import coherence_l1, coherence_re, fidelity_pure, is_ppt
from ..rng import RandomSource, derive_seed, sample_exponential, sample_gaussian, seed_source
from ..simplex import sample_rpv
from ..states import RDM_METHODS, RSV_METHODS, sample_rdm, sample_rsv
from ..unitary import RU_METHODS, sample_ru
from .config import ExperimentConfig
from .csvio import Table, complex_columns, interleave_complex, write_table

__all__ = [
    "run_sample",
    "run_moments",
    "moment_standard_errors",
    "run_fidelity_exp",
    "run_eigenphase_exp",
    "cyclic_spacings",
    "run_ppt_exp",
    "run_coherence_exp",
    "fit_exponential",
    "EXPERIMENTS",
]

_CHUNK = 1000


def _banner(kind: str, **params) -> list[str]:
    desc = " ".join(f"{k}={v}" for k, v in params.items())
    return [f"rqobj {__version__} {kind}", desc]


def _shard_sizes(n: int, shards: int) -> list[int]:
    base, extra = divmod(n, shards)
    return [base + (1 if k < extra else 0) for k in range(shards)]


def _run_shards(task: Callable, arglist: list[tuple], jobs: int) -> list:
    if jobs <= 1 or len(arglist) <= 1:
        return [task(*args) for args in arglist]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(task, *zip(*arglist)))


def _require_seed(seed) -> int:
    if seed is None:
        raise UsageError("experiments require an explicit --seed")
    return int(seed)


# -- raw samples ------------------------------------------------------------

def _sample_record(source: RandomSource, cfg: ExperimentConfig) -> list:
    d, m = cfg.dim, cfg.method
    if cfg.object == "rn":
        if m == "unif":
            return source.u01(d).tolist()
        if m == "gauss":
            return sample_gaussian(source, d).tolist()
        return sample_exponential(source, d).tolist()
    if cfg.object == "rpv":
        return sample_rpv(source, d, m).tolist()
    if cfg.object == "ru":
        return interleave_complex(sample_ru(source, d, m))
    if cfg.object == "rsv":
        return interleave_complex(sample_rsv(source, d, m))
    return interleave_complex(sample_rdm(source, d, m, ancilla_dim=cfg.ancilla_dim))


def _sample_columns(obj: str, d: int) -> list[str]:
    idx = range(1, d + 1)
    if obj == "rn":
        return [f"x{j}" for j in idx]
    if obj == "rpv":
        return [f"p{j}" for j in idx]
    if obj == "rsv":
        return complex_columns([f"c{j}" for j in idx])
    name = "u" if obj == "ru" else "rho"
    return complex_columns([f"{name}_{j}_{k}" for j in idx for k in idx])


def run_sample(cfg: ExperimentConfig) -> Table:
    """One record per sampled object, drawn sequentially from a single stream."""
    if len(cfg.dims) != 1:
        raise UsageError("sample takes exactly one dimension")
    seed = 5489 if cfg.seed is None else cfg.seed
    source = seed_source(cfg.rng, seed)
    table = Table(
        columns=_sample_columns(cfg.object, cfg.dim),
        header=_banner(
            "sample", object=cfg.object, method=cfg.method, rng=cfg.rng,
            dim=cfg.dim, samples=cfg.samples, seed=seed,
        ),
    )
    table.rows = [tuple(_sample_record(source, cfg)) for _ in range(cfg.samples)]
    if cfg.out is not None:
        write_table(table, cfg.out)
    return table


# -- uniform moments and correlations -----------------------------------------

_PAIRS = ((1, 1), (1, 2), (2, 2))


def _m(j: int) -> float:
    return 1.0 / (j + 1)


def moment_standard_errors(n: int) -> dict[str, float]:
    """Analytic standard errors of the :func:`run_moments` columns at ``n`` draws.

    Lag-one products are 1-dependent, so their variance picks up one
    neighbouring covariance term on each side.
    """
    se = {"mean_shift": math.sqrt(1.0 / 12.0 / n)}
    for j in (2, 3, 4):
        se[f"mu{j}"] = math.sqrt((1.0 / (2 * j + 1) - _m(j) ** 2) / n)
    for j, k in _PAIRS:
        mean = _m(j) * _m(k)
        var = 1.0 / ((2 * j + 1) * (2 * k + 1)) - mean ** 2
        # Y_n = x_n^j x_{n+1}^k and Y_{n+1} share x_{n+1}, raised to k + j
        cov = _m(j) * _m(j + k) * _m(k) - mean ** 2
        se[f"eps{j}{k}"] = math.sqrt((var + 2.0 * cov) / (n - 1))
    return se


def _checkpoints(n: int) -> list[int]:
    points = set()
    scale = 1
    while scale <= n:
        for f in (1, 2, 5):
            if 2 <= f * scale <= n:
                points.add(f * scale)
        scale *= 10
    points.add(n)
    return sorted(points)


def run_moments(cfg: ExperimentConfig) -> Table:
    """Running moments and lag-1 correlations of the u01 stream.

    Columns: ``n``, ``<x> - 1/2``, ``mu_j = <x^j> - 1/(j+1)`` for j = 2..4, and
    ``eps_jk = <x_n^j x_{n+1}^k> - 1/((j+1)(k+1))`` over the ``n - 1`` pairs.
    """
    if cfg.object != "rn":
        raise UsageError("moments requires object 'rn'")
    n = cfg.samples
    if n < 2:
        raise UsageError("moments needs at least 2 samples")
    seed = 5489 if cfg.seed is None else cfg.seed
    x = seed_source(cfg.rng, seed).u01(n)
    sums = {j: np.cumsum(x ** j) for j in (1, 2, 3, 4)}
    pair_sums = {(j, k): np.cumsum(x[:-1] ** j * x[1:] ** k) for j, k in _PAIRS}
    table = Table(
        columns=["n", "mean_shift", "mu2", "mu3", "mu4", "eps11", "eps12", "eps22"],
        header=_banner("moments", rng=cfg.rng, samples=n, seed=seed),
    )
    for c in _checkpoints(n):
        row = [c, sums[1][c - 1] / c - 0.5]
        row += [sums[j][c - 1] / c - _m(j) for j in (2, 3, 4)]
        row += [pair_sums[(j, k)][c - 2] / (c - 1) - _m(j) * _m(k) for j, k in _PAIRS]
        table.rows.append(tuple(row))
    se = moment_standard_errors(n)
    table.footer.append("standard_errors_at_n " + " ".join(f"{k}={v:.6e}" for k, v in se.items()))
    if cfg.out is not None:
        write_table(table, cfg.out)
    return table


# -- fidelity ---------------------------------------------------------------

def _fidelity_shard(rng_id, seed, d, n, method, pair_method):
    source = seed_source(rng_id, seed)
    f = np.empty(n)
    for i in range(n):
        psi = sample_rsv(source, d, method)
        phi = sample_rsv(source, d, pair_method)
        f[i] = fidelity_pure(psi, phi)
    if d == 1:
        # any two unit vectors of a one-dimensional space coincide up to phase
        f[:] = 1.0
    return float(f.sum()), float(np.sum(f * f)), n


def _mean_se(s1: float, s2: float, n: int) -> tuple[float, float]:
    mean = s1 / n
    var = max(s2 - n * mean * mean, 0.0) / (n - 1) if n > 1 else 0.0
    return mean, math.sqrt(var / n)


def run_fidelity_exp(
    dims: Sequence[int],
    samples: int,
    rsv_method: str = "std",
    seed: int | None = None,
    *,
    pair_method: str | None = None,
    rng: str = "mt",
    shards: int = 1,
    jobs: int = 1,
    out=None,
) -> Table:
    """Mean pure-state fidelity of independent pairs versus dimension.

    ``pair_method`` draws the second state of each pair by another method
    (defaults to ``rsv_method``).
    """
    seed = _require_seed(seed)
    pair_method = rsv_method if pair_method is None else pair_method
    for m in (rsv_method, pair_method):
        if m not in RSV_METHODS:
            raise UsageError(f"unknown rsv method {m!r}; valid: {', '.join(RSV_METHODS)}")
    if samples < 100:
        raise UsageError("fidelity experiment needs samples >= 100")
    table = Table(
        columns=["d", "mean_fidelity", "se", "samples"],
        header=_banner("fidelity", method=rsv_method, pair_method=pair_method, rng=rng,
                       dims=",".join(map(str, dims)), samples=samples, seed=seed, shards=shards),
    )
    for d in dims:
        args = [(rng, derive_seed(seed, d, k), d, n, rsv_method, pair_method)
                for k, n in enumerate(_shard_sizes(samples, shards))]
        parts = _run_shards(_fidelity_shard, args, jobs)
        s1 = sum(p[0] for p in parts)
        s2 = sum(p[1] for p in parts)
        mean, se = _mean_se(s1, s2, samples)
        table.rows.append((d, mean, se, samples))
    if out is not None:
        write_table(table, out)
    return table


# -- eigenphases ------------------------------------------------------------

SPACING_CUT = 0.25


def cyclic_spacings(theta: np.ndarray) -> np.ndarray:
    """Nearest-neighbour gaps of sorted phases, wrapping from the last to the first.

    Gaps are divided by the mean spacing ``2 pi / d``, so each row sums to ``d``.
    """
    theta = np.asarray(theta, dtype=float)
    d = theta.shape[-1]
    gaps = np.diff(theta, axis=-1, append=theta[..., :1] + 2.0 * np.pi)
    return gaps * d / (2.0 * np.pi)


def _eigenphase_shard(rng_id, seed, d, n, method, bins, spacing_bins, spacing_max):
    source = seed_source(rng_id, seed)
    phase_counts = np.zeros(bins, dtype=np.int64)
    spacing_counts = np.zeros(spacing_bins, dtype=np.int64)
    below = overflow = 0
    done = 0
    while done < n:
        m = min(_CHUNK // max(1, d // 10), n - done)
        m = max(m, 1)
        U = np.array([sample_ru(source, d, method) for _ in range(m)])
        theta = unitary_eigenphases(U)
        phase_counts += np.histogram(theta, bins=bins, range=(-np.pi, np.pi))[0]
        s = cyclic_spacings(theta)
        below += int(np.count_nonzero(s < SPACING_CUT))
        overflow += int(np.count_nonzero(s >= spacing_max))
        spacing_counts += np.histogram(s, bins=spacing_bins, range=(0.0, spacing_max))[0]
        done += m
    return phase_counts, spacing_counts, below, overflow


def run_eigenphase_exp(
    d: int,
    samples: int,
    ru_method: str = "gso",
    seed: int | None = None,
    *,
    rng: str = "mt",
    bins: int = 20,
    spacing_bins: int = 50,
    spacing_max: float = 4.0,
    shards: int = 1,
    jobs: int = 1,
    out=None,
) -> Table:
    """Pooled eigenphase histogram and normalized nearest-neighbour spacings.

    Spacings are taken cyclically on the sorted phases and divided by the
    mean spacing ``2 pi / d``.  The footer holds the chi-square uniformity
    test of the phase histogram and the fraction of spacings below 0.25.
    """
    seed = _require_seed(seed)
    if d < 2:
        raise UsageError("eigenphase experiment needs d >= 2")
    if ru_method not in RU_METHODS:
        raise UsageError(f"unknown ru method {ru_method!r}; valid: {', '.join(RU_METHODS)}")
    args = [(rng, derive_seed(seed, d, k), d, n, ru_method, bins, spacing_bins, spacing_max)
            for k, n in enumerate(_shard_sizes(samples, shards))]
    parts = _run_shards(_eigenphase_shard, args, jobs)
    phase_counts = sum(p[0] for p in parts)
    spacing_counts = sum(p[1] for p in parts)
    below = sum(p[2] for p in parts)
    overflow = sum(p[3] for p in parts)
    n_phases = samples * d

    table = Table(
        columns=["histogram", "bin_lo", "bin_hi", "count", "density"],
        header=_banner("eigenphase", method=ru_method, rng=rng, dim=d, samples=samples,
                       seed=seed, shards=shards),
    )
    edges = np.linspace(-np.pi, np.pi, bins + 1)
    width = edges[1] - edges[0]
    for i, c in enumerate(phase_counts):
        table.rows.append(("phase", edges[i], edges[i + 1], int(c), c / (n_phases * width)))
    sedges = np.linspace(0.0, spacing_max, spacing_bins + 1)
    swidth = sedges[1] - sedges[0]
    for i, c in enumerate(spacing_counts):
        table.rows.append(("spacing", sedges[i], sedges[i + 1], int(c), c / (n_phases * swidth)))
    chi2, p = stats.chisquare(phase_counts)
    table.footer += [
        f"phase_chi2={float(chi2):.17g} dof={bins - 1} p_value={float(p):.17g}",
        f"spacing_fraction_below_{SPACING_CUT}={below / n_phases:.17g} "
        f"spacing_overflow={overflow} n_phases={n_phases}",
    ]
    if out is not None:
        write_table(table, out)
    return table


# -- PPT probability --------------------------------------------------------

def _ppt_shard(rng_id, seed, d_b, n, method):
    source = seed_source(rng_id, seed)
    d = 2 * d_b
    count = 0
    done = 0
    while done < n:
        m = min(_CHUNK, n - done)
        rho = np.array([sample_rdm(source, d, method) for _ in range(m)])
        ok, _ = is_ppt(rho, 2, d_b)
        count += int(np.count_nonzero(ok))
        done += m
    return count, n


def fit_exponential(d, fraction) -> tuple[float, float] | None:
    """Least-squares fit of ``log p = log(alpha) - beta * d`` over non-zero points."""
    d = np.asarray(d, dtype=float)
    p = np.asarray(fraction, dtype=float)
    keep = p > 0.0
    if np.count_nonzero(keep) < 2:
        return None
    slope, intercept = np.polyfit(d[keep], np.log(p[keep]), 1)
    return float(np.exp(intercept)), float(-slope)


def run_ppt_exp(
    d_b_list: Sequence[int],
    samples: int,
    rdm_method: str = "std",
    seed: int | None = None,
    *,
    rng: str = "mt",
    shards: int = 1,
    jobs: int = 1,
    out=None,
) -> Table:
    """Fraction of PPT states on ``2 x d_b`` for each ``d_b``."""
    seed = _require_seed(seed)
    if rdm_method not in RDM_METHODS:
        raise UsageError(f"unknown rdm method {rdm_method!r}; valid: {', '.join(RDM_METHODS)}")
    if samples < 1000:
        raise UsageError("ppt experiment needs samples >= 1000")
    table = Table(
        columns=["d", "d_b", "ppt_fraction", "se", "samples"],
        header=_banner("ppt", method=rdm_method, rng=rng, d_a=2,
                       d_b=",".join(map(str, d_b_list)), samples=samples, seed=seed,
                       shards=shards),
    )
    for d_b in d_b_list:
        d = 2 * d_b
        args = [(rng, derive_seed(seed, d, k), d_b, n, rdm_method)
                for k, n in enumerate(_shard_sizes(samples, shards))]
        parts = _run_shards(_ppt_shard, args, jobs)
        count = sum(p[0] for p in parts)
        f = count / samples
        table.rows.append((d, d_b, f, math.sqrt(f * (1.0 - f) / samples), samples))
    fit = fit_exponential(table.column("d"), table.column("ppt_fraction"))
    if fit is None:
        table.footer.append("fit p=alpha*exp(-beta*d): unavailable (fewer than 2 non-zero points)")
    else:
        table.footer.append(f"fit p=alpha*exp(-beta*d): alpha={fit[0]:.17g} beta={fit[1]:.17g}")
    if out is not None:
        write_table(table, out)
    return table


# -- coherence ----------------------------------------------------------------

def _coherence_shard(rng_id, seed, d, n, method, diagonal_only):
    source = seed_source(rng_id, seed)
    s_l1 = s_re = 0.0
    done = 0
    while done < n:
        m = min(_CHUNK, n - done)
        rho = np.array([sample_rdm(source, d, method) for _ in range(m)])
        if diagonal_only:
            rho = rho * np.eye(d)
        s_l1 += float(np.sum(coherence_l1(rho)))
        s_re += float(np.sum(coherence_re(rho)))
        done += m
    return s_l1, s_re


def run_coherence_exp(
    dims: Sequence[int],
    samples: int,
    rdm_method: str = "std",
    seed: int | None = None,
    *,
    rng: str = "mt",
    shards: int = 1,
    jobs: int = 1,
    diagonal_only: bool = False,
    out=None,
) -> Table:
    """Average L1 coherence (over ``log2 d``) and relative-entropy coherence.

    ``diagonal_only`` erases the off-diagonal part of every sample before
    measuring; both averages are then zero.
    """
    seed = _require_seed(seed)
    if rdm_method not in RDM_METHODS:
        raise UsageError(f"unknown rdm method {rdm_method!r}; valid: {', '.join(RDM_METHODS)}")
    if samples < 1000:
        raise UsageError("coherence experiment needs samples >= 1000")
    if min(dims) < 2:
        raise UsageError("coherence experiment needs d >= 2 (normalized by log2 d)")
    table = Table(
        columns=["d", "cl1_over_log2d", "cre", "samples"],
        header=_banner("coherence", method=rdm_method, rng=rng, dims=",".join(map(str, dims)),
                       samples=samples, seed=seed, shards=shards),
    )
    for d in dims:
        args = [(rng, derive_seed(seed, d, k), d, n, rdm_method, diagonal_only)
                for k, n in enumerate(_shard_sizes(samples, shards))]
        parts = _run_shards(_coherence_shard, args, jobs)
        l1 = sum(p[0] for p in parts) / samples
        cre = sum(p[1] for p in parts) / samples
        table.rows.append((d, l1 / math.log2(d), cre, samples))
    if out is not None:
        write_table(table, out)
    return table


def _ppt_from_cfg(cfg: ExperimentConfig) -> Table:
    if any(d % 2 for d in cfg.dims):
        raise UsageError("ppt experiment takes even total dimensions d = 2 * d_b")
    return run_ppt_exp([d // 2 for d in cfg.dims], cfg.samples, cfg.method, cfg.seed,
                       rng=cfg.rng, shards=cfg.shards, jobs=cfg.jobs, out=cfg.out)


EXPERIMENTS = {
    "fidelity": ("rsv", lambda c: run_fidelity_exp(
        c.dims, c.samples, c.method, c.seed, rng=c.rng, shards=c.shards, jobs=c.jobs,
        out=c.out)),
    "eigenphase": ("ru", lambda c: run_eigenphase_exp(
        c.dim, c.samples, c.method, c.seed, rng=c.rng, bins=c.bins, shards=c.shards,
        jobs=c.jobs, out=c.out)),
    "ppt": ("rdm", _ppt_from_cfg),
    "coherence": ("rdm", lambda c: run_coherence_exp(
        c.dims, c.samples, c.method, c.seed, rng=c.rng, shards=c.shards, jobs=c.jobs,
        out=c.out)),
}
