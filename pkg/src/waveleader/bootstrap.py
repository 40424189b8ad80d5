"""Non-parametric hierarchical block bootstrap for scaling estimates.

Blocks are defined on the finest-scale position axis; a resampled block
drags its proportional ancestor range at every coarser level, preserving
the cross-scale dependence that leaders encode.  Per-block moment partial
sums make each replicate's full re-estimation a single matrix product, so
replicates are exact re-runs of the estimator on the resampled multiset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dwt import CoefficientPyramid
from .errors import InsufficientDataError, InvalidArgumentError
from .leaders import LeaderPyramid
from .regression import RegressionConfig
from .scaling import (
    ScalingEstimate,
    estimate_hmin,
    estimate_log_cumulants,
    fit_scaling_function,
    structure_functions,
)
from .synth import make_rng


@dataclass(frozen=True)
class BootstrapConfig:
    resamples: int = 199
    block_length: int | None = None  # finest-scale atoms; default 2 * filter support
    ci_level: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if self.resamples < 39:
            raise InvalidArgumentError("need at least 39 resamples")
        if self.block_length is not None and self.block_length < 1:
            raise InvalidArgumentError("block_length must be >= 1")
        if not 0.0 < self.ci_level < 1.0:
            raise InvalidArgumentError("ci_level must be in (0,1)")


@dataclass(frozen=True)
class CI:
    lo: object
    hi: object
    level: float
    n_resamples: int


def _weighted_slopes(x: np.ndarray, ys: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Slope along the last axis with per-row weights (broadcastable)."""
    sw = w.sum(axis=-1, keepdims=True)
    xm = (w * x).sum(axis=-1, keepdims=True) / sw
    dx = x - xm
    sxx = (w * dx**2).sum(axis=-1)
    ym = (w * ys).sum(axis=-1, keepdims=True) / sw
    return ((ys - ym) * w * dx).sum(axis=-1) / sxx


def _k_stats_vec(logs: np.ndarray, n: np.ndarray, order: int) -> np.ndarray:
    """k-statistics (..., order) from stacked log power sums (..., 4)."""
    s1, s2, s3, s4 = (logs[..., i] for i in range(4))
    m1 = s1 / n
    m2 = s2 / n - m1**2
    m3 = s3 / n - 3 * m1 * s2 / n + 2 * m1**3
    m4 = s4 / n - 4 * m1 * s3 / n + 6 * m1**2 * s2 / n - 3 * m1**4
    out = [m1]
    if order >= 2:
        out.append(m2 * n / (n - 1))
    if order >= 3:
        out.append(m3 * n**2 / ((n - 1) * (n - 2)))
    if order >= 4:
        out.append(
            n**2 * ((n + 1) * m4 - 3 * (n - 1) * m2**2) / ((n - 1) * (n - 2) * (n - 3))
        )
    return np.stack(out, axis=-2)  # (..., order, J)


def _level_atoms(data, j: int) -> np.ndarray:
    if isinstance(data, CoefficientPyramid):
        return data.level(j).abs_atoms()
    return data.level(j).atoms()


def bootstrap_ci(
    data,
    regression: RegressionConfig,
    config: BootstrapConfig,
    p_grid=None,
    cumulant_order: int = 3,
    h_grid=None,
) -> ScalingEstimate:
    """Percentile confidence intervals from hierarchical block resampling.

    For a CoefficientPyramid the returned estimate carries eta(p) and
    h_min with CIs; for a LeaderPyramid it carries zeta(p), log-cumulants
    and (when h_grid is given) the Legendre spectrum values.  The point
    estimates are the standard full-sample estimators.
    """
    is_leaders = isinstance(data, LeaderPyramid)
    if not is_leaders and not isinstance(data, CoefficientPyramid):
        raise InvalidArgumentError("data must be a CoefficientPyramid or LeaderPyramid")
    if p_grid is None:
        p_grid = np.arange(-4.0, 4.01, 0.5) if is_leaders else np.arange(0.0, 4.01, 0.5)
    p_grid = np.asarray(p_grid, dtype=float)

    finest = data.finest_level if is_leaders else 1
    n_finest = data.n_atoms(finest)
    block = config.block_length
    if block is None:
        filt = (data.source if is_leaders else data).filter
        block = 2 * filt.support
    n_blocks = n_finest // block
    if n_blocks < 2:
        raise InsufficientDataError(
            f"{n_finest} finest-scale atoms cannot form 2 blocks of {block}"
        )

    levels = [
        j
        for j in range(max(regression.j1, finest), min(regression.j2, data.n_levels) + 1)
        if data.n_atoms(j) >= max(regression.min_atoms, 2)
    ]
    if len(levels) < 3:
        raise InsufficientDataError("fewer than 3 usable levels for bootstrap re-estimation")

    # per-level, per-block partial statistics
    part_psums, part_logs, part_counts, part_zeros, part_maxs = [], [], [], [], []
    for j in levels:
        atoms = _level_atoms(data, j)
        edges = (np.arange(n_blocks + 1) * atoms.size) // n_blocks
        ps, ls, cn, zr, mx = _kernels.block_power_stats(atoms, edges, p_grid)
        part_psums.append(ps)
        part_logs.append(ls)
        part_counts.append(cn.astype(float))
        part_zeros.append(zr.astype(float))
        part_maxs.append(mx)

    b = config.resamples
    rng = make_rng(config.seed, stream=0xB007)
    draws = rng.integers(0, n_blocks, size=(b, n_blocks))
    occ = np.zeros((b, n_blocks))
    np.add.at(occ, (np.repeat(np.arange(b), n_blocks), draws.ravel()), 1.0)

    nj = len(levels)
    rep_log2 = np.empty((b, len(p_grid), nj))
    rep_logs = np.empty((b, 4, nj))
    rep_counts = np.empty((b, nj))
    rep_nonzero = np.empty((b, nj))
    rep_sup = np.empty((b, nj))
    with np.errstate(divide="ignore", invalid="ignore"):
        for col, j in enumerate(levels):
            psums = occ @ part_psums[col]          # (B, P)
            logs = occ @ part_logs[col]            # (B, 4)
            counts = occ @ part_counts[col]        # (B,)
            zeros = occ @ part_zeros[col]
            counts[counts == 0] = np.nan
            nonzero = counts - zeros
            nonzero[nonzero == 0] = np.nan
            for i, p in enumerate(p_grid):
                if p == 0.0:
                    rep_log2[:, i, col] = 0.0
                elif p > 0:
                    rep_log2[:, i, col] = np.log2(psums[:, i] / counts)
                else:
                    rep_log2[:, i, col] = np.log2(psums[:, i] / nonzero)
            rep_logs[:, :, col] = logs
            rep_counts[:, col] = counts
            rep_nonzero[:, col] = nonzero
            rep_sup[:, col] = np.max(part_maxs[col][draws], axis=1)

    x = np.array(levels, dtype=float)
    if regression.weighting == "count":
        w = np.where(np.isfinite(rep_counts), rep_counts, 0.0)
    else:
        w = np.ones_like(rep_counts)

    lo_q, hi_q = (1 - config.ci_level) / 2, 1 - (1 - config.ci_level) / 2

    def pctl(stat):
        return (
            np.nanquantile(stat, lo_q, axis=0),
            np.nanquantile(stat, hi_q, axis=0),
        )

    ci: dict = {}
    rep_curve = _weighted_slopes(x, rep_log2, w[:, None, :])  # (B, P)
    lo, hi = pctl(rep_curve)
    curve_key = "zeta" if is_leaders else "eta"
    ci[curve_key] = CI(lo=lo, hi=hi, level=config.ci_level, n_resamples=b)

    estimate_kwargs: dict = {}
    if is_leaders:
        with np.errstate(invalid="ignore", divide="ignore"):
            kst = _k_stats_vec(np.moveaxis(rep_logs, 1, -1), rep_nonzero, cumulant_order)
            rep_c = _weighted_slopes(x * math.log(2.0), kst, w[:, None, :])  # (B, M)
        for m in range(cumulant_order):
            lo, hi = pctl(rep_c[:, m])
            ci[f"c{m + 1}"] = CI(lo=float(lo), hi=float(hi), level=config.ci_level, n_resamples=b)
        if h_grid is not None:
            h_grid = np.asarray(h_grid, dtype=float)
            cand = (
                data.dimension
                + h_grid[None, :, None] * p_grid[None, None, :]
                - rep_curve[:, None, :]
            )
            rep_spec = cand.min(axis=2)
            lo, hi = pctl(rep_spec)
            ci["spectrum"] = CI(lo=lo, hi=hi, level=config.ci_level, n_resamples=b)
        table = structure_functions(data, "leaders", p_grid)
        est = fit_scaling_function(table, regression)
        cums = estimate_log_cumulants(data, cumulant_order, regression)
        estimate_kwargs = dict(cumulants=cums.c, cumulant_intercepts=cums.intercepts)
    else:
        rep_hmin = _weighted_slopes(x, np.log2(rep_sup), w)
        lo, hi = pctl(rep_hmin)
        ci["hmin"] = CI(lo=float(lo), hi=float(hi), level=config.ci_level, n_resamples=b)
        table = structure_functions(data, "coefficients", p_grid)
        est = fit_scaling_function(table, regression)
        estimate_kwargs = dict(hmin=estimate_hmin(data, regression))

    return est.merged(ci=ci, **estimate_kwargs)
