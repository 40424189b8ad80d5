"""Wavelet leaders and leader-based pointwise regularity estimates.

The leader of a dyadic cell is the supremum of |c| over the cell, its two
same-scale neighbours per axis, and everything finer underneath them (the
3-lambda neighbourhood).  Computation is the usual bottom-up recursion:
per-cell subtree suprema first, then the 3^d neighbourhood max at each
level.  Cells whose neighbourhood touches a masked coefficient or leaves
the domain are masked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dwt import CoefficientPyramid
from .errors import DegenerateLeaderError, InvalidArgumentError
from .regression import wls_line


@dataclass(frozen=True)
class LeaderLevel:
    j: int
    values: np.ndarray
    valid: np.ndarray

    @property
    def n_valid(self) -> int:
        return int(self.valid.sum())

    def atoms(self) -> np.ndarray:
        return self.values[self.valid]


@dataclass(frozen=True)
class LeaderPyramid:
    levels: tuple
    source: CoefficientPyramid
    finest_level: int
    dimension: int

    @property
    def n_levels(self) -> int:
        return self.finest_level + len(self.levels) - 1

    def level(self, j: int) -> LeaderLevel:
        if not self.finest_level <= j <= self.n_levels:
            raise InvalidArgumentError(
                f"leader level {j} not available ({self.finest_level}..{self.n_levels})"
            )
        return self.levels[j - self.finest_level]

    def n_atoms(self, j: int) -> int:
        return self.level(j).n_valid


def _child_and(mask_prev: np.ndarray, shape) -> np.ndarray:
    """All-children-valid mask, 1D or 2D."""
    if mask_prev.ndim == 1:
        m = shape[0]
        return mask_prev[0 : 2 * m : 2] & mask_prev[1 : 2 * m : 2]
    r, c = shape
    return (
        mask_prev[0 : 2 * r : 2, 0 : 2 * c : 2]
        & mask_prev[1 : 2 * r : 2, 0 : 2 * c : 2]
        & mask_prev[0 : 2 * r : 2, 1 : 2 * c : 2]
        & mask_prev[1 : 2 * r : 2, 1 : 2 * c : 2]
    )


def _neighbourhood_and(mask: np.ndarray) -> np.ndarray:
    """3^d neighbourhood all-valid; out-of-domain neighbours count as masked."""
    if mask.ndim == 1:
        padded = np.zeros(mask.shape[0] + 2, dtype=bool)
        padded[1:-1] = mask
        return padded[:-2] & padded[1:-1] & padded[2:]
    r, c = mask.shape
    padded = np.zeros((r + 2, c + 2), dtype=bool)
    padded[1:-1, 1:-1] = mask
    out = np.ones((r, c), dtype=bool)
    for di in range(3):
        for dj in range(3):
            out &= padded[di : di + r, dj : dj + c]
    return out


def compute_leaders(pyramid: CoefficientPyramid, finest_level: int = 1) -> LeaderPyramid:
    """Leaders for every level from ``finest_level`` to the pyramid top.

    The caller is responsible for the h_min > 0 prerequisite; it is not
    checked here.
    """
    if pyramid.n_levels - finest_level + 1 < 2:
        raise InvalidArgumentError("leaders need a pyramid with at least 2 levels")
    if finest_level < 1:
        raise InvalidArgumentError("finest_level must be >= 1")
    kernel = _kernels.leader_level_1d if pyramid.dimension == 1 else _kernels.leader_level_2d
    sv = None
    sv_valid = None
    levels = []
    for j in range(finest_level, pyramid.n_levels + 1):
        lv = pyramid.level(j)
        bm = lv.band_max()
        sv, lead = kernel(bm, sv)
        if sv_valid is None:
            sv_valid = lv.valid.copy()
        else:
            sv_valid = lv.valid & _child_and(sv_valid, bm.shape)
        lead_valid = _neighbourhood_and(sv_valid)
        levels.append(LeaderLevel(j=j, values=lead, valid=lead_valid))
    return LeaderPyramid(
        levels=tuple(levels),
        source=pyramid,
        finest_level=finest_level,
        dimension=pyramid.dimension,
    )


def pointwise_holder_estimate(leaders: LeaderPyramid, x0, j_range) -> float:
    """Regression slope of log2 d_{lambda_j(x0)} against j over j_range.

    Estimates the Holder exponent at x0 (given as a fraction of the domain,
    in [0,1) per axis).  The true exponent is a liminf; a finite-scale
    regression cannot distinguish liminf from lim, so the slope is reported
    as-is.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if x0.shape[0] != leaders.dimension:
        raise InvalidArgumentError("x0 dimensionality does not match the pyramid")
    if np.any(x0 < 0) or np.any(x0 >= 1):
        raise InvalidArgumentError("x0 must lie in [0,1) per axis")
    j1, j2 = j_range
    if j1 < leaders.finest_level or j2 > leaders.n_levels or j1 >= j2:
        raise InvalidArgumentError(f"j_range {j_range} outside available levels")
    xs, ys = [], []
    for j in range(j1, j2 + 1):
        lv = leaders.level(j)
        shape = lv.values.shape
        idx = tuple(int(x0[ax] * shape[ax]) for ax in range(leaders.dimension))
        if not lv.valid[idx]:
            raise InvalidArgumentError(f"x0 falls on a masked position at level {j}")
        val = lv.values[idx]
        if val == 0.0:
            raise DegenerateLeaderError(f"zero leader along x0 at level {j}")
        xs.append(j)
        ys.append(np.log2(val))
    slope, _ = wls_line(np.array(xs), np.array(ys), np.ones(len(xs)))
    return slope
