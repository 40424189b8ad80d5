"""Weighted log-log regression helpers used by every estimator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

WEIGHTINGS = ("uniform", "count")


@dataclass(frozen=True)
class RegressionConfig:
    """Scale range and weighting for log-log fits.

    j1/j2 are inclusive pyramid levels (level 1 is the finest scale, the
    physical scale of level j being 2^j samples).  ``count`` weights each
    level by its number of valid atoms n_j, ``uniform`` weights all levels
    equally.  Levels with fewer than ``min_atoms`` atoms are dropped before
    fitting.
    """

    j1: int
    j2: int
    weighting: str = "count"
    min_atoms: int = 8

    def __post_init__(self):
        if self.j1 >= self.j2:
            raise InvalidArgumentError(f"need j1 < j2, got ({self.j1}, {self.j2})")
        if self.j1 < 1:
            raise InvalidArgumentError("j1 must be >= 1")
        if self.weighting not in WEIGHTINGS:
            raise InvalidArgumentError(f"weighting must be one of {WEIGHTINGS}")
        if self.min_atoms < 1:
            raise InvalidArgumentError("min_atoms must be >= 1")

    def weights(self, counts: np.ndarray) -> np.ndarray:
        if self.weighting == "count":
            return np.asarray(counts, dtype=float)
        return np.ones(len(counts))


def wls_line(x: np.ndarray, y: np.ndarray, w: np.ndarray) -> tuple[float, float]:
    """Weighted least-squares line fit; returns (slope, intercept)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = np.asarray(w, dtype=float)
    sw = w.sum()
    xm = (w * x).sum() / sw
    ym = (w * y).sum() / sw
    sxx = (w * (x - xm) ** 2).sum()
    if sxx == 0.0:
        raise InvalidArgumentError("degenerate abscissa in regression")
    slope = (w * (x - xm) * (y - ym)).sum() / sxx
    return float(slope), float(ym - slope * xm)


def wls_slopes(x: np.ndarray, ys: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Vectorized slopes for many regressions sharing (x, w).

    ys has shape (..., len(x)); the slope is computed along the last axis.
    """
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    sw = w.sum()
    xm = (w * x).sum() / sw
    dx = x - xm
    sxx = (w * dx**2).sum()
    if sxx == 0.0:
        raise InvalidArgumentError("degenerate abscissa in regression")
    ym = (ys * w).sum(axis=-1, keepdims=True) / sw
    return ((ys - ym) * (w * dx)).sum(axis=-1) / sxx
