"""Structure functions, scaling-function fits, log-cumulants, Legendre spectra.

Statistics are tabulated per level j (finest j=1, physical scale 2**j
samples); every exponent is the weighted slope of the log2 statistic
against j.  Zero atoms contribute nothing to |.|^p sums: for p > 0 they
stay in the denominator (true mean over valid atoms), for p < 0 and for
log statistics they are excluded, with the exclusion fraction reported and
a level invalidated for negative p when it exceeds 10%.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .dwt import CoefficientPyramid, Signal, max_decomposition_level
from .errors import (
    DegenerateInputError,
    IncompleteReportError,
    InsufficientScalesError,
    InvalidArgumentError,
    NoRootError,
)
from .leaders import LeaderPyramid
from .regression import RegressionConfig, wls_line

SOURCES = ("coefficients", "leaders", "increments", "oscillations")
NEGP_EXCLUSION_LIMIT = 0.10


@dataclass(frozen=True)
class StructureFunctionTable:
    source: str
    p_grid: np.ndarray
    levels: np.ndarray            # retained levels, ascending
    log2_values: np.ndarray       # (len(p_grid), len(levels))
    n_atoms: np.ndarray           # valid atoms per level
    n_nonzero: np.ndarray
    excluded_fraction: np.ndarray
    negp_invalid: np.ndarray      # bool per level
    dropped: tuple                # ((level, reason), ...)
    dimension: int
    cumulants: np.ndarray | None = None   # (M, len(levels)) sample cumulants of ln|atom|

    def column(self, j: int) -> int:
        idx = np.nonzero(self.levels == j)[0]
        if idx.size == 0:
            raise InvalidArgumentError(f"level {j} not in table")
        return int(idx[0])


@dataclass(frozen=True)
class ScalingEstimate:
    """Fitted scaling quantities; slots are filled by the producing fit."""

    p_grid: np.ndarray
    dimension: int
    eta: np.ndarray | None = None
    zeta: np.ndarray | None = None
    oscillation: np.ndarray | None = None
    hmin: float | None = None
    cumulants: np.ndarray | None = None
    cumulant_intercepts: np.ndarray | None = None
    ci: dict = field(default_factory=dict)
    levels_used: tuple = ()

    def curve(self, kind: str) -> np.ndarray:
        val = getattr(self, kind)
        if val is None:
            raise IncompleteReportError(f"{kind} was not estimated")
        return val

    def value_at(self, kind: str, p: float) -> float:
        """Piecewise-linear interpolation of a fitted curve at p."""
        grid = self.p_grid
        vals = self.curve(kind)
        ok = np.isfinite(vals)
        if p < grid[ok].min() or p > grid[ok].max():
            raise InvalidArgumentError(f"p={p} outside fitted grid for {kind}")
        return float(np.interp(p, grid[ok], vals[ok]))

    def zeta_expansion(self, p) -> np.ndarray:
        """zeta(p) rebuilt from the log-cumulant expansion sum c_m p^m / m!."""
        if self.cumulants is None:
            raise IncompleteReportError("cumulants were not estimated")
        p = np.asarray(p, dtype=float)
        out = np.zeros_like(p)
        for m, cm in enumerate(self.cumulants, start=1):
            out += cm * p**m / math.factorial(m)
        return out

    def concavity_violation(self, kind: str) -> float:
        """Largest positive discrete second difference (0 means concave)."""
        vals = self.curve(kind)
        ok = np.isfinite(vals)
        x, y = self.p_grid[ok], vals[ok]
        if len(x) < 3:
            return 0.0
        second = np.diff(y, 2) / np.diff(x[:-1]) / np.diff(x[1:])
        return float(max(0.0, second.max()))

    def merged(self, **updates) -> "ScalingEstimate":
        return replace(self, **updates)


@dataclass(frozen=True)
class LegendreSpectrum:
    h: np.ndarray
    values: np.ndarray
    negative: np.ndarray          # True where L(h) < 0 (empty-set flag)
    h_min_support: float
    h_max_support: float
    argmax_h: float
    dimension: int
    decreasing_branch_available: bool


def increment_atoms(samples: np.ndarray, j: int, order: int = 1) -> np.ndarray:
    """|order-th difference| at lag 2**j samples (1D only)."""
    if samples.ndim != 1:
        raise InvalidArgumentError("increment source supports 1D signals only")
    lag = 2**j
    arr = samples
    for _ in range(order):
        if arr.shape[0] <= lag:
            return np.empty(0)
        arr = arr[lag:] - arr[:-lag]
    return np.abs(arr)


def oscillation_atoms(samples: np.ndarray, j: int, order: int = 1) -> np.ndarray:
    """sup - inf (or centered second-difference sup) over dyadic blocks of 2**j samples."""
    size = 2**j
    if samples.ndim == 1:
        nb = samples.shape[0] // size
        if nb == 0:
            return np.empty(0)
        blocks = samples[: nb * size].reshape(nb, size)
        if order == 1:
            return blocks.max(axis=1) - blocks.min(axis=1)
        if order == 2:
            out = np.zeros(nb)
            for s in range(1, (size - 1) // 2 + 1):
                if size - 2 * s <= 0:
                    break
                d2 = np.abs(blocks[:, :-2 * s] - 2.0 * blocks[:, s:-s] + blocks[:, 2 * s :])
                np.maximum(out, d2.max(axis=1), out=out)
            return out
        raise InvalidArgumentError("oscillation order must be 1 or 2")
    if order != 1:
        raise InvalidArgumentError("second-order oscillation is 1D only")
    r, c = samples.shape
    nr, nc = r // size, c // size
    if nr == 0 or nc == 0:
        return np.empty(0)
    blocks = samples[: nr * size, : nc * size].reshape(nr, size, nc, size)
    return (blocks.max(axis=(1, 3)) - blocks.min(axis=(1, 3))).ravel()


def _atoms_by_level(data, source, order_of_difference, oscillation_order, levels):
    if source == "coefficients":
        if not isinstance(data, CoefficientPyramid):
            raise InvalidArgumentError("coefficients source needs a CoefficientPyramid")
        avail = range(1, data.n_levels + 1)
        return data.dimension, [(j, data.level(j).abs_atoms()) for j in (levels or avail)]
    if source == "leaders":
        if not isinstance(data, LeaderPyramid):
            raise InvalidArgumentError("leaders source needs a LeaderPyramid")
        avail = range(data.finest_level, data.n_levels + 1)
        return data.dimension, [(j, data.level(j).atoms()) for j in (levels or avail)]
    if not isinstance(data, Signal):
        raise InvalidArgumentError(f"{source} source needs a Signal")
    samples = data.samples
    cap = max_decomposition_level(samples.shape)
    avail = levels or range(1, cap + 1)
    if source == "increments":
        return samples.ndim, [(j, increment_atoms(samples, j, order_of_difference)) for j in avail]
    return samples.ndim, [(j, oscillation_atoms(samples, j, oscillation_order)) for j in avail]


def structure_functions(
    data,
    source: str,
    p_grid,
    order_of_difference: int = 1,
    oscillation_order: int = 1,
    cumulant_order: int = 0,
    levels=None,
) -> StructureFunctionTable:
    """log2 of the per-level mean of |atom|^p, plus optional ln-atom cumulants.

    The mean over valid atoms is the finite-data surrogate of the dyadic
    2^{-dj} sum normalization (they differ by boundary-mask counts only).
    """
    if source not in SOURCES:
        raise InvalidArgumentError(f"source must be one of {SOURCES}")
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.size == 0:
        raise InvalidArgumentError("empty p grid")
    if np.any(p_grid < 0) and source in ("coefficients", "increments"):
        raise InvalidArgumentError(f"negative p is undefined for the {source} source")
    if order_of_difference < 1:
        raise InvalidArgumentError("order_of_difference must be >= 1")
    if not 0 <= cumulant_order <= 4:
        raise InvalidArgumentError("cumulant_order must be in 0..4")

    dimension, per_level = _atoms_by_level(
        data, source, order_of_difference, oscillation_order, levels
    )
    kept, dropped = [], []
    for j, atoms in per_level:
        psums, logsums, n_total, n_zero, _ = _kernels.power_stats(atoms, p_grid)
        n_nonzero = n_total - n_zero
        if n_total == 0:
            dropped.append((j, "empty"))
            continue
        if n_nonzero == 0:
            dropped.append((j, "all-zero"))
            continue
        vals = np.empty(len(p_grid))
        for i, p in enumerate(p_grid):
            if p == 0.0:
                vals[i] = 0.0
            elif p > 0:
                vals[i] = np.log2(psums[i] / n_total)
            else:
                vals[i] = np.log2(psums[i] / n_nonzero)
        cums = None
        if cumulant_order:
            cums = k_statistics(logsums, n_nonzero)[:cumulant_order]
        kept.append((j, vals, n_total, n_nonzero, cums))
    if not kept:
        raise DegenerateInputError("no level produced a usable statistic")

    levels_arr = np.array([k[0] for k in kept], dtype=int)
    log2_values = np.stack([k[1] for k in kept], axis=1)
    n_atoms = np.array([k[2] for k in kept], dtype=np.int64)
    n_nonzero = np.array([k[3] for k in kept], dtype=np.int64)
    excl = 1.0 - n_nonzero / n_atoms
    cumulants = None
    if cumulant_order:
        cumulants = np.stack([k[4] for k in kept], axis=1)
    return StructureFunctionTable(
        source=source,
        p_grid=p_grid,
        levels=levels_arr,
        log2_values=log2_values,
        n_atoms=n_atoms,
        n_nonzero=n_nonzero,
        excluded_fraction=excl,
        negp_invalid=excl > NEGP_EXCLUSION_LIMIT,
        dropped=tuple(dropped),
        dimension=dimension,
        cumulants=cumulants,
    )


def k_statistics(log_power_sums: np.ndarray, n: int) -> np.ndarray:
    """Unbiased k-statistics k1..k4 from the first four power sums."""
    s1, s2, s3, s4 = log_power_sums
    n = float(n)
    m1 = s1 / n
    m2 = s2 / n - m1**2
    m3 = s3 / n - 3 * m1 * s2 / n + 2 * m1**3
    m4 = s4 / n - 4 * m1 * s3 / n + 6 * m1**2 * s2 / n - 3 * m1**4
    out = np.full(4, np.nan)
    out[0] = m1
    if n > 1:
        out[1] = m2 * n / (n - 1)
    if n > 2:
        out[2] = m3 * n**2 / ((n - 1) * (n - 2))
    if n > 3:
        out[3] = (n**2 * ((n + 1) * m4 - 3 * (n - 1) * m2**2)) / ((n - 1) * (n - 2) * (n - 3))
    return out


_KIND_BY_SOURCE = {
    "coefficients": "eta",
    "increments": "eta",
    "leaders": "zeta",
    "oscillations": "oscillation",
}


def _select_levels(table: StructureFunctionTable, config: RegressionConfig):
    sel = (
        (table.levels >= config.j1)
        & (table.levels <= config.j2)
        & (table.n_atoms >= config.min_atoms)
    )
    return np.nonzero(sel)[0]


def fit_scaling_function(table: StructureFunctionTable, config: RegressionConfig) -> ScalingEstimate:
    """Scaling function: per p, the weighted LSQ slope of log2 S(p, j) vs j."""
    cols = _select_levels(table, config)
    if cols.size < 3:
        raise InsufficientScalesError(
            f"only {cols.size} usable levels in [{config.j1}, {config.j2}]"
        )
    values = np.full(len(table.p_grid), np.nan)
    for i, p in enumerate(table.p_grid):
        use = cols
        if p < 0:
            use = use[~table.negp_invalid[use]]
        y = table.log2_values[i, use]
        finite = np.isfinite(y)
        use, y = use[finite], y[finite]
        if use.size < 3:
            continue
        w = config.weights(table.n_atoms[use])
        slope, _ = wls_line(table.levels[use].astype(float), y, w)
        values[i] = slope
    kind = _KIND_BY_SOURCE[table.source]
    return ScalingEstimate(
        p_grid=table.p_grid.copy(),
        dimension=table.dimension,
        levels_used=tuple(int(j) for j in table.levels[cols]),
        **{kind: values},
    )


def estimate_hmin(pyramid: CoefficientPyramid, config: RegressionConfig) -> float:
    """Uniform regularity exponent: slope of log2 sup_k |c_{j,k}| against j."""
    if min(config.j2, pyramid.n_levels) - config.j1 + 1 < 3:
        raise InsufficientScalesError("h_min needs at least 3 levels in range")
    xs, ys, counts = [], [], []
    for j in range(config.j1, min(config.j2, pyramid.n_levels) + 1):
        lv = pyramid.level(j)
        if lv.n_valid == 0:
            continue
        sup = float(lv.abs_atoms().max())
        if sup == 0.0:
            continue
        xs.append(j)
        ys.append(np.log2(sup))
        counts.append(pyramid.n_atoms(j))
    if len(xs) < 2:
        raise DegenerateInputError("all levels dropped while estimating h_min")
    slope, _ = wls_line(np.array(xs, float), np.array(ys), config.weights(np.array(counts)))
    return slope


@dataclass(frozen=True)
class LogCumulants:
    c: np.ndarray
    intercepts: np.ndarray
    levels_used: tuple

    def zeta_expansion(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        out = np.zeros_like(p)
        for m, cm in enumerate(self.c, start=1):
            out += cm * p**m / math.factorial(m)
        return out


def estimate_log_cumulants(
    leaders: LeaderPyramid, order: int, config: RegressionConfig
) -> LogCumulants:
    """Log-cumulants c_1..c_M from per-level k-statistics of ln d.

    Natural logs are used throughout and the slope against j is divided by
    ln 2, i.e. c_m is the slope of C_m(j) against ln(scale).  Zero leaders
    are excluded from the log statistics; a level keeps its row only when
    at least order+1 positive leaders remain.
    """
    if not 1 <= order <= 4:
        raise InvalidArgumentError("cumulant order must be in 1..4 (variance explodes beyond)")
    xs, rows, counts = [], [], []
    for j in range(config.j1, min(config.j2, leaders.n_levels) + 1):
        if j < leaders.finest_level:
            continue
        atoms = leaders.level(j).atoms()
        _, logsums, n_total, n_zero, _ = _kernels.power_stats(atoms, np.empty(0))
        n = n_total - n_zero
        if n < order + 1:
            continue
        rows.append(k_statistics(logsums, n)[:order])
        xs.append(j)
        counts.append(n)
    if len(xs) < 3:
        raise InsufficientScalesError("log-cumulants need at least 3 usable levels")
    xs = np.array(xs, dtype=float)
    rows = np.stack(rows, axis=1)  # (order, J)
    w = config.weights(np.array(counts))
    c = np.empty(order)
    icpt = np.empty(order)
    ln2 = math.log(2.0)
    for m in range(order):
        slope, intercept = wls_line(xs * ln2, rows[m], w)
        c[m] = slope
        icpt[m] = intercept
    return LogCumulants(c=c, intercepts=icpt, levels_used=tuple(int(j) for j in xs))


def legendre_spectrum(zeta: ScalingEstimate, h_grid) -> LegendreSpectrum:
    """Discrete Legendre transform L(h) = min_p (d + h p - zeta(p)).

    The inf runs over the estimate's p grid (no smoothing, no parametric
    fit); ties break toward smaller |p|.  Values below zero are kept but
    flagged (dim(empty) = -inf convention).
    """
    vals = zeta.curve("zeta") if zeta.zeta is not None else zeta.curve("eta")
    h_grid = np.asarray(h_grid, dtype=float)
    finite = np.isfinite(vals)
    p = zeta.p_grid[finite]
    zv = vals[finite]
    if p.size < 2:
        raise InvalidArgumentError("zeta estimate too sparse for a Legendre transform")
    decreasing = bool((p < 0).any())
    order = np.argsort(np.abs(p), kind="stable")
    p_o, z_o = p[order], zv[order]
    cand = zeta.dimension + np.outer(h_grid, p_o) - z_o[None, :]
    idx = np.argmin(cand, axis=1)
    values = cand[np.arange(len(h_grid)), idx]
    negative = values < 0
    support = h_grid[~negative]
    h_lo = float(support.min()) if support.size else float("nan")
    h_hi = float(support.max()) if support.size else float("nan")
    argmax_h = float(h_grid[np.argmax(values)])
    return LegendreSpectrum(
        h=h_grid,
        values=values,
        negative=negative,
        h_min_support=h_lo,
        h_max_support=h_hi,
        argmax_h=argmax_h,
        dimension=zeta.dimension,
        decreasing_branch_available=decreasing,
    )


VERDICTS = ("yes", "no", "inconclusive")


@dataclass(frozen=True)
class MembershipReport:
    in_BV: str
    in_L2: str
    bounded_quadratic_variation: str
    locally_bounded: str

    def as_dict(self) -> dict:
        return {
            "in_BV": self.in_BV,
            "in_L2": self.in_L2,
            "bounded_quadratic_variation": self.bounded_quadratic_variation,
            "locally_bounded": self.locally_bounded,
        }


def _verdict(lo: float, hi: float, threshold: float) -> str:
    if lo > threshold:
        return "yes"
    if hi < threshold:
        return "no"
    return "inconclusive"


def _ci_at(est: ScalingEstimate, kind: str, p: float):
    point = est.value_at(kind, p)
    band = est.ci.get(kind)
    if band is None:
        return point, point
    lo = float(np.interp(p, est.p_grid, band.lo))
    hi = float(np.interp(p, est.p_grid, band.hi))
    return lo, hi


def membership_tests(est: ScalingEstimate) -> MembershipReport:
    """Function-space verdicts from strict threshold inequalities.

    in_BV: eta(1) vs 1;  in_L2: eta(2) vs 0;  bounded quadratic variation:
    zeta(2) vs d (only meaningful when h_min > 0);  locally bounded:
    h_min vs 0.  Confidence intervals, when attached, make the verdicts
    three-valued.
    """
    missing = [q for q in ("eta", "hmin") if getattr(est, q) is None]
    if est.zeta is None:
        missing.append("zeta")
    if missing:
        raise IncompleteReportError(f"membership tests need {missing} estimated")
    lo, hi = _ci_at(est, "eta", 1.0)
    in_bv = _verdict(lo, hi, 1.0)
    lo, hi = _ci_at(est, "eta", 2.0)
    in_l2 = _verdict(lo, hi, 0.0)
    hband = est.ci.get("hmin")
    h_lo, h_hi = (hband.lo, hband.hi) if hband is not None else (est.hmin, est.hmin)
    locally_bounded = _verdict(float(h_lo), float(h_hi), 0.0)
    if locally_bounded == "yes":
        lo, hi = _ci_at(est, "zeta", 2.0)
        qv = _verdict(lo, hi, float(est.dimension))
    else:
        qv = "inconclusive"
    return MembershipReport(
        in_BV=in_bv,
        in_L2=in_l2,
        bounded_quadratic_variation=qv,
        locally_bounded=locally_bounded,
    )


@dataclass(frozen=True)
class SubordinationEstimate:
    H: float
    p_root: float
    bracket_width: float


def infer_subordination_H(eta: ScalingEstimate, tol: float = 1e-6) -> SubordinationEstimate:
    """Solve eta(1/H) = 1 for H by bisection on the interpolated eta.

    Requires the fitted grid to bracket a sign change of eta(p) - 1 on
    p > 0; eta is non-decreasing there, so the root is unique up to grid
    resolution.
    """
    vals = eta.curve("eta")
    ok = np.isfinite(vals) & (eta.p_grid > 0)
    p, y = eta.p_grid[ok], vals[ok] - 1.0
    if p.size < 2:
        raise NoRootError("eta estimated on fewer than 2 positive p values")
    crossings = np.nonzero(np.diff(np.signbit(y)))[0]
    exact = np.nonzero(y == 0.0)[0]
    if exact.size:
        pr = float(p[exact[0]])
        return SubordinationEstimate(H=1.0 / pr, p_root=pr, bracket_width=0.0)
    if crossings.size == 0:
        raise NoRootError("eta(p) - 1 shows no sign change on the positive grid")
    i = int(crossings[0])
    a, b = float(p[i]), float(p[i + 1])
    bracket = abs(1.0 / a - 1.0 / b)
    f = lambda x: np.interp(x, p, y)
    fa = f(a)
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            a = b = mid
            break
        if (fa < 0) == (fm < 0):
            a, fa = mid, fm
        else:
            b = mid
    pr = 0.5 * (a + b)
    return SubordinationEstimate(H=1.0 / pr, p_root=pr, bracket_width=bracket)
