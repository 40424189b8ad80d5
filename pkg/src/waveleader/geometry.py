"""Box-counting dimension, Von Koch rasterizer, graph dimension from oscillations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dwt import Signal, design_daubechies_filter, dwt_forward, max_decomposition_level
from .errors import InsufficientDataError, InvalidArgumentError
from .leaders import compute_leaders
from .regression import RegressionConfig, wls_line
from .scaling import fit_scaling_function, structure_functions


@dataclass(frozen=True)
class BinaryGrid:
    """Occupancy grid, 2**resolution cells per axis."""

    occupancy: np.ndarray
    resolution: int

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        object.__setattr__(self, "occupancy", occ)
        size = 2**self.resolution
        if occ.shape != (size, size):
            raise InvalidArgumentError(
                f"occupancy must be {size}x{size} for resolution {self.resolution}"
            )
        if not occ.any():
            raise InvalidArgumentError("grid has no occupied cell")


def box_counts(grid: BinaryGrid, sizes_log2) -> np.ndarray:
    """Number of occupied dyadic boxes of side 2**j cells, per requested j."""
    out = []
    for j in sizes_log2:
        if not 0 <= j <= grid.resolution:
            raise InvalidArgumentError(f"box size 2^{j} outside the grid")
        s = 2**j
        m = grid.occupancy.shape[0] // s
        blocks = grid.occupancy[: m * s, : m * s].reshape(m, s, m, s)
        out.append(int(blocks.any(axis=(1, 3)).sum()))
    return np.array(out, dtype=np.int64)


def box_dimension(grid: BinaryGrid, config: RegressionConfig) -> float:
    """Box dimension: -slope of log2 N(2^j boxes) against j over the config range."""
    if grid.occupancy.sum() < 2:
        raise InsufficientDataError("a single occupied cell has no box scaling")
    js = np.arange(config.j1, min(config.j2, grid.resolution) + 1)
    counts = box_counts(grid, js)
    usable = counts >= 2
    if usable.sum() < 3:
        raise InsufficientDataError("need at least 3 dyadic box sizes with N >= 2")
    js, counts = js[usable], counts[usable]
    slope, _ = wls_line(js.astype(float), np.log2(counts), config.weights(counts))
    return -slope


def koch_snowflake_segments(depth: int) -> np.ndarray:
    """Closed polyline of the depth-iterate snowflake, as complex vertices.

    Built on a counterclockwise equilateral triangle; each iteration replaces
    every edge by 4, so the polyline has 3 * 4**depth segments.
    """
    if depth < 0:
        raise InvalidArgumentError("depth must be >= 0")
    pts = np.array([0.0 + 0.0j, 1.0 + 0.0j, 0.5 + 1j * np.sqrt(3) / 2])
    rot = np.exp(-1j * np.pi / 3)  # outward bump for a ccw polygon
    for _ in range(depth):
        a = pts
        b = np.roll(pts, -1)
        third = (b - a) / 3.0
        new = np.empty(4 * len(pts), dtype=complex)
        new[0::4] = a
        new[1::4] = a + third
        new[2::4] = a + third + third * rot
        new[3::4] = a + 2 * third
        pts = new
    return pts


def rasterize_von_koch(depth: int, resolution: int, fill: str = "boundary") -> BinaryGrid:
    """Deterministic raster of the Koch snowflake on a 2**resolution grid."""
    if fill not in ("boundary", "filled"):
        raise InvalidArgumentError("fill must be 'boundary' or 'filled'")
    if depth > resolution - 2:
        raise InvalidArgumentError(f"depth {depth} too deep for resolution {resolution}")
    size = 2**resolution
    pts = koch_snowflake_segments(depth)
    lo = complex(pts.real.min(), pts.imag.min())
    hi = complex(pts.real.max(), pts.imag.max())
    span = max(hi.real - lo.real, hi.imag - lo.imag)
    margin = 0.03
    scale = size * (1 - 2 * margin) / span
    shift = complex(size * margin, size * margin)
    pix = (pts - lo) * scale + shift

    occ = np.zeros((size, size), dtype=bool)
    a = pix
    b = np.roll(pix, -1)
    lengths = np.abs(b - a)
    for z1, z2, length in zip(a, b, lengths):
        steps = max(2, int(np.ceil(length / 0.25)) + 1)
        t = np.linspace(0.0, 1.0, steps)
        xs = np.clip((z1.real + t * (z2.real - z1.real)).astype(int), 0, size - 1)
        ys = np.clip((z1.imag + t * (z2.imag - z1.imag)).astype(int), 0, size - 1)
        occ[ys, xs] = True
    if fill == "filled":
        occ |= ~_exterior(occ)
    return BinaryGrid(occupancy=occ, resolution=resolution)


def _exterior(boundary: np.ndarray) -> np.ndarray:
    """Cells 4-connected to the border without crossing the boundary (span fill)."""
    rows, cols = boundary.shape
    ext = np.zeros_like(boundary)
    stack = [(r, c) for c in range(cols) for r in (0, rows - 1) if not boundary[r, c]]
    stack += [(r, c) for r in range(rows) for c in (0, cols - 1) if not boundary[r, c]]
    while stack:
        r, c = stack.pop()
        if ext[r, c] or boundary[r, c]:
            continue
        c0 = c
        while c0 > 0 and not boundary[r, c0 - 1] and not ext[r, c0 - 1]:
            c0 -= 1
        c1 = c
        while c1 < cols - 1 and not boundary[r, c1 + 1] and not ext[r, c1 + 1]:
            c1 += 1
        ext[r, c0 : c1 + 1] = True
        for rn in (r - 1, r + 1):
            if 0 <= rn < rows:
                run = ~boundary[rn, c0 : c1 + 1] & ~ext[rn, c0 : c1 + 1]
                for off in np.nonzero(run)[0]:
                    stack.append((rn, c0 + int(off)))
    return ext


@dataclass(frozen=True)
class GraphDimensionResult:
    oscillation_dim: float
    leader_dim: float
    o1: float
    zeta1: float
    degenerate: bool = False
    second_order_o1: float | None = None


def graph_dimension_from_oscillation(
    signal: Signal,
    config: RegressionConfig,
    filter_order: int = 3,
) -> GraphDimensionResult:
    """Graph box dimension max(d, d+1 - O(1)), with the leader-based variant.

    When the first-order O(1) saturates at >= 1 (smooth data) the
    second-order oscillation exponent is also computed and reported; the
    dimension formula itself always uses the first-order O(1).
    """
    if not isinstance(signal, Signal):
        signal = Signal(np.asarray(signal))
    d = signal.dimension
    samples = signal.samples
    if samples.max() == samples.min():
        return GraphDimensionResult(
            oscillation_dim=float(d), leader_dim=float(d), o1=np.nan, zeta1=np.nan, degenerate=True
        )
    table = structure_functions(signal, "oscillations", [1.0])
    o1 = float(fit_scaling_function(table, config).oscillation[0])
    second = None
    if d == 1 and o1 >= 1.0:
        table2 = structure_functions(signal, "oscillations", [1.0], oscillation_order=2)
        second = float(fit_scaling_function(table2, config).oscillation[0])
    filt = design_daubechies_filter(filter_order)
    max_level = min(max_decomposition_level(samples.shape), config.j2 + 1)
    pyr = dwt_forward(signal, filt, max_level=max_level, boundary="discard")
    lead = compute_leaders(pyr)
    ltable = structure_functions(lead, "leaders", [1.0])
    zeta1 = float(fit_scaling_function(ltable, config).zeta[0])
    return GraphDimensionResult(
        oscillation_dim=max(float(d), d + 1.0 - o1),
        leader_dim=max(float(d), d + 1.0 - zeta1),
        o1=o1,
        zeta1=zeta1,
        second_order_o1=second,
    )
