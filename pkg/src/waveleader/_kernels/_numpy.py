"""Pure-numpy implementations of the hot kernels.

Same contracts as the Cython module `_core`; one of the two is selected at
import time by `waveleader._kernels`.  All routines assume float64 inputs.

Conventions:
  * filter-bank level step: out[m] = sum_k f[k] * a[(2m+k) mod n], periodic.
  * leader recursion keeps, per dyadic cell, the supremum of |c| over the
    cell's own coefficient and everything below it ("sv"), then takes the
    max over the 3^d same-scale neighbourhood.
"""

from __future__ import annotations

import numpy as np


def dwt_level_1d(a: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    n = a.shape[0]
    m = n // 2
    taps = lo.shape[0]
    ap = np.concatenate([a, a[: taps - 1]])
    approx = np.zeros(m)
    detail = np.zeros(m)
    for k in range(taps):
        seg = ap[k : k + 2 * m : 2]
        approx += lo[k] * seg
        detail += hi[k] * seg
    return approx, detail


def _conv_down_last(a: np.ndarray, f: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    m = n // 2
    taps = f.shape[0]
    ap = np.concatenate([a, a[..., : taps - 1]], axis=-1)
    out = np.zeros(a.shape[:-1] + (m,))
    for k in range(taps):
        out += f[k] * ap[..., k : k + 2 * m : 2]
    return out


def dwt_level_2d(a: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    lo_c = _conv_down_last(a, lo)
    hi_c = _conv_down_last(a, hi)
    lo_c = np.swapaxes(lo_c, 0, 1)
    hi_c = np.swapaxes(hi_c, 0, 1)
    approx = np.swapaxes(_conv_down_last(lo_c, lo), 0, 1)
    band_v = np.swapaxes(_conv_down_last(lo_c, hi), 0, 1)
    band_h = np.swapaxes(_conv_down_last(hi_c, lo), 0, 1)
    band_d = np.swapaxes(_conv_down_last(hi_c, hi), 0, 1)
    return approx, (band_h, band_v, band_d)


def leader_level_1d(absd: np.ndarray, sv_prev):
    m = absd.shape[0]
    if sv_prev is None:
        sv = absd.copy()
    else:
        sv = np.maximum(absd, np.maximum(sv_prev[0 : 2 * m : 2], sv_prev[1 : 2 * m : 2]))
    padded = np.concatenate([[0.0], sv, [0.0]])
    lead = np.maximum(padded[:-2], np.maximum(padded[1:-1], padded[2:]))
    return sv, lead


def leader_level_2d(bandmax: np.ndarray, sv_prev):
    r, c = bandmax.shape
    if sv_prev is None:
        sv = bandmax.copy()
    else:
        sv = np.maximum(
            np.maximum(sv_prev[0 : 2 * r : 2, 0 : 2 * c : 2], sv_prev[1 : 2 * r : 2, 0 : 2 * c : 2]),
            np.maximum(sv_prev[0 : 2 * r : 2, 1 : 2 * c : 2], sv_prev[1 : 2 * r : 2, 1 : 2 * c : 2]),
        )
        sv = np.maximum(sv, bandmax)
    padded = np.zeros((r + 2, c + 2))
    padded[1:-1, 1:-1] = sv
    lead = padded[:-2, :-2]
    for di in range(3):
        for dj in range(3):
            if di == 0 and dj == 0:
                continue
            lead = np.maximum(lead, padded[di : di + r, dj : dj + c])
    return sv, lead


def power_stats(values: np.ndarray, p_grid: np.ndarray):
    """Fused single-pass moments of |values|.

    Returns (psums, logsums, n_total, n_zero, max_abs) where
    psums[i] = sum over nonzero v of |v|**p_grid[i] and logsums holds the
    first four power sums of ln|v| over nonzero v.
    """
    av = np.abs(values).ravel()
    n_total = av.size
    max_abs = float(av.max()) if n_total else 0.0
    nz = av[av > 0.0]
    n_zero = n_total - nz.size
    logsums = np.zeros(4)
    psums = np.zeros(len(p_grid))
    if nz.size:
        la = np.log(nz)
        acc = la.copy()
        for i in range(4):
            logsums[i] = acc.sum()
            if i < 3:
                acc *= la
        psums = np.exp(np.multiply.outer(np.asarray(p_grid, dtype=float), la)).sum(axis=1)
    return psums, logsums, n_total, n_zero, max_abs


def block_power_stats(values: np.ndarray, edges: np.ndarray, p_grid: np.ndarray):
    """Per-block version of power_stats over contiguous segments.

    edges is an int array of length T+1 (edges[0]=0, edges[-1]=len(values));
    block b covers values[edges[b]:edges[b+1]].  Empty blocks yield zeros.
    """
    av = np.abs(np.asarray(values, dtype=float).ravel())
    edges = np.asarray(edges, dtype=np.int64)
    starts = edges[:-1]
    sizes = np.diff(edges)
    empty = sizes == 0
    nzmask = av > 0.0
    la = np.where(nzmask, np.log(np.where(nzmask, av, 1.0)), 0.0)

    t = len(starts)
    p_grid = np.asarray(p_grid, dtype=float)
    psums = np.zeros((t, len(p_grid)))
    for i, p in enumerate(p_grid):
        with np.errstate(divide="ignore"):
            pw = np.where(nzmask, av, 1.0) ** p
        pw[~nzmask] = 0.0
        psums[:, i] = np.add.reduceat(pw, starts)
    logsums = np.zeros((t, 4))
    acc = la.copy()
    for i in range(4):
        logsums[:, i] = np.add.reduceat(acc, starts)
        if i < 3:
            acc *= la
    counts = sizes.astype(np.int64)
    zeros = np.add.reduceat((~nzmask).astype(float), starts).astype(np.int64)
    maxs = np.maximum.reduceat(av, starts) if av.size else np.zeros(t)
    for arr in (psums, logsums):
        arr[empty] = 0.0
    zeros[empty] = 0
    maxs[empty] = 0.0
    return psums, logsums, counts, zeros, maxs
