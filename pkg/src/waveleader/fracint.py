"""Pseudo-fractional integration in the wavelet domain.

Multiplying level-j coefficients by 2**(s*j) shifts every regularity
exponent by exactly +s in-sample (the regressions are affine in the log2
coefficients), which is why the wavelet-domain operator is preferred over
exact Fourier-domain fractional integration.
"""

from __future__ import annotations

import warnings

import numpy as np

from .dwt import CoefficientPyramid
from .errors import InvalidArgumentError


def _approx_holder_regularity(order: int) -> float:
    # conservative proxy for the Daubechies-N wavelet's Holder regularity
    return 0.5 * (order - 1)


def pseudo_fractional_integrate(pyramid: CoefficientPyramid, s: float) -> CoefficientPyramid:
    """Scale level-j coefficients by 2**(s*j); masks and levels unchanged.

    The accumulated order is recorded on the pyramid.  Negative s performs
    the corresponding pseudo-fractional differentiation.  The coarse
    approximation band is left untouched (it never enters statistics).
    """
    if not np.isfinite(s):
        raise InvalidArgumentError("integration order must be finite")
    if s > 0 and _approx_holder_regularity(pyramid.filter.order) <= s + 1:
        warnings.warn(
            f"filter order {pyramid.filter.order} may be too rough for integration "
            f"of order {s} (needs wavelet regularity r > s + 1)",
            stacklevel=2,
        )
    factors = [2.0 ** (s * lv.j) for lv in pyramid.levels]
    return pyramid.scaled(factors, extra_frac_order=s)


def select_integration_order(hmin_values) -> float:
    """Smallest non-negative multiple of 0.5 making every h_min strictly positive."""
    arr = np.asarray(list(hmin_values), dtype=float)
    if arr.size == 0:
        raise InvalidArgumentError("need at least one h_min estimate")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("h_min estimates must be finite")
    worst = float(arr.min())
    if worst > 0.0:
        return 0.0
    s = 0.5 * np.ceil(-worst / 0.5)
    while worst + s <= 0.0:
        s += 0.5
    return float(s)
