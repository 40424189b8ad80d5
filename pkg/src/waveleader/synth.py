"""Seed-reproducible generators for the reference scaling processes.

Every generator is a pure function of (parameters, seed) built on the
counter-based Philox bit generator, and ships its analytic ground truth
(scaling function, spectrum, uniform regularity exponent) for validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dwt import (
    Signal,
    design_daubechies_filter,
    dwt_forward,
    dwt_inverse,
    max_decomposition_level,
)
from .errors import InternalError, InvalidArgumentError

_LN = math.log


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream); platform-stable streams."""
    key = np.array([np.uint64(seed), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class GroundTruth:
    """Closed-form targets attached to a synthetic signal."""

    zeta: object                  # callable p -> zeta(p)
    spectrum: object              # callable h -> D(h) (-inf off support)
    hmin: float
    params: dict = field(default_factory=dict)

    def sampled(self, p_grid, h_grid) -> dict:
        p_grid = np.asarray(p_grid, dtype=float)
        h_grid = np.asarray(h_grid, dtype=float)
        spec = np.array([float(self.spectrum(h)) for h in h_grid])
        return {
            "params": {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.params.items()},
            "hmin": self.hmin,
            "p": p_grid.tolist(),
            "zeta": np.asarray(self.zeta(p_grid), dtype=float).tolist(),
            "h": h_grid.tolist(),
            "spectrum": [s if np.isfinite(s) else None for s in spec],
        }


def _point_spectrum(h0: float, d: int):
    def spectrum(h):
        return float(d) if abs(h - h0) < 1e-12 else -np.inf

    return spectrum


def _circulant_gaussian(cov_first_row: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Exact stationary Gaussian sample on a circle via circulant embedding."""
    lam = np.fft.fft(cov_first_row).real
    if lam.min() < -1e-8 * max(lam.max(), 1.0):
        raise InternalError(f"circulant embedding not PSD (min eigenvalue {lam.min():.3e})")
    lam = np.clip(lam, 0.0, None)
    m = cov_first_row.shape[0]
    zeta = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return np.fft.ifft(np.sqrt(lam) * zeta).real * np.sqrt(m)


def fgn_covariance(k: np.ndarray, hurst: float) -> np.ndarray:
    k = np.abs(np.asarray(k, dtype=float))
    return 0.5 * (
        (k + 1) ** (2 * hurst) - 2 * k ** (2 * hurst) + np.abs(k - 1) ** (2 * hurst)
    )


def _fgn(n: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """Unit-variance fractional Gaussian noise, exact circulant embedding."""
    k = np.arange(n + 1)
    gamma = fgn_covariance(k, hurst)
    first_row = np.concatenate([gamma[:n], gamma[n:n + 1], gamma[n - 1 : 0 : -1]])
    return _circulant_gaussian(first_row, rng)[:n]


def _require_pow2(n: int, what: str) -> None:
    if n < 2 or n & (n - 1):
        raise InvalidArgumentError(f"{what} must be a power of two, got {n}")


def synth_fbm(hurst: float, n: int, dimension: int = 1, seed: int = 0):
    """Fractional Brownian motion on [0,1]^d, exact in distribution.

    1D: cumulative sum of circulant-embedded fGn.  2D: circulant embedding
    of a locally equivalent stationary field plus the linear correction
    term, exact for every pair of grid points.  Returns (Signal, GroundTruth).
    """
    if not 0 < hurst < 1:
        raise InvalidArgumentError(f"H must be in (0,1), got {hurst}")
    _require_pow2(n, "n")
    if dimension == 1:
        fgn = _fgn(n, hurst, make_rng(seed, stream=0))
        samples = np.cumsum(fgn) * float(n) ** (-hurst)
    elif dimension == 2:
        samples = _fbm_surface(hurst, n, make_rng(seed, stream=0))
    else:
        raise InvalidArgumentError("dimension must be 1 or 2")
    truth = GroundTruth(
        zeta=lambda p: hurst * np.asarray(p, dtype=float),
        spectrum=_point_spectrum(hurst, dimension),
        hmin=hurst,
        params={"kind": "fbm", "H": hurst, "n": n, "d": dimension, "seed": seed},
    )
    return Signal(samples), truth


def _stein_parameters(hurst: float, big_r: float):
    """(c0, c2, beta) joining c0+c2 u^2-u^{2H} to beta (R-u)^3/u, C^2 at u=1."""
    if big_r == 1.0:
        return 1.0 - hurst, hurst, 0.0
    rm = big_r - 1.0
    g1 = rm**3
    dg1 = -(rm**2) * (big_r + 2.0)
    d2g1 = 2.0 * rm * (3.0 + 3.0 * rm + rm**2)
    # solve: 2c2 - 2H = beta*dg1 ; 2c2 - 2H(2H-1) = beta*d2g1
    beta = (2.0 * hurst - 2.0 * hurst * (2.0 * hurst - 1.0)) / (d2g1 - dg1)
    c2 = hurst + beta * dg1 / 2.0
    c0 = 1.0 + beta * g1 - c2
    return c0, c2, beta


def _fbm_surface(hurst: float, n: int, rng: np.random.Generator) -> np.ndarray:
    candidates = [1.0] if hurst <= 0.75 else [2.0, 3.0, 4.0]
    delta = 1.0 / (math.sqrt(2.0) * n)
    last_err = None
    for big_r in candidates:
        c0, c2, beta = _stein_parameters(hurst, big_r)
        m = int(np.ceil(2.0 * big_r / delta))
        m += m % 2
        ax = np.minimum(np.arange(m), m - np.arange(m)) * delta
        dist = np.hypot(ax[:, None], ax[None, :])
        cov = np.where(
            dist <= 1.0,
            c0 + c2 * dist**2 - dist ** (2 * hurst),
            np.where(dist <= big_r, beta * (big_r - dist) ** 3 / np.maximum(dist, 1e-300), 0.0),
        )
        lam = np.fft.fft2(cov).real
        if lam.min() < -1e-8 * lam.max():
            last_err = f"R={big_r}: min eigenvalue {lam.min():.3e}"
            continue
        lam = np.clip(lam, 0.0, None)
        zeta = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        z = np.fft.ifft2(np.sqrt(lam) * zeta).real * m
        z = z[:n, :n]
        xi = rng.standard_normal(2)
        coords = np.arange(n) * delta
        corr = math.sqrt(2.0 * c2) * (xi[0] * coords[:, None] + xi[1] * coords[None, :])
        surface = (z - z[0, 0] + corr) * 2.0 ** ((hurst - 1.0) / 2.0)
        return surface
    raise InternalError(f"2D circulant embedding not PSD ({last_err})")


def weierstrass_values(x: np.ndarray, a: float, hurst: float, variant: str = "sin") -> np.ndarray:
    """Weierstrass-Mandelbrot partial sum, truncated at 1e-14 relative terms."""
    if a <= 1:
        raise InvalidArgumentError("need a > 1")
    hmax = {"sin": 1.0, "cos_renorm": 2.0}.get(variant)
    if hmax is None:
        raise InvalidArgumentError("variant must be 'sin' or 'cos_renorm'")
    if not 0 < hurst < hmax:
        raise InvalidArgumentError(f"H must be in (0,{hmax}) for variant {variant}")
    x = np.asarray(x, dtype=float)
    tol_digits = 14.0 * _LN(10.0)
    n_max = int(np.ceil(tol_digits / (hurst * _LN(a))))
    decay = (hmax - hurst) * _LN(a)
    xmax = max(float(np.abs(x).max()), 1.0)
    n_min = -int(np.ceil((tol_digits + hmax * _LN(xmax)) / decay))
    out = np.zeros_like(x)
    for k in range(n_min, n_max + 1):
        arg = a**k * x
        term = np.sin(arg) if variant == "sin" else np.cos(arg) - 1.0
        out += term / a ** (hurst * k)
    return out


def synth_weierstrass(a: float, hurst: float, n: int, variant: str = "sin"):
    """Deterministic Weierstrass-Mandelbrot samples on [0,1); no seed."""
    x = np.arange(n) / n
    samples = weierstrass_values(x, a, hurst, variant)
    truth = GroundTruth(
        zeta=lambda p: hurst * np.asarray(p, dtype=float),
        spectrum=_point_spectrum(hurst, 1),
        hmin=hurst,
        params={"kind": "weierstrass", "a": a, "H": hurst, "n": n, "variant": variant},
    )
    return Signal(samples), truth


# ---------------------------------------------------------------------------
# multiplicative cascades


@dataclass(frozen=True)
class LognormalMultipliers:
    """ln w ~ N(mean_log, sigma2); mean_log defaults to -sigma2/2 (mean-1)."""

    sigma2: float
    mean_log: float | None = None

    def __post_init__(self):
        if self.sigma2 < 0:
            raise InvalidArgumentError("sigma2 must be >= 0")

    @property
    def m(self) -> float:
        return -0.5 * self.sigma2 if self.mean_log is None else self.mean_log

    def sample(self, rng, size):
        return np.exp(rng.normal(self.m, math.sqrt(self.sigma2), size))

    def log_mgf(self, q):
        q = np.asarray(q, dtype=float)
        return q * self.m + 0.5 * q**2 * self.sigma2


def lognormal_for_cumulants(c2: float, branching: int = 2) -> LognormalMultipliers:
    """Mean-1 multipliers whose cascade has second log-cumulant c2.

    The cumulants of the log cell-mass at scale c^{-j} are linear in j with
    c2 = -sigma2 / ln c; under coarse-graining of a fixed-depth cascade the
    first cumulant is pinned at c1 = 1 - c2/2 regardless of the multiplier
    mean (level-common subtree factors cancel), so only c2 is free here.
    Use synth_calibrated_lognormal_cascade for an arbitrary c1.
    """
    if c2 > 0:
        raise InvalidArgumentError("c2 must be <= 0 (zeta is concave)")
    return LognormalMultipliers(sigma2=-c2 * _LN(branching))


@dataclass(frozen=True)
class LogPoissonMultipliers:
    """w = beta^pi * e^gamma with pi ~ Poisson(lam); gamma defaults to mean-1."""

    lam: float
    beta: float
    gamma: float | None = None

    def __post_init__(self):
        if self.lam <= 0:
            raise InvalidArgumentError("lam must be > 0")
        if self.beta <= 0:
            raise InvalidArgumentError("beta must be > 0 (multipliers are positive)")

    @property
    def g(self) -> float:
        return -self.lam * (self.beta - 1.0) if self.gamma is None else self.gamma

    def sample(self, rng, size):
        return self.beta ** rng.poisson(self.lam, size) * math.exp(self.g)

    def log_mgf(self, q):
        q = np.asarray(q, dtype=float)
        return q * self.g + self.lam * (self.beta**q - 1.0)


def she_leveque_multipliers() -> LogPoissonMultipliers:
    """Classic log-Poisson preset (lam=2, beta=2/3), mean 1."""
    return LogPoissonMultipliers(lam=2.0, beta=2.0 / 3.0)


@dataclass(frozen=True)
class DeterministicWeights:
    """Fixed mass fractions per child; (0.5, 0.5) is the uniform measure."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2:
            raise InvalidArgumentError("need at least two weights")
        if any(x <= 0 for x in w):
            raise InvalidArgumentError("weights must be strictly positive")
        if abs(sum(w) - 1.0) > 1e-12:
            raise InvalidArgumentError("deterministic weights must sum to 1")


def _cascade_zeta(multiplier, branching: int):
    lnc = _LN(branching)
    if isinstance(multiplier, DeterministicWeights):
        w = np.asarray(multiplier.weights)

        def zeta(q):
            q = np.asarray(q, dtype=float)
            return 1.0 - np.log(np.sum(w[None, :] ** q[..., None], axis=-1)) / lnc

        return zeta

    def zeta(q):
        q = np.asarray(q, dtype=float)
        return q - multiplier.log_mgf(q) / lnc

    return zeta


def _legendre_of(zeta, d: int = 1, q_lo=-60.0, q_hi=60.0, nq=24001):
    qs = np.linspace(q_lo, q_hi, nq)
    zs = np.asarray(zeta(qs), dtype=float)

    def spectrum(h):
        vals = d + h * qs - zs
        return float(vals.min())

    return spectrum


def _support_left_endpoint(spectrum, h_lo=-2.0, h_hi=4.0, steps=24001) -> float:
    hs = np.linspace(h_lo, h_hi, steps)
    dv = np.array([spectrum(h) for h in hs])
    ok = np.nonzero(dv >= 0)[0]
    return float(hs[ok[0]]) if ok.size else float("nan")


def cascade_ground_truth(multiplier, branching: int) -> GroundTruth:
    zeta = _cascade_zeta(multiplier, branching)
    if isinstance(multiplier, DeterministicWeights) and len(multiplier.weights) == 2:
        p0, p1 = multiplier.weights
        l0, l1 = -math.log2(p0), -math.log2(p1)

        def spectrum(h):
            if l0 == l1:
                return 1.0 if abs(h - l0) < 1e-12 else -np.inf
            alpha = (h - l1) / (l0 - l1)
            if not 0.0 <= alpha <= 1.0:
                return -np.inf
            if alpha in (0.0, 1.0):
                return 0.0
            return -alpha * math.log2(alpha) - (1 - alpha) * math.log2(1 - alpha)

        hmin = min(l0, l1)
    elif isinstance(multiplier, LognormalMultipliers) and multiplier.sigma2 > 0:
        lnc = _LN(branching)
        c1 = 1.0 - multiplier.m / lnc
        c2 = -multiplier.sigma2 / lnc

        def spectrum(h):
            val = 1.0 + (h - c1) ** 2 / (2.0 * c2)
            return val if val >= 0 else -np.inf

        hmin = c1 - math.sqrt(-2.0 * c2)
    else:
        spectrum = _legendre_of(zeta)
        hmin = _support_left_endpoint(spectrum)
    return GroundTruth(
        zeta=zeta,
        spectrum=spectrum,
        hmin=hmin,
        params={"kind": "cascade", "branching": branching, "multiplier": repr(multiplier)},
    )


def synth_cascade(branching: int, multiplier, depth: int, seed: int = 0):
    """Depth-J product measure, returned as the c**J cell masses.

    Cumulative-sum the returned samples to analyze the distribution
    function F with the wavelet pipeline; the attached ground truth is the
    scaling function of F.
    """
    if branching < 2:
        raise InvalidArgumentError("branching must be >= 2")
    if depth < 1 or branching**depth > 2**24:
        raise InvalidArgumentError("depth out of range (need branching**depth <= 2**24)")
    if isinstance(multiplier, DeterministicWeights):
        if len(multiplier.weights) != branching:
            raise InvalidArgumentError("need one weight per branch")
        masses = np.array([1.0])
        w = np.asarray(multiplier.weights)
        for _ in range(depth):
            masses = (masses[:, None] * w[None, :]).ravel()
    else:
        rng = make_rng(seed, stream=1)
        masses = np.array([1.0])
        for j in range(1, depth + 1):
            masses = np.repeat(masses, branching) * multiplier.sample(rng, branching**j)
        masses *= float(branching) ** (-depth)
    return Signal(masses), cascade_ground_truth(multiplier, branching)


def wavelet_fractional_shift(signal: Signal, s: float, filter_order: int = 3) -> Signal:
    """Exact pseudo-fractional integration of a signal of order s.

    Periodic forward transform, level-j coefficients scaled by 2**(s*j),
    inverse transform; every wavelet-based scaling exponent of the result
    is shifted by +s (exactly for coefficients in the synthesis basis,
    asymptotically for leaders).
    """
    filt = design_daubechies_filter(filter_order)
    max_level = max_decomposition_level(signal.samples.shape)
    pyr = dwt_forward(signal, filt, max_level=max_level, boundary="periodic")
    factors = [2.0 ** (s * lv.j) for lv in pyr.levels]
    return Signal(dwt_inverse(pyr.scaled(factors, extra_frac_order=s)), signal.sample_spacing)


def synth_calibrated_lognormal_cascade(
    c1: float, c2: float, depth: int, seed: int = 0, branching: int = 2, filter_order: int = 3
):
    """Log-normal multifractal path with prescribed log-cumulants (c1, c2).

    A conservative cascade distribution function always measures
    c1 = 1 - c2/2 under coarse-graining, so the prescribed c1 is reached by
    an exact wavelet-domain fractional shift of order c1 - (1 - c2/2); the
    shift adds sp to zeta(p) and leaves (c2, c3, ...) untouched.  Ground
    truth: zeta(p) = c1 p + c2 p^2/2 on the parabola's admissible range,
    spectrum 1 + (h - c1)^2 / (2 c2).
    """
    if c2 >= 0:
        raise InvalidArgumentError("calibration needs c2 < 0")
    base_c1 = 1.0 - c2 / 2.0
    shift = c1 - base_c1
    cascade, _ = synth_cascade(branching, lognormal_for_cumulants(c2, branching), depth, seed)
    f_signal = Signal(np.cumsum(cascade.samples))
    signal = wavelet_fractional_shift(f_signal, shift, filter_order) if shift else f_signal

    def zeta(p):
        p = np.asarray(p, dtype=float)
        return c1 * p + 0.5 * c2 * p**2

    def spectrum(h):
        val = 1.0 + (h - c1) ** 2 / (2.0 * c2)
        return val if val >= 0 else -np.inf

    truth = GroundTruth(
        zeta=zeta,
        spectrum=spectrum,
        hmin=c1 - math.sqrt(-2.0 * c2),
        params={
            "kind": "calibrated_lognormal_cascade",
            "c1": c1,
            "c2": c2,
            "depth": depth,
            "branching": branching,
            "seed": seed,
            "fractional_shift": shift,
        },
    )
    return signal, truth


def synth_fbm_mf_time(
    hurst: float,
    multiplier,
    n: int,
    seed: int = 0,
    branching: int = 2,
    depth: int | None = None,
    oversample: int = 16,
):
    """fBm in multifractal time: X(t) = B_H(F(t)), F the cascade c.d.f.

    B_H is generated once on a grid oversampled ``oversample`` times and
    evaluated at the nearest grid point (no interpolation, singularities
    are not smoothed).  The ground truth spectrum is the cascade spectrum
    dilated along h by H.
    """
    if not 0 < hurst < 1:
        raise InvalidArgumentError("H must be in (0,1)")
    _require_pow2(n, "n")
    if depth is None:
        depth = int(round(math.log2(n)))
    m = oversample * n
    if branching**depth > m:
        raise InvalidArgumentError(
            f"oversampling {oversample}x insufficient for cascade depth {depth}"
        )
    cascade, truth_f = synth_cascade(branching, multiplier, depth, seed=seed)
    cum = np.concatenate([[0.0], np.cumsum(cascade.samples)])
    cum /= cum[-1]
    cell_edges = np.arange(len(cum)) / (len(cum) - 1)
    t = np.arange(1, n + 1) / n
    f_at_t = np.interp(t, cell_edges, cum)

    fgn = _fgn(m, hurst, make_rng(seed, stream=0))
    b = np.concatenate([[0.0], np.cumsum(fgn)[: m - 1]]) * float(m) ** (-hurst)
    idx = np.minimum((f_at_t * m + 0.5).astype(int), m - 1)
    samples = b[idx]

    zeta_f = truth_f.zeta
    spectrum_f = truth_f.spectrum
    truth = GroundTruth(
        zeta=lambda p: zeta_f(hurst * np.asarray(p, dtype=float)),
        spectrum=lambda h: spectrum_f(h / hurst),
        hmin=hurst * truth_f.hmin,
        params={
            "kind": "fbm_mf_time",
            "H": hurst,
            "n": n,
            "seed": seed,
            "branching": branching,
            "depth": depth,
            "subordination_H": hurst,
        },
    )
    return Signal(samples), truth


def synth_levy_stable(alpha: float, n: int, seed: int = 0):
    """Symmetric alpha-stable Levy motion via Chambers-Mallows-Stuck increments.

    alpha in (1, 2] keeps H = 1/alpha < 1 and locally bounded paths; at
    alpha = 2 the increments are Gaussian with variance 2.
    """
    if not 1.0 < alpha <= 2.0:
        raise InvalidArgumentError(f"alpha must be in (1, 2], got {alpha}")
    rng = make_rng(seed, stream=0)
    u = rng.uniform(-np.pi / 2, np.pi / 2, n)
    w = rng.exponential(1.0, n)
    inc = (np.sin(alpha * u) / np.cos(u) ** (1.0 / alpha)) * (
        np.cos((1.0 - alpha) * u) / w
    ) ** ((1.0 - alpha) / alpha)
    h = 1.0 / alpha

    def eta(p):
        p = np.asarray(p, dtype=float)
        return np.where(p <= alpha, h * p, 1.0)

    def spectrum(hh):
        if 0.0 <= hh <= h:
            return alpha * hh
        return -np.inf

    truth = GroundTruth(
        zeta=eta,
        spectrum=spectrum,
        hmin=0.0,
        params={"kind": "levy_stable", "alpha": alpha, "n": n, "seed": seed},
    )
    return Signal(np.cumsum(inc)), truth


def transform_square(signal: Signal) -> Signal:
    """Elementwise square; turns mono-Holder fBm into a bi-Holder process."""
    return Signal(signal.samples**2, sample_spacing=signal.sample_spacing)


def squared_fbm_ground_truth(hurst: float) -> GroundTruth:
    def spectrum(h):
        if abs(h - hurst) < 1e-12:
            return 1.0
        if abs(h - 2 * hurst) < 1e-12:
            return 1.0 - hurst
        return -np.inf

    def zeta(p):
        p = np.asarray(p, dtype=float)
        return np.minimum(hurst * p, 2 * hurst * p + hurst)

    return GroundTruth(
        zeta=zeta, spectrum=spectrum, hmin=hurst, params={"kind": "square_of_fbm", "H": hurst}
    )


# ---------------------------------------------------------------------------
# declarative entry point used by the CLI


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict)


def _multiplier_from_params(params: dict):
    name = params.get("multiplier", "lognormal")
    if name == "lognormal":
        if "c2" in params:
            return lognormal_for_cumulants(
                float(params["c2"]), int(params.get("branching", 2))
            )
        return LognormalMultipliers(sigma2=float(params.get("sigma2", 0.05)))
    if name == "logpoisson":
        if "lam" in params or "beta" in params:
            return LogPoissonMultipliers(
                lam=float(params.get("lam", 2.0)), beta=float(params.get("beta", 2.0 / 3.0))
            )
        return she_leveque_multipliers()
    if name == "deterministic":
        return DeterministicWeights(tuple(params["weights"]))
    raise InvalidArgumentError(f"unknown multiplier kind {name!r}")


def synthesize(spec: GeneratorSpec):
    """Dispatch a GeneratorSpec to its generator; returns (Signal, GroundTruth)."""
    p = dict(spec.params)
    kind = spec.kind
    if kind == "fbm1d":
        return synth_fbm(float(p["H"]), spec.n, 1, spec.seed)
    if kind == "fbm2d":
        return synth_fbm(float(p["H"]), spec.n, 2, spec.seed)
    if kind == "weierstrass":
        return synth_weierstrass(float(p["a"]), float(p["H"]), spec.n, p.get("variant", "sin"))
    if kind == "cascade":
        branching = int(p.get("branching", 2))
        depth = int(p.get("depth", round(math.log(spec.n, branching))))
        if p.get("multiplier", "lognormal") == "lognormal" and "c1" in p:
            return synth_calibrated_lognormal_cascade(
                float(p["c1"]), float(p["c2"]), depth, spec.seed, branching
            )
        return synth_cascade(branching, _multiplier_from_params(p), depth, spec.seed)
    if kind == "fbm_mf_time":
        return synth_fbm_mf_time(
            float(p["H"]),
            _multiplier_from_params(p),
            spec.n,
            seed=spec.seed,
            branching=int(p.get("branching", 2)),
            depth=p.get("depth"),
        )
    if kind == "levy_stable":
        return synth_levy_stable(float(p["alpha"]), spec.n, spec.seed)
    if kind == "square_of":
        signal, _ = synth_fbm(float(p["H"]), spec.n, 1, spec.seed)
        return transform_square(signal), squared_fbm_ground_truth(float(p["H"]))
    raise InvalidArgumentError(f"unknown generator kind {kind!r}")
