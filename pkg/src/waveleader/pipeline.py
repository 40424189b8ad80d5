"""End-to-end analysis pipeline: ingest, transform, estimate, report.

Stage order: ingest -> dwt -> h_min -> fractional integration (auto rule:
smallest multiple of 0.5 making h_min strictly positive) -> leaders ->
structure functions -> scaling fits -> log-cumulants -> Legendre spectrum
-> membership verdicts -> optional bootstrap -> JSON/CSV output.  Windowed
mode re-runs the same pipeline on each window independently, so a window
extracted to its own file yields the identical record.
"""

from __future__ import annotations

import datetime
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import io
from .bootstrap import BootstrapConfig, bootstrap_ci
from .dwt import Signal, design_daubechies_filter, dwt_forward, max_decomposition_level
from .errors import AnalysisError, InvalidArgumentError, NoRootError
from .fracint import pseudo_fractional_integrate, select_integration_order
from .leaders import compute_leaders
from .regression import RegressionConfig
from .scaling import (
    estimate_hmin,
    estimate_log_cumulants,
    fit_scaling_function,
    infer_subordination_H,
    legendre_spectrum,
    membership_tests,
    structure_functions,
)
from .synth import GeneratorSpec, synthesize

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PipelineConfig:
    """Flat, file-serializable pipeline parameters (CLI flags mirror fields)."""

    input: str | None = None
    format: str | None = None
    shape: tuple | None = None
    cumsum: bool = False
    synth_kind: str | None = None
    synth_params: dict = field(default_factory=dict)
    n: int = 65536
    seed: int = 0
    filter_order: int = 3
    boundary: str = "discard"
    max_level: int | None = None
    fracint: str = "auto"  # "auto" | "off" | numeric string
    p_min: float = -5.0
    p_max: float = 5.0
    p_step: float = 0.5
    j1: int = 3
    j2: int | None = None
    weighting: str = "count"
    min_atoms: int = 8
    cumulants: int = 3
    h_low: float | None = None
    h_high: float | None = None
    h_steps: int = 121
    bootstrap: bool = False
    bootstrap_resamples: int = 199
    block_length: int | None = None
    ci_level: float = 0.9
    bootstrap_seed: int = 1
    window_length: int | None = None
    window_hop: int | None = None
    out_dir: str | None = None

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["shape"] = list(self.shape) if self.shape else None
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {sorted(unknown)}")
        doc = dict(doc)
        if doc.get("shape"):
            doc["shape"] = tuple(doc["shape"])
        return cls(**doc)

    def p_grid(self) -> np.ndarray:
        grid = np.arange(self.p_min, self.p_max + 1e-9, self.p_step)
        if not np.any(np.abs(grid) < 1e-12):
            grid = np.sort(np.append(grid, 0.0))
        return grid

    def fracint_mode(self) -> tuple[str, float]:
        if self.fracint in ("auto", "off"):
            return self.fracint, 0.0
        try:
            return "fixed", float(self.fracint)
        except ValueError:
            raise InvalidArgumentError(f"fracint must be auto, off or a number: {self.fracint!r}")


def _ingest(config: PipelineConfig) -> tuple[Signal, dict]:
    if config.synth_kind:
        spec = GeneratorSpec(
            kind=config.synth_kind, n=config.n, seed=config.seed, params=config.synth_params
        )
        signal, truth = synthesize(spec)
        meta = {"synth": {"kind": spec.kind, "n": spec.n, "seed": spec.seed, **spec.params}}
    elif config.input:
        signal = io.read_signal(config.input, config.format, config.shape)
        meta = {"path": str(config.input)}
    else:
        raise InvalidArgumentError("config needs either an input file or a synth spec")
    if config.cumsum:
        signal = Signal(np.cumsum(signal.samples, axis=-1), signal.sample_spacing)
    meta["n"] = list(signal.samples.shape)
    meta["dimension"] = signal.dimension
    return signal, meta


def _auto_h_grid(config: PipelineConfig, zeta_vals: np.ndarray, p: np.ndarray) -> np.ndarray:
    ok = np.isfinite(zeta_vals)
    slopes = np.diff(zeta_vals[ok]) / np.diff(p[ok])
    lo = config.h_low if config.h_low is not None else float(slopes.min()) - 0.1
    hi = config.h_high if config.h_high is not None else float(slopes.max()) + 0.1
    if hi <= lo:
        hi = lo + 0.5
    return np.linspace(lo, hi, config.h_steps)


def analyze_signal(signal: Signal, config: PipelineConfig) -> dict:
    """Run the estimation pipeline on one signal; returns the record dict.

    On an AnalysisError the partially filled record is attached to the
    exception (``exc.partial_record``) so the caller can persist it with a
    failure marker.
    """
    record: dict = {"stages": []}
    try:
        return _analyze(signal, config, record)
    except AnalysisError as exc:
        exc.partial_record = record
        raise


def _analyze(signal: Signal, config: PipelineConfig, record: dict) -> dict:
    def stage(name):
        record["stages"].append(name)

    stage("dwt")
    filt = design_daubechies_filter(config.filter_order)
    cap = max_decomposition_level(signal.samples.shape)
    max_level = min(config.max_level or cap, cap)
    pyramid = dwt_forward(signal, filt, max_level=max_level, boundary=config.boundary)
    j2 = min(config.j2 or max_level, max_level)
    reg = RegressionConfig(
        j1=config.j1, j2=j2, weighting=config.weighting, min_atoms=config.min_atoms
    )
    p_grid = config.p_grid()
    p_pos = p_grid[p_grid >= 0]

    stage("hmin")
    hmin = estimate_hmin(pyramid, reg)
    record["hmin"] = hmin

    stage("fracint")
    mode, fixed = config.fracint_mode()
    s = 0.0
    if mode == "auto":
        s = select_integration_order([hmin])
    elif mode == "fixed":
        s = fixed
    analysis_pyramid = pseudo_fractional_integrate(pyramid, s) if s != 0.0 else pyramid
    record["fracint_order"] = s

    stage("coefficient-structure")
    ctable = structure_functions(pyramid, "coefficients", p_pos)
    eta_est = fit_scaling_function(ctable, reg)
    record["eta"] = {"p": p_pos, "value": eta_est.eta}

    stage("leaders")
    lead = compute_leaders(analysis_pyramid)

    stage("leader-structure")
    ltable = structure_functions(lead, "leaders", p_grid)
    zeta_est = fit_scaling_function(ltable, reg)
    record["zeta"] = {"p": p_grid, "value": zeta_est.zeta}
    record["structure"] = {
        "source": "leaders",
        "levels": ltable.levels,
        "n_j": ltable.n_atoms,
        "log2_sf": ltable.log2_values,
        "excluded_fraction": ltable.excluded_fraction,
    }

    stage("cumulants")
    cums = estimate_log_cumulants(lead, config.cumulants, reg)
    record["cumulants"] = {"c": cums.c, "intercepts": cums.intercepts}

    stage("legendre")
    h_grid = _auto_h_grid(config, zeta_est.zeta, p_grid)
    spectrum = legendre_spectrum(zeta_est, h_grid)
    record["spectrum"] = {
        "h": spectrum.h,
        "L": spectrum.values,
        "h_min_support": spectrum.h_min_support,
        "h_max_support": spectrum.h_max_support,
        "argmax_h": spectrum.argmax_h,
        "decreasing_branch_available": spectrum.decreasing_branch_available,
    }

    stage("membership")
    zeta_raw = zeta_est
    if s != 0.0 and hmin > 0:
        raw_table = structure_functions(compute_leaders(pyramid), "leaders", p_grid)
        zeta_raw = fit_scaling_function(raw_table, reg)
    finite = np.isfinite(zeta_raw.zeta)
    zeta_on_pos = np.interp(p_pos, p_grid[finite], zeta_raw.zeta[finite])
    combined = eta_est.merged(zeta=zeta_on_pos, hmin=hmin)
    record["verdicts"] = membership_tests(combined).as_dict()

    stage("subordination")
    try:
        sub = infer_subordination_H(eta_est)
        record["subordination"] = {
            "H": sub.H,
            "p_root": sub.p_root,
            "bracket_width": sub.bracket_width,
        }
    except NoRootError as exc:
        record["subordination"] = {"H": None, "note": str(exc)}

    if config.bootstrap:
        stage("bootstrap")
        bconf = BootstrapConfig(
            resamples=config.bootstrap_resamples,
            block_length=config.block_length,
            ci_level=config.ci_level,
            seed=config.bootstrap_seed,
        )
        lead_ci = bootstrap_ci(
            lead, reg, bconf, p_grid=p_grid, cumulant_order=config.cumulants, h_grid=h_grid
        )
        coef_ci = bootstrap_ci(pyramid, reg, bconf, p_grid=p_pos)
        ci_doc = {}
        for key, ci in {**coef_ci.ci, **lead_ci.ci}.items():
            ci_doc[key] = {
                "lo": ci.lo,
                "hi": ci.hi,
                "level": ci.level,
                "B": ci.n_resamples,
            }
        record["ci"] = ci_doc
    return record


def _windows(signal: Signal, length: int, hop: int):
    n = signal.samples.shape[0]
    start = 0
    while start + length <= n:
        yield start, Signal(signal.samples[start : start + length], signal.sample_spacing)
        start += hop


def run_pipeline(config: PipelineConfig) -> dict:
    """Execute the pipeline per config; writes artifacts when out_dir is set.

    On a post-ingest stage failure, partial results are written with a
    failure marker naming the stage, then the error is re-raised for the
    CLI to map onto an exit code.
    """
    signal, input_meta = _ingest(config)
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": config.to_dict(),
        "input": input_meta,
    }
    try:
        if config.window_length:
            hop = config.window_hop or config.window_length
            if signal.dimension != 1:
                raise InvalidArgumentError("windowed mode supports 1D signals only")
            records = []
            for start, window in _windows(signal, config.window_length, hop):
                rec = analyze_signal(window, config)
                rec["window"] = {"start": start, "length": config.window_length}
                records.append(rec)
            if not records:
                raise InvalidArgumentError("signal shorter than one window")
            doc["windows"] = records
        else:
            doc.update(analyze_signal(signal, config))
    except AnalysisError as exc:
        partial = getattr(exc, "partial_record", None)
        stages = (partial or {}).get("stages") or ["analyze"]
        doc["failed_stage"] = stages[-1]
        doc["error"] = str(exc)
        if partial:
            doc.update({k: v for k, v in partial.items() if k != "stages"})
        if config.out_dir:
            _write_outputs(doc, config, partial=True)
        raise
    if config.out_dir:
        _write_outputs(doc, config)
    return doc


def _write_outputs(doc: dict, config: PipelineConfig, partial: bool = False) -> None:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if partial:
        doc = dict(doc)
        doc["partial"] = True
    io.write_result_json(out / "result.json", doc)
    rec = doc.get("windows", [doc])[0] if "windows" in doc else doc
    if partial or "zeta" not in rec:
        return
    eta_interp = np.interp(rec["zeta"]["p"], rec["eta"]["p"], rec["eta"]["value"])
    io.write_csv(
        out / "zeta.csv",
        ["p", "zeta", "eta"],
        [rec["zeta"]["p"], rec["zeta"]["value"], eta_interp],
    )
    io.write_csv(out / "spectrum.csv", ["h", "L"], [rec["spectrum"]["h"], rec["spectrum"]["L"]])
    cums = rec["cumulants"]
    io.write_csv(
        out / "cumulants.csv",
        ["m", "c", "intercept"],
        [np.arange(1, len(cums["c"]) + 1), cums["c"], cums["intercepts"]],
    )
