"""Wavelet-leader multifractal analysis.

Synthesis of scaling processes with known multifractal properties, wavelet
coefficient / leader pyramids, scaling functions and log-cumulants, Legendre
spectra, function-space membership tests, and bootstrap confidence
intervals, for 1D signals and 2D images.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .bootstrap import CI, BootstrapConfig, bootstrap_ci
from .dwt import (
    CoefficientPyramid,
    Signal,
    WaveletFilter,
    design_daubechies_filter,
    dwt_forward,
    dwt_inverse,
    max_decomposition_level,
)
from .errors import (
    AnalysisError,
    DegenerateInputError,
    DegenerateLeaderError,
    IncompleteReportError,
    InsufficientDataError,
    InsufficientScalesError,
    InternalError,
    InvalidArgumentError,
    InvalidDataError,
    NoRootError,
)
from .fracint import pseudo_fractional_integrate, select_integration_order
from .geometry import (
    BinaryGrid,
    box_dimension,
    graph_dimension_from_oscillation,
    rasterize_von_koch,
)
from .leaders import LeaderPyramid, compute_leaders, pointwise_holder_estimate
from .pipeline import PipelineConfig, analyze_signal, run_pipeline
from .regression import RegressionConfig
from .scaling import (
    LegendreSpectrum,
    LogCumulants,
    MembershipReport,
    ScalingEstimate,
    StructureFunctionTable,
    estimate_hmin,
    estimate_log_cumulants,
    fit_scaling_function,
    infer_subordination_H,
    legendre_spectrum,
    membership_tests,
    structure_functions,
)
from .synth import (
    DeterministicWeights,
    GeneratorSpec,
    GroundTruth,
    LognormalMultipliers,
    LogPoissonMultipliers,
    lognormal_for_cumulants,
    make_rng,
    she_leveque_multipliers,
    squared_fbm_ground_truth,
    synth_calibrated_lognormal_cascade,
    synth_cascade,
    synth_fbm,
    synth_fbm_mf_time,
    synth_levy_stable,
    synth_weierstrass,
    synthesize,
    transform_square,
    wavelet_fractional_shift,
)

__version__ = "0.1.0"
