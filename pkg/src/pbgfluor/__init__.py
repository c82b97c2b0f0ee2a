"""Resonance fluorescence of a driven two-level atom near a photonic
band edge, computed by frequency-domain linearized Bloch equations.

The package exposes two reservoir models behind one parameter type: the
flat free-space vacuum, where everything reduces to the Mollow triplet,
and the anisotropic band-edge reservoir with its square-root density of
states, one-sided emission support, and non-Lorentzian lines.
"""

from .bloch import (CONDITIONING_TOL, Shorthand, SteadyState, SystemMatrix,
                    denominator, ill_conditioned, shorthand,
                    solution_coefficients, steady_state, system_matrix)
from .errors import ConditioningError, UnsupportedModelError
from .first_order import (FirstOrderNoise, OrderComparison, ShiftedKernels,
                          first_order_noise_correlations,
                          first_order_spectrum, first_order_steady_state,
                          first_order_system, order_comparison,
                          order_comparison_reduction_error, shifted_kernels)
from .kernels import (dos, memory_kernel, memory_kernel_conj, noise_strength,
                      shifted_noise_strengths)
from .oracle import (BlochTrajectory, CheckResult, TransformReport,
                     integrate_markovian_bloch, kernel_time_domain,
                     kernel_transform_check, markov_generator,
                     regression_spectrum, validate_suite)
from .params import (NormalizeResult, PhysicalParams, RawCouplingConstants,
                     ReservoirKind, ReservoirModel, compute_beta, normalize)
from .spectrum import (Peak, PeakTable, ScanRow, SpectrumResult, build_grid,
                       compute_spectrum, default_grid, effective_gamma,
                       free_space_spectrum, mollow_limit_spectrum,
                       offset_scan, peak_analysis, pbg_noise_correlations,
                       pbg_spectrum, total_power)

__version__ = "0.1.0"

__all__ = [
    "CONDITIONING_TOL",
    "BlochTrajectory",
    "CheckResult",
    "ConditioningError",
    "FirstOrderNoise",
    "NormalizeResult",
    "OrderComparison",
    "Peak",
    "PeakTable",
    "PhysicalParams",
    "RawCouplingConstants",
    "ReservoirKind",
    "ReservoirModel",
    "ScanRow",
    "ShiftedKernels",
    "Shorthand",
    "SpectrumResult",
    "SteadyState",
    "SystemMatrix",
    "TransformReport",
    "UnsupportedModelError",
    "build_grid",
    "compute_beta",
    "compute_spectrum",
    "default_grid",
    "denominator",
    "dos",
    "effective_gamma",
    "first_order_noise_correlations",
    "first_order_spectrum",
    "first_order_steady_state",
    "first_order_system",
    "free_space_spectrum",
    "ill_conditioned",
    "integrate_markovian_bloch",
    "kernel_time_domain",
    "kernel_transform_check",
    "markov_generator",
    "memory_kernel",
    "memory_kernel_conj",
    "mollow_limit_spectrum",
    "noise_strength",
    "normalize",
    "offset_scan",
    "order_comparison",
    "order_comparison_reduction_error",
    "pbg_noise_correlations",
    "pbg_spectrum",
    "peak_analysis",
    "regression_spectrum",
    "shifted_kernels",
    "shifted_noise_strengths",
    "shorthand",
    "solution_coefficients",
    "steady_state",
    "system_matrix",
    "total_power",
    "validate_suite",
    "__version__",
]
