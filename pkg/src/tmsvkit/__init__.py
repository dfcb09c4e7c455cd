"""tmsvkit: figures of merit for photon-subtracted and photon-added
two-mode squeezed vacuum states.

Closed-form entanglement entropy, EPR correlation, two-mode and sum
squeezing, and ideal unit-gain teleportation fidelities, each backed by an
independent truncated-Fock brute-force oracle.
"""

from .errors import (
    BracketError,
    ConvergenceError,
    CutoffError,
    DegenerateStateError,
    EnvelopeError,
    HeadroomError,
    TmsvKitError,
)
from .gfn import ExponentForm, Poly4, extract_coefficient, wick_extract
from .metrics import (
    MetricsReport,
    SumSqueezeQuery,
    epr_correlation,
    metrics_report,
    quadrature_variances,
    solve_r_for_entropy,
    solve_r_for_epr,
    sum_squeezing,
    sum_squeezing_optimal,
)
from .moments import (
    KIND_ADD,
    KIND_SUBTRACT,
    ExpectationSet,
    MomentQuery,
    ResourceSpec,
    ladder_expectation,
    moment_antinormal,
    moment_normal,
    normalization,
    resource_expectations,
)
from .special import LogReal, jacobi, legendre, log_factorial
from .states import (
    SchmidtSpectrum,
    TruncatedTwoModeState,
    build_state,
    dump_state_csv,
    entropy,
    schmidt,
    tmsv_entropy,
)
from .teleport import (
    FidelityResult,
    InputState,
    coherent_input,
    fidelity_coherent,
    fidelity_one_mode,
    fidelity_quadrature,
    fidelity_squeezed,
    parametric_curve,
    squeezed_input,
    tmsv_squeezed_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "ConvergenceError",
    "CutoffError",
    "DegenerateStateError",
    "EnvelopeError",
    "HeadroomError",
    "TmsvKitError",
    "ExponentForm",
    "Poly4",
    "extract_coefficient",
    "wick_extract",
    "MetricsReport",
    "SumSqueezeQuery",
    "epr_correlation",
    "metrics_report",
    "quadrature_variances",
    "solve_r_for_entropy",
    "solve_r_for_epr",
    "sum_squeezing",
    "sum_squeezing_optimal",
    "KIND_ADD",
    "KIND_SUBTRACT",
    "ExpectationSet",
    "MomentQuery",
    "ResourceSpec",
    "ladder_expectation",
    "moment_antinormal",
    "moment_normal",
    "normalization",
    "resource_expectations",
    "LogReal",
    "jacobi",
    "legendre",
    "log_factorial",
    "SchmidtSpectrum",
    "TruncatedTwoModeState",
    "build_state",
    "dump_state_csv",
    "entropy",
    "schmidt",
    "tmsv_entropy",
    "FidelityResult",
    "InputState",
    "coherent_input",
    "fidelity_coherent",
    "fidelity_one_mode",
    "fidelity_quadrature",
    "fidelity_squeezed",
    "parametric_curve",
    "squeezed_input",
    "tmsv_squeezed_fidelity",
    "__version__",
]
