"""Quantum Fisher information of noisy entangled qubit probes.

Computes the phase-estimation QFI for N qubits prepared in a partially
entangled probe state and exposed to phase-covariant noise, cross-validates
the closed form against a brute-force density-matrix oracle, and finds the
probe size and entanglement degree maximizing the estimation efficiency.
"""

from .channel import (
    BlochAffine,
    ChannelCoeffs,
    ChoiReport,
    NoiseParams,
    PRESET_NAMES,
    bloch_affine,
    choi_matrix,
    coeffs,
    make_noise,
    preset,
    validate_choi,
)
from .closedform import (
    BetaPair,
    ProbeConfig,
    QfiResult,
    betas,
    kappa_opt,
    n_opt_analytic,
    qfi,
    qfi_asymptotic,
    qfi_frequency,
    qfi_separable,
)
from .errors import (
    BracketError,
    CompletePositivityError,
    DegenerateError,
    DomainError,
    NumericalError,
    QfiProbeError,
    RangeError,
    SizeError,
)
from .optimize import (
    BlockReport,
    ComparisonReport,
    OptimalSetting,
    block_strategy,
    compare_separable,
    find_threshold,
    optimize_n,
    partial_vs_maximal_entanglement,
)
from .oracle import (
    ORACLE_SIZE_CAP,
    Axis,
    QfiOracleResult,
    apply_channel,
    apply_phase_unitary,
    probe_state,
    qfi_bruteforce,
    qfi_eq1,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BetaPair",
    "BlochAffine",
    "BlockReport",
    "BracketError",
    "ChannelCoeffs",
    "ChoiReport",
    "ComparisonReport",
    "CompletePositivityError",
    "DegenerateError",
    "DomainError",
    "NoiseParams",
    "NumericalError",
    "ORACLE_SIZE_CAP",
    "OptimalSetting",
    "PRESET_NAMES",
    "ProbeConfig",
    "QfiOracleResult",
    "QfiProbeError",
    "QfiResult",
    "RangeError",
    "SizeError",
    "apply_channel",
    "apply_phase_unitary",
    "betas",
    "bloch_affine",
    "block_strategy",
    "choi_matrix",
    "coeffs",
    "compare_separable",
    "find_threshold",
    "kappa_opt",
    "make_noise",
    "n_opt_analytic",
    "optimize_n",
    "partial_vs_maximal_entanglement",
    "preset",
    "probe_state",
    "qfi",
    "qfi_asymptotic",
    "qfi_bruteforce",
    "qfi_eq1",
    "qfi_frequency",
    "qfi_separable",
    "validate_choi",
]
