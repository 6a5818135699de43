"""Phase-covariant single-qubit noise channel.

The channel commutes with rotations about a fixed axis and is parameterized
by four real numbers: a longitudinal contraction ``mu1`` of the Bloch vector
along the axis, a transverse contraction ``mu2`` in the plane orthogonal to
it, an equilibrium-bias parameter ``mu`` fixing where the qubit relaxes on
the axis, and a coherent rotation angle ``omega_t`` picked up during the
noise interaction.  Depolarizing, phase-flip and (generalized) amplitude
damping noise are all special cases.

Complete positivity is gated on the sufficient condition ``mu2**2 <= mu1``
(with a small slack so that amplitude damping, which saturates the bound,
passes).  A numerical Choi-matrix diagnostic is available separately and
does not assume that gate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CompletePositivityError, RangeError

# Slack on the mu2^2 <= mu1 gate; amplitude damping sits exactly on the bound.
CP_SLACK = 1e-12

# A Choi matrix counts as positive semidefinite down to this eigenvalue.
CHOI_TOL = 1e-10

PRESET_NAMES = (
    "noiseless",
    "depolarizing",
    "phase-flip",
    "amplitude-damping",
    "gad",
    "custom",
)


@dataclass(frozen=True)
class NoiseParams:
    """Parameters of the phase-covariant qubit channel.

    Direct construction checks only the box ranges, so that the Choi
    diagnostic can inspect channels violating the complete-positivity gate.
    Use :func:`make_noise` (or :func:`preset`) to construct gated, fully
    validated parameters.
    """

    mu: float
    mu1: float
    mu2: float
    omega_t: float = 0.0

    def __post_init__(self) -> None:
        if not -1.0 <= self.mu <= 1.0:
            raise RangeError(f"mu = {self.mu} outside [-1, 1]")
        if not 0.0 <= self.mu1 <= 1.0:
            raise RangeError(f"mu1 = {self.mu1} outside [0, 1]")
        if not 0.0 <= self.mu2 <= 1.0:
            raise RangeError(f"mu2 = {self.mu2} outside [0, 1]")
        if not math.isfinite(self.omega_t):
            raise RangeError(f"omega_t = {self.omega_t} is not finite")

    @property
    def mu0(self) -> float:
        """Equilibrium shift along the axis, always derived as mu*(1 - mu1)."""
        return self.mu * (1.0 - self.mu1)


@dataclass(frozen=True)
class ChannelCoeffs:
    """Coefficients of the channel action on the axis-adapted operator basis."""

    alpha0: float
    alpha1: float
    alpha2: complex


@dataclass(frozen=True)
class BlochAffine:
    """Affine map r -> A r + c of the Bloch vector, in the axis-adapted frame.

    The frame is (in-plane unit vector, its in-plane orthogonal, rotation
    axis); the third coordinate is along the axis.
    """

    matrix_a: np.ndarray
    vector_c: np.ndarray


@dataclass(frozen=True)
class ChoiReport:
    """Outcome of the numerical complete-positivity diagnostic."""

    min_eigenvalue: float
    is_cp: bool


def make_noise(mu: float, mu1: float, mu2: float, omega_t: float = 0.0) -> NoiseParams:
    """Build validated noise parameters.

    Raises RangeError if any parameter leaves its box, and
    CompletePositivityError if mu2**2 > mu1 (up to a 1e-12 slack).
    """
    noise = NoiseParams(float(mu), float(mu1), float(mu2), float(omega_t))
    if noise.mu2 ** 2 > noise.mu1 + CP_SLACK:
        raise CompletePositivityError(
            f"mu2^2 = {noise.mu2 ** 2:.6g} exceeds mu1 = {noise.mu1:.6g}; "
            "channel is not completely positive"
        )
    return noise


def preset(
    name: str,
    param: float | None = None,
    *,
    mu: float | None = None,
    mu1: float | None = None,
    mu2: float | None = None,
    omega_t: float = 0.0,
) -> NoiseParams:
    """Construct one of the named noise channels.

    ``param`` is the preset's main knob: the contraction factor for
    ``depolarizing``, mu2 for ``phase-flip``, mu1 for ``amplitude-damping``
    and ``gad`` (which additionally needs ``mu``).  ``custom`` takes the raw
    ``mu``, ``mu1``, ``mu2`` keywords.
    """
    key = name.strip().lower().replace("_", "-")
    if key == "noiseless":
        return make_noise(0.0, 1.0, 1.0, omega_t)
    if key == "depolarizing":
        _require_param(key, param)
        return make_noise(0.0, param, param, omega_t)
    if key == "phase-flip":
        _require_param(key, param)
        return make_noise(0.0, 1.0, param, omega_t)
    if key == "amplitude-damping":
        _require_param(key, param)
        return make_noise(1.0, param, math.sqrt(param), omega_t)
    if key == "gad":
        _require_param(key, param)
        if mu is None:
            raise RangeError("preset 'gad' needs the equilibrium bias mu")
        return make_noise(mu, param, math.sqrt(param), omega_t)
    if key == "custom":
        if mu is None or mu1 is None or mu2 is None:
            raise RangeError("preset 'custom' needs mu, mu1 and mu2")
        return make_noise(mu, mu1, mu2, omega_t)
    raise RangeError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")


def _require_param(name: str, param: float | None) -> None:
    if param is None:
        raise RangeError(f"preset {name!r} needs a parameter value")
    if not 0.0 <= param <= 1.0:
        raise RangeError(f"preset {name!r} parameter {param} outside [0, 1]")


def coeffs(noise: NoiseParams) -> ChannelCoeffs:
    """Coefficients (alpha0, alpha1, alpha2) of the operator-basis action."""
    mu0 = noise.mu0
    return ChannelCoeffs(
        alpha0=noise.mu1 + mu0,
        alpha1=noise.mu1 - mu0,
        alpha2=noise.mu2 * cmath.exp(-1j * noise.omega_t),
    )


def bloch_affine(noise: NoiseParams) -> BlochAffine:
    """Bloch-ball affine representation in the axis-adapted frame."""
    c, s = math.cos(noise.omega_t), math.sin(noise.omega_t)
    a = np.array(
        [
            [noise.mu2 * c, -noise.mu2 * s, 0.0],
            [noise.mu2 * s, noise.mu2 * c, 0.0],
            [0.0, 0.0, noise.mu1],
        ]
    )
    return BlochAffine(matrix_a=a, vector_c=np.array([0.0, 0.0, noise.mu0]))


def choi_matrix(noise: NoiseParams) -> np.ndarray:
    """Unnormalized 4x4 Choi matrix of the single-qubit channel.

    Built in the axis-adapted basis, where the channel maps the four
    operator units by the alpha coefficients; positivity of the spectrum is
    basis independent.
    """
    al = coeffs(noise)
    units = np.zeros((2, 2, 2, 2), dtype=complex)
    units[0, 0] = np.diag([0.5 * (1.0 + al.alpha0), 0.5 * (1.0 - al.alpha0)])
    units[1, 1] = np.diag([0.5 * (1.0 - al.alpha1), 0.5 * (1.0 + al.alpha1)])
    units[0, 1] = np.array([[0.0, al.alpha2], [0.0, 0.0]])
    units[1, 0] = np.array([[0.0, 0.0], [np.conj(al.alpha2), 0.0]])
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            basis = np.zeros((2, 2))
            basis[i, j] = 1.0
            choi += np.kron(basis, units[i, j])
    return choi


def validate_choi(noise: NoiseParams) -> ChoiReport:
    """Numerically check complete positivity via the Choi spectrum.

    Accepts box-valid parameters that were never passed through the
    mu2^2 <= mu1 gate; this is a diagnostic, not a constructor guard.
    """
    eigenvalues = np.linalg.eigvalsh(choi_matrix(noise))
    lo = float(eigenvalues[0])
    return ChoiReport(min_eigenvalue=lo, is_cp=lo >= -CHOI_TOL)
