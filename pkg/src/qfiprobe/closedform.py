"""Closed-form quantum Fisher information for the entangled qubit probe.

The probe is sqrt(1-kappa)|0'..0'> + sqrt(kappa)|1'..1'> on ``n_total``
qubits, of which the first ``n_active`` pass through the phase rotation and
the noise channel.  The QFI admits a closed form built from two weights
``beta0``/``beta1`` (per-branch population factors of the noisy state); the
whole evaluation is done in log domain so that probe sizes up to 10**6
neither underflow nor overflow.

Everything here is a pure function of immutable values; the ``*_for_sizes``
helpers evaluate whole ranges of probe sizes at once and share their
arithmetic with the scalar entry points, so scan results and pointwise
recomputations agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import NoiseParams, coeffs
from .errors import DomainError, RangeError

_LOG4 = math.log(4.0)
_NEG_INF = float("-inf")


@dataclass(frozen=True)
class ProbeConfig:
    """Probe shape: total size, active count and entanglement degree kappa."""

    n_total: int
    kappa: float
    n_active: int | None = None

    def __post_init__(self) -> None:
        if self.n_active is None:
            object.__setattr__(self, "n_active", self.n_total)
        if int(self.n_total) != self.n_total or self.n_total < 1:
            raise RangeError(f"n_total = {self.n_total} must be a positive integer")
        if int(self.n_active) != self.n_active or not 1 <= self.n_active <= self.n_total:
            raise RangeError(
                f"n_active = {self.n_active} must satisfy 1 <= n_active <= {self.n_total}"
            )
        if not 0.0 <= self.kappa <= 1.0:
            raise RangeError(f"kappa = {self.kappa} outside [0, 1]")

    @property
    def full(self) -> bool:
        return self.n_active == self.n_total


@dataclass(frozen=True)
class BetaPair:
    """The two branch weights entering the QFI denominator, with log values."""

    beta0: float
    beta1: float
    log_beta0: float
    log_beta1: float


@dataclass(frozen=True)
class QfiResult:
    value: float
    log_value: float
    betas: BetaPair


def _log_pos(x):
    """Elementwise ln(x) with the convention ln(0) = -inf; x must be >= 0."""
    x = np.asarray(x, dtype=np.float64)
    mask = x > 0.0
    return np.where(mask, np.log(np.where(mask, x, 1.0)), _NEG_INF)


def _log_betas(alpha0: float, alpha1: float, n_active, include_tail: bool):
    """Log-domain branch weights; the tail terms are present only for a
    fully active probe (every qubit exposed to the channel)."""
    n = np.asarray(n_active, dtype=np.float64)
    lb0 = n * _log_pos(0.5 * (1.0 + alpha0))
    lb1 = n * _log_pos(0.5 * (1.0 + alpha1))
    if include_tail:
        lb0 = np.logaddexp(lb0, n * _log_pos(0.5 * (1.0 - alpha0)))
        lb1 = np.logaddexp(lb1, n * _log_pos(0.5 * (1.0 - alpha1)))
    return lb0, lb1


def _log_qfi(alpha0: float, alpha1: float, mu2: float, n_active, include_tail: bool, kappa):
    """Log of the closed-form QFI; numerator-first, so an exactly zero
    numerator yields -inf regardless of the denominator."""
    n = np.asarray(n_active, dtype=np.float64)
    kap = np.asarray(kappa, dtype=np.float64)
    lb0, lb1 = _log_betas(alpha0, alpha1, n, include_tail)
    log_num = (
        _LOG4
        + _log_pos(kap)
        + _log_pos(1.0 - kap)
        + 2.0 * np.log(n)
        + 2.0 * n * _log_pos(mu2)
    )
    log_den = np.logaddexp(_log_pos(1.0 - kap) + lb0, _log_pos(kap) + lb1)
    zero = np.isneginf(log_num)
    log_f = log_num - np.where(zero, 0.0, log_den)
    return log_f, lb0, lb1


def betas(noise: NoiseParams, probe: ProbeConfig) -> BetaPair:
    """Branch weights for the given noise and probe shape."""
    al = coeffs(noise)
    lb0, lb1 = _log_betas(al.alpha0, al.alpha1, probe.n_active, probe.full)
    return BetaPair(
        beta0=float(np.exp(lb0)),
        beta1=float(np.exp(lb1)),
        log_beta0=float(lb0),
        log_beta1=float(lb1),
    )


def qfi(noise: NoiseParams, probe: ProbeConfig) -> QfiResult:
    """Quantum Fisher information of the noisy entangled probe.

    Returns the value together with its natural log (-inf when the value is
    exactly zero, i.e. kappa in {0, 1} or mu2 = 0) and the branch weights.
    """
    al = coeffs(noise)
    log_f, lb0, lb1 = _log_qfi(
        al.alpha0, al.alpha1, noise.mu2, probe.n_active, probe.full, probe.kappa
    )
    pair = BetaPair(float(np.exp(lb0)), float(np.exp(lb1)), float(lb0), float(lb1))
    return QfiResult(value=float(np.exp(log_f)), log_value=float(log_f), betas=pair)


def qfi_separable(noise: NoiseParams, n: int) -> float:
    """QFI of the best separable probe: n independent qubits, n * mu2**2."""
    if int(n) != n or n < 1:
        raise RangeError(f"n = {n} must be a positive integer")
    return float(n) * noise.mu2 ** 2


def qfi_asymptotic(noise: NoiseParams, kappa: float, n: int) -> float:
    """Large-size form 4*kappa*n^2*(2*mu2^2/(1+mu1+mu0))^n.

    Only the mu0 >= 0 branch is implemented; for mu0 < 0 negate mu and map
    kappa to 1-kappa first (the QFI is invariant under that swap).
    """
    if noise.mu0 < 0.0:
        raise DomainError("mu0 < 0: apply the sign symmetry (mu -> -mu, kappa -> 1-kappa)")
    if int(n) != n or n < 1:
        raise RangeError(f"n = {n} must be a positive integer")
    if not 0.0 <= kappa <= 1.0:
        raise RangeError(f"kappa = {kappa} outside [0, 1]")
    nf = np.float64(n)
    log_ratio = math.log(2.0) + 2.0 * _log_pos(noise.mu2) - np.log1p(noise.mu1 + noise.mu0)
    log_f = _LOG4 + _log_pos(kappa) + 2.0 * np.log(nf) + nf * log_ratio
    return float(np.exp(log_f))


def n_opt_analytic(noise: NoiseParams) -> float:
    """Analytic (real-valued) optimal probe size 2/ln((1+mu1+mu0)/(2*mu2^2)).

    Accurate when the optimum is large; raises DomainError in the noiseless
    limit 2*mu2^2 >= 1 + mu1 + mu0 where no finite optimum exists, and for
    mu0 < 0 (apply the sign symmetry first).
    """
    if noise.mu0 < 0.0:
        raise DomainError("mu0 < 0: apply the sign symmetry (mu -> -mu, kappa -> 1-kappa)")
    log_ratio = float(np.log1p(noise.mu1 + noise.mu0) - math.log(2.0) - 2.0 * _log_pos(noise.mu2))
    if log_ratio <= 0.0:
        raise DomainError(
            "2*mu2^2 >= 1 + mu1 + mu0: the QFI grows without a finite optimal size"
        )
    return 2.0 / log_ratio


def kappa_opt(noise: NoiseParams, n_total: int, n_active: int | None = None) -> float:
    """Entanglement degree maximizing the QFI at fixed probe shape.

    Evaluated as 1/(1 + exp((ln beta1 - ln beta0)/2)) so that extreme branch
    weights cannot overflow.
    """
    probe = ProbeConfig(n_total=n_total, kappa=0.5, n_active=n_active)
    al = coeffs(noise)
    lb0, lb1 = _log_betas(al.alpha0, al.alpha1, probe.n_active, probe.full)
    if np.isneginf(lb0):
        return 0.0
    return float(1.0 / (1.0 + np.exp(0.5 * (lb1 - lb0))))


def qfi_frequency(noise: NoiseParams, probe: ProbeConfig, interaction_time: float) -> float:
    """QFI about an angular frequency acting for a fixed time T: T^2 * qfi."""
    if not interaction_time > 0.0:
        raise RangeError(f"interaction_time = {interaction_time} must be positive")
    return interaction_time ** 2 * qfi(noise, probe).value


def kappa_opt_for_sizes(noise: NoiseParams, n_active: np.ndarray, full_probe: bool = True) -> np.ndarray:
    """Vectorized kappa_opt over an array of active-qubit counts."""
    al = coeffs(noise)
    lb0, lb1 = _log_betas(al.alpha0, al.alpha1, n_active, full_probe)
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(0.5 * (lb1 - lb0)))


def log_qfi_for_sizes(
    noise: NoiseParams, n_active: np.ndarray, kappa, full_probe: bool = True
) -> np.ndarray:
    """Vectorized log-QFI over an array of active-qubit counts.

    ``kappa`` may be a scalar or an array aligned with ``n_active``.  Shares
    its arithmetic with :func:`qfi`, so pointwise recomputation reproduces
    scan entries exactly.
    """
    al = coeffs(noise)
    log_f, _, _ = _log_qfi(al.alpha0, al.alpha1, noise.mu2, n_active, full_probe, kappa)
    return log_f
