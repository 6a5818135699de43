"""Brute-force QFI oracle on the full 2^N x 2^N density matrix.

Independent verification path for the closed form: build the probe state
vector, rotate the active qubits, push the density matrix through the noise
channel qubit by qubit, and evaluate the general eigendecomposition formula

    F_q = 2 * sum_{j,k} |<j| drho |k>|^2 / (lambda_j + lambda_k)

over all eigenpairs with lambda_j + lambda_k above a small tolerance.  No
closed-form expression for the QFI is used anywhere here; the only shared
ingredient with the analytic path is the definition of the channel itself.

Dense matrices cap the probe at ORACLE_SIZE_CAP qubits; the closed form
covers larger sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import NoiseParams, coeffs
from .closedform import ProbeConfig
from .errors import NumericalError, RangeError, SizeError

ORACLE_SIZE_CAP = 12

# Eigenvalue-pair exclusion tolerance; absolute, since trace one fixes the scale.
PAIR_TOL = 1e-12

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class Axis:
    """Rotation axis given by coelevation theta_n and azimuth phi_n."""

    theta_n: float
    phi_n: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta_n <= math.pi:
            raise RangeError(f"theta_n = {self.theta_n} outside [0, pi]")
        if not 0.0 <= self.phi_n < 2.0 * math.pi:
            raise RangeError(f"phi_n = {self.phi_n} outside [0, 2*pi)")

    def unit_vector(self) -> np.ndarray:
        st, ct = math.sin(self.theta_n), math.cos(self.theta_n)
        return np.array([st * math.cos(self.phi_n), st * math.sin(self.phi_n), ct])

    def sigma(self) -> np.ndarray:
        """The spin observable n . sigma along this axis."""
        nx, ny, nz = self.unit_vector()
        return nx * _SIGMA_X + ny * _SIGMA_Y + nz * _SIGMA_Z

    def basis_states(self) -> tuple[np.ndarray, np.ndarray]:
        """Kets |0'>, |1'> with Bloch vectors +n and -n."""
        half = 0.5 * self.theta_n
        phase = np.exp(1j * self.phi_n)
        ket0 = np.array([math.cos(half), phase * math.sin(half)], dtype=complex)
        ket1 = np.array([math.sin(half), -phase * math.cos(half)], dtype=complex)
        return ket0, ket1

    def frame(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Right-handed Bloch frame (e1, e2, n) with e1 the Bloch vector of
        the balanced superposition (|0'> + |1'>)/sqrt(2)."""
        ket0, ket1 = self.basis_states()
        plus = (ket0 + ket1) / math.sqrt(2.0)
        e1 = bloch_vector(np.outer(plus, plus.conj()))
        n = self.unit_vector()
        return e1, np.cross(n, e1), n


@dataclass(frozen=True)
class QfiOracleResult:
    value: float
    spectrum: np.ndarray
    excluded_pairs: int


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch vector of a single-qubit density matrix."""
    return np.array(
        [
            np.trace(rho @ _SIGMA_X).real,
            np.trace(rho @ _SIGMA_Y).real,
            np.trace(rho @ _SIGMA_Z).real,
        ]
    )


def density_from_bloch(r) -> np.ndarray:
    """Single-qubit density matrix with the given Bloch vector."""
    rx, ry, rz = (float(v) for v in r)
    return 0.5 * (np.eye(2, dtype=complex) + rx * _SIGMA_X + ry * _SIGMA_Y + rz * _SIGMA_Z)


def rotation_unitary(xi: float, axis: Axis) -> np.ndarray:
    """Single-qubit rotation exp(-i*(xi/2)*n.sigma)."""
    return math.cos(0.5 * xi) * np.eye(2, dtype=complex) - 1j * math.sin(0.5 * xi) * axis.sigma()


def _check_size(n_total: int) -> None:
    if int(n_total) != n_total or n_total < 1:
        raise RangeError(f"n_total = {n_total} must be a positive integer")
    if n_total > ORACLE_SIZE_CAP:
        raise SizeError(f"n_total = {n_total} exceeds the oracle cap {ORACLE_SIZE_CAP}")


def _branch_kets(n_total: int, axis: Axis) -> tuple[np.ndarray, np.ndarray]:
    ket0, ket1 = axis.basis_states()
    v0, v1 = ket0, ket1
    for _ in range(n_total - 1):
        v0 = np.kron(v0, ket0)
        v1 = np.kron(v1, ket1)
    return v0, v1


def probe_state(n_total: int, kappa: float, axis: Axis) -> np.ndarray:
    """State vector sqrt(1-kappa)|0'>^n + sqrt(kappa)|1'>^n."""
    _check_size(n_total)
    if not 0.0 <= kappa <= 1.0:
        raise RangeError(f"kappa = {kappa} outside [0, 1]")
    v0, v1 = _branch_kets(n_total, axis)
    return math.sqrt(1.0 - kappa) * v0 + math.sqrt(kappa) * v1


def _apply_gate(state: np.ndarray, gate: np.ndarray, qubit: int, n_total: int) -> np.ndarray:
    pre, post = 2 ** qubit, 2 ** (n_total - qubit - 1)
    tensor = state.reshape(pre, 2, post)
    return np.einsum("ij,pjq->piq", gate, tensor).reshape(-1)


def apply_phase_unitary(state: np.ndarray, xi: float, axis: Axis, n_active: int) -> np.ndarray:
    """Rotate the first ``n_active`` qubits by xi about the axis."""
    n_total = state.shape[0].bit_length() - 1
    if not 0 <= n_active <= n_total:
        raise RangeError(f"n_active = {n_active} outside [0, {n_total}]")
    gate = rotation_unitary(xi, axis)
    out = state
    for q in range(n_active):
        out = _apply_gate(out, gate, q, n_total)
    return out


def single_qubit_channel_matrix(noise: NoiseParams, axis: Axis) -> np.ndarray:
    """Channel as a (2,2,2,2) tensor in the computational basis.

    ``m[i, j, k, l]`` is the coefficient of output unit |i><j| produced by
    input unit |k><l|.  Built by conjugating the axis-adapted action (the
    alpha-coefficient rules) with the axis rotation, once per channel.
    """
    al = coeffs(noise)
    ket0, ket1 = axis.basis_states()
    rot = np.column_stack([ket0, ket1])
    m = np.zeros((2, 2, 2, 2), dtype=complex)
    for k in range(2):
        for l in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[k, l] = 1.0
            c = rot.conj().T @ unit @ rot
            out = np.array(
                [
                    [
                        0.5 * (1.0 + al.alpha0) * c[0, 0] + 0.5 * (1.0 - al.alpha1) * c[1, 1],
                        al.alpha2 * c[0, 1],
                    ],
                    [
                        np.conj(al.alpha2) * c[1, 0],
                        0.5 * (1.0 - al.alpha0) * c[0, 0] + 0.5 * (1.0 + al.alpha1) * c[1, 1],
                    ],
                ]
            )
            m[:, :, k, l] = rot @ out @ rot.conj().T
    return m


def _apply_map(rho: np.ndarray, m: np.ndarray, qubit: int, n_total: int) -> np.ndarray:
    dim = rho.shape[0]
    pre, post = 2 ** qubit, 2 ** (n_total - qubit - 1)
    tensor = rho.reshape(pre, 2, post, pre, 2, post)
    out = np.einsum("ijkl,pkqrls->piqrjs", m, tensor)
    return out.reshape(dim, dim)


def apply_channel(rho: np.ndarray, noise: NoiseParams, axis: Axis, n_active: int) -> np.ndarray:
    """Apply the noise channel to the first ``n_active`` qubits of rho.

    Works qubit by qubit as a linear map on the density matrix; the
    remaining qubits are untouched.
    """
    n_total = rho.shape[0].bit_length() - 1
    if not 0 <= n_active <= n_total:
        raise RangeError(f"n_active = {n_active} outside [0, {n_total}]")
    m = single_qubit_channel_matrix(noise, axis)
    out = rho
    for q in range(n_active):
        out = _apply_map(out, m, q, n_total)
    return out


def check_density_matrix(rho: np.ndarray, *, atol: float = 1e-12) -> None:
    """Raise NumericalError unless rho is Hermitian with unit trace."""
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise NumericalError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise NumericalError(f"density matrix trace {np.trace(rho):.6g} != 1")


def qfi_eq1(rho: np.ndarray, drho: np.ndarray, *, tol: float = PAIR_TOL) -> QfiOracleResult:
    """General QFI from the eigendecomposition of rho.

    Sums 2*|<j|drho|k>|^2/(lambda_j + lambda_k) over every eigenpair whose
    eigenvalue sum exceeds ``tol``, and reports how many pairs were dropped.
    """
    if np.max(np.abs(drho - drho.conj().T)) > 1e-12:
        raise NumericalError("drho is not Hermitian")
    try:
        lam, vec = np.linalg.eigh(rho)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    if abs(float(np.sum(lam)) - 1.0) > 1e-10:
        raise NumericalError(f"spectrum sums to {np.sum(lam):.12g} != 1")
    if float(lam[0]) < -1e-10:
        raise NumericalError(f"negative eigenvalue {lam[0]:.3e} in rho")
    overlap = vec.conj().T @ drho @ vec
    pair_sum = lam[:, None] + lam[None, :]
    mask = pair_sum > tol
    value = 2.0 * float(np.sum((np.abs(overlap) ** 2)[mask] / pair_sum[mask]))
    return QfiOracleResult(
        value=value,
        spectrum=lam,
        excluded_pairs=int(pair_sum.size - np.count_nonzero(mask)),
    )


def qfi_bruteforce(
    noise: NoiseParams,
    probe: ProbeConfig,
    axis: Axis,
    xi: float,
    derivative_mode: str = "analytic",
    fd_step: float = 1e-6,
) -> QfiOracleResult:
    """Full pipeline: probe state -> rotation -> channel -> general QFI.

    ``derivative_mode`` selects how the derivative of the noisy state is
    obtained: "analytic" pushes the commutator with the rotation generator
    through the channel (exact by linearity), "finite_difference" uses a
    central difference of step ``fd_step`` on the phase.
    """
    _check_size(probe.n_total)
    n, n1 = probe.n_total, probe.n_active

    psi0 = probe_state(n, probe.kappa, axis)
    psi1 = apply_phase_unitary(psi0, xi, axis, n1)
    rho_xi = apply_channel(np.outer(psi1, psi1.conj()), noise, axis, n1)
    check_density_matrix(rho_xi)

    if derivative_mode == "analytic":
        generator = axis.sigma()
        acc = np.zeros_like(psi1)
        for q in range(n1):
            acc = acc + _apply_gate(psi1, generator, q, n)
        dpsi = -0.5j * acc
        drho1 = np.outer(dpsi, psi1.conj()) + np.outer(psi1, dpsi.conj())
        drho = apply_channel(drho1, noise, axis, n1)
    elif derivative_mode == "finite_difference":
        if not fd_step > 0.0:
            raise RangeError(f"fd_step = {fd_step} must be positive")
        rhos = []
        for shift in (fd_step, -fd_step):
            psi = apply_phase_unitary(psi0, xi + shift, axis, n1)
            rhos.append(apply_channel(np.outer(psi, psi.conj()), noise, axis, n1))
        drho = (rhos[0] - rhos[1]) / (2.0 * fd_step)
        # dividing by 2h amplifies roundoff asymmetry past the Hermiticity check
        drho = 0.5 * (drho + drho.conj().T)
    else:
        raise RangeError(f"unknown derivative_mode {derivative_mode!r}")

    return qfi_eq1(rho_xi, drho)
