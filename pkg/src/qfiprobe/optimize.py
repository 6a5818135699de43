"""Optimal probe size and entanglement degree for a given noise channel.

The size scan is exhaustive over integers (the QFI is not provably unimodal
in the probe size), evaluated in log domain over the whole range at once.
Ties break toward the smallest size, the cheapest probe to prepare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closedform
from .channel import NoiseParams, preset
from .closedform import ProbeConfig
from .errors import BracketError, DegenerateError, RangeError

DEFAULT_N_MAX = 100_000

PREDICATES = ("n_opt_gt_1", "ratio_gt_1", "inactive_beats_full", "inactive_beats_separable")


@dataclass(frozen=True)
class OptimalSetting:
    """Best probe size/entanglement for a noise channel, with comparison ratios.

    ``cap_warning`` is set when the argmax hit the scan cap, meaning the true
    optimum may lie beyond it (e.g. noiseless growth).
    """

    n_opt: int
    kappa_opt: float
    fq_max: float
    log_fq_max: float
    ratio_vs_separable: float
    fq_per_qubit: float
    fq_over_n_sq: float
    cap_warning: bool


@dataclass(frozen=True)
class ComparisonReport:
    ratio: float
    per_qubit_entangled: float
    per_qubit_separable: float


@dataclass(frozen=True)
class BlockReport:
    block_size: int
    n_blocks: int
    total_qfi: float
    vs_separable_ratio: float


def optimize_n(
    noise: NoiseParams,
    kappa_policy: float | str = "opt",
    n_max: int = DEFAULT_N_MAX,
    inactive_qubit: bool = False,
) -> OptimalSetting:
    """Scan probe sizes 1..n_max and return the QFI maximizer.

    ``kappa_policy`` is either a fixed kappa or "opt" to re-optimize the
    entanglement degree at every size.  With ``inactive_qubit`` the scanned
    size is the active count and one untouched qubit rides along in the
    entangled probe.
    """
    if int(n_max) != n_max or n_max < 1:
        raise RangeError(f"n_max = {n_max} must be a positive integer")
    sizes = np.arange(1, n_max + 1)
    full = not inactive_qubit
    if isinstance(kappa_policy, str):
        if kappa_policy != "opt":
            raise RangeError(f"kappa_policy must be a float or 'opt', got {kappa_policy!r}")
        kappas = closedform.kappa_opt_for_sizes(noise, sizes, full_probe=full)
    else:
        if not 0.0 <= kappa_policy <= 1.0:
            raise RangeError(f"kappa = {kappa_policy} outside [0, 1]")
        kappas = np.full(sizes.shape, float(kappa_policy))
    log_values = closedform.log_qfi_for_sizes(noise, sizes, kappas, full_probe=full)

    best = int(np.argmax(log_values))  # first maximum: smallest-size tie-break
    n_opt = best + 1
    kap = float(kappas[best])
    probe = ProbeConfig(n_total=n_opt if full else n_opt + 1, kappa=kap, n_active=n_opt)
    result = closedform.qfi(noise, probe)  # recomputation identity with the scan

    separable = n_opt * noise.mu2 ** 2
    return OptimalSetting(
        n_opt=n_opt,
        kappa_opt=kap,
        fq_max=result.value,
        log_fq_max=result.log_value,
        ratio_vs_separable=result.value / separable if separable > 0.0 else math.nan,
        fq_per_qubit=result.value / n_opt,
        fq_over_n_sq=result.value / n_opt ** 2,
        cap_warning=n_opt == n_max,
    )


def compare_separable(noise: NoiseParams, setting: OptimalSetting) -> ComparisonReport:
    """Entangled optimum against the separable baseline of equal size."""
    if noise.mu2 == 0.0:
        raise DegenerateError("mu2 = 0: the separable baseline carries no information")
    per_sep = noise.mu2 ** 2
    return ComparisonReport(
        ratio=setting.fq_max / (setting.n_opt * per_sep),
        per_qubit_entangled=setting.fq_per_qubit,
        per_qubit_separable=per_sep,
    )


def partial_vs_maximal_entanglement(noise: NoiseParams, n_max: int = DEFAULT_N_MAX) -> float:
    """Gain of optimizing kappa over fixing kappa = 1/2, as a ratio of the
    two size-optimized maxima; equals 1 for unital noise."""
    opt = optimize_n(noise, "opt", n_max)
    half = optimize_n(noise, 0.5, n_max)
    if math.isinf(opt.log_fq_max) and math.isinf(half.log_fq_max):
        return 1.0
    return float(np.exp(opt.log_fq_max - half.log_fq_max))


def block_strategy(noise: NoiseParams, total_qubits: int, n_max: int = DEFAULT_N_MAX) -> BlockReport:
    """Split a qubit budget into independent optimally entangled blocks.

    The QFI is additive over independent blocks; qubits left over after
    filling whole blocks are used separably (each contributes mu2**2).  When
    the budget is below one block, everything is separable and the ratio is
    exactly 1.
    """
    if int(total_qubits) != total_qubits or total_qubits < 1:
        raise RangeError(f"total_qubits = {total_qubits} must be a positive integer")
    setting = optimize_n(noise, "opt", n_max)
    block_size = setting.n_opt
    n_blocks = total_qubits // block_size
    leftover = total_qubits - n_blocks * block_size
    total_qfi = n_blocks * setting.fq_max + leftover * noise.mu2 ** 2
    baseline = total_qubits * noise.mu2 ** 2
    return BlockReport(
        block_size=block_size,
        n_blocks=n_blocks,
        total_qfi=total_qfi,
        vs_separable_ratio=total_qfi / baseline if baseline > 0.0 else math.nan,
    )


def _make_predicate(
    name: str, noise_at: Callable[[float], NoiseParams], n_max: int, n_total: int
) -> Callable[[float], bool]:
    if name == "n_opt_gt_1":
        return lambda x: optimize_n(noise_at(x), "opt", n_max).n_opt > 1
    if name == "ratio_gt_1":

        def ratio_gt_1(x: float) -> bool:
            s = optimize_n(noise_at(x), "opt", n_max)
            return s.fq_max > s.n_opt * noise_at(x).mu2 ** 2

        return ratio_gt_1
    if name in ("inactive_beats_full", "inactive_beats_separable"):
        if n_total < 2:
            raise RangeError("inactive predicates need n_total >= 2")

        def inactive_value(x: float) -> float:
            nz = noise_at(x)
            kap = closedform.kappa_opt(nz, n_total, n_total - 1)
            probe = ProbeConfig(n_total=n_total, kappa=kap, n_active=n_total - 1)
            return closedform.qfi(nz, probe).value

        if name == "inactive_beats_full":

            def beats_full(x: float) -> bool:
                nz = noise_at(x)
                kap = closedform.kappa_opt(nz, n_total, n_total)
                full = closedform.qfi(nz, ProbeConfig(n_total=n_total, kappa=kap)).value
                return inactive_value(x) > full

            return beats_full

        return lambda x: inactive_value(x) > (n_total - 1) * noise_at(x).mu2 ** 2
    raise RangeError(f"unknown predicate {name!r}; choose from {', '.join(PREDICATES)}")


def find_threshold(
    noise_family: str | Callable[[float], NoiseParams],
    predicate: str,
    bracket: tuple[float, float],
    *,
    tol: float = 1e-4,
    n_max: int = 2000,
    grid_points: int = 400,
    n_total: int = 3,
) -> float:
    """Last parameter value where the predicate flips toward its high-end state.

    A uniform pre-scan over the bracket isolates the final sign change (the
    predicates are sawtooth-like in general, since the optimal size jumps),
    then bisection refines it to absolute tolerance ``tol``.  ``n_total``
    fixes the probe size for the inactive-qubit predicates.
    """
    if callable(noise_family):
        noise_at = noise_family
    else:
        family_name = str(noise_family)
        noise_at = lambda x: preset(family_name, x)  # noqa: E731
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise RangeError(f"bracket {bracket} must satisfy lo < hi")

    pred = _make_predicate(predicate, noise_at, n_max, n_total)
    xs = np.linspace(lo, hi, grid_points + 1)
    flags = [pred(float(x)) for x in xs]
    if flags[0] == flags[-1]:
        raise BracketError(
            f"predicate {predicate!r} is {flags[0]} at both ends of {bracket}"
        )
    changes = [i for i in range(grid_points) if flags[i] != flags[i + 1]]
    a, b = float(xs[changes[-1]]), float(xs[changes[-1] + 1])
    state_a = flags[changes[-1]]
    while b - a > tol:
        mid = 0.5 * (a + b)
        if pred(mid) == state_a:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)
