"""Command-line front end: point evaluation, sweeps, optimization, verification.

Subcommands: ``qfi`` (one closed-form evaluation as a CSV row), ``sweep``
(parameter or size sweeps to CSV, driven by flags or a JSON config whose
keys mirror the flags; flags override the config), ``optimize`` (optimal
probe report plus block strategy) and ``verify`` (randomized cross-check of
the closed form against the brute-force oracle).

All output is deterministic: CSV files start with ``#`` metadata lines
carrying the tool version and the resolved parameter set, floats print with
12 significant digits, lines end with LF.  Randomness in ``verify`` flows
from one 64-bit seed through numpy's PCG64 generator.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, closedform, optimize
from .channel import NoiseParams, PRESET_NAMES, preset
from .closedform import ProbeConfig
from .errors import QfiProbeError, RangeError
from .oracle import ORACLE_SIZE_CAP, Axis, qfi_bruteforce

VERIFY_THRESHOLD = 1e-9

_SWEEP_OUTPUTS = (
    "qfi",
    "qfi_full",
    "qfi_inactive",
    "qfi_separable",
    "kappa_opt",
    "n_opt",
    "fq_max",
    "ratio",
    "per_qubit",
    "fq_over_n_sq",
)
_OPTIMIZER_OUTPUTS = {"n_opt", "fq_max", "ratio", "per_qubit", "fq_over_n_sq"}


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    return format(float(value), ".12g")


def _kappa_arg(text: str):
    if text == "opt":
        return "opt"
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"kappa must be a real number or 'opt', got {text!r}") from exc


def _noise_from(args_like: dict) -> NoiseParams:
    name = args_like.get("preset")
    if name is None:
        raise RangeError("a --preset is required")
    return preset(
        name,
        args_like.get("param"),
        mu=args_like.get("mu"),
        mu1=args_like.get("mu1"),
        mu2=args_like.get("mu2"),
        omega_t=args_like.get("omega_t") or 0.0,
    )


def _resolve_kappa(kappa, noise: NoiseParams, n_total: int, n_active: int) -> float:
    if kappa == "opt":
        return closedform.kappa_opt(noise, n_total, n_active)
    return float(kappa)


# ---------------------------------------------------------------------------
# qfi


def cmd_qfi(args: argparse.Namespace) -> int:
    noise = _noise_from(vars(args))
    n = args.n
    if n is None:
        raise RangeError("--n is required")
    n_active = args.n_active if args.n_active is not None else n
    kappa = _resolve_kappa(args.kappa, noise, n, n_active)
    probe = ProbeConfig(n_total=n, kappa=kappa, n_active=n_active)
    result = closedform.qfi(noise, probe)

    header = "preset,param,mu,mu1,mu2,omega_t,n,n_active,kappa,qfi,qfi_separable,beta0,beta1"
    row = [
        args.preset,
        _fmt(args.param),
        _fmt(noise.mu),
        _fmt(noise.mu1),
        _fmt(noise.mu2),
        _fmt(noise.omega_t),
        _fmt(n),
        _fmt(n_active),
        _fmt(kappa),
        _fmt(result.value),
        _fmt(closedform.qfi_separable(noise, n_active)),
        _fmt(result.betas.beta0),
        _fmt(result.betas.beta1),
    ]
    print(header)
    print(",".join(row))
    return 0


# ---------------------------------------------------------------------------
# sweep


_SWEEP_KEYS = (
    "preset",
    "param",
    "param_values",
    "mu",
    "omega_t",
    "sweep",
    "n",
    "n_active",
    "inactive",
    "kappa",
    "n_max",
    "outputs",
    "out",
)


def _load_sweep_spec(args: argparse.Namespace) -> dict:
    spec: dict = {"inactive": False, "kappa": 0.5, "n_max": optimize.DEFAULT_N_MAX}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(_SWEEP_KEYS)
        if unknown:
            raise RangeError(f"unknown config keys: {', '.join(sorted(unknown))}")
        spec.update(loaded)
    for key in ("preset", "param", "mu", "omega_t", "n", "n_active", "kappa", "n_max", "out"):
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            spec[key] = value
    if args.inactive:
        spec["inactive"] = True
    if args.outputs:
        spec["outputs"] = [s.strip() for s in args.outputs.split(",") if s.strip()]
    if args.sweep_var:
        spec["sweep"] = {
            "variable": args.sweep_var,
            "start": args.start,
            "stop": args.stop,
            "steps": args.steps,
            "spacing": args.spacing,
        }
    return spec


def _sweep_grid(spec: dict) -> np.ndarray:
    sweep = spec.get("sweep")
    if not isinstance(sweep, dict):
        raise RangeError("sweep spec needs a 'sweep' section (variable/start/stop/steps)")
    variable = sweep.get("variable")
    if variable not in ("param", "n"):
        raise RangeError(f"sweep variable must be 'param' or 'n', got {variable!r}")
    start, stop = sweep.get("start"), sweep.get("stop")
    steps = sweep.get("steps")
    spacing = sweep.get("spacing", "linear")
    if start is None or stop is None or steps is None:
        raise RangeError("sweep needs start, stop and steps")
    if not steps >= 2:
        raise RangeError(f"steps = {steps} must be at least 2")
    if not start < stop:
        raise RangeError(f"sweep needs start < stop, got [{start}, {stop}]")
    if spacing == "linear":
        grid = np.linspace(float(start), float(stop), int(steps))
    elif spacing == "log":
        if not start > 0:
            raise RangeError("log spacing needs start > 0")
        grid = np.geomspace(float(start), float(stop), int(steps))
    else:
        raise RangeError(f"spacing must be 'linear' or 'log', got {spacing!r}")
    if variable == "n":
        grid = np.unique(np.rint(grid).astype(int))
        if grid[0] < 1:
            raise RangeError("size sweep must stay at n >= 1")
    return grid


@dataclass
class _Row:
    param: float | None
    n: int | None
    values: dict


def _eval_sweep_row(spec: dict, noise: NoiseParams, n: int | None, outputs: list[str]) -> dict:
    values: dict = {}
    inactive = bool(spec.get("inactive"))
    kappa = spec.get("kappa", 0.5)
    if n is not None:
        n_active = spec.get("n_active")
        if n_active is None:
            n_active = n - 1 if inactive else n
        if not 1 <= n_active <= n:
            raise RangeError(f"n_active = {n_active} invalid for n = {n}")

    setting = None
    if _OPTIMIZER_OUTPUTS & set(outputs) or ("kappa_opt" in outputs and n is None):
        policy = "opt" if kappa == "opt" else float(kappa)
        setting = optimize.optimize_n(noise, policy, int(spec["n_max"]), inactive_qubit=inactive)

    for name in outputs:
        if name in ("qfi", "qfi_full", "qfi_inactive"):
            if n is None:
                raise RangeError(f"output {name!r} needs a fixed or swept probe size")
            if name == "qfi":
                shape = (n, n_active)
            elif name == "qfi_full":
                shape = (n, n)
            else:
                if n < 2:
                    raise RangeError("qfi_inactive needs n >= 2")
                shape = (n, n - 1)
            kap = _resolve_kappa(kappa, noise, *shape)
            probe = ProbeConfig(n_total=shape[0], kappa=kap, n_active=shape[1])
            values[name] = closedform.qfi(noise, probe).value
        elif name == "qfi_separable":
            if n is None:
                raise RangeError("output 'qfi_separable' needs a fixed or swept probe size")
            values[name] = closedform.qfi_separable(noise, n_active)
        elif name == "kappa_opt":
            if n is not None:
                values[name] = closedform.kappa_opt(noise, n, n_active)
            else:
                values[name] = setting.kappa_opt
        elif name == "n_opt":
            values[name] = setting.n_opt
        elif name == "fq_max":
            values[name] = setting.fq_max
        elif name == "ratio":
            values[name] = setting.ratio_vs_separable
        elif name == "per_qubit":
            values[name] = setting.fq_per_qubit
        elif name == "fq_over_n_sq":
            values[name] = setting.fq_over_n_sq
        else:
            raise RangeError(
                f"unknown output {name!r}; choose from {', '.join(_SWEEP_OUTPUTS)}"
            )
    return values


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = _load_sweep_spec(args)
    outputs = spec.get("outputs")
    if not outputs:
        raise RangeError("sweep needs a non-empty 'outputs' list")
    grid = _sweep_grid(spec)
    variable = spec["sweep"]["variable"]

    if variable == "param":
        if spec.get("param_values"):
            raise RangeError("param_values is only meaningful when sweeping n")
        param_list = [None]
    else:
        param_list = spec.get("param_values") or [spec.get("param")]

    rows: list[_Row] = []
    for fixed_param in param_list:
        for point in grid:
            if variable == "param":
                param = float(point)
                n = spec.get("n")
            else:
                param = fixed_param
                n = int(point)
            noise = _noise_from({**spec, "param": param})
            rows.append(_Row(param=param, n=n, values=_eval_sweep_row(spec, noise, n, outputs)))

    echo_param = any(row.param is not None for row in rows)
    echo_n = variable == "n"
    header = ([] if not echo_param else ["param"]) + (["n"] if echo_n else [])
    header += list(outputs)

    lines = [
        f"# qfiprobe {__version__} sweep",
        "# spec: " + json.dumps(spec, sort_keys=True, separators=(",", ":")),
        ",".join(header),
    ]
    for row in rows:
        cells = []
        if echo_param:
            cells.append(_fmt(row.param))
        if echo_n:
            cells.append(_fmt(row.n))
        cells += [_fmt(row.values[name]) for name in outputs]
        lines.append(",".join(cells))

    text = "\n".join(lines) + "\n"
    out = spec.get("out")
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


# ---------------------------------------------------------------------------
# optimize


def cmd_optimize(args: argparse.Namespace) -> int:
    noise = _noise_from(vars(args))
    policy = args.kappa if args.kappa == "opt" else float(args.kappa)
    setting = optimize.optimize_n(noise, policy, args.n_max, inactive_qubit=args.inactive)
    block = optimize.block_strategy(noise, args.total_qubits, args.n_max)

    print(f"# qfiprobe {__version__} optimize")
    print(
        f"noise: preset={args.preset} param={_fmt(args.param)} mu={_fmt(noise.mu)} "
        f"mu1={_fmt(noise.mu1)} mu2={_fmt(noise.mu2)} omega_t={_fmt(noise.omega_t)}"
    )
    print(f"kappa policy: {args.kappa}")
    print(f"inactive qubit: {args.inactive}")
    print(f"N_opt: {setting.n_opt}")
    print(f"kappa_opt: {_fmt(setting.kappa_opt)}")
    print(f"F_q max: {_fmt(setting.fq_max)}")
    print(f"ln F_q max: {_fmt(setting.log_fq_max)}")
    if noise.mu2 > 0.0:
        print(f"ratio vs separable: {_fmt(setting.ratio_vs_separable)}")
        print(f"per-qubit entangled: {_fmt(setting.fq_per_qubit)}")
        print(f"per-qubit separable: {_fmt(noise.mu2 ** 2)}")
    else:
        print("ratio vs separable: undefined (mu2 = 0)")
    print(f"F_q max / N_opt^2: {_fmt(setting.fq_over_n_sq)}")
    if setting.cap_warning:
        print(f"warning: optimum sits at the scan cap n_max={args.n_max}; "
              "the true optimum may be larger")
    print(
        f"block strategy for {args.total_qubits} qubits: "
        f"block_size={block.block_size} n_blocks={block.n_blocks} "
        f"total_qfi={_fmt(block.total_qfi)} ratio_vs_separable={_fmt(block.vs_separable_ratio)}"
    )

    if args.out:
        header = (
            "n_opt,kappa_opt,fq_max,log_fq_max,ratio_vs_separable,fq_per_qubit,"
            "fq_over_n_sq,cap_warning,block_size,n_blocks,block_total_qfi,block_ratio"
        )
        row = ",".join(
            [
                _fmt(setting.n_opt),
                _fmt(setting.kappa_opt),
                _fmt(setting.fq_max),
                _fmt(setting.log_fq_max),
                _fmt(setting.ratio_vs_separable),
                _fmt(setting.fq_per_qubit),
                _fmt(setting.fq_over_n_sq),
                str(int(setting.cap_warning)),
                _fmt(block.block_size),
                _fmt(block.n_blocks),
                _fmt(block.total_qfi),
                _fmt(block.vs_separable_ratio),
            ]
        )
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(f"# qfiprobe {__version__} optimize\n{header}\n{row}\n")
    return 0


# ---------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class VerifyReport:
    trials: int
    n_max: int
    seed: int
    inactive: bool
    max_deviation: float
    worst_trial: int
    worst_config: str
    passed: bool


def run_verification(
    trials: int,
    n_max: int,
    seed: int,
    inactive: bool = False,
    threshold: float = VERIFY_THRESHOLD,
) -> VerifyReport:
    """Randomized cross-check of the closed form against the oracle.

    Draws CP-valid noise, probe shape, entanglement, axis, phase and noise
    rotation angle from PCG64 seeded with ``seed``; deviations are relative
    to the closed-form value floored at 1e-30.
    """
    if trials < 1:
        raise RangeError(f"trials = {trials} must be positive")
    if not 1 <= n_max <= ORACLE_SIZE_CAP:
        raise RangeError(f"n_max = {n_max} outside [1, {ORACLE_SIZE_CAP}] (oracle cap)")
    if inactive and n_max < 2:
        raise RangeError("inactive verification needs n_max >= 2")

    rng = np.random.default_rng(seed)
    worst, worst_trial, worst_config = -1.0, -1, ""
    for trial in range(trials):
        mu = rng.uniform(-1.0, 1.0)
        mu1 = rng.uniform(0.0, 1.0)
        mu2 = math.sqrt(mu1) * rng.uniform(0.0, 1.0)
        omega_t = rng.uniform(0.0, 2.0 * math.pi)
        noise = preset("custom", mu=mu, mu1=mu1, mu2=mu2, omega_t=omega_t)
        if inactive:
            n = int(rng.integers(2, n_max + 1))
            n_active = int(rng.integers(1, n))
        else:
            n = int(rng.integers(1, n_max + 1))
            n_active = int(rng.integers(1, n + 1))
        kappa = rng.uniform(0.0, 1.0)
        axis = Axis(math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * math.pi))
        xi = rng.uniform(0.0, 2.0 * math.pi)

        probe = ProbeConfig(n_total=n, kappa=kappa, n_active=n_active)
        closed = closedform.qfi(noise, probe).value
        brute = qfi_bruteforce(noise, probe, axis, xi).value
        deviation = abs(brute - closed) / max(closed, 1e-30)
        if deviation > worst:
            worst, worst_trial = deviation, trial
            worst_config = (
                f"mu={mu:.6g} mu1={mu1:.6g} mu2={mu2:.6g} omega_t={omega_t:.6g} "
                f"n={n} n_active={n_active} kappa={kappa:.6g} xi={xi:.6g}"
            )
    return VerifyReport(
        trials=trials,
        n_max=n_max,
        seed=seed,
        inactive=inactive,
        max_deviation=worst,
        worst_trial=worst_trial,
        worst_config=worst_config,
        passed=worst < threshold,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(args.trials, args.n_max, args.seed, inactive=args.inactive)
    print(f"# qfiprobe {__version__} verify")
    print(
        f"trials={report.trials} n_max={report.n_max} seed={report.seed} "
        f"inactive={str(report.inactive).lower()} derivative=analytic"
    )
    print(f"max_relative_deviation={report.max_deviation:.6e}")
    print(f"worst_trial={report.worst_trial} {report.worst_config}")
    print(f"threshold={VERIFY_THRESHOLD:.0e}")
    print("result: PASS" if report.passed else "result: FAIL")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser


def _add_noise_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", choices=PRESET_NAMES, help="noise channel preset")
    parser.add_argument("--param", type=float, help="main preset parameter")
    parser.add_argument("--mu", type=float, help="equilibrium bias (custom, gad)")
    parser.add_argument("--mu1", type=float, help="longitudinal contraction (custom)")
    parser.add_argument("--mu2", type=float, help="transverse contraction (custom)")
    parser.add_argument("--omega-t", type=float, dest="omega_t",
                        help="coherent rotation angle of the noise [rad]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfiprobe",
        description="Quantum Fisher information of noisy entangled qubit probes",
    )
    parser.add_argument("--version", action="version", version=f"qfiprobe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_qfi = sub.add_parser("qfi", help="evaluate the closed-form QFI once")
    _add_noise_flags(p_qfi)
    p_qfi.add_argument("--n", type=int, help="total probe size")
    p_qfi.add_argument("--n-active", type=int, dest="n_active", help="active qubits (default: n)")
    p_qfi.add_argument("--kappa", type=_kappa_arg, default=0.5, help="kappa in [0,1] or 'opt'")
    p_qfi.set_defaults(func=cmd_qfi)

    p_sweep = sub.add_parser("sweep", help="grid sweep to CSV")
    _add_noise_flags(p_sweep)
    p_sweep.add_argument("--config", help="JSON config mirroring the flags")
    p_sweep.add_argument("--sweep-var", choices=("param", "n"), dest="sweep_var")
    p_sweep.add_argument("--start", type=float)
    p_sweep.add_argument("--stop", type=float)
    p_sweep.add_argument("--steps", type=int)
    p_sweep.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p_sweep.add_argument("--n", type=int, help="fixed probe size when sweeping the parameter")
    p_sweep.add_argument("--n-active", type=int, dest="n_active")
    p_sweep.add_argument("--inactive", action="store_true",
                         help="evaluate with one inactive qubit (n_active = n-1)")
    p_sweep.add_argument("--kappa", type=_kappa_arg, default=None)
    p_sweep.add_argument("--n-max", type=int, dest="n_max", help="scan cap for optimizer columns")
    p_sweep.add_argument("--outputs", help="comma-separated output columns")
    p_sweep.add_argument("--out", help="output CSV path ('-' for stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_opt = sub.add_parser("optimize", help="optimal probe size and entanglement")
    _add_noise_flags(p_opt)
    p_opt.add_argument("--kappa", type=_kappa_arg, default="opt")
    p_opt.add_argument("--n-max", type=int, dest="n_max", default=optimize.DEFAULT_N_MAX)
    p_opt.add_argument("--inactive", action="store_true")
    p_opt.add_argument("--total-qubits", type=int, dest="total_qubits", default=1000,
                       help="qubit budget for the block-strategy summary")
    p_opt.add_argument("--out", help="also write the report as CSV")
    p_opt.set_defaults(func=cmd_optimize)

    p_ver = sub.add_parser("verify", help="cross-check closed form against the oracle")
    p_ver.add_argument("--trials", type=int, default=200)
    p_ver.add_argument("--n-max", type=int, dest="n_max", default=8)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--inactive", action="store_true",
                       help="force probes with at least one inactive qubit")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QfiProbeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
