"""Command-line front end: scenario runs, steady states, and figure data sets.

Configs are flat INI-style key = value sections.  Every emitted CSV has the
header ``t,linear,exact,asymptote``, 12-significant-digit values, LF line
endings, and is written atomically, so identical configs produce byte-identical
files.  Exit codes: 0 success, 1 config error, 2 numeric/degeneracy error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import (
    CovarianceMatrix,
    build_generators,
    closed_form_steady_state,
    cm_transform,
    solve_lyapunov,
)
from .errors import ModelError
from .model import SystemParams, ThermalBathPair
from .response import (
    ResponseCurve,
    eta_from_phi,
    perturbed_value,
    perturbed_value_squeezed,
    squeezed_response_curve,
    thermal_response_curve,
)
from .squeezed import SqueezedBath, steady_state_squeezed

THERMAL = "thermal-two-bath"
SQUEEZED = "squeezed-single-bath"
DEFAULT_POINTS = 400
DEFAULT_INFINITE_LAMBDA = 1000.0

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig7")


class ConfigError(Exception):
    """Malformed or inconsistent scenario configuration."""


@dataclass
class ScenarioConfig:
    """Parsed scenario description driving one simulation run."""

    kind: str
    params: SystemParams
    baths: ThermalBathPair | None
    bath: SqueezedBath | None
    epsilon: float
    phi: float
    observable: str
    t_max: float
    n_points: int
    limit: str | None = None
    infinite_lambda: float = DEFAULT_INFINITE_LAMBDA
    out_name: str | None = None
    label: str = "scenario"

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_points)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_curve_csv(path: Path, curve: ResponseCurve) -> None:
    """Serialize a response curve as t,linear,exact,asymptote rows."""
    exact = curve.exact if curve.exact is not None else np.full_like(curve.times, np.nan)
    lines = ["t,linear,exact,asymptote"]
    for t, lin, ex in zip(curve.times, curve.linear, exact):
        lines.append(f"{_fmt(t)},{_fmt(lin)},{_fmt(ex)},{_fmt(curve.asymptote)}")
    _write_atomic(path, "\n".join(lines) + "\n")


def read_curve_csv(path: Path) -> dict[str, np.ndarray]:
    """Parse a curve CSV back into column arrays."""
    with open(path, newline="\n") as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    data = np.array([[float(v) for v in row] for row in rows])
    return {name: data[:, i] for i, name in enumerate(header)}


def _constant_curve(times: np.ndarray, value: float, observable: str, scenario: str) -> ResponseCurve:
    cv = np.full_like(times, value)
    return ResponseCurve(
        times=times,
        linear=cv,
        exact=cv.copy(),
        asymptote=value,
        observable=observable,
        scenario=scenario,
        perturbations=(),
    )


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

_KNOWN_KEYS = {
    "scenario": {"kind"},
    "system": {"delta", "lambda", "gamma", "omega1"},
    "bath": {"n1", "n2", "beta1_omega1", "beta2_omega1", "n", "beta_omega1", "r", "theta"},
    "perturbation": {"epsilon", "phi"},
    "observable": {"which"},
    "grid": {"t_max", "n_points"},
    "output": {"path"},
}


def _getfloat(section, key: str, default: float | None = None) -> float | None:
    if key not in section:
        return default
    raw = section[key]
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key} = {raw!r} is not a number") from exc


def parse_config(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario config file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            cp.read_file(fh, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc

    for section in cp.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in cp[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    kind = cp.get("scenario", "kind", fallback=THERMAL).strip()
    if kind not in (THERMAL, SQUEEZED):
        raise ConfigError(f"[scenario] kind must be {THERMAL!r} or {SQUEEZED!r}, got {kind!r}")

    if "system" not in cp:
        raise ConfigError("missing [system] section")
    sys_sec = cp["system"]
    try:
        params = SystemParams(
            delta=_getfloat(sys_sec, "delta", 0.0),
            lam=_getfloat(sys_sec, "lambda", 0.0),
            gamma=_getfloat(sys_sec, "gamma", 0.0),
            omega1=_getfloat(sys_sec, "omega1", 1.0),
        )
    except ModelError as exc:
        raise ConfigError(f"invalid [system] parameters: {exc}") from exc

    bath_sec = cp["bath"] if "bath" in cp else {}
    baths: ThermalBathPair | None = None
    bath: SqueezedBath | None = None
    try:
        if kind == THERMAL:
            has_n = "n1" in bath_sec or "n2" in bath_sec
            has_beta = "beta1_omega1" in bath_sec or "beta2_omega1" in bath_sec
            if has_n and has_beta:
                raise ConfigError("[bath] give occupations (n1, n2) or inverse temperatures, not both")
            if has_beta:
                baths = ThermalBathPair.from_inverse_temperatures(
                    _getfloat(bath_sec, "beta1_omega1"),
                    _getfloat(bath_sec, "beta2_omega1"),
                    params,
                )
            else:
                baths = ThermalBathPair(
                    n1=_getfloat(bath_sec, "n1", 0.0), n2=_getfloat(bath_sec, "n2", 0.0)
                )
        else:
            has_n = "n" in bath_sec
            has_beta = "beta_omega1" in bath_sec
            if has_n and has_beta:
                raise ConfigError("[bath] give the occupation n or beta_omega1, not both")
            r = _getfloat(bath_sec, "r", 0.0)
            theta = _getfloat(bath_sec, "theta", 0.0)
            if has_beta:
                bath = SqueezedBath.from_inverse_temperature(
                    _getfloat(bath_sec, "beta_omega1"), r, theta
                )
            else:
                bath = SqueezedBath(n=_getfloat(bath_sec, "n", 0.0), r=r, theta=theta)
    except ConfigError:
        raise
    except (ModelError, TypeError) as exc:
        raise ConfigError(f"invalid [bath] parameters: {exc}") from exc

    pert_sec = cp["perturbation"] if "perturbation" in cp else {}
    epsilon = _getfloat(pert_sec, "epsilon", 0.0)
    phi = _getfloat(pert_sec, "phi", 0.0)
    if kind == SQUEEZED and epsilon != 0.0:
        raise ConfigError("coupling quenches are not part of the squeezed scenario")

    obs_sec = cp["observable"] if "observable" in cp else {}
    default_obs = "A1" if kind == THERMAL else "n2"
    observable = obs_sec.get("which", default_obs).strip()
    allowed = ("A1", "A2") if kind == THERMAL else ("n2",)
    if observable not in allowed:
        raise ConfigError(f"[observable] which must be one of {allowed} for {kind}, got {observable!r}")

    grid_sec = cp["grid"] if "grid" in cp else {}
    default_tmax = 40.0 / params.gamma if params.gamma > 0 else 40.0
    t_max = _getfloat(grid_sec, "t_max", default_tmax)
    n_points = grid_sec.get("n_points", str(DEFAULT_POINTS))
    try:
        n_points = int(n_points)
    except ValueError as exc:
        raise ConfigError(f"[grid] n_points = {n_points!r} is not an integer") from exc
    if t_max <= 0.0:
        raise ConfigError(f"[grid] t_max must be > 0, got {t_max}")
    if n_points < 2:
        raise ConfigError(f"[grid] n_points must be >= 2, got {n_points}")

    out_name = cp.get("output", "path", fallback=None)
    return ScenarioConfig(
        kind=kind,
        params=params,
        baths=baths,
        bath=bath,
        epsilon=epsilon,
        phi=phi,
        observable=observable,
        t_max=t_max,
        n_points=n_points,
        out_name=out_name,
        label=path.stem,
    )


# ---------------------------------------------------------------------------
# scenario runs
# ---------------------------------------------------------------------------

def _apply_limit(config: ScenarioConfig) -> ScenarioConfig:
    params = config.params
    if config.limit == "equilibrium":
        # decoupled oscillators: the coupling-quench channel vanishes with lam,
        # leaving only the temperature quench
        config.params = params.replace(lam=0.0)
        config.epsilon = 0.0
    elif config.limit == "unitary":
        config.params = params.replace(gamma=0.0)
    elif config.limit == "infinite":
        config.params = params.replace(lam=config.infinite_lambda)
    elif config.limit is not None:
        raise ConfigError(f"unknown limit {config.limit!r}")
    return config


def _scenario_curve(config: ScenarioConfig) -> ResponseCurve:
    times = config.times()
    if config.kind == THERMAL:
        return thermal_response_curve(
            config.params, config.baths, config.epsilon, config.phi, times, config.observable
        )
    return squeezed_response_curve(config.params, config.bath, config.phi, times)


def run_scenario(config: ScenarioConfig, outdir: str | Path = ".") -> list[Path]:
    """Evaluate one configured scenario and write its CSV."""
    config = _apply_limit(config)
    curve = _scenario_curve(config)
    name = config.out_name or f"{config.label}_response.csv"
    path = Path(outdir) / name
    write_curve_csv(path, curve)
    return [path]


def _json_value(value: float):
    # strict JSON has no NaN; the unitary limit has no asymptote to report
    return None if math.isnan(value) else value


def _scenario_summary(config: ScenarioConfig, curve: ResponseCurve) -> dict:
    out = {
        "scenario": config.kind,
        "observable": curve.observable,
        "parameters": {
            "delta": config.params.delta,
            "lambda": config.params.lam,
            "gamma": config.params.gamma,
            "omega1": config.params.omega1,
            "epsilon": config.epsilon,
            "phi": config.phi,
        },
        "grid": {"t_max": config.t_max, "n_points": config.n_points},
        "asymptote": _json_value(curve.asymptote),
        "final_linear": float(curve.linear[-1]),
    }
    if config.kind == THERMAL:
        out["parameters"].update({"n1": config.baths.n1, "n2": config.baths.n2})
    else:
        out["parameters"].update(
            {
                "n": config.bath.n,
                "r": config.bath.r,
                "theta": config.bath.theta,
                "N": config.bath.occupation,
                "eta": [eta_from_phi(config.phi, config.bath.r, config.bath.theta).real,
                        eta_from_phi(config.phi, config.bath.r, config.bath.theta).imag],
            }
        )
    return out


# ---------------------------------------------------------------------------
# figure reproduction
# ---------------------------------------------------------------------------

def _figure_setup() -> tuple[SystemParams, ThermalBathPair, float, float]:
    params = SystemParams(delta=10.0, lam=5.0, gamma=0.5)
    baths = ThermalBathPair.from_inverse_temperatures(0.1, 0.001, params)
    return params, baths, 0.1, 0.1  # epsilon, phi


def reproduce_figure(
    figure_id: str,
    outdir: str | Path = ".",
    infinite_lambda: float = DEFAULT_INFINITE_LAMBDA,
) -> list[Path]:
    """Emit the CSV data set for one of the bundled figure scenarios."""
    if figure_id not in FIGURE_IDS:
        raise ConfigError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    outdir = Path(outdir)
    params, baths, epsilon, phi = _figure_setup()
    times = np.linspace(0.0, 40.0 / params.gamma, DEFAULT_POINTS)
    decoupled = params.replace(lam=0.0)
    curves: dict[str, ResponseCurve] = {}

    if figure_id == "fig2":
        curves["steady_state"] = thermal_response_curve(params, baths, epsilon, phi, times, "A1")
        curves["equilibrium"] = thermal_response_curve(decoupled, baths, 0.0, phi, times, "A1")
        curves["unitary"] = thermal_response_curve(
            params.replace(gamma=0.0), baths, epsilon, phi, times, "A1"
        )
        curves["perturbed_value"] = _constant_curve(
            times, perturbed_value(params, baths, epsilon, phi, "A1"), "A1", THERMAL
        )
    elif figure_id == "fig3":
        curves["steady_state"] = thermal_response_curve(params, baths, 0.0, phi, times, "A1")
        curves["equilibrium"] = thermal_response_curve(decoupled, baths, 0.0, phi, times, "A1")
        curves["perturbed_value"] = _constant_curve(
            times, perturbed_value(params, baths, 0.0, phi, "A1"), "A1", THERMAL
        )
        curves["equilibrium_perturbed_value"] = _constant_curve(
            times, perturbed_value(decoupled, baths, 0.0, phi, "A1"), "A1", THERMAL
        )
    elif figure_id == "fig4":
        curves["steady_state"] = thermal_response_curve(params, baths, 0.0, phi, times, "A2")
        curves["equilibrium"] = thermal_response_curve(decoupled, baths, 0.0, phi, times, "A2")
        curves["perturbed_value"] = _constant_curve(
            times, perturbed_value(params, baths, 0.0, phi, "A2"), "A2", THERMAL
        )
    elif figure_id == "fig5":
        strong = params.replace(lam=infinite_lambda)
        for panel, obs in (("a", "A1"), ("b", "A2")):
            curves[f"{panel}_steady_state"] = thermal_response_curve(params, baths, 0.0, phi, times, obs)
            curves[f"{panel}_equilibrium"] = thermal_response_curve(decoupled, baths, 0.0, phi, times, obs)
            curves[f"{panel}_infinite_coupling"] = thermal_response_curve(
                strong, baths, 0.0, phi, times, obs
            )
            curves[f"{panel}_perturbed_value"] = _constant_curve(
                times, perturbed_value(params, baths, 0.0, phi, obs), obs, THERMAL
            )
    else:  # fig7; r and theta are documented defaults, not caption values
        sq_params = params
        bath = SqueezedBath.from_inverse_temperature(0.1, r=1.0, theta=0.0)
        curves["steady_state"] = squeezed_response_curve(sq_params, bath, phi, times)
        curves["equilibrium"] = squeezed_response_curve(sq_params.replace(lam=0.0), bath, phi, times)
        curves["perturbed_value"] = _constant_curve(
            times, perturbed_value_squeezed(sq_params, bath, phi), "n2", SQUEEZED
        )

    written = []
    for name, curve in curves.items():
        # fig5 panels keep their panel letter glued to the figure id (fig5a_..., fig5b_...)
        stem = f"{figure_id}{name}" if figure_id == "fig5" else f"{figure_id}_{name}"
        path = outdir / f"{stem}.csv"
        write_curve_csv(path, curve)
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# steady-state command
# ---------------------------------------------------------------------------

def _steady_state_cm(config: ScenarioConfig) -> CovarianceMatrix:
    if config.kind == THERMAL:
        gen = build_generators(config.params, config.baths)
        numeric = solve_lyapunov(gen)
        closed = closed_form_steady_state(config.params, config.baths)
        gap = float(np.max(np.abs(numeric.matrix - closed.matrix)))
        if gap > 1e-8:
            raise ModelError(f"steady-state routes disagree by {gap:.3e}")
        return closed
    return cm_transform(steady_state_squeezed(config.params, config.bath).sigma)


def steady_state_csv(cm: CovarianceMatrix) -> str:
    labels = ("x1", "p1", "x2", "p2")
    lines = ["," + ",".join(labels)]
    for lbl, row in zip(labels, cm.matrix):
        lines.append(lbl + "," + ",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems count as config errors (exit 1)
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nessprobe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one configured scenario")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", default=".")
    sim.add_argument("--limit", choices=("equilibrium", "unitary", "infinite"))
    sim.add_argument("--infinite-lambda", type=float, default=DEFAULT_INFINITE_LAMBDA)
    sim.add_argument("--json", action="store_true", help="also write a JSON summary")

    fig = sub.add_parser("figure", help="emit the CSV set behind a figure")
    fig.add_argument("id", choices=FIGURE_IDS)
    fig.add_argument("--out", default=".")
    fig.add_argument("--infinite-lambda", type=float, default=DEFAULT_INFINITE_LAMBDA)
    fig.add_argument("--json", action="store_true")

    ss = sub.add_parser("steady-state", help="print the 4x4 steady-state covariance as CSV")
    ss.add_argument("--config", required=True)
    ss.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "simulate":
            config = parse_config(args.config)
            config.limit = args.limit
            config.infinite_lambda = args.infinite_lambda
            files = run_scenario(config, args.out)
            if args.json:
                curve = _scenario_curve(config)
                summary = _scenario_summary(config, curve)
                summary["files"] = [str(f) for f in files]
                jpath = Path(args.out) / f"{config.label}_summary.json"
                _write_atomic(jpath, json.dumps(summary, indent=2, sort_keys=True) + "\n")
                files.append(jpath)
            for f in files:
                print(f)
        elif args.command == "figure":
            files = reproduce_figure(args.id, args.out, args.infinite_lambda)
            if args.json:
                summary = {
                    "figure": args.id,
                    "files": [str(f) for f in files],
                    "asymptotes": {
                        f.stem: _json_value(read_curve_csv(f)["asymptote"][0]) for f in files
                    },
                }
                jpath = Path(args.out) / f"{args.id}_summary.json"
                _write_atomic(jpath, json.dumps(summary, indent=2, sort_keys=True) + "\n")
                files.append(jpath)
            for f in files:
                print(f)
        else:
            config = parse_config(args.config)
            cm = _steady_state_cm(config)
            if args.json:
                print(json.dumps({"basis": cm.basis, "matrix": cm.matrix.real.tolist()}, indent=2))
            else:
                sys.stdout.write(steady_state_csv(cm))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
