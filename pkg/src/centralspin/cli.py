"""Command-line front end: evolve, tau, sweep, oracle-check, couplings, plot.

Configuration layering is flags > config file > built-in defaults.  The
config file is flat INI with one section per subcommand; keys carry
explicit unit suffixes (bfield_T, a_coupling_ueV, t_max_ns) because unit
mix-ups are the dominant failure mode in this domain.  All numeric input
is validated before any output file is opened, so a usage error never
leaves partial files behind.

Exit codes: 0 success, 2 usage error, 3 runtime or physics error,
4 sweep finished with per-point failures.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .blocks import PhysicalParams, sector_eigensystem
from .constants import (
    DEFAULT_A_UEV,
    DEFAULT_G_FACTOR,
    DEFAULT_PRODUCT_DIM_CAP,
    HBAR_UEV_NS,
    ORACLE_DIM_CAP,
)
from .dynamics import QubitState
from .errors import DimensionCapError, NeverEntangledError, NoReturnToZeroError
from .experiments import (
    DEFAULT_EPSILON,
    NegativityEvaluator,
    NegativityTrace,
    dressed_gap_uev,
    find_tau,
    fit_scaling,
    sweep,
    tau_time_grid,
)
from .materials import (
    DotGeometry,
    average_coupling,
    effective_cell_count,
    gaas_table,
    load_material_table,
)
from .oracle import oracle_negativity_values, oracle_spectrum
from .sectors import BathSpec, enumerate_sectors
from .svgplot import line_plot, scatter_fit_plot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3
EXIT_PARTIAL = 4


class UsageError(ValueError):
    pass


# (config key, flag, type, default, help); default None means computed later
_PHYS = [
    ("n", "n", int, 1, "number of bath nuclei"),
    ("f_spin", "f", float, 0.5, "spin of each nucleus (half-integer)"),
    ("alpha", "alpha", float, 1.0, "amplitude of the qubit up state, in [0, 1]"),
    ("beta_phase_rad", "beta-phase", float, 0.0, "relative phase of the down amplitude"),
    ("bfield_T", "bfield", float, 0.0, "magnetic field along z, Tesla"),
    ("a_coupling_ueV", "a-coupling", float, DEFAULT_A_UEV, "box hyperfine coupling, ueV"),
    ("g_factor", "g-factor", float, DEFAULT_G_FACTOR, "electron g-factor"),
]
_GRID = [
    ("t_max_ns", "t-max", float, None, "end of the time window, ns"),
    ("points", "points", int, 2000, "number of grid points"),
]

OPTIONS: dict[str, list[tuple]] = {
    "evolve": _PHYS
    + _GRID
    + [
        ("out", "out", str, None, "output CSV path (required)"),
        ("json_out", "json", str, None, "optional JSON provenance sidecar"),
        ("svg_out", "svg", str, None, "optional SVG line plot"),
        ("max_dim", "max-dim", int, DEFAULT_PRODUCT_DIM_CAP, "bath dimension cap"),
    ],
    "tau": _PHYS
    + [
        ("t_max_ns", "t-max", float, None, "end of the scan window, ns"),
        ("points", "points", int, 1500, "number of grid points"),
        ("epsilon", "epsilon", float, DEFAULT_EPSILON, "zero threshold"),
        ("out", "out", str, None, "output JSON path (default: stdout)"),
        ("max_dim", "max-dim", int, DEFAULT_PRODUCT_DIM_CAP, "bath dimension cap"),
    ],
    "sweep": _PHYS
    + [
        ("axis", "axis", str, None, "swept axis: F, n, B, or alpha (required)"),
        ("values", "values", str, None, "comma-separated axis values (required)"),
        ("points", "points", int, 1200, "grid points per trace"),
        ("epsilon", "epsilon", float, DEFAULT_EPSILON, "zero threshold"),
        ("fit", "fit", str, "none", "fit model: linear, log, exponential, none"),
        ("fit_target", "fit-target", str, "tau", "fit response: tau or max-negativity"),
        ("jobs", "jobs", int, 1, "parallel workers for sweep points"),
        ("out", "out", str, None, "output CSV path (required)"),
        ("fit_out", "fit-out", str, None, "optional JSON fit report"),
        ("svg_out", "svg", str, None, "optional SVG scatter plot"),
        ("max_dim", "max-dim", int, DEFAULT_PRODUCT_DIM_CAP, "bath dimension cap"),
    ],
    "oracle-check": _PHYS
    + _GRID
    + [
        ("out", "out", str, None, "output JSON path (default: stdout)"),
        ("cap", "cap", int, ORACLE_DIM_CAP, "oracle joint dimension cap"),
    ],
    "couplings": [
        ("table", "table", str, None, "material table file (default: built-in GaAs)"),
        ("l_perp_nm", "l-perp", float, 20.0, "in-plane envelope width, nm"),
        ("l_z_nm", "l-z", float, 2.0, "vertical envelope width, nm"),
        ("out", "out", str, None, "output JSON path (default: stdout)"),
    ],
    "plot": [
        ("csv_in", "csv", str, None, "input CSV produced by evolve or sweep (required)"),
        ("out", "out", str, None, "output SVG path (required)"),
    ],
}

_REQUIRED = {
    "evolve": ("out",),
    "sweep": ("axis", "values", "out"),
    "plot": ("csv_in", "out"),
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved options for one subcommand invocation."""

    subcommand: str
    options: dict

    def to_ini(self) -> str:
        lines = [f"[{self.subcommand}]"]
        for key, _, _, _, _ in OPTIONS[self.subcommand]:
            value = self.options.get(key)
            if value is None:
                continue
            lines.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
        return "\n".join(lines) + "\n"


def _ini_parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # unit suffixes are case-sensitive (bfield_T)
    return parser


def _parse_config_file(path: str, subcommand: str) -> dict:
    parser = _ini_parser()
    read = parser.read(path)
    if not read:
        raise UsageError(f"config file not found: {path}")
    if subcommand not in parser:
        return {}
    known = {key: typ for key, _, typ, _, _ in OPTIONS[subcommand]}
    out = {}
    for key, raw in parser[subcommand].items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r} in section [{subcommand}]")
        try:
            out[key] = known[key](raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key!r}: {raw!r} ({exc})") from exc
    return out


def resolve_config(subcommand: str, cli_values: dict, config_path: str | None) -> RunConfig:
    """Layer defaults, config file section, and explicit CLI flags."""
    merged = {key: default for key, _, _, default, _ in OPTIONS[subcommand]}
    if config_path:
        merged.update(_parse_config_file(config_path, subcommand))
    merged.update({k: v for k, v in cli_values.items() if v is not None})
    for key in _REQUIRED.get(subcommand, ()):
        if merged.get(key) is None:
            raise UsageError(f"missing required option --{dict((k, f) for k, f, *_ in OPTIONS[subcommand])[key]}")
    return RunConfig(subcommand=subcommand, options=merged)


def parse_run_config(text: str) -> RunConfig:
    """Parse a config string produced by RunConfig.to_ini (round-trip)."""
    parser = _ini_parser()
    parser.read_string(text)
    sections = parser.sections()
    if len(sections) != 1:
        raise UsageError("expected exactly one section")
    sub = sections[0]
    if sub not in OPTIONS:
        raise UsageError(f"unknown subcommand section [{sub}]")
    known = {key: typ for key, _, typ, _, _ in OPTIONS[sub]}
    options = {key: None for key in known}
    for key, raw in parser[sub].items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        options[key] = known[key](raw)
    return RunConfig(subcommand=sub, options=options)


def _physics_from(options: dict) -> tuple[BathSpec, PhysicalParams, QubitState]:
    try:
        spec = BathSpec(n=int(options["n"]), f=float(options["f_spin"]))
        params = PhysicalParams(
            a_uev=float(options["a_coupling_ueV"]),
            bfield_t=float(options["bfield_T"]),
            g_factor=float(options["g_factor"]),
        )
        qubit = QubitState.from_alpha(
            float(options["alpha"]), float(options["beta_phase_rad"])
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return spec, params, qubit


def _fmt(x) -> str:
    return repr(float(x))


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}") from exc


def _emit_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        _write_text(path, text)
    else:
        sys.stdout.write(text)


def _provenance(spec: BathSpec, params: PhysicalParams, qubit: QubitState) -> dict:
    return {
        "n": spec.n,
        "f_spin": spec.f,
        "alpha": abs(qubit.alpha),
        "beta_phase_rad": float(np.angle(qubit.beta)) if abs(qubit.beta) > 0 else 0.0,
        "bfield_T": params.bfield_t,
        "a_coupling_ueV": params.a_uev,
        "g_factor": params.g_factor,
        "hbar_ueV_ns": HBAR_UEV_NS,
    }


def _cmd_evolve(cfg: RunConfig) -> int:
    o = cfg.options
    spec, params, qubit = _physics_from(o)
    if o["t_max_ns"] is None and params.a_uev == 0:
        raise UsageError("zero coupling has no natural time scale; pass --t-max")
    t_max = o["t_max_ns"] if o["t_max_ns"] is not None else 12 * HBAR_UEV_NS / params.a_uev
    if t_max <= 0 or o["points"] < 2:
        raise UsageError("need t_max_ns > 0 and at least two grid points")
    times = np.linspace(0.0, t_max, o["points"])
    ev = NegativityEvaluator(spec, params, qubit, max_dim=o["max_dim"])
    values = [ev(t) for t in times]
    rows = ["t_ns,negativity"]
    rows += [f"{_fmt(t)},{_fmt(v)}" for t, v in zip(times, values)]
    _write_text(o["out"], "\n".join(rows) + "\n")
    if o["json_out"]:
        payload = _provenance(spec, params, qubit)
        payload.update({"points": o["points"], "t_max_ns": t_max, "csv": o["out"]})
        _emit_json(payload, o["json_out"])
    if o["svg_out"]:
        _write_text(o["svg_out"], line_plot(times, values, "t (ns)", "negativity"))
    return EXIT_OK


def _cmd_tau(cfg: RunConfig) -> int:
    o = cfg.options
    spec, params, qubit = _physics_from(o)
    if o["t_max_ns"] is None and params.a_uev == 0:
        raise UsageError("zero coupling has no natural time scale; pass --t-max")
    ev = NegativityEvaluator(spec, params, qubit, max_dim=o["max_dim"])
    if o["t_max_ns"] is not None:
        times = np.linspace(0.0, o["t_max_ns"], o["points"])
    else:
        times = tau_time_grid(params, points=o["points"])
    trace = NegativityTrace(
        times_ns=times, values=np.array([ev(t) for t in times]), params=ev.provenance()
    )
    payload = {"epsilon": o["epsilon"], "params": _provenance(spec, params, qubit)}
    try:
        det = find_tau(trace, epsilon=o["epsilon"], evaluator=ev)
        payload.update({"tau_ns": det.tau_ns, "method": det.method, "status": "ok"})
    except NeverEntangledError:
        payload.update({"tau_ns": None, "method": None, "status": "never entangled"})
    _emit_json(payload, o["out"])
    return EXIT_OK


def _cmd_sweep(cfg: RunConfig) -> int:
    o = cfg.options
    spec, params, qubit = _physics_from(o)  # validates the fixed parameters
    axis = o["axis"]
    if axis not in ("F", "n", "B", "alpha"):
        raise UsageError(f"axis must be F, n, B, or alpha, got {axis!r}")
    try:
        values = [float(v) for v in str(o["values"]).split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --values list: {o['values']!r}") from exc
    if not values:
        raise UsageError("sweep needs a non-empty --values list")
    if o["fit"] not in ("none", "linear", "log", "exponential"):
        raise UsageError(f"unknown fit model {o['fit']!r}")
    if o["fit_target"] not in ("tau", "max-negativity"):
        raise UsageError(f"fit target must be 'tau' or 'max-negativity', got {o['fit_target']!r}")
    fixed = {
        "n": spec.n,
        "f_spin": spec.f,
        "alpha": abs(qubit.alpha),
        "beta_phase_rad": o["beta_phase_rad"],
        "bfield_T": params.bfield_t,
        "a_coupling_ueV": params.a_uev,
        "g_factor": params.g_factor,
    }
    points = sweep(
        axis,
        values,
        fixed,
        epsilon=o["epsilon"],
        points=o["points"],
        jobs=o["jobs"],
        max_dim=o["max_dim"],
    )
    rows = ["axis_value,max_negativity,tau_ns,error"]
    for p in points:
        rows.append(
            ",".join(
                [
                    _fmt(p.value),
                    _fmt(p.max_negativity) if p.max_negativity is not None else "",
                    _fmt(p.tau_ns) if p.tau_ns is not None else "",
                    p.error or "",
                ]
            )
        )
    _write_text(o["out"], "\n".join(rows) + "\n")

    fit_report = None
    if o["fit"] != "none":
        good = [
            (p.value, p.tau_ns if o["fit_target"] == "tau" else p.max_negativity)
            for p in points
            if p.error is None and (p.tau_ns if o["fit_target"] == "tau" else p.max_negativity) is not None
        ]
        if len(good) >= 2:
            xs = [g[0] for g in good]
            ys = [g[1] for g in good]
            fit_report = fit_scaling(xs, ys, o["fit"])
    if o["fit_out"]:
        payload = {"axis": axis, "fit_target": o["fit_target"], "fixed": fixed}
        if fit_report is not None:
            payload.update(
                {
                    "model": fit_report.model,
                    "intercept": fit_report.coefficients[0],
                    "slope": fit_report.coefficients[1],
                    "r_squared": fit_report.r_squared,
                }
            )
        else:
            payload["model"] = None
        _emit_json(payload, o["fit_out"])
    if o["svg_out"]:
        good = [(p.value, p.max_negativity) for p in points if p.error is None]
        xs = [g[0] for g in good]
        ys = [g[1] for g in good]
        fit_xs, fit_ys = [], []
        if fit_report is not None and o["fit_target"] == "max-negativity":
            a, b = fit_report.coefficients
            fit_xs = list(np.linspace(min(xs), max(xs), 50))
            if fit_report.model == "linear":
                fit_ys = [a + b * x for x in fit_xs]
            elif fit_report.model == "log":
                fit_ys = [a + b * np.log(x) for x in fit_xs]
            else:
                fit_ys = [np.exp(a + b * x) for x in fit_xs]
        _write_text(
            o["svg_out"],
            scatter_fit_plot(xs, ys, fit_xs, fit_ys, f"{axis}", "max negativity"),
        )
    if any(p.error is not None for p in points):
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_oracle_check(cfg: RunConfig) -> int:
    o = cfg.options
    spec, params, qubit = _physics_from(o)
    gap = dressed_gap_uev(params)
    if o["t_max_ns"] is None and gap == 0:
        raise UsageError("zero coupling and zero field have no time scale; pass --t-max")
    t_max = o["t_max_ns"] if o["t_max_ns"] is not None else 9 * HBAR_UEV_NS / gap
    points = o["points"] if o["points"] else 200
    times = np.linspace(0.0, t_max, points)
    oracle_vals = oracle_negativity_values(spec, params, qubit, times, cap=o["cap"])
    ev = NegativityEvaluator(spec, params, qubit)
    fast_vals = np.array([ev(t) for t in times])
    table = enumerate_sectors(spec)
    fast_spectrum = np.sort(
        np.concatenate(
            [np.repeat(sector_eigensystem(params, e.k)[1], e.multiplicity) for e in table.entries]
        )
    )
    neg_dev = float(np.abs(oracle_vals - fast_vals).max())
    spec_dev = float(np.abs(oracle_spectrum(spec, params, cap=o["cap"]) - fast_spectrum).max())
    payload = {
        "max_negativity_deviation": neg_dev,
        "max_spectrum_deviation": spec_dev,
        "tolerance": 1e-8,
        "pass": bool(neg_dev <= 1e-8 and spec_dev <= 1e-8),
        "points": points,
        "t_max_ns": t_max,
        "params": _provenance(spec, params, qubit),
    }
    _emit_json(payload, o["out"])
    return EXIT_OK if payload["pass"] else EXIT_RUNTIME


def _cmd_couplings(cfg: RunConfig) -> int:
    o = cfg.options
    try:
        table = load_material_table(o["table"]) if o["table"] else gaas_table()
        dot = DotGeometry(l_perp_nm=o["l_perp_nm"], l_z_nm=o["l_z_nm"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "average_coupling_ueV": average_coupling(dot, table),
        "effective_cells": effective_cell_count(dot, table.v0_nm3),
        "isotopes": [
            {
                "species": r.species,
                "abundance_pct": r.abundance_pct,
                "f_spin": r.f,
                "a0_ueV": r.a0_uev,
                "gamma_1e7_rad_per_Ts": r.gamma_1e7,
            }
            for r in table.rows
        ],
        "l_perp_nm": dot.l_perp_nm,
        "l_z_nm": dot.l_z_nm,
        "v0_nm3": table.v0_nm3,
    }
    _emit_json(payload, o["out"])
    return EXIT_OK


def _cmd_plot(cfg: RunConfig) -> int:
    o = cfg.options
    path = Path(o["csv_in"])
    if not path.exists():
        raise UsageError(f"input CSV not found: {path}")
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    xs, ys = [], []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) < 2 or not parts[0] or not parts[1]:
            continue
        xs.append(float(parts[0]))
        ys.append(float(parts[1]))
    if not xs:
        raise RuntimeError("CSV contains no plottable rows")
    if header[0] == "t_ns":
        svg = line_plot(xs, ys, "t (ns)", header[1])
    else:
        svg = scatter_fit_plot(xs, ys, [], [], header[0], header[1])
    _write_text(o["out"], svg)
    return EXIT_OK


_DISPATCH = {
    "evolve": _cmd_evolve,
    "tau": _cmd_tau,
    "sweep": _cmd_sweep,
    "oracle-check": _cmd_oracle_check,
    "couplings": _cmd_couplings,
    "plot": _cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centralspin",
        description="Exact qubit-bath negativity dynamics in the uniform-coupling model",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, options in OPTIONS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="INI config file with a [%s] section" % name)
        for key, flag, typ, _, help_text in options:
            p.add_argument(f"--{flag}", dest=key, type=typ, default=None, help=help_text)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.subcommand
    cli_values = {
        key: getattr(args, key) for key, _, _, _, _ in OPTIONS[sub] if hasattr(args, key)
    }
    try:
        cfg = resolve_config(sub, cli_values, args.config)
        return _DISPATCH[sub](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionCapError, NoReturnToZeroError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
