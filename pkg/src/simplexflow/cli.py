"""Command-line front end: single runs, reports, parameter sweeps, Euler checks.

Emits UTF-8 CSV (header row, comma separated, LF endings) or single-document
JSON for external plotting. All floats are serialized with shortest
round-trip precision so downstream tools can reproduce bit-level
comparisons. Sweeps run on a fixed-size worker pool (capped by the
SIMPLEXFLOW_THREADS environment variable) with output rows ordered by grid
index regardless of completion order.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import analysis, dynamics, ode
from .errors import SimplexflowError
from .simplex import SimplexPoint, make_point

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

SWEEP_COLUMNS = (
    "index,a,b,c,f,x0_1,x0_2,x0_3,regime,limit_x1,limit_x2,limit_x3,"
    "phi_final,visits_g1,visits_g2,visits_g3,visits_g4,visits_g5,visits_g6,error"
)

DEFAULT_MAX_RUNS = 4096


class ConfigError(Exception):
    pass


class NumericFailure(Exception):
    pass


def _fmt(x: float) -> str:
    return repr(float(x))


def _jsonable(value):
    """Make report values JSON-clean; non-finite floats become strings."""
    if isinstance(value, float):
        if math.isfinite(value):
            return value
        return "inf" if value == math.inf else "-inf" if value == -math.inf else "nan"
    if isinstance(value, (np.floating,)):
        return _jsonable(float(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, SimplexPoint):
        return [_jsonable(v) for v in value.coords]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset, np.ndarray)):
        return [_jsonable(v) for v in value]
    return value


def _parse_triple(value, what: str):
    if isinstance(value, str):
        parts = value.split(",")
    else:
        parts = list(value)
    if len(parts) != 3:
        raise ConfigError(f"{what} needs exactly 3 comma-separated values, got {value!r}")
    try:
        return tuple(float(v) for v in parts)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad {what}: {exc}") from exc


def _parse_floats(value, what: str):
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip() != ""]
    else:
        parts = list(value)
    if not parts:
        raise ConfigError(f"{what} must be a non-empty list")
    try:
        return [float(v) for v in parts]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad {what}: {exc}") from exc


def _parse_ints(value, what: str):
    return [int(v) for v in _parse_floats(value, what)]


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def _merge_config(ns: argparse.Namespace, keys) -> dict:
    """File values first, then any flag that was actually given wins."""
    cfg = {}
    if getattr(ns, "config", None):
        file_cfg = _load_config_file(ns.config)
        for k, v in file_cfg.items():
            kk = k.replace("-", "_")
            if kk in keys:
                cfg[kk] = v
    for k in keys:
        v = getattr(ns, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _build_speed(cfg) -> dynamics.SpeedFunction:
    f_const = cfg.get("f_const")
    f_affine = cfg.get("f_affine")
    if f_const is not None and f_affine is not None:
        raise ConfigError("give either f_const or f_affine, not both")
    try:
        if f_affine is not None:
            vals = _parse_floats(f_affine, "f_affine")
            if len(vals) != 4:
                raise ConfigError(f"f_affine needs 4 coefficients, got {len(vals)}")
            return dynamics.AffineSpeed(*vals)
        if f_const is None:
            raise ConfigError("a speed function is required (f_const or f_affine)")
        return dynamics.ConstantSpeed(float(f_const))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _build_params(cfg) -> dynamics.Parameters:
    for k in ("a", "b", "c"):
        if cfg.get(k) is None:
            raise ConfigError(f"parameter --{k} is required")
    try:
        return dynamics.Parameters(float(cfg["a"]), float(cfg["b"]), float(cfg["c"]))
    except (SimplexflowError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _build_start(cfg) -> SimplexPoint:
    if cfg.get("x0") is None:
        raise ConfigError("--x0 is required")
    triple = _parse_triple(cfg["x0"], "x0")
    try:
        return make_point(*triple)
    except SimplexflowError as exc:
        raise ConfigError(str(exc)) from exc


def _run_mode(cfg) -> str:
    mode = cfg.get("log_domain", "auto")
    mapping = {"auto": "auto", "on": "log", "off": "linear"}
    if mode not in mapping:
        raise ConfigError(f"log_domain must be auto|on|off, got {mode!r}")
    return mapping[mode]


def _speed_echo(cfg) -> dict:
    echo = {}
    if cfg.get("f_affine") is not None:
        echo["f_affine"] = _parse_floats(cfg["f_affine"], "f_affine")
    else:
        echo["f_const"] = float(cfg["f_const"])
    return echo


def _validate_samples(traj: dynamics.Trajectory) -> None:
    coords = traj.coords
    if not np.all(np.isfinite(coords)):
        raise NumericFailure("non-finite coordinate in trajectory output")
    if np.any(coords < 0.0) or np.any(coords > 1.0):
        raise NumericFailure("coordinate outside [0, 1] in trajectory output")
    sums = coords.sum(axis=1)
    if np.max(np.abs(sums - 1.0)) > 1e-9:
        raise NumericFailure("coordinate sums drifted beyond 1e-9")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SIM_KEYS = (
    "a", "b", "c", "f_const", "f_affine", "x0", "steps", "stride",
    "log_domain", "format", "out",
)


def _sim_config(ns) -> dict:
    cfg = _merge_config(ns, _SIM_KEYS)
    cfg.setdefault("steps", 1000)
    cfg.setdefault("stride", 1)
    cfg.setdefault("log_domain", "auto")
    cfg["steps"] = int(cfg["steps"])
    cfg["stride"] = int(cfg["stride"])
    if cfg["steps"] < 0:
        raise ConfigError("steps must be >= 0")
    if cfg["stride"] < 1:
        raise ConfigError("stride must be >= 1")
    fmt = cfg.get("format")
    if fmt is None:
        out = cfg.get("out")
        fmt = "json" if (out and str(out).endswith(".json")) else "csv"
        cfg["format"] = fmt
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")
    return cfg


def _simulate_traj(cfg):
    params = _build_params(cfg)
    speed = _build_speed(cfg)
    start = _build_start(cfg)
    try:
        traj = dynamics.iterate(
            start, params, speed, cfg["steps"], stride=cfg["stride"],
            observables=("phi", "sector"), mode=_run_mode(cfg),
        )
    except SimplexflowError as exc:
        raise NumericFailure(str(exc)) from exc
    _validate_samples(traj)
    return traj


def _header_echo(cfg, keys) -> dict:
    header = {}
    for k in keys:
        if k in ("out",):
            continue
        if k in ("f_const", "f_affine"):
            continue
        if k in cfg and cfg[k] is not None:
            header[k] = cfg[k]
    header.update(_speed_echo(cfg))
    if "x0" in cfg:
        header["x0"] = list(_parse_triple(cfg["x0"], "x0"))
    return header


def cmd_simulate(ns) -> int:
    cfg = _sim_config(ns)
    traj = _simulate_traj(cfg)
    phi = traj.observables["phi"]
    sec = traj.observables["sector"]
    if cfg["format"] == "csv":
        lines = ["step,x1,x2,x3,phi,sector"]
        for k in range(len(traj)):
            x1, x2, x3 = traj.coords[k]
            lines.append(
                f"{int(traj.steps[k])},{_fmt(x1)},{_fmt(x2)},{_fmt(x3)},{_fmt(phi[k])},{int(sec[k])}"
            )
        _write_text(cfg.get("out"), "\n".join(lines) + "\n")
    else:
        header = _header_echo(cfg, _SIM_KEYS)
        header["log_domain_engaged_at"] = traj.log_domain_from
        doc = {
            "header": header,
            "samples": [
                {
                    "step": int(traj.steps[k]),
                    "x1": float(traj.coords[k, 0]),
                    "x2": float(traj.coords[k, 1]),
                    "x3": float(traj.coords[k, 2]),
                    "phi": float(phi[k]),
                    "sector": int(sec[k]),
                }
                for k in range(len(traj))
            ],
        }
        _write_text(cfg.get("out"), json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

_ANALYZE_KEYS = _SIM_KEYS + (
    "eps", "grid", "burn_in", "cesaro_orders", "conv_tol", "conv_window", "gamma",
)


def _analyze_config(ns) -> dict:
    cfg = _merge_config(ns, _ANALYZE_KEYS)
    cfg.setdefault("steps", 1000)
    cfg.setdefault("stride", 1)
    cfg.setdefault("log_domain", "auto")
    cfg.setdefault("eps", 0.05)
    cfg.setdefault("grid", 0.05)
    cfg.setdefault("cesaro_orders", 2)
    cfg.setdefault("conv_tol", 1e-9)
    cfg.setdefault("conv_window", 100)
    cfg["steps"] = int(cfg["steps"])
    cfg["stride"] = int(cfg["stride"])
    cfg["format"] = "json"
    if cfg["stride"] != 1:
        raise ConfigError("analyze requires stride 1")
    if cfg["steps"] < 1:
        raise ConfigError("analyze requires steps >= 1")
    cfg.setdefault("burn_in", cfg["steps"] // 2)
    return cfg


def _log_spaced(n: int):
    marks = {0, n}
    m = 1.0
    while m < n:
        marks.add(int(round(m)))
        m *= math.sqrt(10.0)
    return sorted(marks)


def cmd_analyze(ns) -> int:
    cfg = _analyze_config(ns)
    traj = _simulate_traj(cfg)
    params = traj.params
    regime = analysis.classify_regime(params)

    state = analysis.CesaroState(int(cfg["cesaro_orders"]))
    snapshots = []
    marks = set(_log_spaced(traj.n_steps))
    for k in range(len(traj)):
        state.push(traj.coords[k])
        n = int(traj.steps[k])
        if n in marks:
            snapshots.append(
                {"n": n, "values": {f"c{j}": list(state.value(j)) for j in range(state.max_order + 1)}}
            )

    gamma = cfg.get("gamma")
    gamma0 = analysis.estimate_gamma0(traj)
    audit_gamma = float(gamma) if gamma is not None else gamma0
    audit = None
    if audit_gamma is not None and audit_gamma > 0.0:
        a = analysis.sector_cycle_audit(traj, audit_gamma)
        audit = {
            "gamma": a.gamma,
            "audited_samples": a.audited_samples,
            "visits": a.visits,
            "step_counts": a.step_counts,
            "transitions": [[i, j, count] for (i, j), count in sorted(a.transitions.items())],
            "violations": a.violation_count,
            "degenerate_filter": a.degenerate_filter,
        }

    sojourns = analysis.sojourn_stats(traj, float(cfg["eps"]))
    persist = analysis.persistence_report(traj)
    omega = analysis.omega_limit_estimate(traj, int(cfg["burn_in"]), float(cfg["grid"]))
    limit = analysis.detect_convergence(traj, float(cfg["conv_tol"]), int(cfg["conv_window"]))

    report = {
        "regime": regime.regime,
        "persistence": regime.persistence,
        "predicted_limit": regime.predicted_limit,
        "description": regime.description,
        "phi": analysis.phi_decay_stats(traj),
        "sectors": {"gamma0_estimate": gamma0, "audit": audit},
        "sojourns": {
            "eps": float(cfg["eps"]),
            "per_vertex": {
                str(v): [
                    {
                        "start": s.start_step,
                        "end": s.end_step,
                        "length": s.length,
                        "log_phi_at_start": s.log_phi_at_start,
                    }
                    for s in lst
                ]
                for v, lst in sojourns.items()
            },
        },
        "cesaro": {"max_order": int(cfg["cesaro_orders"]), "snapshots": snapshots},
        "persistence_proxies": {
            "global_min": persist.global_min,
            "tail_min": persist.tail_min,
            "tail_max": persist.tail_max,
            "tail_start_step": persist.tail_start_step,
        },
        "omega": {
            "grid": float(cfg["grid"]),
            "burn_in": int(cfg["burn_in"]),
            "cells": sorted(omega),
        },
        "convergence": {
            "limit": limit,
            "tol": float(cfg["conv_tol"]),
            "window": int(cfg["conv_window"]),
        },
        "log_domain_engaged_at": traj.log_domain_from,
    }
    doc = {"header": _header_echo(cfg, _ANALYZE_KEYS), "report": _jsonable(report)}
    _write_text(cfg.get("out"), json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

_SWEEP_KEYS = (
    "grid_a", "grid_b", "grid_c", "grid_f", "starts", "steps", "seed",
    "threads", "max_runs", "conv_tol", "conv_window", "out",
)


def _sweep_config(ns) -> dict:
    cfg = _merge_config(ns, _SWEEP_KEYS)
    for key in ("grid_a", "grid_b", "grid_c"):
        if cfg.get(key) is None:
            raise ConfigError(f"--{key.replace('_', '-')} is required")
        cfg[key] = _parse_floats(cfg[key], key)
    cfg["grid_f"] = _parse_floats(cfg.get("grid_f", "1.0"), "grid_f")
    cfg["starts"] = int(cfg.get("starts", 1))
    cfg["steps"] = int(cfg.get("steps", 1000))
    cfg["seed"] = int(cfg.get("seed", 0))
    cfg["threads"] = int(cfg.get("threads", min(8, os.cpu_count() or 1)))
    cfg["max_runs"] = int(cfg.get("max_runs", DEFAULT_MAX_RUNS))
    cfg["conv_tol"] = float(cfg.get("conv_tol", 1e-9))
    cfg["conv_window"] = int(cfg.get("conv_window", 100))
    if cfg["starts"] < 1:
        raise ConfigError("starts must be >= 1")
    if cfg["steps"] < 1:
        raise ConfigError("steps must be >= 1")
    if cfg["threads"] < 1:
        raise ConfigError("threads must be >= 1")
    env_cap = os.environ.get("SIMPLEXFLOW_THREADS")
    if env_cap:
        try:
            cfg["threads"] = max(1, min(cfg["threads"], int(env_cap)))
        except ValueError as exc:
            raise ConfigError(f"bad SIMPLEXFLOW_THREADS value {env_cap!r}") from exc
    total = (
        len(cfg["grid_a"]) * len(cfg["grid_b"]) * len(cfg["grid_c"])
        * len(cfg["grid_f"]) * cfg["starts"]
    )
    if total > cfg["max_runs"]:
        raise ConfigError(f"sweep of {total} runs exceeds the cap {cfg['max_runs']}")
    return cfg


def _sample_interior(rng: random.Random):
    while True:
        u, v = sorted((rng.random(), rng.random()))
        x = (u, v - u, 1.0 - v)
        if min(x) > 0.0:
            return x


def _sector_visit_counts(traj: dynamics.Trajectory) -> list[int]:
    sec = analysis.sector_array(traj)
    entries = np.empty(len(sec), dtype=bool)
    entries[0] = True
    entries[1:] = sec[1:] != sec[:-1]
    counts = [0] * 6
    for s in sec[entries]:
        counts[int(s) - 1] += 1
    return counts


def _sweep_row(index: int, a: float, b: float, c: float, fv: float, x0, cfg) -> str:
    base = [str(index), _fmt(a), _fmt(b), _fmt(c), _fmt(fv), _fmt(x0[0]), _fmt(x0[1]), _fmt(x0[2])]
    empty = [""] * 10
    try:
        params = dynamics.Parameters(a, b, c)
        speed = dynamics.ConstantSpeed(fv)
        start = make_point(*x0)
    except SimplexflowError as exc:
        token = "zero_parameter" if "zero" in str(exc) else "invalid_parameter"
        return ",".join(base + empty + [token])
    except ValueError:
        return ",".join(base + empty + ["invalid_parameter"])
    try:
        traj = dynamics.iterate(start, params, speed, cfg["steps"], stride=1, mode="auto")
        _validate_samples(traj)
    except (SimplexflowError, NumericFailure):
        return ",".join(base + empty + ["numeric_failure"])
    regime = analysis.classify_regime(params).regime
    limit = analysis.detect_convergence(traj, cfg["conv_tol"], cfg["conv_window"])
    phi_final = analysis.lyapunov_phi(traj.final, params)
    visits = _sector_visit_counts(traj)
    limit_cells = [_fmt(v) for v in limit.coords] if limit is not None else ["", "", ""]
    row = base + [regime] + limit_cells + [_fmt(phi_final)] + [str(v) for v in visits] + [""]
    return ",".join(row)


def cmd_sweep(ns) -> int:
    cfg = _sweep_config(ns)
    rng = random.Random(cfg["seed"])
    starts = [_sample_interior(rng) for _ in range(cfg["starts"])]
    work = list(
        itertools.product(cfg["grid_a"], cfg["grid_b"], cfg["grid_c"], cfg["grid_f"], range(cfg["starts"]))
    )
    rows: list[str | None] = [None] * len(work)

    def job(k: int) -> None:
        a, b, c, fv, si = work[k]
        rows[k] = _sweep_row(k, a, b, c, fv, starts[si], cfg)

    if cfg["threads"] == 1:
        for k in range(len(work)):
            job(k)
    else:
        with ThreadPoolExecutor(max_workers=cfg["threads"]) as pool:
            list(pool.map(job, range(len(work))))
    text = "\n".join([SWEEP_COLUMNS] + rows) + "\n"
    _write_text(cfg.get("out"), text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# ode-compare
# ---------------------------------------------------------------------------

_ODE_KEYS = (
    "a", "b", "c", "f_const", "f_affine", "x0", "horizon", "n_list", "ref_h", "out",
)


def _ode_config(ns) -> dict:
    cfg = _merge_config(ns, _ODE_KEYS)
    cfg.setdefault("horizon", 5.0)
    cfg.setdefault("n_list", "100,1000,10000,100000")
    cfg.setdefault("ref_h", 1e-3)
    cfg["horizon"] = float(cfg["horizon"])
    cfg["n_list"] = _parse_ints(cfg["n_list"], "n_list")
    cfg["ref_h"] = float(cfg["ref_h"])
    if cfg["horizon"] < 0:
        raise ConfigError("horizon must be >= 0")
    return cfg


def cmd_ode_compare(ns) -> int:
    cfg = _ode_config(ns)
    params = _build_params(cfg)
    speed = _build_speed(cfg)
    start = _build_start(cfg)
    if cfg["horizon"] == 0.0:
        fit = ode.OrderFit(tuple(cfg["n_list"]), tuple(0.0 for _ in cfg["n_list"]), None, True, 0.0)
    else:
        try:
            fit = ode.convergence_order(
                start, params, speed, cfg["horizon"], cfg["n_list"], ref_h=cfg["ref_h"]
            )
        except SimplexflowError as exc:
            raise NumericFailure(str(exc)) from exc
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    doc = {
        "header": _header_echo(cfg, _ODE_KEYS),
        "result": {
            "n_list": list(fit.n_list),
            "errors": list(fit.errors),
            "slope": fit.slope,
            "degenerate": fit.degenerate,
            "reference_self_error": fit.reference_self_error,
        },
    }
    _write_text(cfg.get("out"), json.dumps(_jsonable(doc), indent=2) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / entry
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; explicit flags override it")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--f-const", dest="f_const", type=float)
    p.add_argument("--f-affine", dest="f_affine", help="a0,a1,a2,a3")
    p.add_argument("--x0", help="x1,x2,x3")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexflow",
        description="Simulate and analyze the three-species prey-predator map on the simplex",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="iterate the map and write the trajectory")
    _add_common(p)
    p.add_argument("--steps", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--log-domain", dest="log_domain", choices=("auto", "on", "off"))
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="run and emit a JSON diagnostics report")
    _add_common(p)
    p.add_argument("--steps", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--log-domain", dest="log_domain", choices=("auto", "on", "off"))
    p.add_argument("--eps", type=float, help="vertex neighborhood size")
    p.add_argument("--grid", type=float, help="limit-set grid cell size")
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--cesaro-orders", dest="cesaro_orders", type=int)
    p.add_argument("--conv-tol", dest="conv_tol", type=float)
    p.add_argument("--conv-window", dest="conv_window", type=int)
    p.add_argument("--gamma", type=float, help="audit threshold (default: estimated)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="parallel parameter sweep, one CSV row per run")
    p.add_argument("--config", help="JSON config file; explicit flags override it")
    p.add_argument("--grid-a", dest="grid_a", help="comma list of a values")
    p.add_argument("--grid-b", dest="grid_b", help="comma list of b values")
    p.add_argument("--grid-c", dest="grid_c", help="comma list of c values")
    p.add_argument("--grid-f", dest="grid_f", help="comma list of constant speeds")
    p.add_argument("--starts", type=int, help="random interior starts per cell")
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--max-runs", dest="max_runs", type=int)
    p.add_argument("--conv-tol", dest="conv_tol", type=float)
    p.add_argument("--conv-window", dest="conv_window", type=int)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ode-compare", help="Euler endpoint errors against the reference integrator")
    _add_common(p)
    p.add_argument("--T", dest="horizon", type=float)
    p.add_argument("--n-list", dest="n_list", help="comma list of substeps per unit time")
    p.add_argument("--ref-h", dest="ref_h", type=float)
    p.set_defaults(func=cmd_ode_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return ns.func(ns)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
