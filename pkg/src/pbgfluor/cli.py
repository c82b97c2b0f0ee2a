"""Command-line front end for the fluorescence-spectrum library.

Subcommands mirror the library surface: ``kernel`` tabulates the reservoir
memory kernel, ``spectrum`` evaluates one steady-state spectrum, ``scan``
sweeps the atom-edge offset, ``order-check`` compares the plain and
drive-dressed linearizations, and ``validate`` runs the oracle suite.

Configs are flat JSON objects with strict keys. Every run is deterministic:
the same config produces byte-identical CSV (17 significant digits) and the
JSON summary embeds a config echo that reproduces the run when fed back in.
Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConditioningError, UnsupportedModelError
from .first_order import order_comparison
from .kernels import memory_kernel, memory_kernel_conj, noise_strength
from .oracle import validate_suite
from .params import PhysicalParams, ReservoirKind, ReservoirModel
from .spectrum import (
    compute_spectrum,
    default_grid,
    effective_gamma,
    offset_scan,
    peak_analysis,
)

__all__ = ["main", "ConfigError"]

_ENV_THREADS = "PBGFLUOR_THREADS"

_PARAM_KEYS = {"model", "omega_a", "omega_c", "beta", "gamma", "rabi", "delta", "omega_L"}
_GRID_KEYS = {"grid_min", "grid_max", "grid_points", "refine_tol", "tail_tol"}
_SCAN_KEYS = {"scan_offsets", "prominence_frac"}

_ALLOWED_KEYS = {
    "kernel": _PARAM_KEYS | _GRID_KEYS,
    "spectrum": _PARAM_KEYS | _GRID_KEYS,
    "scan": _PARAM_KEYS | _SCAN_KEYS | {"refine_tol", "tail_tol"},
    "order-check": _PARAM_KEYS | _GRID_KEYS,
}


class ConfigError(Exception):
    """Invalid or inconsistent run configuration."""


def _fail(code: int, kind: str, message: str) -> int:
    line = " ".join(str(message).split()) or "unknown error"
    print(f"pbgfluor: {kind}: {line}", file=sys.stderr)
    return code


def _load_config(path: str, subcommand: str) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object of flat keys")
    unknown = sorted(set(cfg) - _ALLOWED_KEYS[subcommand])
    if unknown:
        raise ConfigError(f"unknown config keys for {subcommand}: {', '.join(unknown)}")
    return cfg


def _number(cfg: dict, key: str, *, required: bool = False,
            default: float | None = None) -> float | None:
    if key not in cfg:
        if required:
            raise ConfigError(f"missing required key '{key}'")
        return default
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"key '{key}' must be a number, got {v!r}")
    return float(v)


def _params_from_config(cfg: dict) -> PhysicalParams:
    model = cfg.get("model")
    if model not in ("free_space", "band_edge"):
        raise ConfigError("key 'model' must be 'free_space' or 'band_edge'")
    rabi = _number(cfg, "rabi", required=True)
    if model == "free_space":
        for bad in ("omega_c", "beta"):
            if bad in cfg:
                raise ConfigError(f"key '{bad}' does not apply to free space")
        gamma = _number(cfg, "gamma", required=True)
        reservoir = ReservoirModel.free_space(gamma)
        omega_a = _number(cfg, "omega_a", default=0.0)
    else:
        if "gamma" in cfg:
            raise ConfigError("key 'gamma' does not apply to the band-edge model")
        omega_c = _number(cfg, "omega_c", required=True)
        beta = _number(cfg, "beta", default=1.0)
        reservoir = ReservoirModel.band_edge(omega_c, beta=beta)
        omega_a = _number(cfg, "omega_a", required=True)
    delta = _number(cfg, "delta")
    omega_L = _number(cfg, "omega_L")
    if delta is None:
        delta = 0.0 if omega_L is None else omega_L - omega_a
    try:
        p = PhysicalParams.make(omega_a, rabi, reservoir, delta=delta)
        if omega_L is not None and not math.isclose(p.omega_L, omega_L,
                                                    rel_tol=1e-12, abs_tol=1e-12):
            raise ConfigError(
                f"delta={delta} and omega_L={omega_L} disagree with omega_a={omega_a}")
        return p
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _config_echo(params: PhysicalParams, cfg: dict) -> dict:
    """Normalized flat config that reproduces this run when fed back in."""
    r = params.reservoir
    if r.kind is ReservoirKind.FREE_SPACE:
        echo = {"model": "free_space", "gamma": r.gamma, "omega_a": params.omega_a}
    else:
        echo = {"model": "band_edge", "omega_a": params.omega_a,
                "omega_c": r.omega_c, "beta": r.beta}
    echo["rabi"] = params.rabi
    echo["delta"] = params.delta
    for key in sorted(_GRID_KEYS | _SCAN_KEYS):
        if key in cfg:
            echo[key] = cfg[key]
    return echo


def _explicit_grid(cfg: dict, params: PhysicalParams) -> np.ndarray | None:
    has_min, has_max = "grid_min" in cfg, "grid_max" in cfg
    if has_min != has_max:
        raise ConfigError("grid_min and grid_max must be given together")
    if not has_min:
        if "grid_points" in cfg:
            raise ConfigError("grid_points needs grid_min and grid_max")
        return None
    lo = _number(cfg, "grid_min")
    hi = _number(cfg, "grid_max")
    n = cfg.get("grid_points", 2001)
    if isinstance(n, bool) or not isinstance(n, int) or n < 16:
        raise ConfigError(f"grid_points must be an integer >= 16, got {n!r}")
    if not lo < hi:
        raise ConfigError(f"grid_min={lo} must be below grid_max={hi}")
    # an explicit range still has to cover the triplet plus 10 linewidths
    geff = effective_gamma(params)
    reach = params.rabi + 10.0 * geff
    need_lo = -reach
    if params.reservoir.kind is ReservoirKind.BAND_EDGE:
        need_lo = max(need_lo, params.reservoir.omega_c - params.omega_a)
    if lo > need_lo or hi < reach:
        raise ConfigError(
            f"grid [{lo}, {hi}] does not cover the peaks plus 10 linewidths "
            f"([{need_lo:.6g}, {reach:.6g}])")
    return np.linspace(lo, hi, n)


def _threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    else:
        raw = os.environ.get(_ENV_THREADS, "")
        if raw:
            try:
                n = int(raw)
            except ValueError:
                raise ConfigError(f"{_ENV_THREADS} must be an integer, got {raw!r}")
        else:
            n = 1
    if n < 1:
        raise ConfigError(f"thread count must be >= 1, got {n}")
    return n


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    rows = [",".join(header)]
    for i in range(len(columns[0])):
        rows.append(",".join(_fmt(col[i]) for col in columns))
    path.write_text("\n".join(rows) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _peak_rows(table) -> list[dict]:
    out = []
    for i, pk in enumerate(table.peaks):
        out.append({"index": i, "location": pk.location, "height": pk.height,
                    "fwhm": None if math.isnan(pk.fwhm) else pk.fwhm,
                    "power": pk.power})
    return out


def _run_kernel(cfg: dict, out: Path, fmt: str) -> int:
    params = _params_from_config(cfg)
    w = _explicit_grid(cfg, params)
    if w is None:
        r = params.reservoir
        if r.kind is ReservoirKind.BAND_EDGE:
            edge = r.omega_c - params.omega_a
            lo = max(edge - 2.0 * r.omega_c, -params.omega_a * (1.0 - 1e-9))
            w = np.linspace(lo, edge + 6.0 * r.omega_c, 2001)
            w = np.unique(np.append(w, edge))
        else:
            w = np.linspace(-5.0 * r.gamma, 5.0 * r.gamma, 2001)
    g = memory_kernel(w, params)
    gc = memory_kernel_conj(w, params)
    n = noise_strength(w, params)
    header = ["omega", "re_G", "im_G", "abs_G", "phase_G", "re_Gc", "im_Gc", "N"]
    cols = [w, g.real, g.imag, np.abs(g), np.angle(g), gc.real, gc.imag, n]
    summary = {"version": __version__, "unit": params.reservoir.unit_name,
               "config": _config_echo(params, cfg), "rows": int(w.size)}
    if fmt == "csv":
        _write_csv(out / "kernel.csv", header, cols)
        summary["csv"] = "kernel.csv"
        _write_json(out / "kernel.json", summary)
    else:
        summary["columns"] = {name: [float(v) for v in col]
                              for name, col in zip(header, cols)}
        _write_json(out / "kernel.json", summary)
    return 0


def _spectrum_summary(params: PhysicalParams, cfg: dict, result, table) -> dict:
    return {
        "version": __version__,
        "unit": params.reservoir.unit_name,
        "config": _config_echo(params, cfg),
        "kind": result.kind,
        "coherent_weight": result.coherent_weight,
        "total_power": result.coherent_weight + float(np.trapezoid(result.s_inc, result.omega)),
        "steady_state_sz": result.meta.get("steady_sz"),
        "peaks": _peak_rows(table),
        "grid_points": int(result.omega.size),
    }


def _run_spectrum(cfg: dict, out: Path, fmt: str) -> int:
    params = _params_from_config(cfg)
    w = _explicit_grid(cfg, params)
    kw = {}
    for key, name in (("refine_tol", "refine_tol"), ("tail_tol", "tail_tol")):
        if key in cfg:
            kw[name] = _number(cfg, key)
    result = compute_spectrum(params, w, **kw)
    table = peak_analysis(result)
    summary = _spectrum_summary(params, cfg, result, table)
    if fmt == "csv":
        _write_csv(out / "spectrum.csv", ["omega", "s_inc"],
                   [result.omega, result.s_inc])
        summary["csv"] = "spectrum.csv"
        _write_json(out / "spectrum.json", summary)
    else:
        summary["omega"] = [float(v) for v in result.omega]
        summary["s_inc"] = [float(v) for v in result.s_inc]
        _write_json(out / "spectrum.json", summary)
    return 0


def _run_scan(cfg: dict, out: Path, fmt: str, threads: int) -> int:
    params = _params_from_config(cfg)
    if params.reservoir.kind is not ReservoirKind.BAND_EDGE:
        raise ConfigError("scan requires model = band_edge")
    offsets = cfg.get("scan_offsets")
    if not isinstance(offsets, list) or not offsets:
        raise ConfigError("scan_offsets must be a non-empty list of offsets above the edge")
    vals = []
    for v in offsets:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            raise ConfigError(f"scan offsets must be positive numbers, got {v!r}")
        vals.append(float(v))
    prom = _number(cfg, "prominence_frac", default=0.01)
    kw = {}
    for key in ("refine_tol", "tail_tol"):
        if key in cfg:
            kw[key] = _number(cfg, key)
    rows = offset_scan(params, vals, threads=threads, prominence_frac=prom, **kw)
    summary = {"version": __version__, "unit": params.reservoir.unit_name,
               "config": _config_echo(params, cfg),
               "rows": [{"offset": r.offset, "omega_a": r.omega_a,
                         "total_power": r.power,
                         "peak_count": len(r.table.peaks) if r.table else 0,
                         "peaks": _peak_rows(r.table) if r.table else [],
                         "error": r.error}
                        for r in rows]}
    if fmt == "csv":
        ok = [r for r in rows if r.table is not None]
        _write_csv(out / "scan.csv",
                   ["offset", "omega_a", "total_power", "peak_count"],
                   [np.array([r.offset for r in ok]),
                    np.array([r.omega_a for r in ok]),
                    np.array([r.power for r in ok]),
                    np.array([float(len(r.table.peaks)) for r in ok])])
        flat = [(r.offset, i, pk.location, pk.height, pk.fwhm, pk.power)
                for r in ok for i, pk in enumerate(r.table.peaks)]
        _write_csv(out / "scan_peaks.csv",
                   ["offset", "peak_index", "location", "height", "fwhm", "power"],
                   [np.array([t[k] for t in flat]) for k in range(6)])
        summary["csv"] = ["scan.csv", "scan_peaks.csv"]
    _write_json(out / "scan.json", summary)
    failed = [r for r in rows if r.error is not None]
    if failed:
        raise ConditioningError(
            f"{len(failed)} of {len(rows)} offsets failed, first: {failed[0].error}")
    return 0


def _run_order_check(cfg: dict, out: Path, fmt: str) -> int:
    params = _params_from_config(cfg)
    w = _explicit_grid(cfg, params)
    if w is None:
        tail = _number(cfg, "tail_tol", default=1e-8)
        w = default_grid(params, tail_tol=tail)
    cmp_ = order_comparison(params, w)
    report = {"version": __version__, "unit": params.reservoir.unit_name,
              "config": _config_echo(params, cfg),
              "rabi": cmp_.rabi,
              "max_peak_relative": cmp_.max_peak_relative,
              "integrated_relative": cmp_.integrated_relative,
              "coherent_weight_relative": cmp_.meta["weight_relative"],
              "grid_points": int(cmp_.omega.size)}
    if fmt == "csv":
        _write_csv(out / "order_check.csv", ["omega", "s_plain", "s_dressed"],
                   [cmp_.omega, cmp_.plain, cmp_.dressed])
        report["csv"] = "order_check.csv"
    _write_json(out / "order_check.json", report)
    return 0


def _run_validate(out: Path, fmt: str) -> int:
    checks = validate_suite()
    payload = {"version": __version__,
               "all_passed": all(bool(c.passed) for c in checks),
               "checks": [{"name": c.name, "passed": bool(c.passed),
                           "value": float(c.value), "threshold": float(c.threshold),
                           "detail": c.detail}
                          for c in checks]}
    if fmt == "csv":
        rows = ["name,passed,value,threshold"]
        for c in checks:
            rows.append(f"{c.name},{int(c.passed)},{_fmt(c.value)},{_fmt(c.threshold)}")
        (out / "validate.csv").write_text("\n".join(rows) + "\n")
        payload["csv"] = "validate.csv"
    _write_json(out / "validate.json", payload)
    if not payload["all_passed"]:
        bad = ", ".join(c.name for c in checks if not c.passed)
        raise ConditioningError(f"validation failed: {bad}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbgfluor",
        description="Steady-state resonance fluorescence near a photonic band edge.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    specs = [
        ("kernel", "tabulate the reservoir memory kernel and noise strength"),
        ("spectrum", "evaluate one steady-state fluorescence spectrum"),
        ("scan", "sweep the atom-edge offset at fixed drive"),
        ("order-check", "compare plain and drive-dressed linearizations"),
        ("validate", "run the oracle suite and write a pass/fail report"),
    ]
    for name, help_ in specs:
        p = sub.add_parser(name, help=help_)
        if name != "validate":
            p.add_argument("--config", required=True, help="flat JSON config file")
        p.add_argument("--out", default=".", help="output directory (default: cwd)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--threads", type=int, default=None,
                       help=f"worker threads (default: ${_ENV_THREADS} or 1)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        threads = _threads(args)
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            probe = out / ".write_probe"
            probe.write_text("")
            probe.unlink()
        except OSError as exc:
            raise ConfigError(f"output directory {out} is not writable: {exc}")
        if args.subcommand == "validate":
            return _run_validate(out, args.format)
        cfg = _load_config(args.config, args.subcommand)
        if args.subcommand == "kernel":
            return _run_kernel(cfg, out, args.format)
        if args.subcommand == "spectrum":
            return _run_spectrum(cfg, out, args.format)
        if args.subcommand == "scan":
            return _run_scan(cfg, out, args.format, threads)
        return _run_order_check(cfg, out, args.format)
    except (ConfigError, UnsupportedModelError) as exc:
        return _fail(2, "config error", str(exc))
    except ConditioningError as exc:
        return _fail(3, "numerical error", str(exc))
    except (RuntimeError, ValueError) as exc:
        return _fail(3, "numerical error", str(exc))


if __name__ == "__main__":
    sys.exit(main())
