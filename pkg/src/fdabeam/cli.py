"""Scenario-driven command line front end.

Parses a flat INI-style scenario file (degrees and engineering-suffixed units
accepted at the boundary, converted once at parse time), dispatches to the
beampattern engines, and writes plot-ready CSV/binary artifacts plus a
manifest of content hashes.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 numerical error.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import os
import re
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from . import presets as presets_mod
from .array_model import (
    ArrayConfig,
    FrequencyPlan,
    TabulatedPlan,
    TimeModulatedPlan,
    UniformPlan,
    WeightVector,
    random_unimodular_weights,
    steered_weights,
    uniform_weights,
)
from .beampattern_instant import (
    grid_to_binary,
    grid_to_csv,
    legacy_grid,
    sweep_grid,
    theta_grid,
    zero_time_cut,
)
from .beampattern_integral import (
    compare_fgtb_mimo,
    covariance,
    covariance_to_csv,
    curve_to_csv,
    default_quadrature_samples,
    fgtb,
)
from .scan_analytics import (
    build_scan_report,
    design_phase_schedule,
    measure_peak_trajectory,
    scan_report_to_text,
    schedule_playback_grid,
    trajectory_to_csv,
)
from .waveform import FoCoding, generate_offsets, make_chirp_bank, rect_pulse

OUT_ENV = "FDABEAM_OUT"
THREADS_ENV = "FDABEAM_THREADS"

EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4


class ScenarioParseError(Exception):
    "Structural problem: unreadable file, missing section/key, unparseable value."


class ScenarioValidationError(Exception):
    "Semantic problem: values parse but contradict the model or the environment."


_UNIT_SCALE = {
    "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9,
    "s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9,
    "m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3,
}

_QTY_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zA-Zµ]*)\s*$")


def parse_quantity(text: str, where: str) -> float:
    "Number with optional engineering unit suffix, normalized to SI."
    match = _QTY_RE.match(text)
    if not match:
        raise ScenarioParseError(f"{where}: cannot parse quantity {text!r}")
    value = float(match.group(1))
    unit = match.group(2).replace("µ", "u").lower()
    if not unit:
        return value
    if unit not in _UNIT_SCALE:
        raise ScenarioParseError(f"{where}: unknown unit {match.group(2)!r}")
    return value * _UNIT_SCALE[unit]


def parse_angle(text: str, where: str) -> float:
    "Angle in radians; bare numbers and 'deg' suffixes are degrees, 'rad' is radians."
    match = _QTY_RE.match(text)
    if not match:
        raise ScenarioParseError(f"{where}: cannot parse angle {text!r}")
    value = float(match.group(1))
    unit = match.group(2).lower()
    if unit in ("", "deg"):
        return np.radians(value)
    if unit == "rad":
        return value
    raise ScenarioParseError(f"{where}: unknown angle unit {match.group(2)!r}")


def _parse_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


@dataclass
class Scenario:
    "Fully resolved scenario: parsed values only, SI units and radians throughout."

    name: str
    config: ArrayConfig
    plan: FrequencyPlan
    weights: WeightVector
    waveforms: list
    evaluations: list[tuple[str, dict]] = field(default_factory=list)
    formats: tuple[str, ...] = ("csv",)
    out_dir: str = "out"
    seed: int | None = None


_EVAL_SECTIONS = ("fitb_grid", "zero_time_cut", "legacy_grid", "fgtb_curve",
                  "mimo_compare", "scan_report", "schedule")


def _resolve_spacing(token: str, config_dict: dict, plan: FrequencyPlan, where: str) -> float:
    token = token.strip().lower()
    fc = config_dict["carrier_freq"]
    m = config_dict["num_elements"]
    c = config_dict["wave_speed"]
    if isinstance(plan, UniformPlan):
        lam0 = c / (fc + (m - 1) * plan.delta_f)
    else:
        lam0 = c / fc
    if token in ("half-wavelength", "lambda0/2"):
        return lam0 / 2.0
    if token in ("wavelength", "lambda0"):
        return lam0
    return parse_quantity(token, where)


def _parse_plan(parser: configparser.ConfigParser, num_elements: int,
                default_seed: int | None) -> FrequencyPlan:
    if not parser.has_section("plan"):
        return UniformPlan(0.0)
    sec = parser["plan"]
    kind = sec.get("type", "uniform").strip().lower()
    if kind == "uniform":
        return UniformPlan(parse_quantity(sec.get("offset", "0"), "plan.offset"))
    if kind == "coded":
        coding_name = sec.get("coding", "").strip().lower()
        scale = parse_quantity(sec.get("offset", "0"), "plan.offset")
        seed = sec.getint("seed", fallback=None)
        if seed is None:
            seed = default_seed
        if coding_name == "random" and seed is None:
            raise ScenarioValidationError("plan: random coding requires a seed")
        try:
            coding = FoCoding(scheme=coding_name, scale=scale, seed=seed)
            offsets = generate_offsets(coding, num_elements)
        except ValueError as exc:
            raise ScenarioValidationError(f"plan: {exc}") from exc
        return TabulatedPlan(offsets=tuple(offsets))
    if kind == "tabulated":
        offsets = [parse_quantity(v, "plan.offsets") for v in _parse_list(sec.get("offsets", ""))]
        if len(offsets) != num_elements:
            raise ScenarioValidationError(
                f"plan: {len(offsets)} tabulated offsets for {num_elements} elements")
        return TabulatedPlan(offsets=tuple(offsets))
    if kind == "time-modulated":
        try:
            return TimeModulatedPlan(
                form=sec.get("form", "sqrt").strip().lower(),
                rate=parse_quantity(sec.get("rate", "0"), "plan.rate"),
                time_scale=parse_quantity(sec.get("time_scale", "1 us"), "plan.time_scale"),
            )
        except ValueError as exc:
            raise ScenarioValidationError(f"plan: {exc}") from exc
    raise ScenarioParseError(f"plan: unknown type {kind!r}")


def _parse_weights(parser: configparser.ConfigParser, config: ArrayConfig,
                   plan: FrequencyPlan, default_seed: int | None) -> WeightVector:
    if not parser.has_section("weights"):
        return uniform_weights(config.num_elements)
    sec = parser["weights"]
    kind = sec.get("type", "uniform").strip().lower()
    if kind == "uniform":
        return uniform_weights(config.num_elements)
    if kind == "steered":
        if "angle" not in sec:
            raise ScenarioParseError("weights: steered weights need an angle")
        angle = parse_angle(sec["angle"], "weights.angle")
        try:
            return steered_weights(config, plan, angle)
        except ValueError as exc:
            raise ScenarioValidationError(f"weights: {exc}") from exc
    if kind == "random":
        seed = sec.getint("seed", fallback=None)
        if seed is None:
            seed = default_seed
        if seed is None:
            raise ScenarioValidationError("weights: random weights require a seed")
        return random_unimodular_weights(config.num_elements, seed)
    raise ScenarioParseError(f"weights: unknown type {kind!r}")


def _parse_waveforms(parser: configparser.ConfigParser, config: ArrayConfig) -> list:
    if not parser.has_section("waveforms"):
        return [rect_pulse(config.pulse_duration)] * config.num_elements
    sec = parser["waveforms"]
    kind = sec.get("kind", "rect").strip().lower()
    if kind == "rect":
        bw = sec.get("bandwidth")
        bandwidth = parse_quantity(bw, "waveforms.bandwidth") if bw else None
        return [rect_pulse(config.pulse_duration, bandwidth)] * config.num_elements
    if kind == "chirp-bank":
        return make_chirp_bank(
            config,
            base_rate_num=sec.getfloat("base_rate", 100.0),
            rate_step=sec.getfloat("rate_step", 10.0),
        )
    raise ScenarioParseError(f"waveforms: unknown kind {kind!r}")


def _parse_segments(sec: configparser.SectionProxy, config: ArrayConfig) -> list:
    segments = []
    for key in sorted(k for k in sec.keys() if k.startswith("segment")):
        parts = _parse_list(sec[key])
        if len(parts) != 4:
            raise ScenarioParseError(
                f"schedule.{key}: expected 't_a, t_b, theta_a, theta_b', got {sec[key]!r}")
        t_a = parse_quantity(parts[0], f"schedule.{key}")
        t_b = parse_quantity(parts[1], f"schedule.{key}")
        th_a = parse_angle(parts[2], f"schedule.{key}")
        th_b = parse_angle(parts[3], f"schedule.{key}")
        segments.append(((t_a, t_b), (th_a, th_b)))
    if not segments:
        raise ScenarioParseError("schedule: needs at least one segmentN key")
    return segments


def load_scenario(text: str, base_dir: Path | None = None) -> Scenario:
    "Parse and semantically validate a scenario file body."
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ScenarioParseError(f"not a scenario file: {exc}") from exc

    if parser.has_section("scenario") and parser["scenario"].get("preset"):
        base_name = parser["scenario"]["preset"].strip()
        try:
            base_text = presets_mod.preset_text(base_name)
        except KeyError as exc:
            raise ScenarioValidationError(str(exc)) from exc
        parser = configparser.ConfigParser()
        parser.read_string(base_text)
        parser.read_string(text)

    if not parser.has_section("array"):
        raise ScenarioParseError("missing required [array] section")
    arr = parser["array"]
    for key in ("elements", "carrier", "pulse"):
        if key not in arr:
            raise ScenarioParseError(f"array: missing required key {key!r}")

    seed = None
    name = "scenario"
    if parser.has_section("scenario"):
        name = parser["scenario"].get("name", name)
        seed = parser["scenario"].getint("seed", fallback=None)

    config_dict = {
        "num_elements": arr.getint("elements"),
        "carrier_freq": parse_quantity(arr["carrier"], "array.carrier"),
        "pulse_duration": parse_quantity(arr["pulse"], "array.pulse"),
        "wave_speed": parse_quantity(arr.get("wave_speed", "3e8"), "array.wave_speed"),
    }
    plan = _parse_plan(parser, config_dict["num_elements"], seed)
    spacing = _resolve_spacing(arr.get("spacing", "half-wavelength"), config_dict, plan,
                               "array.spacing")
    try:
        config = ArrayConfig(spacing=spacing, **config_dict)
    except ValueError as exc:
        raise ScenarioValidationError(f"array: {exc}") from exc

    weights = _parse_weights(parser, config, plan, seed)
    waveforms = _parse_waveforms(parser, config)

    evaluations = []
    for section in _EVAL_SECTIONS:
        if not parser.has_section(section):
            continue
        sec = parser[section]
        if section == "fitb_grid":
            engine = sec.get("engine", "exact").strip().lower().replace("-", "_")
            if engine not in ("exact", "closed_form"):
                raise ScenarioParseError(f"fitb_grid: unknown engine {engine!r}")
            evaluations.append((section, {
                "n_time": sec.getint("time_samples", 512),
                "n_theta": sec.getint("angle_samples", 1024),
                "engine": engine,
                "trajectory": sec.getboolean("trajectory", False),
            }))
        elif section == "zero_time_cut":
            tokens = _parse_list(sec.get("spacings", "")) or [arr.get("spacing", "half-wavelength")]
            spacings = [_resolve_spacing(tok, config_dict, plan, "zero_time_cut.spacings")
                        for tok in tokens]
            evaluations.append((section, {
                "n_theta": sec.getint("angle_samples", 4096),
                "spacings": spacings,
                "tokens": tokens,
            }))
        elif section == "legacy_grid":
            ranges = [parse_quantity(v, "legacy_grid.ranges")
                      for v in _parse_list(sec.get("ranges", ""))]
            if not ranges:
                raise ScenarioParseError("legacy_grid: needs a ranges list")
            evaluations.append((section, {
                "ranges": ranges,
                "n_time": sec.getint("time_samples", 256),
                "n_theta": sec.getint("angle_samples", 1024),
            }))
        elif section == "fgtb_curve":
            offsets = [parse_quantity(v, "fgtb_curve.offsets")
                       for v in _parse_list(sec.get("offsets", "0"))]
            evaluations.append((section, {
                "offsets": offsets,
                "n_theta": sec.getint("angle_samples", 721),
                "covariance_csv": sec.getboolean("covariance_csv", False),
            }))
        elif section == "mimo_compare":
            offsets = [parse_quantity(v, "mimo_compare.offsets")
                       for v in _parse_list(sec.get("offsets", "0"))]
            evaluations.append((section, {
                "offsets": offsets,
                "n_theta": sec.getint("angle_samples", 721),
            }))
        elif section == "scan_report":
            evaluations.append((section, {
                "t_eval": parse_quantity(sec.get("time", "0"), "scan_report.time"),
                "k": sec.getint("k", 0),
            }))
        elif section == "schedule":
            segments = _parse_segments(sec, config)
            evaluations.append((section, {
                "segments": segments,
                "n_time": sec.getint("time_samples", 512),
                "n_theta": sec.getint("angle_samples", 1024),
            }))
    if not evaluations:
        raise ScenarioParseError("scenario requests no evaluations "
                                 f"(add one of {', '.join(_EVAL_SECTIONS)})")

    formats = ("csv",)
    out_dir = "out"
    if parser.has_section("outputs"):
        sec = parser["outputs"]
        out_dir = sec.get("directory", out_dir)
        fmts = tuple(v.lower() for v in _parse_list(sec.get("formats", "csv")))
        for fmt in fmts:
            if fmt not in ("csv", "binary"):
                raise ScenarioParseError(f"outputs: unknown format {fmt!r}")
        formats = fmts
    if base_dir is not None and not os.path.isabs(out_dir):
        out_dir = str(base_dir / out_dir)

    return Scenario(name=name, config=config, plan=plan, weights=weights,
                    waveforms=waveforms, evaluations=evaluations,
                    formats=formats, out_dir=out_dir, seed=seed)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _write_grid(grid, out: Path, stem: str, formats) -> list[Path]:
    written = []
    if "csv" in formats:
        path = out / f"{stem}.csv"
        grid_to_csv(grid, path)
        written.append(path)
    if "binary" in formats:
        path = out / f"{stem}.bin"
        grid_to_binary(grid, path)
        written.append(path)
    return written


def _run_fitb_grid(sc: Scenario, params: dict, out: Path) -> list[Path]:
    grid = sweep_grid(sc.config, sc.plan, sc.weights, sc.waveforms,
                      n_time=params["n_time"], n_theta=params["n_theta"],
                      engine=params["engine"], workers=_workers())
    written = _write_grid(grid.to_db(), out, "fitb_grid_db", sc.formats)
    written += _write_grid(grid, out, "fitb_grid", sc.formats)
    if params["trajectory"]:
        traj = measure_peak_trajectory(grid)
        path = out / "trajectory.csv"
        trajectory_to_csv(traj, path)
        written.append(path)
    return written


def _run_zero_time_cut(sc: Scenario, params: dict, out: Path) -> list[Path]:
    if not isinstance(sc.plan, UniformPlan):
        raise ScenarioValidationError("zero_time_cut: requires a uniform plan")
    written = []
    theta = theta_grid(params["n_theta"])
    delta_f = sc.plan.delta_f
    for token, spacing in zip(params["tokens"], params["spacings"]):
        cfg = replace(sc.config, spacing=spacing)
        values = zero_time_cut(cfg, delta_f, theta)
        tag = re.sub(r"[^a-z0-9]+", "_", token.strip().lower()).strip("_")
        path = out / f"zero_time_cut_{tag}.csv"
        lines = ["theta_deg,value"]
        for th, v in zip(np.degrees(theta), values):
            lines.append(f"{th:.10g},{v:.10g}")
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written


def _run_legacy_grid(sc: Scenario, params: dict, out: Path) -> list[Path]:
    if not isinstance(sc.plan, UniformPlan):
        raise ScenarioValidationError("legacy_grid: requires a uniform plan")
    written = []
    delta_f = sc.plan.delta_f
    c = sc.config.wave_speed
    # matched absolute instants: shared axis anchored at the furthest range
    r_ref = max(params["ranges"])
    t_axis = r_ref / c + np.linspace(0.0, sc.config.pulse_duration, params["n_time"])
    for r in params["ranges"]:
        tag = f"{r / 1e3:g}km"
        fitb = sweep_grid(sc.config, sc.plan, sc.weights, sc.waveforms,
                          n_time=params["n_time"], n_theta=params["n_theta"],
                          workers=_workers())
        written += _write_grid(fitb, out, f"fitb_r{tag}", sc.formats)
        legacy = legacy_grid(sc.config, delta_f, r, t_axis, params["n_theta"])
        written += _write_grid(legacy, out, f"legacy_r{tag}", sc.formats)
    return written


def _run_fgtb_curve(sc: Scenario, params: dict, out: Path) -> list[Path]:
    written = []
    theta = theta_grid(params["n_theta"])
    for off in params["offsets"]:
        plan = UniformPlan(off)
        n_q = default_quadrature_samples(sc.config, sc.waveforms, plan)
        r = covariance(sc.waveforms, plan, "fda", n_q, num_elements=sc.config.num_elements)
        values = fgtb(r, sc.config, plan, sc.weights, theta)
        tag = f"{off / 1e3:g}kHz"
        path = out / f"fgtb_df{tag}.csv"
        curve_to_csv(theta, values, path, db=True)
        written.append(path)
        if params["covariance_csv"]:
            cpath = out / f"covariance_df{tag}.csv"
            covariance_to_csv(r, cpath)
            written.append(cpath)
    return written


def _run_mimo_compare(sc: Scenario, params: dict, out: Path) -> list[Path]:
    written = []
    theta = theta_grid(params["n_theta"])
    report_lines = []
    for off in params["offsets"]:
        cmp = compare_fgtb_mimo(sc.config, UniformPlan(off), sc.waveforms, sc.weights, theta)
        tag = f"{off / 1e3:g}kHz"
        path = out / f"mimo_compare_df{tag}.csv"
        lines = ["theta_deg,fgtb_norm,mimo_norm"]
        for th, a, b in zip(np.degrees(theta), cmp.fgtb_normalized, cmp.mimo_normalized):
            lines.append(f"{th:.10g},{a:.10g},{b:.10g}")
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
        status = "ok" if cmp.max_deviation < 0.05 else "DISCREPANCY"
        report_lines.append(
            f"offset_hz = {off:.10g} : max_deviation = {cmp.max_deviation:.6e} ({status}), "
            f"fgtb_peak = {cmp.fgtb_peak:.6e}, mimo_peak = {cmp.mimo_peak:.6e}"
        )
    path = out / "mimo_compare_report.txt"
    path.write_text("\n".join(report_lines) + "\n")
    written.append(path)
    return written


def _run_scan_report(sc: Scenario, params: dict, out: Path) -> list[Path]:
    if not isinstance(sc.plan, UniformPlan):
        raise ScenarioValidationError("scan_report: requires a uniform plan")
    report = build_scan_report(sc.config, sc.plan.delta_f, params["t_eval"], params["k"])
    path = out / "scan_report.txt"
    scan_report_to_text(report, path)
    return [path]


def _run_schedule(sc: Scenario, params: dict, out: Path) -> list[Path]:
    if not isinstance(sc.plan, UniformPlan):
        raise ScenarioValidationError("schedule: requires a uniform plan")
    try:
        schedule = design_phase_schedule(sc.config, sc.plan.delta_f,
                                         params["segments"], params["n_time"])
    except ValueError as exc:
        raise ScenarioValidationError(f"schedule: {exc}") from exc
    grid = schedule_playback_grid(sc.config, sc.plan.delta_f, schedule,
                                  sc.waveforms[0], sc.weights, params["n_theta"])
    written = _write_grid(grid, out, "schedule_grid", sc.formats)
    traj = measure_peak_trajectory(grid)
    tpath = out / "schedule_trajectory.csv"
    trajectory_to_csv(traj, tpath)
    written.append(tpath)
    ppath = out / "schedule_phase.csv"
    lines = ["t_us,phi_cycles,target_theta_deg"]
    for t, phi, th in zip(schedule.t_grid, schedule.phi, schedule.target_theta):
        lines.append(f"{t * 1e6:.10g},{phi:.10g},{np.degrees(th):.10g}")
    ppath.write_text("\n".join(lines) + "\n")
    written.append(ppath)
    return written


_RUNNERS: dict[str, Callable] = {
    "fitb_grid": _run_fitb_grid,
    "zero_time_cut": _run_zero_time_cut,
    "legacy_grid": _run_legacy_grid,
    "fgtb_curve": _run_fgtb_curve,
    "mimo_compare": _run_mimo_compare,
    "scan_report": _run_scan_report,
    "schedule": _run_schedule,
}


def execute_scenario(sc: Scenario, out_dir: str | Path | None = None) -> Path:
    "Run every evaluation, write artifacts and the hash manifest; returns the output dir."
    out = Path(os.environ.get(OUT_ENV) or out_dir or sc.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ScenarioValidationError(f"output directory {out} is not writable: {exc}") from exc

    written: list[Path] = []
    for kind, params in sc.evaluations:
        written.extend(_RUNNERS[kind](sc, params, out))

    manifest = {
        "scenario": sc.name,
        "artifacts": {
            p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(written)
        },
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return out


def run_file(path: str | Path, out_dir: str | None = None) -> int:
    "Load, validate, and execute a scenario file; returns the process exit code."
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        sc = load_scenario(text, base_dir=path.parent)
    except ScenarioParseError as exc:
        print(f"parse error in {path}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioValidationError as exc:
        print(f"validation error in {path}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return _execute_checked(sc, out_dir, label=str(path))


def _execute_checked(sc: Scenario, out_dir: str | None, label: str) -> int:
    try:
        out = execute_scenario(sc, out_dir)
    except ScenarioValidationError as exc:
        print(f"validation error in {label}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical error running {label}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"{sc.name}: artifacts written to {out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fdabeam",
        description="Frequency-diverse-array transmit beampattern simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("file")
    p_run.add_argument("--out", default=None, help="output directory override")

    p_preset = sub.add_parser("preset", help="run a bundled preset")
    p_preset.add_argument("name")
    p_preset.add_argument("--out", default=None, help="output directory override")
    p_preset.add_argument("--show", action="store_true", help="print the scenario text and exit")

    sub.add_parser("list-presets", help="list bundled presets")

    p_val = sub.add_parser("validate", help="parse and validate a scenario file")
    p_val.add_argument("file")

    args = parser.parse_args(argv)

    if args.command == "run":
        return run_file(args.file, args.out)

    if args.command == "preset":
        try:
            text = presets_mod.preset_text(args.name)
        except KeyError as exc:
            print(f"validation error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        if args.show:
            print(text, end="")
            return 0
        try:
            sc = load_scenario(text)
        except (ScenarioParseError, ScenarioValidationError) as exc:
            print(f"internal preset error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        out_dir = args.out or os.path.join("out", args.name)
        return _execute_checked(sc, out_dir, label=f"preset {args.name}")

    if args.command == "list-presets":
        for name, desc in presets_mod.preset_descriptions():
            print(f"{name:10s} {desc}")
        return 0

    if args.command == "validate":
        path = Path(args.file)
        try:
            load_scenario(path.read_text(), base_dir=path.parent)
        except OSError as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except ScenarioParseError as exc:
            print(f"parse error in {path}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except ScenarioValidationError as exc:
            print(f"validation error in {path}: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        print(f"{path}: ok")
        return 0

    return 0


if __name__ == "__main__":
    sys.exit(main())
