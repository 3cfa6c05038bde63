"""Command-line interface: scenario configs in, CSV/JSON/table artifacts out.

Subcommands: cavity, scan, overlap, enhance, purcell, forecast, validate.
Config files use the flat dotted-key format of :mod:`cavray.config`.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

from . import validation
from .config import parse_config, require
from .errors import ConfigError, ConvergenceError
from .experiment import (ScenarioConfig, build_enhancement_report,
                         ultracold_forecast, ultracold_target_species)
from .gases import load_species_table
from .optics import CavityGeometry, MirrorSpec, derive_cavity_params
from .overlap import (GaussianMode, overlap_eta_analytic, overlap_eta_numeric,
                      purcell_factor, purcell_ratio)
from .spectra import scan_spectrum


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _emit(args, stem: str, rows: list[tuple[str, str]], payload: dict) -> None:
    """Write name/value rows in the requested format, optionally to a file."""
    if args.format == "table":
        width = max(len(name) for name, _ in rows)
        text = "\n".join(f"{name:<{width}}  {value}" for name, value in rows) + "\n"
    elif args.format == "csv":
        text = "name,value\n" + "\n".join(f"{n},{v}" for n, v in rows) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        suffix = {"table": "txt", "csv": "csv", "json": "json"}[args.format]
        path = Path(args.out) / f"{stem}.{suffix}"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)


def _geometry_from_config(values, path) -> CavityGeometry:
    return CavityGeometry(
        mirror_separation=float(require(values, "cavity.separation", path)),
        radius_of_curvature=float(require(values, "cavity.curvature", path)),
        left_mirror=MirrorSpec(float(require(values, "cavity.left_reflectivity", path))),
        right_mirror=MirrorSpec(float(require(values, "cavity.right_reflectivity", path))),
    )


def cmd_cavity(args) -> int:
    values = parse_config(args.config)
    geometry = _geometry_from_config(values, args.config)
    wavelength = float(require(values, "pump.wavelength", args.config))
    params = derive_cavity_params(geometry, wavelength)
    fields = [
        ("finesse", params.finesse),
        ("free_spectral_range_Hz", params.free_spectral_range),
        ("linewidth_Hz", params.linewidth),
        ("q_factor", params.q_factor),
        ("waist_m", params.waist),
        ("rayleigh_length_m", params.rayleigh_length),
        ("transverse_mode_spacing_Hz", params.transverse_mode_spacing),
        ("mode_volume_m3", params.mode_volume),
    ]
    rows = [(name, _fmt(value)) for name, value in fields]
    payload = {"schema": "cavray.cavity-params/1"}
    payload.update({name: value for name, value in fields})
    _emit(args, "cavity_params", rows, payload)
    return 0


def cmd_scan(args) -> int:
    values = parse_config(args.config)
    geometry = _geometry_from_config(values, args.config)
    wavelength = float(require(values, "pump.wavelength", args.config))
    params = derive_cavity_params(geometry, wavelength)
    table = load_species_table()
    names = str(require(values, "scan.species", args.config)).split(",")
    weights = []
    for i, name in enumerate(names, start=1):
        name = name.strip()
        if name not in table:
            raise ConfigError(args.config, None, f"unknown species {name!r}")
        weights.append((table[name], float(values.get(f"scan.weight{i}", 1.0))))
    trace = scan_spectrum(
        params, weights,
        scan_range=float(require(values, "scan.range", args.config)),
        resolution=float(require(values, "scan.resolution", args.config)),
        wavelength=wavelength,
        normalize=bool(values.get("scan.normalize", 1.0)),
    )
    stem = f"scan_{trace.species.replace('+', '_')}"
    if args.format == "json":
        text = trace.to_json() + "\n"
        suffix = "json"
    else:
        buffer = io.StringIO()
        trace.to_csv(buffer)
        text = buffer.getvalue()
        suffix = "csv"
    if args.out:
        path = Path(args.out) / f"{stem}.{suffix}"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_overlap(args) -> int:
    values = parse_config(args.config)
    wavelength = float(require(values, "pump.wavelength", args.config))
    if "overlap.waist" in values:
        waist = float(values["overlap.waist"])
    else:
        geometry = _geometry_from_config(values, args.config)
        waist = derive_cavity_params(geometry, wavelength).waist
    plane_factor = float(values.get("overlap.plane_factor", 100.0))
    z = plane_factor * GaussianMode(waist, wavelength).rayleigh_length
    analytic = overlap_eta_analytic(wavelength, waist)
    numeric = overlap_eta_numeric(wavelength, waist, z)
    fields = [
        ("waist_m", waist),
        ("evaluation_plane_m", z),
        ("overlap_analytic", analytic),
        ("overlap_numeric", numeric),
        ("relative_difference", abs(numeric - analytic) / analytic),
    ]
    rows = [(name, _fmt(value)) for name, value in fields]
    payload = {"schema": "cavray.overlap-report/1"}
    payload.update({name: value for name, value in fields})
    _emit(args, "overlap_report", rows, payload)
    return 0


def cmd_enhance(args) -> int:
    values = parse_config(args.config)
    left = MirrorSpec(float(require(values, "enhance.left_reflectivity", args.config)))
    pairings, measured, overlaps = [], [], []
    index = 1
    while f"enhance.pairing{index}.finesse" in values:
        prefix = f"enhance.pairing{index}"
        right = MirrorSpec(float(require(values, f"{prefix}.right_reflectivity",
                                         args.config)))
        pairings.append((float(values[f"{prefix}.finesse"]), left, right))
        measured.append(float(require(values, f"{prefix}.measured_power", args.config)))
        overlaps.append(float(require(values, f"{prefix}.spectral_overlap", args.config)))
        index += 1
    if not pairings:
        raise ConfigError(args.config, None,
                          "no enhance.pairing1.finesse entry found")
    free_space = values.get("enhance.free_space_power")
    comparison = values.get("enhance.comparison_power")
    report = build_enhancement_report(
        pairings, measured, overlaps,
        None if free_space is None else float(free_space),
        None if comparison is None else float(comparison),
    )
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        text = report.table() + "\n"
    if args.out:
        suffix = "json" if args.format == "json" else "txt"
        path = Path(args.out) / f"enhancement_report.{suffix}"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_purcell(args) -> int:
    values = parse_config(args.config)
    geometry = _geometry_from_config(values, args.config)
    wavelength = float(require(values, "pump.wavelength", args.config))
    params = derive_cavity_params(geometry, wavelength)
    finesse = float(values.get("purcell.finesse", params.finesse))
    waist = float(values.get("purcell.waist", params.waist))
    d = geometry.mirror_separation
    from_ratio = purcell_ratio(finesse, wavelength, waist)
    from_qv = purcell_factor(2.0 * d * finesse / wavelength,
                             wavelength, math.pi * waist ** 2 * d / 4.0)
    fields = [
        ("finesse", finesse),
        ("waist_m", waist),
        ("interference_power_ratio", from_ratio),
        ("purcell_factor_q_over_v", from_qv),
        ("absolute_difference", abs(from_ratio - from_qv)),
    ]
    rows = [(name, _fmt(value)) for name, value in fields]
    payload = {"schema": "cavray.purcell-report/1"}
    payload.update({name: value for name, value in fields})
    _emit(args, "purcell_report", rows, payload)
    return 0


def cmd_forecast(args) -> int:
    scenario = ScenarioConfig.from_file(args.config)
    values = parse_config(args.config)
    factor = float(values.get("forecast.polarizability_factor", 10.0))
    target = ultracold_target_species(scenario.gas, factor)
    report = ultracold_forecast(
        scenario, target,
        n_molecules=float(require(values, "forecast.n_molecules", args.config)),
        target_finesse=float(require(values, "forecast.target_finesse", args.config)),
    )
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        text = report.table() + "\n"
    if args.out:
        suffix = "json" if args.format == "json" else "txt"
        path = Path(args.out) / f"forecast_report.{suffix}"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    results = validation.run_all(seed=args.seed)
    text = validation.format_report(results)
    if args.out:
        path = Path(args.out) / "validation_report.txt"
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavray",
        description="Cavity-enhanced Rayleigh scattering model",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "cavity": (cmd_cavity, "derive resonator parameters", True),
        "scan": (cmd_scan, "simulate a cavity scan", True),
        "overlap": (cmd_overlap, "dipole/cavity mode overlap", True),
        "enhance": (cmd_enhance, "finesse dependence and free-space back-out", True),
        "purcell": (cmd_purcell, "compare the two Purcell expressions", True),
        "forecast": (cmd_forecast, "ultracold-molecule detection forecast", True),
        "validate": (cmd_validate, "run the oracle validation suite", False),
    }
    for name, (handler, help_text, needs_config) in commands.items():
        p = sub.add_parser(name, help=help_text)
        if needs_config:
            p.add_argument("--config", required=True, help="scenario config file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--format", default="table",
                       choices=["table", "json", "csv"], help="output format")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for Monte-Carlo oracles")
        p.set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.out:
        out = Path(args.out)
        if not out.exists():
            out.mkdir(parents=True)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
