"""Command-line interface: compute responses, sweeps, spectra, and run the
validation battery from a JSON config.

Exit codes: 0 success, 1 validation failure, 2 config error, 3 numerical
failure.  Runtime is reported on stderr so that written artifacts are
byte-identical across runs and worker counts.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from .config import (
    ConfigError,
    RunConfig,
    apply_overrides,
    load_config,
    materialize_grid,
    materialize_spectrum_grid,
)
from .params import ParameterError
from .probability import ResponseSet, sweep_mass, sweep_position
from .quadrature import QuadratureError
from .response import response_interference, response_single
from .spectrum import singular_interference_term, w_hat_12, w_hat_btz

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SWEEP_CSV_HEADER = "sweep_coordinate,f1,f2,f12,p_plus,p_minus,singular_flag,error_estimate"
SPECTRUM_CSV_HEADER = "K,regular_part,singular_part,total"


def _fmt(value: float) -> str:
    """Decimal with 12 significant digits (CSV cell format)."""
    return f"{value:.12g}"


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _branch_record(b) -> dict:
    return {"M": b.M, "l": b.l, "R": b.R, "zeta": b.zeta, "upsilon": b.upsilon}


def _render_record(record: dict, fmt: str | None, path: str | None) -> None:
    if fmt == "csv":
        flat = {
            k: v
            for k, v in record.items()
            if not isinstance(v, dict)
        }
        for key, sub in record.items():
            if isinstance(sub, dict):
                for k, v in sub.items():
                    flat[f"{key}.{k}"] = v
        header = ",".join(flat)
        cells = ",".join(
            _fmt(v) if isinstance(v, float) else str(v) for v in flat.values()
        )
        _write_text(path, f"{header}\n{cells}\n")
    else:
        _write_text(path, json.dumps(record, sort_keys=True, indent=2) + "\n")


def _cmd_single_response(config: RunConfig, args: argparse.Namespace) -> int:
    value = response_single(config.scenario, config.branch, config.numerics)
    record = {
        "command": "single-response",
        "branch": config.branch,
        "branch_parameters": _branch_record(config.scenario.branch(config.branch)),
        "omega": config.scenario.omega,
        "image_cutoff": config.numerics.image_cutoff,
        "response": value,
    }
    _render_record(record, config.output.format, config.output.path)
    return EXIT_OK


def _cmd_interference(config: RunConfig, args: argparse.Namespace) -> int:
    value = response_interference(config.scenario, config.numerics)
    record = {
        "command": "interference",
        "branch1_parameters": _branch_record(config.scenario.branch1),
        "branch2_parameters": _branch_record(config.scenario.branch2),
        "omega": config.scenario.omega,
        "image_cutoff": config.numerics.image_cutoff,
        "response": value,
        "singular_term": singular_interference_term(config.scenario, config.numerics),
    }
    _render_record(record, config.output.format, config.output.path)
    return EXIT_OK


def _sweep_rows_csv(rows: Sequence[ResponseSet]) -> str:
    lines = [SWEEP_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    _fmt(r.sweep_coordinate),
                    _fmt(r.f1),
                    _fmt(r.f2),
                    _fmt(r.f12),
                    _fmt(r.p_plus),
                    _fmt(r.p_minus),
                    str(int(r.singular_flag)),
                    _fmt(r.error_estimate),
                )
            )
        )
    return "\n".join(lines) + "\n"


def _sweep_rows_json(rows: Sequence[ResponseSet]) -> str:
    def cell(value: float) -> float | None:
        return None if math.isnan(value) else value

    payload = [
        {
            "sweep_coordinate": r.sweep_coordinate,
            "f1": cell(r.f1),
            "f2": cell(r.f2),
            "f12": cell(r.f12),
            "p_plus": cell(r.p_plus),
            "p_minus": cell(r.p_minus),
            "singular_flag": r.singular_flag,
            "error_estimate": cell(r.error_estimate),
            "failure": r.failure,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def _require_figure_target(config: RunConfig) -> str:
    if config.output.path is None:
        raise ConfigError("figure rendering requires output.path (a CSV on disk)")
    if (config.output.format or "csv") != "csv":
        raise ConfigError("figure rendering requires csv output format")
    return config.output.path


def _cmd_sweep(config: RunConfig, args: argparse.Namespace) -> int:
    if config.sweep is None:
        raise ConfigError("the sweep command requires a sweep block in the config")
    points = materialize_grid(config.sweep)
    workers = args.workers
    if config.sweep.kind == "position":
        rows = sweep_position(config.scenario, points, config.numerics, workers=workers)
        x_label = r"$R_2/R_1$"
    else:
        rows = sweep_mass(config.scenario, points, config.numerics, workers=workers)
        x_label = r"$\sqrt{M_2/M_1}$"
    fmt = config.output.format or "csv"
    if fmt == "csv":
        _write_text(config.output.path, _sweep_rows_csv(rows))
    else:
        _write_text(config.output.path, _sweep_rows_json(rows))
    if config.output.figure is not None:
        csv_path = _require_figure_target(config)
        from . import figures

        figures.plot_sweep(csv_path, config.output.figure, x_label=x_label)
    failures = [r for r in rows if r.failure is not None]
    for r in failures:
        print(
            f"sweep point {r.sweep_coordinate} failed: {r.failure}", file=sys.stderr
        )
    return EXIT_NUMERICAL if failures else EXIT_OK


def _cmd_spectrum(config: RunConfig, args: argparse.Namespace) -> int:
    if config.spectrum is None:
        raise ConfigError("the spectrum command requires a spectrum block in the config")
    grid = materialize_spectrum_grid(config.spectrum)
    samples = []
    for k in grid:
        if config.spectrum.kind == "single":
            samples.append(
                w_hat_btz(k, config.scenario.branch(config.branch), config.numerics)
            )
        else:
            samples.append(w_hat_12(k, config.scenario, config.numerics))
    fmt = config.output.format or "csv"
    if fmt == "csv":
        lines = [SPECTRUM_CSV_HEADER]
        for s in samples:
            lines.append(
                ",".join(
                    (
                        _fmt(s.K),
                        _fmt(s.regular_part),
                        _fmt(s.singular_part),
                        _fmt(s.total),
                    )
                )
            )
        _write_text(config.output.path, "\n".join(lines) + "\n")
    else:
        payload = [
            {
                "K": s.K,
                "regular_part": s.regular_part,
                "singular_part": s.singular_part,
                "total": s.total,
            }
            for s in samples
        ]
        _write_text(config.output.path, json.dumps(payload, indent=2) + "\n")
    if config.output.figure is not None:
        csv_path = _require_figure_target(config)
        from . import figures

        figures.plot_spectrum(csv_path, config.output.figure)
    return EXIT_OK


def _cmd_validate(config: RunConfig, args: argparse.Namespace) -> int:
    from .validate import run_battery

    results = run_battery(config.numerics, oracle_only=args.oracle_only)
    report = {
        "checks": [asdict(r) for r in results],
        "passed": all(r.passed for r in results),
    }
    _write_text(config.output.path, json.dumps(report, sort_keys=True, indent=2) + "\n")
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


_COMMANDS = {
    "single-response": _cmd_single_response,
    "interference": _cmd_interference,
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "validate": _cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btzdet",
        description=(
            "Detector transition probabilities, interference terms, and "
            "detector-probed spectra outside a static BTZ black hole in "
            "quantum superposition of positions or masses."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "single-response": "single-branch response F/sigma",
        "interference": "cross-branch interference response F12/sigma",
        "sweep": "position or mass sweep to CSV (optionally a figure)",
        "spectrum": "detector-probed spectrum samples to CSV",
        "validate": "run the consistency battery and report",
    }
    for name, help_text in helps.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, help="JSON config path")
        sp.add_argument("--out", help="output path (default: config output.path or stdout)")
        sp.add_argument("--workers", type=int, default=1, help="parallel sweep workers")
        sp.add_argument("--cutoff", type=int, help="override image-sum cutoff N")
        sp.add_argument(
            "--convention",
            choices=["2N", "2N+1"],
            help="image-count convention override",
        )
        if name in ("sweep", "spectrum"):
            sp.add_argument("--figure", help="also render a figure to this path")
        if name == "validate":
            sp.add_argument(
                "--oracle-only",
                action="store_true",
                help="restrict to checks that avoid the spectral module",
            )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        config = load_config(args.config)
        config = apply_overrides(
            config,
            out=args.out,
            cutoff=args.cutoff,
            convention=args.convention,
            figure=getattr(args, "figure", None),
        )
        status = _COMMANDS[args.command](config, args)
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, ArithmeticError, FloatingPointError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"runtime_seconds={time.perf_counter() - start:.3f}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
