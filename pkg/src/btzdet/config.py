"""Strict JSON run configuration.

A run is described by one JSON document with nested blocks: ``scenario``
(physics parameters, in sigma = 1 units unless sigma itself is set),
``numerics``, optional ``sweep`` and ``spectrum`` grids, optional ``branch``
selector, and ``output``.  Unknown keys anywhere are hard errors - a typo in
a physics parameter must never silently fall back to a default.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from numbers import Real
from pathlib import Path
from typing import Any

from .params import BtzBranch, NumericsControl, ParameterError, Scenario

_MISSING = object()


class ConfigError(ValueError):
    """Raised for unparseable, unknown-key, or invariant-violating configs."""


@dataclass(frozen=True)
class GridSpec:
    """A sweep grid: either explicit points or a linspace description."""

    kind: str  # "position" | "mass"
    start: float | None = None
    stop: float | None = None
    count: int | None = None
    points: tuple[float, ...] | None = None


@dataclass(frozen=True)
class SpectrumGridSpec:
    """A detector-energy grid for spectrum output."""

    kind: str  # "single" | "cross"
    start: float
    stop: float
    count: int


@dataclass(frozen=True)
class OutputSpec:
    """Where and how results are written.

    ``path`` None means standard output.  ``figure`` requests a rendered
    figure next to the delimited output (sweep and spectrum commands only).
    """

    path: str | None = None
    format: str | None = None  # "csv" | "json"; None = command default
    figure: str | None = None


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario
    numerics: NumericsControl = field(default_factory=NumericsControl)
    sweep: GridSpec | None = None
    spectrum: SpectrumGridSpec | None = None
    branch: int = 1
    output: OutputSpec = field(default_factory=OutputSpec)


def _check_keys(obj: dict[str, Any], allowed: set[str], context: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {context}: {', '.join(unknown)}")


def _as_dict(value: Any, context: str) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(f"{context} must be an object")
    return value


def _number(obj: dict[str, Any], key: str, context: str, default: Any = _MISSING) -> Any:
    if key not in obj:
        if default is _MISSING:
            raise ConfigError(f"missing required key {context}.{key}")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ConfigError(f"{context}.{key} must be a number")
    return float(value)


def _integer(obj: dict[str, Any], key: str, context: str, default: Any = _MISSING) -> Any:
    if key not in obj:
        if default is _MISSING:
            raise ConfigError(f"missing required key {context}.{key}")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{context}.{key} must be an integer")
    return value


def _string(obj: dict[str, Any], key: str, context: str, default: Any = _MISSING) -> Any:
    if key not in obj:
        if default is _MISSING:
            raise ConfigError(f"missing required key {context}.{key}")
        return default
    value = obj[key]
    if not isinstance(value, str):
        raise ConfigError(f"{context}.{key} must be a string")
    return value


def _parse_branch(obj: dict[str, Any], context: str) -> BtzBranch:
    obj = _as_dict(obj, context)
    _check_keys(obj, {"M", "l", "R", "zeta", "upsilon"}, context)
    return BtzBranch(
        M=_number(obj, "M", context),
        l=_number(obj, "l", context),
        R=_number(obj, "R", context),
        zeta=_integer(obj, "zeta", context, 0),
        upsilon=_integer(obj, "upsilon", context, 1),
    )


_SCENARIO_KEYS = {
    "branch1",
    "branch2",
    "omega",
    "sigma",
    "tau_f",
    "theta",
    "delta_phi",
    "window",
    "phase_convention",
    "delta_t_factor",
    "coupling",
    "matrix_element_sq",
}


def _parse_scenario(obj: dict[str, Any]) -> Scenario:
    obj = _as_dict(obj, "scenario")
    _check_keys(obj, _SCENARIO_KEYS, "scenario")
    if "branch1" not in obj:
        raise ConfigError("missing required key scenario.branch1")
    branch1 = _parse_branch(obj["branch1"], "scenario.branch1")
    branch2 = (
        _parse_branch(obj["branch2"], "scenario.branch2")
        if "branch2" in obj
        else branch1
    )
    return Scenario(
        branch1=branch1,
        branch2=branch2,
        omega=_number(obj, "omega", "scenario"),
        sigma=_number(obj, "sigma", "scenario", 1.0),
        tau_f=_number(obj, "tau_f", "scenario"),
        theta=_number(obj, "theta", "scenario", 0.0),
        delta_phi=_number(obj, "delta_phi", "scenario", 0.0),
        window=_string(obj, "window", "scenario", "proper"),
        phase_convention=_string(obj, "phase_convention", "scenario", "fixed"),
        delta_t_factor=_number(obj, "delta_t_factor", "scenario", 2.0),
        coupling=_number(obj, "coupling", "scenario", 1.0),
        matrix_element_sq=_number(obj, "matrix_element_sq", "scenario", 1.0),
    )


def _parse_numerics(obj: dict[str, Any]) -> NumericsControl:
    obj = _as_dict(obj, "numerics")
    allowed = {
        "image_cutoff",
        "epsilon",
        "quad_rel_tol",
        "quad_abs_tol",
        "rational_max_den",
        "rational_tol",
        "convention",
    }
    _check_keys(obj, allowed, "numerics")
    return NumericsControl(
        image_cutoff=_integer(obj, "image_cutoff", "numerics", 5),
        epsilon=_number(obj, "epsilon", "numerics", 1e-4),
        quad_rel_tol=_number(obj, "quad_rel_tol", "numerics", 1e-9),
        quad_abs_tol=_number(obj, "quad_abs_tol", "numerics", 1e-12),
        rational_max_den=_integer(obj, "rational_max_den", "numerics", 12),
        rational_tol=_number(obj, "rational_tol", "numerics", 1e-9),
        convention=_string(obj, "convention", "numerics", "2N+1"),
    )


def _parse_sweep(obj: dict[str, Any], scenario: Scenario) -> GridSpec:
    obj = _as_dict(obj, "sweep")
    _check_keys(obj, {"kind", "start", "stop", "count", "points"}, "sweep")
    kind = _string(obj, "kind", "sweep")
    if kind not in ("position", "mass"):
        raise ConfigError(f"sweep.kind must be 'position' or 'mass', got '{kind}'")
    if kind == "position" and scenario.branch1.M != scenario.branch2.M:
        raise ConfigError("position sweeps require equal branch masses in scenario")
    if kind == "mass" and scenario.branch1.R != scenario.branch2.R:
        raise ConfigError("mass sweeps require equal branch radii in scenario")
    points: tuple[float, ...] | None = None
    if "points" in obj:
        raw = obj["points"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("sweep.points must be a non-empty array of numbers")
        values = []
        for i, v in enumerate(raw):
            if isinstance(v, bool) or not isinstance(v, Real):
                raise ConfigError(f"sweep.points[{i}] must be a number")
            values.append(float(v))
        points = tuple(values)
        grid = GridSpec(kind=kind, points=points)
    else:
        start = _number(obj, "start", "sweep")
        stop = _number(obj, "stop", "sweep")
        count = _integer(obj, "count", "sweep")
        if count < 1:
            raise ConfigError("sweep.count must be >= 1")
        if not start < stop:
            raise ConfigError("sweep.start must be < sweep.stop")
        grid = GridSpec(kind=kind, start=start, stop=stop, count=count)
    _ = materialize_grid(grid)  # fail fast on degenerate grids
    return grid


def _parse_spectrum(obj: dict[str, Any]) -> SpectrumGridSpec:
    obj = _as_dict(obj, "spectrum")
    _check_keys(obj, {"kind", "start", "stop", "count"}, "spectrum")
    kind = _string(obj, "kind", "spectrum", "single")
    if kind not in ("single", "cross"):
        raise ConfigError(f"spectrum.kind must be 'single' or 'cross', got '{kind}'")
    start = _number(obj, "start", "spectrum")
    stop = _number(obj, "stop", "spectrum")
    count = _integer(obj, "count", "spectrum")
    if count < 1:
        raise ConfigError("spectrum.count must be >= 1")
    if count > 1 and not start < stop:
        raise ConfigError("spectrum.start must be < spectrum.stop")
    return SpectrumGridSpec(kind=kind, start=start, stop=stop, count=count)


def _parse_output(obj: dict[str, Any]) -> OutputSpec:
    obj = _as_dict(obj, "output")
    _check_keys(obj, {"path", "format", "figure"}, "output")
    fmt = _string(obj, "format", "output", None)
    if fmt is not None and fmt not in ("csv", "json"):
        raise ConfigError(f"output.format must be 'csv' or 'json', got '{fmt}'")
    return OutputSpec(
        path=_string(obj, "path", "output", None),
        format=fmt,
        figure=_string(obj, "figure", "output", None),
    )


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    raw = _as_dict(raw, "config")
    _check_keys(
        raw, {"scenario", "numerics", "sweep", "spectrum", "branch", "output"}, "config"
    )
    if "scenario" not in raw:
        raise ConfigError("missing required key scenario")
    try:
        scenario = _parse_scenario(raw["scenario"])
        numerics = (
            _parse_numerics(raw["numerics"])
            if "numerics" in raw
            else NumericsControl()
        )
        sweep = _parse_sweep(raw["sweep"], scenario) if "sweep" in raw else None
        spectrum = _parse_spectrum(raw["spectrum"]) if "spectrum" in raw else None
    except ParameterError as exc:
        raise ConfigError(f"invalid parameters: {exc}") from None
    branch = _integer(raw, "branch", "config", 1)
    if branch not in (1, 2):
        raise ConfigError("branch must be 1 or 2")
    output = _parse_output(raw["output"]) if "output" in raw else OutputSpec()
    return RunConfig(
        scenario=scenario,
        numerics=numerics,
        sweep=sweep,
        spectrum=spectrum,
        branch=branch,
        output=output,
    )


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def materialize_grid(grid: GridSpec) -> list[float]:
    """Concrete sweep coordinates for a grid description.

    Generated (linspace) grids drop any point within one grid step of the
    excluded coincidence ratio 1; explicit point lists must avoid it
    themselves.  A grid that ends up empty is an error.
    """
    if grid.points is not None:
        points = list(grid.points)
        step = 0.0
    else:
        assert grid.start is not None and grid.stop is not None and grid.count
        if grid.count == 1:
            points = [grid.start]
            step = 0.0
        else:
            step = (grid.stop - grid.start) / (grid.count - 1)
            points = [grid.start + i * step for i in range(grid.count)]
            points[-1] = grid.stop
            points = [p for p in points if abs(p - 1.0) >= step]
    for p in points:
        if not p > 0.0:
            raise ConfigError(f"sweep coordinate must be positive, got {p}")
        if p == 1.0:
            raise ConfigError("sweep coordinate 1 is excluded (coincident branches)")
    if not points:
        raise ConfigError("sweep grid is empty after excluding the ratio-1 neighborhood")
    return points


def materialize_spectrum_grid(grid: SpectrumGridSpec) -> list[float]:
    """Concrete detector-energy samples for a spectrum grid."""
    if grid.count == 1:
        return [grid.start]
    step = (grid.stop - grid.start) / (grid.count - 1)
    points = [grid.start + i * step for i in range(grid.count)]
    points[-1] = grid.stop
    return points


def apply_overrides(
    config: RunConfig,
    out: str | None = None,
    cutoff: int | None = None,
    convention: str | None = None,
    figure: str | None = None,
) -> RunConfig:
    """Apply command-line overrides onto a parsed config."""
    if cutoff is not None or convention is not None:
        numerics = replace(
            config.numerics,
            **{
                k: v
                for k, v in {
                    "image_cutoff": cutoff,
                    "convention": convention,
                }.items()
                if v is not None
            },
        )
        config = replace(config, numerics=numerics)
    if out is not None or figure is not None:
        output = replace(
            config.output,
            **{
                k: v
                for k, v in {"path": out, "figure": figure}.items()
                if v is not None
            },
        )
        config = replace(config, output=output)
    return config
