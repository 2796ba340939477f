"""Shared fixtures: numerics control and the two reference sweeps.

The sweeps are session-scoped because several test modules assert different
properties of the same rows; recomputing them per test would dominate the
suite's runtime for no benefit (the engine is deterministic).
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from btzdet.params import NumericsControl
from btzdet.probability import sweep_mass, sweep_position
from btzdet.validate import fig3_scenario, fig4_scenario

#: Rational resonance points probed by the mass sweep, each bracketed by
#: irrational-side neighbors at +-0.01.
MASS_RATIONALS = (1.25, 1.5, 1.75, 2.0)


@pytest.fixture(scope="session")
def ctrl() -> NumericsControl:
    return NumericsControl()


@pytest.fixture(scope="session")
def fig3_grid() -> list[float]:
    """40-point radius-ratio grid over [1.05, 3]."""
    return [float(r) for r in np.linspace(1.05, 3.0, 40)]


@pytest.fixture(scope="session")
def fig3_sweep(ctrl, fig3_grid):
    """Position-superposition sweep rows plus wall-clock runtime in seconds."""
    base = fig3_scenario(2.0)
    start = time.perf_counter()
    rows = sweep_position(base, fig3_grid, ctrl, workers=1)
    elapsed = time.perf_counter() - start
    return rows, elapsed


@pytest.fixture(scope="session")
def fig4_grid() -> list[float]:
    """Sqrt-mass-ratio grid: [1.05, 2] endpoints, each rational, +-0.01 neighbors."""
    points = {1.05}
    for rational in MASS_RATIONALS:
        points.update((rational - 0.01, rational, rational + 0.01))
    return sorted(points)


@pytest.fixture(scope="session")
def fig4_sweep(ctrl, fig4_grid):
    """Mass-superposition sweep rows over the resonance grid."""
    base = fig4_scenario(1.5)
    return sweep_mass(base, fig4_grid, ctrl, workers=1)
