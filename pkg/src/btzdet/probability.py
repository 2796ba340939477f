"""Measurement probabilities for the superposed-geometry detector, and
parameter sweeps over the superposition coordinate.

``p_plus``/``p_minus`` are the conditioned excitation probabilities P+-/N in
the half normalization of the figure captions:

    P+-/N = (f1 + f2 +- 2 cos(delta_phi) f12) / 2,

so their sum is the interference-free f1 + f2 (in the paper's raw quarter
normalization the same identity reads P+ + P- = (F1 + F2)/(2 sigma)).

Sweeps vary the branch-2 radius (position superposition) or mass (mass
superposition).  Branch 1 never changes along a sweep, so its response is
computed once and shared.  Points are independent and evaluated optionally
across processes; per-point failures are recorded as NaN rows and the sweep
continues.  Output order follows the input grid for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from .params import (
    BtzBranch,
    NumericsControl,
    ParameterError,
    Scenario,
    effective_delta_phi,
)
from .response import (
    IMAG_RESIDUE_TOL,
    ResponseDetail,
    response_interference_detail,
    response_single_detail,
)
from .spectrum import singular_interference_term

#: Fractional negativity of p+- tolerated on non-resonant points (the finite
#: switching window is approximated as infinite in the envelopes; the leak is
#: bounded well below this).  Deeper negativity fails the point.  Resonant
#: points are exempt: the singular overlay legitimately overwhelms f1 + f2.
POSITIVITY_SLACK = 0.05


@dataclass(frozen=True)
class ResponseSet:
    """One sweep point: responses, probabilities, and diagnostics.

    ``sweep_coordinate`` is R2/R1 for position sweeps and sqrt(M2/M1) for
    mass sweeps.  ``singular_flag`` marks points where the resonant singular
    overlay fired.  A failed point carries NaN numeric fields and the failure
    message.
    """

    sweep_coordinate: float
    f1: float
    f2: float
    f12: float
    p_plus: float
    p_minus: float
    singular_flag: bool
    error_estimate: float
    failure: str | None = None


def assemble_probabilities(
    f1: float, f2: float, f12: float, delta_phi: float
) -> tuple[float, float]:
    """Conditioned probabilities (p_plus, p_minus) = (f1 + f2 +- 2 cos(delta_phi) f12)/2."""
    if f1 < 0.0 or f2 < 0.0:
        raise ParameterError(
            f"single-branch responses must be non-negative, got f1={f1}, f2={f2}"
        )
    interference = 2.0 * math.cos(delta_phi) * f12
    return (f1 + f2 + interference) / 2.0, (f1 + f2 - interference) / 2.0


def _position_scenario(base: Scenario, ratio: float) -> Scenario:
    """The sweep point with branch-2 radius ratio * R1 (masses equal)."""
    b1 = base.branch1
    branch2 = BtzBranch(
        M=b1.M, l=b1.l, R=ratio * b1.R, zeta=b1.zeta, upsilon=b1.upsilon
    )
    return replace(base, branch2=branch2)


def _mass_scenario(base: Scenario, sqrt_ratio: float) -> Scenario:
    """The sweep point with branch-2 mass sqrt_ratio**2 * M1 (radii equal)."""
    b1 = base.branch1
    branch2 = BtzBranch(
        M=sqrt_ratio * sqrt_ratio * b1.M,
        l=b1.l,
        R=b1.R,
        zeta=b1.zeta,
        upsilon=b1.upsilon,
    )
    return replace(base, branch2=branch2)


def _checked_real(detail: ResponseDetail, label: str) -> float:
    if abs(detail.value.imag) > IMAG_RESIDUE_TOL:
        raise ArithmeticError(
            f"{label} imaginary residue {detail.value.imag:.3e} exceeds "
            f"{IMAG_RESIDUE_TOL:g}"
        )
    return detail.value.real


def _assemble_point(
    scn: Scenario,
    coordinate: float,
    ctrl: NumericsControl,
    f1_detail: ResponseDetail,
) -> ResponseSet:
    f2_detail = response_single_detail(scn, 2, ctrl)
    f12_detail = response_interference_detail(scn, ctrl)
    f1 = _checked_real(f1_detail, "branch-1 response")
    f2 = _checked_real(f2_detail, "branch-2 response")
    f12 = _checked_real(f12_detail, "interference response")
    p_plus, p_minus = assemble_probabilities(f1, f2, f12, effective_delta_phi(scn))
    singular_flag = singular_interference_term(scn, ctrl) != 0.0
    if not singular_flag:
        floor = -POSITIVITY_SLACK * (f1 + f2) / 2.0
        if p_plus < floor or p_minus < floor:
            raise ArithmeticError(
                f"probability negativity beyond the {POSITIVITY_SLACK:.0%} window "
                f"slack at coordinate {coordinate}: p_plus={p_plus}, p_minus={p_minus}"
            )
    error = (
        f1_detail.error_estimate
        + f2_detail.error_estimate
        + f12_detail.error_estimate
        + abs(f1_detail.value.imag)
        + abs(f2_detail.value.imag)
        + abs(f12_detail.value.imag)
    )
    return ResponseSet(
        sweep_coordinate=coordinate,
        f1=f1,
        f2=f2,
        f12=f12,
        p_plus=p_plus,
        p_minus=p_minus,
        singular_flag=singular_flag,
        error_estimate=error,
    )


def _failed_point(coordinate: float, exc: Exception) -> ResponseSet:
    nan = float("nan")
    return ResponseSet(
        sweep_coordinate=coordinate,
        f1=nan,
        f2=nan,
        f12=nan,
        p_plus=nan,
        p_minus=nan,
        singular_flag=False,
        error_estimate=nan,
        failure=f"{type(exc).__name__}: {exc}",
    )


def _position_worker(
    args: tuple[Scenario, float, NumericsControl, ResponseDetail],
) -> ResponseSet:
    base, ratio, ctrl, f1_detail = args
    try:
        return _assemble_point(_position_scenario(base, ratio), ratio, ctrl, f1_detail)
    except Exception as exc:  # per-point failure: record it, keep sweeping
        return _failed_point(ratio, exc)


def _mass_worker(
    args: tuple[Scenario, float, NumericsControl, ResponseDetail],
) -> ResponseSet:
    base, sqrt_ratio, ctrl, f1_detail = args
    try:
        return _assemble_point(
            _mass_scenario(base, sqrt_ratio), sqrt_ratio, ctrl, f1_detail
        )
    except Exception as exc:
        return _failed_point(sqrt_ratio, exc)


def _run_sweep(worker, tasks, workers: int) -> list[ResponseSet]:
    if workers <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks))


def _check_grid(values: Sequence[float], label: str) -> None:
    if not values:
        raise ParameterError(f"empty {label} grid")
    for v in values:
        if not (v > 0.0):
            raise ParameterError(f"{label} values must be positive, got {v}")
        if v == 1.0:
            raise ParameterError(
                f"{label} value 1 is excluded (coincident branches make the "
                "+- measurement ill-defined)"
            )


def sweep_position(
    base: Scenario,
    ratios: Sequence[float],
    ctrl: NumericsControl,
    workers: int = 1,
) -> list[ResponseSet]:
    """Evaluate the position-superposition sweep over R2/R1 ratios."""
    _check_grid(ratios, "radius-ratio")
    if base.branch1.M != base.branch2.M:
        raise ParameterError("position sweeps require equal branch masses")
    f1_detail = response_single_detail(base, 1, ctrl)
    tasks = [(base, float(r), ctrl, f1_detail) for r in ratios]
    return _run_sweep(_position_worker, tasks, workers)


def sweep_mass(
    base: Scenario,
    sqrt_ratios: Sequence[float],
    ctrl: NumericsControl,
    workers: int = 1,
) -> list[ResponseSet]:
    """Evaluate the mass-superposition sweep over sqrt(M2/M1) ratios."""
    _check_grid(sqrt_ratios, "sqrt-mass-ratio")
    if base.branch1.R != base.branch2.R:
        raise ParameterError("mass sweeps require equal branch radii")
    f1_detail = response_single_detail(base, 1, ctrl)
    tasks = [(base, float(r), ctrl, f1_detail) for r in sqrt_ratios]
    return _run_sweep(_mass_worker, tasks, workers)
