"""Consistency battery: cross-path, oracle, and structural checks.

Each check evaluates a measured deviation against a fixed tolerance on
canonical position- and mass-superposition scenarios (the figure-caption
parameter sets), so a passing report certifies the installed engine end to
end.  The battery is deterministic: random draws are seeded.

``oracle_only`` restricts the battery to checks that never call the spectral
module (time-domain vs brute-force oracle, plus structural identities).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import response, spectrum, wightman
from .params import (
    BtzBranch,
    NumericsControl,
    Scenario,
    hawking_temperature,
    redshift_gamma_tilde,
)
from .probability import assemble_probabilities
from .specfun import legendre_conical

#: Detector energies at which spectral evenness/balance are probed.
SPECTRUM_PROBE_ENERGIES = (0.05, 0.1, 0.5, 1.0)

_HERMITICITY_DRAWS = 8
_HERMITICITY_SEED = 20230816


@dataclass(frozen=True)
class CheckResult:
    """One battery entry: measured deviation vs tolerance."""

    name: str
    measured: float
    tolerance: float
    passed: bool


def _check(name: str, measured: float, tolerance: float) -> CheckResult:
    measured = float(measured)
    return CheckResult(name, measured, float(tolerance), measured <= tolerance)


def fig3_scenario(ratio: float) -> Scenario:
    """Position-superposition caption parameters with branch-2 radius ratio*R1."""
    b1 = BtzBranch(M=0.16, l=5.0, R=4.0)
    b2 = BtzBranch(M=0.16, l=5.0, R=4.0 * ratio)
    return Scenario(branch1=b1, branch2=b2, omega=0.00016, sigma=1.0, tau_f=10.0)


def fig4_scenario(sqrt_ratio: float) -> Scenario:
    """Mass-superposition caption parameters with sqrt(M2/M1) = sqrt_ratio."""
    b1 = BtzBranch(M=0.16, l=5.0, R=25.0)
    b2 = BtzBranch(M=0.16 * sqrt_ratio * sqrt_ratio, l=5.0, R=25.0)
    return Scenario(
        branch1=b1,
        branch2=b2,
        omega=0.0016,
        sigma=1.0,
        tau_f=5.0,
        window="coordinate",
        phase_convention="mass_window",
    )


def _structural_checks(ctrl: NumericsControl) -> list[CheckResult]:
    checks = []
    scn = fig3_scenario(2.0)
    coincident = fig3_scenario(1.0)

    alpha0 = wightman.alpha12_m(coincident.branch1, coincident.branch2, 0.0, 0)
    checks.append(_check("alpha0_exact", abs(alpha0 - 1.0), 0.0))

    mus = np.array([0.0, 0.5, 1.0, 2.5, 7.0])
    at_one = np.abs(legendre_conical(mus, 1.0) - 1.0)
    checks.append(_check("legendre_value_at_one", float(np.max(at_one)), 1e-12))
    xs = [1.0005, 1.5, 3.0, 7.95, 40.0]
    reflection = max(
        float(np.max(np.abs(legendre_conical(mus, x) - legendre_conical(-mus, x))))
        for x in xs
    )
    checks.append(_check("legendre_mu_reflection", reflection, 1e-12))

    rng = np.random.default_rng(_HERMITICITY_SEED)
    s = rng.uniform(-30.0, 30.0, _HERMITICITY_DRAWS)
    w_plus = wightman.w_btz(s, scn.branch1, ctrl)
    w_minus = wightman.w_btz(-s, scn.branch1, ctrl)
    herm = float(np.max(np.abs(w_minus - np.conj(w_plus))))
    scn4 = fig4_scenario(1.5)
    w12_plus = wightman.w12_btz(s, scn4, ctrl)
    w12_minus = wightman.w12_btz(-s, scn4, ctrl)
    herm = max(herm, float(np.max(np.abs(w12_minus - np.conj(w12_plus)))))
    checks.append(_check("wightman_hermiticity", herm, 1e-12))

    d1 = response.response_single_detail(scn, 1, ctrl)
    d2 = response.response_single_detail(scn, 2, ctrl)
    d12 = response.response_interference_detail(scn, ctrl)
    checks.append(
        _check(
            "imag_residue",
            max(abs(d1.value.imag), abs(d2.value.imag), abs(d12.value.imag)),
            1e-10,
        )
    )

    f1, f2, f12 = d1.value.real, d2.value.real, d12.value.real
    p_plus, p_minus = assemble_probabilities(f1, f2, f12, 0.0)
    checks.append(
        _check("probability_sum_identity", abs((p_plus + p_minus) - (f1 + f2)), 1e-12)
    )

    bound = 0.0
    for ratio in (1.2, 2.0, 3.0):
        s_r = fig3_scenario(ratio)
        g1 = response.response_single(s_r, 1, ctrl)
        g2 = response.response_single(s_r, 2, ctrl)
        g12 = response.response_interference(s_r, ctrl)
        bound = max(bound, abs(g12) / math.sqrt(g1 * g2))
    checks.append(_check("interference_bound", bound, 1.05))

    ratio = 1.5
    swapped = Scenario(
        branch1=fig3_scenario(ratio).branch2,
        branch2=fig3_scenario(ratio).branch1,
        omega=scn.omega,
        sigma=scn.sigma,
        tau_f=scn.tau_f,
    )
    direct = fig3_scenario(ratio)
    dev = 0.0
    for a, b in (
        (response.response_single(direct, 1, ctrl), response.response_single(swapped, 2, ctrl)),
        (response.response_single(direct, 2, ctrl), response.response_single(swapped, 1, ctrl)),
        (response.response_interference(direct, ctrl), response.response_interference(swapped, ctrl)),
    ):
        dev = max(dev, abs(a - b))
    checks.append(_check("branch_swap_symmetry", dev, 1e-6))
    return checks


def _oracle_checks(ctrl: NumericsControl) -> list[CheckResult]:
    scn = fig3_scenario(2.0)
    analytic = response.response_single(scn, 1, ctrl)
    oracle = response.response_oracle(scn, ctrl, branch_index=1)
    single_dev = abs(oracle - analytic) / abs(analytic)
    analytic12 = response.response_interference(scn, ctrl)
    oracle12 = response.response_oracle(scn, ctrl, branch_index=None)
    cross_dev = abs(oracle12 - analytic12) / abs(analytic12)
    return [
        _check("oracle_single", single_dev, 0.01),
        _check("oracle_interference", cross_dev, 0.02),
    ]


def _spectral_checks(ctrl: NumericsControl) -> list[CheckResult]:
    checks = []
    scn = fig3_scenario(2.0)
    b = scn.branch1
    t_h = hawking_temperature(b)

    evenness = 0.0
    balance = 0.0
    for k in SPECTRUM_PROBE_ENERGIES:
        plus = spectrum.w_hat_btz(k, b, ctrl)
        minus = spectrum.w_hat_btz(-k, b, ctrl)
        # total - 1/(4 gamma) == regular_part identically; the field avoids
        # the catastrophic cancellation of re-subtracting the constant.
        s_plus = plus.regular_part * (math.exp(k / t_h) + 1.0)
        s_minus = minus.regular_part * (math.exp(-k / t_h) + 1.0)
        evenness = max(evenness, abs(s_plus - s_minus))
        balance = max(
            balance,
            abs(
                plus.regular_part / minus.regular_part / math.exp(-k / t_h) - 1.0
            ),
        )
    checks.append(_check("spectrum_evenness", evenness, 1e-10))
    checks.append(_check("detailed_balance", balance, 1e-10))

    single_dev = 0.0
    for branch_index in (1, 2):
        analytic = response.response_single(scn, branch_index, ctrl)
        spectral = spectrum.response_from_spectrum(scn, branch_index, ctrl)
        single_dev = max(single_dev, abs(spectral - analytic) / abs(analytic))
    checks.append(_check("cross_path_single", single_dev, 0.02))

    analytic12 = response.response_interference(scn, ctrl)
    spectral12 = spectrum.interference_from_spectrum(scn, ctrl)
    checks.append(
        _check(
            "cross_path_interference",
            abs(spectral12 - analytic12) / abs(analytic12),
            0.03,
        )
    )

    scn4 = fig4_scenario(1.5)
    gt1 = redshift_gamma_tilde(scn4.branch1)
    gt2 = redshift_gamma_tilde(scn4.branch2)
    sigma = scn4.sigma
    omega = scn4.omega
    big_a = gt1 * gt1 + gt2 * gt2

    # Gaussian-window overlap by direct quadrature, independent of the
    # closed form inside the spectrum module.
    def window_product(t: float) -> float:
        return math.exp(-big_a * t * t / (2.0 * sigma * sigma)) * math.cos(
            omega * (gt1 - gt2) * t
        )

    overlap = (gt1 * gt2 / sigma) * quad(
        window_product, -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13
    )[0]
    expected = ctrl.image_count / (4.0 * math.sqrt(gt1 * gt2)) * overlap
    overlay = spectrum.singular_interference_term(scn4, ctrl)
    checks.append(_check("singular_overlay_formula", abs(overlay - expected), 1e-8))
    return checks


def run_battery(ctrl: NumericsControl, oracle_only: bool = False) -> list[CheckResult]:
    """Run the consistency battery; returns one result per check."""
    checks = _structural_checks(ctrl)
    if not oracle_only:
        checks.extend(_spectral_checks(ctrl))
    checks.extend(_oracle_checks(ctrl))
    return checks
