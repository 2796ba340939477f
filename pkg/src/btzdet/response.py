"""Time-domain detector responses: single-branch F/sigma and cross-branch
F12/sigma, plus the brute-force double-integral oracle.

The analytic path integrates Gaussian switching envelopes against each image
term of the correlator with the singular structure handled exactly: the
resonant (coefficient = 1) image splits into a delta contribution and a
principal value, every other image splits at its branch point arccosh(alpha)
into a real-kernel piece and its continuation.  No regulator appears on this
path; ``ctrl.epsilon`` only enters the oracle, which integrates the raw
regulated correlator over both switching windows and exists to cross-check
the analytic result (1-2% at the default windows, dominated by the finite
regulator and the window approximation).

Cross-branch responses at rational sqrt-mass ratios additionally carry the
closed-form singular overlap (see the spectrum module), the term responsible
for the sharp interference peaks of a mass-superposed horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.special import erf as _erf_real

from .params import (
    NumericsControl,
    ParameterError,
    Scenario,
    ads_half_window,
    proper_half_window,
    redshift_gamma_tilde,
)
from .quadrature import (
    integrate_2d_window,
    integrate_inv_sqrt_cosh,
    integrate_pv_sinh,
    integrate_sqrt_endpoint,
)
from .specfun import erf_complex
from .spectrum import singular_interference_term
from .wightman import cross_branch_terms, single_branch_terms, w12_btz, w_btz

#: Image coefficients within this distance of 1 take the resonant
#: (delta + principal value) route; below 1 - RESONANCE_EPS they would put
#: the branch point at imaginary argument, which no valid geometry produces.
RESONANCE_EPS = 1e-12

#: Acceptable imaginary residue of an assembled response before discard.
IMAG_RESIDUE_TOL = 1e-10


@dataclass(frozen=True)
class ResponseDetail:
    """A response value before residue discard, with its error estimate.

    ``value.real`` is the response; ``value.imag`` the imaginary residue that
    an exact evaluation would cancel; ``error_estimate`` the summed absolute
    error estimates of the underlying quadratures.
    """

    value: complex
    error_estimate: float


@dataclass(frozen=True)
class EnvelopeSet:
    """Switching-envelope data for one scenario, in AdS-time arguments.

    ``H0``/``X0`` are the branch-1 single-branch window and Gaussian-phase
    factors; ``H``/``Z0`` their two-branch counterparts; ``Y0`` the constant
    prefactor of the interference term.  All callables accept ndarrays.
    """

    Y0: float
    Z0: Callable[[np.ndarray], np.ndarray]
    H: Callable[[np.ndarray], np.ndarray]
    H0: Callable[[np.ndarray], np.ndarray]
    X0: Callable[[np.ndarray], np.ndarray]


def _single_envelopes(
    gt: float, t_bar: float, omega: float, sigma: float
) -> tuple[Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], np.ndarray]]:
    """Single-branch window H0 and Gaussian-phase X0 for one branch."""

    def h0(s: np.ndarray) -> np.ndarray:
        return _erf_real(gt * (s + 2.0 * t_bar) / (2.0 * sigma)) - _erf_real(
            gt * (s - 2.0 * t_bar) / (2.0 * sigma)
        )

    def x0(s: np.ndarray) -> np.ndarray:
        return np.exp(-(gt * gt) * s * s / (4.0 * sigma * sigma)) * np.exp(
            -1j * omega * gt * s
        )

    return h0, x0


def envelope_set(scn: Scenario) -> EnvelopeSet:
    """Build every switching envelope of the scenario."""
    gt1 = redshift_gamma_tilde(scn.branch1)
    gt2 = redshift_gamma_tilde(scn.branch2)
    sigma = scn.sigma
    omega = scn.omega
    big_a = gt1 * gt1 + gt2 * gt2
    t_bar_1 = ads_half_window(scn, 1)
    y0 = (
        math.sqrt(gt1 * gt2)
        * math.sqrt(math.pi)
        / (4.0 * math.pi * math.sqrt(big_a))
        * math.exp(-(omega**2) * sigma**2 * (gt1 - gt2) ** 2 / (2.0 * big_a))
    )

    def z0(s: np.ndarray) -> np.ndarray:
        return np.exp(-(gt1 * gt2) ** 2 * s * s / (2.0 * sigma * sigma * big_a)) * np.exp(
            -1j * omega * s * gt1 * gt2 * (gt1 + gt2) / big_a
        )

    offset = 1j * omega * sigma * sigma * (gt1 - gt2)
    denom = math.sqrt(2.0) * sigma * math.sqrt(big_a)

    def h(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return erf_complex(
            (big_a * t_bar_1 - gt2 * gt2 * s + offset) / denom
        ) + erf_complex((big_a * t_bar_1 + gt2 * gt2 * s - offset) / denom)

    h0, x0 = _single_envelopes(gt1, t_bar_1, omega, sigma)
    return EnvelopeSet(y0, z0, h, h0, x0)


def _split_image_integral(
    g: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    z_hi: float,
    ctrl: NumericsControl,
) -> tuple[float, float]:
    """Re of the image-term integral of g(z) (alpha - cosh(z - i0))^(-1/2).

    Below the branch point the kernel is real, so only Re g contributes;
    beyond it the kernel continues to -i/sqrt(cosh z - alpha), leaving
    Im g / sqrt(cosh z - alpha).  Returns (value, error estimate).
    """
    within = integrate_sqrt_endpoint(
        lambda z: np.real(g(z)),
        alpha,
        0.0,
        z_hi,
        rel_tol=ctrl.quad_rel_tol,
        abs_tol=ctrl.quad_abs_tol,
    )
    beyond = integrate_inv_sqrt_cosh(
        lambda z: np.imag(g(z)),
        alpha,
        0.0,
        z_hi,
        rel_tol=ctrl.quad_rel_tol,
        abs_tol=ctrl.quad_abs_tol,
    )
    value = float(np.real(within.value)) + float(np.real(beyond.value))
    return value, within.abs_error_estimate + beyond.abs_error_estimate


def _resonant_term(
    g: Callable[[np.ndarray], np.ndarray],
    z_hi: float,
    ctrl: NumericsControl,
) -> tuple[complex, float]:
    """Resonant image-term value: (pi/sqrt2) g(0) + (1/sqrt2) Int Im g / sinh(z/2).

    The coefficient-1 kernel splits (Sokhotski) into a delta at zero
    separation and a principal value; folding the latter through g's
    Hermiticity maps it onto the sinh principal-value integral.  The real
    part is the physical value; the imaginary part carries the residue of
    g(0) (it must be real) for the caller's diagnostics.  Returns
    (value, error estimate).
    """
    g0 = complex(np.asarray(g(np.array([0.0])))[0])
    pv = integrate_pv_sinh(
        lambda y: g(2.0 * y),
        0.5 * z_hi,
        rel_tol=ctrl.quad_rel_tol,
        abs_tol=ctrl.quad_abs_tol,
    )
    # pv.value = i * Int_0^z_hi Im g / sinh(z/2); its real part is residue.
    value = (math.pi / math.sqrt(2.0)) * g0.real + (1.0 / math.sqrt(2.0)) * float(
        np.imag(pv.value)
    )
    residue = (math.pi / math.sqrt(2.0)) * g0.imag + (1.0 / math.sqrt(2.0)) * float(
        np.real(pv.value)
    )
    return complex(value, residue), pv.abs_error_estimate / math.sqrt(2.0)


def response_single_detail(
    scn: Scenario, branch_index: int, ctrl: NumericsControl
) -> ResponseDetail:
    """Single-branch F/sigma with residue and error estimate attached."""
    b = scn.branch(branch_index)
    gt = redshift_gamma_tilde(b)
    t_bar = ads_half_window(scn, branch_index)
    l = b.l
    h0, x0 = _single_envelopes(gt, t_bar, scn.omega, scn.sigma)

    def g(z: np.ndarray) -> np.ndarray:
        return x0(l * z) * h0(l * z)

    h0_zero = float(np.asarray(h0(np.array([0.0])))[0])
    leading = math.sqrt(math.pi) * h0_zero / 8.0

    def g2(z: np.ndarray) -> np.ndarray:
        return x0(2.0 * l * z) * h0(2.0 * l * z)

    pv = integrate_pv_sinh(
        g2,
        t_bar / (2.0 * l),
        rel_tol=ctrl.quad_rel_tol,
        abs_tol=ctrl.quad_abs_tol,
    )
    total = leading + (-1j / (8.0 * math.sqrt(math.pi))) * pv.value
    error = pv.abs_error_estimate / (8.0 * math.sqrt(math.pi))

    z_hi = t_bar / l
    image_coeff = 1.0 / (4.0 * math.sqrt(2.0 * math.pi))
    resonant_seen = 0
    for weight, alpha in single_branch_terms(b, ctrl):
        if abs(alpha - 1.0) <= RESONANCE_EPS:
            # the resonant image is the leading + principal-value pair above
            resonant_seen += 1
            continue
        if alpha < 1.0:
            raise ParameterError(f"image coefficient below 1: {alpha}")
        value, err = _split_image_integral(g, alpha, z_hi, ctrl)
        total += weight * image_coeff * value
        error += abs(weight) * image_coeff * err
    if resonant_seen != 1:
        raise ParameterError(
            f"expected exactly one resonant image, found {resonant_seen}"
        )
    return ResponseDetail(complex(total), error)


def response_single_complex(
    scn: Scenario, branch_index: int, ctrl: NumericsControl
) -> complex:
    """Single-branch F/sigma with its imaginary residue still attached."""
    return response_single_detail(scn, branch_index, ctrl).value


def response_single(scn: Scenario, branch_index: int, ctrl: NumericsControl) -> float:
    """Single-branch response F/sigma (real; imaginary residue checked, discarded)."""
    value = response_single_complex(scn, branch_index, ctrl)
    if abs(value.imag) > IMAG_RESIDUE_TOL:
        raise ArithmeticError(
            f"single-branch response imaginary residue {value.imag:.3e} "
            f"exceeds {IMAG_RESIDUE_TOL:g}"
        )
    return value.real


def response_interference_detail(scn: Scenario, ctrl: NumericsControl) -> ResponseDetail:
    """Cross-branch F12/sigma (overlay included) with residue and error estimate."""
    env = envelope_set(scn)
    l = scn.branch1.l
    # Truncate the difference-variable integral at the narrower branch
    # window.  In the standard orientation (branch 2 deeper in the
    # potential) this is branch 2's window; taking the min keeps the
    # value independent of branch labeling, as the exact double integral
    # is, while the envelopes have already decayed at either choice.
    z_hi = min(ads_half_window(scn, 1), ads_half_window(scn, 2)) / l

    def g(z: np.ndarray) -> np.ndarray:
        return env.Z0(l * z) * env.H(l * z)

    total = 0.0 + 0.0j
    error = 0.0
    for weight, alpha in cross_branch_terms(scn, ctrl):
        if abs(alpha - 1.0) <= RESONANCE_EPS:
            value, err = _resonant_term(g, z_hi, ctrl)
            total += weight * value
            error += abs(weight) * err
        elif alpha < 1.0:
            raise ParameterError(f"image coefficient below 1: {alpha}")
        else:
            value, err = _split_image_integral(g, alpha, z_hi, ctrl)
            total += weight * value
            error += abs(weight) * err
    overlay = singular_interference_term(scn, ctrl)
    return ResponseDetail(env.Y0 * total + overlay, env.Y0 * error)


def response_interference_complex(scn: Scenario, ctrl: NumericsControl) -> complex:
    """Cross-branch F12/sigma with its imaginary residue still attached.

    Includes the resonant singular overlay (an exact closed form, purely real).
    """
    return response_interference_detail(scn, ctrl).value


def response_interference(scn: Scenario, ctrl: NumericsControl) -> float:
    """Cross-branch interference F12/sigma, singular overlay included.

    Real; the imaginary residue is checked and discarded.  The relative phase
    between branches is not applied here - probabilities carry cos(delta_phi).
    """
    value = response_interference_complex(scn, ctrl)
    if abs(value.imag) > IMAG_RESIDUE_TOL:
        raise ArithmeticError(
            f"interference response imaginary residue {value.imag:.3e} "
            f"exceeds {IMAG_RESIDUE_TOL:g}"
        )
    return value.real


def response_oracle(
    scn: Scenario,
    ctrl: NumericsControl,
    branch_index: int | None = None,
    epsilon: float | None = None,
) -> float:
    """Brute-force response: the raw 2-D proper-time integral over both windows.

    ``branch_index`` selects a single branch; ``None`` computes the
    cross-branch term.  The regulated correlator (``epsilon`` defaults to
    ``ctrl.epsilon``) is integrated directly - slow, structure-free, and used
    only to validate the analytic path.  Returns F/sigma.
    """
    eps_ctrl = ctrl if epsilon is None else replace(ctrl, epsilon=epsilon)
    sigma = scn.sigma
    omega = scn.omega
    if branch_index is None:
        gt1 = redshift_gamma_tilde(scn.branch1)
        gt2 = redshift_gamma_tilde(scn.branch2)

        def f(tau: float, taup: float) -> complex:
            window = math.exp(-(tau * tau + taup * taup) / (2.0 * sigma * sigma))
            phase = complex(math.cos(omega * (tau - taup)), -math.sin(omega * (tau - taup)))
            return window * phase * w12_btz(tau / gt1 - taup / gt2, scn, eps_ctrl)

        t1 = proper_half_window(scn, 1)
        t2 = proper_half_window(scn, 2)
        ridge = [lambda tau: [tau * gt2 / gt1]]
    else:
        b = scn.branch(branch_index)
        gamma = redshift_gamma_tilde(b) * math.sqrt(b.M)

        def f(tau: float, taup: float) -> complex:
            window = math.exp(-(tau * tau + taup * taup) / (2.0 * sigma * sigma))
            phase = complex(math.cos(omega * (tau - taup)), -math.sin(omega * (tau - taup)))
            return window * phase * w_btz((tau - taup) / gamma, b, eps_ctrl)

        t1 = t2 = proper_half_window(scn, branch_index)
        ridge = [lambda tau: [tau]]
    result = integrate_2d_window(
        f,
        (-t1, t1),
        (-t2, t2),
        rel_tol=1e-8,
        abs_tol=1e-10,
        inner_points=ridge[0],
    )
    return float(np.real(result.value)) / sigma


def response_oracle_extrapolated(
    scn: Scenario,
    ctrl: NumericsControl,
    branch_index: int | None = None,
    epsilons: tuple[float, float] = (1e-3, 1e-4),
) -> float:
    """Oracle value linearly extrapolated to zero regulator.

    The oracle's leading error is O(epsilon); evaluating at two regulators
    and extrapolating removes it.
    """
    e1, e2 = epsilons
    f1 = response_oracle(scn, ctrl, branch_index, epsilon=e1)
    f2 = response_oracle(scn, ctrl, branch_index, epsilon=e2)
    return f2 + (f2 - f1) * e2 / (e1 - e2)
