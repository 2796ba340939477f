"""Closed-form detector-probed spectra and the spectral response path.

``w_hat_btz`` / ``w_hat_12`` evaluate the analytic Fourier transforms of the
image-sum correlators: a thermal (Fermi) factor times conical Legendre
functions of the image coefficients.  Each sample separates

``regular_part``   the thermal Legendre sum - the complete transform of the
                   regulated correlator, pole contribution included,
``singular_part``  a reported-separately constant: the resonance bookkeeping
                   term for superposed masses at rational sqrt-mass ratio
                   (and its coincident-branch counterpart), not part of the
                   physical transform,
``total``          their sum, the display convention used in reports.

``response_from_spectrum`` / ``interference_from_spectrum`` convolve the
regular part with the exact Gaussian switching kernels, giving a second,
independent route to the time-domain responses; at rational mass ratios the
interference route adds the closed-form Gaussian overlap of the singular
constant (``singular_interference_term``), which produces the sharp
probability peaks.

The analytic spectra take the untwisted field (Upsilon = +1); twisted
correlators exist only on the time-domain path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import (
    BtzBranch,
    NumericsControl,
    ParameterError,
    Scenario,
    ads_hawking_temperature,
    hawking_temperature,
    redshift_gamma,
    redshift_gamma_tilde,
)
from .quadrature import integrate_gaussian_window
from .specfun import legendre_conical
from .wightman import cross_branch_terms, single_branch_terms

#: Two coefficient values within this relative distance are treated as the
#: same image term when the Legendre sums are grouped.
_GROUP_REL_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumSample:
    """One frequency sample of a detector-probed spectrum."""

    K: float
    regular_part: float
    singular_part: float

    @property
    def total(self) -> float:
        return self.regular_part + self.singular_part


@dataclass(frozen=True)
class RationalityVerdict:
    """Outcome of the rational sqrt-mass-ratio test behind the resonance."""

    is_rational: bool
    p_over_q: Fraction | None
    residual: float


def detect_rational_sqrt_mass_ratio(
    scn: Scenario, ctrl: NumericsControl
) -> RationalityVerdict:
    """Decide whether sqrt(M1/M2) is a small-denominator rational other than 1.

    The best rational with denominator <= ``ctrl.rational_max_den`` is found
    by continued-fraction truncation; the verdict fires when it reproduces the
    ratio to ``ctrl.rational_tol`` and is not 1 (coincident masses resonate
    trivially and are excluded).
    """
    ratio = math.sqrt(scn.branch1.M / scn.branch2.M)
    best = Fraction(ratio).limit_denominator(ctrl.rational_max_den)
    residual = abs(ratio - float(best))
    fires = residual <= ctrl.rational_tol and best != 1
    return RationalityVerdict(fires, best if fires else None, residual)


def _fermi(x: np.ndarray) -> np.ndarray:
    """1/(exp(x) + 1), overflow-free for any real x."""
    t = np.exp(-np.abs(x))
    return np.where(x >= 0.0, t / (1.0 + t), 1.0 / (1.0 + t))


def _grouped(terms: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Merge (weight, alpha) pairs with coinciding alpha, sorted by alpha.

    Resonant double sums repeat the same coefficient many times (up to
    floating-point ulps); grouping keeps the Legendre evaluation count low and
    the summation order deterministic.
    """
    ordered = sorted(terms, key=lambda t: t[1])
    merged: list[tuple[float, float]] = []
    for weight, alpha in ordered:
        if merged and abs(alpha - merged[-1][1]) <= _GROUP_REL_TOL * abs(alpha):
            merged[-1] = (merged[-1][0] + weight, merged[-1][1])
        else:
            merged.append((weight, alpha))
    return merged


def _require_untwisted(*branches: BtzBranch) -> None:
    for b in branches:
        if b.upsilon != 1:
            raise ParameterError(
                "analytic spectra are defined for the untwisted field only "
                "(upsilon = +1); twisted correlators exist on the time-domain path"
            )


def _legendre_sum(
    mu: np.ndarray, terms: list[tuple[float, float]]
) -> np.ndarray:
    total = np.zeros_like(mu)
    for weight, alpha in terms:
        total = total + weight * legendre_conical(mu, alpha)
    return total


def _regular_btz_many(
    K: np.ndarray, b: BtzBranch, ctrl: NumericsControl
) -> np.ndarray:
    """Regular spectral part at an array of BTZ frequencies."""
    terms = _grouped(single_branch_terms(b, ctrl))
    mu = K * b.l / math.sqrt(b.M)
    thermal = _fermi(K / hawking_temperature(b))
    return (0.5 / redshift_gamma(b)) * thermal * _legendre_sum(mu, terms)


def _regular_12_many(
    K: np.ndarray, scn: Scenario, ctrl: NumericsControl
) -> np.ndarray:
    """Regular cross-branch spectral part at an array of AdS frequencies."""
    terms = _grouped(cross_branch_terms(scn, ctrl))
    gt1 = redshift_gamma_tilde(scn.branch1)
    gt2 = redshift_gamma_tilde(scn.branch2)
    mu = K * scn.branch1.l
    thermal = _fermi(K / ads_hawking_temperature(scn.branch1.l))
    return (0.5 / math.sqrt(gt1 * gt2)) * thermal * _legendre_sum(mu, terms)


def w_hat_btz(K: float, b: BtzBranch, ctrl: NumericsControl) -> SpectrumSample:
    """Single-branch spectrum at BTZ frequency ``K``.

    regular_part = (1/(2 gamma)) (e^(K/T_H) + 1)^(-1)
                   * sum_n [P_{-1/2 + i K/(2 pi T_H)}(alpha_n) - zeta P(alpha'_n)];
    singular_part = 1/(4 gamma), the constant bookkeeping term.
    """
    _require_untwisted(b)
    regular = float(_regular_btz_many(np.array([K]), b, ctrl)[0])
    singular = 0.25 / redshift_gamma(b)
    return SpectrumSample(K, regular, singular)


def w_hat_12(K: float, scn: Scenario, ctrl: NumericsControl) -> SpectrumSample:
    """Cross-branch spectrum at AdS frequency ``K``.

    The regular part mirrors :func:`w_hat_btz` with AdS-frequency degree and
    temperature and the cross-branch coefficient families (the unequal-mass
    double sum carries its 1/image_count normalization).  The singular part is
    image_count/(4 sqrt(gt1 gt2)) when the rationality verdict fires with
    R1 = R2, the coincident-branch constant 1/(4 gamma_tilde) for identical
    geometry, and 0 otherwise.
    """
    _require_untwisted(scn.branch1, scn.branch2)
    regular = float(_regular_12_many(np.array([K]), scn, ctrl)[0])
    gt1 = redshift_gamma_tilde(scn.branch1)
    gt2 = redshift_gamma_tilde(scn.branch2)
    b1, b2 = scn.branch1, scn.branch2
    singular = 0.0
    if b1.M == b2.M:
        if b1.R == b2.R and scn.theta == 0.0:
            singular = 0.25 / math.sqrt(gt1 * gt2)
    elif b1.R == b2.R and detect_rational_sqrt_mass_ratio(scn, ctrl).is_rational:
        singular = ctrl.image_count / (4.0 * math.sqrt(gt1 * gt2))
    return SpectrumSample(K, regular, singular)


def response_from_spectrum(
    scn: Scenario, branch_index: int, ctrl: NumericsControl
) -> float:
    """Single-branch response F/sigma via the spectral convolution.

    F = (1/2 pi) Integral |eta_hat(omega/gamma)|^2 W_hat(gamma Omega + omega)
    with the exact Gaussian transform eta_hat(omega) = sigma sqrt(2 pi)
    exp(-sigma^2 omega^2 / 2); the regular spectral part is the complete
    transform, so it alone enters the convolution.
    """
    b = scn.branch(branch_index)
    _require_untwisted(b)
    gamma = redshift_gamma(b)
    sigma = scn.sigma

    def f(omega: np.ndarray) -> np.ndarray:
        return _regular_btz_many(gamma * scn.omega + omega, b, ctrl)

    res = integrate_gaussian_window(
        f,
        0.0,
        gamma / (math.sqrt(2.0) * sigma),
        rel_tol=ctrl.quad_rel_tol,
        abs_tol=ctrl.quad_abs_tol,
    )
    return sigma * float(np.real(res.value))


def singular_interference_term(scn: Scenario, ctrl: NumericsControl) -> float:
    """Closed-form Gaussian overlap of the resonant singular constant (F12/sigma).

    Nonzero only for a mass superposition at equal radii whose sqrt-mass
    ratio passes the rationality test: the constant image_count/(4 sqrt(gt1
    gt2)) convolved with the two switching kernels.
    """
    b1, b2 = scn.branch1, scn.branch2
    if b1.M == b2.M or b1.R != b2.R:
        return 0.0
    if not detect_rational_sqrt_mass_ratio(scn, ctrl).is_rational:
        return 0.0
    gt1 = redshift_gamma_tilde(b1)
    gt2 = redshift_gamma_tilde(b2)
    big_a = gt1 * gt1 + gt2 * gt2
    constant = ctrl.image_count / (4.0 * math.sqrt(gt1 * gt2))
    overlap = math.sqrt(2.0 * math.pi) * gt1 * gt2 / math.sqrt(big_a)
    damping = math.exp(
        -(scn.sigma**2) * scn.omega**2 * (gt1 - gt2) ** 2 / (2.0 * big_a)
    )
    return constant * overlap * damping


def interference_from_spectrum(scn: Scenario, ctrl: NumericsControl) -> float:
    """Interference term F12/sigma via the spectral convolution.

    (1/2 pi) Integral eta_hat(omega/gt1) eta_hat(omega/gt2 + D)
    W_hat12(omega + gt1 Omega) with D = Omega (gt1/gt2 - 1): completing the
    square turns the two kernels into one off-center Gaussian window over the
    regular part, plus the closed-form singular overlap when the resonance
    fires.
    """
    _require_untwisted(scn.branch1, scn.branch2)
    gt1 = redshift_gamma_tilde(scn.branch1)
    gt2 = redshift_gamma_tilde(scn.branch2)
    sigma = scn.sigma
    big_a = gt1 * gt1 + gt2 * gt2
    quad_coeff = 1.0 / gt1**2 + 1.0 / gt2**2
    shift = scn.omega * (gt1 / gt2 - 1.0)
    center = -shift / (quad_coeff * gt2)
    width = 1.0 / (sigma * math.sqrt(quad_coeff))
    damping = math.exp(
        -(sigma**2) * scn.omega**2 * (gt1 - gt2) ** 2 / (2.0 * big_a)
    )

    def f(omega: np.ndarray) -> np.ndarray:
        return _regular_12_many(omega + gt1 * scn.omega, scn, ctrl)

    res = integrate_gaussian_window(
        f, center, width, rel_tol=ctrl.quad_rel_tol, abs_tol=ctrl.quad_abs_tol
    )
    regular = sigma * damping * float(np.real(res.value))
    return regular + singular_interference_term(scn, ctrl)
