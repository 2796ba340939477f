"""Image-sum two-point functions on BTZ backgrounds and their coefficients.

The conformally coupled massless scalar's Wightman function outside a BTZ
horizon is a sum over images m of terms (alpha_m - cosh(..))^{-1/2}, with a
mirror family alpha'_m weighted by the boundary condition zeta.  Correlating
two different branches of a superposed spacetime generalizes the coefficients:

``alpha12_m``   two detector radii on one black hole (position superposition),
``beta_mn``     two different masses (mass superposition), a double-index
                family normalized by the capped image count.

``w_btz`` / ``w12_btz`` assemble the correlators with an explicit iota-epsilon
regulator; they back the brute-force response oracle and Fourier cross-checks,
while the production response path integrates the same image terms with the
singular structure split off analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import (
    BtzBranch,
    NumericsControl,
    ParameterError,
    Scenario,
    horizon_radius,
    redshift_gamma_tilde,
)


def alpha12_m(b1: BtzBranch, b2: BtzBranch, theta: float, m: int) -> float:
    """Cross-radius image coefficient for equal-mass branches.

    alpha_m^(12) = [ (R1 R2 / r_h^2) cosh((theta - 2 pi m) sqrt(M)) - 1 ]
                   / sqrt((R1^2/r_h^2 - 1)(R2^2/r_h^2 - 1)).

    With R1 = R2 and theta = 0 this is the single-branch family; m = 0 then
    gives exactly 1 (the light-cone image).
    """
    if b1.M != b2.M:
        raise ParameterError("alpha12_m needs equal masses; use beta_mn instead")
    rh2 = horizon_radius(b1) * horizon_radius(b2)
    q1 = b1.R * b1.R / rh2
    q2 = b2.R * b2.R / rh2
    numerator = (b1.R * b2.R / rh2) * math.cosh(
        (theta - 2.0 * math.pi * m) * math.sqrt(b1.M)
    ) - 1.0
    return numerator / math.sqrt((q1 - 1.0) * (q2 - 1.0))


def alpha_prime12_m(b1: BtzBranch, b2: BtzBranch, theta: float, m: int) -> float:
    """Mirror-family coefficient: as :func:`alpha12_m` with +1 in the numerator."""
    if b1.M != b2.M:
        raise ParameterError("alpha_prime12_m needs equal masses; use beta_prime_mn")
    rh2 = horizon_radius(b1) * horizon_radius(b2)
    q1 = b1.R * b1.R / rh2
    q2 = b2.R * b2.R / rh2
    numerator = (b1.R * b2.R / rh2) * math.cosh(
        (theta - 2.0 * math.pi * m) * math.sqrt(b1.M)
    ) + 1.0
    return numerator / math.sqrt((q1 - 1.0) * (q2 - 1.0))


def beta_mn(b1: BtzBranch, b2: BtzBranch, m: int, n: int) -> float:
    """Cross-mass image coefficient.

    beta_mn^(12) = [ (R1 R2 / (sqrt(M1 M2) l^2)) cosh(2 pi (m sqrt(M1) - n sqrt(M2))) - 1 ]
                   / (gamma_tilde_1 gamma_tilde_2).

    For M1 = M2 it depends on m - n only and collapses to alpha12_(m-n).
    """
    l2 = b1.l * b2.l
    numerator = (b1.R * b2.R / (math.sqrt(b1.M * b2.M) * l2)) * math.cosh(
        2.0 * math.pi * (m * math.sqrt(b1.M) - n * math.sqrt(b2.M))
    ) - 1.0
    return numerator / (redshift_gamma_tilde(b1) * redshift_gamma_tilde(b2))


def beta_prime_mn(b1: BtzBranch, b2: BtzBranch, m: int, n: int) -> float:
    """Mirror-family cross-mass coefficient: +1 in the numerator."""
    l2 = b1.l * b2.l
    numerator = (b1.R * b2.R / (math.sqrt(b1.M * b2.M) * l2)) * math.cosh(
        2.0 * math.pi * (m * math.sqrt(b1.M) - n * math.sqrt(b2.M))
    ) + 1.0
    return numerator / (redshift_gamma_tilde(b1) * redshift_gamma_tilde(b2))


@dataclass(frozen=True)
class ImageCoefficients:
    """Coefficient tables for one scenario at image cutoff N.

    ``alpha``/``alpha_prime`` are indexed by m in [-N, N] (position offset
    ``m + N``) and only populated when the branch masses agree; ``beta``/
    ``beta_prime`` are (2N+1) x (2N+1) matrices indexed by (m + N, n + N) and
    always populated (for equal masses beta_mn == alpha_(m-n) with theta = 0).
    """

    cutoff: int
    alpha: np.ndarray | None
    alpha_prime: np.ndarray | None
    beta: np.ndarray
    beta_prime: np.ndarray


def image_coefficients(scn: Scenario, ctrl: NumericsControl) -> ImageCoefficients:
    """Precompute every coefficient family the scenario can use."""
    n = ctrl.image_cutoff
    ms = range(-n, n + 1)
    if scn.branch1.M == scn.branch2.M:
        alpha = np.array(
            [alpha12_m(scn.branch1, scn.branch2, scn.theta, m) for m in ms]
        )
        alpha_prime = np.array(
            [alpha_prime12_m(scn.branch1, scn.branch2, scn.theta, m) for m in ms]
        )
    else:
        alpha = None
        alpha_prime = None
    beta = np.array(
        [[beta_mn(scn.branch1, scn.branch2, m, k) for k in ms] for m in ms]
    )
    beta_prime = np.array(
        [[beta_prime_mn(scn.branch1, scn.branch2, m, k) for k in ms] for m in ms]
    )
    return ImageCoefficients(n, alpha, alpha_prime, beta, beta_prime)


def _image_sum(
    x: np.ndarray,
    coefficients: list[tuple[float, float]],
) -> np.ndarray:
    """Sum weight * (alpha - cosh x)^(-1/2) over (weight, alpha) pairs.

    ``x`` is the already-regulated complex cosh argument; the principal branch
    of the square root realizes the Wightman ordering.  Resonant terms with
    alpha exactly 1 use 1 - cosh x = -2 sinh^2(x/2), which stays accurate for
    small regulated arguments where the direct difference would cancel.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        cosh_x = np.cosh(x)
        half_sinh = np.sinh(0.5 * x)
        one_minus_cosh = -2.0 * half_sinh * half_sinh
        total = np.zeros_like(cosh_x)
        for weight, alpha in coefficients:
            radicand = one_minus_cosh if alpha == 1.0 else alpha - cosh_x
            total = total + weight / np.sqrt(radicand)
        # Once cosh overflows, every term is ~e^(-|Re x|/2) and underflows
        # past the double range; zero is the correct limit, whereas letting
        # the infinities propagate through complex division yields nan.
        overflowed = np.isinf(cosh_x.real) | np.isinf(cosh_x.imag)
        total = np.where(overflowed, 0.0, total)
    return total


def _weighted_terms(
    alphas: list[float],
    alpha_primes: list[float],
    weights: list[float],
    zeta: int,
) -> list[tuple[float, float]]:
    terms = [(w, a) for w, a in zip(weights, alphas)]
    if zeta != 0:
        terms += [(-zeta * w, a) for w, a in zip(weights, alpha_primes)]
    return terms


def single_branch_terms(
    b: BtzBranch, ctrl: NumericsControl
) -> list[tuple[float, float]]:
    """(weight, alpha) pairs for one branch: Upsilon^m and the zeta mirrors."""
    n = ctrl.image_cutoff
    ms = list(range(-n, n + 1))
    alphas = [alpha12_m(b, b, 0.0, m) for m in ms]
    primes = [alpha_prime12_m(b, b, 0.0, m) for m in ms]
    weights = [float(b.upsilon**m) for m in ms]
    return _weighted_terms(alphas, primes, weights, b.zeta)


def cross_branch_terms(
    scn: Scenario, ctrl: NumericsControl
) -> list[tuple[float, float]]:
    """(weight, alpha) pairs for the cross-branch correlator.

    Equal masses: a single image index with alpha12_m.  Unequal masses: the
    (m, n) double family beta_mn, each term carrying the 1/image_count
    normalization of the capped sum.
    """
    b1, b2 = scn.branch1, scn.branch2
    n = ctrl.image_cutoff
    ms = list(range(-n, n + 1))
    upsilon = b1.upsilon
    if b1.M == b2.M:
        alphas = [alpha12_m(b1, b2, scn.theta, m) for m in ms]
        primes = [alpha_prime12_m(b1, b2, scn.theta, m) for m in ms]
        weights = [float(upsilon**m) for m in ms]
        return _weighted_terms(alphas, primes, weights, b1.zeta)
    share = 1.0 / ctrl.image_count
    alphas = [beta_mn(b1, b2, m, k) for m in ms for k in ms]
    primes = [beta_prime_mn(b1, b2, m, k) for m in ms for k in ms]
    weights = [share * float(upsilon ** (m + k)) for m in ms for k in ms]
    return _weighted_terms(alphas, primes, weights, b1.zeta)


def w_btz(
    s: float | np.ndarray, b: BtzBranch, ctrl: NumericsControl
) -> complex | np.ndarray:
    """Wightman function at BTZ coordinate-time separation ``s``.

    (1/(4 pi l sqrt(2) gamma_tilde)) * sum_m Upsilon^m [
        (alpha_m - cosh(s sqrt(M)/l - i eps))^(-1/2)
        - zeta (alpha'_m - cosh(...))^(-1/2) ].
    """
    x = np.asarray(s, dtype=float) * math.sqrt(b.M) / b.l - 1j * ctrl.epsilon
    prefactor = 1.0 / (4.0 * math.pi * b.l * math.sqrt(2.0) * redshift_gamma_tilde(b))
    total = prefactor * _image_sum(x, single_branch_terms(b, ctrl))
    if np.isscalar(s) or np.ndim(s) == 0:
        return complex(total)
    return total


def w12_btz(
    s_bar: float | np.ndarray, scn: Scenario, ctrl: NumericsControl
) -> complex | np.ndarray:
    """Cross-branch Wightman function at AdS-time separation ``s_bar``.

    Prefactor 1/(4 pi l sqrt(2 gamma_tilde_1 gamma_tilde_2)); equal masses use
    the single alpha12 image sum, unequal masses the (m, n) double sum with
    the 1/image_count normalization (already folded into the term weights).
    """
    b1 = scn.branch1
    x = np.asarray(s_bar, dtype=float) / b1.l - 1j * ctrl.epsilon
    gt1 = redshift_gamma_tilde(b1)
    gt2 = redshift_gamma_tilde(scn.branch2)
    prefactor = 1.0 / (4.0 * math.pi * b1.l * math.sqrt(2.0 * gt1 * gt2))
    total = prefactor * _image_sum(x, cross_branch_terms(scn, ctrl))
    if np.isscalar(s_bar) or np.ndim(s_bar) == 0:
        return complex(total)
    return total
