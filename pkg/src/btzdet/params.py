"""Spacetime/detector parameter types and frame conversions.

Value types
-----------
``BtzBranch``       one semiclassical branch of the superposition: a BTZ black
                    hole of mass ``M`` (units where the horizon sits at
                    ``r_h = l*sqrt(M)``), AdS radius ``l``, a static detector at
                    radial coordinate ``R``, plus the field boundary condition
                    ``zeta`` and twist ``upsilon``.
``Scenario``        the full superposition experiment: two branches, angular
                    separation, detector gap, Gaussian switching width,
                    half-window (proper or coordinate time), and the relative
                    phase convention used when probabilities are assembled.
``NumericsControl`` image-sum cutoff, regulator, quadrature tolerances and the
                    rationality-detection bounds.

Three time frames appear throughout: BTZ coordinate time ``t``, AdS time
``t_bar = sqrt(M)*t`` (the frame in which different-mass branches are
compared), and detector proper time ``tau = gamma*t = gamma_tilde*t_bar``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

VALID_ZETA = (-1, 0, 1)
VALID_UPSILON = (-1, 1)
WINDOW_KINDS = ("proper", "coordinate")
PHASE_CONVENTIONS = ("fixed", "mass_window")

#: Minimum ratio of per-branch proper half-window to switching width for the
#: infinite-window envelope approximation to be trustworthy.
MIN_WINDOW_SIGMAS = 10.0

_EQ_SLACK = 1e-12


class ParameterError(ValueError):
    """A parameter set violates a documented invariant."""


@dataclass(frozen=True)
class BtzBranch:
    """One semiclassical branch: a BTZ black hole and a static detector."""

    M: float
    l: float
    R: float
    zeta: int = 0
    upsilon: int = 1

    def __post_init__(self) -> None:
        if not (self.M > 0):
            raise ParameterError(f"black-hole mass must be positive, got M={self.M}")
        if not (self.l > 0):
            raise ParameterError(f"AdS radius must be positive, got l={self.l}")
        r_h = self.l * math.sqrt(self.M)
        if not (self.R > r_h):
            raise ParameterError(
                f"detector must sit strictly outside the horizon: R={self.R} <= r_h={r_h}"
            )
        if self.zeta not in VALID_ZETA:
            raise ParameterError(f"zeta must be one of {VALID_ZETA}, got {self.zeta}")
        if self.upsilon not in VALID_UPSILON:
            raise ParameterError(
                f"upsilon must be one of {VALID_UPSILON}, got {self.upsilon}"
            )


def horizon_radius(b: BtzBranch) -> float:
    """Horizon radial coordinate ``r_h = l*sqrt(M)``."""
    return b.l * math.sqrt(b.M)


def redshift_gamma(b: BtzBranch) -> float:
    """Redshift factor ``gamma = sqrt(R^2/l^2 - M)`` (proper time per coordinate time)."""
    return math.sqrt(b.R * b.R / (b.l * b.l) - b.M)


def redshift_gamma_tilde(b: BtzBranch) -> float:
    """AdS-time redshift ``gamma_tilde = sqrt(R^2/(M l^2) - 1) = gamma/sqrt(M)``."""
    return math.sqrt(b.R * b.R / (b.M * b.l * b.l) - 1.0)


def hawking_temperature(b: BtzBranch) -> float:
    """Black-hole temperature ``T_H = sqrt(M)/(2 pi l)`` (BTZ-time frequencies)."""
    return math.sqrt(b.M) / (2.0 * math.pi * b.l)


def ads_hawking_temperature(l: float) -> float:
    """Temperature ``1/(2 pi l)`` seen by AdS-time frequencies."""
    if not (l > 0):
        raise ParameterError(f"AdS radius must be positive, got l={l}")
    return 1.0 / (2.0 * math.pi * l)


def ads_time_of(t: float, b: BtzBranch) -> float:
    """AdS time of a BTZ coordinate time: ``t_bar = sqrt(M)*t``."""
    return math.sqrt(b.M) * t


def proper_time_of(t_bar: float, b: BtzBranch) -> float:
    """Detector proper time of an AdS time: ``tau = gamma_tilde*t_bar``."""
    return redshift_gamma_tilde(b) * t_bar


def coordinate_time_of(tau: float, b: BtzBranch) -> float:
    """BTZ coordinate time of a detector proper time: ``t = tau/gamma``."""
    return tau / redshift_gamma(b)


def detector_energy_from_ads_energy(e_ads: float, b: BtzBranch) -> float:
    """Convert an AdS-frame energy to the detector frame: ``E = E_ads/gamma_tilde``."""
    return e_ads / redshift_gamma_tilde(b)


@dataclass(frozen=True)
class Scenario:
    """Two superposed branches plus detector and switching parameters.

    ``omega`` is the detector gap in inverse proper time; ``sigma`` the Gaussian
    switching width in proper time.  ``tau_f`` is the half-window: detector
    proper time when ``window == "proper"`` (both branches switch for proper
    time ``[-tau_f, tau_f]``), BTZ coordinate time when ``window ==
    "coordinate"`` (both branches switch for coordinate time ``[-tau_f,
    tau_f]``, so their proper windows differ by the redshifts).

    ``delta_phi`` is the relative phase between the branches.  With
    ``phase_convention == "mass_window"`` the phase is instead computed per
    scenario as ``(sqrt(M1) - sqrt(M2)) * delta_t_factor * tau_f`` (coordinate
    windows only), the convention used by mass-sweep reproductions.
    """

    branch1: BtzBranch
    branch2: BtzBranch
    omega: float
    sigma: float
    tau_f: float
    theta: float = 0.0
    delta_phi: float = 0.0
    window: str = "proper"
    phase_convention: str = "fixed"
    delta_t_factor: float = 2.0
    coupling: float = 1.0
    matrix_element_sq: float = 1.0

    def __post_init__(self) -> None:
        if self.branch1.l != self.branch2.l:
            raise ParameterError(
                f"branches must share the AdS radius: {self.branch1.l} != {self.branch2.l}"
            )
        if self.branch1.zeta != self.branch2.zeta:
            raise ParameterError("branches must share the boundary condition zeta")
        if self.branch1.upsilon != self.branch2.upsilon:
            raise ParameterError("branches must share the field twist upsilon")
        if not (self.sigma > 0):
            raise ParameterError(f"switching width must be positive, got {self.sigma}")
        if not (0.0 <= self.theta < 2.0 * math.pi):
            raise ParameterError(f"theta must lie in [0, 2*pi), got {self.theta}")
        if self.window not in WINDOW_KINDS:
            raise ParameterError(f"window must be one of {WINDOW_KINDS}, got {self.window!r}")
        if self.phase_convention not in PHASE_CONVENTIONS:
            raise ParameterError(
                f"phase_convention must be one of {PHASE_CONVENTIONS}, got {self.phase_convention!r}"
            )
        if self.phase_convention == "mass_window" and self.window != "coordinate":
            raise ParameterError(
                "phase_convention 'mass_window' needs a coordinate-time window "
                "(the phase is a coordinate-time quantity)"
            )
        if self.branch1.M != self.branch2.M and self.theta != 0.0:
            raise ParameterError(
                "mass-superposed branches are only supported at theta = 0"
            )
        for j in (1, 2):
            half = proper_half_window(self, j)
            if half < MIN_WINDOW_SIGMAS * self.sigma - _EQ_SLACK:
                raise ParameterError(
                    f"branch-{j} proper half-window {half:g} is below "
                    f"{MIN_WINDOW_SIGMAS:g} switching widths; the envelope "
                    "approximation would not be trustworthy"
                )

    def branch(self, index: int) -> BtzBranch:
        if index == 1:
            return self.branch1
        if index == 2:
            return self.branch2
        raise ParameterError(f"branch index must be 1 or 2, got {index}")


def ads_half_window(scn: Scenario, index: int) -> float:
    """Half-window of branch ``index`` in AdS time.

    Proper windows give ``tau_f/gamma_tilde_J``; coordinate windows give
    ``sqrt(M_J)*tau_f``.
    """
    b = scn.branch(index)
    if scn.window == "proper":
        return scn.tau_f / redshift_gamma_tilde(b)
    return math.sqrt(b.M) * scn.tau_f


def proper_half_window(scn: Scenario, index: int) -> float:
    """Half-window of branch ``index`` in detector proper time."""
    return redshift_gamma_tilde(scn.branch(index)) * ads_half_window(scn, index)


def effective_delta_phi(scn: Scenario) -> float:
    """Relative phase actually applied when probabilities are assembled."""
    if scn.phase_convention == "mass_window":
        delta_t = scn.delta_t_factor * scn.tau_f
        return (math.sqrt(scn.branch1.M) - math.sqrt(scn.branch2.M)) * delta_t
    return scn.delta_phi


@dataclass(frozen=True)
class NumericsControl:
    """Cutoffs, tolerances and regulators shared across the engine.

    ``epsilon`` regulates the time-domain correlators only (the oracle path);
    the analytic response path resolves all singular structure exactly.
    ``convention`` selects how many image terms the capped normalization and
    the resonance constant count: ``"2N+1"`` (indices -N..N) or ``"2N"``.
    """

    image_cutoff: int = 5
    epsilon: float = 1e-4
    quad_rel_tol: float = 1e-9
    quad_abs_tol: float = 1e-12
    rational_max_den: int = 12
    rational_tol: float = 1e-9
    convention: str = "2N+1"

    def __post_init__(self) -> None:
        if self.image_cutoff < 1:
            raise ParameterError(f"image cutoff must be >= 1, got {self.image_cutoff}")
        if not (self.epsilon > 0):
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")
        if not (self.quad_rel_tol > 0 and self.quad_abs_tol > 0):
            raise ParameterError("quadrature tolerances must be positive")
        if self.rational_max_den < 2:
            raise ParameterError(
                f"rational_max_den must be >= 2, got {self.rational_max_den}"
            )
        if not (self.rational_tol > 0):
            raise ParameterError(f"rational_tol must be positive, got {self.rational_tol}")
        if self.convention not in ("2N+1", "2N"):
            raise ParameterError(
                f"convention must be '2N+1' or '2N', got {self.convention!r}"
            )

    @property
    def image_count(self) -> int:
        """Number of image terms the capped normalization counts."""
        n = self.image_cutoff
        return 2 * n + 1 if self.convention == "2N+1" else 2 * n
