"""Tanh-sinh quadrature and the singular-kernel integrals used by the engine.

The building block is :func:`tanh_sinh`, a double-exponential rule with level
halving: each refinement halves the step, reuses every previous evaluation,
and estimates the error from the last halving.  Nodes cluster doubly
exponentially toward the interval ends, so integrable endpoint singularities
converge without special handling and the endpoints themselves are never
evaluated.

On top of it sit the four kernel integrals the response and spectrum modules
need:

``integrate_sqrt_endpoint``    ∫ f(z) / sqrt(alpha - cosh z) dz up to the
                               branch point arccosh(alpha), with a choice of
                               two parameterizations (used as a cross-check).
``integrate_inv_sqrt_cosh``    the continuation beyond the branch point,
                               ∫ f(z) / sqrt(cosh z - alpha) dz.
``integrate_pv_sinh``          the principal value of ∫ f(z)/sinh z over a
                               symmetric interval.
``integrate_gaussian_window``  ∫ f(w) exp(-(w-center)^2/(2 width^2)) dw over
                               ten widths, with the discarded tail folded into
                               the error estimate.
``integrate_2d_window``        a nested adaptive 2-D integral over rectangular
                               switching windows (the brute-force oracle path).

All one-dimensional integrands must be vectorized: ``f`` receives a float
ndarray and returns an ndarray (real or complex) of the same shape.  The 2-D
integrand is scalar, ``f(tau, taup) -> complex``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _scipy_integrate

#: Hard ceiling on integrand evaluations for a single integral.
MAX_EVALUATIONS = 10_000_000

#: Nodes are dropped once pi/2*sinh(k*h) exceeds this: 1 - tanh(18.4) is a
#: couple of double-precision ulps, so further nodes would collapse onto the
#: interval ends.
_ST_CLIP = 18.4
_T_MAX = math.asinh(2.0 * _ST_CLIP / math.pi)

#: Half-width, in sinh-argument units, below which the principal-value
#: integrand is replaced by its limit 2*f'(0).
_PV_PATCH = 1e-5
#: Central-difference step for that limit.  The step error grows like
#: f'''(0) * step**2, which matters for rapidly oscillating integrands;
#: 1e-6 keeps it below the rounding noise of the difference itself.
_PV_DERIV_STEP = 1e-6

#: The Gaussian window integral covers this many widths on each side.
_WINDOW_SIGMAS = 12.0
_WINDOW_TAIL_MASS = math.sqrt(math.pi / 2.0) * math.erfc(_WINDOW_SIGMAS / math.sqrt(2.0))


@dataclass(frozen=True)
class QuadResult:
    """Value, error estimate and cost of one integral."""

    value: complex
    abs_error_estimate: float
    evaluations: int


class QuadratureError(RuntimeError):
    """An integral exceeded its evaluation budget.

    ``partial`` carries the best estimate available when the budget ran out,
    or ``None`` if nothing usable was computed.
    """

    def __init__(self, message: str, partial: QuadResult | None = None) -> None:
        super().__init__(message)
        self.partial = partial


@lru_cache(maxsize=None)
def _node_block(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Positive abscissae/weights first appearing at a refinement level.

    Level 0 holds every node of the coarsest grid (step 1); level L > 0 holds
    the odd multiples of the step 2**-L.  Weights exclude the step factor.
    The arrays are cached and must not be mutated.
    """
    h = 2.0**-level
    k_max = int(_T_MAX / h)
    if level == 0:
        ks = np.arange(0, k_max + 1, dtype=float)
    else:
        ks = np.arange(1, k_max + 1, 2, dtype=float)
    t = ks * h
    st = 0.5 * math.pi * np.sinh(t)
    u = np.tanh(st)
    w = 0.5 * math.pi * np.cosh(t) / np.cosh(st) ** 2
    return u, w


def tanh_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
    max_level: int = 12,
) -> QuadResult:
    """Integrate a vectorized integrand over ``[a, b]``.

    Refines until the change across one step halving drops below
    ``max(abs_tol, rel_tol * |value|)`` or ``max_level`` is reached; the
    change is reported as the error estimate either way.  Raises
    :class:`QuadratureError` (with a partial result) only if the evaluation
    budget is exhausted.
    """
    if a == b:
        return QuadResult(0j, 0.0, 0)
    center = 0.5 * (a + b)
    scale = 0.5 * (b - a)
    evaluations = 0
    weighted_sum = 0j
    previous = None
    value = 0j
    error = math.inf
    for level in range(max_level + 1):
        u, w = _node_block(level)
        if level == 0:
            x = np.concatenate([center + scale * u, center - scale * u[1:]])
            ww = np.concatenate([w, w[1:]])
        else:
            x = np.concatenate([center + scale * u, center - scale * u])
            ww = np.concatenate([w, w])
        evaluations += x.size
        if evaluations > MAX_EVALUATIONS:
            raise QuadratureError(
                f"tanh-sinh exceeded {MAX_EVALUATIONS} evaluations",
                partial=QuadResult(value, error, evaluations - x.size),
            )
        weighted_sum = weighted_sum + np.sum(ww * np.asarray(f(x)))
        step = 2.0**-level
        current = scale * step * weighted_sum
        if previous is not None:
            error = abs(current - previous)
            value = complex(current)
            if level >= 2 and error <= max(abs_tol, rel_tol * abs(current)):
                return QuadResult(value, error, evaluations)
        previous = current
        value = complex(current)
    return QuadResult(value, error, evaluations)


def _cosh_difference(z_branch: float, z: np.ndarray) -> np.ndarray:
    """``|cosh(z_branch) - cosh(z)|`` in cancellation-free product form."""
    return 2.0 * np.sinh(0.5 * (z_branch + z)) * np.abs(np.sinh(0.5 * (z_branch - z)))


def integrate_sqrt_endpoint(
    f: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    z_lo: float,
    z_hi: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
    method: str = "substitution",
) -> QuadResult:
    """∫ f(z) (alpha - cosh z)^(-1/2) dz over ``[z_lo, min(z_hi, arccosh alpha)]``.

    ``alpha`` must exceed 1; the integrand has an integrable inverse-square-root
    singularity at the branch point ``z_s = arccosh(alpha)`` when ``z_hi``
    reaches it.  Two parameterizations are provided:

    - ``"substitution"`` (default): ``z = z_s - w**2`` turns the integrand into
      a smooth one.
    - ``"direct"``: tanh-sinh on the original variable, with a small analytic
      tail patch at the branch point.

    They agree to roughly 1e-8 and serve as mutual cross-checks.
    """
    if not alpha > 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    if z_lo < 0.0:
        raise ValueError(f"z_lo must be nonnegative, got {z_lo}")
    z_branch = math.acosh(alpha)
    z_end = min(z_hi, z_branch)
    if z_lo >= z_end:
        return QuadResult(0j, 0.0, 0)

    if method == "substitution":
        w_lo = math.sqrt(z_branch - z_end)
        w_hi = math.sqrt(z_branch - z_lo)

        def g(w: np.ndarray) -> np.ndarray:
            # alpha - cosh(z_branch - w^2) = 2 sinh(z_branch - d) sinh(d) with
            # d = w^2/2; keeping d explicit avoids rounding it away near the
            # branch point.
            d = 0.5 * w * w
            radicand = 2.0 * np.sinh(z_branch - d) * np.sinh(d)
            return 2.0 * w * np.asarray(f(z_branch - w * w)) / np.sqrt(radicand)

        return tanh_sinh(g, w_lo, w_hi, rel_tol, abs_tol)

    if method == "direct":

        def g(z: np.ndarray) -> np.ndarray:
            return np.asarray(f(z)) / np.sqrt(_cosh_difference(z_branch, z))

        if z_hi < z_branch:
            return tanh_sinh(g, z_lo, z_end, rel_tol, abs_tol)
        # The interval runs into the branch point: stop a hair short and add
        # the leading-order tail analytically.
        pad = 1e-13 * max(1.0, z_branch)
        res = tanh_sinh(g, z_lo, z_branch - pad, rel_tol, abs_tol)
        f_edge = complex(np.asarray(f(np.array([z_branch - pad])))[0])
        tail = f_edge * 2.0 * math.sqrt(pad) / math.sqrt(math.sinh(z_branch))
        return QuadResult(
            res.value + tail,
            res.abs_error_estimate + abs(tail) * 1e-6,
            res.evaluations + 1,
        )

    raise ValueError(f"method must be 'substitution' or 'direct', got {method!r}")


def integrate_inv_sqrt_cosh(
    f: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    z_lo: float,
    z_hi: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
) -> QuadResult:
    """∫ f(z) (cosh z - alpha)^(-1/2) dz over ``[max(z_lo, arccosh alpha), z_hi]``.

    The continuation of :func:`integrate_sqrt_endpoint` beyond the branch
    point, computed with the smoothing substitution ``z = z_s + w**2``.
    """
    if not alpha > 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    z_branch = math.acosh(alpha)
    z_start = max(z_lo, z_branch)
    if z_hi <= z_start:
        return QuadResult(0j, 0.0, 0)
    w_lo = math.sqrt(z_start - z_branch)
    w_hi = math.sqrt(z_hi - z_branch)

    def g(w: np.ndarray) -> np.ndarray:
        # cosh(z_branch + w^2) - alpha = 2 sinh(z_branch + d) sinh(d), d = w^2/2.
        d = 0.5 * w * w
        radicand = 2.0 * np.sinh(z_branch + d) * np.sinh(d)
        return 2.0 * w * np.asarray(f(z_branch + w * w)) / np.sqrt(radicand)

    return tanh_sinh(g, w_lo, w_hi, rel_tol, abs_tol)


def integrate_pv_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
) -> QuadResult:
    """Principal value of ∫ f(z)/sinh(z) dz over ``[-a, a]``.

    Folded to ``∫_0^a (f(z) - f(-z))/sinh(z) dz``, whose integrand tends to
    ``2 f'(0)`` at the origin; below a small cutoff it is replaced by that
    limit (central difference), which keeps the folded difference clear of
    catastrophic cancellation.
    """
    if a <= 0.0:
        return QuadResult(0j, 0.0, 0)
    h = _PV_DERIV_STEP
    f_pm = np.asarray(f(np.array([h, -h])))
    derivative = (complex(f_pm[0]) - complex(f_pm[1])) / (2.0 * h)
    evaluations = 2
    if a <= _PV_PATCH:
        value = 2.0 * derivative * a
        return QuadResult(value, abs(value) * a, evaluations)
    patch = 2.0 * derivative * _PV_PATCH

    def g(z: np.ndarray) -> np.ndarray:
        return (np.asarray(f(z)) - np.asarray(f(-z))) / np.sinh(z)

    res = tanh_sinh(g, _PV_PATCH, a, rel_tol, abs_tol)
    return QuadResult(
        patch + res.value,
        res.abs_error_estimate + abs(patch) * _PV_PATCH,
        evaluations + 2 * res.evaluations,
    )


def integrate_gaussian_window(
    f: Callable[[np.ndarray], np.ndarray],
    center: float,
    width: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
) -> QuadResult:
    """∫ f(w) exp(-(w - center)^2 / (2 width^2)) dw.

    Integrates over ``center ± 10 width``; the discarded Gaussian tail, scaled
    by the integrand magnitude at the edges, is added to the error estimate.
    """
    if not width > 0.0:
        raise ValueError(f"width must be positive, got {width}")
    lo = center - _WINDOW_SIGMAS * width
    hi = center + _WINDOW_SIGMAS * width

    def g(w: np.ndarray) -> np.ndarray:
        arg = (w - center) / width
        return np.asarray(f(w)) * np.exp(-0.5 * arg * arg)

    res = tanh_sinh(g, lo, hi, rel_tol, abs_tol)
    edge = np.asarray(f(np.array([lo, hi])))
    tail = _WINDOW_TAIL_MASS * width * float(np.max(np.abs(edge)))
    return QuadResult(res.value, res.abs_error_estimate + tail, res.evaluations + 2)


def integrate_2d_window(
    f: Callable[[float, float], complex],
    window1: tuple[float, float],
    window2: tuple[float, float],
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-10,
    inner_points: Callable[[float], Sequence[float]] | None = None,
) -> QuadResult:
    """Nested adaptive integral of ``f(tau, taup)`` over two finite windows.

    ``tau`` runs over ``window1`` (outer), ``taup`` over ``window2`` (inner).
    ``inner_points(tau)`` may supply inner-variable breakpoints (a near-singular
    ridge, say); points outside the inner window are dropped.  Tolerances apply
    per one-dimensional pass.  This is the slow, structure-free path used to
    cross-check the analytic one.
    """
    lo1, hi1 = window1
    lo2, hi2 = window2
    if hi1 <= lo1 or hi2 <= lo2:
        return QuadResult(0j, 0.0, 0)
    evaluations = 0
    worst_inner_error = 0.0

    def inner(tau: float) -> complex:
        nonlocal evaluations, worst_inner_error

        def integrand(taup: float) -> complex:
            nonlocal evaluations
            evaluations += 1
            if evaluations > MAX_EVALUATIONS:
                raise QuadratureError(
                    f"2-D window integral exceeded {MAX_EVALUATIONS} evaluations"
                )
            return f(tau, taup)

        points = None
        if inner_points is not None:
            interior = sorted(
                {float(p) for p in inner_points(tau) if lo2 < p < hi2}
            )
            points = interior or None
        value, err = _scipy_integrate.quad(
            integrand,
            lo2,
            hi2,
            epsabs=abs_tol,
            epsrel=rel_tol,
            limit=200,
            points=points,
            complex_func=True,
        )
        worst_inner_error = max(worst_inner_error, float(np.abs(err)))
        return value

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _scipy_integrate.IntegrationWarning)
        value, outer_err = _scipy_integrate.quad(
            inner,
            lo1,
            hi1,
            epsabs=abs_tol,
            epsrel=rel_tol,
            limit=200,
            complex_func=True,
        )
    total_err = float(np.abs(outer_err)) + worst_inner_error * (hi1 - lo1)
    return QuadResult(complex(value), total_err, evaluations)
