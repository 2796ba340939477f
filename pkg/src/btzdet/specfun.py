"""Special functions behind the closed-form spectra and switching envelopes.

``erf_complex``       error function of complex argument (the two-branch
                      switching envelope needs it off the real axis).
``legendre_conical``  Legendre function of the first kind with conical degree,
                      P_{-1/2 + i*mu}(x) for real mu and x >= 1; real-valued
                      and even in ``mu``.

Both accept scalars or ndarrays and return matching shapes.

Evaluation strategy for the conical function: the hypergeometric series
2F1(1/2 - i mu, 1/2 + i mu; 1; (1-x)/2) for x < 2 (real, even-in-mu
coefficients), switching to a Mehler-Dirichlet integral evaluated by tanh-sinh
quadrature for x >= 2 or whenever the series would cancel catastrophically
(large mu).  For mu*arccosh(x) > 700 the function returns 0.0 by definition
(documented envelope); the spectral sums reach that regime only under
thermal factors far below double precision, so the dropped terms never
matter.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import wofz

from .quadrature import _T_MAX, _node_block

#: Stability envelope for the complex error function.
ERF_MAX_IMAG = 50.0

#: Below this modulus erf is summed from its Maclaurin series, which avoids
#: the cancellation in 1 - exp(-z^2) w(iz) near the origin.
_ERF_SERIES_RADIUS = 0.5

#: Switch from the hypergeometric series to the integral representation.
_SERIES_X_MAX = 2.0

#: The series' largest term grows like exp(2 mu sqrt|w|), so cancellation
#: costs about that factor in ulps; capping it at e^10 keeps the series
#: error near 1e-12 and routes anything worse to the integral path.
_SERIES_CANCEL_MAX = 10.0

#: Documented evaluation envelope: beyond mu*arccosh(x) = 700 the value is
#: defined to be 0.  Spectral sums only reach this regime with thermal
#: factors far below double precision, where the dropped terms cannot
#: matter.
_UNDERFLOW_MU_XI = 700.0

_MD_MAX_LEVEL = 13
_MD_CHUNK = 4096


def _erf_maclaurin(z: np.ndarray) -> np.ndarray:
    """Maclaurin series of erf, accurate to machine precision for |z| <= 0.5."""
    total = np.zeros_like(z)
    term = z.copy()
    z2 = z * z
    for n in range(0, 32):
        total = total + term / (2 * n + 1)
        term = term * (-z2) / (n + 1)
    return (2.0 / math.sqrt(math.pi)) * total


def erf_complex(z: complex | np.ndarray) -> complex | np.ndarray:
    """erf(z) for complex z with |Im z| <= 50.

    Uses the Faddeeva function, erf(z) = 1 - exp(-z^2) w(iz) for Re z >= 0
    with odd reflection, and the Maclaurin series near the origin.
    """
    arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(arr.imag) > ERF_MAX_IMAG):
        raise ValueError(
            f"erf_complex is only supported for |Im z| <= {ERF_MAX_IMAG:g}"
        )
    out = np.empty_like(arr)
    small = np.abs(arr) <= _ERF_SERIES_RADIUS
    if np.any(small):
        out[small] = _erf_maclaurin(arr[small])
    if np.any(~small):
        zl = arr[~small]
        flip = zl.real < 0.0
        zl = np.where(flip, -zl, zl)
        # Fuse exp(-z^2) * w(iz) in log space: w never vanishes, and for
        # Im z large the product's magnitude can exceed the double range,
        # where the naive form produced inf * 0 = nan instead of a signed
        # overflow.  The overflow itself is the documented saturation.
        with np.errstate(over="ignore"):
            val = 1.0 - np.exp(-zl * zl + np.log(wofz(1j * zl)))
        out[~small] = np.where(flip, -val, val)
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(out)
    return out


def _legendre_series(mu: np.ndarray, x: float) -> np.ndarray:
    """Hypergeometric series for P_{-1/2+i mu}(x), valid for 1 <= x < 3.

    P_nu(x) = 2F1(-nu, nu+1; 1; w) with w = (1-x)/2; for nu = -1/2 + i*mu the
    coefficient recurrence is real and even in mu:
    c_{k+1} = c_k * ((k+1/2)^2 + mu^2) / (k+1)^2 * w.
    """
    w = 0.5 * (1.0 - x)
    mu2 = mu * mu
    total = np.ones_like(mu)
    term = np.ones_like(mu)
    for k in range(0, 400):
        term = term * (((k + 0.5) ** 2 + mu2) / (k + 1) ** 2) * w
        total = total + term
        if np.max(np.abs(term)) <= 1e-17 * max(np.max(np.abs(total)), 1e-300):
            break
    return total


def _legendre_md(mu: np.ndarray, x: float) -> np.ndarray:
    """Mehler-Dirichlet integral for P_{-1/2+i mu}(cosh xi), vectorized in mu.

    P = (sqrt(2)/pi) * Integral_0^xi cos(mu t) / sqrt(cosh xi - cosh t) dt,
    computed after the smoothing substitution t = xi - v^2 with the same
    level-halving tanh-sinh node family as the quadrature module, accumulated
    for the whole mu batch at once.
    """
    xi = math.acosh(x)
    half = 0.5 * math.sqrt(xi)  # affine map [0, sqrt(xi)] -> [-1, 1]
    center = half
    accum = np.zeros_like(mu)
    previous = None
    value = np.zeros_like(mu)
    for level in range(_MD_MAX_LEVEL + 1):
        u, wt = _node_block(level)
        if level == 0:
            v = np.concatenate([center + half * u, center - half * u[1:]])
            ww = np.concatenate([wt, wt[1:]])
        else:
            v = np.concatenate([center + half * u, center - half * u])
            ww = np.concatenate([wt, wt])
        for start in range(0, v.size, _MD_CHUNK):
            vs = v[start : start + _MD_CHUNK]
            ws = ww[start : start + _MD_CHUNK]
            d = 0.5 * vs * vs
            # cosh(xi) - cosh(xi - v^2) = 2 sinh(xi - d) sinh(d)
            kernel = 2.0 * vs / np.sqrt(2.0 * np.sinh(xi - d) * np.sinh(d))
            phase = np.cos(np.multiply.outer(mu, xi - vs * vs))
            accum = accum + phase @ (ws * kernel)
        step = 2.0**-level
        current = half * step * accum
        if previous is not None and level >= 2:
            delta = float(np.max(np.abs(current - previous)))
            scale = max(float(np.max(np.abs(current))), 1.0)
            if delta <= 1e-13 * scale:
                value = current
                break
        previous = current
        value = current
    return (math.sqrt(2.0) / math.pi) * value


def legendre_conical(mu: float | np.ndarray, x: float) -> float | np.ndarray:
    """P_{-1/2 + i*mu}(x) for real ``mu`` (scalar or array) and scalar x >= 1.

    Real-valued, even in ``mu``; P(1) = 1 exactly for every degree.  Values
    with mu*arccosh(x) > 700 underflow and are returned as 0.0.
    """
    if not x >= 1.0:
        raise ValueError(f"legendre_conical requires x >= 1, got {x}")
    mu_arr = np.abs(np.asarray(mu, dtype=float))
    scalar = np.isscalar(mu) or np.ndim(mu) == 0
    if mu_arr.ndim == 0:
        mu_arr = mu_arr.reshape(1)
    out = np.empty_like(mu_arr)
    if x == 1.0:
        out[:] = 1.0
        return float(out[0]) if scalar else out
    xi = math.acosh(x)
    underflow = mu_arr * xi > _UNDERFLOW_MU_XI
    series_ok = (x < _SERIES_X_MAX) & (
        2.0 * mu_arr * math.sqrt(0.5 * (x - 1.0)) <= _SERIES_CANCEL_MAX
    )
    series_mask = series_ok & ~underflow
    md_mask = ~series_ok & ~underflow
    out[underflow] = 0.0
    if np.any(series_mask):
        out[series_mask] = _legendre_series(mu_arr[series_mask], x)
    if np.any(md_mask):
        out[md_mask] = _legendre_md(mu_arr[md_mask], x)
    return float(out[0]) if scalar else out
