"""Numerical engine for Unruh-DeWitt detector response outside BTZ black holes
held in a quantum superposition of positions or masses.

Layered API, bottom up:

- :mod:`btzdet.params`      -- branch/scenario/numerics value types and frame conversions
- :mod:`btzdet.quadrature`  -- singularity-aware integration primitives
- :mod:`btzdet.specfun`     -- complex error function, conical Legendre functions
- :mod:`btzdet.wightman`    -- image-sum two-point functions and their coefficients
- :mod:`btzdet.response`    -- time-domain response and interference integrals
- :mod:`btzdet.spectrum`    -- closed-form detector-probed spectra and spectral-path responses
- :mod:`btzdet.probability` -- interference probabilities and parameter sweeps
- :mod:`btzdet.cli`         -- command-line interface (CSV + figure reports)
"""

__version__ = "0.1.0"

from .params import BtzBranch, NumericsControl, ParameterError, Scenario
from .probability import (
    ResponseSet,
    assemble_probabilities,
    sweep_mass,
    sweep_position,
)
from .response import (
    EnvelopeSet,
    envelope_set,
    response_interference,
    response_oracle,
    response_single,
)
from .spectrum import (
    RationalityVerdict,
    SpectrumSample,
    detect_rational_sqrt_mass_ratio,
    w_hat_12,
    w_hat_btz,
)

__all__ = [
    "BtzBranch",
    "EnvelopeSet",
    "NumericsControl",
    "ParameterError",
    "RationalityVerdict",
    "ResponseSet",
    "Scenario",
    "SpectrumSample",
    "assemble_probabilities",
    "detect_rational_sqrt_mass_ratio",
    "envelope_set",
    "response_interference",
    "response_oracle",
    "response_single",
    "sweep_mass",
    "sweep_position",
    "w_hat_12",
    "w_hat_btz",
]
