"""Pricing engine for default probabilities and CDS spreads under the
mixed-fractional CEV model, with a Monte-Carlo validation oracle."""

from .cds import (CdsContract, CurvePoint, SpreadCell, cds_spread,
                  default_curve, premium_annuity, protection_leg, spread_table)
from .core import (EffectiveCoefficients, ModelParams, default_probability,
                   effective_coefficients, fpt_density, phi_closed,
                   phi_quadrature, validate)
from .errors import (NonConvergenceError, NumericalError, ParameterError,
                     QuadratureError)
from .mc import (McConfig, McResult, have_compiled_kernel,
                 mc_cds_spread, mc_default_probability, simulate_fpt)

__version__ = "0.1.0"

__all__ = [
    "CdsContract", "CurvePoint", "SpreadCell", "EffectiveCoefficients",
    "ModelParams", "McConfig", "McResult",
    "cds_spread", "default_curve", "default_probability",
    "effective_coefficients", "fpt_density", "have_compiled_kernel",
    "mc_cds_spread", "mc_default_probability", "phi_closed",
    "phi_quadrature", "premium_annuity", "protection_leg", "simulate_fpt",
    "spread_table", "validate",
    "NonConvergenceError", "NumericalError", "ParameterError", "QuadratureError",
]
