"""Discrete Gegenbauer-Sobolev orthogonal polynomials in extended precision."""

from .errors import ConsistencyError, DomainError, GsopError, NumericalError, ParameterError
from .numerics import PrecisionConfig, working_precision
from .sobolev import SobolevParams, sobolev_polynomial, sobolev_inner, sobolev_norm_sq

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "DomainError", "GsopError", "NumericalError", "ParameterError",
    "PrecisionConfig", "working_precision",
    "SobolevParams", "sobolev_polynomial", "sobolev_inner", "sobolev_norm_sq",
]
