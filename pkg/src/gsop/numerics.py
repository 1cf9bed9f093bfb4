"""Extended-precision scalars and Gamma/Pochhammer primitives.

Every quantity in the package is an ``mpmath.mpf`` evaluated at the
working precision of the process-wide mpmath context.  The default is
60 significant decimal digits, overridable through the ``GSOP_PRECISION``
environment variable or :func:`working_precision`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import DomainError, ParameterError

Real = mpmath.mpf

DEFAULT_DIGITS = 60
MIN_DIGITS = 16
ENV_VAR = "GSOP_PRECISION"


@dataclass(frozen=True)
class PrecisionConfig:
    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < MIN_DIGITS:
            raise ParameterError(f"precision must be an integer >= {MIN_DIGITS}, got {self.digits!r}")

    @classmethod
    def from_env(cls, override=None):
        """Resolve digits: explicit override, then ``GSOP_PRECISION``, then 60."""
        if override is not None:
            return cls(int(override))
        raw = os.environ.get(ENV_VAR)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            return cls(int(raw))
        except ValueError:
            raise ParameterError(f"{ENV_VAR} must be an integer, got {raw!r}") from None


def digits():
    return mp.dps


@contextmanager
def working_precision(config):
    """Run a block at ``config.digits`` (a PrecisionConfig or an int)."""
    if not isinstance(config, PrecisionConfig):
        config = PrecisionConfig(config)
    with mp.workdps(config.digits):
        yield config


def to_real(value):
    """Convert ints, floats, Fractions, mpf or strings ("0.7", "-3/4") to Real.

    Strings are parsed exactly before the single rounding to working precision.
    """
    if isinstance(value, (mpmath.mpf, type(mpmath.mp.pi))):
        return +value
    if isinstance(value, bool):
        raise ParameterError("booleans are not real parameters")
    if isinstance(value, int):
        return mpmath.mpf(value)
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, float):
        return mpmath.mpf(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParameterError(f"cannot parse {value!r} as a real number") from None
        return mpmath.mpf(frac.numerator) / frac.denominator
    raise ParameterError(f"unsupported numeric type {type(value).__name__}")


def gamma(x):
    """Gamma function on (0, inf).

    Backed by ``mpmath.gamma`` (Lanczos/Stirling with precision-adaptive
    error control; integer arguments give exact factorials up to the
    working precision).
    """
    x = to_real(x)
    if not mpmath.isfinite(x) or x <= 0:
        raise DomainError(f"gamma is only defined here for finite x > 0, got {x}")
    return mpmath.gamma(x)


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if int(k) != k or k < 0:
        raise DomainError(f"pochhammer order must be a nonnegative integer, got {k!r}")
    a = to_real(a)
    result = mpmath.mpf(1)
    for t in range(int(k)):
        result *= a + t
    return result


def gamma_ratio(a, b):
    """Gamma(a) / Gamma(b) for a, b > 0.

    Uses a Pochhammer product when a - b is a nonnegative integer and two
    Gamma evaluations otherwise.
    """
    a = to_real(a)
    b = to_real(b)
    diff = a - b
    if diff == int(diff) and 0 <= diff <= 10**6:
        return pochhammer(b, int(diff))
    if -diff == int(-diff) and 0 < -diff <= 10**6:
        return 1 / pochhammer(a, int(-diff))
    return gamma(a) / gamma(b)


def relative_error(value, target):
    """|value - target| / |target|, falling back to absolute error when target is 0."""
    value = to_real(value)
    target = to_real(target)
    if target == 0:
        return abs(value)
    return abs(value - target) / abs(target)


if mp.dps < PrecisionConfig.from_env().digits:
    mp.dps = PrecisionConfig.from_env().digits
