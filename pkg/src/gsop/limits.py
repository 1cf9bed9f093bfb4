"""Convergence records shared by every limit certification."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .numerics import relative_error


@dataclass(frozen=True)
class LimitReport:
    n_values: tuple
    scaled_values: tuple
    target: mpmath.mpf
    extrapolated: mpmath.mpf
    relative_errors: tuple
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (len(self.n_values) == len(self.scaled_values) == len(self.relative_errors)):
            raise ValueError("LimitReport fields must have equal lengths")

    @property
    def terminal_error(self):
        return self.relative_errors[-1]

    def monotone(self, floor=None):
        """True when the error strictly decreases along n_values.

        Errors at or below ``floor`` (default 10^(10 - digits)) count as
        converged, so an exactly attained limit is not a failure.
        """
        if floor is None:
            floor = mpmath.mpf(10) ** (10 - mpmath.mp.dps)
        errs = self.relative_errors
        return all(b < a or b <= floor for a, b in zip(errs, errs[1:]))

    def rows(self):
        return [(n, v, e) for n, v, e in zip(self.n_values, self.scaled_values, self.relative_errors)]


def richardson(n_values, values):
    """Extrapolate the last two points assuming an O(1/n) error term."""
    if len(values) < 2:
        return values[-1]
    n1, n2 = n_values[-2], n_values[-1]
    return (n2 * values[-1] - n1 * values[-2]) / (n2 - n1)


def limit_report(n_values, values, target, extrapolated=None, **extras):
    n_values = tuple(n_values)
    values = tuple(values)
    if extrapolated is None:
        extrapolated = richardson(n_values, values)
    if mpmath.isfinite(target):
        errors = tuple(relative_error(v, target) for v in values)
    else:
        errors = tuple(mpmath.nan for _ in values)
    return LimitReport(n_values, values, target, extrapolated, errors, extras)
