from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from gsop import numerics
from gsop.errors import DomainError, ParameterError
from gsop.numerics import PrecisionConfig, gamma, gamma_ratio, pochhammer, relative_error, to_real


def test_gamma_examples():
    assert gamma(1) == 1
    assert relative_error(gamma(mpmath.mpf(1) / 2), mpmath.sqrt(mpmath.pi)) < mpmath.mpf(10) ** -58
    assert gamma(5) == 24


@pytest.mark.parametrize("x", [0, -1, "-5/2"])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma(x)


def test_pochhammer_examples():
    assert pochhammer(mpmath.mpf("0.3"), 0) == 1
    assert pochhammer(3, 2) == 12
    assert pochhammer(-2, 3) == 0


@settings(max_examples=40, deadline=None)
@given(num=st.integers(-40, 80), den=st.integers(1, 9), k=st.integers(1, 50))
def test_pochhammer_recursion(num, den, k):
    a = to_real(f"{num}/{den}")
    lhs = pochhammer(a, k)
    rhs = pochhammer(a, k - 1) * (a + k - 1)
    assert relative_error(lhs, rhs) <= mpmath.mpf(10) ** (4 - mpmath.mp.dps)


def test_gamma_functional_equation():
    for t in range(1, 201):
        x = mpmath.mpf(t) / 4
        assert relative_error(gamma(x + 1), x * gamma(x)) <= mpmath.mpf(10) ** (4 - mpmath.mp.dps)


def test_gamma_ratio_matches_quotient():
    for a, b in [("7/10", "27/10"), ("1/2", "9/2"), ("3", "1/3")]:
        a, b = to_real(a), to_real(b)
        assert relative_error(gamma_ratio(a, b), gamma(a) / gamma(b)) < mpmath.mpf(10) ** -55


def test_to_real_parses_rationals_exactly():
    with mpmath.workdps(100):
        v = to_real("1/3")
        assert abs(v - mpmath.mpf(1) / 3) < mpmath.mpf(10) ** -99
    assert to_real(Fraction(3, 4)) == mpmath.mpf("0.75")
    assert to_real(2) == 2
    with pytest.raises(ValueError):
        to_real("abc")


def test_relative_error_absolute_fallback():
    assert relative_error(mpmath.mpf("1e-70"), 0) == mpmath.mpf("1e-70")
    assert relative_error(2, 4) == mpmath.mpf("0.5")


def test_precision_config(monkeypatch):
    monkeypatch.delenv(numerics.ENV_VAR, raising=False)
    assert PrecisionConfig.from_env().digits == 60
    monkeypatch.setenv(numerics.ENV_VAR, "90")
    assert PrecisionConfig.from_env().digits == 90
    assert PrecisionConfig.from_env(40).digits == 40
    monkeypatch.setenv(numerics.ENV_VAR, "lots")
    with pytest.raises(ParameterError):
        PrecisionConfig.from_env()
    with pytest.raises(ParameterError):
        PrecisionConfig(5)


def test_working_precision_restores():
    before = mpmath.mp.dps
    with numerics.working_precision(PrecisionConfig(120)):
        assert mpmath.mp.dps == 120
    assert mpmath.mp.dps == before
