from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from ramzeta.numcore import PrecisionPolicy, bernoulli, bernoulli_list, binomial, euler_number, harmonic


def test_binomial_basics():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_bernoulli_known_values():
    expected = [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0,
                Fraction(-1, 30), 0, Fraction(5, 66), 0, Fraction(-691, 2730)]
    assert bernoulli_list(12) == expected
    assert bernoulli(20) == Fraction(-174611, 330)


@given(st.integers(min_value=1, max_value=60))
@settings(max_examples=30, deadline=None)
def test_bernoulli_recurrence(k):
    b = bernoulli_list(k)
    assert sum(binomial(k + 1, j) * b[j] for j in range(k + 1)) == 0


def test_euler_numbers():
    assert [euler_number(n) for n in range(0, 12, 2)] == [1, -1, 5, -61, 1385, -50521]
    with pytest.raises(ValueError, match="odd Euler index"):
        euler_number(3)


def test_euler_numbers_match_sech_series():
    # independent oracle: Taylor coefficients of sech from mpmath
    with mpmath.workdps(60):
        coeffs = mpmath.taylor(mpmath.sech, 0, 20)
        for n in range(0, 21, 2):
            assert mpmath.nint(coeffs[n] * mpmath.factorial(n)) == euler_number(n)


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(4) == Fraction(25, 12)


def test_precision_policy():
    pol = PrecisionPolicy(128)
    assert pol.working_bits(10, "coeff") == 128 + 16 + 64
    assert pol.working_bits(0, "quadrature") == 168
    assert pol.working_bits(1000, "coeff") > pol.working_bits(10, "coeff")
    with pytest.raises(ValueError):
        pol.guard_rule(1, "nope")
    with pytest.raises(ValueError):
        PrecisionPolicy(0)
