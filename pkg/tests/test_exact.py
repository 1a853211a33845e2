from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miyawaki.exact import (
    PI,
    IrrationalOddZetaError,
    PiExact,
    PiExponentMismatch,
    PoleError,
    bernoulli,
    factor_rational,
    gamma_exact,
    gamma_ratio_int,
    partial_zeta_exact,
    reciprocal_gamma_int,
    render_pi_exact,
    zeta_exact,
)

half_integers = st.integers(min_value=-80, max_value=80).map(lambda n: Fraction(2 * n + 1, 2))
nonzero_rationals = st.fractions(max_denominator=10**6).filter(lambda q: q != 0)


def test_bernoulli_small():
    assert [bernoulli(n) for n in range(9)] == [
        1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0, Fraction(-1, 30)
    ]
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_negative_index():
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_gamma_values():
    assert gamma_exact(5) == 24
    assert gamma_exact(Fraction(1, 2)) == PiExact(1, 1)
    assert gamma_exact(Fraction(-1, 2)) == PiExact(-2, 1)
    assert gamma_exact(Fraction(5, 2)) == PiExact(Fraction(3, 4), 1)


@pytest.mark.parametrize("n", [0, -1, -7])
def test_gamma_poles(n):
    with pytest.raises(PoleError):
        gamma_exact(n)


def test_gamma_rejects_quarter():
    with pytest.raises(ValueError):
        gamma_exact(Fraction(1, 4))


@settings(max_examples=200)
@given(half_integers)
def test_gamma_recurrence_half_integers(x):
    assert gamma_exact(x + 1) == gamma_exact(x) * x


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=150))
def test_gamma_recurrence_integers(n):
    assert gamma_exact(n + 1) == gamma_exact(n) * n


@given(half_integers)
def test_gamma_matches_mpmath(x):
    with mpmath.workdps(30):
        assert mpmath.almosteq(gamma_exact(x).to_mpf(), mpmath.gamma(mpmath.mpf(x.numerator) / 2), 1e-25)


def test_reciprocal_gamma_zero_at_poles():
    assert reciprocal_gamma_int(0) == 0
    assert reciprocal_gamma_int(-3) == 0
    assert reciprocal_gamma_int(4) == Fraction(1, 6)


def test_gamma_ratio_residues():
    # Res Gamma(-m) = (-1)^m/m!, ratio taken at equal rates
    assert gamma_ratio_int(-1, -3) == Fraction(factorial(3), factorial(1))
    assert gamma_ratio_int(-2, -3) == -Fraction(factorial(3), factorial(2))
    assert gamma_ratio_int(0, -2) == Fraction(2)
    assert gamma_ratio_int(4, -2) == 0
    with pytest.raises(PoleError):
        gamma_ratio_int(-2, 3)


def test_zeta_even():
    assert zeta_exact(2) == PiExact(Fraction(1, 6), 4)
    assert zeta_exact(4) == PiExact(Fraction(1, 90), 8)
    assert zeta_exact(12) == PiExact(Fraction(691, 638512875), 24)


def test_zeta_zero_and_negatives():
    assert zeta_exact(0) == Fraction(-1, 2)
    assert zeta_exact(-1) == Fraction(-1, 12)
    assert zeta_exact(-2) == 0
    assert zeta_exact(-11) == Fraction(691, 32760)


@pytest.mark.parametrize("n", range(1, 61))
def test_zeta_one_minus_n(n):
    assert zeta_exact(1 - n) == (Fraction(-1, 2) if n == 1 else -bernoulli(n) / n)


def test_zeta_errors():
    with pytest.raises(PoleError):
        zeta_exact(1)
    with pytest.raises(IrrationalOddZetaError):
        zeta_exact(3)


@pytest.mark.parametrize("n", [2, 6, 10, 20, 40])
def test_zeta_even_numeric(n):
    with mpmath.workdps(40):
        assert mpmath.almosteq(zeta_exact(n).to_mpf(), mpmath.zeta(n), 1e-35)


def test_partial_zeta():
    z = zeta_exact(4)
    assert partial_zeta_exact(4, 0, 2) + partial_zeta_exact(4, 1, 2) == z
    assert partial_zeta_exact(4, 0, 2) == z * Fraction(1, 16)
    with pytest.raises(ValueError):
        partial_zeta_exact(4, 1, 3)


def test_piexact_algebra():
    a = PiExact(Fraction(3, 4), 6)
    b = PiExact(Fraction(-2, 5), 6)
    assert a + b == PiExact(Fraction(7, 20), 6)
    assert a * b == PiExact(Fraction(-3, 10), 12)
    assert (a / b) == Fraction(-15, 8)
    assert a**-2 == PiExact(Fraction(16, 9), -12)
    assert PI**2 == PiExact(1, 4)
    with pytest.raises(PiExponentMismatch):
        a + PiExact(1, 4)


def test_piexact_zero_absorbs_exponent():
    zero = PiExact(0, 10)
    assert zero == 0
    assert zero + PiExact(2, 4) == PiExact(2, 4)
    assert hash(zero) == hash(PiExact(0, 2))
    with pytest.raises(ZeroDivisionError):
        PiExact(1) / zero


@given(nonzero_rationals, st.integers(-20, 20), nonzero_rationals, st.integers(-20, 20))
def test_piexact_mul_div_inverse(p, e, q, f):
    x, y = PiExact(p, e), PiExact(q, f)
    assert (x * y) / y == x
    assert x * y == y * x


def test_to_mpf_half_powers():
    with mpmath.workdps(30):
        assert mpmath.almosteq(PiExact(2, 3).to_mpf(), 2 * mpmath.pi**1.5, 1e-25)
        assert mpmath.almosteq(PiExact(1, -4).to_mpf(), mpmath.pi**-2, 1e-25)
    assert float(PiExact(1, 2)) == pytest.approx(3.141592653589793, rel=1e-15)


@settings(max_examples=1000)
@given(nonzero_rationals)
def test_factor_round_trip(q):
    f = factor_rational(q)
    assert f.value() == q
    assert all(e != 0 for _, e in f.factors)
    assert [p for p, _ in f.factors] == sorted(p for p, _ in f.factors)


def test_factor_render():
    assert factor_rational(Fraction(6577222320128, 68677875)).render() == "2^24·392033/(3^5·5^3·7·17·19)"
    assert factor_rational(Fraction(-1, 12)).render() == "-1/(2^2·3)"
    assert factor_rational(Fraction(1, 2)).render() == "1/2"
    assert factor_rational(7).render() == "7"
    with pytest.raises(ValueError):
        factor_rational(0)


def test_render_pi_exact():
    assert render_pi_exact(PiExact(Fraction(-1, 6), 4)) == "-1/(2·3)·pi^2"
    assert render_pi_exact(PiExact(0, 4)) == "0"
