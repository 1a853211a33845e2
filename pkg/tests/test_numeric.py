from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miyawaki.assemble import SYM2_FIXTURES
from miyawaki.exact import PiExact
from miyawaki.numeric import (
    EulerFactorPair,
    InvalidNormParameters,
    NumericValue,
    _incomplete_gamma_int,
    completed_l_level1,
    dirichlet_l_value,
    euler_convolution_check,
    g20_g22_coefficient_check,
    g20_g22_identity,
    rankin_lemma_sides,
    l_value_level1,
    main_numeric_product,
    norm_delta,
    norm_g20,
    peterson_norm,
    sym2_gamma_factor,
    sym2_numeric_at,
    sym_square_numeric,
)
from miyawaki.qexp import _primes_upto

# <Delta, Delta> as tabulated in the literature (Zagier; LMFDB), 20 significant digits
DELTA_NORM_REFERENCE = mpmath.mpf("1.0353620568043209223e-6")


def _within(a: NumericValue, b: NumericValue) -> bool:
    return abs(a.value - b.value) <= a.error_bound + b.error_bound


def test_numeric_value_propagation():
    a = NumericValue(mpmath.mpf(2), mpmath.mpf("1e-10"))
    b = NumericValue(mpmath.mpf(3), mpmath.mpf("2e-10"))
    p = a * b
    assert p.value == 6 and p.error_bound >= mpmath.mpf("7e-10")
    q = a / b
    with mpmath.workdps(40):
        assert abs(q.value - mpmath.mpf(2) / 3) < 1e-30 and q.error_bound > 0
    assert (a * Fraction(1, 2)).value == 1
    assert float(-a) == -2.0
    with pytest.raises(ZeroDivisionError):
        a / NumericValue(mpmath.mpf("1e-12"), mpmath.mpf("1e-11"))


def test_euler_factor_pair():
    pair = EulerFactorPair.from_coefficient(2, 456, 20)
    assert pair.check(456, 20)
    assert abs(abs(pair.alpha) - mpmath.mpf(2) ** 9.5) < 1e-10 * 2**9.5


@pytest.mark.parametrize("a", [1, 5, 19])
def test_incomplete_gamma(a):
    with mpmath.workdps(30):
        x = mpmath.mpf("7.3")
        assert mpmath.almosteq(_incomplete_gamma_int(a, x), mpmath.gammainc(a, x), 1e-25)


@pytest.mark.parametrize("form, w", [("g20", 19), ("g20", 18), ("g20", 16), ("delta", 11), ("delta", 10)])
def test_afe_matches_dirichlet_series(form, w):
    afe = l_value_level1(form, w)
    direct = dirichlet_l_value(form, w, n_terms=20_000)
    assert _within(afe, direct)
    assert direct.error_bound < 1e-12 * abs(direct.value)


@pytest.mark.parametrize("form, k", [("g20", 20), ("delta", 12)])
def test_completed_l_functional_equation(form, k):
    for w in range(1, k // 2):
        assert _within(completed_l_level1(form, w), completed_l_level1(form, k - w))


def test_afe_rejects_outside_strip():
    with pytest.raises(ValueError):
        completed_l_level1("g20", 20)
    with pytest.raises(ValueError):
        l_value_level1("nope", 3)


def test_central_value_positive():
    v = l_value_level1("g20", 10)
    assert v.value - v.error_bound > 0


def test_norm_delta_literature_value():
    v = norm_delta()
    assert abs(v.value / DELTA_NORM_REFERENCE - 1) < 1e-18


def test_norm_g20_mutual_agreement():
    vals = [peterson_norm(20, l) for l in (12, 14, 16)]
    for v in vals[1:]:
        assert abs(v.value / vals[0].value - 1) < 1e-25
    assert norm_g20().value == vals[0].value


def test_norm_rejects_inadmissible_l():
    # only l = 8 is admissible for k = 12
    with pytest.raises(InvalidNormParameters):
        peterson_norm(12, 10)
    with pytest.raises(InvalidNormParameters):
        peterson_norm(20, 13)
    with pytest.raises(InvalidNormParameters):
        peterson_norm(16, 10)


@pytest.mark.parametrize("a", sorted(x for x in SYM2_FIXTURES if x >= 14))
def test_sym_square_fixtures_against_dirichlet(a):
    exact = norm_delta() * SYM2_FIXTURES[a]
    num = sym_square_numeric(a)
    assert _within(exact, num)
    assert num.relative_error < 1e-6


def test_sym2_transport_route():
    v, route = sym2_numeric_at(9)
    assert route == "transport"
    direct, route = sym2_numeric_at(14)
    assert route == "dirichlet"
    ratio = sym2_gamma_factor(14) / sym2_gamma_factor(9)
    assert v.value == (direct * ratio).value
    with pytest.raises(ValueError):
        sym2_numeric_at(12)
    with pytest.raises(ValueError):
        sym_square_numeric(13)


def test_sym2_gamma_factor_values():
    assert sym2_gamma_factor(14) == PiExact(Fraction(6227020800, 2**14), -42)
    # Gamma(1/2) supplies the half power at odd arguments
    assert sym2_gamma_factor(11) == PiExact(Fraction(3628800, 2**11), -32)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_rankin_lemma_random_satake(seed):
    import random

    rng = random.Random(seed)
    satake = {p: tuple(rng.randint(-4, 4) for _ in range(4)) for p in _primes_upto(60)}
    lhs, rhs = rankin_lemma_sides(satake, 60)
    assert lhs == rhs


def test_rankin_lemma_fixed_satake_nontrivial():
    satake = {p: (1, 2, 3, 1) for p in _primes_upto(30)}
    lhs, rhs = rankin_lemma_sides(satake, 30)
    assert lhs == rhs
    assert lhs[4] != 0


def test_g20_g22_coefficients():
    assert g20_g22_coefficient_check(200)


def test_g20_g22_identity_at_19():
    lhs, rhs = g20_g22_identity(19)
    assert _within(lhs, rhs)


def test_euler_convolution_report():
    rep = euler_convolution_check(trials=5, n_max=100)
    assert rep.passed and rep.trials == 5 and not rep.failures


def test_main_numeric_product_routes():
    assert main_numeric_product(0).route == "g20-only"
    assert main_numeric_product(0).total is None
    est = main_numeric_product(5)
    assert est.route == "dirichlet" and est.total.relative_error < 1e-6
    assert main_numeric_product(-4).route == "transport"
