from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from miyawaki.qexp import (
    PrecisionError,
    QExpansion,
    _naive_mul,
    delta_qexp,
    delta_qexp_eta,
    divisor_power_sums,
    eisenstein,
    eta_qexp,
    g2_level,
    g20_ints,
    g20_qexp,
    hecke_tp,
    is_cusp_form,
    multiplicative_extend,
    poly_mul_int,
    ramanujan_congruence_holds,
    u_operator,
    v_operator,
)

TAU = (0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920)
G20 = (0, 1, 456, 50652, -316352, -2377410)

int_lists = st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=120)


@given(int_lists, int_lists)
def test_kronecker_matches_schoolbook(a, b):
    n = max(len(a), len(b))
    assert poly_mul_int(a, b, n) == _naive_mul(a, b, n)


def test_kronecker_long_inputs():
    a = [(-1) ** i * (i * 7919 + 3) ** 5 for i in range(400)]
    b = [(i * 104729 - 11) ** 3 for i in range(400)]
    assert poly_mul_int(a, b, 400) == _naive_mul(a, b, 400)


def test_divisor_power_sums():
    assert divisor_power_sums(1, 7) == [0, 1, 3, 4, 7, 6, 12]
    assert divisor_power_sums(3, 5)[4] == 1 + 8 + 64


def test_delta_first_coefficients():
    assert delta_qexp(11).coeffs == tuple(Fraction(x) for x in TAU)


def test_delta_two_constructions_agree():
    assert delta_qexp(2048).coeffs == delta_qexp_eta(2048).coeffs


def test_ramanujan_congruence():
    assert ramanujan_congruence_holds(2000)


def test_eta_pentagonal():
    assert eta_qexp(13).coeffs == tuple(Fraction(x) for x in (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1))


def test_eisenstein_normalization():
    assert eisenstein(4, 4).coeffs == (1, 240, 2160, 6720)
    assert eisenstein(6, 3).coeffs == (1, -504, -16632)
    with pytest.raises(ValueError):
        eisenstein(2)


def test_e4_squared_is_e8():
    assert (eisenstein(4, 200) ** 2).coeffs == eisenstein(8, 200).coeffs


def test_g20_first_coefficients():
    assert tuple(g20_ints(6)) == G20
    g = g20_qexp(64)
    assert g.weight == 20 and g.level == 1 and is_cusp_form(g)


def test_g20_multiplicative_extension():
    n = 10_000
    g = g20_ints(n + 1)
    primes = lambda p: g[p]
    assert multiplicative_extend(primes, 20, n).values == tuple(g[1:])


def test_delta_multiplicative_extension():
    tau = delta_qexp(1001)
    ext = multiplicative_extend({p: int(tau[p]) for p in range(2, 1001)}, 12, 1000)
    assert ext.values == tuple(int(x) for x in tau.coeffs[1:])


@pytest.mark.parametrize("p, eigenvalue", [(2, -24), (3, 252), (5, 4830), (7, -16744)])
def test_delta_hecke_eigenvalues(p, eigenvalue):
    delta = delta_qexp(400)
    t = hecke_tp(delta, p)
    assert t.coeffs == delta.truncate(t.precision).scale(eigenvalue).coeffs


@pytest.mark.parametrize("p", [2, 3])
def test_g20_hecke_eigenvalues(p):
    g = g20_qexp(300)
    t = hecke_tp(g, p)
    assert t.coeffs == g.truncate(t.precision).scale(g[p]).coeffs


def test_hecke_precision_guard():
    with pytest.raises(PrecisionError):
        hecke_tp(delta_qexp(20), 3, precision=10)
    with pytest.raises(ValueError):
        hecke_tp(g2_level(2, 20), 3)


@given(st.integers(1, 6))
def test_u_after_v_is_identity(m):
    f = g20_qexp(30)
    assert u_operator(v_operator(f, m), m).coeffs == f.coeffs


def test_v_operator_level_and_shape():
    f = v_operator(delta_qexp(5), 2)
    assert f.level == 2
    assert f.coeffs == tuple(Fraction(x) for x in (0, 0, 1, 0, -24, 0, 252, 0, -1472))


def test_g2_level_two():
    g = g2_level(2, 8)
    assert g.coeffs == (Fraction(1, 24), 1, 1, 4, 1, 6, 4, 8)
    assert g.weight == 2 and g.level == 2


def test_g2_level_dirichlet_series_at_6():
    # sum over odd d | n of d has L-series zeta(s) zeta(s-1) (1 - 2^(1-s))
    n = 20_000
    g = g2_level(2, n + 1)
    with mpmath.workdps(30):
        partial = mpmath.fsum(mpmath.mpf(int(g[k])) / mpmath.mpf(k) ** 6 for k in range(1, n + 1))
        exact = mpmath.zeta(6) * mpmath.zeta(5) * (1 - mpmath.mpf(2) ** -5)
        # sigma(k) <= k (1 + log k); the tail is below the integral of (1 + log x) x^(-5) from n
        tail = ((1 + mpmath.log(n)) / 4 + mpmath.mpf(1) / 16) / mpmath.mpf(n) ** 4
        assert abs(partial - exact) <= tail


def test_qexpansion_arithmetic():
    f = QExpansion.from_ints([1, 2, 3])
    g = QExpansion.from_ints([0, 1, -1, 5])
    assert (f + g).coeffs == (1, 3, 2)
    assert (f - g).coeffs == (1, 1, 4)
    assert (f * g).coeffs == (0, 1, 1)
    assert (f * Fraction(1, 2)).coeffs == (Fraction(1, 2), 1, Fraction(3, 2))
    assert (f**0).coeffs == (1, 0, 0)
    assert f.valuation() == 0 and g.valuation() == 1
    with pytest.raises(PrecisionError):
        f[3]
    with pytest.raises(PrecisionError):
        f.truncate(5)
    with pytest.raises(ValueError):
        QExpansion(())


def test_rational_product_denominators():
    f = QExpansion((Fraction(1, 3), Fraction(1, 2)))
    assert (f * f).coeffs == (Fraction(1, 9), Fraction(1, 3))
