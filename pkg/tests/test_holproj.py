from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest

from miyawaki import published
from miyawaki.exact import PiExact, reciprocal_gamma_int
from miyawaki.holproj import (
    ContextError,
    Method,
    ProjectionContext,
    a_coefficients,
    c_coefficients,
    edge_decomposition,
    eisenstein_terms,
    f_terms,
    k_coefficients,
    projection_integral,
    quadrature_oracle,
    sturm_from_terms,
    whittaker_poly,
)

POINTS = published.CRITICAL_POINTS


def test_context_window():
    assert ProjectionContext(-8).sigma == 2
    assert ProjectionContext(9).sigma == 19
    for s in (-9, 10):
        with pytest.raises(ContextError):
            ProjectionContext(s)
    ctx = ProjectionContext(3)
    assert (ctx.r, ctx.half_pi, ctx.is_holomorphic_edge) == (6, 12, False)
    assert ProjectionContext(-8).is_holomorphic_edge and ProjectionContext(9).is_holomorphic_edge


def test_method_parse():
    assert Method.parse("Published") is Method.PUBLISHED
    assert Method.parse(Method.CORRECTED) is Method.CORRECTED
    with pytest.raises(ValueError):
        Method.parse("other")


def test_c_examples():
    row = c_coefficients(ProjectionContext(0)).as_row()
    assert row == tuple(PiExact(x) for x in (Fraction(3, 2), 0, 2, 1, Fraction(8, 3), Fraction(1, 2)))
    c1 = c_coefficients(ProjectionContext(1))
    assert c1.c0doubleprime == PiExact(Fraction(1, 4), 4)
    assert c1.c[3] == PiExact(-10, 4)
    assert c_coefficients(ProjectionContext(-8)).c[1] == PiExact(Fraction(131071, 65536), -32)


@pytest.mark.parametrize("s", POINTS)
def test_c_rows_match_printed(s):
    assert c_coefficients(ProjectionContext(s)).as_row() == published.c_row(s)


@pytest.mark.parametrize("s", POINTS)
def test_common_pi_power(s):
    ctx = ProjectionContext(s)
    for method in Method:
        row = c_coefficients(ctx, method).as_row()
        assert {v.half_pi for v in row if not v.is_zero()} <= {4 * s}
        assert {v.half_pi for v in a_coefficients(ctx, method) if not v.is_zero()} == {4 * s}


@pytest.mark.parametrize("s", POINTS)
def test_corrected_c0prime_rule(s):
    ctx = ProjectionContext(s)
    pub = c_coefficients(ctx, Method.PUBLISHED)
    cor = c_coefficients(ctx, Method.CORRECTED)
    assert pub.c == cor.c and pub.c0doubleprime == cor.c0doubleprime
    if s <= 0:
        assert cor.c0prime == pub.c0prime / 2
    elif s == 1:
        # the zeta(1) pole meets a Gamma pole; the limit is (-1)^8 8!/2 times 2/Gamma(10)
        assert pub.c0prime == 0
        assert cor.c0prime == PiExact(Fraction(factorial(8), factorial(9)) * -1, 4)
    else:
        assert cor.c0prime == pub.c0prime == 0


def test_whittaker_examples():
    assert whittaker_poly(5, 0) == [1]
    assert whittaker_poly(3, 1) == [1, -2]
    assert whittaker_poly(2, 2) == [1, -2, 0]


@pytest.mark.parametrize("s", POINTS)
def test_vanishing_rule(s):
    ctx = ProjectionContext(s)
    cset = c_coefficients(ctx)
    terms = eisenstein_terms(1, ctx, cset, keep_zero=True)
    for i, t in enumerate(terms):
        if ctx.sigma - 1 - i <= 0:
            assert t.coeff.is_zero()
    nonzero = [t for t in eisenstein_terms(1, ctx, cset)]
    assert len(nonzero) == min(ctx.r + 1, ctx.sigma - 1)


def test_f_term_count_at_left_edge():
    ctx = ProjectionContext(-8)
    whittaker_nonzero = sum(1 for c in whittaker_poly(ctx.sigma - 1, ctx.r) if c)
    assert len(f_terms(1, ctx)) == whittaker_nonzero + 2


def test_projection_integral_structure():
    ctx = ProjectionContext(0)
    k, sig, r = 20, ctx.sigma, ctx.r
    unit = c_coefficients(ctx)
    got = projection_integral(2, 0, ctx, unit)
    want = (unit.c0prime * (factorial(k - sig) * 2 ** (sig - 2)) + unit.c0doubleprime * (factorial(sig - 1) * 2**r)) * Fraction(
        1, factorial(k - 2)
    )
    assert got == want
    got = projection_integral(3, 2, ctx, unit)
    total = sum(
        Fraction(3, 2) ** i * (-1) ** i * comb(r, i) * factorial(k - 2 - i) * reciprocal_gamma_int(sig - 1 - i)
        for i in range(r + 1)
    )
    assert got == unit.c[1] * (2**r * total / factorial(k - 2))
    with pytest.raises(ValueError):
        projection_integral(2, 3, ctx, unit)


def _transcribed_a(ctx, cset):
    """The four closed forms written out term by term."""
    k, sig, r = ctx.k, ctx.sigma, ctx.r
    c0p, c0pp = cset.c0prime, cset.c0doubleprime
    c1, c2, c3, c4 = cset.c
    kf = factorial(k - 2)

    def S(x):
        return sum(
            Fraction(x) ** i * (-1) ** i * comb(r, i) * factorial(k - 2 - i) * reciprocal_gamma_int(sig - 1 - i)
            for i in range(r + 1)
        )

    g1, g2 = factorial(k - sig), factorial(sig - 1)
    a1 = c0p * g1 + c0pp * g2 + c1 * (S(1) / 24)
    a2 = c0p * (g1 * Fraction(2) ** (sig - 2)) + c0pp * (g2 * 2**r) + c1 * S(2) + c2 * (2**r * S(1) / 24)
    a3 = (
        c0p * (g1 * 4 * Fraction(3) ** (sig - 2))
        + c0pp * (g2 * 4 * 3**r)
        + c1 * S(3)
        + c2 * (2**r * S(Fraction(3, 2)))
        + c3 * (3**r * S(1) / 24)
    )
    a4 = (
        c0p * (g1 * Fraction(2) ** (2 * sig - 4))
        + c0pp * (g2 * 2 ** (2 * r))
        + c1 * (4 * S(4))
        + c2 * (2**r * S(2))
        + c3 * (3**r * S(Fraction(4, 3)))
        + c4 * (2 ** (2 * r) * S(1) / 24)
    )
    return tuple(a * Fraction(1, kf) for a in (a1, a2, a3, a4))


@pytest.mark.parametrize("s", POINTS)
@pytest.mark.parametrize("method", list(Method))
def test_convolution_equals_transcribed_formulas(s, method):
    ctx = ProjectionContext(s)
    assert a_coefficients(ctx, method) == _transcribed_a(ctx, c_coefficients(ctx, method))


def test_a_examples():
    assert a_coefficients(ProjectionContext(-6))[0] == PiExact(Fraction(71, 1224), -24)
    assert a_coefficients(ProjectionContext(0))[1] == PiExact(Fraction(23, 49008960))
    assert a_coefficients(ProjectionContext(9))[3] == PiExact(Fraction(-7037087527, 2134124568576000), 36)


@pytest.mark.parametrize("s", POINTS)
def test_a_rows_match_printed(s):
    assert a_coefficients(ProjectionContext(s)) == published.a_row(s)


@pytest.mark.parametrize("s", POINTS)
def test_sturm_from_terms_agrees(s):
    ctx = ProjectionContext(s)
    a = a_coefficients(ctx)
    for m in range(1, 5):
        assert sturm_from_terms(m, f_terms(m, ctx)) == a[m - 1]


def test_k_examples():
    assert k_coefficients(ProjectionContext(-4))[1] == PiExact(Fraction(156430715, 175550976), -16)
    assert k_coefficients(ProjectionContext(5))[1] == PiExact(Fraction(-1672, 55749637125), 20)
    assert k_coefficients(ProjectionContext(9))[0] == PiExact(Fraction(8127882069959, 9794709827950215168000), 36)


@pytest.mark.parametrize("s", POINTS)
def test_k_rows_match_printed(s):
    assert k_coefficients(ProjectionContext(s))[:2] == published.k_row(s)


@pytest.mark.parametrize("m, s", [(1, 0), (4, 9), (2, -8), (3, 1)])
def test_quadrature_examples(m, s):
    ctx = ProjectionContext(s)
    exact = a_coefficients(ctx)[m - 1].to_mpf()
    num = quadrature_oracle(m, ctx)
    assert abs(num / exact - 1) < 1e-9


@pytest.mark.parametrize("s", [-8, 9])
def test_edge_decomposition_is_exact(s):
    ctx = ProjectionContext(s)
    parts = edge_decomposition(ctx)
    assert set(parts) == {"g20(z)", "g20(2z)", "h1", "h2", "E20(z)", "E20(2z)"}
    # F is not cuspidal at the edges, so the Eisenstein part is nonzero
    assert not (parts["E20(z)"].is_zero() and parts["E20(2z)"].is_zero())
    assert k_coefficients(ctx, Method.CORRECTED) == tuple(parts[x] for x in ("g20(z)", "g20(2z)", "h1", "h2"))


def test_edge_requires_holomorphic_f():
    with pytest.raises(ContextError):
        edge_decomposition(ProjectionContext(0))


@pytest.mark.parametrize("s", [3, 5, 7])
def test_methods_agree_away_from_poles(s):
    ctx = ProjectionContext(s)
    assert k_coefficients(ctx, Method.PUBLISHED) == k_coefficients(ctx, Method.CORRECTED)


def test_quadrature_precision_independent():
    ctx = ProjectionContext(-2)
    with mpmath.workdps(15):
        low = quadrature_oracle(3, ctx, dps=30)
    high = quadrature_oracle(3, ctx, dps=50)
    assert abs(low / high - 1) < 1e-20
