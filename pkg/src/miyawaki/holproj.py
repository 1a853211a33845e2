"""Holomorphic projection of G_{2,2}(z) (4 pi y)^(sigma+1-k) E_{k-2,2}(z, sigma+1-k, xi).

For each Rankin argument sigma = s + 10 this module produces the Eisenstein
Fourier constants C, the projection coefficients A_1..A_4 and the coordinates
K_1..K_4 of the projection in the basis g20(z), g20(2z), h1, h2 of
S_20(Gamma_0(2)).

Two evaluation rules are supported (:class:`Method`):

``PUBLISHED``
    Gamma(2 sigma - k - 1)/Gamma(sigma + 1 - k) at a double pole is read as the
    ratio of residues taken at equal rates, C'_0 is set to zero when
    2 sigma - k - 1 = 1, and the four Sturm coefficients are always matched
    against the cusp basis.  This reproduces the published C/A/K tables.

``CORRECTED``
    The Eisenstein parameter moves both Gamma arguments at rates 2 : 1, so the
    residue ratio carries a factor 1/2 and the zeta(1) pole at sigma = k/2 + 1
    gives a finite C'_0.  At sigma = 2 and sigma = k - 1 the function F is a
    holomorphic but non-cuspidal form; its Eisenstein part is split off in
    M_20(Gamma_0(2)) before reading off K.  These values agree with
    independent numerical L-values at every critical point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath

from miyawaki.exact import (
    PiExact,
    gamma_ratio_int,
    reciprocal_gamma_int,
    zeta_exact,
)
from miyawaki.level2 import (
    FULL_LABELS,
    decompose_weight20_level2,
    solve_projection_coefficients,
)
from miyawaki.qexp import QExpansion, g2_level

WEIGHT = 20
N_COEFFS = 4


class Method(enum.Enum):
    PUBLISHED = "published"
    CORRECTED = "corrected"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class ContextError(ValueError):
    pass


class QuadratureError(ArithmeticError):
    pass


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class ProjectionContext:
    """Critical point s of the standard L-function and its Rankin argument sigma = s + 10."""

    s: int
    k: int = WEIGHT

    def __post_init__(self):
        if not (self.sigma - (self.k - 1) <= 0 and self.sigma - 1 > 0):
            raise ContextError(f"sigma = {self.sigma} outside 2 <= sigma <= {self.k - 1}")

    @property
    def sigma(self) -> int:
        return self.s + self.k // 2

    @property
    def r(self) -> int:
        """Degree of the Whittaker polynomial, k - 1 - sigma."""
        return self.k - 1 - self.sigma

    @property
    def half_pi(self) -> int:
        return 2 * (2 * self.sigma - self.k)

    @property
    def is_holomorphic_edge(self) -> bool:
        return self.sigma in (2, self.k - 1)


@dataclass(frozen=True)
class CoefficientSet:
    c0prime: PiExact
    c0doubleprime: PiExact
    c: tuple[PiExact, ...]

    def as_row(self) -> tuple[PiExact, ...]:
        return (self.c0prime, self.c0doubleprime) + self.c


def _c0prime_limit(ctx: ProjectionContext, method: Method) -> Fraction:
    """Gamma(2sigma-k-1) zeta(2sigma-k-1) / Gamma(sigma+1-k), read at the poles."""
    x = 2 * ctx.sigma - ctx.k - 1
    y = ctx.sigma + 1 - ctx.k
    if y >= 1:
        return Fraction(factorial(x - 1)) * zeta_exact(x).coeff / factorial(y - 1)
    n = -y
    if x >= 2:
        return Fraction(0)
    if x == 1:
        # zeta(1 + 2e) Gamma(1 + 2e) / Gamma(-n + e) -> (-1)^n n! / 2
        if method is Method.PUBLISHED:
            return Fraction(0)
        return Fraction(_sign(n) * factorial(n), 2)
    ratio = gamma_ratio_int(x, y)
    if method is Method.CORRECTED:
        ratio /= 2
    return ratio * zeta_exact(x).coeff


def eisenstein_divisor_sum(n: int, exponent: int) -> Fraction:
    """sum over d | n of (-1)^(d+1) d^exponent."""
    return sum(
        (_sign(d + 1) * Fraction(d) ** exponent for d in range(1, n + 1) if n % d == 0),
        Fraction(0),
    )


def c_coefficients(ctx: ProjectionContext, method=Method.PUBLISHED, n_max: int = N_COEFFS) -> CoefficientSet:
    method = Method.parse(method)
    k, sig, hp = ctx.k, ctx.sigma, ctx.half_pi
    c0p = _sign(1 - k // 2) * 2 * _c0prime_limit(ctx, method) * reciprocal_gamma_int(sig - 1)
    z = zeta_exact(2 * sig - k)
    c0pp = z * (2 * (1 - Fraction(2) ** (k - 2 * sig)))
    if c0pp.is_zero():
        c0pp = PiExact(Fraction(0), hp)
    cs = tuple(
        PiExact(_sign(k // 2) * 2 * eisenstein_divisor_sum(n, 2 * sig - k - 1), hp)
        for n in range(1, n_max + 1)
    )
    return CoefficientSet(PiExact(c0p, hp), c0pp, cs)


def whittaker_poly(alpha: int, r: int) -> list[Fraction]:
    """Coefficients of W(y, alpha, -r) by descending power: entry i multiplies y^(r-i)."""
    out = []
    for i in range(r + 1):
        falling = 1
        for j in range(1, i + 1):
            falling *= alpha - j
        out.append(Fraction(_sign(i) * comb(r, i) * falling))
    return out


@lru_cache(maxsize=1)
def _g22_coeffs() -> tuple[Fraction, ...]:
    return g2_level(2, 64).coeffs


def projection_integral(m: int, d: int, ctx: ProjectionContext, cset: CoefficientSet) -> PiExact:
    """Sturm integral of the q^d Eisenstein term against e^(-4 pi m y), before the G_{2,2} weight."""
    if not 0 <= d <= m:
        raise ValueError("need 0 <= d <= m")
    k, sig = ctx.k, ctx.sigma
    kf = factorial(k - 2)
    if d == 0:
        first = cset.c0prime * (Fraction(factorial(k - sig)) * Fraction(m) ** (sig - 2))
        second = cset.c0doubleprime * (Fraction(factorial(sig - 1)) * Fraction(m) ** (k - 1 - sig))
        return (first + second) * Fraction(1, kf)
    r = ctx.r
    total = Fraction(0)
    for i in range(r + 1):
        total += Fraction(-m, d) ** i * comb(r, i) * factorial(k - 2 - i) * reciprocal_gamma_int(sig - 1 - i)
    return cset.c[d - 1] * (Fraction(d) ** r * total / kf)


def a_coefficients(ctx: ProjectionContext, method=Method.PUBLISHED, n_max: int = N_COEFFS) -> tuple[PiExact, ...]:
    """A_m = sum_d b(m-d) * projection_integral(m, d) with b the G_{2,2} coefficients."""
    cset = c_coefficients(ctx, method, n_max)
    b = _g22_coeffs()
    out = []
    for m in range(1, n_max + 1):
        acc = PiExact(Fraction(0), ctx.half_pi)
        for d in range(m + 1):
            acc = acc + projection_integral(m, d, ctx, cset) * b[m - d]
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# explicit y-dependence of the q^m coefficient of F


@dataclass(frozen=True)
class Term:
    """coeff * (4 pi y)^power."""

    coeff: PiExact
    power: int


def eisenstein_terms(d: int, ctx: ProjectionContext, cset: CoefficientSet, keep_zero: bool = False) -> list[Term]:
    """y-dependence of the q^d coefficient of (4 pi y)^(sigma+1-k) E_{k-2,2}."""
    sig, k = ctx.sigma, ctx.k
    if d == 0:
        return [Term(cset.c0prime, 2 - sig), Term(cset.c0doubleprime, sig + 1 - k)]
    r = ctx.r
    w = whittaker_poly(sig - 1, r)
    out = []
    for i in range(r + 1):
        # W(4 pi d y)/Gamma(sig-1) * (4 pi y)^(-r) contributes d^(r-i) (4 pi y)^(-i)
        c = Fraction(_sign(i) * comb(r, i)) * reciprocal_gamma_int(sig - 1 - i) * Fraction(d) ** (r - i)
        if w[i] == 0 and c != 0:
            raise AssertionError("Whittaker coefficient and reciprocal-Gamma rule disagree")
        if c or keep_zero:
            out.append(Term(cset.c[d - 1] * c, -i))
    return out


def f_terms(m: int, ctx: ProjectionContext, method=Method.PUBLISHED) -> list[Term]:
    """The q^m coefficient of F = G_{2,2} (4 pi y)^(sigma+1-k) E as a list of y-power terms."""
    cset = c_coefficients(ctx, method, max(m, N_COEFFS))
    b = _g22_coeffs()
    out = []
    for d in range(m + 1):
        if b[m - d] == 0:
            continue
        for t in eisenstein_terms(d, ctx, cset):
            out.append(Term(t.coeff * b[m - d], t.power))
    return out


def sturm_from_terms(m: int, terms: list[Term], k: int = WEIGHT) -> PiExact:
    """Closed-form Sturm integral of sum c (4 pi y)^p: each term gives c m^(-p) Gamma(k-1+p)/(k-2)!."""
    acc = None
    for t in terms:
        v = t.coeff * (Fraction(m) ** (-t.power) * factorial(k - 2 + t.power) / factorial(k - 2))
        acc = v if acc is None else acc + v
    return acc


def quadrature_oracle(m: int, ctx: ProjectionContext, method=Method.PUBLISHED, dps: int = 40):
    """Numerical (4 pi m)^(k-1)/(k-2)! * int_0^inf A~_m(y) e^(-4 pi m y) y^(k-2) dy."""
    terms = f_terms(m, ctx, method)
    k = ctx.k
    with mpmath.workdps(dps):
        coeffs = [(t.coeff.to_mpf(), t.power) for t in terms]
        four_pi = 4 * mpmath.pi

        def integrand(y):
            fy = sum(c * (four_pi * y) ** p for c, p in coeffs)
            return fy * mpmath.exp(-four_pi * m * y) * y ** (k - 2)

        peak = mpmath.mpf(k - 2) / (four_pi * m)
        value, err = mpmath.quad(integrand, [0, peak, 4 * peak, mpmath.inf], error=True)
        pref = (four_pi * m) ** (k - 1) / mpmath.factorial(k - 2)
        scale = sum(abs(c) for c, _ in coeffs) or 1
        if err > mpmath.mpf(10) ** (-(dps // 2)) * scale / pref * 10**6:
            raise QuadratureError(f"quadrature did not converge (error estimate {err})")
        return +(value * pref)


# ---------------------------------------------------------------------------
# projection coordinates


def holomorphic_f_qexp(ctx: ProjectionContext, method=Method.CORRECTED, precision: int = 16) -> tuple[QExpansion, int]:
    """F as an exact q-expansion when it is holomorphic; returns (rational part, half_pi)."""
    method = Method.parse(method)
    cset = c_coefficients(ctx, method, precision)
    e = []
    for d in range(precision):
        terms = [t for t in eisenstein_terms(d, ctx, cset) if not t.coeff.is_zero()]
        if any(t.power != 0 for t in terms):
            raise ContextError(f"F is not holomorphic at sigma = {ctx.sigma}")
        e.append(sum((t.coeff for t in terms), PiExact(Fraction(0), ctx.half_pi)))
    coeffs = tuple(v.coeff for v in e)
    g22 = g2_level(2, precision)
    f = g22 * QExpansion(coeffs, ctx.k - 2, 2)
    return QExpansion(f.coeffs, ctx.k, 2), ctx.half_pi


def edge_decomposition(ctx: ProjectionContext, method=Method.CORRECTED, precision: int = 16) -> dict[str, PiExact]:
    """Coordinates of the holomorphic F in cusp basis plus E20(z), E20(2z)."""
    f, hp = holomorphic_f_qexp(ctx, method, precision)
    coords = decompose_weight20_level2(f, precision)
    return {label: PiExact(c, hp) for label, c in zip(FULL_LABELS, coords)}


def k_coefficients(ctx: ProjectionContext, method=Method.PUBLISHED) -> tuple[PiExact, ...]:
    """K_1..K_4 of the projection in the basis g20(z), g20(2z), h1, h2."""
    method = Method.parse(method)
    if method is Method.CORRECTED and ctx.is_holomorphic_edge:
        parts = edge_decomposition(ctx, method)
        return tuple(parts[label] for label in FULL_LABELS[:4])
    return solve_projection_coefficients(a_coefficients(ctx, method))
