"""Independent floating-point evaluation of the L-values behind the exact tables.

Everything here avoids the holomorphic-projection pipeline: L-values of Delta
and g20 come from the approximate functional equation with closed-form
incomplete gammas, symmetric-square values from Dirichlet sums, and Petersson
norms from Rankin's formula.  Each result carries an explicit error bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import mpmath

from miyawaki.exact import PiExact, bernoulli, gamma_exact, zeta_exact
from miyawaki.qexp import _delta_ints, _primes_upto, g20_ints, g2_level

DEFAULT_DPS = 30
FORMS = {"delta": 12, "g20": 20}


class TailBoundError(ArithmeticError):
    pass


class InvalidNormParameters(ValueError):
    pass


@dataclass(frozen=True)
class NumericValue:
    """A floating value with an absolute error bound."""

    value: mpmath.mpf
    error_bound: mpmath.mpf

    @property
    def relative_error(self):
        return abs(self.error_bound / self.value) if self.value else mpmath.inf

    def __mul__(self, other):
        with _working():
            if not isinstance(other, NumericValue):
                c = _to_mpf(other)
                v = self.value * c
                return NumericValue(v, abs(c) * self.error_bound + _ulp_slack(v))
            v = self.value * other.value
            e = abs(self.value) * other.error_bound + abs(other.value) * self.error_bound
            return NumericValue(v, e + self.error_bound * other.error_bound + _ulp_slack(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        with _working():
            if not isinstance(other, NumericValue):
                c = _to_mpf(other)
                v = self.value / c
                return NumericValue(v, self.error_bound / abs(c) + _ulp_slack(v))
            if abs(other.value) <= other.error_bound:
                raise ZeroDivisionError("divisor interval contains zero")
            v = self.value / other.value
            lo = abs(other.value) - other.error_bound
            e = (self.error_bound + abs(v) * other.error_bound) / lo
            return NumericValue(v, e + _ulp_slack(v))

    def __neg__(self):
        return NumericValue(-self.value, self.error_bound)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"NumericValue({mpmath.nstr(self.value, 20)} +- {mpmath.nstr(self.error_bound, 3)})"


def _working():
    """Arithmetic context at least as fine as the default working precision."""
    return mpmath.workdps(max(mpmath.mp.dps, DEFAULT_DPS + 10))


def _to_mpf(x):
    if isinstance(x, PiExact):
        return x.to_mpf()
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _ulp_slack(value):
    return abs(value) * mpmath.mpf(2) ** (-mpmath.mp.prec + 8)


@dataclass(frozen=True)
class EulerFactorPair:
    """Roots of 1 - a(p) X + p^(k-1) X^2, as a conjugate pair or two reals."""

    p: int
    alpha: complex
    alpha_prime: complex

    @classmethod
    def from_coefficient(cls, p: int, ap: int, k: int) -> "EulerFactorPair":
        disc = mpmath.mpf(ap) ** 2 - 4 * mpmath.mpf(p) ** (k - 1)
        root = mpmath.sqrt(mpmath.mpc(disc))
        return cls(p, (ap + root) / 2, (ap - root) / 2)

    def check(self, ap: int, k: int, tol=None) -> bool:
        tol = tol or mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
        prod = self.alpha * self.alpha_prime
        tot = self.alpha + self.alpha_prime
        scale = mpmath.mpf(self.p) ** (k - 1)
        return abs(prod - scale) <= tol * scale and abs(tot - ap) <= tol * scale


# ---------------------------------------------------------------------------
# coefficient streams


@lru_cache(maxsize=4)
def level1_coefficients(form: str, n: int) -> tuple[int, ...]:
    """a(0..n-1) of Delta or g20 (computed exactly)."""
    if form == "delta":
        return tuple(_delta_ints(n))
    if form == "g20":
        return tuple(g20_ints(n))
    raise ValueError(f"unknown form {form!r}")


def _weight(form: str) -> int:
    try:
        return FORMS[form]
    except KeyError:
        raise ValueError(f"unknown form {form!r}") from None


def _incomplete_gamma_int(a: int, x):
    """Gamma(a, x) for a positive integer a: (a-1)! e^(-x) sum_{j<a} x^j/j!."""
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    for j in range(1, a):
        term = term * x / j
        total += term
    return mpmath.factorial(a - 1) * mpmath.exp(-x) * total


def _afe_term_bound(n: int, k: int):
    # |a(n)| <= d(n) n^((k-1)/2) <= 2 n^(k/2); Gamma(a, x) <= a x^(a-1) e^(-x) for x >= a - 1
    x = 2 * mpmath.pi * n
    return 2 * mpmath.mpf(n) ** (k / 2) * k * mpmath.exp(-x) / x


@lru_cache(maxsize=None)
def completed_l_level1(form: str, w: int, dps: int | None = None) -> NumericValue:
    """Lambda(w) = (2 pi)^(-w) Gamma(w) L(w) by the approximate functional equation."""
    k = _weight(form)
    if not 1 <= w <= k - 1:
        raise ValueError(f"w = {w} outside 1..{k - 1}")
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps + 10):
        target = mpmath.mpf(10) ** (-dps - 5)
        n_terms = 4
        while _afe_term_bound(n_terms + 1, k) * 2 > target:
            n_terms += 1
        a = level1_coefficients(form, n_terms + 1)
        total = mpmath.mpf(0)
        for n in range(1, n_terms + 1):
            if not a[n]:
                continue
            x = 2 * mpmath.pi * n
            term = x ** (-w) * _incomplete_gamma_int(w, x) + x ** (w - k) * _incomplete_gamma_int(k - w, x)
            total += a[n] * term
        # term ratio is below 1/2 past n = 4, so the tail is at most twice its first term
        tail = 2 * _afe_term_bound(n_terms + 1, k)
        if tail > mpmath.mpf(10) ** (-dps):
            raise TailBoundError("AFE tail bound too large")
        err = tail + _ulp_slack(total) * n_terms
        return NumericValue(+total, err)


def l_value_level1(form: str, w: int, dps: int | None = None) -> NumericValue:
    """L(w) for Delta or g20 at an integer 1 <= w <= k-1."""
    lam = completed_l_level1(form, w, dps)
    with mpmath.workdps((dps or DEFAULT_DPS) + 10):
        factor = (2 * mpmath.pi) ** w / mpmath.factorial(w - 1)
        return lam * factor


def dirichlet_l_value(form: str, w: int, n_terms: int = 100_000) -> NumericValue:
    """Direct partial sum of a(n) n^(-w) with a rigorous tail bound (w >= 14 advised)."""
    k = _weight(form)
    b = w - (k - 1) / mpmath.mpf(2)
    if b <= 1:
        raise ValueError("Dirichlet series does not converge absolutely here")
    a = level1_coefficients(form, n_terms + 1)
    with mpmath.workdps(DEFAULT_DPS):
        total = mpmath.fsum(mpmath.mpf(a[n]) / mpmath.mpf(n) ** w for n in range(1, n_terms + 1))
        # |a(n)| <= d(n) n^((k-1)/2) and sum_{n<=x} d(n) <= x(1 + log x)
        tail = _tail_integral(n_terms, b, 1)
        return NumericValue(total, tail + _ulp_slack(total) * n_terms)


def _tail_integral(n: int, b, log_power: int):
    """Upper bound for sum_{m>n} c(m) m^(-b) when sum_{m<=x} c(m) <= x (1 + log x)^log_power."""
    b = mpmath.mpf(b)
    f = lambda x: b * x ** (-b) * (1 + mpmath.log(x)) ** log_power
    return mpmath.quad(f, [n, 2 * n, 10 * n, mpmath.inf]) * (1 + mpmath.mpf(10) ** -10)


# ---------------------------------------------------------------------------
# Petersson norms


def _alpha(m: int) -> Fraction:
    return -2 * m / bernoulli(m)


@lru_cache(maxsize=None)
def peterson_norm(k: int, l: int, dps: int | None = None) -> NumericValue:
    """<f_k, f_k> by Rankin's formula with r = k - l, f_12 = Delta, f_20 = g20."""
    form = {12: "delta", 20: "g20"}.get(k)
    if form is None:
        raise InvalidNormParameters(f"no form of weight {k} available")
    r = k - l
    if not (4 <= r <= k // 2 - 2 and l % 2 == 0):
        raise InvalidNormParameters(f"(k, l) = ({k}, {l}) needs even l and 4 <= k - l <= {k // 2 - 2}")
    dps = dps or DEFAULT_DPS
    with mpmath.workdps(dps + 10):
        ratio = _alpha(r) / (_alpha(l) + _alpha(r) - _alpha(k))
        exact = PiExact(Fraction(factorial(k - 2)) * ratio) / zeta_exact(l)
        pref = exact.to_mpf() * (4 * mpmath.pi) ** (1 - k)
        value = l_value_level1(form, k - 1, dps) * l_value_level1(form, l, dps)
        return value * pref


def norm_delta(dps: int | None = None) -> NumericValue:
    return peterson_norm(12, 8, dps)


def norm_g20(dps: int | None = None) -> NumericValue:
    return peterson_norm(20, 12, dps)


# ---------------------------------------------------------------------------
# symmetric square of Delta


SYM2_MIN_ARGUMENT = 14


@lru_cache(maxsize=None)
def sym_square_numeric(argument: int, n_terms: int = 100_000) -> NumericValue:
    """L(argument, Delta x Delta) from zeta(2a-22)/zeta(a-11) * sum tau(n)^2 n^(-a)."""
    if argument < SYM2_MIN_ARGUMENT:
        raise ValueError(f"argument must be at least {SYM2_MIN_ARGUMENT}")
    tau = level1_coefficients("delta", n_terms + 1)
    a = argument
    with mpmath.workdps(DEFAULT_DPS):
        total = mpmath.fsum(mpmath.mpf(tau[n] * tau[n]) / mpmath.mpf(n) ** a for n in range(1, n_terms + 1))
        # tau(n)^2 <= d(n)^2 n^11 <= d_4(n) n^11, sum_{n<=x} d_4(n) <= x (1 + log x)^3
        tail = _tail_integral(n_terms, a - 11, 3)
        series = NumericValue(total, tail + _ulp_slack(total) * n_terms)
        num = zeta_exact(2 * a - 22).to_mpf()
        den = mpmath.zeta(a - 11)
        return series * num / den


# ---------------------------------------------------------------------------
# Rankin's lemma on Euler products


def _dirichlet_mul(a: Sequence[int], b: Sequence[int], n_max: int) -> list[int]:
    out = [0] * (n_max + 1)
    for i in range(1, n_max + 1):
        if not a[i]:
            continue
        for j in range(1, n_max // i + 1):
            out[i * j] += a[i] * b[j]
    return out


def _prime_power_series(p: int, coeffs: Sequence[int], n_max: int) -> list[int]:
    """Dirichlet series with coefficient coeffs[e] at p^e."""
    out = [0] * (n_max + 1)
    q = 1
    for c in coeffs:
        if q > n_max:
            break
        out[q] = c
        q *= p
    return out


def _geometric(p: int, c: int, n_max: int) -> list[int]:
    coeffs = []
    q, e = 1, 0
    while q <= n_max:
        coeffs.append(c**e)
        q *= p
        e += 1
    return _prime_power_series(p, coeffs, n_max)


def _product(series_list, n_max: int) -> list[int]:
    out = [0] * (n_max + 1)
    out[1] = 1
    for s in series_list:
        out = _dirichlet_mul(out, s, n_max)
    return out


def rankin_lemma_sides(satake: dict, n_max: int) -> tuple[list[int], list[int]]:
    """Both sides of Rankin's lemma for integer Satake data {p: (a, a', b, b')}."""
    primes = _primes_upto(n_max)
    a_series = _product([_geometric(p, satake[p][i], n_max) for p in primes for i in (0, 1)], n_max)
    b_series = _product([_geometric(p, satake[p][i], n_max) for p in primes for i in (2, 3)], n_max)
    lhs = [x * y for x, y in zip(a_series, b_series)]
    factors = []
    for p in primes:
        a, a2, b, b2 = satake[p]
        factors.append(_prime_power_series(p, [1, 0, -a * a2 * b * b2], n_max))
        for c in (a * b, a * b2, a2 * b, a2 * b2):
            factors.append(_geometric(p, c, n_max))
    rhs = _product(factors, n_max)
    return lhs, rhs


@dataclass(frozen=True)
class ConvolutionReport:
    trials: int
    failures: tuple[int, ...]
    coefficient_check: bool
    identity_lhs: NumericValue
    identity_rhs: NumericValue

    @property
    def identity_holds(self) -> bool:
        diff = abs(self.identity_lhs.value - self.identity_rhs.value)
        return diff <= self.identity_lhs.error_bound + self.identity_rhs.error_bound

    @property
    def passed(self) -> bool:
        return not self.failures and self.coefficient_check and self.identity_holds


def g20_g22_coefficient_check(n_max: int = 200) -> bool:
    """a(n) b(n) equals the Dirichlet coefficients of L(s)L(s-1) times the 2-factor over L_2(2s-20)."""
    a = level1_coefficients("g20", n_max + 1)
    b = [int(x) if i else 0 for i, x in enumerate(g2_level(2, n_max + 1).coeffs)]
    lhs = [0] + [a[n] * b[n] for n in range(1, n_max + 1)]
    shifted = [0] + [a[n] * n for n in range(1, n_max + 1)]
    prod = _dirichlet_mul(list(a[: n_max + 1]), shifted, n_max)
    two = _prime_power_series(2, [1, -456 * 2, 2**21], n_max)
    prod = _dirichlet_mul(prod, two, n_max)
    # 1/L_2(2s-20) = prod_{p odd} (1 - p^20 p^(-2s))
    for p in _primes_upto(n_max):
        if p == 2 or p * p > n_max:
            continue
        prod = _dirichlet_mul(prod, _prime_power_series(p, [1, 0, -(p**20)], n_max), n_max)
    return lhs == prod


def g20_g22_identity(s: int = 19, n_terms: int = 10_000) -> tuple[NumericValue, NumericValue]:
    """L(s)L(s-1) for g20 against L_2(2s-20) sum a(n)b(n) n^(-s) / (1 - 456 2^(1-s) + 2^(21-2s))."""
    lhs = l_value_level1("g20", s) * l_value_level1("g20", s - 1)
    a = level1_coefficients("g20", n_terms + 1)
    b = g2_level(2, n_terms + 1).coeffs
    with mpmath.workdps(DEFAULT_DPS):
        return lhs, _g22_series(a, b, s, n_terms)


def _g22_series(a, b, s: int, n_terms: int) -> NumericValue:
    total = mpmath.fsum(mpmath.mpf(a[n] * int(b[n])) / mpmath.mpf(n) ** s for n in range(1, n_terms + 1))
    # |a(n) b(n)| <= d(n) n^(19/2) * n d(n) <= d_4(n) n^(21/2)
    tail = _tail_integral(n_terms, s - mpmath.mpf(21) / 2, 3)
    series = NumericValue(total, tail + _ulp_slack(total) * n_terms)
    l2 = (1 - mpmath.mpf(2) ** (20 - 2 * s)) * zeta_exact(2 * s - 20).to_mpf()
    euler2 = 1 - 456 * mpmath.mpf(2) ** (1 - s) + mpmath.mpf(2) ** (21 - 2 * s)
    return series * (l2 / euler2)


def euler_convolution_check(trials: int = 100, n_max: int = 200, seed: int = 0, bound: int = 5) -> ConvolutionReport:
    rng = random.Random(seed)
    primes = _primes_upto(n_max)
    failures = []
    for t in range(trials):
        satake = {p: tuple(rng.randint(-bound, bound) for _ in range(4)) for p in primes}
        lhs, rhs = rankin_lemma_sides(satake, n_max)
        if lhs != rhs:
            failures.append(t)
    lhs, rhs = g20_g22_identity()
    return ConvolutionReport(trials, tuple(failures), g20_g22_coefficient_check(n_max), lhs, rhs)


# ---------------------------------------------------------------------------
# the standard L-value without holomorphic projection


def sym2_gamma_factor(a: int) -> PiExact:
    """2^(-a) pi^(-3a/2) Gamma(a) Gamma((a-10)/2), the completing factor of L(a, Delta x Delta)."""
    return PiExact(Fraction(2) ** (-a), -3 * a) * gamma_exact(a) * gamma_exact(Fraction(a - 10, 2))


def sym2_numeric_at(a: int) -> tuple[NumericValue, str]:
    """L(a, Delta x Delta) numerically, transporting a <= 11 from 23 - a; returns (value, route)."""
    if a >= SYM2_MIN_ARGUMENT:
        return sym_square_numeric(a), "dirichlet"
    if 23 - a >= SYM2_MIN_ARGUMENT:
        ratio = sym2_gamma_factor(23 - a) / sym2_gamma_factor(a)
        return sym_square_numeric(23 - a) * ratio, "transport"
    raise ValueError(f"argument {a} needs the edge value at 12")


@dataclass(frozen=True)
class ProductEstimate:
    s: int
    sym2: NumericValue | None
    g20_pair: NumericValue
    route: str

    @property
    def total(self) -> NumericValue | None:
        return None if self.sym2 is None else self.sym2 * self.g20_pair


def main_numeric_product(s: int, dps: int | None = None) -> ProductEstimate:
    """L(s+11, Delta x Delta) L(s+10, g20) L(s+9, g20) with no use of the projection pipeline.

    The symmetric square factor is unavailable at s in {0, 1} (arguments 11, 12);
    there only the g20 pair is estimated.
    """
    pair = l_value_level1("g20", s + 10, dps) * l_value_level1("g20", s + 9, dps)
    try:
        sym, route = sym2_numeric_at(s + 11)
    except ValueError:
        return ProductEstimate(s, None, pair, "g20-only")
    return ProductEstimate(s, sym, pair, route)
