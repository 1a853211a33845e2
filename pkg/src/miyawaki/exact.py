"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction` throughout. Values that carry a power
of pi (Gamma at half-integers, zeta at even integers, L-values) are
:class:`PiExact` monomials ``coeff * pi**(half_pi / 2)``; the exponent is kept
in half-units so that sqrt(pi) stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Union

import mpmath

Rational = Union[int, Fraction]


class PoleError(ArithmeticError):
    """Evaluation at a pole of Gamma or zeta."""


class IrrationalOddZetaError(ArithmeticError):
    """zeta(n) for odd n > 1 is not a rational multiple of a power of pi."""


class PiExponentMismatch(ArithmeticError):
    """Addition of PiExact values with different nonzero pi exponents."""


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class PiExact:
    """An exact monomial ``coeff * pi**(half_pi/2)``."""

    coeff: Fraction
    half_pi: int = 0

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))

    @classmethod
    def of(cls, value) -> "PiExact":
        if isinstance(value, PiExact):
            return value
        return cls(Fraction(value), 0)

    @property
    def pi_power(self) -> Fraction:
        return Fraction(self.half_pi, 2)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiExact(Fraction(other))
        if not isinstance(other, PiExact):
            return NotImplemented
        if self.coeff == 0 or other.coeff == 0:
            return self.coeff == other.coeff
        return self.coeff == other.coeff and self.half_pi == other.half_pi

    def __hash__(self):
        if self.coeff == 0:
            return hash(Fraction(0))
        return hash((self.coeff, self.half_pi))

    def __neg__(self):
        return PiExact(-self.coeff, self.half_pi)

    def __add__(self, other):
        other = PiExact.of(other)
        if other.coeff == 0:
            return self
        if self.coeff == 0:
            return other
        if self.half_pi != other.half_pi:
            raise PiExponentMismatch(
                f"cannot add pi^({self.half_pi}/2) and pi^({other.half_pi}/2)"
            )
        return PiExact(self.coeff + other.coeff, self.half_pi)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-PiExact.of(other))

    def __rsub__(self, other):
        return PiExact.of(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiExact(self.coeff * other, self.half_pi)
        if not isinstance(other, PiExact):
            return NotImplemented
        return PiExact(self.coeff * other.coeff, self.half_pi + other.half_pi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = PiExact.of(other)
        if other.coeff == 0:
            raise ZeroDivisionError("division by exact zero")
        return PiExact(self.coeff / other.coeff, self.half_pi - other.half_pi)

    def __rtruediv__(self, other):
        return PiExact.of(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return PiExact(Fraction(1)) / (self ** (-n))
        return PiExact(self.coeff**n, self.half_pi * n)

    def to_mpf(self):
        """Numerical value at the current mpmath precision."""
        c = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
        if self.half_pi % 2 == 0:
            return c * mpmath.pi ** (self.half_pi // 2)
        return c * mpmath.sqrt(mpmath.pi) ** self.half_pi

    def __float__(self):
        with mpmath.workdps(30):
            return float(self.to_mpf())

    def __repr__(self):
        return f"PiExact({self.coeff}, pi^{self.pi_power})"

    def __str__(self):
        if self.coeff == 0:
            return "0"
        p = self.pi_power
        if p == 0:
            return str(self.coeff)
        return f"{self.coeff}*pi^{p}"


PI = PiExact(Fraction(1), 2)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k<=m} C(m+1, k) B_k = 0 for m >= 1
    table = [Fraction(1)]
    for m in range(1, n + 1):
        if m > 1 and m % 2:
            table.append(Fraction(0))
            continue
        acc = sum(comb(m + 1, j) * table[j] for j in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # grow the cache in steps so repeated small queries stay cheap
    size = max(64, 1 << (n.bit_length()))
    return _bernoulli_table(size)[n]


def _as_half_integer(x) -> Fraction:
    x = Fraction(x)
    if (2 * x).denominator != 1:
        raise ValueError(f"{x} is neither an integer nor a half-integer")
    return x


def gamma_exact(x) -> PiExact:
    """Gamma(x) for integer or half-integer x."""
    x = _as_half_integer(x)
    if x.denominator == 1:
        n = x.numerator
        if n <= 0:
            raise PoleError(f"Gamma has a pole at {n}")
        return PiExact(Fraction(factorial(n - 1)))
    # x = m + 1/2
    m = (x - Fraction(1, 2)).numerator
    if m >= 0:
        c = Fraction(factorial(2 * m), 4**m * factorial(m))
    else:
        n = -m
        c = Fraction((-4) ** n * factorial(n), factorial(2 * n))
    return PiExact(c, 1)


def reciprocal_gamma_int(n: int) -> Fraction:
    """1/Gamma(n), zero at the poles n <= 0."""
    if n <= 0:
        return Fraction(0)
    return Fraction(1, factorial(n - 1))


def gamma_ratio_int(a: int, b: int) -> Fraction:
    """Gamma(a)/Gamma(b) for integers, poles in both slots read as residue ratios.

    Both arguments are taken to approach their poles at the same rate; a pole
    in the denominator alone gives zero.
    """
    if a > 0:
        return Fraction(factorial(a - 1)) * reciprocal_gamma_int(b)
    if b > 0:
        raise PoleError(f"Gamma({a})/Gamma({b}) is infinite")
    m, n = -a, -b
    return Fraction(_sign(m - n) * factorial(n), factorial(m))


def zeta_exact(n: int) -> PiExact:
    """zeta(n) for n even positive or n <= 0."""
    if n == 1:
        raise PoleError("zeta has a pole at 1")
    if n == 0:
        return PiExact(Fraction(-1, 2))
    if n < 0:
        m = 1 - n
        return PiExact(-bernoulli(m) / m)
    if n % 2:
        raise IrrationalOddZetaError(f"zeta({n}) is not a pi-power monomial")
    c = _sign(n // 2 + 1) * bernoulli(n) * 2**n / (2 * factorial(n))
    return PiExact(c, 2 * n)


def partial_zeta_exact(n: int, a: int, modulus: int) -> PiExact:
    """Partial zeta sum over positive integers congruent to a mod 1 or 2."""
    if modulus == 1:
        return zeta_exact(n)
    if modulus != 2:
        raise ValueError("only moduli 1 and 2 are supported")
    z = zeta_exact(n)
    two = Fraction(2) ** (-n)
    if a % 2 == 0:
        return z * two
    return z * (1 - two)


@dataclass(frozen=True)
class FactoredRational:
    """Sign and prime factorization of a nonzero rational."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in self.factors:
            v *= Fraction(p) ** e
        return v

    def numerator_factors(self):
        return [(p, e) for p, e in self.factors if e > 0]

    def denominator_factors(self):
        return [(p, -e) for p, e in self.factors if e < 0]

    def render(self, times: str = "·") -> str:
        def part(fs):
            return times.join(f"{p}^{e}" if e > 1 else str(p) for p, e in fs)

        num = part(self.numerator_factors()) or "1"
        den_fs = self.denominator_factors()
        out = num
        if den_fs:
            den = part(den_fs)
            out = f"{num}/({den})" if len(den_fs) > 1 or den_fs[0][1] > 1 else f"{num}/{den}"
        return ("-" if self.sign < 0 else "") + out

    def __str__(self):
        return self.render()


def factor_rational(q) -> FactoredRational:
    """Complete prime factorization of a nonzero rational."""
    from sympy import factorint

    q = Fraction(q)
    if q == 0:
        raise ValueError("cannot factor zero")
    exps: dict[int, int] = {}
    for p, e in factorint(abs(q.numerator)).items():
        exps[int(p)] = exps.get(int(p), 0) + int(e)
    for p, e in factorint(q.denominator).items():
        exps[int(p)] = exps.get(int(p), 0) - int(e)
    factors = tuple(sorted((p, e) for p, e in exps.items() if e))
    return FactoredRational(1 if q > 0 else -1, factors)


def render_pi_exact(v: PiExact) -> str:
    """Factored rendering ``R·pi^a`` of a PiExact value."""
    if v.coeff == 0:
        return "0"
    r = factor_rational(v.coeff).render()
    p = v.pi_power
    if p == 0:
        return r
    return f"{r}·pi^{p}"
