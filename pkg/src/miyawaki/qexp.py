"""Truncated q-expansions over the rationals and the classical forms built from them.

A :class:`QExpansion` stores a(0), ..., a(precision-1).  Precision is tracked
pessimistically: every operation reports the number of coefficients it can
actually certify, and reading past the end raises :class:`PrecisionError`
instead of returning zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Callable, Iterable, Mapping, Sequence

import gmpy2

from miyawaki.exact import bernoulli

DEFAULT_PRECISION = 128

# below this length schoolbook convolution beats packing into big integers
_KRONECKER_CUTOFF = 48


class PrecisionError(IndexError):
    """A coefficient beyond the certified precision was requested."""


# ---------------------------------------------------------------------------
# integer polynomial kernels


def _naive_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], width: int) -> gmpy2.mpz:
    raw = b"".join(c.to_bytes(width, "little") for c in coeffs)
    return gmpy2.mpz(int.from_bytes(raw, "little"))


def _unpack(value, width: int, n: int) -> list[int]:
    # drop the product terms of degree >= n before converting
    raw = int(gmpy2.f_mod_2exp(value, 8 * width * n)).to_bytes(width * n, "little")
    return [int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(n)]


def poly_mul_int(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First n coefficients of the product of two integer polynomials (exact)."""
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) <= _KRONECKER_CUTOFF:
        return _naive_mul(a, b, n)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * n
    bound = 2 * ma * mb * min(len(a), len(b))
    width = bound.bit_length() // 8 + 1
    ap = _pack([x if x > 0 else 0 for x in a], width)
    an = _pack([-x if x < 0 else 0 for x in a], width)
    bp = _pack([x if x > 0 else 0 for x in b], width)
    bn = _pack([-x if x < 0 else 0 for x in b], width)
    pos = _unpack(ap * bp + an * bn, width, n)
    neg = _unpack(ap * bn + an * bp, width, n)
    return [x - y for x, y in zip(pos, neg)]


def divisor_power_sums(r: int, n: int) -> list[int]:
    """sigma_r(m) for 0 <= m < n (entry 0 is 0)."""
    out = [0] * n
    for d in range(1, n):
        dr = d**r
        for m in range(d, n, d):
            out[m] += dr
    return out


# ---------------------------------------------------------------------------
# series types


@dataclass(frozen=True)
class QExpansion:
    """sum_{n < precision} coeffs[n] q^n of a form of given weight and level."""

    coeffs: tuple[Fraction, ...]
    weight: int | Fraction = 0
    level: int = 1

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a q-expansion needs at least one coefficient")
        if not all(type(c) is Fraction for c in self.coeffs):
            object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_ints(cls, values: Iterable[int], weight=0, level=1) -> "QExpansion":
        return cls(tuple(Fraction(v) for v in values), weight, level)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.coeffs[n]
        if n < 0:
            raise IndexError("negative q-exponent")
        if n >= len(self.coeffs):
            raise PrecisionError(f"coefficient {n} requested at precision {len(self.coeffs)}")
        return self.coeffs[n]

    def truncate(self, precision: int) -> "QExpansion":
        if precision > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {precision}")
        return QExpansion(self.coeffs[:precision], self.weight, self.level)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def _like(self, coeffs, other=None) -> "QExpansion":
        level = self.level if other is None else lcm(self.level, other.level)
        return QExpansion(tuple(coeffs), self.weight, level)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.precision, other.precision)
        return self._like((x + y for x, y in zip(self.coeffs[:n], other.coeffs[:n])), other)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.precision, other.precision)
        return self._like((x - y for x, y in zip(self.coeffs[:n], other.coeffs[:n])), other)

    def __neg__(self):
        return self._like(-c for c in self.coeffs)

    def scale(self, c) -> "QExpansion":
        c = Fraction(c)
        return self._like(c * x for x in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        n = min(self.precision, other.precision)
        da = lcm(*(c.denominator for c in self.coeffs[:n]))
        db = lcm(*(c.denominator for c in other.coeffs[:n]))
        a = [int(c * da) for c in self.coeffs[:n]]
        b = [int(c * db) for c in other.coeffs[:n]]
        prod = poly_mul_int(a, b, n)
        den = da * db
        out = tuple(Fraction(x, den) for x in prod) if den != 1 else tuple(Fraction(x) for x in prod)
        return QExpansion(out, self.weight + other.weight, lcm(self.level, other.level))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QExpansion":
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QExpansion((Fraction(1),) + (Fraction(0),) * (self.precision - 1), 0, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        n = min(self.precision, other.precision)
        return self.coeffs[:n] == other.coeffs[:n]

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QExpansion(k={self.weight}, N={self.level}, prec={self.precision}, [{head}, ...])"


@dataclass(frozen=True)
class DirichletCoefficients:
    """Coefficients c(1), ..., c(length) of a Dirichlet series."""

    values: tuple = field(default=())

    @property
    def length(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int):
        if n < 1 or n > len(self.values):
            raise PrecisionError(f"Dirichlet coefficient {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


# ---------------------------------------------------------------------------
# classical forms


def eisenstein(k: int, precision: int = DEFAULT_PRECISION) -> QExpansion:
    """Normalized level-1 Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and at least 4")
    alpha = -2 * k / bernoulli(k)
    sig = divisor_power_sums(k - 1, precision)
    coeffs = (Fraction(1),) + tuple(alpha * s for s in sig[1:])
    return QExpansion(coeffs, k, 1)


def g2_level(p: int, precision: int = DEFAULT_PRECISION) -> QExpansion:
    """G_2(z) - p G_2(pz): constant (p-1)/24, then sums of divisors prime to p."""
    out = [0] * precision
    for d in range(1, precision):
        if d % p == 0:
            continue
        for m in range(d, precision, d):
            out[m] += d
    coeffs = (Fraction(p - 1, 24),) + tuple(Fraction(x) for x in out[1:])
    return QExpansion(coeffs, 2, p)


def _eta_ints(precision: int) -> list[int]:
    # prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2} over all integers k
    out = [0] * precision
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e < precision:
                out[e] += -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def eta_qexp(precision: int = DEFAULT_PRECISION) -> QExpansion:
    """prod_{n>=1} (1 - q^n), i.e. eta with the q^(1/24) factor dropped."""
    return QExpansion.from_ints(_eta_ints(precision), Fraction(1, 2), 1)


def _delta_ints(precision: int) -> list[int]:
    e4 = [1] + [240 * s for s in divisor_power_sums(3, precision)[1:]]
    e6 = [1] + [-504 * s for s in divisor_power_sums(5, precision)[1:]]
    e4sq = poly_mul_int(e4, e4, precision)
    e4cube = poly_mul_int(e4sq, e4, precision)
    e6sq = poly_mul_int(e6, e6, precision)
    out = []
    for x, y in zip(e4cube, e6sq):
        q, r = divmod(x - y, 1728)
        assert r == 0
        out.append(q)
    return out


def _delta_ints_from_eta(precision: int) -> list[int]:
    eta = _eta_ints(precision)
    e2 = poly_mul_int(eta, eta, precision)
    e4 = poly_mul_int(e2, e2, precision)
    e8 = poly_mul_int(e4, e4, precision)
    e16 = poly_mul_int(e8, e8, precision)
    e24 = poly_mul_int(e16, e8, precision)
    return [0] + e24[: precision - 1]


def delta_qexp(precision: int = DEFAULT_PRECISION) -> QExpansion:
    """Ramanujan's Delta = (E_4^3 - E_6^2)/1728."""
    return QExpansion.from_ints(_delta_ints(precision), 12, 1)


def delta_qexp_eta(precision: int = DEFAULT_PRECISION) -> QExpansion:
    """Delta as q * prod (1-q^n)^24; an independent construction for cross-checks."""
    return QExpansion.from_ints(_delta_ints_from_eta(precision), 12, 1)


def g20_ints(precision: int) -> list[int]:
    """Integer coefficients of the weight-20 level-1 newform Delta * E_8."""
    delta = _delta_ints(precision)
    e8 = [1] + [480 * s for s in divisor_power_sums(7, precision)[1:]]
    return poly_mul_int(delta, e8, precision)


def g20_qexp(precision: int = DEFAULT_PRECISION) -> QExpansion:
    """The normalized cusp form of weight 20 and level 1."""
    return QExpansion.from_ints(g20_ints(precision), 20, 1)


# ---------------------------------------------------------------------------
# operators


def v_operator(f: QExpansion, m: int) -> QExpansion:
    """f(z) -> f(mz)."""
    if m < 1:
        raise ValueError("m must be positive")
    precision = m * (f.precision - 1) + 1
    out = [Fraction(0)] * precision
    for n, c in enumerate(f.coeffs):
        out[m * n] = c
    return QExpansion(tuple(out), f.weight, f.level * m)


def u_operator(f: QExpansion, m: int) -> QExpansion:
    """a(n) -> a(mn)."""
    if m < 1:
        raise ValueError("m must be positive")
    precision = (f.precision - 1) // m + 1
    return QExpansion(tuple(f.coeffs[m * n] for n in range(precision)), f.weight, f.level)


def hecke_tp(f: QExpansion, p: int, precision: int | None = None) -> QExpansion:
    """Level-1 Hecke operator: a(n) -> a(pn) + p^(k-1) a(n/p)."""
    if f.level != 1:
        raise ValueError("hecke_tp is only defined here for level 1")
    available = (f.precision - 1) // p + 1
    if precision is None:
        precision = available
    if precision > available:
        raise PrecisionError(f"T_{p} needs precision {p * (precision - 1) + 1}, have {f.precision}")
    pk = p ** (f.weight - 1)
    out = []
    for n in range(precision):
        c = f[p * n]
        if n % p == 0:
            c += pk * f[n // p]
        out.append(c)
    return QExpansion(tuple(out), f.weight, f.level)


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def multiplicative_extend(
    prime_coeffs: Mapping[int, int] | Callable[[int], int], k: int, n_terms: int
) -> DirichletCoefficients:
    """Full a(n), n <= n_terms, of a level-1 eigenform from its prime coefficients.

    Uses a(p^(r+1)) = a(p) a(p^r) - p^(k-1) a(p^(r-1)) and multiplicativity.
    """
    get = prime_coeffs if callable(prime_coeffs) else prime_coeffs.__getitem__
    a = [0] * (n_terms + 1)
    a[1] = 1
    done = [False] * (n_terms + 1)
    done[1] = True
    for p in _primes_upto(n_terms):
        ap = get(p)
        pk = p ** (k - 1)
        powers = [1, ap]
        q = p * p
        while q <= n_terms:
            powers.append(ap * powers[-1] - pk * powers[-2])
            q *= p
        # multiply into every already-built m coprime to p
        for m in range(n_terms // p, 0, -1):
            if not done[m] or m % p == 0:
                continue
            q, r = p * m, 1
            while q <= n_terms:
                a[q] = a[m] * powers[r]
                done[q] = True
                q *= p
                r += 1
    assert all(done[1:]), "multiplicative assembly left gaps"
    return DirichletCoefficients(tuple(a[1:]))


def ramanujan_congruence_holds(n_max: int = 1000) -> bool:
    """tau(n) = sigma_11(n) mod 691 for 1 <= n <= n_max."""
    tau = _delta_ints(n_max + 1)
    sig = divisor_power_sums(11, n_max + 1)
    return all((tau[n] - sig[n]) % 691 == 0 for n in range(1, n_max + 1))


def is_cusp_form(f: QExpansion) -> bool:
    return f.coeffs[0] == 0

