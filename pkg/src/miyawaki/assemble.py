"""Exact assembly of the critical values and the functional-equation diagnostics.

L(s, F12, St) = L(s+11, Delta x Delta) L(s+10, g20) L(s+9, g20)

The symmetric-square factor comes from five fixtures at arguments 12..20 and
the exact functional equation D*(a) = D*(23 - a).  The g20 pair comes from the
projection coordinates K_1, K_2.  Values are PiExact in units of
<Delta,Delta> and <g20,g20> respectively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from miyawaki import published
from miyawaki.exact import FactoredRational, PiExact, factor_rational, gamma_exact
from miyawaki.holproj import Method, ProjectionContext, k_coefficients
from miyawaki.numeric import sym2_gamma_factor
from miyawaki.qexp import g20_qexp

CRITICAL_POINTS = (-8, -6, -4, -2, 0, 1, 3, 5, 7, 9)
FE_PAIRS = ((-8, 9), (-6, 7), (-4, 5), (-2, 3), (0, 1))


class TraceConstantMismatch(ArithmeticError):
    pass


# L(a, Delta x Delta) / <Delta,Delta> at the right-hand arguments
SYM2_FIXTURES = {
    12: PiExact(Fraction(2**23, factorial(11)), 26),
    14: PiExact(Fraction(2**28, factorial(14)), 34),
    16: PiExact(Fraction(2**31, 3 * factorial(16)), 42),
    18: PiExact(Fraction(2**35, 15 * factorial(18)), 50),
    20: PiExact(Fraction(2**41, 245 * factorial(20)), 58),
}


@dataclass(frozen=True)
class SymSquareFixture:
    argument: int
    value: PiExact

    def __post_init__(self):
        if self.argument % 2 or not 12 <= self.argument <= 20:
            raise ValueError("fixture arguments are the even integers 12..20")


def fixtures() -> list[SymSquareFixture]:
    return [SymSquareFixture(a, v) for a, v in sorted(SYM2_FIXTURES.items())]


def d_star(a: int, value: PiExact) -> PiExact:
    """D*(a) = 2^(-a) pi^(-3a/2) Gamma(a) Gamma((a-10)/2) L(a)."""
    return sym2_gamma_factor(a) * value


def transport(a: int, value: PiExact) -> PiExact:
    """L(23 - a) from L(a) through D*(a) = D*(23 - a)."""
    return d_star(a, value) / sym2_gamma_factor(23 - a)


def sym2_at(argument: int) -> PiExact:
    if argument in SYM2_FIXTURES:
        return SYM2_FIXTURES[argument]
    if 23 - argument in SYM2_FIXTURES:
        return transport(23 - argument, SYM2_FIXTURES[23 - argument])
    raise ValueError(f"no symmetric-square value at {argument}")


def sym_square_value(s: int) -> PiExact:
    """L(s+11, Delta x Delta) in units of <Delta,Delta>."""
    _check_point(s)
    return sym2_at(s + 11)


def _check_point(s: int):
    if s not in CRITICAL_POINTS:
        raise ValueError(f"{s} is not a critical point")


# ---------------------------------------------------------------------------
# the g20 pair


def euler_factor_2(s: int) -> Fraction:
    """1 - 456 2^(-9-s) + 2^(1-2s): the 2-factor relating the Rankin product to L(s+10)L(s+9)."""
    return 1 - 456 * Fraction(2) ** (-9 - s) + Fraction(2) ** (1 - 2 * s)


def trace_constant(k: int = 20, a2: int | None = None) -> Fraction:
    """2^(-k/2) 3^(-1) 2^(1-k/2) a(2): the g20(z), g20(2z) pairing relative to <g20,g20>."""
    if a2 is None:
        if k != 20:
            raise ValueError("a(2) must be supplied for k != 20")
        a2 = int(g20_qexp(8)[2])
    return Fraction(2) ** (-k // 2) / 3 * Fraction(2) ** (1 - k // 2) * a2


def trace_constant_check() -> Fraction:
    c = trace_constant(20)
    if c != Fraction(456, 3 * 2**19) or c != Fraction(19, 2**16):
        raise TraceConstantMismatch(f"trace constant {c} differs from 19/2^16")
    return c


def trace_constant_delta_analog() -> Fraction:
    """The same expression at k = 12 with tau(2) = -24 (reported only)."""
    return trace_constant(12, -24)


def g20_pair_from_k(s: int, k1: PiExact, k2: PiExact) -> PiExact:
    sigma = s + 10
    pref = PiExact(Fraction(3, 2) * 4**19, 38) / factorial(sigma - 1)
    return pref * (k1 + k2 * trace_constant()) / euler_factor_2(s)


def g20_pair_value(s: int, method=Method.CORRECTED) -> PiExact:
    """L(s+10, g20) L(s+9, g20) in units of <g20,g20>."""
    _check_point(s)
    ks = k_coefficients(ProjectionContext(s), method)
    return g20_pair_from_k(s, ks[0], ks[1])


def standard_value(s: int, method=Method.CORRECTED) -> PiExact:
    """L(s, F12, St) in units of <Delta,Delta><g20,g20>."""
    return sym_square_value(s) * g20_pair_value(s, method)


# ---------------------------------------------------------------------------
# table rows


@dataclass(frozen=True)
class CriticalRow:
    s: int
    exact: PiExact
    factored: FactoredRational | None
    numeric: float | None
    flags: tuple[str, ...] = ()

    @property
    def pi_power(self) -> Fraction:
        return self.exact.pi_power

    def __post_init__(self):
        if self.factored is not None and self.factored.value() != self.exact.coeff:
            raise ValueError("factored form does not reproduce the exact value")


def _factored(v: PiExact) -> FactoredRational | None:
    return None if v.is_zero() else factor_rational(v.coeff)


def _compare_flag(value: PiExact, printed: PiExact) -> str:
    return "matches-print" if value == printed else "differs-from-print"


def _norms():
    from miyawaki.numeric import norm_delta, norm_g20

    return norm_delta(), norm_g20()


def main_table_row(s: int, method=Method.CORRECTED, with_numeric: bool = True) -> CriticalRow:
    v = standard_value(s, method)
    numeric = None
    if with_numeric:
        nd, ng = _norms()
        numeric = float(nd * ng * v)
    flags = (_compare_flag(v, published.main_value(s)),)
    return CriticalRow(s, v, _factored(v), numeric, flags)


def main_table(method=Method.CORRECTED, with_numeric: bool = True) -> list[CriticalRow]:
    return [main_table_row(s, method, with_numeric) for s in CRITICAL_POINTS]


def sym2_table(with_numeric: bool = True) -> list[CriticalRow]:
    rows = []
    nd = _norms()[0] if with_numeric else None
    for s in CRITICAL_POINTS:
        v = sym_square_value(s)
        route = "fixture" if s + 11 in SYM2_FIXTURES else "transport"
        flags = (route, _compare_flag(v, published.sym2_value(s)))
        rows.append(CriticalRow(s, v, _factored(v), float(nd * v) if nd else None, flags))
    return rows


def product_table(method=Method.CORRECTED, with_numeric: bool = True) -> list[CriticalRow]:
    rows = []
    ng = _norms()[1] if with_numeric else None
    for s in CRITICAL_POINTS:
        v = g20_pair_value(s, method)
        flags = (_compare_flag(v, published.g20_pair_value(s)),)
        rows.append(CriticalRow(s, v, _factored(v), float(ng * v) if ng else None, flags))
    return rows


# ---------------------------------------------------------------------------
# functional-equation certificates


@dataclass(frozen=True)
class FeCertificate:
    """Exact ratio of the two sides of a functional equation for one pair of points."""

    name: str
    pair: tuple[int, int]
    ratio: PiExact
    note: str = ""

    @property
    def pi_balanced(self) -> bool:
        return self.ratio.is_zero() or self.ratio.half_pi == 0

    @property
    def holds(self) -> bool:
        return self.pi_balanced and self.ratio == 1

    @property
    def ratio_factored(self) -> str:
        if self.ratio.is_zero():
            return "0"
        return factor_rational(self.ratio.coeff).render()


def sym_square_fe_pair_check(values: Mapping[int, PiExact] | None = None) -> list[FeCertificate]:
    """D*(a)/D*(23-a) on a table of L(s+11, Delta x Delta), default the printed one."""
    if values is None:
        values = {s: published.sym2_value(s) for s in CRITICAL_POINTS}
    out = []
    for left, right in FE_PAIRS:
        a, b = left + 11, right + 11
        ratio = d_star(a, values[left]) / d_star(b, values[right])
        out.append(FeCertificate("sym2", (a, b), ratio))
    return out


def _lambda_pair_factor(s: int) -> PiExact:
    """(2 pi)^(-(2s+19)) Gamma(s+10) Gamma(s+9)."""
    e = 2 * s + 19
    return PiExact(Fraction(2) ** (-e), -2 * e) * gamma_exact(s + 10) * gamma_exact(s + 9)


def g20_fe_pair_check(values: Mapping[int, PiExact]) -> list[FeCertificate]:
    """Lambda(s+10)Lambda(s+9) / (Lambda(11-s)Lambda(10-s)) for each pair (s, 1-s)."""
    out = []
    for left, right in FE_PAIRS:
        num = _lambda_pair_factor(left) * values[left]
        den = _lambda_pair_factor(right) * values[right]
        out.append(FeCertificate("g20-pair", (left, right), num / den))
    return out


def gamma_standard(s: int) -> PiExact:
    """2^(-3s) pi^(-7s/2) Gamma((s+1)/2) Gamma(s+9) Gamma(s+10) Gamma(s+11), constant dropped."""
    g = PiExact(Fraction(2) ** (-3 * s), -7 * s) * gamma_exact(Fraction(s + 1, 2))
    return g * gamma_exact(s + 9) * gamma_exact(s + 10) * gamma_exact(s + 11)


def standard_fe_check(values: Mapping[int, PiExact]) -> list[FeCertificate]:
    """gamma(s) V(s) / (gamma(1-s) V(1-s)) for the five pairs; C and the norms cancel."""
    out = []
    for left, right in FE_PAIRS:
        ratio = gamma_standard(left) * values[left] / (gamma_standard(right) * values[right])
        out.append(FeCertificate("standard", (left, right), ratio))
    return out


@dataclass(frozen=True)
class SignCheck:
    s: int
    value_sign: int
    expected_sign: int | None
    reason: str

    @property
    def consistent(self) -> bool:
        return self.expected_sign is None or self.value_sign == self.expected_sign


def _sign_of_l(w: int, central_sign: Callable[[], int] | None) -> tuple[int | None, str]:
    # L(w, g20) > 0 for w >= 11 by the absolutely convergent Euler product, and for w <= 9
    # through Lambda(w) = Lambda(20 - w) with Gamma(w) > 0; only w = 10 is left open
    if w != 10:
        return 1, "euler-product" if w >= 11 else "fe-reflection"
    if central_sign is None:
        return None, "central"
    return central_sign(), "central-numeric"


def positivity_scan(values: Mapping[int, PiExact], central_sign: Callable[[], int] | None = None) -> list[SignCheck]:
    out = []
    for s in CRITICAL_POINTS:
        v = values[s]
        sign = 0 if v.is_zero() else (1 if v.coeff > 0 else -1)
        e1, r1 = _sign_of_l(s + 10, central_sign)
        e2, r2 = _sign_of_l(s + 9, central_sign)
        expected = None if e1 is None or e2 is None else e1 * e2
        out.append(SignCheck(s, sign, expected, f"{r1}/{r2}"))
    return out


def numeric_central_sign() -> int:
    from miyawaki.numeric import l_value_level1

    v = l_value_level1("g20", 10)
    if abs(v.value) <= v.error_bound:
        raise ArithmeticError("sign of L(10, g20) not resolved")
    return 1 if v.value > 0 else -1


@dataclass
class FeReport:
    source: str
    sym2: list[FeCertificate] = field(default_factory=list)
    g20: list[FeCertificate] = field(default_factory=list)
    standard: list[FeCertificate] = field(default_factory=list)
    signs: list[SignCheck] = field(default_factory=list)


def value_tables(source: str) -> tuple[dict, dict, dict]:
    """(sym2, g20 pair, standard) value maps for 'printed', 'published' or 'corrected'."""
    if source == "printed":
        sym = {s: published.sym2_value(s) for s in CRITICAL_POINTS}
        pair = {s: published.g20_pair_value(s) for s in CRITICAL_POINTS}
        main = {s: published.main_value(s) for s in CRITICAL_POINTS}
        return sym, pair, main
    method = Method.parse(source)
    sym = {s: sym_square_value(s) for s in CRITICAL_POINTS}
    pair = {s: g20_pair_value(s, method) for s in CRITICAL_POINTS}
    return sym, pair, {s: sym[s] * pair[s] for s in CRITICAL_POINTS}


def fe_report(source: str = "corrected", central_sign: Callable[[], int] | None = numeric_central_sign) -> FeReport:
    sym, pair, main = value_tables(source)
    return FeReport(
        source,
        sym_square_fe_pair_check(sym),
        g20_fe_pair_check(pair),
        standard_fe_check(main),
        positivity_scan(pair, central_sign),
    )


# ---------------------------------------------------------------------------
# printed q-expansion listings


@dataclass(frozen=True)
class ListingCheck:
    computed: tuple[int, ...]
    listings: dict

    def matching(self) -> list[str]:
        return [name for name, v in self.listings.items() if tuple(v) == self.computed]


def g20_listing_check() -> ListingCheck:
    g = g20_qexp(8)
    computed = tuple(int(g[n]) for n in range(1, 6))
    return ListingCheck(computed, dict(published.G20_LISTINGS))


# ---------------------------------------------------------------------------
# adjudication against independent numerics


@dataclass(frozen=True)
class NumericComparison:
    """Exact row (evaluated with numeric norms) against a projection-free estimate."""

    s: int
    quantity: str
    exact_numeric: float
    independent: float
    relative_difference: float
    independent_error: float

    def agrees(self, tolerance: float) -> bool:
        return self.relative_difference <= tolerance

    @property
    def tolerance(self) -> float:
        # the tighter tolerance applies wherever the estimate is certified to 1e-7
        return 1e-6 if self.independent_error < 1e-7 else 1e-5


def numeric_comparison(s: int, source: str = "corrected") -> NumericComparison:
    """Compare L(s, F12, St) (or the g20 pair where the sym2 factor has no numeric route).

    ``source`` selects the exact values as in :func:`value_tables`.
    """
    import mpmath

    from miyawaki.numeric import main_numeric_product, norm_delta, norm_g20

    _check_point(s)
    _, pair, main = value_tables(source)
    est = main_numeric_product(s)
    ng = norm_g20()
    if est.total is not None:
        exact = norm_delta() * ng * main[s]
        indep, quantity = est.total, "standard"
    else:
        exact = ng * pair[s]
        indep, quantity = est.g20_pair, "g20-pair"
    with mpmath.workdps(30):
        rel = abs(exact.value / indep.value - 1)
        err = indep.relative_error + exact.relative_error
    return NumericComparison(s, quantity, float(exact.value), float(indep.value), float(rel), float(err))
