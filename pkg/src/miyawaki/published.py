"""Printed reference values, transcribed verbatim for comparison.

Nothing in the computational modules reads from here; these tables are only
used by the verification layer, the report and the tests.  Rationals are
stored as the strings that appear in print and parsed on access.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from miyawaki.exact import PiExact

CRITICAL_POINTS = (-8, -6, -4, -2, 0, 1, 3, 5, 7, 9)


def _q(text: str) -> Fraction:
    return Fraction(text)


# L(s+11, Delta x Delta) in units of <Delta,Delta>: (rational, pi power)
SYM2_TABLE = {
    -8: (Fraction(2**20 * 9, 35), 3),
    -6: (Fraction(-(2**16), 9), 5),
    -4: (Fraction(2**13, 45), 7),
    -2: (Fraction(-(2**14), 2205), 9),
    0: (Fraction(2**14, 14175), 11),
    1: (Fraction(2**23, factorial(11)), 13),
    3: (Fraction(2**28, factorial(14)), 17),
    5: (Fraction(2**31, 3 * factorial(16)), 21),
    7: (Fraction(2**35, 15 * factorial(18)), 25),
    9: (Fraction(2**41, 245 * factorial(20)), 29),
}

# (C'_0, C''_0, C_1, C_2, C_3, C_4), common factor pi^(2s)
C_TABLE = {
    -8: ("43867/7182", "0", "2", "131071/65536", "258280328/129140163", "17179738111/8589934592"),
    -6: ("35/2", "0", "2", "8191/4096", "3188648/1594323", "67100671/33554432"),
    -4: ("65/6", "0", "2", "511/256", "39368/19683", "261631/131072"),
    -2: ("11/3", "0", "2", "31/16", "488/243", "991/512"),
    0: ("3/2", "0", "2", "1", "8/3", "1/2"),
    1: ("0", "1/4", "2", "-2", "8", "-10"),
    3: ("0", "1/480", "2", "-62", "488", "-2110"),
    5: ("0", "31/1451520", "2", "-1022", "39368", "-525310"),
    7: ("0", "5461/24908083200", "2", "-16382", "3188648", "-134234110"),
    9: ("0", "3202291/1422749712384000", "2", "-262142", "258280328", "-34360000510"),
}

A_TABLE = {
    -8: ("88931/14364", "157008449/14364", "39586640915/3591", "24277850760593/14364"),
    -6: ("71/1224", "8387/306", "447871/34", "131485894/153"),
    -4: ("1/6528", "173/3672", "5103/544", "9380/17"),
    -2: ("1/3144960", "1/8568", "23801/4455360", "11015/41769"),
    0: ("1/784143360", "23/49008960", "4997/196035840", "421/2042040"),
    1: ("1/5292967680", "53/1323241920", "27/5445440", "-23/33081048"),
    3: ("199/1270312243200", "49/5671036800", "2059/3207859200", "-10529/4962157200"),
    5: ("19/65330343936", "1277/285820254720", "8167/63515612160", "-6631/10508097600"),
    7: ("286703/400148356608000", "28267/10003708915200", "633/15247232000", "-8745697/6252318072000"),
    9: (
        "4803437/2134124568576000",
        "4737913/2134124568576000",
        "20552747/533531142144000",
        "-7037087527/2134124568576000",
    ),
}

K_TABLE = {
    -8: ("-435883731901/495673344", "3045934023523439/1177224192"),
    -6: ("-217211831/585169920", "100968174943/73146240"),
    -4: ("-255571/1404407808", "156430715/175550976"),
    -2: ("45173/1369297612800", "74862131/171162201600"),
    0: ("36097/56232488632320", "3748999/7029061079040"),
    1: ("23831/210871832371200", "876017/26358979046400"),
    3: ("4553/69773768064000", "-1256/105304870125"),
    5: ("424061/3881958732288000", "-1672/55749637125"),
    7: ("923549/3483809118720000", "-66896/850539335625"),
    9: ("8127882069959/9794709827950215168000", "-304138734083887/1224338728493776896000"),
}

# rows of the inverse coefficient matrix: K_j = (n1 A1 + n2 A2 + n3 A3 + n4 A4) / den
K_INVERSE_ROWS = (
    ((8432992, 5928, 152, -13), 22947840),
    ((-311728736, 940056, 24104, 4229), 2868480),
    ((762432, -1368, 16, 3), 2039808),
    ((286144, 456, -16, -1), 1105920),
)

# L(s+10, g20) L(s+9, g20) in units of <g20,g20>
G20_PAIR_TABLE = {
    -8: ("-479626345744384/1177605", 3),
    -6: ("38107606016/155601", 7),
    -4: ("802883584/1526175", 11),
    -2: ("1965682688/4426469775", 15),
    0: ("1479424/3447969525", 19),
    1: ("2323456/175846445775", 21),
    3: ("8388608/145073317764375", 25),
    5: ("16777216/34367988873684375", 29),
    7: ("2097152/436209089550609375", 33),
    9: ("63842269963/1305893808013068186412500", 37),
}


def _f(sign: int, num: dict, den: dict) -> Fraction:
    v = Fraction(sign)
    for p, e in num.items():
        v *= p**e
    for p, e in den.items():
        v /= p**e
    return v


# final table: (rational, pi power, printed numerical value)
MAIN_TABLE = {
    -8: (_f(-1, {2: 31, 17: 1, 11411: 1, 1207259: 1}, {3: 1, 5: 2, 7: 1, 11: 1, 13: 1, 61: 1}), 6, "-903525.807173"),
    -6: (_f(-1, {2: 26, 47: 1, 791797: 1}, {3: 6, 17: 1, 113: 1}), 12, "-14105.832863"),
    -4: (_f(1, {2: 24, 392033: 1}, {3: 5, 5: 3, 7: 1, 17: 1, 19: 1}), 18, "728.260808"),
    -2: (_f(-1, {2: 26, 479903: 1}, {3: 8, 5: 3, 7: 3, 13: 1, 17: 1, 157: 1}), 24, "-24.122802"),
    0: (_f(1, {2: 22, 5779: 1}, {3: 13, 5: 4, 7: 3, 11: 1, 13: 1}), 30, "3.485667"),
    1: (_f(1, {2: 25, 2269: 1}, {3: 14, 5: 4, 7: 3, 11: 2, 13: 1, 17: 1}), 34, "1.901053"),
    3: (_f(1, {2: 40}, {3: 16, 5: 6, 7: 4, 11: 3, 13: 2, 17: 1}), 42, "1.156624"),
    5: (_f(1, {2: 40}, {3: 20, 5: 8, 7: 6, 11: 1, 13: 3, 17: 1}), 50, "1.029466"),
    7: (_f(1, {2: 40}, {3: 23, 5: 10, 7: 6, 11: 2, 13: 2, 17: 2}), 58, "1.006025"),
    9: (
        _f(1, {2: 21, 9413: 1, 6782351: 1}, {3: 23, 5: 10, 7: 8, 11: 4, 13: 4, 17: 2, 19: 1, 61: 1}),
        66,
        "1.000909",
    ),
}

# printed q-expansions, coefficients a(1)..a(5)
G20_LISTINGS = {
    "first": (1, 456, 50652, -316352, 2377410),
    "second": (1, 456, 50652, -316352, -2377410),
}
NEWFORM_H1 = (1, -512, -13092, 262144, 6546750)
NEWFORM_H2 = (1, 512, -53028, 262144, -5556930)
G22_PRINTED = ("1/24", "1", "1", "4", "1", "6", "4")

DELTA_NORM = "0.000001035362056205680432094820996804"
G20_NORMS = {
    12: "0.000008265541531659702744699575969",
    14: "0.000008265541531659703390644766954",
    16: "0.000008265541531659703069998511729",
}

# F12 Fourier coefficients; Gram matrices N with entries in (1/2)Z
THETA_TABLE = (
    (((1, "1/2", "1/2"), ("1/2", 1, "1/2"), ("1/2", "1/2", 1)), 1),
    (((1, 0, 0), (0, 1, 0), (0, 0, 1)), 164),
    (((3, 0, "1/2"), (0, 1, "1/2"), ("1/2", "1/2", 1)), 1328),
    (((2, 0, 0), (0, 1, 0), (0, 0, 1)), -1008),
    (((2, 1, 1), (1, 2, 1), (1, 1, 2)), -131776),
    (((2, 0, 0), (0, 2, 0), (0, 0, 2)), -6816512),
)


def theta_targets() -> list[tuple[tuple[tuple[int, ...], ...], int]]:
    """Printed Gram classes as doubled integer matrices 2N, with their coefficients."""
    out = []
    for n, coeff in THETA_TABLE:
        doubled = tuple(tuple(int(2 * Fraction(x)) for x in row) for row in n)
        out.append((doubled, coeff))
    return out


def c_row(s: int) -> tuple[PiExact, ...]:
    return tuple(PiExact(_q(x), 4 * s) for x in C_TABLE[s])


def a_row(s: int) -> tuple[PiExact, ...]:
    return tuple(PiExact(_q(x), 4 * s) for x in A_TABLE[s])


def k_row(s: int) -> tuple[PiExact, ...]:
    return tuple(PiExact(_q(x), 4 * s) for x in K_TABLE[s])


def sym2_value(s: int) -> PiExact:
    r, p = SYM2_TABLE[s]
    return PiExact(r, 2 * p)


def g20_pair_value(s: int) -> PiExact:
    r, p = G20_PAIR_TABLE[s]
    return PiExact(_q(r), 2 * p)


def main_value(s: int) -> PiExact:
    r, p, _ = MAIN_TABLE[s]
    return PiExact(r, 2 * p)


def main_numeric(s: int) -> float:
    return float(MAIN_TABLE[s][2])
