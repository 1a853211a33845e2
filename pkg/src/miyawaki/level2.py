"""Weight-20 cusp forms on Gamma_0(2).

The 4-dimensional space S_20(Gamma_0(2)) is generated as
(eta(z) eta(2z))^8 * M_12(Gamma_0(2)); the two newforms are the U_2
eigenvectors with eigenvalues -512 and +512.  All linear algebra is exact
(fraction-free Bareiss elimination on integer-scaled rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from miyawaki.exact import PiExact, PiExponentMismatch
from miyawaki.qexp import (
    QExpansion,
    delta_qexp,
    eisenstein,
    eta_qexp,
    g20_qexp,
    u_operator,
    v_operator,
)

NEWFORM_EIGENVALUES = (-512, 512)


class RankDeficiencyError(ArithmeticError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class EigenSolveError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra

Matrix = list[list[Fraction]]


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
    return out


def _bareiss(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int], int]:
    a = _integer_rows(rows)
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    swaps = 0
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        piv = a[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                a[i][j] = (piv * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, swaps


def bareiss_echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns)."""
    a, pivots, _ = _bareiss(rows)
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(_bareiss(rows)[1])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    scale = Fraction(1)
    for row in rows:
        scale /= lcm(*(Fraction(x).denominator for x in row))
    a, pivots, swaps = _bareiss(rows)
    if len(pivots) < n:
        return Fraction(0)
    # the final Bareiss pivot is the determinant of the integer-scaled matrix
    return (-1) ** swaps * Fraction(a[n - 1][n - 1]) * scale


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the rationals, built on the Bareiss pass."""
    ech, pivots = bareiss_echelon(rows)
    m = [[Fraction(x) for x in row] for row in ech[: len(pivots)]]
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        piv = m[i][c]
        m[i] = [x / piv for x in m[i]]
        for j in range(i):
            f = m[j][c]
            if f:
                m[j] = [x - f * y for x, y in zip(m[j], m[i])]
    return m, pivots


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Unique solution of a consistent (possibly overdetermined) linear system."""
    n_cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    m, pivots = rref(aug)
    if n_cols in pivots:
        raise SingularMatrixError("inconsistent linear system")
    if len(pivots) < n_cols:
        raise SingularMatrixError("linear system is underdetermined")
    return [m[i][-1] for i in range(n_cols)]


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in m]


def null_space(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n_cols = len(matrix[0])
    m, pivots = rref(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(v)
    return basis


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in matrix]


# ---------------------------------------------------------------------------
# the cusp space


def _combine(forms: Sequence[QExpansion], coords: Sequence[Fraction]) -> QExpansion:
    n = min(f.precision for f in forms)
    coeffs = tuple(
        sum((c * f.coeffs[i] for c, f in zip(coords, forms)), Fraction(0)) for i in range(n)
    )
    return QExpansion(coeffs, forms[0].weight, max(f.level for f in forms))


def coordinates(forms: Sequence[QExpansion], target: QExpansion, start: int = 1) -> list[Fraction]:
    """Exact coordinates of target in the span of forms, checked on every shared coefficient."""
    n = min([target.precision] + [f.precision for f in forms])
    matrix = [[f.coeffs[i] for f in forms] for i in range(start, n)]
    return solve(matrix, [target.coeffs[i] for i in range(start, n)])


def spanning_set(precision: int = 32) -> list[QExpansion]:
    """(eta(z)eta(2z))^8 times E_4(z)^3, E_4(2z)^3, Delta(z), Delta(2z)."""
    if precision < 16:
        raise ValueError("precision must be at least 16")
    eta = eta_qexp(precision)
    prod8 = (eta * v_operator(eta, 2).truncate(precision)) ** 8
    # restore the q^((1+2)*8/24) = q factor dropped from both etas
    eta8 = QExpansion((Fraction(0),) + prod8.coeffs[:-1], 8, 2)
    e4 = eisenstein(4, precision)
    e4cube = e4**3
    e4cube_2 = v_operator(e4, 2).truncate(precision) ** 3
    delta = delta_qexp(precision)
    delta_2 = v_operator(delta, 2).truncate(precision)
    forms = []
    for g in (e4cube, e4cube_2, delta, delta_2):
        f = eta8 * g
        forms.append(QExpansion(f.coeffs, 20, 2))
    if rank([[f.coeffs[i] for f in forms] for i in range(precision)]) != 4:
        raise RankDeficiencyError("spanning set does not have rank 4")
    return forms


def u2_matrix(forms: Sequence[QExpansion]) -> Matrix:
    """Matrix of U_2 on the span (column j = coordinates of U_2 forms[j])."""
    cols = [coordinates(forms, u_operator(f, 2)) for f in forms]
    n = len(forms)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def eigenform(forms: Sequence[QExpansion], matrix: Matrix, eigenvalue: int) -> QExpansion:
    n = len(forms)
    shifted = [[matrix[i][j] - (eigenvalue if i == j else 0) for j in range(n)] for i in range(n)]
    kernel = null_space(shifted)
    if len(kernel) != 1:
        raise EigenSolveError(f"eigenvalue {eigenvalue} has a {len(kernel)}-dimensional eigenspace")
    f = _combine(forms, kernel[0])
    if f.coeffs[1] == 0:
        raise EigenSolveError("eigenvector has vanishing a(1)")
    return f.scale(1 / f.coeffs[1])


@lru_cache(maxsize=8)
def newforms(precision: int = 32) -> tuple[QExpansion, QExpansion]:
    """The normalized newforms of weight 20 on Gamma_0(2) with U_2 eigenvalues -512, +512."""
    if precision < 8:
        raise ValueError("precision must be at least 8")
    forms = spanning_set(max(precision, 16))
    u = u2_matrix(forms)
    h1, h2 = (eigenform(forms, u, ev) for ev in NEWFORM_EIGENVALUES)
    return h1.truncate(precision), h2.truncate(precision)


@dataclass(frozen=True)
class FormBasis:
    """g20(z), g20(2z), h1, h2 with the matrix of their first four coefficients."""

    forms: tuple[QExpansion, ...]
    labels: tuple[str, ...]
    coefficient_matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def inverse_matrix(self) -> Matrix:
        return inverse(self.coefficient_matrix)


BASIS_LABELS = ("g20(z)", "g20(2z)", "h1", "h2")


@lru_cache(maxsize=4)
def form_basis(precision: int = 32) -> FormBasis:
    g = g20_qexp(precision)
    g2 = v_operator(g, 2).truncate(precision)
    h1, h2 = newforms(precision)
    forms = (g, g2, h1, h2)
    matrix = tuple(tuple(f.coeffs[i] for f in forms) for i in range(1, 5))
    if rank(matrix) != 4:
        raise SingularMatrixError("basis coefficient matrix is singular")
    return FormBasis(forms, BASIS_LABELS, matrix)


def _common_half_pi(values: Sequence[PiExact]) -> int:
    exps = {v.half_pi for v in values if not v.is_zero()}
    if len(exps) > 1:
        raise PiExponentMismatch(f"values carry different pi exponents: {sorted(exps)}")
    return exps.pop() if exps else 0


def solve_projection_coefficients(a_values: Sequence[PiExact], basis: FormBasis | None = None) -> tuple[PiExact, ...]:
    """K_1..K_4 with sum K_j (form j) having first coefficients a_values."""
    basis = basis or form_basis()
    half_pi = _common_half_pi(a_values)
    rhs = [v.coeff for v in a_values]
    ks = mat_vec(basis.inverse_matrix, rhs)
    return tuple(PiExact(k, half_pi) for k in ks)


# ---------------------------------------------------------------------------
# the full space M_20(Gamma_0(2)) = cusp forms + <E_20(z), E_20(2z)>

FULL_LABELS = BASIS_LABELS + ("E20(z)", "E20(2z)")


@lru_cache(maxsize=4)
def full_basis(precision: int = 32) -> tuple[QExpansion, ...]:
    e20 = eisenstein(20, precision)
    e20_2 = v_operator(e20, 2).truncate(precision)
    return form_basis(precision).forms + (e20, e20_2)


def decompose_weight20_level2(f: QExpansion, precision: int = 32) -> tuple[Fraction, ...]:
    """Coordinates of a weight-20 form on Gamma_0(2) in the basis FULL_LABELS.

    Every shared coefficient from a(0) on is used, so the result also certifies
    that f lies in M_20(Gamma_0(2)) to the available precision.
    """
    return tuple(coordinates(full_basis(precision), f, start=0))
