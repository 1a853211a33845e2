"""Fourier coefficients of Miyawaki's degree-3 theta series on E8.

Vectors are stored with doubled coordinates, so every quantity is an integer:
a doubled vector d has all entries of one parity, sum(d) = 0 mod 4, and
<v, v> = sum(d_i^2)/4.  The coefficient at a Gram class is

    sum over ordered triples with (<v_i, v_j>) = G of Re(det(Q (v1, v2, v3))^8)

where Q picks the complex coordinates x_i + i x_(i+3), i = 1, 2, 3.  With
doubled coordinates the determinant is 8 times the true one, so raw sums are
divided by 2^24 once at the end.
"""

from __future__ import annotations

import multiprocessing
import os
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_NORM = 8
DET_SCALE = 2**24


class NormCapExceeded(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class GramFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeVector:
    doubled: tuple[int, ...]

    def __post_init__(self):
        d = self.doubled
        if len(d) != 8:
            raise ValueError("E8 vectors have eight coordinates")
        if len({x % 2 for x in d}) != 1 or sum(d) % 4:
            raise ValueError(f"{d} is not a doubled E8 vector")

    @classmethod
    def from_coordinates(cls, coords: Sequence) -> "LatticeVector":
        return cls(tuple(int(2 * Fraction(x)) for x in coords))

    @property
    def norm2x(self) -> int:
        """sum of squared doubled coordinates, i.e. 4 <v, v>."""
        return sum(x * x for x in self.doubled)

    @property
    def norm(self) -> Fraction:
        return Fraction(self.norm2x, 4)

    def dot4(self, other: "LatticeVector") -> int:
        """4 <v, w>."""
        return sum(x * y for x, y in zip(self.doubled, other.doubled))


@dataclass(frozen=True)
class GramTarget:
    """Doubled Gram matrix 2N = (<v_i, v_j>)."""

    gram: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        g = self.gram
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise GramFormatError("Gram target must be 3x3")
        if any(g[i][j] != g[j][i] for i in range(3) for j in range(3)):
            raise GramFormatError("Gram target must be symmetric")
        if any(g[i][i] % 2 for i in range(3)):
            raise GramFormatError("diagonal of the doubled Gram matrix must be even")

    @property
    def half(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, 2) for x in row) for row in self.gram)

    def is_positive_definite(self) -> bool:
        g = self.gram
        m1 = g[0][0]
        m2 = g[0][0] * g[1][1] - g[0][1] ** 2
        m3 = (
            g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
        )
        return m1 > 0 and m2 > 0 and m3 > 0

    def permuted(self, perm: Sequence[int]) -> "GramTarget":
        return GramTarget(tuple(tuple(self.gram[perm[i]][perm[j]] for j in range(3)) for i in range(3)))


def parse_gram(spec: str, mode: str = "doubled") -> GramTarget:
    """Parse "a,b,c;b,d,e;c,e,f" as the doubled Gram 2N or, in mode 'half', as N itself."""
    try:
        rows = [[Fraction(x.strip()) for x in row.split(",")] for row in spec.strip().split(";")]
    except (ValueError, ZeroDivisionError) as exc:
        raise GramFormatError(f"cannot parse Gram matrix {spec!r}") from exc
    if mode == "half":
        rows = [[2 * x for x in row] for row in rows]
    elif mode != "doubled":
        raise GramFormatError(f"unknown Gram mode {mode!r}")
    if any(x.denominator != 1 for row in rows for x in row):
        raise GramFormatError("doubled Gram entries must be integers")
    return GramTarget(tuple(tuple(int(x) for x in row) for row in rows))


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _vector_array(norm: int) -> np.ndarray:
    if norm % 2 or norm <= 0:
        raise ValueError("E8 norms are even and positive")
    if norm > MAX_NORM:
        raise NormCapExceeded(f"norm {norm} above the cap {MAX_NORM}")
    target = 4 * norm
    out: list[tuple[int, ...]] = []
    bound = int(target**0.5)
    for parity in (0, 1):
        values = [x for x in range(-bound, bound + 1) if x % 2 == parity]

        def rec(prefix, remaining):
            if len(prefix) == 8:
                if remaining == 0 and sum(prefix) % 4 == 0:
                    out.append(tuple(prefix))
                return
            # the remaining coordinates each contribute at least parity^2
            floor = (7 - len(prefix)) * parity
            for x in values:
                if x * x + floor <= remaining:
                    rec(prefix + [x], remaining - x * x)

        rec([], target)
    arr = np.array(sorted(out), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def enumerate_vectors(norm: int) -> list[LatticeVector]:
    """All E8 vectors with <v, v> = norm."""
    return [LatticeVector(tuple(int(x) for x in row)) for row in _vector_array(norm)]


def _gaussian_det8_real(re: int, im: int) -> int:
    a, b = 1, 0
    for _ in range(8):
        a, b = a * re - b * im, a * im + b * re
    return a


def _complex_columns(d: Sequence[int]) -> list[tuple[int, int]]:
    return [(d[i], d[i + 3]) for i in range(3)]


def _gdet3(c1, c2, c3) -> tuple[int, int]:
    def mul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def sub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    def add(x, y):
        return (x[0] + y[0], x[1] + y[1])

    m0 = sub(mul(c2[1], c3[2]), mul(c2[2], c3[1]))
    m1 = sub(mul(c2[0], c3[2]), mul(c2[2], c3[0]))
    m2 = sub(mul(c2[0], c3[1]), mul(c2[1], c3[0]))
    return add(sub(mul(c1[0], m0), mul(c1[1], m1)), mul(c1[2], m2))


def spherical_weight(v1: LatticeVector, v2: LatticeVector, v3: LatticeVector) -> Fraction:
    """Re(det(Q (v1, v2, v3))^8) exactly."""
    re, im = _gdet3(*(_complex_columns(v.doubled) for v in (v1, v2, v3)))
    return Fraction(_gaussian_det8_real(re, im), DET_SCALE)


# ---------------------------------------------------------------------------
# coefficient sums

_STATE: dict = {}


def _init_worker(gram):
    _STATE.clear()
    _STATE.update(_prepare(gram))


def _prepare(gram) -> dict:
    a = _vector_array(gram[0][0])
    b = _vector_array(gram[1][1])
    c = _vector_array(gram[2][2])
    return {"gram": gram, "a": a, "b": b, "c": c, "bc": b @ c.T}


def _complex(arr: np.ndarray):
    return arr[:, 0:3], arr[:, 3:6]


def _chunk_counts(bounds: tuple[int, int]) -> dict[tuple[int, int], int]:
    """Histogram of the doubled determinant over triples with v1 in a[lo:hi]."""
    st = _STATE
    gram, a, b, c, bc = st["gram"], st["a"], st["b"], st["c"], st["bc"]
    lo, hi = bounds
    t01, t02, t12 = 4 * gram[0][1], 4 * gram[0][2], 4 * gram[1][2]
    dots_b = a[lo:hi] @ b.T
    dots_c = a[lo:hi] @ c.T
    counts: Counter = Counter()
    # Hadamard: |det| <= product of the column lengths sqrt(4 g_ii); doubled for margin
    off = int(np.prod([np.sqrt(4 * gram[i][i] * 2) for i in range(3)])) + 1
    width = 2 * off + 1
    b_re, b_im = _complex(b)
    c_re, c_im = _complex(c)
    for row in range(hi - lo):
        j = np.flatnonzero(dots_b[row] == t01)
        if not len(j):
            continue
        l = np.flatnonzero(dots_c[row] == t02)
        if not len(l):
            continue
        jj, ll = np.nonzero(bc[np.ix_(j, l)] == t12)
        if not len(jj):
            continue
        bj, cl = j[jj], l[ll]
        v = a[lo + row]
        xr, xi = v[0:3], v[3:6]
        yr, yi = b_re[bj], b_im[bj]
        zr, zi = c_re[cl], c_im[cl]

        def minor(p, q):
            # (y_p z_q - y_q z_p) as Gaussian integers
            rr = yr[:, p] * zr[:, q] - yi[:, p] * zi[:, q] - (yr[:, q] * zr[:, p] - yi[:, q] * zi[:, p])
            ii = yr[:, p] * zi[:, q] + yi[:, p] * zr[:, q] - (yr[:, q] * zi[:, p] + yi[:, q] * zr[:, p])
            return rr, ii

        det_r = np.zeros(len(bj), dtype=np.int64)
        det_i = np.zeros(len(bj), dtype=np.int64)
        for idx, (p, q), sign in ((0, (1, 2), 1), (1, (0, 2), -1), (2, (0, 1), 1)):
            mr, mi = minor(p, q)
            det_r += sign * (xr[idx] * mr - xi[idx] * mi)
            det_i += sign * (xr[idx] * mi + xi[idx] * mr)
        keys, mult = np.unique((det_r + off) * width + (det_i + off), return_counts=True)
        for key, m in zip(keys.tolist(), mult.tolist()):
            counts[(key // width - off, key % width - off)] += m
    return dict(counts)


@dataclass(frozen=True)
class ThetaResult:
    target: GramTarget
    raw: Fraction
    triples: int
    seconds: float


def _chunks(n: int, size: int) -> list[tuple[int, int]]:
    return [(i, min(n, i + size)) for i in range(0, n, size)]


def fourier_coefficient(
    target: GramTarget | str,
    threads: int | None = None,
    budget: float | None = None,
    chunk: int = 256,
) -> ThetaResult:
    """Unnormalized coefficient at the doubled Gram target (exact)."""
    if isinstance(target, str):
        target = parse_gram(target)
    start = time.monotonic()
    gram = target.gram
    if any(gram[i][i] > 6 for i in range(3)):
        raise NormCapExceeded("diagonal norms above 6 are not supported")
    if any(gram[i][i] <= 0 for i in range(3)) or not _semidefinite_minors(gram):
        return ThetaResult(target, Fraction(0), 0, 0.0)
    n = len(_vector_array(gram[0][0]))
    parts = _chunks(n, chunk)
    threads = threads or os.cpu_count() or 1
    results: list[dict] = []
    if threads <= 1:
        _init_worker(gram)
        for p in parts:
            results.append(_chunk_counts(p))
            _check_budget(start, budget)
    else:
        ctx = multiprocessing.get_context("fork" if "fork" in multiprocessing.get_all_start_methods() else "spawn")
        with ctx.Pool(threads, initializer=_init_worker, initargs=(gram,)) as pool:
            # imap preserves submission order, so the merge below is deterministic
            for r in pool.imap(_chunk_counts, parts):
                results.append(r)
                _check_budget(start, budget)
    total = Counter()
    for r in results:
        total.update(r)
    raw = sum(m * _gaussian_det8_real(x, y) for (x, y), m in sorted(total.items()))
    triples = sum(total.values())
    return ThetaResult(target, Fraction(raw, DET_SCALE), triples, time.monotonic() - start)


def _semidefinite_minors(g) -> bool:
    # a Gram matrix of real vectors has nonnegative principal minors
    for i in range(3):
        for j in range(i + 1, 3):
            if g[i][i] * g[j][j] - g[i][j] ** 2 < 0:
                return False
    g3 = (
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] ** 2)
        - g[0][1] * (g[0][1] * g[2][2] - g[1][2] * g[0][2])
        + g[0][2] * (g[0][1] * g[1][2] - g[1][1] * g[0][2])
    )
    return g3 >= 0


def _check_budget(start: float, budget: float | None):
    if budget is not None and time.monotonic() - start > budget:
        raise BudgetExceeded(f"theta enumeration exceeded {budget} s")


MINIMAL_TARGET = GramTarget(((2, 1, 1), (1, 2, 1), (1, 1, 2)))


@lru_cache(maxsize=1)
def _minimal_raw() -> Fraction:
    return fourier_coefficient(MINIMAL_TARGET, threads=1).raw


def normalized_coefficient(target: GramTarget | str, threads: int | None = None, budget: float | None = None) -> Fraction:
    """Coefficient divided by the coefficient at the minimal class."""
    return fourier_coefficient(target, threads, budget).raw / _minimal_raw()
