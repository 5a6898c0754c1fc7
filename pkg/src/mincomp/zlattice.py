"""Exact integer linear algebra for full-rank lattices in Z^d.

A :class:`PeriodBasis` holds the period vectors u_1..u_d as the columns of a
square integer matrix.  :func:`quotient_structure` turns it into the finite
quotient Z^d/L via a Smith normal form ``S @ U @ T = diag(a)``: the residue of
``v`` is ``(S v)_i mod a_i`` on the coordinates with ``a_i > 1``.

Everything is plain Python ``int``; no floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, SingularBasis

Point = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


def as_point(v) -> Point:
    return tuple(int(x) for x in v)


def add(v: Point, w: Point) -> Point:
    return tuple(a + b for a, b in zip(v, w))


def sub(v: Point, w: Point) -> Point:
    return tuple(a - b for a, b in zip(v, w))


def scale(t: int, v: Point) -> Point:
    return tuple(t * a for a in v)


def _matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Point:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _inverse(m: Sequence[Sequence[int]]):
    """Rational inverse by Gauss-Jordan; returns rows of Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularBasis("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Return ``(diag, S, T)`` with ``S @ m @ T`` diagonal, ``diag[i] | diag[i+1]``.

    ``S`` and ``T`` are unimodular.  Diagonal entries are nonnegative.
    """
    n = len(m)
    cols = len(m[0]) if n else 0
    d = [list(row) for row in m]
    s = _identity(n)
    t = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    for k in range(min(n, cols)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(k, n) for j in range(k, cols)
                       if d[i][j] != 0]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(k, pi)
            swap_cols(k, pj)
            clean = True
            for i in range(k + 1, n):
                q = d[i][k] // d[k][k]
                if q:
                    d[i] = [a - q * b for a, b in zip(d[i], d[k])]
                    s[i] = [a - q * b for a, b in zip(s[i], s[k])]
                if d[i][k]:
                    clean = False
            for j in range(k + 1, cols):
                q = d[k][j] // d[k][k]
                if q:
                    for row in d:
                        row[j] -= q * row[k]
                    for row in t:
                        row[j] -= q * row[k]
                if d[k][j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(k + 1, n) for j in range(k + 1, cols)
                        if d[i][j] % d[k][k]), None)
            if bad is None:
                break
            # pull the offending row into row k and reduce again
            d[k] = [a + b for a, b in zip(d[k], d[bad])]
            s[k] = [a + b for a, b in zip(s[k], s[bad])]
        if d[k][k] < 0:
            d[k] = [-a for a in d[k]]
            s[k] = [-a for a in s[k]]
    diag = [d[i][i] for i in range(min(n, cols))]
    return diag, s, t


@dataclass(frozen=True)
class PeriodBasis:
    """Period vectors ``u_1..u_d`` of a full-rank lattice L in Z^d."""

    columns: Tuple[Point, ...]

    def __post_init__(self):
        cols = tuple(as_point(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        d = len(cols)
        if d == 0:
            raise DimensionMismatch("a basis needs at least one vector")
        if any(len(c) != d for c in cols):
            raise DimensionMismatch(f"expected {d} vectors of length {d}")
        if self.det == 0:
            raise SingularBasis(f"period vectors {cols} are linearly dependent")

    @classmethod
    def standard(cls, d: int, k: int = 1) -> "PeriodBasis":
        return cls(tuple(tuple(k * int(i == j) for j in range(d)) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.columns)

    @cached_property
    def matrix(self) -> Matrix:
        """Row-major matrix whose columns are the period vectors."""
        d = self.dim
        return tuple(tuple(self.columns[j][i] for j in range(d)) for i in range(d))

    @cached_property
    def det(self) -> int:
        return determinant(self.matrix)

    @cached_property
    def _adjugate(self) -> Matrix:
        inv = _inverse(self.matrix)
        return tuple(tuple(int(x * self.det) for x in row) for row in inv)

    def combine(self, gamma: Sequence[int]) -> Point:
        """``sum(gamma_i * u_i)``."""
        return _matvec(self.matrix, gamma)

    def rational_coords(self, v: Sequence[int]) -> Tuple[Fraction, ...]:
        if len(v) != self.dim:
            raise DimensionMismatch(f"point {tuple(v)} has wrong dimension")
        return tuple(Fraction(x, self.det) for x in _matvec(self._adjugate, v))

    def translate(self, v, gamma) -> Point:
        return add(v, self.combine(gamma))


def cone_coords(basis: PeriodBasis, v: Sequence[int]) -> Optional[Point]:
    """Coordinates of ``v`` w.r.t. the periods, or ``None`` when ``v`` is not in L."""
    if len(v) != basis.dim:
        raise DimensionMismatch(f"point {tuple(v)} is not in Z^{basis.dim}")
    det = basis.det
    out = []
    for x in _matvec(basis._adjugate, v):
        q, r = divmod(x, det)
        if r:
            return None
        out.append(q)
    return tuple(out)


def in_cone(basis: PeriodBasis, v: Sequence[int]) -> bool:
    g = cone_coords(basis, v)
    return g is not None and all(x >= 0 for x in g)


@dataclass(frozen=True)
class QuotientStructure:
    """The finite group Z^d/L together with canonical residue representatives."""

    basis: PeriodBasis
    invariant_factors: Tuple[int, ...]
    reps: Tuple[Point, ...]
    _snf_diag: Tuple[int, ...] = field(repr=False)
    _left: Matrix = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.reps)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def residue(self, v: Sequence[int]) -> Point:
        """Residue of ``v`` as an element of prod Z/a_i (invariant-factor coordinates)."""
        if len(v) != self.dim:
            raise DimensionMismatch(f"point {tuple(v)} is not in Z^{self.dim}")
        y = _matvec(self._left, v)
        return tuple(yi % a for yi, a in zip(y, self._snf_diag) if a > 1)

    def index(self, residue: Sequence[int]) -> int:
        idx = 0
        for r, a in zip(residue, self.invariant_factors):
            idx = idx * a + r
        return idx

    def residue_of_index(self, idx: int) -> Point:
        out = []
        for a in reversed(self.invariant_factors):
            idx, r = divmod(idx, a)
            out.append(r)
        return tuple(reversed(out))

    def rep(self, residue: Sequence[int]) -> Point:
        return self.reps[self.index(residue)]

    def residues(self):
        return list(itertools.product(*(range(a) for a in self.invariant_factors)))


def quotient_structure(basis: PeriodBasis) -> QuotientStructure:
    diag, s, _t = smith_normal_form(basis.matrix)
    if any(a == 0 for a in diag):
        raise SingularBasis("period lattice is not full rank")
    factors = tuple(a for a in diag if a > 1)
    s_inv = _inverse(s)
    s_inv = [[int(x) for x in row] for row in s_inv]
    reps = []
    for res in itertools.product(*(range(a) for a in factors)):
        it = iter(res)
        y = [next(it) if a > 1 else 0 for a in diag]
        reps.append(_matvec(s_inv, y))
    return QuotientStructure(
        basis=basis,
        invariant_factors=factors,
        reps=tuple(reps),
        _snf_diag=tuple(diag),
        _left=tuple(tuple(row) for row in s),
    )


def project(q: QuotientStructure, v: Sequence[int]) -> int:
    """Index into ``q.reps`` of the representative congruent to ``v`` mod L."""
    return q.index(q.residue(v))
