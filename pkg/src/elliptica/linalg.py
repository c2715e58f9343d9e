"""Exact rational linear algebra.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator, no rounding anywhere).  Matrices are stored sparsely by
(row, col) so the layouts produced from canonical monomial bases are
bit-reproducible.  Rank uses fraction-free (Bareiss) elimination on a
denominator-cleared copy; kernels and solves use exact Gauss-Jordan.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import CompositionNotZero, NotASubspace

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


class QMatrix:
    """Immutable sparse matrix over Q with fixed dimensions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                f = Fraction(v)
                if f:
                    if not (0 <= r < rows and 0 <= c < cols):
                        raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
                    clean[(r, c)] = f
        self.entries = clean

    @classmethod
    def from_rows(cls, rowdata: Sequence[Sequence]) -> "QMatrix":
        rows = len(rowdata)
        cols = len(rowdata[0]) if rows else 0
        ent = {}
        for r, row in enumerate(rowdata):
            for c, v in enumerate(row):
                f = Fraction(v)
                if f:
                    ent[(r, c)] = f
        return cls(rows, cols, ent)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "QMatrix":
        ent = {}
        for c, col in enumerate(columns):
            for r, v in enumerate(col):
                f = Fraction(v)
                if f:
                    ent[(r, c)] = f
        return cls(nrows, len(columns), ent)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {(i, i): _ONE for i in range(n)})

    def entry(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), _ZERO)

    def column(self, c: int) -> Vector:
        return tuple(self.entries.get((r, c), _ZERO) for r in range(self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(c) for c in range(self.cols)]

    def row(self, r: int) -> Vector:
        return tuple(self.entries.get((r, c), _ZERO) for c in range(self.cols))

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       {(c, r): v for (r, c), v in self.entries.items()})

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        by_row: dict[int, dict[int, Fraction]] = {}
        for (r, k), v in self.entries.items():
            by_row.setdefault(r, {})[k] = v
        by_k: dict[int, dict[int, Fraction]] = {}
        for (k, c), v in other.entries.items():
            by_k.setdefault(k, {})[c] = v
        ent: dict[tuple[int, int], Fraction] = {}
        for r, krow in by_row.items():
            for k, v in krow.items():
                for c, w in by_k.get(k, {}).items():
                    key = (r, c)
                    ent[key] = ent.get(key, _ZERO) + v * w
        return QMatrix(self.rows, other.cols, ent)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        out = [_ZERO] * self.rows
        for (r, c), a in self.entries.items():
            if v[c]:
                out[r] += a * v[c]
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def rank(m: QMatrix) -> int:
    """Rank over Q by fraction-free Bareiss elimination with full pivoting."""
    # Clear denominators row by row; rank is scale invariant.
    dense: list[list[int]] = []
    for r in range(m.rows):
        row = [m.entry(r, c) for c in range(m.cols)]
        if any(row):
            l = 1
            for v in row:
                if v:
                    l = l * v.denominator // gcd(l, v.denominator)
            dense.append([int(v * l) for v in row])
    nrows, ncols = len(dense), m.cols
    rk = 0
    prev = 1
    used_cols: set[int] = set()
    while True:
        # Full pivoting: smallest nonzero magnitude bounds entry growth.
        pivot = None
        for r in range(rk, nrows):
            for c in range(ncols):
                if c in used_cols:
                    continue
                v = dense[r][c]
                if v and (pivot is None or abs(v) < abs(pivot[2])):
                    pivot = (r, c, v)
        if pivot is None:
            return rk
        pr, pc, pv = pivot
        dense[rk], dense[pr] = dense[pr], dense[rk]
        prow = dense[rk]
        for r in range(rk + 1, nrows):
            vr = dense[r][pc]
            row = dense[r]
            for c in range(ncols):
                if c in used_cols:
                    continue
                row[c] = (row[c] * pv - vr * prow[c]) // prev
        used_cols.add(pc)
        prev = pv
        rk += 1
        if rk == nrows:
            return rk


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def kernel_basis(m: QMatrix) -> list[Vector]:
    """Basis of ker(m); len == cols - rank, vectors satisfy m.v = 0."""
    rows = [[m.entry(r, c) for c in range(m.cols)] for r in range(m.rows)]
    rows, pivots = _rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[free] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


def solve(m: QMatrix, rhs: Sequence[Fraction]) -> Vector | None:
    """One solution of m.x = rhs, or None if inconsistent."""
    rows = [[m.entry(r, c) for c in range(m.cols)] + [Fraction(rhs[r])]
            for r in range(m.rows)]
    if not rows:
        return zero_vector(m.cols)
    rows, pivots = _rref(rows)
    for i, pc in enumerate(pivots):
        if pc == m.cols:  # pivot in the augmented column
            return None
    x = [_ZERO] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.cols]
    return tuple(x)


def homology_dim(d_out: QMatrix, d_in: QMatrix) -> int:
    """dim(ker d_out / im d_in).  Requires d_out . d_in = 0."""
    if d_out.cols != d_in.rows:
        raise ValueError("chain spaces do not line up")
    if not d_out.matmul(d_in).is_zero():
        raise CompositionNotZero("d_out . d_in != 0")
    return (d_out.cols - rank(d_out)) - rank(d_in)


class Span:
    """Incremental echelonized span of vectors, with coordinate tracking.

    ``add`` accepts a vector and reports whether it enlarged the span; the
    accepted vectors form the span's basis.  ``express`` writes a vector as
    a combination of the accepted basis vectors (None if outside the span).
    """

    def __init__(self, dim: int):
        self.dim = dim
        # parallel lists: reduced row, its pivot column, combo over basis
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []
        self._combos: list[list[Fraction]] = []
        self.basis_count = 0

    def _reduce(self, v: Sequence[Fraction]):
        w = list(v)
        combo = [_ZERO] * self.basis_count
        for row, pc, rc in zip(self._rows, self._pivots, self._combos):
            f = w[pc]
            if f:
                for j in range(self.dim):
                    w[j] -= f * row[j]
                for j, c in enumerate(rc):
                    combo[j] -= f * c
        return w, combo

    def add(self, v: Sequence[Fraction]) -> bool:
        w, combo = self._reduce(v)
        pc = next((j for j in range(self.dim) if w[j]), None)
        if pc is None:
            return False
        inv = 1 / w[pc]
        w = [x * inv for x in w]
        combo = [x * inv for x in combo]
        combo.append(inv)
        # new basis vector: pad existing combos
        for rc in self._combos:
            rc.append(_ZERO)
        self._rows.append(w)
        self._pivots.append(pc)
        self._combos.append(combo)
        self.basis_count += 1
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        w, _ = self._reduce(v)
        return not any(w)

    def express(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients over the accepted basis, or None if v is outside."""
        w, combo = self._reduce(v)
        if any(w):
            return None
        return tuple(-c for c in combo)

    @property
    def rank(self) -> int:
        return self.basis_count


def independent_subset(vectors: Sequence[Sequence[Fraction]],
                       dim: int) -> list[Vector]:
    """Greedy maximal independent subset, in input order (deterministic)."""
    span = Span(dim)
    return [tuple(v) for v in vectors if span.add(v)]


def quotient_representatives(cycles: Sequence[Sequence[Fraction]],
                             boundaries: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Cycle vectors complementing span(boundaries) inside span(cycles)."""
    if cycles:
        dim = len(cycles[0])
    elif boundaries:
        dim = len(boundaries[0])
    else:
        return []
    cycle_span = Span(dim)
    for z in cycles:
        cycle_span.add(z)
    span = Span(dim)
    for b in boundaries:
        if not cycle_span.contains(b):
            raise NotASubspace("boundary vector outside span of cycles")
        span.add(b)
    return [tuple(z) for z in cycles if span.add(z)]
