"""Exact rational vectors and dense matrices.

Scalars are `fractions.Fraction`, which already guarantees the canonical
form relied on everywhere else (always reduced, positive denominator,
zero is 0/1).  Integer vectors are plain tuples of ints.  `RatMatrix` is
an immutable dense matrix of Fractions with exact rank / determinant /
inverse / solve by Gaussian elimination.  Pivoting is deterministic: the
first nonzero entry in column order.  Echelon-derived results are
therefore reproducible run to run.

Everything here is a pure function on immutable values; nothing mutates
shared state.  No floats, no sparse formats, no basis reduction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


class Singular(ValueError):
    """Matrix has no inverse."""


class ZeroVector(ValueError):
    """Operation undefined on the zero vector."""


class NoSolution(ValueError):
    """Linear system is inconsistent or has no unique solution."""


def _frac_row(row: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in row)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def vec_add(a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def vec_sub(a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def vec_scale(c, a: Sequence) -> tuple[Fraction, ...]:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in a)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries, keeping direction.

    (3, -6) -> (1, -2); (-3, 0) -> (-1, 0).  Raises ZeroVector on 0.
    """
    g = 0
    for x in v:
        if x != int(x):
            raise ValueError(f"primitive() needs integer entries, got {v!r}")
        g = math.gcd(g, abs(int(x)))
    if g == 0:
        raise ZeroVector("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(_frac_row(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows)) if self.rows else RatMatrix([])

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"RatMatrix[{body}]"

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().rows
        return RatMatrix([[dot(r, c) for c in cols] for r in self.rows])

    __matmul__ = matmul

    def rank(self) -> int:
        """Exact rank by forward elimination, first-nonzero pivoting."""
        m = [list(r) for r in self.rows]
        piv = 0
        for c in range(self.ncols):
            hit = next((r for r in range(piv, self.nrows) if m[r][c] != 0), None)
            if hit is None:
                continue
            m[piv], m[hit] = m[hit], m[piv]
            prow = m[piv]
            for r in range(piv + 1, self.nrows):
                if m[r][c]:
                    f = m[r][c] / prow[c]
                    mr = m[r]
                    for cc in range(c, self.ncols):
                        if prow[cc]:
                            mr[cc] -= f * prow[cc]
            piv += 1
            if piv == self.nrows:
                break
        return piv

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant needs a square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        sign = 1
        out = Fraction(1)
        for c in range(n):
            hit = next((r for r in range(c, n) if m[r][c] != 0), None)
            if hit is None:
                return Fraction(0)
            if hit != c:
                m[c], m[hit] = m[hit], m[c]
                sign = -sign
            out *= m[c][c]
            for r in range(c + 1, n):
                if m[r][c]:
                    f = m[r][c] / m[c][c]
                    for cc in range(c, n):
                        m[r][cc] -= f * m[c][cc]
        return sign * out

    def inverse(self) -> "RatMatrix":
        """Exact inverse by Gauss-Jordan.  Raises Singular."""
        if self.nrows != self.ncols:
            raise Singular("inverse needs a square matrix")
        n = self.nrows
        m = [list(r) + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.rows)]
        for c in range(n):
            hit = next((r for r in range(c, n) if m[r][c] != 0), None)
            if hit is None:
                raise Singular(f"matrix is singular (no pivot in column {c})")
            m[c], m[hit] = m[hit], m[c]
            inv = 1 / m[c][c]
            m[c] = [x * inv for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return RatMatrix([row[n:] for row in m])


def solve(matrix: RatMatrix, rhs: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of matrix @ x = rhs.

    The system may be overdetermined; raises NoSolution when it is
    inconsistent or the solution is not unique.
    """
    b = _frac_row(rhs)
    if len(b) != matrix.nrows:
        raise ValueError("rhs length mismatch")
    nr, nc = matrix.nrows, matrix.ncols
    m = [list(r) + [b[i]] for i, r in enumerate(matrix.rows)]
    pivots: list[int] = []
    piv = 0
    for c in range(nc):
        hit = next((r for r in range(piv, nr) if m[r][c] != 0), None)
        if hit is None:
            continue
        m[piv], m[hit] = m[hit], m[piv]
        prow = m[piv]
        for r in range(piv + 1, nr):
            if m[r][c]:
                f = m[r][c] / prow[c]
                mr = m[r]
                for cc in range(c, nc + 1):
                    if prow[cc]:
                        mr[cc] -= f * prow[cc]
        pivots.append(c)
        piv += 1
        if piv == nr:
            break
    if any(m[r][nc] != 0 for r in range(piv, nr)):
        raise NoSolution("inconsistent linear system")
    if len(pivots) < nc:
        raise NoSolution("solution is not unique")
    x = [Fraction(0)] * nc
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        acc = m[i][nc] - sum((m[i][j] * x[j] for j in range(c + 1, nc)), Fraction(0))
        x[c] = acc / m[i][c]
    return tuple(x)


class RowSpan:
    """Incrementally built row space with exact membership tests.

    Rows are kept forward-eliminated and appended in insertion order, so
    prefixes of the internal row list are valid spans of earlier inserts.
    """

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[Fraction, ...]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence, upto: int | None = None) -> tuple[Fraction, ...]:
        """Remainder of vec modulo the span of the first `upto` rows."""
        v = [Fraction(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        n = self.rank if upto is None else upto
        for row, p in zip(self.rows[:n], self.pivots[:n]):
            if v[p]:
                f = v[p]  # rows are normalized to leading coefficient 1
                for j in range(p, self.ncols):
                    if row[j]:
                        v[j] -= f * row[j]
        return tuple(v)

    def add(self, vec: Sequence) -> bool:
        """Insert vec; True iff it enlarged the span."""
        v = self.reduce(vec)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        lead = v[p]
        self.rows.append(tuple(x / lead for x in v))
        self.pivots.append(p)
        return True
