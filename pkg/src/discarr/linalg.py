"""Exact rational linear algebra.

Every rank, determinant and nullspace computation in the package runs over
the rationals with no rounding, since each geometric predicate downstream is
a rank condition and a single rounding error flips a classification.
Scalars are `fractions.Fraction` (always stored in lowest terms with
positive denominator); matrices are immutable row-major grids of them.

Determinants and ranks go through fraction-free (Bareiss-style) elimination
on integer-scaled rows to keep intermediate operands small.  Reduced row
echelon form is the canonical normal form for subspaces: two row-equivalent
matrices produce identical `rref()` output, which makes 2-flats hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, str, Fraction]


def to_fraction(x: Scalar) -> Fraction:
    """Coerce an int, a "p/q" string, or a Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _scaled_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves rank)."""
    out = []
    for row in rows:
        mult = lcm(*(f.denominator for f in row)) if row else 1
        out.append([int(f * mult) for f in row])
    return out


def int_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination.

    Mutates nothing; rows with only zeros are skipped.  Each produced row is
    divided by its content so operands stay small in the hot loops.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    cols = len(work[0])
    rank = 0
    col = 0
    while rank < len(work) and col < cols:
        pivot = None
        for i in range(rank, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        piv_row = work[rank]
        piv = piv_row[col]
        for i in range(rank + 1, len(work)):
            row = work[i]
            head = row[col]
            if head:
                for j in range(col, cols):
                    row[j] = row[j] * piv - piv_row[j] * head
                g = 0
                for v in row:
                    g = gcd(g, v)
                if g > 1:
                    for j in range(cols):
                        row[j] //= g
        rank += 1
        col += 1
    return rank


def _bareiss_det(work: list[list[int]]) -> int:
    """Determinant of a square integer matrix, Bareiss fraction-free scheme."""
    n = len(work)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for i in range(k + 1, n):
                if work[i][k]:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = work[k][k]
    return sign * work[-1][-1]


def primitive_int_vector(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero positive."""
    mult = lcm(*(f.denominator for f in vec)) if vec else 1
    ints = [int(f * mult) for f in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class QMatrix:
    """Immutable dense matrix of exact rationals.

    Instances are hashable and safe to share between threads; all operations
    are pure functions returning new values.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]], cols: int | None = None) -> "QMatrix":
        data = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
        else:
            width = cols if cols is not None else 0
        if cols is not None and data and width != cols:
            raise ValueError(f"expected {cols} columns, got {width}")
        return cls(data, width)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "QMatrix":
        if not self.entries:
            return QMatrix(tuple(() for _ in range(self.cols)), 0)
        return QMatrix(tuple(zip(*self.entries)), self.rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int] | None = None) -> "QMatrix":
        cols = list(range(self.cols)) if col_idx is None else list(col_idx)
        data = tuple(tuple(self.entries[i][j] for j in cols) for i in row_idx)
        return QMatrix(data, len(cols))

    def vstack(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return QMatrix(self.entries + other.entries, self.cols)

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        data = tuple(a + b for a, b in zip(self.entries, other.entries))
        return QMatrix(data, self.cols + other.cols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ot = other.transpose().entries
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries
        )
        return QMatrix(data, other.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def rank(self) -> int:
        return int_rank(_scaled_int_rows(self.entries))

    def det(self) -> Fraction:
        """Exact determinant, permutation-parity sign convention."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        scale = Fraction(1)
        work = []
        for row in self.entries:
            mult = lcm(*(f.denominator for f in row)) if row else 1
            scale *= mult
            work.append([int(f * mult) for f in row])
        return Fraction(_bareiss_det(work), 1) / scale

    def rref(self) -> tuple["QMatrix", tuple[int, ...]]:
        """Canonical reduced row echelon form (zero rows dropped).

        Output depends only on the row space, so it serves as a normal form
        for subspace identity tests.
        """
        work = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, len(work)):
                if work[i][c]:
                    pivot = i
                    break
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv = work[r][c]
            work[r] = [x / inv for x in work[r]]
            for i in range(len(work)):
                if i != r and work[i][c]:
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == len(work):
                break
        data = tuple(tuple(row) for row in work[:r])
        return QMatrix(data, self.cols), tuple(pivots)

    def nullspace_basis(self) -> "QMatrix":
        """Canonical basis of the right nullspace, one row per free column.

        Derived from the reduced echelon form, so row-equivalent inputs (in
        particular row permutations) give identical output.  A full-rank
        square input yields a 0-row matrix.
        """
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        zero, one = Fraction(0), Fraction(1)
        rows = []
        for f in free:
            vec = [zero] * self.cols
            vec[f] = one
            for i, p in enumerate(pivots):
                vec[p] = -red.entries[i][f]
            rows.append(tuple(vec))
        return QMatrix(tuple(rows), self.cols)
