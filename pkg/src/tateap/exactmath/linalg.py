"""Dense matrices over the rationals and exact linear solving."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import UsageError


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix.  Entries are usually ``Fraction``; ``det_poly``
    also accepts polynomial entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise UsageError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], scalar=Fraction) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise UsageError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise UsageError("ragged rows")
        conv = scalar if scalar is not None else (lambda v: v)
        return cls(len(rows), ncols, tuple(conv(v) for r in rows for v in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def map(self, fn) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(fn(v) for v in self.entries))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


class LinearKind(str, enum.Enum):
    UNIQUE = "Unique"
    FAMILY = "Family"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class LinearOutcome:
    kind: LinearKind
    rank: int
    # Unique: the solution.  Family: a particular solution with every free
    # variable set to zero.  Inconsistent: None.
    solution: tuple | None = None
    free_count: int = 0


def _echelon(aug: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduced row echelon form in place over the first ``ncols`` columns.

    The pivot is the first nonzero entry in the column; returns pivot columns.
    """
    nrows = len(aug)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: Matrix) -> int:
    return len(_echelon(m.to_rows(), m.cols))


def solve_linear(m: Matrix, rhs: Sequence) -> LinearOutcome:
    """Classify and solve ``m @ x = rhs`` exactly.

    >>> m = Matrix.from_rows([[1, 0], [0, 1]])
    >>> solve_linear(m, [5, 7]).solution
    (Fraction(5, 1), Fraction(7, 1))
    """
    if len(rhs) != m.rows:
        raise UsageError(f"rhs has {len(rhs)} entries, matrix has {m.rows} rows")
    aug = [list(m.row(i)) + [Fraction(rhs[i])] for i in range(m.rows)]
    pivots = _echelon(aug, m.cols)
    rk = len(pivots)
    if any(aug[i][m.cols] != 0 for i in range(rk, m.rows)):
        return LinearOutcome(LinearKind.INCONSISTENT, rk)
    x = [Fraction(0)] * m.cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][m.cols]
    if rk == m.cols:
        return LinearOutcome(LinearKind.UNIQUE, rk, tuple(x))
    return LinearOutcome(LinearKind.FAMILY, rk, tuple(x), m.cols - rk)


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    if not m.is_square:
        raise UsageError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    a = m.to_rows()
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return det


def cofactor_determinant(m: Matrix, zero=None):
    """Laplace expansion along rows, memoized on the set of used columns.

    Works for any commutative ring whose elements support ``+``, ``-``
    and ``*`` (rationals, polynomials).
    """
    if not m.is_square:
        raise UsageError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if zero is None:
        zero = m.entries[0] - m.entries[0]
    memo: dict[int, object] = {}

    def minor(row: int, used: int):
        if row == n:
            return zero + 1
        if used in memo:
            return memo[used]
        total = zero
        sign = 1
        for c in range(n):
            if used >> c & 1:
                continue
            e = m[row, c]
            if e != 0:
                term = e * minor(row + 1, used | (1 << c))
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[used] = total
        return total

    return minor(0, 0)
