"""Dense GF(2) linear algebra with rows packed into Python ints."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass


class InconsistentSystemError(ValueError):
    """The system m.x = rhs has no solution (as opposed to many solutions)."""


@dataclass(frozen=True)
class BitMatrix:
    """rows x ncols binary matrix; bit j of ``rows[r]`` is entry (r, j)."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        limit = 1 << self.ncols
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BitMatrix:
        ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, v in enumerate(row) if v & 1))
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def apply(self, x: Sequence[int]) -> list[int]:
        xv = sum(1 << j for j, v in enumerate(x) if v & 1)
        return [(r & xv).bit_count() & 1 for r in self.rows]


def solve_linear(m: BitMatrix, rhs: Sequence[int]) -> list[int]:
    """One solution of m.x = rhs over GF(2), free variables set to 0.

    Raises InconsistentSystemError when no solution exists; rank deficiency
    alone is not an error.
    """
    if len(rhs) != m.nrows:
        raise ValueError(f"rhs has {len(rhs)} entries for {m.nrows} rows")
    # augmented column lives at bit ncols
    aug = [r | ((b & 1) << m.ncols) for r, b in zip(m.rows, rhs)]
    pivots: list[int] = []
    row = 0
    for col in range(m.ncols):
        bit = 1 << col
        sel = next((i for i in range(row, len(aug)) if aug[i] & bit), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        for i in range(len(aug)):
            if i != row and aug[i] & bit:
                aug[i] ^= aug[row]
        pivots.append(col)
        row += 1
        if row == len(aug):
            break
    rhs_bit = 1 << m.ncols
    for r in aug[row:]:
        if r == rhs_bit:
            raise InconsistentSystemError("linear system is inconsistent")
    x = [0] * m.ncols
    for i, col in enumerate(pivots):
        x[col] = (aug[i] >> m.ncols) & 1
    return x


def rank(m: BitMatrix) -> int:
    rows = list(m.rows)
    r = 0
    for col in range(m.ncols):
        bit = 1 << col
        sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i] & bit:
                rows[i] ^= rows[r]
        r += 1
    return r
