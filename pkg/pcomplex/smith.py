"""Exact sparse integer elimination: rank and invariant factors.

Entries are Python ints, so nothing overflows.  Unit pivots are taken first,
choosing the sparsest row, then the remaining block is reduced with pivots
of minimal absolute value until it is diagonal.
"""
from math import gcd
from typing import Dict, Iterable, List, Set, Tuple

import pcomplex.settings as settings
from pcomplex.exceptions import CapExceededError
from pcomplex.utils import progress


class SparseIntegerMatrix:
    def __init__(self, row_count: int, column_count: int):
        self.row_count = row_count
        self.column_count = column_count
        self.rows: Dict[int, Dict[int, int]] = {}
        self.cols: Dict[int, Set[int]] = {}

    @classmethod
    def from_entries(
        cls, row_count: int, column_count: int, entries: Iterable[Tuple[int, int, int]]
    ) -> "SparseIntegerMatrix":
        matrix = cls(row_count, column_count)
        for i, j, value in entries:
            matrix.add(i, j, value)
        limit = settings.cap("matrix")
        if matrix.nnz() > limit:
            raise CapExceededError("matrix", limit, needed=matrix.nnz(), module="smith")
        return matrix

    @classmethod
    def from_dense(cls, dense: List[List[int]]) -> "SparseIntegerMatrix":
        column_count = len(dense[0]) if dense else 0
        return cls.from_entries(
            len(dense),
            column_count,
            ((i, j, v) for i, row in enumerate(dense) for j, v in enumerate(row) if v),
        )

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def add(self, i: int, j: int, value: int):
        if not value:
            return
        row = self.rows.setdefault(i, {})
        new = row.get(j, 0) + value
        if new:
            row[j] = new
            self.cols.setdefault(j, set()).add(i)
        else:
            del row[j]
            self.cols[j].discard(i)
            if not row:
                del self.rows[i]
            if not self.cols[j]:
                del self.cols[j]

    def subtract_row_multiple(self, target: int, source: int, factor: int):
        """row[target] -= factor * row[source]"""
        if not factor:
            return
        for j, value in list(self.rows[source].items()):
            self.add(target, j, -factor * value)

    def subtract_column_multiple(self, target: int, source: int, factor: int):
        """col[target] -= factor * col[source]"""
        if not factor:
            return
        for i in list(self.cols.get(source, ())):
            self.add(i, target, -factor * self.rows[i][source])

    def remove(self, i: int, j: int):
        """Drop row i and column j, which must meet only at the pivot."""
        for c in self.rows.pop(i, {}):
            self.cols[c].discard(i)
            if not self.cols[c]:
                del self.cols[c]
        for r in self.cols.pop(j, set()):
            self.rows[r].pop(j, None)
            if not self.rows[r]:
                del self.rows[r]


def _unit_pivot_pass(matrix: SparseIntegerMatrix, diagonal: List[int]) -> bool:
    progressed = False
    for j in sorted(matrix.cols, key=lambda c: (len(matrix.cols[c]), c)):
        if j not in matrix.cols:
            continue
        units = [i for i in matrix.cols[j] if abs(matrix.rows[i][j]) == 1]
        if not units:
            continue
        i = min(units, key=lambda r: (len(matrix.rows[r]), r))
        unit = matrix.rows[i][j]
        for r in sorted(matrix.cols[j] - {i}):
            matrix.subtract_row_multiple(r, i, matrix.rows[r][j] * unit)
        # column j is now zero off the pivot; column operations would only
        # touch row i, so the row can be dropped as is
        matrix.remove(i, j)
        diagonal.append(1)
        progressed = True
    return progressed


def _general_pivot(matrix: SparseIntegerMatrix) -> Tuple[int, int]:
    return min(
        ((i, j) for i, row in matrix.rows.items() for j in row),
        key=lambda ij: (abs(matrix.rows[ij[0]][ij[1]]), ij),
    )


def _reduce_general(matrix: SparseIntegerMatrix, diagonal: List[int]):
    bar = progress(None, desc="smith normal form", total=len(matrix.rows))
    while matrix.rows:
        i, j = _general_pivot(matrix)
        a = matrix.rows[i][j]
        clean = True
        for r in sorted(matrix.cols[j] - {i}):
            matrix.subtract_row_multiple(r, i, matrix.rows[r][j] // a)
            if j in matrix.rows.get(r, {}):
                clean = False
        if not clean:
            continue
        for c in sorted(set(matrix.rows[i]) - {j}):
            matrix.subtract_column_multiple(c, j, matrix.rows[i][c] // a)
            if c in matrix.rows.get(i, {}):
                clean = False
        if not clean:
            continue
        matrix.remove(i, j)
        diagonal.append(abs(a))
        bar.update(1)
    bar.close()


def normalize_diagonal(diagonal: List[int]) -> List[int]:
    """Turn any diagonal form into invariant factors d1 | d2 | ... ."""
    units = [d for d in diagonal if d == 1]
    rest = sorted(d for d in diagonal if d != 1)
    for a in range(len(rest)):
        for b in range(a + 1, len(rest)):
            g = gcd(rest[a], rest[b])
            rest[a], rest[b] = g, rest[a] * rest[b] // g
    return units + sorted(rest)


def smith_diagonal(matrix: SparseIntegerMatrix) -> List[int]:
    """Non-zero invariant factors of the matrix (consumes it)."""
    diagonal: List[int] = []
    while _unit_pivot_pass(matrix, diagonal):
        pass
    _reduce_general(matrix, diagonal)
    return normalize_diagonal(diagonal)


def rank_and_torsion(matrix: SparseIntegerMatrix) -> Tuple[int, List[int]]:
    factors = smith_diagonal(matrix)
    return len(factors), [d for d in factors if d > 1]
