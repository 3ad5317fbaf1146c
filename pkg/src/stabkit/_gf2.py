"""Linear algebra over GF(2) on machine integers.

Vectors are Python ints used as bit vectors (bit j = coordinate j), so all
row operations are single XORs regardless of length.
"""

from __future__ import annotations


def parity(x: int) -> int:
    return x.bit_count() & 1


class RowBasis:
    """Incremental row-echelon basis, pivot = highest set bit of each row."""

    def __init__(self, rows: list[int] | None = None):
        self._pivots: dict[int, int] = {}
        for row in rows or []:
            self.insert(row)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, v: int) -> int:
        """Reduce v against the basis; 0 iff v lies in the span."""
        while v:
            pivot = v.bit_length() - 1
            row = self._pivots.get(pivot)
            if row is None:
                break
            v ^= row
        return v

    def insert(self, v: int) -> bool:
        """Add v to the basis. Returns True if v was independent."""
        v = self.reduce(v)
        if v == 0:
            return False
        self._pivots[v.bit_length() - 1] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def solve(rows: list[int], rhs: list[int], width: int) -> int | None:
    """Solve M v = rhs over GF(2), rows of M given as ints over `width` columns.

    Returns one particular solution as an int, or None if inconsistent.
    """
    # Gaussian elimination on [M | rhs].
    aug = [(row << 1) | (b & 1) for row, b in zip(rows, rhs)]
    pivots: dict[int, int] = {}
    for v in aug:
        while v >> 1:
            pivot = (v >> 1).bit_length() - 1
            if pivot not in pivots:
                pivots[pivot] = v
                v = 0
                break
            v ^= pivots[pivot]
        if v == 1:  # 0 = 1
            return None
    solution = 0
    # Each stored row has its pivot as highest column, so ascending order
    # guarantees every lower column is already assigned (or free = 0).
    for pivot in sorted(pivots):
        row = pivots[pivot]
        acc = row & 1
        acc ^= parity((row >> 1) & solution)
        if acc:
            solution |= 1 << pivot
    return solution
