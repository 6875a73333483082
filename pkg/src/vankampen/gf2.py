"""Exact linear algebra: bit-packed GF(2) matrices and integer Smith normal form.

GF(2) rows are Python ints used as bitmasks (bit j = column j), so row
elimination is a single xor per row.  Pivoting is deterministic: lowest
column index first, lowest row index as tie-break, which makes solve and
kernel_basis reproducible across runs.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def bits_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_from_bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Gf2Matrix:
    """Dense GF(2) matrix with rows stored as int bitmasks."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = [bits_from_indices(j for j, x in enumerate(r) if x & 1) for r in rows]
        return cls(len(packed), ncols, packed)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def mat_vec(self, x: int) -> int:
        """Matrix-vector product over GF(2); x is a column bitmask."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= (bin(row & x).count("1") & 1) << i
        return out

    def _eliminate(self, extra_bits: int = 0) -> tuple[list[int], list[tuple[int, int]]]:
        """Row-reduce (optionally with augmented columns above bit ncols).

        Returns (reduced rows, pivot list of (row, col)); the reduction is a
        full reduced echelon form over the first ncols columns.
        """
        work = self.rows[:]
        pivots: list[tuple[int, int]] = []
        rank = 0
        for col in range(self.ncols):
            bit = 1 << col
            pivot_row = None
            for r in range(rank, len(work)):
                if work[r] & bit:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            work[rank], work[pivot_row] = work[pivot_row], work[rank]
            for r in range(len(work)):
                if r != rank and (work[r] & bit):
                    work[r] ^= work[rank]
            pivots.append((rank, col))
            rank += 1
            if rank == len(work):
                break
        return work, pivots

    def rank(self) -> int:
        _, pivots = self._eliminate()
        return len(pivots)

    def solve(self, b: int | Iterable[int]) -> int | None:
        """Some x with A x = b over GF(2), or None; deterministic choice.

        b may be a bitmask over rows or an iterable of 0/1 entries.  Free
        variables are set to 0, so the result is the unique solution with
        support inside the pivot columns.
        """
        if not isinstance(b, int):
            b = bits_from_indices(i for i, x in enumerate(b) if x & 1)
        aug_bit = 1 << self.ncols
        augmented = Gf2Matrix(
            self.nrows,
            self.ncols + 1,
            [row | (aug_bit if (b >> i) & 1 else 0) for i, row in enumerate(self.rows)],
        )
        work, pivots = Gf2Matrix(self.nrows, self.ncols, augmented.rows)._eliminate()
        pivot_rows = {r for r, _ in pivots}
        for r, row in enumerate(work):
            if r not in pivot_rows and (row & aug_bit):
                return None
        x = 0
        for r, c in pivots:
            if work[r] & aug_bit:
                x |= 1 << c
        return x

    def kernel_basis(self) -> list[int]:
        """Basis of the null space, one bitmask per free column, ascending."""
        work, pivots = self._eliminate()
        pivot_cols = {c for _, c in pivots}
        basis = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            vec = 1 << free
            for r, c in pivots:
                if (work[r] >> free) & 1:
                    vec |= 1 << c
            basis.append(vec)
        return basis


# -- integer Smith normal form ------------------------------------------------


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Arbitrary-precision; the number of factors is the rank over Q.
    """
    a = [list(map(int, row)) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    factors: list[int] = []
    top = 0
    while True:
        pivot = None
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            # clear the pivot column
            dirty = False
            for i in range(top + 1, nrows):
                if a[i][top]:
                    qt = a[i][top] // a[top][top]
                    for j in range(top, ncols):
                        a[i][j] -= qt * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        dirty = True
            if dirty:
                continue
            # clear the pivot row
            for j in range(top + 1, ncols):
                if a[top][j]:
                    qt = a[top][j] // a[top][top]
                    for i in range(top, nrows):
                        a[i][j] -= qt * a[i][top]
                    if a[top][j]:
                        for i in range(top, nrows):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        dirty = True
            if dirty:
                continue
            # enforce divisibility: pivot must divide every remaining entry
            offender = None
            for i in range(top + 1, nrows):
                for j in range(top + 1, ncols):
                    if a[i][j] % a[top][top]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(top, ncols):
                a[top][j] += a[offender][j]
        factors.append(abs(a[top][top]))
        top += 1
        if top >= nrows or top >= ncols:
            break
    return tuple(factors)


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(smith_normal_form(matrix))
