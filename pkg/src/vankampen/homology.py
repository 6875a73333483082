"""Boundary matrices and reduced simplicial homology.

Betti numbers over GF(2) everywhere; integral homology (free ranks plus
torsion) via Smith normal form where integer coefficients are required.
Reduced (augmented) homology is the default, so a point has no homology at
all; Betti tuples are indexed from dimension -1, i.e. ``betti[k]`` is the
reduced Betti number in dimension k-1.
"""

from __future__ import annotations

from .complexes import Chain, Complex, Simplex, simplex_facets
from .gf2 import Gf2Matrix, bits_from_indices, smith_normal_form


def boundary_matrix_gf2(
    c: Complex, i: int, reduced: bool = True
) -> tuple[Gf2Matrix, list[Simplex], list[Simplex]]:
    """The mod-2 boundary map from i-chains to (i-1)-chains of c.

    Returns (matrix, row cells, column cells); cells are in lexicographic
    order so the matrix is deterministic.  With ``reduced`` the map in
    dimension 0 is the augmentation onto the ``()`` cell.
    """
    cols = sorted(c.faces(i))
    rows = sorted(c.faces(i - 1)) if (i > 0 or reduced) else []
    row_index = {s: k for k, s in enumerate(rows)}
    matrix = Gf2Matrix(len(rows), len(cols))
    if rows:
        for j, s in enumerate(cols):
            for f in simplex_facets(s):
                matrix.rows[row_index[f]] ^= 1 << j
    return matrix, rows, cols


def boundary_matrix_int(
    c: Complex, i: int, reduced: bool = True
) -> tuple[list[list[int]], list[Simplex], list[Simplex]]:
    """Integer boundary matrix with the usual alternating signs."""
    cols = sorted(c.faces(i))
    rows = sorted(c.faces(i - 1)) if (i > 0 or reduced) else []
    row_index = {s: k for k, s in enumerate(rows)}
    matrix = [[0] * len(cols) for _ in rows]
    if rows:
        for j, s in enumerate(cols):
            for pos in range(len(s)):
                f = s[:pos] + s[pos + 1 :]
                matrix[row_index[f]][j] += (-1) ** pos
    return matrix, rows, cols


def betti_gf2(c: Complex, reduced: bool = True) -> tuple:
    """Betti numbers over GF(2).

    Reduced: a tuple (b_-1, b_0, ..., b_dim).  Unreduced: (b_0, ..., b_dim).
    """
    if c.is_empty():
        return ()
    top = c.dim
    ranks = {}
    for i in range(0, top + 2):
        if i > top:
            ranks[i] = 0
        else:
            ranks[i], _, _ = _gf2_rank_of_boundary(c, i, reduced)
    out = []
    lowest = -1 if reduced else 0
    for i in range(lowest, top + 1):
        n_i = 1 if (i == -1 and reduced) else len(c.faces(i))
        r_i = ranks[i] if i >= 0 else 0
        r_next = ranks[i + 1] if i + 1 <= top + 1 else 0
        out.append(n_i - r_i - r_next)
    return tuple(out)


def _gf2_rank_of_boundary(c: Complex, i: int, reduced: bool) -> tuple[int, int, int]:
    m, rows, cols = boundary_matrix_gf2(c, i, reduced)
    return m.rank(), len(rows), len(cols)


def betti_int(c: Complex) -> tuple[tuple, tuple]:
    """Reduced integral homology: (free ranks, torsion coefficient tuples).

    Both tuples are indexed from dimension -1 like ``betti_gf2``; torsion in
    dimension k is the tuple of invariant factors > 1 of the (k+1)-boundary.
    """
    if c.is_empty():
        return ((1,), ((),))
    top = c.dim
    snf = {}
    for i in range(0, top + 2):
        if i > top:
            snf[i] = ()
        else:
            m, _, _ = boundary_matrix_int(c, i, reduced=True)
            snf[i] = smith_normal_form(m) if m and m[0] else ()
    free = []
    torsion = []
    for i in range(-1, top + 1):
        n_i = 1 if i == -1 else len(c.faces(i))
        r_i = len(snf[i]) if i >= 0 else 0
        r_next = len(snf[i + 1]) if i + 1 <= top + 1 else 0
        free.append(n_i - r_i - r_next)
        torsion.append(tuple(f for f in snf.get(i + 1, ()) if f > 1))
    return tuple(free), tuple(torsion)


def chain_boundary(z: Chain, c: Complex) -> Chain:
    """Boundary of a chain supported on c (error if some simplex is not a face)."""
    for s in z.simplices:
        if not c.has_face(s):
            raise ValueError(f"chain not supported: {s} is not a face")
    return z.boundary()


def is_cycle(z: Chain, c: Complex) -> bool:
    return not chain_boundary(z, c)


def solve_boundary(c: Complex, target: Chain) -> Chain | None:
    """Some chain b with boundary(b) = target inside c, or None.

    Deterministic: the GF(2) solver picks the solution supported on pivot
    columns of the lexicographically ordered boundary matrix.
    """
    i = target.dim + 1
    m, rows, cols = boundary_matrix_gf2(c, i, reduced=True)
    row_index = {s: k for k, s in enumerate(rows)}
    for s in target.simplices:
        if s not in row_index:
            raise ValueError(f"target chain not supported: {s}")
    b = bits_from_indices(row_index[s] for s in target.simplices)
    x = m.solve(b)
    if x is None:
        return None
    return Chain(i, (cols[j] for j in range(len(cols)) if (x >> j) & 1))
