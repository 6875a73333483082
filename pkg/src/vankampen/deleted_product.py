"""The quotient (twofold) deleted product as a mod-2 cell complex.

Cells are unordered pairs {a, b} of vertex-disjoint nonempty faces of the
base complex, stored canonically as a tuple (a, b) with a < b; the dimension
of a cell is dim a + dim b.  Only the quotient of the exchange action is ever
built (the ordered double cover is never materialized).  The boundary drops
pairs whose factor would become empty, matching the nonempty-factor cell
convention.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .complexes import Chain, Complex, Simplex, simplex_facets
from .gf2 import Gf2Matrix, bits_from_indices

PairCell = tuple  # (a, b) with a < b, both nonempty, vertex-disjoint


class CellBudgetExceeded(Exception):
    """The deleted product would exceed the configured cell budget."""


def pair_cell(a: Simplex, b: Simplex) -> PairCell:
    """Canonical unordered cell {a, b}; factors must be nonempty and disjoint."""
    if not a or not b:
        raise ValueError("cells of the deleted product have nonempty factors")
    if set(a) & set(b):
        raise ValueError(f"cell factors must be vertex-disjoint: {a}, {b}")
    return (a, b) if a < b else (b, a)


def cell_dim(cell: PairCell) -> int:
    return len(cell[0]) + len(cell[1]) - 2


class PairChain:
    """Mod-2 chain of deleted-product cells of one dimension."""

    __slots__ = ("dim", "cells")

    def __init__(self, dim: int, cells: Iterable[PairCell] = ()):
        self.dim = dim
        self.cells = frozenset(cells)
        for cell in self.cells:
            if cell_dim(cell) != dim:
                raise ValueError(f"cell {cell} has dimension {cell_dim(cell)}, chain has {dim}")

    def __add__(self, other: "PairChain") -> "PairChain":
        if self.dim != other.dim:
            if not self.cells:
                return other
            if not other.cells:
                return self
            raise ValueError(f"chain dimensions differ: {self.dim} vs {other.dim}")
        return PairChain(self.dim, self.cells ^ other.cells)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return bool(self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairChain):
            return NotImplemented
        if not self.cells and not other.cells:
            return True
        return self.dim == other.dim and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __iter__(self) -> Iterator[PairCell]:
        return iter(sorted(self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: PairCell) -> bool:
        return cell in self.cells

    def __repr__(self) -> str:
        return f"PairChain(dim={self.dim}, {len(self.cells)} cells)"

    def simplices(self) -> frozenset:
        """All simplices occurring as a factor of some cell."""
        out: set[Simplex] = set()
        for a, b in self.cells:
            out.add(a)
            out.add(b)
        return frozenset(out)

    def to_json_list(self) -> list:
        return [[list(a), list(b)] for a, b in sorted(self.cells)]

    @classmethod
    def from_json_list(cls, dim: int, data: list) -> "PairChain":
        return cls(dim, (pair_cell(tuple(a), tuple(b)) for a, b in data))


def boundary_cell(cell: PairCell) -> PairChain:
    """d{a,b} = {da, b} + {a, db}, dropping pairs with an empty factor."""
    a, b = cell
    out: set[PairCell] = set()
    for f in simplex_facets(a):
        if f:
            out.symmetric_difference_update((pair_cell(f, b),))
    for f in simplex_facets(b):
        if f:
            out.symmetric_difference_update((pair_cell(a, f),))
    return PairChain(cell_dim(cell) - 1, out)


def pair_boundary(chain: PairChain) -> PairChain:
    out = PairChain(chain.dim - 1)
    for cell in chain.cells:
        out ^= boundary_cell(cell)
    return out


def pair_chain_of(a: Chain, b: Chain) -> PairChain:
    """Bilinear extension {a, b} = sum of cells {s, t}, s in a, t in b."""
    if a.support() & b.support():
        raise ValueError("supports not disjoint")
    cells: set[PairCell] = set()
    for s in a.simplices:
        for t in b.simplices:
            cells.symmetric_difference_update((pair_cell(s, t),))
    return PairChain(a.dim + b.dim, cells)


def slice_at(chain: PairChain, s: Simplex) -> Chain:
    """The chain { t : {s, t} in chain } of partners of one simplex."""
    partners = []
    for a, b in chain.cells:
        if a == s:
            partners.append(b)
        elif b == s:
            partners.append(a)
    return Chain(chain.dim - (len(s) - 1), partners)


class DeletedProduct:
    """All cells of the quotient deleted product, indexed per dimension."""

    __slots__ = ("base", "cells_by_dim", "_index", "_matrices")

    def __init__(self, base: Complex, cells_by_dim: dict):
        self.base = base
        self.cells_by_dim = cells_by_dim
        self._index: dict[int, dict] = {}
        self._matrices: dict[int, Gf2Matrix] = {}

    @property
    def dim(self) -> int:
        return max(self.cells_by_dim) if self.cells_by_dim else -1

    def cells(self, k: int) -> tuple:
        return self.cells_by_dim.get(k, ())

    def total_cells(self) -> int:
        return sum(len(v) for v in self.cells_by_dim.values())

    def has_cell(self, cell: PairCell) -> bool:
        return cell in self.index(cell_dim(cell))

    def index(self, k: int) -> dict:
        if k not in self._index:
            self._index[k] = {cell: i for i, cell in enumerate(self.cells(k))}
        return self._index[k]

    def boundary_matrix(self, k: int, reduced: bool = False) -> Gf2Matrix:
        """Matrix of the boundary map from k-cells to (k-1)-cells."""
        if k in self._matrices and not reduced:
            return self._matrices[k]
        cols = self.cells(k)
        if k == 0:
            rows = [0] * (1 if reduced else 0)
            m = Gf2Matrix(len(rows), len(cols), None)
            if reduced:
                m.rows[0] = (1 << len(cols)) - 1
            return m
        row_index = self.index(k - 1)
        m = Gf2Matrix(len(row_index), len(cols))
        for j, cell in enumerate(cols):
            for bc in boundary_cell(cell).cells:
                m.rows[row_index[bc]] ^= 1 << j
        if not reduced:
            self._matrices[k] = m
        return m

    def chain_to_bits(self, chain: PairChain) -> int:
        idx = self.index(chain.dim)
        return bits_from_indices(idx[cell] for cell in chain.cells)

    def bits_to_chain(self, k: int, bits: int) -> PairChain:
        cells = self.cells(k)
        return PairChain(k, (cells[i] for i in range(len(cells)) if (bits >> i) & 1))

    def betti_gf2(self, reduced: bool = True) -> tuple:
        """Cellular Betti numbers of the quotient; indexed from -1 if reduced."""
        if not self.cells_by_dim:
            return ()
        top = self.dim
        ranks = {}
        for k in range(0, top + 2):
            if k > top:
                ranks[k] = 0
            else:
                ranks[k] = self.boundary_matrix(k, reduced=(k == 0 and reduced)).rank()
        out = []
        lowest = -1 if reduced else 0
        for k in range(lowest, top + 1):
            n_k = 1 if k == -1 else len(self.cells(k))
            r_k = ranks[k] if k >= 0 else 0
            out.append(n_k - r_k - ranks.get(k + 1, 0))
        return tuple(out)


def build_deleted_product(c: Complex, cell_budget: int | None = None) -> DeletedProduct:
    """Enumerate all unordered disjoint pairs of nonempty faces of c."""
    by_dim: dict[int, list] = {}
    total = 0
    top = c.dim
    for da in range(0, top + 1):
        faces_a = sorted(c.faces(da))
        for db in range(da, top + 1):
            faces_b = faces_a if db == da else sorted(c.faces(db))
            k = da + db
            bucket = by_dim.setdefault(k, [])
            if da == db:
                pairs = combinations(faces_a, 2)
            else:
                pairs = ((a, b) for a in faces_a for b in faces_b)
            for a, b in pairs:
                if set(a) & set(b):
                    continue
                bucket.append((a, b) if a < b else (b, a))
                total += 1
                if cell_budget is not None and total > cell_budget:
                    raise CellBudgetExceeded(
                        f"deleted product exceeds the cell budget of {cell_budget}"
                    )
    return DeletedProduct(
        c, {k: tuple(sorted(v)) for k, v in sorted(by_dim.items()) if v}
    )


def is_pair_cycle(chain: PairChain, dp: DeletedProduct) -> bool:
    """Whether the chain is a cycle of the deleted product of dp.base."""
    for cell in chain.cells:
        if not dp.has_cell(cell):
            raise ValueError(f"chain not supported: cell {cell} not in the deleted product")
    return not pair_boundary(chain)
