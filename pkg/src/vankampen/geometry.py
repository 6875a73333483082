"""Exact general-position linear maps and mod-2 intersection numbers.

Vertices are mapped to exact rational points (moment-curve placement by
default) and each pair of vertex-disjoint simplices with complementary
dimensions gets a mod-2 intersection count, computed by solving the affine
incidence system exactly.  There is no floating point anywhere: intersection
parity is decided by integer determinant signs after clearing denominators,
and genuinely non-transverse configurations raise ``DegeneratePositionError``
instead of being perturbed numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

from .complexes import Complex, Simplex


class DegeneratePositionError(Exception):
    """The map is not in general position for the requested evaluation."""


PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class GeomMap:
    """Assignment of exact rational coordinates in Q^r to vertex labels."""

    r: int
    coords: dict
    _int_coords: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        pts = list(self.coords.values())
        for p in pts:
            if len(p) != self.r:
                raise ValueError("coordinate length must equal the target dimension")
        if len({tuple(p) for p in pts}) != len(pts):
            raise ValueError("vertex images must be distinct")
        scale = lcm(*(x.denominator for p in pts for x in p)) if pts else 1
        ints = {
            v: tuple(int(x * scale) for x in p) for v, p in self.coords.items()
        }
        object.__setattr__(self, "_int_coords", ints)

    def point(self, v: int) -> tuple:
        return self.coords[v]

    def int_point(self, v: int) -> tuple:
        """Integer coordinates after one global scaling (affinely equivalent)."""
        return self._int_coords[v]


def moment_map(c: Complex, r: int, params=None) -> GeomMap:
    """Place the vertices of c on the moment curve t -> (t, t^2, ..., t^r).

    Parameters must be distinct integers, one per vertex in label order; the
    default is 1, 2, 3, ...  Any such placement is in general position.
    """
    if r < 1:
        raise ValueError("target dimension must be >= 1")
    verts = c.vertices
    if params is None:
        params = tuple(range(1, len(verts) + 1))
    params = tuple(int(t) for t in params)
    if len(params) != len(verts):
        raise ValueError("need one moment parameter per vertex")
    if len(set(params)) != len(params):
        raise ValueError("duplicate parameters")
    coords = {
        v: tuple(Fraction(t) ** k for k in range(1, r + 1))
        for v, t in zip(verts, params)
    }
    return GeomMap(r, coords)


def parameter_schedules(n: int, count: int = 3) -> list[tuple]:
    """Distinct deterministic moment-parameter assignments for n vertices."""
    consecutive = tuple(range(1, n + 1))
    primes = tuple(_nth_primes(n))
    squares = tuple((k + 1) ** 2 for k in range(n))
    cubes = tuple((k + 1) ** 3 + k for k in range(n))
    return [consecutive, primes, squares, cubes][:count]


def _nth_primes(n: int) -> list[int]:
    out = []
    cand = 2
    while len(out) < n:
        if all(cand % p for p in out):
            out.append(cand)
        cand += 1
    return out


def retry_params(base: tuple, attempt: int) -> tuple:
    """Deterministic reparameterization schedule for degenerate positions.

    Attempt k scales the i-th parameter by the k-th prime raised to i, which
    changes the relative spacing (a uniform rescaling would not).
    """
    p = PRIMES[attempt]
    return tuple(t * p**i for i, t in enumerate(base))


def schlegel_map(c: Complex, facet: Simplex) -> GeomMap:
    """Projection of a simplex boundary through one facet.

    The facet spans a big simplex in Q^(d) and the unique remaining vertex
    goes to its barycenter, so the only odd pair is (facet, opposite vertex).
    """
    facet = tuple(sorted(facet))
    if facet not in c.facets:
        raise ValueError(f"{facet} is not a facet")
    rest = [v for v in c.vertices if v not in facet]
    if len(rest) != 1:
        raise ValueError("schlegel projection needs exactly one vertex outside the facet")
    r = len(facet) - 1
    coords = {}
    for k, v in enumerate(facet):
        coords[v] = tuple(
            Fraction(1 if j == k - 1 else 0) for j in range(r)
        )  # first facet vertex at the origin, the rest at unit points
    coords[rest[0]] = tuple(Fraction(1, r + 1) for _ in range(r))
    return GeomMap(r, coords)


# -- exact linear algebra helpers ---------------------------------------------


def _det_int(matrix: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    a = [row[:] for row in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _rank_frac(rows: list[list[Fraction]]) -> int:
    work = [row[:] for row in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col] / inv
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def _affine_system(g: GeomMap, a: Simplex, b: Simplex) -> tuple[list[list[int]], list[int]]:
    """Rows of the incidence system: sum(la_i v_i) = sum(mu_j w_j), affine."""
    r = g.r
    pts_a = [g.int_point(v) for v in a]
    pts_b = [g.int_point(w) for w in b]
    rows = []
    for coord in range(r):
        rows.append([p[coord] for p in pts_a] + [-p[coord] for p in pts_b])
    rows.append([1] * len(a) + [0] * len(b))
    rows.append([0] * len(a) + [1] * len(b))
    rhs = [0] * r + [1, 1]
    return rows, rhs


def intersection_number(g: GeomMap, a: Simplex, b: Simplex) -> int:
    """Mod-2 count of interior intersections of the images of a and b.

    Requires disjoint vertex sets and dim a + dim b = r.  A singular but
    inconsistent system means parallel disjoint hulls (count 0); a singular
    consistent system, or a barycentric coordinate exactly zero, is a
    non-transverse configuration and raises DegeneratePositionError.
    """
    a = tuple(sorted(a))
    b = tuple(sorted(b))
    if set(a) & set(b):
        raise ValueError("simplices must be vertex-disjoint")
    if (len(a) - 1) + (len(b) - 1) != g.r:
        raise ValueError("dimensions must sum to the target dimension")
    rows, rhs = _affine_system(g, a, b)
    n = len(rows)
    det = _det_int(rows)
    if det == 0:
        frac_rows = [[Fraction(x) for x in row] for row in rows]
        aug = [row + [Fraction(rhs[i])] for i, row in enumerate(frac_rows)]
        if _rank_frac(aug) == _rank_frac(frac_rows):
            raise DegeneratePositionError(
                f"degenerate position: non-transverse overlap for {a} x {b}"
            )
        return 0
    for k in range(n):
        col_swapped = [row[:k] + [rhs[i]] + row[k + 1 :] for i, row in enumerate(rows)]
        dk = _det_int(col_swapped)
        if dk == 0:
            raise DegeneratePositionError(
                f"degenerate position: boundary intersection for {a} x {b}"
            )
        if (dk > 0) != (det > 0):
            return 0
    return 1


def affine_hulls_meet(g: GeomMap, a: Simplex, b: Simplex) -> bool:
    """Whether the affine hulls of the images intersect (any dimensions)."""
    rows, rhs = _affine_system(g, a, b)
    frac_rows = [[Fraction(x) for x in row] for row in rows]
    aug = [row + [Fraction(rhs[i])] for i, row in enumerate(frac_rows)]
    return _rank_frac(aug) == _rank_frac(frac_rows)


def verify_general_position(g: GeomMap, c: Complex) -> None:
    """Check f(s) and f(t) are disjoint whenever dim s + dim t < r.

    Sufficient for vertex-linear maps: if even the affine hulls are disjoint
    the images are; otherwise fall back to an exact simplex-pair test.
    Raises DegeneratePositionError on a violation.
    """
    all_faces = sorted(c.face_set())
    for s, t in combinations(all_faces, 2):
        if set(s) & set(t):
            continue
        if (len(s) - 1) + (len(t) - 1) >= g.r:
            continue
        if affine_hulls_meet(g, s, t) and _simplices_meet(g, s, t):
            raise DegeneratePositionError(
                f"general position violated: images of {s} and {t} intersect"
            )


def _simplices_meet(g: GeomMap, a: Simplex, b: Simplex) -> bool:
    """Exact test whether two closed image simplices intersect.

    Solved as feasibility of the affine system with nonnegative barycentric
    coordinates, by brute force over supporting faces (desk-scale inputs).
    """
    for sa in range(1, len(a) + 1):
        for sb in range(1, len(b) + 1):
            for fa in combinations(a, sa):
                for fb in combinations(b, sb):
                    if _open_faces_meet(g, fa, fb):
                        return True
    return False


def _open_faces_meet(g: GeomMap, a: tuple, b: tuple) -> bool:
    """Whether relative interiors intersect, via exact elimination."""
    rows, rhs = _affine_system(g, a, b)
    frac = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    ncols = len(a) + len(b)
    # Gauss-Jordan; underdetermined systems may have free variables, in which
    # case sample the affine solution space is nontrivial; handle the common
    # full-rank case exactly and treat free variables conservatively.
    rank = 0
    pivots = []
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(frac)) if frac[r][col]), None)
        if pivot is None:
            continue
        frac[rank], frac[pivot] = frac[pivot], frac[rank]
        inv = frac[rank][col]
        frac[rank] = [x / inv for x in frac[rank]]
        for r in range(len(frac)):
            if r != rank and frac[r][col]:
                factor = frac[r][col]
                frac[r] = [x - factor * y for x, y in zip(frac[r], frac[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(frac)):
        if frac[r][ncols]:
            return False  # inconsistent: hulls disjoint
    if rank < ncols:
        return True  # positive-dimensional solution space: conservatively meet
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        solution[col] = frac[r][ncols]
    return all(x > 0 for x in solution)


# -- cochains -----------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionCochain:
    """Mod-2 intersection values on the top cells of a quotient deleted product."""

    r: int
    values: dict

    def __call__(self, cell) -> int:
        return self.values[cell]

    def support(self) -> frozenset:
        return frozenset(cell for cell, v in self.values.items() if v)

    def pair(self, cells) -> int:
        """Pairing with a set/chain of cells (sum of values mod 2)."""
        total = 0
        for cell in cells:
            total ^= self.values[cell]
        return total

    def to_json_list(self) -> list:
        return [
            {"pair": [list(a), list(b)], "value": v}
            for (a, b), v in sorted(self.values.items())
        ]


def intersection_cochain(g: GeomMap, dp) -> IntersectionCochain:
    """Intersection values on every cell of dimension r of the deleted product."""
    values = {}
    for cell in dp.cells(g.r):
        a, b = cell
        values[cell] = intersection_number(g, a, b)
    return IntersectionCochain(g.r, values)


def find_odd_pair(c: Complex, g: GeomMap) -> tuple[Simplex, Simplex]:
    """A disjoint pair of faces with complementary dimensions and odd count.

    Scans all pairs with dim s + dim t = g.r in canonical order.  For a map
    of a triangulated r-sphere in general position such a pair must exist;
    if none is found the sphere hypothesis (or the map) is at fault.
    """
    faces = sorted(c.face_set())
    for s in faces:
        for t in faces:
            if t <= s or set(s) & set(t):
                continue
            if (len(s) - 1) + (len(t) - 1) != g.r:
                continue
            if intersection_number(g, s, t):
                return (s, t)
    raise ValueError("sphere hypothesis violated: no odd pair exists")
