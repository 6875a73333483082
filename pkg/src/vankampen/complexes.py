"""Finite abstract simplicial complexes and mod-2 chains.

Vertices are arbitrary non-negative integer labels (not necessarily
contiguous).  A simplex is a strictly increasing tuple of labels; the empty
tuple ``()`` is the (-1)-dimensional simplex, which is a first-class value
here (the boundary of a vertex is ``{()}``).  A complex is stored by its
inclusion-maximal faces and enumerates faces per dimension lazily, memoized
per instance.  All values are immutable and hashable, so they can be shared
freely.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

Simplex = tuple  # strictly increasing tuple of non-negative ints

EMPTY_SIMPLEX: Simplex = ()


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex labels into a simplex tuple."""
    vs = tuple(sorted(vertices))
    for v in vs:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"vertex labels must be non-negative ints, got {v!r}")
    if any(vs[i] == vs[i + 1] for i in range(len(vs) - 1)):
        raise ValueError(f"duplicate vertex label in simplex {vs}")
    return vs


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def simplex_facets(s: Simplex) -> list[Simplex]:
    """All faces of s obtained by dropping one vertex (``[()]`` for a vertex)."""
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


def subfaces(s: Simplex, k: int) -> Iterator[Simplex]:
    """All k-dimensional faces of s."""
    return combinations(s, k + 1)


class Chain:
    """A mod-2 simplicial chain: a finite set of simplices of one dimension.

    Addition is symmetric difference (adding a simplex twice cancels it).
    The dimension is carried explicitly so that the zero chain of each
    dimension is a distinct value.
    """

    __slots__ = ("dim", "simplices")

    def __init__(self, dim: int, simplices: Iterable[Simplex] = ()):
        self.dim = dim
        self.simplices = frozenset(simplices)
        for s in self.simplices:
            if len(s) != dim + 1:
                raise ValueError(f"simplex {s} has dimension {len(s)-1}, chain has {dim}")

    @classmethod
    def single(cls, s: Simplex) -> "Chain":
        return cls(len(s) - 1, (s,))

    def __add__(self, other: "Chain") -> "Chain":
        if self.dim != other.dim:
            if not self.simplices:
                return other
            if not other.simplices:
                return self
            raise ValueError(f"chain dimensions differ: {self.dim} vs {other.dim}")
        return Chain(self.dim, self.simplices ^ other.simplices)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return bool(self.simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        if not self.simplices and not other.simplices:
            return True
        return self.dim == other.dim and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.simplices))

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s: Simplex) -> bool:
        return s in self.simplices

    def __repr__(self) -> str:
        return f"Chain(dim={self.dim}, {sorted(self.simplices)})"

    def support(self) -> frozenset:
        """Union of the vertices of all simplices in the chain."""
        out: set[int] = set()
        for s in self.simplices:
            out.update(s)
        return frozenset(out)

    def boundary(self) -> "Chain":
        """Mod-2 boundary; the boundary of a 0-chain is a multiple of ``()``."""
        if self.dim <= -1:
            return Chain(self.dim - 1)
        acc: set[Simplex] = set()
        for s in self.simplices:
            for f in simplex_facets(s):
                acc.symmetric_difference_update((f,))
        return Chain(self.dim - 1, acc)

    def is_cycle(self) -> bool:
        return not self.boundary()


def join_chains(a: Chain, b: Chain) -> Chain:
    """Bilinear join of two chains with disjoint supports."""
    if a.support() & b.support():
        raise ValueError("non-disjoint join")
    acc: set[Simplex] = set()
    for s in a.simplices:
        for t in b.simplices:
            acc.symmetric_difference_update((tuple(sorted(s + t)),))
    return Chain(a.dim + b.dim + 1, acc)


class Complex:
    """Finite abstract simplicial complex, stored by its facets.

    The constructor accepts any iterable of faces and keeps the
    inclusion-maximal ones.  The complex ``{()}`` (facets ``{()}``) and the
    void complex (no faces at all) are distinguished.
    """

    __slots__ = ("facets", "name", "_faces_by_dim", "_vertices", "_face_set")

    def __init__(self, faces: Iterable[Iterable[int]] = (), name: str = ""):
        normalized = {simplex(f) for f in faces}
        facets = {
            f
            for f in normalized
            if not any(f != g and set(f) <= set(g) for g in normalized)
        }
        self.facets = frozenset(facets)
        self.name = name
        self._faces_by_dim: dict[int, frozenset] = {}
        self._vertices: tuple | None = None
        self._face_set: frozenset | None = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        label = self.name or f"{len(self.facets)} facets"
        return f"Complex({label}, dim={self.dim})"

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        """Dimension; -1 for the complex {()} and -2 for the void complex."""
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1

    @property
    def vertices(self) -> tuple:
        if self._vertices is None:
            vs: set[int] = set()
            for f in self.facets:
                vs.update(f)
            self._vertices = tuple(sorted(vs))
        return self._vertices

    def is_empty(self) -> bool:
        return not self.facets

    def faces(self, i: int) -> frozenset:
        """All i-dimensional faces; ``faces(-1)`` is ``{()}`` when nonempty."""
        if i < -1:
            return frozenset()
        if i not in self._faces_by_dim:
            if i == -1:
                out = frozenset((EMPTY_SIMPLEX,)) if self.facets else frozenset()
            else:
                acc: set[Simplex] = set()
                for f in self.facets:
                    if len(f) >= i + 1:
                        acc.update(combinations(f, i + 1))
                out = frozenset(acc)
            self._faces_by_dim[i] = out
        return self._faces_by_dim[i]

    def face_set(self, include_empty: bool = False) -> frozenset:
        """All faces of all dimensions >= 0 (plus ``()`` if requested)."""
        if self._face_set is None:
            acc: set[Simplex] = set()
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    acc.update(combinations(f, k))
            self._face_set = frozenset(acc)
        if include_empty and self.facets:
            return self._face_set | {EMPTY_SIMPLEX}
        return self._face_set

    def has_face(self, s: Simplex) -> bool:
        if s == EMPTY_SIMPLEX:
            return bool(self.facets)
        return s in self.faces(len(s) - 1)

    def __contains__(self, s) -> bool:
        return self.has_face(tuple(s))

    def is_pure(self, d: int | None = None) -> bool:
        if not self.facets:
            return True
        dims = {len(f) - 1 for f in self.facets}
        if d is None:
            return len(dims) == 1
        return dims == {d}

    def with_name(self, name: str) -> "Complex":
        out = Complex.__new__(Complex)
        out.facets = self.facets
        out.name = name
        out._faces_by_dim = self._faces_by_dim
        out._vertices = self._vertices
        out._face_set = self._face_set
        return out


# -- constructors ----------------------------------------------------------


def full_simplex(vertices: Iterable[int], name: str = "") -> Complex:
    """The complex of a single simplex and all its faces."""
    return Complex([simplex(vertices)], name=name)


def boundary_of_simplex(vertices: Iterable[int], name: str = "") -> Complex:
    """The boundary sphere of the simplex on the given vertices."""
    s = simplex(vertices)
    if not s:
        return Complex(name=name)
    return Complex(simplex_facets(s), name=name)


def standard_sphere(d: int) -> Complex:
    """Boundary of the (d+1)-simplex on labels 0..d+1, a minimal d-sphere."""
    return boundary_of_simplex(range(d + 2), name=f"boundary-simplex-{d + 1}")


def vk_skeleton(d: int) -> Complex:
    """d-skeleton of the (2d+2)-simplex on labels 0..2d+2 (K5 for d=1)."""
    return skeleton(full_simplex(range(2 * d + 3)), d).with_name(f"vk-complex-d{d}")


# -- operations --------------------------------------------------------------


def skeleton(c: Complex, d: int) -> Complex:
    """Subcomplex of all faces of dimension at most d."""
    if d < 0:
        raise ValueError("skeleton dimension must be >= 0")
    low = [f for f in c.facets if len(f) - 1 <= d]
    return Complex(set(low) | set(c.faces(d)))


def star(c: Complex, s: Simplex) -> Complex:
    """Closed star: all faces of facets containing s."""
    s = simplex(s)
    return Complex([f for f in c.facets if set(s) <= set(f)])


def link(c: Complex, s: Simplex) -> Complex:
    """lk(s, c) = { t : t and s disjoint, union a face of c }."""
    s = simplex(s)
    sset = set(s)
    return Complex(
        [tuple(v for v in f if v not in sset) for f in c.facets if sset <= set(f)]
    )


def join(a: Complex, b: Complex) -> Complex:
    """Simplicial join; vertex sets must be disjoint."""
    if set(a.vertices) & set(b.vertices):
        raise ValueError("non-disjoint join")
    # join with the void complex is void; join with {()} is the identity
    return Complex(
        [tuple(sorted(fa + fb)) for fa in a.facets for fb in b.facets]
    )


def induced(c: Complex, vertices: Iterable[int]) -> Complex:
    """Induced subcomplex on a vertex set: faces with all vertices inside."""
    keep = set(vertices)
    return Complex([tuple(v for v in f if v in keep) for f in c.facets])


def delete_vertices(c: Complex, vertices: Iterable[int]) -> Complex:
    """Remove every face containing at least one of the given vertices."""
    drop = set(vertices)
    return induced(c, set(c.vertices) - drop)


def intersect(a: Complex, b: Complex) -> Complex:
    """The complex of faces common to a and b."""
    return Complex(a.face_set() & b.face_set())


def with_face(c: Complex, s: Simplex) -> Complex:
    """c with one extra face (and its subfaces) added."""
    return Complex(set(c.facets) | {simplex(s)})


def missing_faces(c: Complex, d: int) -> frozenset:
    """All d-simplices on the vertex set of c that are not faces of c but
    whose entire boundary is."""
    if d < 0:
        raise ValueError("missing-face dimension must be >= 0")
    present = c.faces(d)
    lower = c.faces(d - 1)
    out = []
    for cand in combinations(c.vertices, d + 1):
        if cand in present:
            continue
        if all(f in lower for f in simplex_facets(cand)):
            out.append(cand)
    return frozenset(out)


def f_vector(c: Complex) -> tuple:
    """(f_-1, f_0, ..., f_dim) with the convention f_-1 = 1 when nonempty."""
    if not c.facets:
        return (0,)
    return (1,) + tuple(len(c.faces(i)) for i in range(0, c.dim + 1))


def h_vector(c: Complex, d: int) -> tuple:
    """h-vector of a pure (d-1)-dimensional complex."""
    if not c.is_pure(d - 1):
        raise ValueError("h-vector requires a pure (d-1)-dimensional complex")
    f = f_vector(c)

    def fval(j: int) -> int:
        return f[j + 1] if -1 <= j <= c.dim else 0

    return tuple(
        sum((-1) ** (i - j) * comb(d - j, i - j) * fval(j - 1) for j in range(i + 1))
        for i in range(d + 1)
    )


def euler_characteristic(c: Complex) -> int:
    """Unreduced Euler characteristic (vertices - edges + ...)."""
    return sum((-1) ** i * len(c.faces(i)) for i in range(0, c.dim + 1))


# -- serialization -----------------------------------------------------------


def complex_to_dict(c: Complex) -> dict:
    return {"name": c.name, "facets": [list(f) for f in sorted(c.facets)]}


def complex_from_dict(data: dict) -> Complex:
    if not isinstance(data, dict) or "facets" not in data:
        raise ValueError("complex JSON must be an object with a 'facets' list")
    return Complex(data["facets"], name=str(data.get("name", "")))


def complex_to_json(c: Complex) -> str:
    return json.dumps(complex_to_dict(c), separators=(", ", ": "))


def complex_from_json(text: str) -> Complex:
    return complex_from_dict(json.loads(text))


def complex_to_text(c: Complex) -> str:
    lines = [f"# {c.name}"] if c.name else []
    lines += [" ".join(str(v) for v in f) for f in sorted(c.facets)]
    return "\n".join(lines) + "\n"


def complex_from_text(text: str) -> Complex:
    facets = []
    name = ""
    for raw in text.splitlines():
        line = raw.split("#", 1)
        if len(line) > 1 and not name:
            name = line[1].strip()
        body = line[0].strip()
        if body:
            facets.append([int(tok) for tok in body.split()])
    return Complex(facets, name=name)
