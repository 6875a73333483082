"""Rebuilding a 2d-sphere from its d-skeleton by homological acceptance.

Level by level, a candidate (k-dimensional) simplex whose boundary is
already present is accepted iff the induced subcomplex on the complementary
vertices has vanishing reduced integral homology in the prescribed degrees:
dimension d-1 at the first level above the skeleton, dimensions 2d-k+1 and
2d-k above that.  Acceptance at level k reads only the (k-1)-skeleton, so
the procedure is well defined; integral coefficients (via Smith normal form)
are required, not a mod-2 shortcut.

A companion check glues a ball onto the d-skeleton along an induced sphere
and reports whether the reconstruction still behaves like a sphere skeleton;
it is a desk-scale diagnostic for why such a glued complex cannot be one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    Complex,
    Simplex,
    euler_characteristic,
    induced,
    simplex,
    simplex_facets,
    skeleton,
)
from .homology import betti_int


def _integral_homology_zero(c: Complex, dims) -> bool:
    free, torsion = betti_int(c)
    for i in dims:
        idx = i + 1  # tuples are indexed from dimension -1
        if 0 <= idx < len(free) and (free[idx] or torsion[idx]):
            return False
    return True


def reconstruct(skel: Complex, d: int) -> Complex:
    """Grow the d-skeleton of a 2d-sphere back to the full complex.

    Garbage in, garbage out: if the input is not actually such a skeleton
    the result is whatever the acceptance criteria produce.
    """
    current = skel
    verts = skel.vertices
    for k in range(d + 1, 2 * d + 1):
        lower = current.faces(k - 1)
        accepted = []
        for cand in combinations(verts, k + 1):
            if not all(f in lower for f in simplex_facets(cand)):
                continue
            rest = [v for v in verts if v not in cand]
            sub = induced(current, rest)
            dims = (d - 1,) if k == d + 1 else (2 * d - k + 1, 2 * d - k)
            if _integral_homology_zero(sub, dims):
                accepted.append(cand)
        if accepted:
            current = Complex(set(current.facets) | set(accepted))
    return current


def ball_boundary(ball: Complex) -> Complex:
    """Boundary of a pure complex: closure of the ridges in one facet only."""
    if not ball.is_pure():
        raise ValueError("ball must be a pure complex")
    d = ball.dim
    count: dict[Simplex, int] = {}
    for f in ball.facets:
        for r in simplex_facets(f):
            count[r] = count.get(r, 0) + 1
    rim = [r for r, n in count.items() if n == 1]
    return Complex(rim)


@dataclass
class NonSkeletonReport:
    glued: Complex
    reconstructed: Complex
    boundary_induced: bool
    skeleton_preserved: bool
    pure_top: bool
    pseudomanifold: bool
    euler_ok: bool

    @property
    def consistent_sphere_skeleton(self) -> bool:
        return (
            self.skeleton_preserved
            and self.pure_top
            and self.pseudomanifold
            and self.euler_ok
        )


def glue_ball(
    sphere: Complex, d: int, ball: Complex, boundary_map: dict
) -> tuple[Complex, bool]:
    """S_{<=d} with a relabeled copy of the ball attached along its boundary.

    boundary_map must embed the ball's boundary simplicially into the sphere
    (injective on vertices, facets landing on faces); interior ball vertices
    get fresh labels.  Returns the glued complex and whether the boundary
    image is the full induced subcomplex on its vertices (the hypothesis
    under which the glued complex can never be a 2d-sphere skeleton).
    """
    rim = ball_boundary(ball)
    rim_verts = set(rim.vertices)
    if set(boundary_map) != rim_verts:
        raise ValueError("boundary map must be defined exactly on the ball's boundary vertices")
    image = [boundary_map[v] for v in rim.vertices]
    if len(set(image)) != len(image):
        raise ValueError("gluing map not a simplicial isomorphism on boundaries")
    mapped_rim = Complex(
        [tuple(sorted(boundary_map[v] for v in f)) for f in rim.facets]
    )
    for f in mapped_rim.facets:
        if not sphere.has_face(f):
            raise ValueError("gluing map not a simplicial isomorphism on boundaries")
    boundary_induced = mapped_rim == induced(sphere, image)
    fresh = max(sphere.vertices) + 1
    relabel = dict(boundary_map)
    for v in sorted(set(ball.vertices) - rim_verts):
        relabel[v] = fresh
        fresh += 1
    moved = [tuple(sorted(relabel[v] for v in f)) for f in ball.facets]
    glued = Complex(set(skeleton(sphere, d).facets) | set(moved))
    return glued, boundary_induced


def non_skeleton_check(
    sphere: Complex, d: int, ball: Complex, boundary_map: dict
) -> NonSkeletonReport:
    """Glue, reconstruct, and test whether a sphere skeleton could result."""
    glued, boundary_induced = glue_ball(sphere, d, ball, boundary_map)
    rebuilt = reconstruct(glued, d)
    skeleton_preserved = skeleton(rebuilt, d) == glued if rebuilt.dim >= d else False
    pure_top = rebuilt.is_pure(2 * d)
    pseudo = False
    if pure_top:
        count: dict[Simplex, int] = {}
        for f in rebuilt.facets:
            for r in simplex_facets(f):
                count[r] = count.get(r, 0) + 1
        pseudo = all(n == 2 for n in count.values())
    euler_ok = euler_characteristic(rebuilt) == 2  # even-dimensional sphere
    return NonSkeletonReport(
        glued, rebuilt, boundary_induced, skeleton_preserved, pure_top, pseudo, euler_ok
    )
