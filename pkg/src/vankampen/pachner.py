"""Bistellar (Pachner) moves, stellar subdivision, and sphere generators.

A bistellar move of type (p, q) removes the star of a p-face whose link is
the boundary of a missing q-simplex and glues in the complementary ball.
Every complex reachable from a simplex boundary by such moves is a PL
sphere; that reachability certificate (the move trace) is the only sphere
bookkeeping used here, since sphere recognition is not decidable in general.
Fresh vertices for (p, 0) moves are allocated as max label + 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    Complex,
    Simplex,
    boundary_of_simplex,
    complex_from_dict,
    complex_to_dict,
    link,
    simplex,
)

RNG_ALGORITHM = "python-random-mersenne-twister"


@dataclass(frozen=True, order=True)
class MoveDescriptor:
    p: int
    q: int
    sigma: Simplex
    tau: Simplex

    def inverse(self) -> "MoveDescriptor":
        return MoveDescriptor(self.q, self.p, self.tau, self.sigma)

    def to_json_dict(self) -> dict:
        return {"sigma": list(self.sigma), "tau": list(self.tau), "p": self.p, "q": self.q}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MoveDescriptor":
        return cls(int(data["p"]), int(data["q"]), simplex(data["sigma"]), simplex(data["tau"]))


def _is_point_link(lk: Complex) -> bool:
    return lk.facets == frozenset(((),))


def applicable_moves(c: Complex) -> list[MoveDescriptor]:
    """All bistellar moves applicable to a pure complex, canonically ordered.

    For (p, 0) moves the missing simplex is a fresh vertex (max label + 1);
    for q >= 1 the link of sigma must equal the boundary of a q-simplex on
    existing vertices that is not itself a face.
    """
    if not c.is_pure():
        raise ValueError("bistellar moves require a pure complex")
    top = c.dim
    fresh = (max(c.vertices) + 1,) if c.vertices else (0,)
    out = []
    for p in range(top + 1):
        q = top - p
        for s in sorted(c.faces(p)):
            lk = link(c, s)
            if q == 0:
                if _is_point_link(lk):
                    out.append(MoveDescriptor(p, 0, s, fresh))
                continue
            u = lk.vertices
            if len(u) != q + 1:
                continue
            if lk == boundary_of_simplex(u) and not c.has_face(u):
                out.append(MoveDescriptor(p, q, s, u))
    return sorted(out)


def check_move(c: Complex, m: MoveDescriptor) -> None:
    """Raise with a diagnostic when the move is not applicable."""
    if not c.has_face(m.sigma):
        raise ValueError(f"move not applicable: {m.sigma} is not a face")
    if m.q == 0:
        if m.tau[0] in c.vertices:
            raise ValueError(f"move not applicable: vertex {m.tau[0]} is not fresh")
        if not _is_point_link(link(c, m.sigma)):
            raise ValueError(f"move not applicable: {m.sigma} is not a facet")
        return
    if c.has_face(m.tau):
        raise ValueError(f"move not applicable: {m.tau} is already a face")
    lk = link(c, m.sigma)
    if lk != boundary_of_simplex(m.tau):
        raise ValueError(
            f"move not applicable: link of {m.sigma} is not the boundary of {m.tau}"
        )


def apply_move(c: Complex, m: MoveDescriptor) -> Complex:
    """Replace sigma * boundary(tau) by boundary(sigma) * tau."""
    if not m.sigma:
        raise ValueError("move sigma must be nonempty")
    check_move(c, m)
    sset = set(m.sigma)
    kept = [f for f in c.facets if not sset <= set(f)]
    added = [
        tuple(sorted(m.sigma[:i] + m.sigma[i + 1 :] + m.tau))
        for i in range(len(m.sigma))
    ]
    return Complex(kept + added, name=c.name)


def random_walk(c: Complex, steps: int, seed: int) -> tuple[Complex, list[MoveDescriptor]]:
    """Apply `steps` uniformly random applicable moves with a seeded PRNG."""
    rng = random.Random(seed)
    current = c
    trace: list[MoveDescriptor] = []
    for _ in range(steps):
        moves = applicable_moves(current)
        if not moves:
            raise ValueError("no applicable move")
        m = moves[rng.randrange(len(moves))]
        current = apply_move(current, m)
        trace.append(m)
    return current, trace


def apply_trace(c: Complex, moves) -> Complex:
    current = c
    for m in moves:
        current = apply_move(current, m)
    return current


def trace_states(c: Complex, moves) -> list[Complex]:
    """The complexes visited while replaying a trace, starting state included."""
    out = [c]
    for m in moves:
        out.append(apply_move(out[-1], m))
    return out


def stellar_subdivide(c: Complex, s: Simplex) -> Complex:
    """Replace the star of s by (fresh vertex) * boundary(s) * link(s).

    Subdividing a vertex is the identity.
    """
    s = simplex(s)
    if not c.has_face(s):
        raise ValueError(f"cannot subdivide: {s} is not a face")
    if len(s) <= 1:
        return c
    v = max(c.vertices) + 1
    lk = link(c, s)
    sset = set(s)
    kept = [f for f in c.facets if not sset <= set(f)]
    added = [
        tuple(sorted((v,) + s[:i] + s[i + 1 :] + lf))
        for i in range(len(s))
        for lf in lk.facets
    ]
    return Complex(kept + added, name=c.name)


def stellar_trace(d: int) -> list[MoveDescriptor]:
    """Bistellar factorization of one stellar subdivision at a d-face.

    Applied to the boundary of the (2d+1)-simplex on labels 0..2d+1, the
    moves (2d,0), (2d-1,1), ..., (d,d) reproduce the stellar subdivision at
    the face (0..d); its subdivided face is then the unique missing d-face.
    """
    fresh = 2 * d + 2
    return [
        MoveDescriptor(
            k,
            2 * d - k,
            tuple(range(k + 1)),
            tuple(range(k + 2, 2 * d + 2)) + (fresh,),
        )
        for k in range(2 * d, d - 1, -1)
    ]


def triangle_subdivision_trace(sphere: Complex, face) -> list[MoveDescriptor]:
    """Three bistellar moves subdividing a 2-face of a 4-sphere.

    Requires the face to lie in exactly three facets (link a triangle
    boundary).  A fresh vertex is placed inside one containing facet, walked
    into the face's link, and the face is then exchanged away, leaving it as
    a missing face of the result.
    """
    face = simplex(face)
    star_facets = sorted(f for f in sphere.facets if set(face) <= set(f))
    if len(star_facets) != 3 or len(face) != 3 or sphere.dim != 4:
        raise ValueError("needs a 2-face of a 4-sphere with a 3-facet star")
    link_verts = set()
    for f in star_facets:
        link_verts.update(set(f) - set(face))
    phi = star_facets[0]
    x, y = sorted(set(phi) - set(face))
    (z,) = link_verts - {x, y}
    v = max(sphere.vertices) + 1
    return [
        MoveDescriptor(4, 0, phi, (v,)),
        MoveDescriptor(3, 1, tuple(sorted(face + (x,))), tuple(sorted((v, z)))),
        MoveDescriptor(2, 2, face, tuple(sorted((v, y, z)))),
    ]


def _gale_even(facet: tuple, members: set, n: int) -> bool:
    outside = [x for x in range(n) if x not in members]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for x in facet if a < x < b) & 1:
            return False
    return True


def cyclic_sphere(n: int, sphere_dim: int) -> Complex:
    """Boundary complex of the cyclic (sphere_dim+1)-polytope on n vertices.

    Facets are the (sphere_dim+1)-subsets of 0..n-1 satisfying Gale's
    evenness criterion; for n = sphere_dim + 2 this is the simplex boundary.
    """
    k = sphere_dim + 1
    if n < sphere_dim + 2:
        raise ValueError("need at least sphere_dim + 2 vertices")
    facets = [
        s for s in combinations(range(n), k) if _gale_even(s, set(s), n)
    ]
    return Complex(facets, name=f"cyclic-sphere-{n}-{sphere_dim}")


# -- trace serialization ------------------------------------------------------


def trace_to_dict(start: Complex, moves, seed=None, steps=None) -> dict:
    out = {
        "start": complex_to_dict(start),
        "moves": [m.to_json_dict() for m in moves],
        "rng": RNG_ALGORITHM,
    }
    if seed is not None:
        out["seed"] = seed
    if steps is not None:
        out["steps"] = steps
    return out


def trace_from_dict(data: dict) -> tuple[Complex, list[MoveDescriptor]]:
    start = complex_from_dict(data["start"])
    moves = [MoveDescriptor.from_json_dict(m) for m in data["moves"]]
    return start, moves
