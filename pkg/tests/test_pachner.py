import json

import pytest

from vankampen.complexes import (
    euler_characteristic,
    f_vector,
    full_simplex,
    h_vector,
    link,
    missing_faces,
    skeleton,
    standard_sphere,
)
from vankampen.pachner import (
    MoveDescriptor,
    applicable_moves,
    apply_move,
    apply_trace,
    cyclic_sphere,
    random_walk,
    stellar_subdivide,
    stellar_trace,
    trace_from_dict,
    trace_states,
    trace_to_dict,
    triangle_subdivision_trace,
)


def test_applicable_moves_on_simplex_boundary():
    tetra = standard_sphere(2)
    moves = applicable_moves(tetra)
    assert [(m.p, m.q) for m in moves] == [(2, 0)] * 4
    # fresh labels are max + 1
    assert all(m.tau == (4,) for m in moves)
    # higher dimensions: only facet moves are available on a simplex boundary
    for d in (1, 2):
        c = standard_sphere(2 * d)
        assert {(m.p, m.q) for m in applicable_moves(c)} == {(2 * d, 0)}


def test_apply_and_inverse():
    tetra = standard_sphere(2)
    move = applicable_moves(tetra)[0]
    bigger = apply_move(tetra, move)
    assert f_vector(bigger) == (1, 5, 9, 6)
    inverse = move.inverse()
    assert inverse in applicable_moves(bigger)
    assert apply_move(bigger, inverse) == tetra


def test_edge_flip_round_trip():
    tetra = standard_sphere(2)
    grown = apply_move(tetra, MoveDescriptor(2, 0, (0, 1, 2), (4,)))
    flip = MoveDescriptor(1, 1, (0, 1), (3, 4))
    assert flip in applicable_moves(grown)
    flipped = apply_move(grown, flip)
    assert (3, 4) in flipped.faces(1) and (0, 1) not in flipped.faces(1)
    assert apply_move(flipped, flip.inverse()) == grown
    # after a (d, d) move the removed face is missing
    assert (0, 1) in missing_faces(flipped, 1)


def test_move_error_diagnostics():
    tetra = standard_sphere(2)
    with pytest.raises(ValueError, match="already a face"):
        apply_move(tetra, MoveDescriptor(1, 1, (0, 1), (2, 3)))
    with pytest.raises(ValueError, match="not a face"):
        apply_move(tetra, MoveDescriptor(2, 0, (5, 6, 7), (8,)))
    with pytest.raises(ValueError, match="not fresh"):
        apply_move(tetra, MoveDescriptor(2, 0, (0, 1, 2), (3,)))
    grown = apply_move(tetra, MoveDescriptor(2, 0, (0, 1, 2), (4,)))
    with pytest.raises(ValueError, match="link"):
        apply_move(grown, MoveDescriptor(1, 1, (0, 3), (3, 4)))


def test_walk_determinism_and_invariants():
    tetra = standard_sphere(2)
    final_a, trace_a = random_walk(tetra, 8, seed=7)
    final_b, trace_b = random_walk(tetra, 8, seed=7)
    assert trace_a == trace_b and final_a == final_b
    assert random_walk(tetra, 0, seed=1)[0] == tetra
    for state in trace_states(tetra, trace_a):
        assert euler_characteristic(state) == 2
        h = h_vector(state, 3)
        assert h == tuple(reversed(h))


def test_stellar_subdivision():
    tetra = standard_sphere(2)
    facet_sub = stellar_subdivide(tetra, (0, 1, 2))
    assert facet_sub == apply_move(tetra, MoveDescriptor(2, 0, (0, 1, 2), (4,)))
    edge_sub = stellar_subdivide(tetra, (0, 1))
    assert f_vector(edge_sub) == (1, 5, 9, 6)  # frozen from direct enumeration
    assert stellar_subdivide(tetra, (0,)) == tetra  # vertices are a no-op
    with pytest.raises(ValueError):
        stellar_subdivide(tetra, (7, 8))
    s5 = standard_sphere(4)
    sub = stellar_subdivide(s5, (0, 1, 2))
    assert missing_faces(sub, 2) == frozenset({(0, 1, 2)})


def test_links_after_move():
    tetra = standard_sphere(2)
    move = MoveDescriptor(2, 0, (0, 1, 2), (4,))
    grown = apply_move(tetra, move)
    from vankampen.complexes import boundary_of_simplex

    assert link(grown, (4,)) == boundary_of_simplex((0, 1, 2))


def test_cyclic_spheres():
    assert cyclic_sphere(5, 3) == standard_sphere(3)
    c = cyclic_sphere(6, 2)
    assert f_vector(c) == (1, 6, 12, 8)
    assert euler_characteristic(c) == 2
    # neighborliness: the d-skeleton of a (2d+1)-sphere on n vertices is full
    for d, n in ((1, 7), (1, 9), (2, 8)):
        sph = cyclic_sphere(n, 2 * d + 1)
        assert skeleton(sph, d) == skeleton(full_simplex(range(n)), d)
    with pytest.raises(ValueError):
        cyclic_sphere(3, 2)


def test_stellar_trace_factorizations():
    for d in (1, 2):
        start = standard_sphere(2 * d)
        moves = stellar_trace(d)
        assert [(m.p, m.q) for m in moves] == [
            (k, 2 * d - k) for k in range(2 * d, d - 1, -1)
        ]
        target = stellar_subdivide(start, tuple(range(d + 1)))
        assert apply_trace(start, moves) == target


def test_triangle_subdivision_trace():
    s5 = standard_sphere(4)
    moves = triangle_subdivision_trace(s5, (0, 1, 2))
    assert moves == stellar_trace(2)
    sub = apply_trace(s5, stellar_trace(2))
    for face in sorted(sub.faces(2))[:5]:
        try:
            extra = triangle_subdivision_trace(sub, face)
        except ValueError:
            continue
        bigger = apply_trace(sub, extra)
        assert face in missing_faces(bigger, 2)
    with pytest.raises(ValueError):
        triangle_subdivision_trace(standard_sphere(2), (0, 1, 2))


def test_trace_serialization():
    tetra = standard_sphere(2)
    final, trace = random_walk(tetra, 5, seed=2)
    data = trace_to_dict(tetra, trace, seed=2, steps=5)
    text = json.dumps(data)
    start2, moves2 = trace_from_dict(json.loads(text))
    assert start2 == tetra and moves2 == trace
    assert apply_trace(start2, moves2) == final
