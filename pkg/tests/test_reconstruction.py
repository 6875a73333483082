from itertools import combinations

import pytest

from vankampen.complexes import Complex, skeleton, standard_sphere
from vankampen.pachner import cyclic_sphere, random_walk, stellar_subdivide
from vankampen.reconstruction import (
    ball_boundary,
    glue_ball,
    non_skeleton_check,
    reconstruct,
)


def test_reconstruct_simplex_boundaries():
    s5 = standard_sphere(4)
    assert reconstruct(skeleton(s5, 2), 2) == s5
    s3 = standard_sphere(2)
    assert reconstruct(skeleton(s3, 1), 1) == s3


def test_reconstruct_stellar_subdivision():
    s5 = standard_sphere(4)
    sub = stellar_subdivide(s5, (0, 1, 2))
    assert reconstruct(skeleton(sub, 2), 2) == sub


def test_reconstruct_walked_spheres():
    for seed in (0, 5):
        sphere, _ = random_walk(standard_sphere(2), 6, seed=seed)
        assert reconstruct(skeleton(sphere, 1), 1) == sphere


def test_ball_boundary():
    path = Complex([(0, 1), (1, 2)])
    assert ball_boundary(path) == Complex([(0,), (2,)])
    disk = Complex([(0, 1, 2), (0, 2, 3)])
    rim = ball_boundary(disk)
    assert rim == Complex([(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(ValueError):
        ball_boundary(Complex([(0, 1, 2), (3, 4)]))


def test_glue_errors():
    s3 = standard_sphere(2)
    edge = Complex([(10, 11)])
    with pytest.raises(ValueError, match="boundary vertices"):
        glue_ball(s3, 1, edge, {10: 0})
    with pytest.raises(ValueError, match="isomorphism"):
        glue_ball(s3, 1, edge, {10: 0, 11: 0})
    path = Complex([(10, 11), (11, 12)])
    with pytest.raises(ValueError, match="isomorphism"):
        # image vertex 9 does not exist in the sphere
        glue_ball(s3, 1, path, {10: 0, 12: 9})


def test_positive_control_existing_face():
    # gluing an existing edge along its endpoints changes nothing and the
    # reconstruction returns the sphere itself
    s3 = standard_sphere(2)
    edge = Complex([(10, 11)])
    report = non_skeleton_check(s3, 1, edge, {10: 0, 11: 1})
    assert report.glued == skeleton(s3, 1)
    assert report.reconstructed == s3
    assert report.consistent_sphere_skeleton
    assert not report.boundary_induced  # the endpoints are adjacent in s3


def test_no_admissible_instance_on_the_tetrahedron():
    # every vertex pair of the boundary of the 3-simplex is adjacent, so no
    # induced 0-sphere exists to glue along
    s3 = standard_sphere(2)
    edge = Complex([(10, 11)])
    admissible = []
    for u, v in combinations(s3.vertices, 2):
        try:
            _, induced_ok = glue_ball(s3, 1, edge, {10: u, 11: v})
        except ValueError:
            continue
        if induced_ok:
            admissible.append((u, v))
    assert admissible == []


def test_glued_sphere_is_never_a_skeleton():
    # a path glued between two non-adjacent vertices pushes the edge count
    # past the planar bound, and the reconstruction detects the failure
    sphere = cyclic_sphere(6, 2)
    nonedges = [p for p in combinations(sphere.vertices, 2) if not sphere.has_face(p)]
    assert nonedges
    edge = Complex([(10, 11)])
    for u, v in nonedges:
        report = non_skeleton_check(sphere, 1, edge, {10: u, 11: v})
        assert report.boundary_induced
        assert len(report.glued.faces(1)) == 13  # 3n - 6 = 12 is the maximum
        assert not report.consistent_sphere_skeleton
    # interior vertices get fresh labels
    path = Complex([(10, 11), (11, 12)])
    u, v = nonedges[0]
    report = non_skeleton_check(sphere, 1, path, {10: u, 12: v})
    assert report.boundary_induced
    assert max(report.glued.vertices) > max(sphere.vertices)
    assert not report.consistent_sphere_skeleton
