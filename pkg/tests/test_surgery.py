import pytest

from vankampen.complexes import (
    Chain,
    Complex,
    missing_faces,
    skeleton,
    standard_sphere,
    with_face,
)
from vankampen.deleted_product import PairChain, pair_boundary, pair_cell
from vankampen.obstruction import evaluate, vk_witness
from vankampen.pachner import (
    MoveDescriptor,
    apply_move,
    apply_trace,
    random_walk,
    stellar_trace,
)
from vankampen.surgery import (
    ConingOracle,
    SurgeryError,
    check_assumptions,
    fresh_face_context,
    missing_face_witness,
    skeleton_move_context,
    transport_context,
    transport_witness,
    verify_missing_face_theorem,
)


def d1_flip_context():
    """2-sphere with an applicable edge flip and an unrelated missing edge."""
    tetra = standard_sphere(2)
    grown = apply_trace(
        tetra,
        [MoveDescriptor(2, 0, (0, 1, 2), (4,)), MoveDescriptor(2, 0, (0, 1, 3), (5,))],
    )
    flip = MoveDescriptor(1, 1, (0, 1), (4, 5))
    return grown, flip


def test_context_validation():
    grown, flip = d1_flip_context()
    ctx = skeleton_move_context(skeleton(grown, 1), flip.sigma, flip.tau, 1)
    assert ctx.p == 1 and ctx.q == 1 and ctx.apex is not None
    assert check_assumptions(ctx).ok
    # wrong move type for the dimension
    with pytest.raises(SurgeryError, match="does not match dimension"):
        skeleton_move_context(skeleton(grown, 1), (0, 1), (4, 5), 2)
    # inserted simplex already present
    with pytest.raises(SurgeryError, match="already a face"):
        skeleton_move_context(skeleton(grown, 1), (0, 4), (1, 2), 1)


def test_region_must_be_induced():
    # adding the missing diagonal of the region makes it non-induced
    grown, flip = d1_flip_context()
    cheat = with_face(skeleton(grown, 1), (4, 5))
    with pytest.raises(SurgeryError, match="already a face"):
        skeleton_move_context(cheat, flip.sigma, flip.tau, 1)


def test_outside_vertex_assumption():
    # the region covers every vertex: no coning anchor exists
    region_only = Complex([(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    ctx = skeleton_move_context(region_only, (0, 1), (2, 3), 1)
    report = check_assumptions(ctx)
    assert not report.outside_vertex_ok and not report.ok
    with pytest.raises(SurgeryError, match="anchor"):
        ConingOracle(ctx)


def test_punctured_homology_violation_reported():
    # hand-built complex: region plus two pendant vertices; deleting the
    # region vertices leaves a disconnected point pair
    faces = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4), (1, 5)]
    k = Complex(faces)
    ctx = skeleton_move_context(k, (0, 1), (2, 3), 1)
    report = check_assumptions(ctx)
    assert report.outside_vertex_ok
    assert report.homology_violation is not None
    rho, dim = report.homology_violation
    assert dim == 0 and rho == ()


def test_coning_oracle_identities():
    grown, flip = d1_flip_context()
    ctx = skeleton_move_context(skeleton(grown, 1), flip.sigma, flip.tau, 1)
    oracle = ConingOracle(ctx)
    common = ctx.common
    apex = ctx.apex
    for v in sorted(common.vertices):
        cone = oracle.cone((v,))
        if v == apex:
            assert not cone
            continue
        assert cone.boundary() == Chain(0, [(v,), (apex,)])
        leaked = (cone.support() & set(ctx.region_before.vertices)) - {v}
        assert not leaked
    # chain-level: coning a cycle gives a chain it bounds
    cycle = Chain(0, [(2,), (3,)])
    assert oracle.cone_chain(cycle).boundary() == cycle


def test_transport_identity_when_region_untouched():
    grown, flip = d1_flip_context()
    m_face = sorted(missing_faces(grown, 1))[0]
    witness = vk_witness(range(5), 1)  # supported away from the flip? not
    # necessarily; use a move with p > d instead, which never rewrites
    move = MoveDescriptor(2, 0, sorted(grown.facets)[0], (max(grown.vertices) + 1,))
    ctx = transport_context(grown, move, m_face, 1)
    omega = PairChain(2)
    assert transport_witness(ctx, omega) == omega


def test_transport_requires_cycle_and_support():
    grown, flip = d1_flip_context()
    m_face = sorted(missing_faces(grown, 1))[0]
    ctx = transport_context(grown, flip, m_face, 1)
    with pytest.raises(SurgeryError, match="not a cycle"):
        transport_witness(ctx, PairChain(2, [pair_cell((0, 1), (2, 3))]))
    with pytest.raises(SurgeryError, match="not supported"):
        transport_witness(ctx, PairChain(2, [pair_cell((8, 9), (10, 11))]))


def test_transport_preserves_pairing_on_a_flip():
    # grow a sphere, take a missing edge witness, flip an edge of the
    # witness's support, and confirm the transported cycle still pairs to 1
    start = standard_sphere(2)
    final, trace = random_walk(start, 8, seed=3)
    report = verify_missing_face_theorem(start, trace, 1)
    assert report.ok and report.entries
    for entry in report.entries:
        k = with_face(skeleton(final, 1), entry.missing_face)
        assert evaluate(k, 2, entry.witness) == 1
        assert not entry.direct.vanishes


def test_fresh_face_context_shape_errors():
    tetra = standard_sphere(2)
    move = MoveDescriptor(2, 0, (0, 1, 2), (4,))
    with pytest.raises(SurgeryError, match="wrong shape"):
        fresh_face_context(tetra, move, (0, 1), 1)  # does not contain tau
    grown = apply_move(tetra, move)
    flip = MoveDescriptor(1, 1, (0, 1), (3, 4))
    with pytest.raises(SurgeryError, match="wrong move type"):
        fresh_face_context(grown, flip, (3, 4), 1)


def test_missing_face_witness_matches_classical_cycle():
    # subdividing a facet of the tetrahedron creates missing edges (v, 4);
    # the constructed witness on 5 vertices has the classical 15-cell shape
    tetra = standard_sphere(2)
    move = MoveDescriptor(2, 0, (0, 1, 2), (4,))
    ctx = fresh_face_context(tetra, move, (3, 4), 1)
    witness = missing_face_witness(ctx, (3, 4))
    assert not pair_boundary(witness)
    assert evaluate(ctx.complex_after, 2, witness) == 1
    assert len(witness) == 15


def test_theorem_replay_base_case_and_errors():
    start = standard_sphere(2)
    report = verify_missing_face_theorem(start, [], 1)
    assert report.ok and not report.entries  # no missing faces at the start
    with pytest.raises(SurgeryError, match="without missing faces"):
        bad_start = with_face(skeleton(start, 1), (0, 1))  # not a sphere skeleton
        verify_missing_face_theorem(Complex([[0, 1], [1, 2], [0, 2], [3, 4]]), [], 1)


def test_theorem_replay_d2_stellar():
    start = standard_sphere(4)
    report = verify_missing_face_theorem(start, stellar_trace(2), 2)
    assert report.ok
    assert [e.missing_face for e in report.entries] == [(0, 1, 2)]
    assert report.stats.get("fresh_witnesses") == 1
    assert report.stats.get("swap_reuses") == 1


def test_theorem_replay_d2_with_real_transport():
    from vankampen.pachner import triangle_subdivision_trace

    start = standard_sphere(4)
    base = stellar_trace(2)
    sub = apply_trace(start, base)
    chosen = None
    for face in sorted(sub.faces(2)):
        if not set(face) <= {0, 1, 2, 3, 5, 6}:
            continue
        try:
            extra = triangle_subdivision_trace(sub, face)
        except ValueError:
            continue
        if (0, 1, 2) in missing_faces(apply_trace(sub, extra), 2):
            chosen = extra
            break
    assert chosen is not None
    stats = {}
    report = verify_missing_face_theorem(start, base + chosen, 2, stats=stats)
    assert report.ok and len(report.entries) == 2
    assert stats.get("gamma_cycles", 0) > 0  # a genuine d=2 transport ran
    assert stats.get("corrected_slices", 0) > 0
