"""Witness-cycle surgery across bistellar moves on skeleta.

Given a d-complex K, an induced region T isomorphic to the d-skeleton of
(full p-simplex) * (boundary of a q-simplex) with p + q = 2d, and the moved
complex L (region replaced by the complementary ball's skeleton), a witness
cycle for the nonvanishing obstruction of K is rebuilt into one for L in
three steps: strip the cells touching the removed face, patch the resulting
holes inside the inserted ball, then repair the remaining slice boundaries
with a homological coning anchored at a vertex outside the region.

The coning operation assigns to each small simplex rho of the common complex
a chain cone(rho) behaving like the cone from the anchor vertex: its
boundary is rho plus the cones of rho's facets, and any region vertex it
uses already lies in rho.  When the anchor edge is absent the chain is found
by a deterministic mod-2 solve in the complex with the other region vertices
deleted, which succeeds exactly when the punctured complex has vanishing
homology below dimension d (the structural assumption on the move).

Every internal claim the construction relies on (extracted link chains are
cycles and vanish on the region, patch sums over facet stars are cycles,
removed cells touch the old region and added cells the new one) is asserted
at runtime and surfaced through a stats dict, so a completed transport is
itself a verified certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .complexes import (
    Chain,
    Complex,
    Simplex,
    boundary_of_simplex,
    delete_vertices,
    full_simplex,
    induced,
    intersect,
    join,
    join_chains,
    missing_faces,
    simplex,
    simplex_facets,
    skeleton,
    with_face,
)
from .deleted_product import PairChain, pair_boundary, pair_chain_of, slice_at
from .homology import betti_gf2, solve_boundary
from .obstruction import ObstructionReport, evaluate, obstruction
from .pachner import MoveDescriptor, apply_move, trace_states


class SurgeryError(Exception):
    """A structural precondition or an internal claim of the surgery failed."""


@dataclass(frozen=True)
class SkeletonMoveContext:
    """A bistellar move at skeleton level, with everything surgery needs.

    complex_before/complex_after are the d-complexes K and L (possibly with
    an extra missing face adjoined), region_before/region_after the
    d-skeleta of sigma * boundary(tau) and boundary(sigma) * tau, and apex a
    vertex outside the region used as the coning anchor (None when the move
    never needs coning, e.g. p > d transports).
    """

    complex_before: Complex
    complex_after: Complex
    region_before: Complex
    region_after: Complex
    sigma: Simplex
    tau: Simplex
    p: int
    q: int
    d: int
    apex: int | None

    @property
    def common(self) -> Complex:
        return intersect(self.complex_before, self.complex_after)


@dataclass
class AssumptionReport:
    ok: bool
    outside_vertex_ok: bool
    homology_violation: tuple | None  # (rho, dimension) of the first failure
    checked_faces: int


def _region_complexes(sigma: Simplex, tau: Simplex, d: int) -> tuple[Complex, Complex]:
    before = skeleton(join(full_simplex(sigma), boundary_of_simplex(tau)), d)
    after = skeleton(join(boundary_of_simplex(sigma), full_simplex(tau)), d)
    return before, after


def skeleton_move_context(
    complex_before: Complex,
    sigma,
    tau,
    d: int,
    apex: int | None = None,
    complex_after: Complex | None = None,
) -> SkeletonMoveContext:
    """Assemble and validate a skeleton-level move context.

    Checks that the region is an induced subcomplex, that the open star of
    sigma stays inside it, and that the inserted simplex is missing.  When
    complex_after is not given it is built by performing the exchange.
    """
    sigma = simplex(sigma)
    tau = simplex(tau)
    p, q = len(sigma) - 1, len(tau) - 1
    if p + q != 2 * d:
        raise SurgeryError(f"move type ({p},{q}) does not match dimension {d}")
    if set(sigma) & set(tau):
        raise SurgeryError("sigma and tau must be vertex-disjoint")
    K = complex_before
    region_before, region_after = _region_complexes(sigma, tau, d)
    for f in region_before.face_set():
        if not K.has_face(f):
            raise SurgeryError(f"region face {f} is not a face of the complex")
    if q <= d and K.has_face(tau):
        raise SurgeryError(f"inserted simplex {tau} is already a face")
    if induced(K, region_before.vertices) != region_before:
        raise SurgeryError("region is not an induced subcomplex")
    sset = set(sigma)
    for f in K.face_set():
        if sset <= set(f) and not region_before.has_face(f):
            raise SurgeryError(f"open star leaks outside the region at {f}")
    L_faces = {f for f in K.face_set() if not sset <= set(f)}
    L_faces.update(region_after.face_set())
    L_built = Complex(L_faces, name=K.name)
    if complex_after is None:
        complex_after = L_built
    elif complex_after != L_built:
        raise SurgeryError("complex_after does not match the move image")
    if apex is None:
        outside = sorted(set(K.vertices) - set(region_before.vertices))
        apex = outside[0] if outside else None
    elif apex in set(region_before.vertices) | set(region_after.vertices):
        raise SurgeryError(f"apex {apex} lies in the moved region")
    return SkeletonMoveContext(
        K, complex_after, region_before, region_after, sigma, tau, p, q, d, apex
    )


def transport_context(
    sphere: Complex, move: MoveDescriptor, missing: Simplex, d: int
) -> SkeletonMoveContext:
    """Context for carrying a witness across a move that preserves a missing face."""
    missing = simplex(missing)
    after = apply_move(sphere, move)
    if missing not in missing_faces(sphere, d):
        raise SurgeryError(f"{missing} is not a missing {d}-face of the sphere")
    if missing not in missing_faces(after, d):
        raise SurgeryError(f"{missing} is not preserved by the move")
    K = with_face(skeleton(sphere, d), missing)
    L = with_face(skeleton(after, d), missing)
    return skeleton_move_context(K, move.sigma, move.tau, d, complex_after=L)


def fresh_face_context(
    sphere: Complex, move: MoveDescriptor, missing: Simplex, d: int
) -> SkeletonMoveContext:
    """Context for a move of type (d+1, d-1) that creates the missing face.

    The missing face must be apex * tau for a vertex outside the region; the
    witness is then built directly rather than transported.
    """
    missing = simplex(missing)
    if move.p != d + 1 or move.q != d - 1:
        raise SurgeryError("not a freshly created missing face: wrong move type")
    tau_set = set(move.tau)
    extra = set(missing) - tau_set
    if not tau_set <= set(missing) or len(extra) != 1:
        raise SurgeryError("not a freshly created missing face: wrong shape")
    apex = extra.pop()
    if apex in set(move.sigma) | tau_set:
        raise SurgeryError("not a freshly created missing face: apex inside the region")
    after = apply_move(sphere, move)
    if missing not in missing_faces(after, d):
        raise SurgeryError(f"{missing} is not a missing {d}-face after the move")
    K = skeleton(sphere, d)
    L = with_face(skeleton(after, d), missing)
    ctx = skeleton_move_context(K, move.sigma, move.tau, d, apex=apex)
    # adjoining the missing face to the moved complex does not disturb the
    # region structure; rebuild the context with the enriched L
    return SkeletonMoveContext(
        ctx.complex_before,
        with_face(ctx.complex_after, missing),
        ctx.region_before,
        ctx.region_after,
        ctx.sigma,
        ctx.tau,
        ctx.p,
        ctx.q,
        ctx.d,
        apex,
    )


def check_assumptions(ctx: SkeletonMoveContext) -> AssumptionReport:
    """Verify the anchor vertex exists and the punctured homology vanishes.

    For every face rho of the common region, deleting the other region
    vertices from the complex must leave vanishing mod-2 homology in
    dimensions 0..d-1; the first violation is reported.
    """
    outside_ok = ctx.apex is not None
    region_verts = set(ctx.region_before.vertices)
    shared = intersect(ctx.region_before, ctx.region_after)
    violation = None
    checked = 0
    for rho in sorted(shared.face_set(include_empty=True), key=lambda s: (len(s), s)):
        checked += 1
        removed = region_verts - set(rho)
        sub = delete_vertices(ctx.complex_before, removed)
        betti = betti_gf2(sub)
        for i in range(0, ctx.d):
            if i + 1 < len(betti) and betti[i + 1]:
                violation = (rho, i)
                break
        if violation:
            break
    return AssumptionReport(
        ok=outside_ok and violation is None,
        outside_vertex_ok=outside_ok,
        homology_violation=violation,
        checked_faces=checked,
    )


class ConingOracle:
    """Memoized homological coning anchored at the context's apex vertex."""

    def __init__(self, ctx: SkeletonMoveContext):
        if ctx.apex is None:
            raise SurgeryError("no anchor vertex outside the region is available")
        self.ctx = ctx
        self.apex = ctx.apex
        self.ambient = ctx.common
        self.region_verts = frozenset(ctx.region_before.vertices)
        self.shared_verts = frozenset(ctx.region_before.vertices) & frozenset(
            ctx.region_after.vertices
        )
        self.memo: dict[Simplex, Chain] = {}
        self.stats = {"cones": 0, "solves": 0}

    def cone(self, rho: Simplex) -> Chain:
        """The coning chain of a simplex of dimension at most d-1."""
        rho = tuple(rho)
        if rho in self.memo:
            return self.memo[rho]
        if len(rho) - 1 > self.ctx.d - 1:
            raise SurgeryError(f"cone of {rho} exceeds dimension {self.ctx.d - 1}")
        if self.apex in rho:
            result = Chain(len(rho))
        else:
            if not self.ambient.has_face(rho):
                raise SurgeryError(f"cone target {rho} is not in the common complex")
            result = self._cone_of_missing_apex(rho)
            self._verify(rho, result)
        self.memo[rho] = result
        self.stats["cones"] += 1
        return result

    def _cone_of_missing_apex(self, rho: Simplex) -> Chain:
        joined = tuple(sorted(rho + (self.apex,)))
        if self.ambient.has_face(joined):
            return Chain.single(joined)
        target = Chain.single(rho)
        for i in range(len(rho)):
            target ^= self.cone(rho[:i] + rho[i + 1 :])
        if target.boundary():
            raise SurgeryError(f"internal error: coning target at {rho} is not a cycle")
        punctured = delete_vertices(
            self.ambient, self.shared_verts - set(rho)
        )
        for s in target.simplices:
            if not punctured.has_face(s):
                raise SurgeryError(
                    f"internal error: coning target at {rho} leaves the punctured complex"
                )
        self.stats["solves"] += 1
        solution = solve_boundary(punctured, target)
        if solution is None:
            raise SurgeryError(
                f"homology vanishing assumption fails at {rho}: no filling chain"
            )
        return solution

    def _verify(self, rho: Simplex, result: Chain) -> None:
        # boundary identity: d(cone(rho)) = rho + sum of cones of rho's facets
        expected = Chain.single(rho)
        for i in range(len(rho)):
            expected ^= self.cone(rho[:i] + rho[i + 1 :])
        if result.boundary() != expected:
            raise SurgeryError(f"coning boundary identity fails at {rho}")
        # support property: region vertices used by the cone already lie in rho
        leaked = (result.support() & self.region_verts) - set(rho)
        if leaked:
            raise SurgeryError(f"coning support property fails at {rho}: {sorted(leaked)}")

    def cone_chain(self, theta: Chain) -> Chain:
        """Linear extension; for a cycle theta the boundary returns theta."""
        out = Chain(theta.dim + 1)
        for rho in theta.simplices:
            out ^= self.cone(rho)
        return out


def _patch_on_support(gamma: Chain, memo: dict) -> Chain:
    """A chain with boundary gamma, supported on gamma's support.

    Inside a full simplex every induced complex is again a full simplex, so
    the solve is restricted to faces over the support, which keeps the patch
    disjoint from everything gamma is disjoint from.
    """
    if gamma in memo:
        return memo[gamma]
    ground = full_simplex(sorted(gamma.support()))
    patch = solve_boundary(ground, gamma)
    if patch is None:
        raise SurgeryError("internal error: no patching chain over the support")
    memo[gamma] = patch
    return patch


def transport_witness(
    ctx: SkeletonMoveContext,
    omega: PairChain,
    stats: dict | None = None,
    verify_assumptions: bool = True,
) -> PairChain:
    """Rebuild a witness cycle of complex_before into one of complex_after.

    If omega touches no face containing sigma (always the case for p > d)
    the result is omega itself.  Otherwise the three-step surgery runs with
    all internal claims asserted; the returned chain is a cycle supported on
    complex_after whose pairing with the obstruction cochain equals omega's.
    """
    stats = stats if stats is not None else {}
    d, p = ctx.d, ctx.p
    for a, b in omega.cells:
        if not (ctx.complex_before.has_face(a) and ctx.complex_before.has_face(b)):
            raise SurgeryError(f"witness cell ({a},{b}) is not supported on K")
    if pair_boundary(omega):
        raise SurgeryError("input witness is not a cycle")
    sset = set(ctx.sigma)
    removed_cells = {
        cell for cell in omega.cells if sset <= set(cell[0]) or sset <= set(cell[1])
    }
    stats.setdefault("transports", 0)
    stats["transports"] += 1
    if not removed_cells:
        stats["identity_transports"] = stats.get("identity_transports", 0) + 1
        return omega
    if verify_assumptions:
        report = check_assumptions(ctx)
        if not report.ok:
            raise SurgeryError(f"move assumptions violated: {report}")

    tau_set = set(ctx.tau)
    stripped = PairChain(omega.dim, omega.cells - removed_cells)

    # step 1: extract, for each partner simplex, the link of sigma in its slice
    halo: dict[Simplex, set] = {}
    for a, b in removed_cells:
        if sset <= set(a) and sset <= set(b):
            raise SurgeryError("internal error: both factors contain sigma")
        carrier, partner = (a, b) if sset <= set(a) else (b, a)
        rest = tuple(v for v in carrier if v not in sset)
        if not set(rest) <= tau_set or set(rest) == tau_set:
            raise SurgeryError(
                f"open star violation: {carrier} is not sigma joined into the region"
            )
        halo.setdefault(partner, set()).symmetric_difference_update((rest,))

    gammas: dict[Simplex, Chain] = {}
    for partner in sorted(halo):
        gamma = Chain(d - p - 1, halo[partner])
        if gamma.boundary():
            raise SurgeryError(f"extracted link chain at {partner} is not a cycle")
        if gamma and ctx.region_before.has_face(partner):
            raise SurgeryError(
                f"nonzero link chain at region simplex {partner}"
            )
        stats["gamma_cycles"] = stats.get("gamma_cycles", 0) + 1
        if gamma:
            gammas[partner] = gamma

    # step 2: patch each hole inside the inserted ball
    sigma_rim = Chain(p - 1, (f for f in simplex_facets(ctx.sigma)))
    patch_memo: dict[Chain, Chain] = {}
    betas: dict[Simplex, Chain] = {}
    patched = stripped
    for partner in sorted(gammas):
        gamma = gammas[partner]
        if p < d:
            beta = _patch_on_support(gamma, patch_memo)
        else:  # p == d: gamma is the (-1)-chain, patch with one vertex of tau
            w = next(v for v in ctx.tau if v not in partner)
            beta = Chain(0, ((w,),))
        if beta.boundary() != gamma:
            raise SurgeryError(f"patch at {partner} does not bound the link chain")
        if beta.support() & set(partner):
            raise SurgeryError(f"patch at {partner} is not disjoint from it")
        betas[partner] = beta
        patched ^= pair_chain_of(join_chains(sigma_rim, beta), Chain.single(partner))

    # Claim-1 style check: per lower facet, the patch sum is a cycle
    zeta_supports: dict[Simplex, Chain] = {}
    for partner, beta in betas.items():
        for rho in simplex_facets(partner):
            zeta_supports[rho] = zeta_supports.get(rho, Chain(d - p)) ^ beta
    for rho, zeta in sorted(zeta_supports.items()):
        if zeta.boundary():
            raise SurgeryError(f"patch sum over the facet star of {rho} is not a cycle")
        stats["zeta_cycles"] = stats.get("zeta_cycles", 0) + 1

    # step 3: cone away the slice boundaries left at the inserted simplices
    oracle = ConingOracle(ctx)
    problem_faces = sorted(
        tuple(sorted(f + g))
        for f in simplex_facets(ctx.sigma)
        for g in combinations(ctx.tau, d - p + 1)
    )
    result = patched
    for s in problem_faces:
        if not ctx.complex_after.has_face(s):
            raise SurgeryError(f"internal error: inserted simplex {s} missing from L")
        slice_chain = slice_at(patched, s)
        rim = slice_chain.boundary()
        if not rim:
            continue
        coned = oracle.cone_chain(rim)
        result ^= pair_chain_of(Chain.single(s), coned)
        stats["corrected_slices"] = stats.get("corrected_slices", 0) + 1

    _verify_transport(ctx, omega, result, stats)
    return result


def _verify_transport(
    ctx: SkeletonMoveContext, omega: PairChain, result: PairChain, stats: dict
) -> None:
    L = ctx.complex_after
    for a, b in result.cells:
        if not (L.has_face(a) and L.has_face(b)):
            raise SurgeryError(f"transported cell ({a},{b}) is not supported on L")
    if pair_boundary(result):
        raise SurgeryError("transported chain is not a cycle")
    deleted = omega.cells - result.cells
    added = result.cells - omega.cells
    T, T2 = ctx.region_before, ctx.region_after
    for a, b in deleted:
        if not (T.has_face(a) or T.has_face(b)):
            raise SurgeryError(f"deleted cell ({a},{b}) does not touch the old region")
    for a, b in added:
        if not (T2.has_face(a) or T2.has_face(b)):
            raise SurgeryError(f"added cell ({a},{b}) does not touch the new region")
    if ctx.p == ctx.d == ctx.q:
        for a, b in added:
            if a == ctx.tau or b == ctx.tau:
                raise SurgeryError("inserted face must stay unused by the transport")
    stats["cells_deleted"] = stats.get("cells_deleted", 0) + len(deleted)
    stats["cells_added"] = stats.get("cells_added", 0) + len(added)


def missing_face_witness(ctx: SkeletonMoveContext, missing: Simplex) -> PairChain:
    """Witness cycle for a freshly created missing face apex * tau.

    On the 2d+3 vertices (apex, sigma, tau) every d-simplex is represented
    by a chain: the missing face by itself, faces without the apex by
    themselves, and apex-cones by the coning oracle; the sum of all disjoint
    pairs of representatives is the witness.
    """
    missing = simplex(missing)
    d = ctx.d
    if ctx.q != d - 1 or ctx.p != d + 1:
        raise SurgeryError("not a freshly created missing face: wrong move type")
    apex = ctx.apex
    if apex is None or set(missing) != set(ctx.tau) | {apex}:
        raise SurgeryError("not a freshly created missing face: wrong shape")
    base = sorted(set(ctx.sigma) | set(ctx.tau))
    labels = sorted(base + [apex])
    if len(labels) != 2 * d + 3:
        raise SurgeryError("vertex budget mismatch for the witness construction")
    oracle = ConingOracle(ctx)
    chains: dict[Simplex, Chain] = {}
    for s in combinations(labels, d + 1):
        if s == missing:
            chains[s] = Chain.single(s)
        elif apex not in s:
            if not ctx.complex_after.has_face(s):
                raise SurgeryError(f"expected face {s} is missing from L")
            chains[s] = Chain.single(s)
        else:
            rho = tuple(v for v in s if v != apex)
            chains[s] = oracle.cone(rho)
    omega = PairChain(2 * d)
    for s, t in combinations(sorted(chains), 2):
        if set(s) & set(t):
            continue
        omega ^= pair_chain_of(chains[s], chains[t])
    for a, b in omega.cells:
        if not (ctx.complex_after.has_face(a) and ctx.complex_after.has_face(b)):
            raise SurgeryError(f"witness cell ({a},{b}) is not supported on L")
    if pair_boundary(omega):
        raise SurgeryError("constructed witness is not a cycle")
    return omega


# -- theorem verification over a whole trace ----------------------------------


@dataclass
class MissingFaceEntry:
    missing_face: Simplex
    witness: PairChain
    pairing: int
    direct: ObstructionReport

    @property
    def ok(self) -> bool:
        return self.pairing == 1 and not self.direct.vanishes


@dataclass
class TheoremReport:
    sphere: Complex
    dimension: int
    entries: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def verify_missing_face_theorem(
    start: Complex,
    moves,
    d: int,
    stats: dict | None = None,
    check_direct: bool = True,
) -> TheoremReport:
    """Replay a move trace from a simplex boundary, carrying witnesses.

    Along the trace a witness cycle is maintained for every missing d-face
    of the current sphere: transported when the face stays missing, copied
    from the swapped-out face for (d, d) moves, and built directly for the
    freshly created faces of (d+1, d-1) moves.  The final report pairs each
    inductive witness against the obstruction cochain and cross-checks the
    kernel-based decision.
    """
    stats = stats if stats is not None else {}
    if missing_faces(start, d):
        raise SurgeryError("trace must start at a complex without missing faces")
    states = trace_states(start, moves)
    witnesses: dict[Simplex, PairChain] = {}
    for step, move in enumerate(moves):
        before, after = states[step], states[step + 1]
        missing_before = missing_faces(before, d)
        missing_after = missing_faces(after, d)
        updated: dict[Simplex, PairChain] = {}
        for m_face in sorted(missing_after):
            if m_face in missing_before:
                ctx = transport_context(before, move, m_face, d)
                updated[m_face] = transport_witness(ctx, witnesses[m_face], stats)
            elif move.p == d and move.q == d and m_face == move.sigma:
                if move.tau not in witnesses:
                    raise SurgeryError(
                        "swap case: the inserted face was not missing before the move"
                    )
                updated[m_face] = witnesses[move.tau]
                stats["swap_reuses"] = stats.get("swap_reuses", 0) + 1
            else:
                ctx = fresh_face_context(before, move, m_face, d)
                updated[m_face] = missing_face_witness(ctx, m_face)
                stats["fresh_witnesses"] = stats.get("fresh_witnesses", 0) + 1
        witnesses = updated
    final = states[-1]
    report = TheoremReport(final, d, stats=stats)
    for m_face in sorted(witnesses):
        target = with_face(skeleton(final, d), m_face)
        pairing = evaluate(target, 2 * d, witnesses[m_face])
        direct = (
            obstruction(target, 2 * d)
            if check_direct
            else ObstructionReport(2 * d, False, None, 1, frozenset())
        )
        report.entries.append(
            MissingFaceEntry(m_face, witnesses[m_face], pairing, direct)
        )
    return report
