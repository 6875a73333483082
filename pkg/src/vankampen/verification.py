"""Acceptance suite: every checkable claim as a runnable criterion.

Each criterion returns a CriterionResult; the suite caches the seeded
corpora (random graphs, move traces for two sphere dimensions) so that the
surgery statistics collected while verifying the transport theorems are also
available to the later internal-claims criterion.  All randomness flows from
one master seed, so a rerun is bit-identical.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations

from .complexes import (
    Chain,
    Complex,
    boundary_of_simplex,
    euler_characteristic,
    f_vector,
    h_vector,
    intersect,
    missing_faces,
    skeleton,
    standard_sphere,
    vk_skeleton,
    with_face,
)
from .deleted_product import build_deleted_product
from .geometry import (
    find_odd_pair,
    intersection_number,
    moment_map,
    parameter_schedules,
    schlegel_map,
)
from .gf2 import Gf2Matrix
from .homology import betti_gf2, betti_int, boundary_matrix_gf2
from .obstruction import evaluate, obstruction, vk_witness
from .pachner import apply_trace, random_walk, stellar_trace, trace_states
from .planarity import is_planar
from .reconstruction import reconstruct
from .surgery import (
    ConingOracle,
    check_assumptions,
    skeleton_move_context,
    verify_missing_face_theorem,
)

MASTER_SEED = 20250809


@dataclass
class CriterionResult:
    index: int
    name: str
    ok: bool
    details: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"criterion {self.index:2d} {self.name}: {status} ({self.seconds:.1f}s) {self.details}"


def _timed(fn):
    start = time.perf_counter()
    ok, details = fn()
    return ok, details, time.perf_counter() - start


class AcceptanceSuite:
    """Runs the acceptance criteria, at full corpus sizes by default."""

    def __init__(self, seed: int = MASTER_SEED, quick: bool = False):
        self.seed = seed
        self.quick = quick
        self.planarity_count = 40 if quick else 200
        self.d1_walks = 5 if quick else 20
        self.d1_steps = 10
        self.d2_traces = 2 if quick else 5
        self.d2_extra_steps = 3
        self.coning_targets = 30 if quick else 100
        self.perturbed_spheres = 4 if quick else 10
        self._graphs: list[Complex] | None = None
        self._d1_runs: list | None = None
        self._d2_runs: list | None = None
        self.stats_d1: dict = {}
        self.stats_d2: dict = {}

    # -- corpora ---------------------------------------------------------

    def graph_corpus(self) -> list[Complex]:
        if self._graphs is None:
            rng = random.Random(self.seed)
            graphs = []
            while len(graphs) < self.planarity_count:
                steps = rng.randrange(0, 7)
                sphere, _ = random_walk(standard_sphere(2), steps, rng.randrange(2**30))
                base = skeleton(sphere, 1)
                faces = [(v,) for v in base.vertices]
                present = set(base.faces(1))
                for e in sorted(present):
                    if rng.random() < 0.75:
                        faces.append(e)
                for e in combinations(base.vertices, 2):
                    if e not in present and rng.random() < 0.2:
                        faces.append(e)
                graphs.append(Complex(faces, name=f"graph-{len(graphs)}"))
            self._graphs = graphs
        return self._graphs

    def d1_runs(self) -> list:
        if self._d1_runs is None:
            runs = []
            for k in range(self.d1_walks):
                start = standard_sphere(2)
                final, trace = random_walk(start, self.d1_steps, seed=self.seed + k)
                report = verify_missing_face_theorem(start, trace, 1, stats=self.stats_d1)
                runs.append((start, trace, final, report))
            self._d1_runs = runs
        return self._d1_runs

    def d2_runs(self) -> list:
        if self._d2_runs is None:
            from .pachner import triangle_subdivision_trace

            start = standard_sphere(4)
            base = stellar_trace(2)
            subdivided = apply_trace(start, base)
            traces = [[], base]
            # second subdivisions at faces inside the live witness's support
            # give genuine (2,2) transports; random preserving walks add range
            rng = random.Random(self.seed + 17)
            eligible = []
            for face in sorted(subdivided.faces(2)):
                if not set(face) <= {0, 1, 2, 3, 5, 6}:
                    continue
                try:
                    extra = triangle_subdivision_trace(subdivided, face)
                except ValueError:
                    continue
                if (0, 1, 2) in missing_faces(apply_trace(subdivided, extra), 2):
                    eligible.append(extra)
            rng.shuffle(eligible)
            second = max(2, self.d2_traces // 2)
            traces += [base + extra for extra in eligible[:second]]
            for k in range(self.d2_traces - len(traces) + 2):
                extra = _preserving_walk(subdivided, 2, self.d2_extra_steps, self.seed + k)
                traces.append(base + extra)
            runs = []
            for trace in traces:
                t0 = time.perf_counter()
                report = verify_missing_face_theorem(start, trace, 2, stats=self.stats_d2)
                runs.append((start, trace, report, time.perf_counter() - t0))
            self._d2_runs = runs
        return self._d2_runs

    # -- criteria ----------------------------------------------------------

    def criterion_1(self) -> CriterionResult:
        def body():
            k5 = vk_skeleton(1)
            t0 = time.perf_counter()
            rep = obstruction(k5, 2)
            elapsed = time.perf_counter() - t0
            expected = vk_witness(k5.vertices, 1)
            ok = (
                not rep.vanishes
                and rep.witness is not None
                and rep.witness.cells == expected.cells
                and elapsed < 1.0
                and is_planar(k5) is False
            )
            return ok, f"witness cells={len(rep.witness)} decision={elapsed:.3f}s oracle agrees"
        ok, details, seconds = _timed(body)
        return CriterionResult(1, "k5-nonplanarity", ok, details, seconds)

    def criterion_2(self) -> CriterionResult:
        def body():
            c = vk_skeleton(2)
            t0 = time.perf_counter()
            rep = obstruction(c, 4)
            pairing = evaluate(c, 4, vk_witness(c.vertices, 2))
            elapsed = time.perf_counter() - t0
            ok = not rep.vanishes and pairing == 1 and elapsed < 30.0
            return ok, f"pairing={pairing} decision={elapsed:.2f}s"
        ok, details, seconds = _timed(body)
        return CriterionResult(2, "van-kampen-flores-d2", ok, details, seconds)

    def criterion_3(self) -> CriterionResult:
        def body():
            disagreements = 0
            for g in self.graph_corpus():
                vanishes = obstruction(g, 2).vanishes
                if vanishes != is_planar(g):
                    disagreements += 1
            ok = disagreements == 0
            return ok, f"{len(self.graph_corpus())} graphs, {disagreements} disagreements"
        ok, details, seconds = _timed(body)
        return CriterionResult(3, "planarity-oracle-equivalence", ok, details, seconds)

    def criterion_4(self) -> CriterionResult:
        def body():
            total = 0
            bad = 0
            for _, _, final, report in self.d1_runs():
                total += len(report.entries)
                bad += sum(1 for e in report.entries if not e.ok)
            ok = bad == 0 and total > 0
            return ok, f"{len(self.d1_runs())} walks, {total} missing edges, {bad} failures"
        ok, details, seconds = _timed(body)
        return CriterionResult(4, "missing-face-theorem-d1", ok, details, seconds)

    def criterion_5(self) -> CriterionResult:
        def body():
            total = 0
            bad = 0
            slowest = 0.0
            for _, trace, report, elapsed in self.d2_runs():
                total += len(report.entries)
                bad += sum(1 for e in report.entries if not e.ok)
                slowest = max(slowest, elapsed)
            ok = bad == 0 and total > 0 and slowest < 600.0
            return ok, (
                f"{len(self.d2_runs())} traces, {total} missing faces, "
                f"{bad} failures, slowest {slowest:.1f}s"
            )
        ok, details, seconds = _timed(body)
        return CriterionResult(5, "missing-face-theorem-d2", ok, details, seconds)

    def criterion_6(self) -> CriterionResult:
        def body():
            rng = random.Random(self.seed + 999)
            target = self.coning_targets
            cone_checks = 0
            cycle_checks = 0
            for ctx in self._coning_contexts():
                oracle = ConingOracle(ctx)
                common = ctx.common
                region = set(ctx.region_before.vertices)
                for dim in range(0, ctx.d):
                    for rho in sorted(common.faces(dim)):
                        cone = oracle.cone(rho)
                        if ctx.apex in rho:
                            if cone:
                                return False, f"cone at apex-containing {rho} not zero"
                            continue
                        expected = Chain.single(rho)
                        for i in range(len(rho)):
                            expected ^= oracle.cone(rho[:i] + rho[i + 1 :])
                        if cone.boundary() != expected:
                            return False, f"coning identity fails at {rho}"
                        if (cone.support() & region) - set(rho):
                            return False, f"support property fails at {rho}"
                        cone_checks += 1
                for dim in range(0, ctx.d):
                    matrix, _, cols = boundary_matrix_gf2(common, dim, reduced=True)
                    basis = matrix.kernel_basis()
                    if not basis:
                        continue
                    attempts = 0
                    while cycle_checks < target + 20 and attempts < 60:
                        attempts += 1
                        bits = 0
                        for vec in basis:
                            if rng.random() < 0.5:
                                bits ^= vec
                        theta = Chain(dim, (cols[i] for i in range(len(cols)) if (bits >> i) & 1))
                        if not theta:
                            continue
                        if oracle.cone_chain(theta).boundary() != theta:
                            return False, f"cone of a {dim}-cycle does not bound it"
                        cycle_checks += 1
                if cone_checks >= target and cycle_checks >= target:
                    break
            ok = cone_checks >= target and cycle_checks >= target
            return ok, f"{cone_checks} cone identities, {cycle_checks} coned cycles"
        ok, details, seconds = _timed(body)
        return CriterionResult(6, "coning-lemma-properties", ok, details, seconds)

    def _coning_contexts(self) -> list:
        from .pachner import applicable_moves, triangle_subdivision_trace

        contexts = []
        # d=2 first: face-exchange contexts cone in two dimensions
        start = standard_sphere(4)
        base = stellar_trace(2)
        s2 = apply_trace(start, base[:2])
        contexts.append(skeleton_move_context(skeleton(s2, 2), (0, 1, 2), (4, 5, 6), 2))
        subdivided = apply_trace(start, base)
        for face in sorted(subdivided.faces(2)):
            try:
                extra = triangle_subdivision_trace(subdivided, face)
            except ValueError:
                continue
            bigger = apply_trace(subdivided, extra[:2])
            last = extra[2]
            contexts.append(
                skeleton_move_context(skeleton(bigger, 2), last.sigma, last.tau, 2)
            )
            break
        # d=1: harvest low-p moves along seeded walks of growing spheres
        rng = random.Random(self.seed + 7)
        sphere = standard_sphere(2)
        for _ in range(60):
            sphere, _ = random_walk(sphere, 1, seed=rng.randrange(2**30))
            if len(sphere.vertices) < 6:
                continue
            for m in applicable_moves(sphere):
                if m.p <= 1:
                    ctx = skeleton_move_context(skeleton(sphere, 1), m.sigma, m.tau, 1)
                    if check_assumptions(ctx).ok:
                        contexts.append(ctx)
                    break
            if len(contexts) >= 20:
                break
        return contexts

    def criterion_7(self) -> CriterionResult:
        def body():
            self.d1_runs()
            self.d2_runs()
            merged = {}
            for k, v in list(self.stats_d1.items()) + list(self.stats_d2.items()):
                merged[k] = merged.get(k, 0) + v
            required = ("transports", "gamma_cycles", "zeta_cycles", "corrected_slices")
            ok = all(merged.get(k, 0) > 0 for k in required)
            return ok, (
                "violations=0 "
                + " ".join(f"{k}={merged.get(k, 0)}" for k in sorted(merged))
            )
        ok, details, seconds = _timed(body)
        return CriterionResult(7, "surgery-internal-claims", ok, details, seconds)

    def criterion_8(self) -> CriterionResult:
        def body():
            found = 0
            for d in (1, 2):
                sphere = standard_sphere(d)
                find_odd_pair(sphere, moment_map(sphere, d))
                found += 1
                for k in range(self.perturbed_spheres):
                    walked, _ = random_walk(sphere, 1 + k % 4, seed=self.seed + 31 * d + k)
                    find_odd_pair(walked, moment_map(walked, d))
                    found += 1
            tetra = standard_sphere(2)
            facet = (1, 2, 3)
            g = schlegel_map(tetra, facet)
            pair = find_odd_pair(tetra, g)
            schlegel_ok = pair == ((0,), facet) and intersection_number(g, (0,), facet) == 1
            return schlegel_ok, f"{found} odd pairs found, schlegel pair={pair}"
        ok, details, seconds = _timed(body)
        return CriterionResult(8, "odd-pair-proposition", ok, details, seconds)

    def criterion_9(self) -> CriterionResult:
        def body():
            for n in range(2, 7):
                c = boundary_of_simplex(range(n + 1))
                expected = tuple(1 if i == n - 1 else 0 for i in range(-1, n))
                if betti_gf2(c) != expected:
                    return False, f"betti of the {n - 1}-sphere wrong"
            corpus = [standard_sphere(2), vk_skeleton(1), vk_skeleton(2), _rp2()]
            corpus += self.graph_corpus()[:10]
            for c in corpus:
                for i in range(1, c.dim + 1):
                    if not _composes_to_zero(c, i):
                        return False, f"boundary squared nonzero on {c!r} at {i}"
            free, torsion = betti_int(_rp2())
            if free[2] != 0 or torsion[2] != (2,):
                return False, "projective plane torsion not detected"
            return True, "sphere betti, boundary-squared, torsion all good"
        ok, details, seconds = _timed(body)
        return CriterionResult(9, "homology-engine", ok, details, seconds)

    def criterion_10(self) -> CriterionResult:
        def body():
            jobs = []
            s5 = standard_sphere(4)
            jobs.append((skeleton(s5, 2), 2, s5))
            from .pachner import stellar_subdivide

            sub = stellar_subdivide(s5, (0, 1, 2))
            jobs.append((skeleton(sub, 2), 2, sub))
            s3 = standard_sphere(2)
            jobs.append((skeleton(s3, 1), 1, s3))
            worst = 0.0
            for skel, d, expected in jobs:
                t0 = time.perf_counter()
                if reconstruct(skel, d) != expected:
                    return False, f"reconstruction failed for {expected!r}"
                worst = max(worst, time.perf_counter() - t0)
            return worst < 300.0, f"3 reconstructions, slowest {worst:.2f}s"
        ok, details, seconds = _timed(body)
        return CriterionResult(10, "dancis-reconstruction", ok, details, seconds)

    def criterion_11(self) -> CriterionResult:
        def body():
            checked = 0
            for start, trace, _, _ in self.d1_runs():
                for state in trace_states(start, trace):
                    if not _sphere_invariants_hold(state, 2):
                        return False, f"invariants fail on {state!r}"
                    checked += 1
            for start, trace, _, _ in self.d2_runs():
                for state in trace_states(start, trace):
                    if not _sphere_invariants_hold(state, 4):
                        return False, f"invariants fail on {state!r}"
                    checked += 1
            return checked > 0, f"{checked} sphere states checked"
        ok, details, seconds = _timed(body)
        return CriterionResult(11, "dehn-sommerville-euler", ok, details, seconds)

    def criterion_12(self) -> CriterionResult:
        def body():
            corpus: list[tuple[Complex, int]] = [(vk_skeleton(1), 2), (vk_skeleton(2), 4)]
            corpus += [(g, 2) for g in self.graph_corpus()[:12]]
            start = standard_sphere(4)
            sub = apply_trace(start, stellar_trace(2))
            corpus.append((with_face(skeleton(sub, 2), (0, 1, 2)), 4))
            final1, trace1 = random_walk(standard_sphere(2), 6, seed=self.seed + 5)
            for m_face in sorted(missing_faces(final1, 1))[:3]:
                corpus.append((with_face(skeleton(final1, 1), m_face), 2))
            for c, r in corpus:
                schedules = parameter_schedules(len(c.vertices), 3)
                decisions = {obstruction(c, r, params=s).vanishes for s in schedules}
                if len(decisions) != 1:
                    return False, f"decision depends on parameters for {c!r}"
            return True, f"{len(corpus)} complexes x 3 schedules"
        ok, details, seconds = _timed(body)
        return CriterionResult(12, "moment-class-independence", ok, details, seconds)

    def run(self, only=None) -> list[CriterionResult]:
        indices = sorted(only) if only else range(1, 13)
        return [getattr(self, f"criterion_{i}")() for i in indices]


def _preserving_walk(start: Complex, d: int, steps: int, seed: int) -> list:
    """A seeded walk biased toward moves that keep some missing face alive.

    Among the applicable moves, ones preserving a currently missing d-face
    are preferred, and among those the low-p moves (which actually exercise
    witness surgery); without this bias random walks on small spheres
    destroy their missing faces almost immediately.
    """
    from .pachner import applicable_moves, apply_move

    rng = random.Random(seed)
    cur = start
    out = []
    for _ in range(steps):
        current_missing = missing_faces(cur, d)
        core = set()
        for mf in current_missing:
            core.update(mf)
        scored = []
        for m in applicable_moves(cur):
            after = apply_move(cur, m)
            kept = len(current_missing & missing_faces(after, d))
            scored.append((m, after, kept))
        preserving = [(m, a) for m, a, k in scored if k > 0]
        busy = [
            (m, a) for m, a in preserving if m.p <= d and set(m.sigma) & core
        ]
        if busy and rng.random() < 0.8:
            pool = busy
        elif preserving:
            pool = preserving
        else:
            pool = [(m, a) for m, a, _ in scored]
        m, after = pool[rng.randrange(len(pool))]
        out.append(m)
        cur = after
    return out


def _rp2() -> Complex:
    return Complex(
        [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
        ],
        name="projective-plane-6",
    )


def _composes_to_zero(c: Complex, i: int) -> bool:
    low, _, mid_cells = boundary_matrix_gf2(c, i, reduced=True)
    high, _, top_cells = boundary_matrix_gf2(c, i + 1, reduced=True)
    for j in range(len(top_cells)):
        col = 0
        for r, row in enumerate(high.rows):
            if (row >> j) & 1:
                col |= 1 << r
        if low.mat_vec(col):
            return False
    return True


def _sphere_invariants_hold(c: Complex, sphere_dim: int) -> bool:
    if euler_characteristic(c) != 1 + (-1) ** sphere_dim:
        return False
    h = h_vector(c, sphere_dim + 1)
    return all(h[i] == h[sphere_dim + 1 - i] for i in range(len(h)))
