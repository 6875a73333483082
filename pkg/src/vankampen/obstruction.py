"""Deciding nonvanishing of the mod-2 van Kampen obstruction.

The obstruction class in degree r pairs nontrivially with some r-cycle of
the quotient deleted product iff it is nonzero (field coefficients), so the
decision is: compute the intersection cochain of an exact general-position
map, then pair it against a kernel basis of the r-th boundary matrix.  The
kernel route also hands back a witness cycle, which downstream surgery needs.

The tool reports "obstruction vanishes", never "embeds": nonvanishing
forbids embedding into R^r, but for complexes of dimension above 1 a
vanishing mod-2 class does not certify embeddability.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Complex
from .deleted_product import (
    DeletedProduct,
    PairChain,
    build_deleted_product,
    pair_boundary,
    pair_cell,
)
from .geometry import (
    DegeneratePositionError,
    GeomMap,
    IntersectionCochain,
    intersection_cochain,
    intersection_number,
    moment_map,
    retry_params,
)

MAX_RETRIES = 5


@dataclass(frozen=True)
class ObstructionReport:
    r: int
    vanishes: bool
    witness: PairChain | None
    pairing_value: int
    cochain_support: frozenset

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "vanishes": self.vanishes,
            "witness": self.witness.to_json_list() if self.witness is not None else None,
            "pairing": self.pairing_value,
            "cochain_support_size": len(self.cochain_support),
        }


def _cochain_with_retries(c: Complex, dp: DeletedProduct, r: int, params) -> IntersectionCochain:
    base = tuple(params) if params is not None else tuple(range(1, len(c.vertices) + 1))
    attempt_params = base
    for attempt in range(MAX_RETRIES + 1):
        g = moment_map(c, r, attempt_params)
        try:
            return intersection_cochain(g, dp)
        except DegeneratePositionError:
            if attempt == MAX_RETRIES:
                raise
            attempt_params = retry_params(base, attempt)
    raise AssertionError("unreachable")


def obstruction(
    c: Complex, r: int, params=None, cell_budget: int | None = None
) -> ObstructionReport:
    """Decide whether the degree-r mod-2 obstruction of c vanishes.

    When it does not, the report carries a witness cycle pairing to 1 with
    the intersection cochain.  The decision is independent of the chosen
    moment parameters because the cochain's class is map-independent.
    """
    if r < 2:
        raise ValueError("target dimension must be >= 2")
    dp = build_deleted_product(c, cell_budget=cell_budget)
    if not dp.cells(r):
        return ObstructionReport(r, True, None, 0, frozenset())
    phi = _cochain_with_retries(c, dp, r, params)
    if r < dp.dim:
        _assert_cocycle(phi, dp, r)
    kernel = dp.boundary_matrix(r).kernel_basis()
    support_bits = dp.chain_to_bits(PairChain(r, phi.support()))
    witness_bits = None
    for vec in kernel:
        if (vec & support_bits).bit_count() & 1:
            witness_bits = vec
            break
    if witness_bits is None:
        return ObstructionReport(r, True, None, 0, phi.support())
    witness = dp.bits_to_chain(r, witness_bits)
    if pair_boundary(witness):
        raise AssertionError("internal error: kernel vector is not a cycle")
    return ObstructionReport(r, False, witness, 1, phi.support())


def _assert_cocycle(phi: IntersectionCochain, dp: DeletedProduct, r: int) -> None:
    # the intersection cochain must vanish on boundaries; a failure here
    # indicates a geometry bug, not a property of the input
    from .deleted_product import boundary_cell

    for cell in dp.cells(r + 1):
        total = 0
        for bc in boundary_cell(cell).cells:
            total ^= phi.values[bc]
        if total:
            raise AssertionError(
                f"internal error: intersection cochain not a cocycle at {cell}"
            )


def evaluate(c: Complex, r: int, w: PairChain, params=None) -> int:
    """Pair the obstruction cochain with a given cycle w.

    The value equals the obstruction class paired with the class of w for
    any general-position map, so one exact moment map certifies it.  Only
    the intersection numbers on the cells of w are evaluated.
    """
    if w.dim != r and w.cells:
        raise ValueError(f"witness dimension {w.dim} does not match target {r}")
    for a, b in w.cells:
        if not (c.has_face(a) and c.has_face(b)):
            raise ValueError(f"chain not supported: ({a}, {b}) is not a cell over c")
    if pair_boundary(w):
        raise ValueError("not a cycle")
    base = tuple(params) if params is not None else tuple(range(1, len(c.vertices) + 1))
    attempt_params = base
    for attempt in range(MAX_RETRIES + 1):
        g = moment_map(c, r, attempt_params)
        try:
            total = 0
            for a, b in w.cells:
                total ^= intersection_number(g, a, b)
            return total
        except DegeneratePositionError:
            if attempt == MAX_RETRIES:
                raise
            attempt_params = retry_params(base, attempt)
    raise AssertionError("unreachable")


def vk_witness(labels, d: int) -> PairChain:
    """The classical witness cycle: all disjoint pairs of d-faces on 2d+3 labels."""
    verts = tuple(sorted(labels))
    if len(verts) != 2 * d + 3:
        raise ValueError(f"need exactly {2 * d + 3} labels, got {len(verts)}")
    cells = []
    for a in combinations(verts, d + 1):
        rest = [v for v in verts if v not in a]
        for b in combinations(rest, d + 1):
            cells.append(pair_cell(a, b))
    return PairChain(2 * d, set(cells))
