import random
from itertools import combinations

import pytest

from vankampen.complexes import Chain, boundary_of_simplex, full_simplex, standard_sphere, vk_skeleton
from vankampen.deleted_product import (
    CellBudgetExceeded,
    PairChain,
    boundary_cell,
    build_deleted_product,
    is_pair_cycle,
    pair_boundary,
    pair_cell,
    pair_chain_of,
    slice_at,
)
from vankampen.obstruction import vk_witness


def test_pair_cell_canonicalization():
    assert pair_cell((2, 3), (0, 1)) == ((0, 1), (2, 3))
    with pytest.raises(ValueError):
        pair_cell((0, 1), (1, 2))
    with pytest.raises(ValueError):
        pair_cell((), (1, 2))


def test_build_counts():
    circle = boundary_of_simplex((0, 1, 2))
    dp = build_deleted_product(circle)
    assert {k: len(v) for k, v in dp.cells_by_dim.items()} == {0: 3, 1: 3}
    assert dp.betti_gf2() == (0, 0, 1)  # the quotient is a circle

    # a single simplex has no pair of disjoint top faces
    for d in (1, 2, 3):
        dp2 = build_deleted_product(full_simplex(range(d + 1)))
        assert not dp2.cells(2 * d)

    k5 = vk_skeleton(1)
    dpk5 = build_deleted_product(k5)
    # oracle: enumerate disjoint edge pairs directly
    edges = sorted(k5.faces(1))
    expected = sum(
        1 for a, b in combinations(edges, 2) if not set(a) & set(b)
    )
    assert len(dpk5.cells(2)) == expected == 15


def test_cell_counts_invariant_under_relabeling():
    k5 = vk_skeleton(1)
    relabeled = type(k5)([[v * 3 + 1 for v in f] for f in k5.facets])
    a = build_deleted_product(k5)
    b = build_deleted_product(relabeled)
    assert {k: len(v) for k, v in a.cells_by_dim.items()} == {
        k: len(v) for k, v in b.cells_by_dim.items()
    }


def test_boundary_formula_and_squared_zero():
    cell = pair_cell((1, 2), (3, 4))
    bnd = boundary_cell(cell)
    assert len(bnd) == 4 and bnd.dim == 1
    vertex_edge = pair_cell((0,), (1, 2))
    assert len(boundary_cell(vertex_edge)) == 2  # the empty factor is dropped
    dp = build_deleted_product(vk_skeleton(1))
    for k in sorted(dp.cells_by_dim):
        if k == 0:
            continue
        for cell in dp.cells(k):
            assert not pair_boundary(boundary_cell(cell))


def test_pair_chain_of():
    a = Chain(1, [(0, 1)])
    b = Chain(1, [(2, 3), (2, 4)])
    chain = pair_chain_of(a, b)
    assert chain.cells == {((0, 1), (2, 3)), ((0, 1), (2, 4))}
    assert pair_chain_of(a, b) == pair_chain_of(b, a)
    with pytest.raises(ValueError, match="supports not disjoint"):
        pair_chain_of(a, Chain(1, [(1, 5)]))


def test_vk_witness_is_cycle_with_sphere_slices():
    w = vk_witness(range(5), 1)
    dp = build_deleted_product(vk_skeleton(1))
    assert is_pair_cycle(w, dp)
    # slice at any edge: the boundary cycle of the triangle on the rest
    s = (0, 1)
    sl = slice_at(w, s)
    assert sl == Chain(1, [(2, 3), (2, 4), (3, 4)])
    assert sl.is_cycle()
    w2 = vk_witness(range(7), 2)
    for s in [(0, 1, 2), (1, 3, 5)]:
        sl = slice_at(w2, s)
        rest = [v for v in range(7) if v not in s]
        assert sl == Chain(2, combinations(rest, 3))
        assert sl.is_cycle()


def test_single_cell_is_not_a_cycle():
    dp = build_deleted_product(vk_skeleton(1))
    single = PairChain(2, [pair_cell((0, 1), (2, 3))])
    assert not is_pair_cycle(single, dp)
    with pytest.raises(ValueError, match="chain not supported"):
        is_pair_cycle(PairChain(2, [pair_cell((7, 8), (9, 10))]), dp)


def test_slice_criterion_equivalence():
    # a pair chain is a cycle iff every slice is a chain cycle
    dp = build_deleted_product(vk_skeleton(1))
    rng = random.Random(3)
    cells = dp.cells(2)
    kernel = dp.boundary_matrix(2).kernel_basis()
    for trial in range(12):
        if trial % 2:
            bits = 0
            for vec in kernel:
                if rng.random() < 0.5:
                    bits ^= vec
            chain = dp.bits_to_chain(2, bits)
        else:
            chain = PairChain(2, rng.sample(cells, rng.randrange(1, 6)))
        simplices = chain.simplices()
        slices_ok = all(slice_at(chain, s).is_cycle() for s in simplices)
        assert slices_ok == (not pair_boundary(chain))


def test_cell_budget():
    with pytest.raises(CellBudgetExceeded):
        build_deleted_product(vk_skeleton(2), cell_budget=100)
    dp = build_deleted_product(vk_skeleton(1), cell_budget=10**6)
    assert dp.total_cells() > 0
