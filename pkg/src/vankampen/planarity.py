"""Planarity by exhaustive Kuratowski-subdivision search.

A graph is planar iff it contains no subdivision of K5 or of K3,3; this
module decides that directly, by trying every choice of branch vertices and
packing internally vertex-disjoint paths between them with backtracking.
Exponential in the worst case, but meant for graphs on at most a dozen
vertices, where it is exact and fast; it is deliberately independent of the
obstruction machinery so the two can cross-check each other.
"""

from __future__ import annotations

from itertools import combinations

from .complexes import Complex


def graph_of(c: Complex) -> tuple[tuple, frozenset]:
    """Vertices and edges of the 1-skeleton of a complex."""
    return c.vertices, frozenset(c.faces(1))


def _adjacency(vertices, edges) -> dict:
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _connect_pairs(adj: dict, branch: set, pairs: list) -> bool:
    """Pack internally vertex-disjoint paths for every required pair."""
    used = set(branch)

    def paths_between(u, v, blocked):
        # direct edge first, then longer simple paths through free vertices
        if v in adj[u]:
            yield frozenset()
        stack = [(u, frozenset())]
        while stack:
            cur, interior = stack.pop()
            for w in sorted(adj[cur]):
                if w in blocked or w in interior or w == u:
                    continue
                if w == v:
                    continue
                if v in adj[w]:
                    yield interior | {w}
                stack.append((w, interior | {w}))

    def solve(idx: int) -> bool:
        if idx == len(pairs):
            return True
        u, v = pairs[idx]
        for interior in paths_between(u, v, used):
            if interior & used:
                continue
            used.update(interior)
            if solve(idx + 1):
                return True
            used.difference_update(interior)
        return False

    return solve(0)


def has_k5_subdivision(vertices, edges) -> bool:
    if len(edges) < 10:
        return False
    adj = _adjacency(vertices, edges)
    candidates = [v for v in vertices if len(adj[v]) >= 4]
    for branch in combinations(sorted(candidates), 5):
        pairs = list(combinations(branch, 2))
        if _connect_pairs(adj, set(branch), pairs):
            return True
    return False


def has_k33_subdivision(vertices, edges) -> bool:
    if len(edges) < 9:
        return False
    adj = _adjacency(vertices, edges)
    candidates = sorted(v for v in vertices if len(adj[v]) >= 3)
    for six in combinations(candidates, 6):
        first, rest = six[0], six[1:]
        for others in combinations(rest, 2):
            side_a = (first,) + others
            side_b = tuple(v for v in six if v not in side_a)
            pairs = [(a, b) for a in side_a for b in side_b]
            if _connect_pairs(adj, set(six), pairs):
                return True
    return False


def is_planar(c_or_vertices, edges=None) -> bool:
    """Exhaustive Kuratowski test: planar iff no K5 or K3,3 subdivision."""
    if edges is None:
        vertices, edges = graph_of(c_or_vertices)
    else:
        vertices = tuple(c_or_vertices)
    return not has_k5_subdivision(vertices, edges) and not has_k33_subdivision(
        vertices, edges
    )
