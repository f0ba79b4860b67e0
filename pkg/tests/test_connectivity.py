"""Connectivity layer against independent brute-force oracles.

The tree packer is checked against the Nash-Williams/Tutte partition
bound (exhaustive over set partitions), edge connectivity against all
2^(n-1) cuts, and the bipartite index against an exhaustive max-cut.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from factorkit.connectivity import (
    PackingRefusal,
    bipartite_index,
    bipartite_index_bounds,
    edge_connectivity,
    is_tree_connected,
    odd_cycle_packing_bound,
    spanning_tree_packing,
    toughness,
    tree_connectivity,
)
from factorkit.errors import SizeRefusal
from factorkit.graph import MultiGraph


def random_multigraph(rng, n_lo=2, n_hi=6, max_edges=12, loops=False):
    n = rng.randint(n_lo, n_hi)
    verts = list(range(1, n + 1))
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        if loops and rng.random() < 0.1:
            v = rng.choice(verts)
            edges.append((v, v))
        else:
            u, v = rng.sample(verts, 2)
            edges.append((u, v))
    return MultiGraph(verts, edges)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for i, part in enumerate(smaller):
            yield smaller[:i] + [part + [first]] + smaller[i + 1:]
        yield [[first]] + smaller


def packing_bound_holds(G, m):
    # Tutte/Nash-Williams: m spanning trees pack iff every partition P
    # has at least m(|P| - 1) cross edges
    verts = list(G.vertices)
    for partition in set_partitions(verts):
        if len(partition) < 2:
            continue
        block = {}
        for i, part in enumerate(partition):
            for v in part:
                block[v] = i
        cross = sum(1 for _, u, v in G.edges if u != v and block[u] != block[v])
        if cross < m * (len(partition) - 1):
            return False
    return True


def brute_edge_connectivity(G):
    if not G.is_connected():
        return 0
    verts = list(G.vertices)
    if len(verts) == 1:
        return float("inf")
    best = None
    anchor = verts[0]
    rest = verts[1:]
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            side = {anchor, *combo}
            if len(side) == len(verts):
                continue
            cut = sum(
                1 for _, u, v in G.edges if u != v and (u in side) != (v in side)
            )
            best = cut if best is None else min(best, cut)
    return best


def brute_bipartite_index(G):
    verts = list(G.vertices)
    best = G.num_edges
    for r in range(len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            side = set(combo)
            intra = sum(
                1
                for _, u, v in G.edges
                if u == v or (u in side) == (v in side)
            )
            best = min(best, intra)
    return best


def test_packer_agrees_with_partition_bound():
    rng = random.Random(11)
    for _ in range(250):
        G = random_multigraph(rng, n_hi=5, max_edges=14)
        for m in (1, 2, 3):
            result = spanning_tree_packing(G, m, seed=rng.randrange(2**32))
            expected = packing_bound_holds(G, m)
            if expected:
                assert not isinstance(result, PackingRefusal), (G.edges, m)
                assert result.verify()
                assert len(result.trees) == m
            else:
                assert isinstance(result, PackingRefusal), (G.edges, m)
                assert result.verify()
                assert result.cross_edges < result.bound


def test_packing_trees_are_disjoint_spanning_trees():
    rng = random.Random(3)
    for _ in range(60):
        G = random_multigraph(rng, n_lo=3, n_hi=6, max_edges=18)
        result = spanning_tree_packing(G, 2, seed=7)
        if isinstance(result, PackingRefusal):
            continue
        seen = set()
        for tree in result.trees:
            assert len(tree.edge_ids & seen) == 0
            seen |= tree.edge_ids
            T = tree.as_graph()
            assert T.is_connected() and tree.num_edges == G.num_vertices - 1


def test_single_vertex_packs_any_m():
    G = MultiGraph([1], [(1, 1)])
    result = spanning_tree_packing(G, 5)
    assert not isinstance(result, PackingRefusal)
    assert len(result.trees) == 5
    assert all(t.num_edges == 0 for t in result.trees)


def test_tree_connectivity_value():
    rng = random.Random(19)
    for _ in range(40):
        G = random_multigraph(rng, n_hi=5, max_edges=12)
        tc = tree_connectivity(G, max_m=4)
        for m in range(1, 5):
            assert is_tree_connected(G, m) == (m <= tc)


def test_edge_connectivity_matches_brute_cuts():
    rng = random.Random(23)
    for _ in range(150):
        G = random_multigraph(rng, n_hi=6, max_edges=14, loops=True)
        assert edge_connectivity(G) == brute_edge_connectivity(G)


def test_bipartite_index_matches_brute_max_cut():
    rng = random.Random(29)
    for _ in range(150):
        G = random_multigraph(rng, n_hi=7, max_edges=12, loops=True)
        value, P = bipartite_index(G)
        assert value == brute_bipartite_index(G)
        intra = sum(
            1
            for _, u, v in G.edges
            if u == v or (u in P.X) == (v in P.X)
        )
        assert intra == value


def test_bipartite_index_refuses_large_and_bounds_bracket():
    verts = list(range(1, 25))
    rng = random.Random(31)
    edges = [tuple(rng.sample(verts, 2)) for _ in range(40)]
    G = MultiGraph(verts, edges)
    with pytest.raises(SizeRefusal):
        bipartite_index(G)
    low, high, P = bipartite_index_bounds(G, seed=1)
    assert 0 <= low <= high <= G.num_edges
    intra = sum(1 for _, u, v in G.edges if u == v or (u in P.X) == (v in P.X))
    assert intra == high


def test_odd_cycle_packing_bound_on_doubled_triangle():
    edges = [(1, 2), (2, 3), (3, 1)] * 2
    G = MultiGraph(range(1, 4), edges)
    value, P = bipartite_index(G)
    assert value == 2
    ok, cycles = odd_cycle_packing_bound(G, P, 2)
    assert ok
    assert len(cycles) == 2
    used = [eid for cyc in cycles for eid in cyc]
    assert len(used) == len(set(used))
    for cyc in cycles:
        assert len(cyc) % 2 == 1


def test_odd_cycle_packing_bound_refuses_disconnected_cross():
    edges = [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]
    G = MultiGraph(range(1, 7), edges)
    value, P = bipartite_index(G)
    assert value == 2
    ok, cycles = odd_cycle_packing_bound(G, P, 2)
    assert not ok and cycles is None


def test_toughness_hand_values():
    c5 = MultiGraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    assert toughness(c5).value == Fraction(1)
    star = MultiGraph(range(1, 5), [(1, 2), (1, 3), (1, 4)])
    assert toughness(star).value == Fraction(1, 3)
    k4 = MultiGraph(range(1, 5), [(u, v) for u in range(1, 5) for v in range(u + 1, 5)])
    # complete graphs never disconnect: sentinel value
    assert toughness(k4).value is None


def test_toughness_witness_is_a_worst_cutset():
    c5 = MultiGraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    result = toughness(c5)
    S = set(result.witness)
    rest = c5.without_vertices(S)
    comps = len(rest.components())
    assert comps >= 2
    assert Fraction(len(S), comps) == result.value
