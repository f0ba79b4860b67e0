"""Blossom matching engine against exhaustive matching enumeration."""
from __future__ import annotations

import itertools
import random

from factorkit.matching import maximum_matching, perfect_matching


def brute_max_matching_size(n, edges):
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for combo in itertools.combinations(edges, r):
            used = set()
            ok = True
            for u, v in combo:
                if u == v or u in used or v in used:
                    ok = False
                    break
                used.add(u)
                used.add(v)
            if ok:
                best = max(best, r)
                break
    return best


def matching_size(mate):
    return sum(1 for v, w in enumerate(mate) if w != -1 and v < w)


def test_matching_size_matches_brute_force():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(2, 8)
        m = rng.randint(0, min(12, n * (n - 1) // 2 + 2))
        edges = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
        mate = maximum_matching(n, edges)
        for v, w in enumerate(mate):
            if w != -1:
                assert mate[w] == v
                assert (v, w) in [(a, b) for a, b in edges] or (w, v) in [
                    (a, b) for a, b in edges
                ]
        assert matching_size(mate) == brute_max_matching_size(n, edges)


def test_odd_cycles_force_blossoms():
    # C9 plus chords: maximum matching 4, needs contraction to find
    edges = [(i, (i + 1) % 9) for i in range(9)]
    mate = maximum_matching(9, edges)
    assert matching_size(mate) == 4
    # two triangles joined by a bridge: perfect matching exists
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]
    mate = maximum_matching(6, edges)
    assert matching_size(mate) == 3


def test_perfect_matching_none_on_odd_order():
    assert perfect_matching(3, [(0, 1), (1, 2)]) is None
    got = perfect_matching(4, [(0, 1), (2, 3)])
    assert got is not None
    assert matching_size(got) == 2


def test_petersen_graph_has_perfect_matching():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    got = perfect_matching(10, outer + inner + spokes)
    assert got is not None
    assert matching_size(got) == 5
