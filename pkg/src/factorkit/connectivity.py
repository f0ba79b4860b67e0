"""Connectivity measures: edge connectivity, spanning tree packings with
partition refusal certificates, the bipartite index, and toughness.

The tree packer is the load-bearing routine.  It runs matroid-union
augmentation over m copies of the graphic matroid: each candidate edge is
inserted through a BFS over exchange moves (an edge enters a forest by
evicting an edge of the cycle it would close, which then re-enters some
other forest, and so on).  When the graph is not m-tree-connected the
labeled edges of the failed searches yield a partition P of the vertices
with fewer than m(|P| - 1) crossing edges, which is the exact obstruction.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import HypothesisError, InputError, SizeRefusal
from .graph import Bipartition, Factor, MultiGraph, induced_bipartite_factor


def edge_connectivity(G: MultiGraph) -> int | float:
    """Global min cut size; loops never count.  One vertex: infinity sentinel."""
    n = G.num_vertices
    if n <= 1:
        return math.inf
    w: dict[int, dict[int, int]] = {v: {} for v in G.vertices}
    for _, u, v in G.edges:
        if u == v:
            continue
        w[u][v] = w[u].get(v, 0) + 1
        w[v][u] = w[v].get(u, 0) + 1
    groups = {v: {v} for v in G.vertices}
    active = list(G.vertices)
    best = None
    while len(active) > 1:
        start = active[0]
        in_a = {start}
        order = [start]
        attach = {v: w[start].get(v, 0) for v in active if v != start}
        while len(order) < len(active):
            sel = max((v for v in active if v not in in_a), key=lambda v: attach[v])
            order.append(sel)
            in_a.add(sel)
            for u2, c in w[sel].items():
                if u2 not in in_a:
                    attach[u2] = attach.get(u2, 0) + c
        s, t = order[-2], order[-1]
        cut = attach[t]
        if best is None or cut < best:
            best = cut
        # merge t into s
        for u2, c in w[t].items():
            if u2 == s:
                continue
            w[s][u2] = w[s].get(u2, 0) + c
            w[u2][s] = w[u2].get(s, 0) + c
            del w[u2][t]
        w[s].pop(t, None)
        del w[t]
        groups[s] |= groups.pop(t)
        active.remove(t)
    return best if best is not None else 0


# -- spanning tree packings ---------------------------------------------


@dataclass(frozen=True)
class TreePacking:
    """m pairwise edge-disjoint spanning trees of the host."""

    host: MultiGraph
    trees: tuple[Factor, ...]

    @property
    def m(self) -> int:
        return len(self.trees)

    def verify(self) -> bool:
        seen: set[int] = set()
        n = self.host.num_vertices
        for tree in self.trees:
            if tree.host is not self.host:
                return False
            if seen & tree.edge_ids:
                return False
            seen |= tree.edge_ids
            if n <= 1:
                if tree.num_edges != 0:
                    return False
                continue
            if tree.num_edges != n - 1:
                return False
            if not tree.as_graph().is_connected():
                return False
        return True


@dataclass(frozen=True)
class PackingRefusal:
    """Partition certificate: fewer than m(|P| - 1) edges cross the parts."""

    host: MultiGraph
    parts: tuple[frozenset[int], ...]
    cross_edges: int
    m: int

    @property
    def bound(self) -> int:
        return self.m * (len(self.parts) - 1)

    def verify(self) -> bool:
        lookup = {}
        for i, part in enumerate(self.parts):
            for v in part:
                if v in lookup:
                    return False
                lookup[v] = i
        if set(lookup) != set(self.host.vertex_set):
            return False
        cross = sum(
            1 for _, u, v in self.host.edges if u != v and lookup[u] != lookup[v]
        )
        return cross == self.cross_edges and cross < self.bound


class _ForestState:
    """m edge-disjoint forests over indexed vertices, with path queries."""

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        self.adj: list[dict[int, list[tuple[int, int]]]] = [
            {v: [] for v in range(n)} for _ in range(m)
        ]
        self.members: list[set[int]] = [set() for _ in range(m)]
        self.where: dict[int, int] = {}  # eid -> forest index

    def add(self, fi: int, eid: int, u: int, v: int) -> None:
        self.adj[fi][u].append((eid, v))
        self.adj[fi][v].append((eid, u))
        self.members[fi].add(eid)
        self.where[eid] = fi

    def remove(self, fi: int, eid: int, u: int, v: int) -> None:
        self.adj[fi][u].remove((eid, v))
        self.adj[fi][v].remove((eid, u))
        self.members[fi].discard(eid)
        del self.where[eid]

    def path(self, fi: int, a: int, b: int) -> list[int] | None:
        """Edge ids of the unique a-b path in forest fi, or None."""
        if a == b:
            return []
        prev: dict[int, tuple[int, int]] = {a: (-1, -1)}
        q = deque([a])
        while q:
            v = q.popleft()
            for eid, w in self.adj[fi][v]:
                if w not in prev:
                    prev[w] = (eid, v)
                    if w == b:
                        path = []
                        cur = b
                        while cur != a:
                            eid2, p = prev[cur]
                            path.append(eid2)
                            cur = p
                        return path
                    q.append(w)
        return None

    def acyclic_and_sized(self) -> bool:
        for fi in range(self.m):
            parent = list(range(self.n))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            count = 0
            for v in range(self.n):
                for eid, w in self.adj[fi][v]:
                    if v < w or (v == w):
                        count += 1
                        ra, rb = find(v), find(w)
                        if ra == rb:
                            return False
                        parent[ra] = rb
            if count != len(self.members[fi]):
                return False
        return True


def spanning_tree_packing(
    G: MultiGraph, m: int, seed: int | None = None
) -> TreePacking | PackingRefusal:
    """m edge-disjoint spanning trees, or the violated partition.

    A single-vertex graph is m-tree-connected for every m (empty trees).
    """
    if m < 0:
        raise InputError("m must be nonnegative")
    n = G.num_vertices
    if m == 0:
        return TreePacking(G, ())
    if n <= 1:
        return TreePacking(G, tuple(Factor(G, frozenset()) for _ in range(m)))

    verts = list(G.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    nonloop = [(eid, idx[u], idx[v]) for eid, u, v in G.edges if u != v]
    if len(nonloop) < m * (n - 1):
        # too few edges overall: singletons already violate the count
        parts = tuple(frozenset([v]) for v in verts)
        return PackingRefusal(G, parts, len(nonloop), m)

    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(nonloop)

    state = _ForestState(n, m)
    by_id = {eid: (u, v) for eid, u, v in nonloop}

    def try_augment(e0: int, mutate: bool = True) -> tuple[bool, set[int]]:
        labels: dict[int, tuple[int, int] | None] = {e0: None}
        q = deque([e0])
        while q:
            x = q.popleft()
            xu, xv = by_id[x]
            for fi in range(m):
                path = state.path(fi, xu, xv)
                if path is None:
                    if not mutate:
                        raise AssertionError("probe found an augmentation")
                    # each chain edge leaves the forest where it blocked its
                    # predecessor and enters the one it was probed against
                    cur, target = x, fi
                    while True:
                        cu, cv = by_id[cur]
                        par = labels[cur]
                        if par is not None:
                            state.remove(par[1], cur, cu, cv)
                        state.add(target, cur, cu, cv)
                        if par is None:
                            break
                        cur, target = par
                    if not state.acyclic_and_sized():
                        raise AssertionError("augmentation chain left a non-forest")
                    return True, set()
                for y in path:
                    if y not in labels:
                        labels[y] = (x, fi)
                        q.append(y)
        return False, set(labels)

    unused: list[int] = []
    for eid, _, _ in nonloop:
        if eid in state.where:
            continue
        ok, _ = try_augment(eid)
        if not ok:
            unused.append(eid)
    progress = True
    while progress and unused:
        progress = False
        still = []
        for eid in unused:
            ok, _ = try_augment(eid)
            if ok:
                progress = True
            else:
                still.append(eid)
        unused = still

    sizes = [len(state.members[fi]) for fi in range(m)]
    if sum(sizes) == m * (n - 1):
        trees = tuple(Factor(G, frozenset(state.members[fi])) for fi in range(m))
        packing = TreePacking(G, trees)
        if not packing.verify():
            raise AssertionError("packer produced an invalid packing")
        return packing

    # certificate: labeled edges of the final failed searches are intra-part
    labeled: set[int] = set()
    for eid in unused:
        _, labs = try_augment(eid, mutate=False)
        labeled |= labs
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in labeled:
        u, v = by_id[eid]
        ra, rb = find(u), find(v)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for v in verts:
        groups.setdefault(find(idx[v]), set()).add(v)
    parts = tuple(frozenset(g) for g in sorted(groups.values(), key=min))
    lookup = {v: i for i, part in enumerate(parts) for v in part}
    cross = sum(1 for eid, u, v in nonloop if lookup[verts[u]] != lookup[verts[v]])
    refusal = PackingRefusal(G, parts, cross, m)
    if not refusal.verify():
        raise AssertionError("refusal certificate failed its own recount")
    return refusal


def is_tree_connected(G: MultiGraph, m: int, seed: int | None = None) -> bool:
    return isinstance(spanning_tree_packing(G, m, seed=seed), TreePacking)


def tree_connectivity(G: MultiGraph, max_m: int | None = None) -> int:
    """Largest m with an m-tree packing (linear scan; desk scale)."""
    if G.num_vertices <= 1:
        return max_m if max_m is not None else 10**9
    nonloop = sum(1 for _, u, v in G.edges if u != v)
    ceiling = nonloop // max(1, G.num_vertices - 1)
    if max_m is not None:
        ceiling = min(ceiling, max_m)
    best = 0
    for m in range(1, ceiling + 1):
        if not is_tree_connected(G, m):
            break
        best = m
    return best


# -- bipartite index -----------------------------------------------------


def bipartite_index(G: MultiGraph, cap: int = 20) -> tuple[int, Bipartition]:
    """Exact bi(G): the minimum of e(X) + e(Y) over bipartitions, with witness.

    Loops are never cut, so they always contribute.  Exhaustive over
    2^(n-1) sides; refuses above the cap.
    """
    n = G.num_vertices
    if n > cap:
        raise SizeRefusal(
            "bipartite index exact cap",
            f"{n} vertices exceeds cap {cap}; use bipartite_index_bounds",
        )
    verts = list(G.vertices)
    loops = sum(1 for _, u, v in G.edges if u == v)
    if n <= 1:
        return G.num_edges, Bipartition(frozenset(verts), frozenset())
    idx = {v: i for i, v in enumerate(verts)}
    nonloop = [(idx[u], idx[v]) for _, u, v in G.edges if u != v]

    import numpy as np

    masks = np.arange(1 << (n - 1), dtype=np.uint64)
    same = np.zeros(len(masks), dtype=np.int64)

    def side(i: int):
        if i == 0:
            return np.zeros(len(masks), dtype=np.uint64)
        return (masks >> np.uint64(i - 1)) & np.uint64(1)

    for ui, vi in nonloop:
        same += (side(ui) == side(vi)).astype(np.int64)
    at = int(same.argmin())
    best = int(same[at]) + loops
    X = frozenset(
        v for v in verts if idx[v] == 0 or not ((at >> (idx[v] - 1)) & 1)
    )
    return best, Bipartition(X, frozenset(verts) - X)


def bipartite_index_bounds(
    G: MultiGraph, seed: int = 0, restarts: int = 8
) -> tuple[int, int, Bipartition]:
    """(lower, upper, witness) for bi(G) beyond the exact cap.

    Upper bound from local search; lower bound from the odd-cycle packing
    argument applied to the best witness found (0 when it does not apply).
    """
    rng = random.Random(seed)
    verts = list(G.vertices)
    best_val = None
    best_part = None
    for _ in range(max(1, restarts)):
        X = {v for v in verts if rng.random() < 0.5}
        improved = True
        while improved:
            improved = False
            for v in verts:
                base = _intra_count(G, X)
                X2 = X ^ {v}
                if _intra_count(G, X2) < base:
                    X = X2
                    improved = True
        val = _intra_count(G, X)
        if best_val is None or val < best_val:
            best_val = val
            best_part = Bipartition(frozenset(X), frozenset(verts) - frozenset(X))
    lower = 0
    for k in range(best_val, 0, -1):
        ok, _ = odd_cycle_packing_bound(G, best_part, k)
        if ok:
            lower = k
            break
    return lower, best_val, best_part


def _intra_count(G: MultiGraph, X: set[int]) -> int:
    c = 0
    for _, u, v in G.edges:
        if (u in X) == (v in X):
            c += 1
    return c


def odd_cycle_packing_bound(
    G: MultiGraph, P: Bipartition, k: int
) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    """Certify bi(G) >= k from a k-tree-connected cross factor plus k intra edges.

    Returns (True, cycles) where cycles are k pairwise edge-disjoint odd
    cycles (edge id tuples), or (False, None) when the premises fail.
    """
    P.validate_for(G)
    if k <= 0:
        return True, ()
    cross = induced_bipartite_factor(G, P)
    intra = [
        (eid, u, v)
        for eid, u, v in G.edges
        if eid not in cross.edge_ids
    ]
    if len(intra) < k:
        return False, None
    packing = spanning_tree_packing(cross.as_graph(), k)
    if not isinstance(packing, TreePacking):
        return False, None
    cycles = []
    state = None
    for i in range(k):
        eid, u, v = intra[i]
        if u == v:
            cycles.append((eid,))
            continue
        tree = packing.trees[i].as_graph()
        path = _tree_path_edges(tree, u, v)
        cycles.append(tuple(path) + (eid,))
    for cyc in cycles:
        if len(cyc) % 2 == 0:
            raise AssertionError("even cycle in an odd-cycle certificate")
    allids = [eid for cyc in cycles for eid in cyc]
    if len(allids) != len(set(allids)):
        raise AssertionError("odd-cycle certificate reuses an edge")
    return True, tuple(cycles)


def _tree_path_edges(T: MultiGraph, a: int, b: int) -> list[int]:
    prev: dict[int, tuple[int, int]] = {a: (-1, -1)}
    q = deque([a])
    while q:
        v = q.popleft()
        if v == b:
            break
        for eid, w in T.incident(v):
            if w not in prev:
                prev[w] = (eid, v)
                q.append(w)
    if b not in prev:
        raise InputError("endpoints not connected in the tree")
    path = []
    cur = b
    while cur != a:
        eid, p = prev[cur]
        path.append(eid)
        cur = p
    return path


# -- toughness -----------------------------------------------------------


@dataclass(frozen=True)
class Toughness:
    """min |S| / omega(G - S) over separating S, exact rational; None = infinite."""

    value: Fraction | None
    witness: frozenset[int] | None

    @property
    def is_infinite(self) -> bool:
        return self.value is None


def toughness(G: MultiGraph, cap: int = 16) -> Toughness:
    n = G.num_vertices
    if n > cap:
        raise SizeRefusal(
            "toughness exact cap", f"{n} vertices exceeds cap {cap}"
        )
    verts = list(G.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    for _, u, v in G.edges:
        if u != v:
            adj[idx[u]] |= 1 << idx[v]
            adj[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1
    best: Fraction | None = None
    best_set: int | None = None
    for S in range(1 << n):
        rest = full & ~S
        if rest == 0:
            continue
        comps = 0
        left = rest
        while left:
            comps += 1
            seed_bit = left & -left
            frontier = seed_bit
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= adj[b.bit_length() - 1]
                frontier = nxt & rest & ~comp
            left &= ~comp
        if comps >= 2:
            val = Fraction(bin(S).count("1"), comps)
            if best is None or val < best:
                best = val
                best_set = S
    if best is None:
        return Toughness(None, None)
    witness = frozenset(verts[i] for i in range(n) if (best_set >> i) & 1)
    return Toughness(best, witness)
