"""Degree-constrained factors: deficiency criteria, exact finders, and the
exhaustive oracle.

The finder stack is: blossom matching (matching.py) under a vertex gadget
for exact target degrees, a collector gadget on top for interval targets,
and selector enumeration on top of that for two-point targets.  The
oracle (enumerate_factors) shares none of that machinery; it walks all
edge subsets in Gray-code order so the two routes stay independent
witnesses against each other.
"""
from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Mapping

from .errors import InputError, SizeRefusal, UNKNOWN, Unknown
from .graph import Factor, MultiGraph, validate_vertex_map
from .matching import perfect_matching

VertexMap = Mapping[int, int]


# -- deficiency criteria -------------------------------------------------


def omega_gf(
    G: MultiGraph,
    A: Iterable[int],
    B: Iterable[int],
    g: VertexMap,
    f: VertexMap,
) -> int:
    """Count components C of G - (A u B) with g = f on C and
    d(V(C), B) not congruent to sum of f over C (mod 2).

    Loops never reach B, so they do not enter the cross count.
    """
    As = G._check_vertices(A)
    Bs = G._check_vertices(B)
    if As & Bs:
        raise InputError("A and B must be disjoint")
    validate_vertex_map(G, g, "g")
    validate_vertex_map(G, f, "f")
    rest = G.without_vertices(As | Bs)
    count = 0
    for comp in rest.components():
        if any(g[v] != f[v] for v in comp):
            continue
        cross = sum(
            1
            for _, u, v in G.edges
            if u != v and ((u in comp and v in Bs) or (v in comp and u in Bs))
        )
        if cross % 2 != sum(f[v] for v in comp) % 2:
            count += 1
    return count


def lovasz_deficiency(
    G: MultiGraph,
    A: Iterable[int],
    B: Iterable[int],
    g: VertexMap,
    f: VertexMap,
) -> int:
    """RHS minus omega for the pair (A, B); nonnegative everywhere iff the
    (g, f) criterion holds."""
    As = G._check_vertices(A)
    Bs = G._check_vertices(B)
    if As & Bs:
        raise InputError("A and B must be disjoint")
    rhs = sum(f[v] for v in As)
    for v in Bs:
        d_minus_a = G.degree(v) - sum(
            1 for _, x, y in G.edges if x != y and ((x == v and y in As) or (y == v and x in As))
        )
        rhs += d_minus_a - g[v]
    return rhs - omega_gf(G, As, Bs, g, f)


def _criterion_sweep(
    G: MultiGraph,
    g: VertexMap,
    f: VertexMap,
    strict: bool,
    skip_empty: bool,
):
    """Shared (A, B) sweep; returns a violating pair or None.

    strict mode checks omega < 2 + RHS instead of omega <= RHS.
    """
    verts = list(G.vertices)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    deg = [G.degree(v) for v in verts]
    gl = [g[v] for v in verts]
    fl = [f[v] for v in verts]
    mult = [[0] * n for _ in range(n)]
    adjmask = [0] * n
    for _, u, v in G.edges:
        if u == v:
            continue
        ui, vi = idx[u], idx[v]
        mult[ui][vi] += 1
        mult[vi][ui] += 1
        adjmask[ui] |= 1 << vi
        adjmask[vi] |= 1 << ui
    full = (1 << n) - 1

    for S in range(1 << n):
        if skip_empty and S == 0:
            continue
        rest = full & ~S
        comps = []  # (parity of f-sum, cross multiplicity per vertex index)
        left = rest
        while left:
            seed_bit = left & -left
            frontier = seed_bit
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                fbits = frontier
                while fbits:
                    b = fbits & -fbits
                    fbits ^= b
                    nxt |= adjmask[b.bit_length() - 1]
                frontier = nxt & rest & ~comp
            left &= ~comp
            cbits = []
            tight = True
            cm = comp
            while cm:
                b = cm & -cm
                cm ^= b
                i = b.bit_length() - 1
                cbits.append(i)
                if gl[i] != fl[i]:
                    tight = False
            if not tight:
                continue
            par = sum(fl[i] for i in cbits) % 2
            sbits = []
            sm = S
            while sm:
                b = sm & -sm
                sm ^= b
                sbits.append(b.bit_length() - 1)
            mult_to = {j: sum(mult[i][j] for i in cbits) for j in sbits}
            comps.append((par, mult_to))

        sub = S
        while True:
            A = sub
            B = S ^ A
            omega = 0
            for par, mult_to in comps:
                cb = 0
                bm = B
                while bm:
                    b = bm & -bm
                    bm ^= b
                    cb += mult_to[b.bit_length() - 1]
                if cb % 2 != par:
                    omega += 1
            rhs = 0
            am = A
            while am:
                b = am & -am
                am ^= b
                rhs += fl[b.bit_length() - 1]
            bm = B
            while bm:
                b = bm & -bm
                bm ^= b
                j = b.bit_length() - 1
                da = 0
                amm = A
                while amm:
                    ab = amm & -amm
                    amm ^= ab
                    da += mult[j][ab.bit_length() - 1]
                rhs += deg[j] - da - gl[j]
            bad = omega >= rhs + 2 if strict else omega > rhs
            if bad:
                Aset = frozenset(verts[i] for i in range(n) if (A >> i) & 1)
                Bset = frozenset(verts[i] for i in range(n) if (B >> i) & 1)
                return Aset, Bset
            if sub == 0:
                break
            sub = (sub - 1) & S
    return None


def check_lovasz_condition(
    G: MultiGraph, g: VertexMap, f: VertexMap, cap: int = 14
) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """Exhaustive (g, f) criterion over all disjoint (A, B); witness on failure."""
    validate_vertex_map(G, g, "g")
    validate_vertex_map(G, f, "f")
    if any(g[v] > f[v] for v in G.vertices):
        raise InputError("need g <= f")
    if G.num_vertices > cap:
        raise SizeRefusal("criterion sweep cap", f"{G.num_vertices} > {cap}")
    witness = _criterion_sweep(G, g, f, strict=False, skip_empty=False)
    return witness is None, witness


def check_tutte_strict_form(
    G: MultiGraph, f: VertexMap, cap: int = 14
) -> tuple[bool, tuple[frozenset[int], frozenset[int]] | None]:
    """Strict-inequality form of the f-factor criterion for connected G with
    even f-sum, quantified over nonempty A u B."""
    validate_vertex_map(G, f, "f")
    if not G.is_connected():
        raise InputError("strict form needs a connected graph")
    if sum(f[v] for v in G.vertices) % 2 != 0:
        raise InputError("strict form needs an even f-sum")
    if G.num_vertices > cap:
        raise SizeRefusal("criterion sweep cap", f"{G.num_vertices} > {cap}")
    witness = _criterion_sweep(G, f, f, strict=True, skip_empty=True)
    return witness is None, witness


# -- exact finders -------------------------------------------------------


def find_f_factor(G: MultiGraph, f: VertexMap) -> Factor | None:
    """Factor with d_F(v) = f(v) for every v, or None.

    Every edge is first subdivided twice (the new vertices carry target 1),
    which preserves factor existence and leaves a simple graph; that graph
    goes through the exact-degree vertex gadget into the matching engine.
    """
    validate_vertex_map(G, f, "f")
    for v in G.vertices:
        if not 0 <= f[v] <= G.degree(v):
            raise InputError(f"need 0 <= f({v}) <= d({v})")
    if sum(f[v] for v in G.vertices) % 2 == 1:
        return None
    if G.num_edges == 0:
        return Factor(G, frozenset()) if all(f[v] == 0 for v in G.vertices) else None

    # subdivision: u - a - b - v per edge, targets 1 at a and b
    nxt = max(G.vertices) + 1
    sub_vertices = list(G.vertices)
    sub_edges: list[tuple[int, int]] = []
    probe_of_edge: dict[int, int] = {}  # original eid -> index of its (u, a) edge
    targets: dict[int, int] = {v: f[v] for v in G.vertices}
    for eid, u, v in G.edges:
        a, b = nxt, nxt + 1
        nxt += 2
        sub_vertices += [a, b]
        targets[a] = 1
        targets[b] = 1
        probe_of_edge[eid] = len(sub_edges)
        sub_edges.append((u, a))
        sub_edges.append((a, b))
        sub_edges.append((b, v))

    chosen = _exact_degree_matching(sub_vertices, sub_edges, targets)
    if chosen is None:
        return None
    picked = frozenset(
        eid for eid, pos in probe_of_edge.items() if pos in chosen
    )
    result = Factor(G, picked)
    if result.degrees() != {v: f[v] for v in G.vertices}:
        raise AssertionError("factor reconstruction missed its targets")
    return result


def _exact_degree_matching(
    vertices: list[int],
    edges: list[tuple[int, int]],
    targets: Mapping[int, int],
) -> set[int] | None:
    """Edge-index set of a subgraph hitting exact degrees, via the endpoint
    and slack-set gadget over perfect matching; None when infeasible.

    The input graph must be simple and loopless (guaranteed by subdivision).
    """
    deg: dict[int, int] = {v: 0 for v in vertices}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v in vertices:
        if not 0 <= targets[v] <= deg[v]:
            return None

    node_count = 0
    endpoint: dict[tuple[int, int], int] = {}  # (edge index, side) -> node
    slack_of: dict[int, list[int]] = {}
    gadget_edges: list[tuple[int, int]] = []
    incident_nodes: dict[int, list[int]] = {v: [] for v in vertices}
    for i, (u, v) in enumerate(edges):
        a = node_count
        b = node_count + 1
        node_count += 2
        endpoint[(i, 0)] = a
        endpoint[(i, 1)] = b
        gadget_edges.append((a, b))
        incident_nodes[u].append(a)
        incident_nodes[v].append(b)
    for v in vertices:
        slots = deg[v] - targets[v]
        mine = list(range(node_count, node_count + slots))
        node_count += slots
        slack_of[v] = mine
        for s in mine:
            for ep in incident_nodes[v]:
                gadget_edges.append((s, ep))

    mate = perfect_matching(node_count, gadget_edges)
    if mate is None:
        return None
    chosen = {
        i
        for i in range(len(edges))
        if mate[endpoint[(i, 0)]] == endpoint[(i, 1)]
    }
    return chosen


def find_interval_factor(
    G: MultiGraph, g: VertexMap, f: VertexMap
) -> Factor | None:
    """Factor with g(v) <= d_F(v) <= f(v) everywhere, or None.

    Slack capacity f(v) - g(v) per vertex is realized as parallel edges to
    one shared collector vertex whose own target absorbs any slack profile;
    loops at the collector (plus a one-edge parity pad) free the total
    parity, which a per-vertex satellite could not do.
    """
    validate_vertex_map(G, g, "g")
    validate_vertex_map(G, f, "f")
    if any(g[v] > f[v] for v in G.vertices):
        raise InputError("need g <= f")
    g_eff = {v: max(0, g[v]) for v in G.vertices}
    f_eff = {v: min(G.degree(v), f[v]) for v in G.vertices}
    if any(g_eff[v] > f_eff[v] for v in G.vertices):
        return None
    if all(g_eff[v] == f_eff[v] for v in G.vertices):
        return find_f_factor(G, f_eff)

    caps = {v: f_eff[v] - g_eff[v] for v in G.vertices}
    s_total = sum(caps.values())
    sum_f = sum(f_eff.values())
    collector = max(G.vertices) + 1
    fz = s_total + ((s_total - sum_f) % 2)
    n_loops = (fz + 1) // 2
    extra: list[tuple[int, int]] = []
    for v in G.vertices:
        extra.extend((v, collector) for _ in range(caps[v]))
    extra.extend((collector, collector) for _ in range(n_loops))

    base_ids = set(G.edge_ids)
    host = MultiGraph(
        list(G.vertices) + [collector],
        list(G.edges) + [
            (max(base_ids, default=0) + 1 + i, u, v) for i, (u, v) in enumerate(extra)
        ],
    )
    targets = dict(f_eff)
    targets[collector] = fz
    lifted = find_f_factor(host, targets)
    if lifted is None:
        return None
    result = Factor(G, lifted.edge_ids & base_ids)
    for v in G.vertices:
        if not g_eff[v] <= result.degree(v) <= f_eff[v]:
            raise AssertionError("interval factor outside its window")
    return result


def find_two_point_factor(
    G: MultiGraph,
    g: VertexMap,
    f: VertexMap,
    pin: tuple[int, int] | None = None,
    cap_free: int = 16,
    budget: int = 512,
    seed: int = 0,
) -> Factor | None | Unknown:
    """Factor with d_F(v) in {g(v), f(v)} everywhere, or None, or UNKNOWN.

    Complete while the number of strict g < f vertices is at most cap_free:
    a two-point factor exists iff it is an h-factor for some selector h, so
    enumerating selectors (with the parity filter) and solving each exactly
    decides the question.  Beyond the cap a seeded sample of selectors is
    tried and exhaustion reports UNKNOWN rather than none.
    """
    validate_vertex_map(G, g, "g")
    validate_vertex_map(G, f, "f")
    if any(g[v] > f[v] for v in G.vertices):
        raise InputError("need g <= f")
    base = {v: g[v] for v in G.vertices}
    if pin is not None:
        z, val = pin
        G._check_vertex(z)
        if val not in (g[z], f[z]):
            raise InputError(f"pinned value {val} is neither g({z}) nor f({z})")
        base[z] = val
    free = [v for v in G.vertices if g[v] < f[v] and (pin is None or v != pin[0])]

    def attempt(selected: set[int]) -> Factor | None:
        h = dict(base)
        for v in selected:
            h[v] = f[v]
        if sum(h.values()) % 2 == 1:
            return None
        if any(not 0 <= h[v] <= G.degree(v) for v in G.vertices):
            return None
        return find_f_factor(G, h)

    if len(free) <= cap_free:
        for r in range(len(free) + 1):
            for combo in itertools.combinations(free, r):
                found = attempt(set(combo))
                if found is not None:
                    return found
        return None

    rng = random.Random(seed)
    for _ in range(budget):
        selected = {v for v in free if rng.random() < 0.5}
        found = attempt(selected)
        if found is not None:
            return found
    return UNKNOWN


# -- exhaustive oracle ---------------------------------------------------


def enumerate_factors(
    G: MultiGraph,
    predicate: Callable[[dict[int, int]], bool] | None = None,
    cap: int = 20,
) -> list[Factor]:
    """All edge subsets whose degree vectors satisfy the predicate.

    Pure Gray-code enumeration, independent of every finder above; this is
    the oracle that the clever routes are tested against.
    """
    m = G.num_edges
    if m > cap:
        raise SizeRefusal("oracle cap", f"{m} edges exceeds cap {cap}")
    ids = list(G.edge_ids)
    ends = [G.endpoints(eid) for eid in ids]
    degs = {v: 0 for v in G.vertices}
    in_set = [False] * m
    out: list[Factor] = []

    def flip(j: int) -> None:
        u, v = ends[j]
        delta = -1 if in_set[j] else 1
        if u == v:
            degs[u] += 2 * delta
        else:
            degs[u] += delta
            degs[v] += delta
        in_set[j] = not in_set[j]

    if predicate is None or predicate(degs):
        out.append(Factor(G, frozenset()))
    for i in range(1, 1 << m):
        flip((i & -i).bit_length() - 1)
        if predicate is None or predicate(degs):
            out.append(Factor(G, frozenset(ids[j] for j in range(m) if in_set[j])))
    return out


def factor_exists(
    G: MultiGraph,
    predicate: Callable[[dict[int, int]], bool],
    cap: int = 20,
) -> bool:
    """Early-exit variant of enumerate_factors."""
    m = G.num_edges
    if m > cap:
        raise SizeRefusal("oracle cap", f"{m} edges exceeds cap {cap}")
    ids = list(G.edge_ids)
    ends = [G.endpoints(eid) for eid in ids]
    degs = {v: 0 for v in G.vertices}
    in_set = [False] * m
    if predicate(degs):
        return True
    for i in range(1, 1 << m):
        j = (i & -i).bit_length() - 1
        u, v = ends[j]
        delta = -1 if in_set[j] else 1
        if u == v:
            degs[u] += 2 * delta
        else:
            degs[u] += delta
            degs[v] += delta
        in_set[j] = not in_set[j]
        if predicate(degs):
            return True
    return False
