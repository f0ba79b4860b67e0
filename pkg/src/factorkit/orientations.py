"""Orientations of multigraphs and the factor/orientation correspondence.

Out-degree convention: a loop contributes exactly 1 to the out-degree of
its vertex, so the out-degrees of any orientation sum to |E|.

The two-point and defective finders search over out-degree selectors
(subset-sum over the per-vertex gaps) and decide each candidate exactly
with a lower/upper-bounded flow; that makes them complete below the
selector cap, because any orientation's out-degree function is itself a
selector that the sweep will reach.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import HypothesisError, InputError, UNKNOWN, Unknown
from .flow import feasible_flow
from .graph import Bipartition, Factor, MultiGraph, validate_vertex_map

VertexMap = Mapping[int, int]


@dataclass(frozen=True)
class Orientation:
    """Direction (tail, head) per edge id of the host; loops are (v, v)."""

    host: MultiGraph
    directions: Mapping[int, tuple[int, int]]

    def __post_init__(self):
        dirs = dict(self.directions)
        if set(dirs) != set(self.host.edge_ids):
            raise InputError("orientation must direct every edge exactly once")
        for eid, (tail, head) in dirs.items():
            u, v = self.host.endpoints(eid)
            if {tail, head} != {u, v}:
                raise InputError(f"edge {eid} directed between wrong endpoints")
        object.__setattr__(self, "directions", dirs)

    def outdegree(self, v: int) -> int:
        self.host._check_vertex(v)
        return sum(1 for tail, _ in self.directions.values() if tail == v)

    def outdegrees(self) -> dict[int, int]:
        out = {v: 0 for v in self.host.vertices}
        for tail, _ in self.directions.values():
            out[tail] += 1
        return out

    def reversed(self) -> "Orientation":
        return Orientation(
            self.host, {eid: (h, t) for eid, (t, h) in self.directions.items()}
        )


def eulerian_orientation(G: MultiGraph) -> Orientation:
    """Orientation with d+(v) = d(v)/2 everywhere; needs all degrees even."""
    for v in G.vertices:
        if G.degree(v) % 2 == 1:
            raise HypothesisError("even degrees", f"vertex {v} has odd degree")
    remaining: dict[int, list[tuple[int, int]]] = {
        v: list(G.incident(v)) for v in G.vertices
    }
    used: set[int] = set()
    directions: dict[int, tuple[int, int]] = {}
    for start in G.vertices:
        while True:
            # peel closed trails until start has no unused edges
            while remaining[start] and remaining[start][-1][0] in used:
                remaining[start].pop()
            if not remaining[start]:
                break
            v = start
            while True:
                while remaining[v] and remaining[v][-1][0] in used:
                    remaining[v].pop()
                if not remaining[v]:
                    break
                eid, w = remaining[v].pop()
                used.add(eid)
                directions[eid] = (v, w)
                v = w
    out = Orientation(G, directions)
    for v in G.vertices:
        if out.outdegree(v) != G.degree(v) // 2:
            raise AssertionError("trail peeling missed the half-degree law")
    return out


def interval_orientation(
    G: MultiGraph, p: VertexMap, q: VertexMap
) -> Orientation | None:
    """Orientation with p(v) <= d+(v) <= q(v) everywhere, or None.  Exact."""
    validate_vertex_map(G, p, "p")
    validate_vertex_map(G, q, "q")
    if any(p[v] > q[v] for v in G.vertices):
        raise InputError("need p <= q")
    verts = list(G.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    nonloop = [(eid, u, v) for eid, u, v in G.edges if u != v]
    n = len(verts)

    lo: dict[int, int] = {}
    hi: dict[int, int] = {}
    for v in verts:
        loops = G.loops_at(v)
        nl = G.degree(v) - 2 * loops
        l = max(0, p[v] - loops)
        h = min(nl, q[v] - loops)
        if h < 0 or l > h:
            return None
        lo[v], hi[v] = l, h

    s = 0
    vstart = 1
    estart = vstart + n
    t = estart + len(nonloop)
    arcs: list[tuple[int, int, int, int]] = []
    for j, (eid, u, v) in enumerate(nonloop):
        arcs.append((s, estart + j, 1, 1))
        arcs.append((estart + j, vstart + idx[u], 0, 1))
        arcs.append((estart + j, vstart + idx[v], 0, 1))
    for v in verts:
        arcs.append((vstart + idx[v], t, lo[v], hi[v]))
    flows = feasible_flow(t + 1, arcs, s, t)
    if flows is None:
        return None

    directions: dict[int, tuple[int, int]] = {}
    pos = 0
    for j, (eid, u, v) in enumerate(nonloop):
        to_u = flows[pos + 1]
        directions[eid] = (u, v) if to_u else (v, u)
        pos += 3
    for eid, u, v in G.edges:
        if u == v:
            directions[eid] = (u, v)
    out = Orientation(G, directions)
    for v in verts:
        if not p[v] <= out.outdegree(v) <= q[v]:
            raise AssertionError("flow step broke its own bounds")
    return out


def _selector_subsets(
    gaps: list[tuple[int, int]], target: int
) -> Iterator[set[int]]:
    """Vertex subsets whose gap values sum to target (gaps all positive)."""
    gaps = sorted(gaps, key=lambda t: -t[1])
    suffix = [0] * (len(gaps) + 1)
    for i in range(len(gaps) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + gaps[i][1]

    def rec(i: int, left: int, chosen: list[int]) -> Iterator[set[int]]:
        if left == 0:
            # gaps are positive, so no proper superset can also hit the target
            yield set(chosen)
            return
        if i >= len(gaps) or left < 0 or left > suffix[i]:
            return
        v, w = gaps[i]
        yield from rec(i + 1, left - w, chosen + [v])
        yield from rec(i + 1, left, chosen)

    yield from rec(0, target, [])


def _two_point_search(
    G: MultiGraph,
    p: VertexMap,
    q: VertexMap,
    fixed: dict[int, int],
    cap_free: int,
    budget: int,
    seed: int,
) -> Orientation | None | Unknown:
    base = {v: fixed.get(v, p[v]) for v in G.vertices}
    free = [v for v in G.vertices if v not in fixed and p[v] < q[v]]
    target = G.num_edges - sum(base.values())
    if target < 0:
        return None

    def attempt(selected: set[int]) -> Orientation | None:
        t = dict(base)
        for v in selected:
            t[v] = q[v]
        return interval_orientation(G, t, t)

    if len(free) <= cap_free:
        for subset in _selector_subsets([(v, q[v] - p[v]) for v in free], target):
            got = attempt(subset)
            if got is not None:
                return got
        return None

    rng = random.Random(seed)
    for _ in range(budget):
        selected = {v for v in free if rng.random() < 0.5}
        if sum(q[v] - p[v] for v in selected) == target:
            got = attempt(selected)
            if got is not None:
                return got
    return UNKNOWN


def two_point_orientation(
    G: MultiGraph,
    p: VertexMap,
    q: VertexMap,
    pin: tuple[int, int] | None = None,
    cap_free: int = 20,
    budget: int = 2000,
    seed: int = 0,
) -> Orientation | None | Unknown:
    """Orientation with d+(v) in {p(v), q(v)} everywhere, or None, or UNKNOWN.

    pin = (z, value) additionally fixes d+(z) = value.  Complete below the
    selector cap.
    """
    validate_vertex_map(G, p, "p")
    validate_vertex_map(G, q, "q")
    if any(p[v] > q[v] for v in G.vertices):
        raise InputError("need p <= q")
    fixed: dict[int, int] = {}
    if pin is not None:
        z, val = pin
        G._check_vertex(z)
        if val not in (p[z], q[z]):
            raise InputError(f"pinned value {val} is neither p({z}) nor q({z})")
        fixed[z] = val
    return _two_point_search(G, p, q, fixed, cap_free, budget, seed)


def z_defective_orientation(
    G: MultiGraph,
    p: VertexMap,
    q: VertexMap,
    z: int,
    k: int,
    x: Fraction | int = 0,
    cap_free: int = 20,
    budget: int = 2000,
    seed: int = 0,
) -> Orientation | None | Unknown:
    """Orientation with d+(v) in {p(v), q(v)} off z and
    -x <= d+(z) - d(z)/2 < k - x, or None, or UNKNOWN.

    x is a per-call rational constant in [0, k).
    """
    validate_vertex_map(G, p, "p")
    validate_vertex_map(G, q, "q")
    G._check_vertex(z)
    if k <= 0:
        raise InputError("window width k must be positive")
    x = Fraction(x)
    if not 0 <= x < k:
        raise InputError("need 0 <= x < k")
    half = Fraction(G.degree(z), 2)
    low = half - x
    vals = []
    val = math.ceil(low)
    while val < half + k - x:
        if 0 <= val <= G.degree(z):
            vals.append(val)
        val += 1
    vals.sort(key=lambda t: abs(Fraction(t) - half))
    for val in vals:
        got = _two_point_search(G, p, q, {z: val}, cap_free, budget, seed)
        if got is UNKNOWN:
            return UNKNOWN
        if got is not None:
            return got
    return None


# -- factor/orientation correspondence ----------------------------------


def orientation_from_factor(G: MultiGraph, P: Bipartition, F: Factor) -> Orientation:
    """Direct F's edges X to Y and the rest Y to X; G must be bipartite on P."""
    _require_bipartite(G, P)
    if F.host is not G:
        raise InputError("factor lives on a different host")
    directions = {}
    for eid, u, v in G.edges:
        xend, yend = (u, v) if u in P.X else (v, u)
        directions[eid] = (xend, yend) if eid in F.edge_ids else (yend, xend)
    return Orientation(G, directions)


def factor_from_orientation(G: MultiGraph, P: Bipartition, D: Orientation) -> Factor:
    """Keep exactly the X-to-Y directed edges.

    Degree law: d_F(v) = d+(v) on X and d(v) - d+(v) on Y.
    """
    _require_bipartite(G, P)
    if D.host is not G:
        raise InputError("orientation lives on a different host")
    picked = {
        eid for eid, (tail, head) in D.directions.items() if tail in P.X
    }
    return Factor(G, frozenset(picked))


def _require_bipartite(G: MultiGraph, P: Bipartition) -> None:
    P.validate_for(G)
    if not G.is_bipartite_with(P):
        raise InputError("graph is not bipartite with the given sides")
