"""Factor-existence theorems as executable constructions.

Each operation checks its hypotheses (refusing with a named, certified
HypothesisError when one fails), runs the construction the corresponding
proof describes, re-verifies the result, and returns a certificate.  A
construction failure under verified hypotheses raises
TheoremViolationError: that is never an expected outcome, it means a bug
or a counterexample.

Searches capped by size or budget return UNKNOWN; parity obstructions
return a NoFactorCertificate whose refutation argument is self-checking.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .connectivity import (
    PackingRefusal,
    TreePacking,
    bipartite_index,
    bipartite_index_bounds,
    edge_connectivity,
    spanning_tree_packing,
    toughness,
)
from .decompositions import (
    decompose_eulerian,
    decompose_keep_bi,
    parity_forest,
    split_tree_connected_complement,
)
from .errors import (
    HypothesisError,
    InputError,
    SizeRefusal,
    TheoremViolationError,
    UNKNOWN,
    Unknown,
    is_unknown,
)
from .factors import find_f_factor
from .graph import (
    Bipartition,
    Factor,
    MultiGraph,
    induced_bipartite_factor,
    validate_vertex_map,
)
from .orientations import (
    factor_from_orientation,
    two_point_orientation,
    z_defective_orientation,
)
from .rng import child_seed

VertexMap = Mapping[int, int]


@dataclass(frozen=True)
class TheoremParams:
    """Regime constants shared by the tree-connected statements."""

    k: int = 1
    m: int = 0
    m0: int = 0
    b: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise InputError("k must be a positive integer")
        if self.m < 0 or self.m0 < 0 or self.b < 0:
            raise InputError("m, m0 and b must be nonnegative")


@dataclass(frozen=True)
class FactorCertificate:
    """A produced factor plus everything needed to re-check it."""

    factor: Factor
    degree_report: dict[int, tuple[int, tuple[int, ...]]]
    packings: dict[str, TreePacking] = field(default_factory=dict)
    derivation: tuple[tuple[str, object], ...] = ()

    def verify(self) -> bool:
        host = self.factor.host
        if set(self.degree_report) != set(host.vertices):
            return False
        for v, (achieved, allowed) in self.degree_report.items():
            if self.factor.degree(v) != achieved or achieved not in allowed:
                return False
        for packing in self.packings.values():
            if not packing.verify():
                return False
        return True


@dataclass(frozen=True)
class NoFactorCertificate:
    """Parity refutation: every gap even forces d_F = f (mod 2) vertexwise,
    so an odd total f leaves no room for any {g,f}-factor."""

    reason: str
    f_total: int

    def verify(self, G: MultiGraph, g: VertexMap, f: VertexMap) -> bool:
        if any((f[v] - g[v]) % 2 != 0 for v in G.vertices):
            return False
        return sum(f[v] for v in G.vertices) % 2 == 1 and self.f_total % 2 == 1


def parity_criterion(G: MultiGraph, g: VertexMap, f: VertexMap) -> bool:
    """Some gap odd, or all gaps even with even total f."""
    if any((f[v] - g[v]) % 2 != 0 for v in G.vertices):
        return True
    return sum(f[v] for v in G.vertices) % 2 == 0


class _Gate:
    """Hypothesis checker; the assume flag downgrades refusals to a record."""

    def __init__(self, assume: bool):
        self.assume = assume
        self.skipped: list[str] = []

    def require(self, ok: bool, name: str, message: str = "", certificate=None):
        if ok:
            return
        if self.assume:
            self.skipped.append(name)
            return
        raise HypothesisError(name, message, certificate=certificate)


def _validate_gf(G: MultiGraph, g: VertexMap, f: VertexMap) -> None:
    validate_vertex_map(G, g, "g")
    validate_vertex_map(G, f, "f")
    bad = [v for v in G.vertices if g[v] > f[v]]
    if bad:
        raise InputError(f"need g <= f, violated at vertex {bad[0]}")


def _bi_at_least(G: MultiGraph, threshold: int, seed: int = 0) -> bool:
    """Decide bi(G) >= threshold; SizeRefusal when genuinely undecided."""
    if threshold <= 0:
        return True
    try:
        return bipartite_index(G)[0] >= threshold
    except SizeRefusal:
        lower, upper, _ = bipartite_index_bounds(G, seed=seed)
        if lower >= threshold:
            return True
        if upper < threshold:
            return False
        raise SizeRefusal(
            "bipartite index bound",
            f"cannot decide bi >= {threshold} at this size",
        )


def _degree_report(
    factor: Factor, allowed: Mapping[int, tuple[int, ...]]
) -> dict[int, tuple[int, tuple[int, ...]]]:
    return {
        v: (factor.degree(v), tuple(allowed[v]))
        for v in factor.host.vertices
    }


def _certify(
    factor: Factor,
    allowed: Mapping[int, tuple[int, ...]],
    packings: dict[str, TreePacking] | None = None,
    derivation: tuple[tuple[str, object], ...] = (),
) -> FactorCertificate:
    cert = FactorCertificate(
        factor, _degree_report(factor, allowed), packings or {}, derivation
    )
    if not cert.verify():
        raise TheoremViolationError(
            "produced factor failed its own certificate check"
        )
    return cert


# -- Eulerian half-degree factors ----------------------------------------


def eulerian_half_factor(
    G: MultiGraph,
    i: VertexMap,
    assume_hypotheses: bool = False,
) -> FactorCertificate | None:
    """Factor with d_F(v) = d_G(v)/2 + i(v) on an Eulerian graph.

    Hypotheses: |E| = t (mod 2) for t = sum |i|, (2t-1)-edge-connectivity,
    bi(G) >= t - 1, plus connectivity when t = 0 (the two-triangles
    example shows the statement fails for disconnected graphs there).
    Returns None only under assume_hypotheses.
    """
    validate_vertex_map(G, i, "i")
    gate = _Gate(assume_hypotheses)
    t = sum(abs(i[v]) for v in G.vertices)
    gate.require(G.is_eulerian(), "Eulerian", "some degree is odd")
    if t == 0:
        gate.require(
            G.is_connected(),
            "connected (needed when t = 0)",
            "half-degree factors can fail componentwise",
        )
    gate.require(
        G.num_edges % 2 == t % 2,
        "|E| = t (mod 2)",
        f"|E| = {G.num_edges}, t = {t}",
    )
    if t >= 1:
        lam = edge_connectivity(G)
        gate.require(
            lam >= 2 * t - 1,
            "(2t-1)-edge-connected",
            f"edge connectivity {lam} < {2 * t - 1}",
        )
    gate.require(
        _bi_at_least(G, t - 1),
        "bi(G) >= t-1",
        f"bipartite index below {t - 1}",
    )
    return _build_half_factor(
        G,
        i,
        assume_hypotheses,
        derivation=(("shift", {v: i[v] for v in G.vertices}),),
    )


def eulerian_half_factor_at(
    G: MultiGraph,
    z: int,
    t: int,
    assume_hypotheses: bool = False,
    seed: int = 0,
) -> FactorCertificate | None:
    """Half-degree factor shifted by t at the single vertex z.

    The displayed parity condition is read as t = |E(G)| (mod 2); the
    hypothesis name records that reading.
    """
    G._check_vertex(z)
    gate = _Gate(assume_hypotheses)
    gate.require(G.is_eulerian(), "Eulerian", "some degree is odd")
    if t == 0:
        gate.require(
            G.is_connected(),
            "connected (needed when t = 0)",
            "half-degree factors can fail componentwise",
        )
    else:
        packing = spanning_tree_packing(G, 2 * abs(t), seed=seed)
        gate.require(
            isinstance(packing, TreePacking),
            "2|t|-tree-connected",
            f"no {2 * abs(t)} disjoint spanning trees",
            certificate=packing if isinstance(packing, PackingRefusal) else None,
        )
    gate.require(
        t % 2 == G.num_edges % 2,
        "t = |E| (mod 2), reading of the displayed parity condition",
        f"t = {t}, |E| = {G.num_edges}",
    )
    gate.require(
        _bi_at_least(G, abs(t) - 1, seed=seed),
        "bi(G) >= |t|-1",
        f"bipartite index below {abs(t) - 1}",
    )
    i = {v: (t if v == z else 0) for v in G.vertices}
    return _build_half_factor(
        G, i, assume_hypotheses, derivation=(("shift-at", (z, t)),)
    )


def _build_half_factor(
    G: MultiGraph,
    i: VertexMap,
    assume: bool,
    derivation: tuple[tuple[str, object], ...],
) -> FactorCertificate | None:
    f = {}
    for v in G.vertices:
        val = G.degree(v) // 2 + i[v]
        if not 0 <= val <= G.degree(v):
            if assume:
                return None
            raise TheoremViolationError(
                f"target degree {val} at vertex {v} left [0, d] despite "
                "verified hypotheses"
            )
        f[v] = val
    factor = find_f_factor(G, f)
    if factor is None:
        if assume:
            return None
        raise TheoremViolationError(
            "guaranteed half-degree factor does not exist; "
            f"targets {f}"
        )
    return _certify(factor, {v: (f[v],) for v in G.vertices}, None, derivation)


# -- balanced selectors ---------------------------------------------------


def balanced_selector(
    G: MultiGraph, P: Bipartition, g: VertexMap, f: VertexMap
) -> dict[int, int] | None:
    """h with h(v) in {g(v), f(v)} and equal part sums, or None.

    Decided exactly: switching v from g to f moves the signed imbalance
    by +gap on X and -gap on Y, a subset-sum over the gaps.
    """
    P.validate_for(G)
    _validate_gf(G, g, f)
    sign = {v: (1 if v in P.X else -1) for v in G.vertices}
    imbalance = sum(sign[v] * g[v] for v in G.vertices)
    movers = [
        (v, sign[v] * (f[v] - g[v])) for v in G.vertices if f[v] > g[v]
    ]
    # DP over reachable imbalance shifts, with parent pointers
    reach: dict[int, tuple[int, int] | None] = {0: None}
    for pos, (v, w) in enumerate(movers):
        additions = {}
        for s, _ in reach.items():
            s2 = s + w
            if s2 not in reach and s2 not in additions:
                additions[s2] = (pos, s)
        reach.update(additions)
    want = -imbalance
    if want not in reach:
        return None
    h = {v: g[v] for v in G.vertices}
    cur = want
    while reach[cur] is not None:
        pos, prev = reach[cur]
        v = movers[pos][0]
        h[v] = f[v]
        cur = prev
    if sum(sign[v] * h[v] for v in G.vertices) != 0:
        raise AssertionError("selector reconstruction lost its balance")
    return h


def _check_selector(
    G: MultiGraph, P: Bipartition, g: VertexMap, f: VertexMap, h: VertexMap
) -> None:
    validate_vertex_map(G, h, "h")
    bad = [v for v in G.vertices if h[v] not in (g[v], f[v])]
    if bad:
        raise InputError(f"h({bad[0]}) is neither g nor f there")
    lhs = sum(h[v] for v in P.X)
    rhs = sum(h[v] for v in P.Y)
    if lhs != rhs:
        raise InputError(f"selector is unbalanced: {lhs} != {rhs}")


# -- the bipartite two-point theorem --------------------------------------


def gf_factor_bipartite(
    G: MultiGraph,
    P: Bipartition,
    g: VertexMap,
    f: VertexMap,
    h: VertexMap | None = None,
    z: int | None = None,
    assume_hypotheses: bool = False,
    seed: int = 0,
) -> FactorCertificate | None | Unknown:
    """{g,f}-factor of a 4k^2-tree-connected bipartite graph with
    d_F(z) = h(z), where h is a balanced selector (computed when omitted).

    Returns None when no balanced selector exists (that direction is an
    equivalence), UNKNOWN past the selector search cap.
    """
    _validate_gf(G, g, f)
    P.validate_for(G)
    gate = _Gate(assume_hypotheses)
    gate.require(
        G.is_bipartite_with(P),
        "bipartite with the given bipartition",
        "an edge stays inside one part",
    )
    k = max(1, max((f[v] - g[v] for v in G.vertices), default=0))
    packing = spanning_tree_packing(G, 4 * k * k, seed=seed)
    gate.require(
        isinstance(packing, TreePacking),
        "4k^2-tree-connected",
        f"no {4 * k * k} disjoint spanning trees (k = {k})",
        certificate=packing if isinstance(packing, PackingRefusal) else None,
    )
    window_bad = [v for v in G.vertices if not 2 * g[v] <= G.degree(v) <= 2 * f[v]]
    gate.require(
        not window_bad,
        "g <= d/2 <= f",
        f"violated at vertex {window_bad[0]}" if window_bad else "",
    )

    if h is None:
        h = balanced_selector(G, P, g, f)
        if h is None:
            return None
    else:
        _check_selector(G, P, g, f, h)
    if z is None:
        z = min(P.X)
    else:
        G._check_vertex(z)
    Pn = P if z in P.X else P.swapped()

    p = {}
    q = {}
    for v in G.vertices:
        if v in Pn.X:
            p[v], q[v] = g[v], f[v]
        else:
            p[v], q[v] = G.degree(v) - f[v], G.degree(v) - g[v]
    target_z = h[z]

    D = two_point_orientation(
        G, p, q, pin=(z, target_z), seed=child_seed(seed, 1)
    )
    if is_unknown(D):
        return UNKNOWN
    if D is None:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            "no pinned two-point orientation although a balanced selector "
            f"exists (z = {z}, target {target_z})"
        )
    F = factor_from_orientation(G, Pn, D)
    if F.degree(z) != h[z]:
        raise TheoremViolationError("factor missed its pinned degree")
    allowed = {v: tuple(sorted({g[v], f[v]})) for v in G.vertices}
    derivation = (
        ("bipartition", (tuple(sorted(Pn.X)), tuple(sorted(Pn.Y)))),
        ("pinned", (z, target_z)),
        ("outdegrees", {v: D.outdegree(v) for v in G.vertices}),
    )
    return _certify(F, allowed, None, derivation)


# -- the almost-bipartite theorem -----------------------------------------


def _structure_candidates(
    G: MultiGraph, rng: random.Random, tries: int = 8
):
    """Bipartitions worth testing for the almost-bipartite/bi-large gates."""
    seen = set()
    try:
        _, witness = bipartite_index(G)
        cands = [witness, witness.swapped()]
    except SizeRefusal:
        _, _, witness = bipartite_index_bounds(G)
        cands = [witness, witness.swapped()]
    for P in cands:
        key = (P.X, P.Y)
        if key not in seen and P.X and P.Y:
            seen.add(key)
            yield P
    verts = list(G.vertices)
    for _ in range(tries):
        X = frozenset(v for v in verts if rng.random() < 0.5)
        Y = frozenset(verts) - X
        if X and Y and (X, Y) not in seen:
            seen.add((X, Y))
            yield Bipartition(X, Y)


def _intra_counts(G: MultiGraph, P: Bipartition) -> tuple[int, int]:
    ex = sum(1 for _, u, v in G.edges if u in P.X and v in P.X)
    ey = sum(1 for _, u, v in G.edges if u in P.Y and v in P.Y)
    return ex, ey


def gf_factor_almost_bipartite(
    G: MultiGraph,
    g: VertexMap,
    f: VertexMap,
    h: VertexMap,
    P: Bipartition | None = None,
    assume_hypotheses: bool = False,
    seed: int = 0,
) -> FactorCertificate | None | Unknown:
    """{g,f}-factor when some bipartition leaves at most k-1 edges inside
    parts and the cross factor is (4k^2+2k)-tree-connected.

    h must select within {g, f}, have even total, and obey the displayed
    near-balance window 0 <= sum_X h - sum_Y h <= 2e(X)+1.
    """
    _validate_gf(G, g, f)
    validate_vertex_map(G, h, "h")
    bad = [v for v in G.vertices if h[v] not in (g[v], f[v])]
    if bad:
        raise InputError(f"h({bad[0]}) is neither g nor f there")
    k = max(1, max((f[v] - g[v] for v in G.vertices), default=0))
    gate = _Gate(assume_hypotheses)
    need = 4 * k * k + 2 * k

    if P is None:
        rng = random.Random(child_seed(seed, 0))
        found = None
        for cand in _structure_candidates(G, rng):
            ex, ey = _intra_counts(G, cand)
            if ex + ey > k - 1:
                continue
            s = sum(h[v] for v in cand.X) - sum(h[v] for v in cand.Y)
            if not 0 <= s <= 2 * ex + 1:
                continue
            cross = induced_bipartite_factor(G, cand)
            if isinstance(
                spanning_tree_packing(cross.as_graph(), need), TreePacking
            ):
                found = cand
                break
        gate.require(
            found is not None,
            "almost-bipartite structure",
            f"no bipartition with ({need})-tree-connected cross factor, "
            f"at most {k - 1} intra edges, and the h window",
        )
        if found is None:
            return None
        P = found
    else:
        P.validate_for(G)
        ex, ey = _intra_counts(G, P)
        gate.require(
            ex + ey <= k - 1,
            "e(X)+e(Y) <= k-1",
            f"{ex + ey} intra-part edges exceed {k - 1}",
        )
        cross = induced_bipartite_factor(G, P)
        packing = spanning_tree_packing(cross.as_graph(), need, seed=seed)
        gate.require(
            isinstance(packing, TreePacking),
            "(4k^2+2k)-tree-connected cross factor",
            f"no {need} disjoint spanning trees in G[X,Y]",
            certificate=packing if isinstance(packing, PackingRefusal) else None,
        )

    window_bad = [v for v in G.vertices if not 2 * g[v] <= G.degree(v) <= 2 * f[v]]
    gate.require(
        not window_bad,
        "g <= d/2 <= f",
        f"violated at vertex {window_bad[0]}" if window_bad else "",
    )
    total_h = sum(h[v] for v in G.vertices)
    gate.require(total_h % 2 == 0, "sum h even", f"sum h = {total_h}")
    ex, ey = _intra_counts(G, P)
    s = sum(h[v] for v in P.X) - sum(h[v] for v in P.Y)
    gate.require(
        0 <= s <= 2 * ex + 1,
        "near-balance window 0 <= sum_X h - sum_Y h <= 2e(X)+1",
        f"sum_X h - sum_Y h = {s}, e(X) = {ex}",
    )

    if k == 1:
        # zero intra edges: the graph is bipartite and the window forces
        # an exactly balanced h
        return gf_factor_bipartite(
            G, P, g, f, h=h, assume_hypotheses=assume_hypotheses, seed=seed
        )

    try:
        g1f, g2f = decompose_eulerian(
            G, P, 4 * k * k, 2 * k - 1, seed=child_seed(seed, 1)
        )
    except HypothesisError as exc:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            f"decomposition refused under verified hypotheses: {exc}"
        ) from exc
    t = s - ex + ey
    if abs(t) > ex + ey or ex + ey > k - 1:
        if not assume_hypotheses:
            raise AssertionError(
                f"t = {t} escaped the proof window |t| <= {ex + ey} <= {k - 1}"
            )
    z = _pick_shift_vertex(G, P.X, g, f, t)

    half2 = {}
    for v in G.vertices:
        d2 = g2f.degree(v)
        if d2 % 2:
            raise AssertionError("Eulerian part has an odd degree")
        half2[v] = d2 // 2
    g1 = {v: g[v] - half2[v] for v in G.vertices}
    f1 = {v: f[v] - half2[v] for v in G.vertices}
    h1 = {v: h[v] - half2[v] for v in G.vertices}
    g1[z] -= t
    f1[z] -= t
    h1[z] -= t
    g1_graph = g1f.as_graph()
    for v in G.vertices:
        if v == z:
            continue
        if not 2 * g1[v] <= g1_graph.degree(v) <= 2 * f1[v]:
            raise AssertionError(
                f"shifted window g' <= d_G1/2 <= f' failed at vertex {v}"
            )
    bal = sum(h1[v] for v in P.X) - sum(h1[v] for v in P.Y)
    if bal != 0:
        raise AssertionError("shifted selector lost its balance")

    # the z shift may push the half-degree window off at z itself; the
    # orientation engine is exact, so run it with gating suppressed there
    sub = gf_factor_bipartite(
        G=g1_graph,
        P=P,
        g=g1,
        f=f1,
        h=h1,
        z=z,
        assume_hypotheses=True,
        seed=child_seed(seed, 2),
    )
    if is_unknown(sub):
        return UNKNOWN
    if sub is None:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            "bipartite stage found no factor under verified hypotheses"
        )
    try:
        f2cert = eulerian_half_factor_at(
            g2f.as_graph(),
            z,
            t,
            assume_hypotheses=assume_hypotheses,
            seed=child_seed(seed, 3),
        )
    except HypothesisError as exc:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            f"Eulerian stage refused under verified hypotheses: {exc}"
        ) from exc
    if f2cert is None:
        return None
    F = Factor(G, sub.factor.edge_ids | f2cert.factor.edge_ids)
    allowed = {v: tuple(sorted({g[v], f[v]})) for v in G.vertices}
    derivation = (
        ("bipartition", (tuple(sorted(P.X)), tuple(sorted(P.Y)))),
        ("eulerian-part", tuple(sorted(g2f.edge_ids))),
        ("shift", (z, t)),
    ) + sub.derivation
    return _certify(F, allowed, None, derivation)


def _pick_shift_vertex(
    G: MultiGraph, X, g: VertexMap, f: VertexMap, t: int
) -> int:
    """z in X with the most slack in the direction the shift consumes."""
    verts = sorted(X)
    if t > 0:
        return max(verts, key=lambda v: (2 * f[v] - G.degree(v), -v))
    if t < 0:
        return max(verts, key=lambda v: (G.degree(v) - 2 * g[v], -v))
    return verts[0]


# -- the bi-index-large theorem -------------------------------------------


def gf_factor_bi_large(
    G: MultiGraph,
    g: VertexMap,
    f: VertexMap,
    P: Bipartition | None = None,
    assume_hypotheses: bool = False,
    seed: int = 0,
) -> FactorCertificate | NoFactorCertificate | None | Unknown:
    """{g,f}-factor when some bipartition has a 3k^2-tree-connected cross
    factor and at least k-1 intra-part edges.

    The factor exists iff some gap f-g is odd, or all gaps are even and
    sum f is even; the failing case returns a parity certificate.
    """
    _validate_gf(G, g, f)
    k = max(1, max((f[v] - g[v] for v in G.vertices), default=0))
    gate = _Gate(assume_hypotheses)

    if not parity_criterion(G, g, f):
        return NoFactorCertificate(
            "all gaps f-g are even and sum f is odd",
            sum(f[v] for v in G.vertices),
        )

    need = 3 * k * k
    if P is None:
        rng = random.Random(child_seed(seed, 0))
        found = None
        for cand in _structure_candidates(G, rng):
            ex, ey = _intra_counts(G, cand)
            if ex + ey < k - 1:
                continue
            cross = induced_bipartite_factor(G, cand)
            if isinstance(
                spanning_tree_packing(cross.as_graph(), need), TreePacking
            ):
                found = cand
                break
        gate.require(
            found is not None,
            "bi-large structure",
            f"no bipartition with {need}-tree-connected cross factor and "
            f"at least {k - 1} intra edges",
        )
        if found is None:
            return None
        P = found
    else:
        P.validate_for(G)
        ex, ey = _intra_counts(G, P)
        gate.require(
            ex + ey >= k - 1,
            "e(X)+e(Y) >= k-1",
            f"{ex + ey} intra-part edges, need {k - 1}",
        )
        cross = induced_bipartite_factor(G, P)
        packing = spanning_tree_packing(cross.as_graph(), need, seed=seed)
        gate.require(
            isinstance(packing, TreePacking),
            "3k^2-tree-connected cross factor",
            f"no {need} disjoint spanning trees in G[X,Y]",
            certificate=packing if isinstance(packing, PackingRefusal) else None,
        )

    window_bad = [v for v in G.vertices if not 2 * g[v] <= G.degree(v) <= 2 * f[v]]
    gate.require(
        not window_bad,
        "g <= d/2 <= f",
        f"violated at vertex {window_bad[0]}" if window_bad else "",
    )

    odd_gap = [v for v in G.vertices if (f[v] - g[v]) % 2 == 1]
    z = min(odd_gap) if odd_gap else min(G.vertices)
    Pn = P if z in P.X else P.swapped()

    m1 = (3 * k + 2) * (k - 1) // 2
    m2 = 2 * k
    try:
        g1f, g2f = decompose_eulerian(G, Pn, m1, m2, seed=child_seed(seed, 1))
    except HypothesisError as exc:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            f"decomposition refused under verified hypotheses: {exc}"
        ) from exc

    half2 = {}
    for v in G.vertices:
        d2 = g2f.degree(v)
        if d2 % 2:
            raise AssertionError("Eulerian part has an odd degree")
        half2[v] = d2 // 2
    g1 = {v: g[v] - half2[v] for v in G.vertices}
    f1 = {v: f[v] - half2[v] for v in G.vertices}
    g1_graph = g1f.as_graph()
    for v in G.vertices:
        if not 2 * g1[v] <= g1_graph.degree(v) <= 2 * f1[v]:
            raise AssertionError(
                f"shifted window g' <= d_G1/2 <= f' failed at vertex {v}"
            )

    p = {}
    q = {}
    for v in G.vertices:
        if v in Pn.X:
            p[v], q[v] = g1[v], f1[v]
        else:
            p[v], q[v] = g1_graph.degree(v) - f1[v], g1_graph.degree(v) - g1[v]

    x = Fraction(G.degree(z), 2) - Fraction(g[z] + f[z], 2) + Fraction(k, 2)
    x = max(Fraction(0), min(x, k - Fraction(1, 2)))
    D = z_defective_orientation(
        g1_graph, p, q, z=z, k=k, x=x, seed=child_seed(seed, 2)
    )
    if is_unknown(D):
        return UNKNOWN
    if D is None:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            "z-defective orientation stage failed under verified hypotheses"
        )
    F1 = factor_from_orientation(g1_graph, Pn, D)
    d1z = F1.degree(z)

    e2 = g2f.num_edges
    candidates = []
    for target in (g[z], f[z]):
        t = target - d1z - half2[z]
        if t % 2 == e2 % 2:
            candidates.append(t)
    if not candidates:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            "neither shift candidate matches the Eulerian part's parity"
        )
    t = min(candidates, key=abs)
    if abs(t) > k:
        raise AssertionError(f"|t| = {abs(t)} escaped the proof bound k = {k}")

    try:
        f2cert = eulerian_half_factor_at(
            g2f.as_graph(),
            z,
            t,
            assume_hypotheses=assume_hypotheses,
            seed=child_seed(seed, 3),
        )
    except HypothesisError as exc:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            f"Eulerian stage refused under verified hypotheses: {exc}"
        ) from exc
    if f2cert is None:
        return None
    F = Factor(G, F1.edge_ids | f2cert.factor.edge_ids)
    allowed = {v: tuple(sorted({g[v], f[v]})) for v in G.vertices}
    derivation = (
        ("bipartition", (tuple(sorted(Pn.X)), tuple(sorted(Pn.Y)))),
        ("eulerian-part", tuple(sorted(g2f.edge_ids))),
        ("defective-vertex", (z, d1z)),
        ("shift", (z, t)),
    )
    return _certify(F, allowed, None, derivation)


# -- tree-connected versions ----------------------------------------------


def _eulerian_pairing(
    G: MultiGraph, trees: tuple[Factor, ...]
) -> Factor:
    """Union over pairs (T_a, T_b) of T_a plus the parity forest of T_b.

    Each pair yields a connected spanning even factor, so the union of j
    pairs is a 2j-edge-connected Eulerian factor.
    """
    if len(trees) % 2:
        raise InputError("pairing needs an even number of trees")
    ids: set[int] = set()
    for a in range(0, len(trees), 2):
        ta, tb = trees[a], trees[a + 1]
        targets = {v: ta.degree(v) % 2 for v in G.vertices}
        fix = parity_forest(tb, targets)
        ids |= ta.edge_ids | fix.edge_ids
    return Factor(G, frozenset(ids))


def tree_connected_gf_bipartite(
    G: MultiGraph,
    P: Bipartition,
    g: VertexMap,
    f: VertexMap,
    h: VertexMap | None = None,
    params: TheoremParams | None = None,
    z: int | None = None,
    assume_hypotheses: bool = False,
    seed: int = 0,
) -> FactorCertificate | None | Unknown:
    """m-tree-connected {g,f}-factor with m0-tree-connected complement in
    a (2m+2m0+4k^2)-tree-connected bipartite graph; d_H(z) = h(z).

    Exists iff a balanced selector exists.  The certificate carries tree
    packings for the factor and its complement.
    """
    params = params or TheoremParams()
    k, m, m0 = params.k, params.m, params.m0
    _validate_gf(G, g, f)
    P.validate_for(G)
    gate = _Gate(assume_hypotheses)
    gate.require(
        G.is_bipartite_with(P),
        "bipartite with the given bipartition",
        "an edge stays inside one part",
    )
    gap_bad = [v for v in G.vertices if f[v] - g[v] > k]
    gate.require(
        not gap_bad,
        "|f-g| <= k",
        f"gap exceeds {k} at vertex {gap_bad[0]}" if gap_bad else "",
    )
    window_bad = [
        v
        for v in G.vertices
        if not 2 * (g[v] + m0) <= G.degree(v) <= 2 * (f[v] - m)
    ]
    gate.require(
        not window_bad,
        "g+m0 <= d/2 <= f-m",
        f"violated at vertex {window_bad[0]}" if window_bad else "",
    )
    need = 2 * m + 2 * m0 + 4 * k * k
    packing = spanning_tree_packing(G, need, seed=child_seed(seed, 0))
    gate.require(
        isinstance(packing, TreePacking),
        "(2m+2m0+4k^2)-tree-connected",
        f"no {need} disjoint spanning trees",
        certificate=packing if isinstance(packing, PackingRefusal) else None,
    )

    if h is None:
        h = balanced_selector(G, P, g, f)
        if h is None:
            return None
    else:
        _check_selector(G, P, g, f, h)

    if m + m0 == 0:
        return gf_factor_bipartite(
            G, P, g, f, h=h, z=z,
            assume_hypotheses=assume_hypotheses, seed=child_seed(seed, 1),
        )
    if not isinstance(packing, TreePacking):
        # assume_hypotheses with too few trees: nothing to build from
        return None

    g1f = _eulerian_pairing(G, packing.trees[: 2 * (m + m0)])
    g2f = g1f.complement()
    g1_graph = g1f.as_graph()
    if not g1_graph.is_eulerian() or not g1_graph.is_connected():
        raise AssertionError("paired Eulerian factor broke its contract")
    if edge_connectivity(g1_graph) < 2 * (m + m0):
        raise AssertionError("paired Eulerian factor lost edge connectivity")
    g2_graph = g2f.as_graph()
    if not isinstance(
        spanning_tree_packing(g2_graph, 4 * k * k), TreePacking
    ):
        raise AssertionError("two-point part lost its tree packing")

    split = split_tree_connected_complement(
        g1_graph, m, m0, seed=child_seed(seed, 2)
    )
    if is_unknown(split):
        return UNKNOWN
    hprime, rest1 = split

    dH = {v: hprime.degree(v) for v in G.vertices}
    g2 = {v: g[v] - dH[v] for v in G.vertices}
    f2 = {v: f[v] - dH[v] for v in G.vertices}
    h2 = {v: h[v] - dH[v] for v in G.vertices}
    for v in G.vertices:
        if not 2 * g2[v] <= g2_graph.degree(v) <= 2 * f2[v]:
            raise AssertionError(
                f"shifted window g' <= d_G2/2 <= f' failed at vertex {v}"
            )

    sub = gf_factor_bipartite(
        G=g2_graph,
        P=P,
        g=g2,
        f=f2,
        h=h2,
        z=z,
        assume_hypotheses=assume_hypotheses,
        seed=child_seed(seed, 3),
    )
    if is_unknown(sub):
        return UNKNOWN
    if sub is None:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            "bipartite stage failed although a balanced selector exists"
        )

    H = Factor(G, hprime.edge_ids | sub.factor.edge_ids)
    complement = H.complement()
    pack_h = spanning_tree_packing(H.as_graph(), m)
    pack_c = spanning_tree_packing(complement.as_graph(), m0)
    if not isinstance(pack_h, TreePacking) or not isinstance(
        pack_c, TreePacking
    ):
        raise TheoremViolationError(
            "final factor or complement lost its tree packing"
        )
    allowed = {v: tuple(sorted({g[v], f[v]})) for v in G.vertices}
    derivation = (
        ("eulerian-part", tuple(sorted(g1f.edge_ids))),
        ("balancer", tuple(sorted(hprime.edge_ids))),
    ) + sub.derivation
    return _certify(
        H, allowed, {"factor": pack_h, "complement": pack_c}, derivation
    )


def tree_connected_gf(
    G: MultiGraph,
    g: VertexMap,
    f: VertexMap,
    params: TheoremParams | None = None,
    assume_hypotheses: bool = False,
    seed: int = 0,
) -> FactorCertificate | NoFactorCertificate | None | Unknown:
    """m-tree-connected {g,f}-factor with m0-tree-connected complement in
    a (2m+2m0+6k^2)-tree-connected graph with bi(G) >= k-1.

    Exists iff the parity criterion holds; parity failure returns a
    certificate, search caps return UNKNOWN.
    """
    params = params or TheoremParams()
    k, m, m0 = params.k, params.m, params.m0
    _validate_gf(G, g, f)
    gate = _Gate(assume_hypotheses)
    gap_bad = [v for v in G.vertices if f[v] - g[v] > k]
    gate.require(
        not gap_bad,
        "|f-g| <= k",
        f"gap exceeds {k} at vertex {gap_bad[0]}" if gap_bad else "",
    )
    window_bad = [
        v
        for v in G.vertices
        if not 2 * (g[v] + m0) <= G.degree(v) <= 2 * (f[v] - m)
    ]
    gate.require(
        not window_bad,
        "g+m0 <= d/2 <= f-m",
        f"violated at vertex {window_bad[0]}" if window_bad else "",
    )
    need = 2 * m + 2 * m0 + 6 * k * k
    packing = spanning_tree_packing(G, need, seed=child_seed(seed, 0))
    gate.require(
        isinstance(packing, TreePacking),
        "(2m+2m0+6k^2)-tree-connected",
        f"no {need} disjoint spanning trees",
        certificate=packing if isinstance(packing, PackingRefusal) else None,
    )
    gate.require(
        _bi_at_least(G, k - 1, seed=seed),
        "bi(G) >= k-1",
        f"bipartite index below {k - 1}",
    )

    if not parity_criterion(G, g, f):
        return NoFactorCertificate(
            "all gaps f-g are even and sum f is odd",
            sum(f[v] for v in G.vertices),
        )

    if m + m0 == 0:
        return gf_factor_bi_large(
            G, g, f, assume_hypotheses=assume_hypotheses,
            seed=child_seed(seed, 1),
        )

    try:
        keep = decompose_keep_bi(
            G, m + m0, 3 * k * k, k - 1, seed=child_seed(seed, 2)
        )
    except HypothesisError as exc:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            f"decomposition refused under verified hypotheses: {exc}"
        ) from exc
    if is_unknown(keep):
        return UNKNOWN
    g1f, g2f, P = keep
    g1_graph = g1f.as_graph()
    g2_graph = g2f.as_graph()

    split = split_tree_connected_complement(
        g1_graph, m, m0, seed=child_seed(seed, 3)
    )
    if is_unknown(split):
        return UNKNOWN
    hprime, rest1 = split

    dH = {v: hprime.degree(v) for v in G.vertices}
    g2 = {v: g[v] - dH[v] for v in G.vertices}
    f2 = {v: f[v] - dH[v] for v in G.vertices}
    for v in G.vertices:
        if not 2 * g2[v] <= g2_graph.degree(v) <= 2 * f2[v]:
            raise AssertionError(
                f"shifted window g' <= d_G2/2 <= f' failed at vertex {v}"
            )

    sub = gf_factor_bi_large(
        g2_graph,
        g2,
        f2,
        P=P,
        assume_hypotheses=assume_hypotheses,
        seed=child_seed(seed, 4),
    )
    if is_unknown(sub):
        return UNKNOWN
    if isinstance(sub, NoFactorCertificate):
        raise TheoremViolationError(
            "shifted functions lost the parity criterion; shifts preserve it"
        )
    if sub is None:
        if assume_hypotheses:
            return None
        raise TheoremViolationError(
            "bi-large stage refused although its hypotheses were arranged"
        )

    H = Factor(G, hprime.edge_ids | sub.factor.edge_ids)
    complement = H.complement()
    pack_h = spanning_tree_packing(H.as_graph(), m)
    pack_c = spanning_tree_packing(complement.as_graph(), m0)
    if not isinstance(pack_h, TreePacking) or not isinstance(
        pack_c, TreePacking
    ):
        raise TheoremViolationError(
            "final factor or complement lost its tree packing"
        )
    allowed = {v: tuple(sorted({g[v], f[v]})) for v in G.vertices}
    derivation = (
        ("eulerian-part", tuple(sorted(g1f.edge_ids))),
        ("balancer", tuple(sorted(hprime.edge_ids))),
    ) + sub.derivation
    return _certify(
        H, allowed, {"factor": pack_h, "complement": pack_c}, derivation
    )


# -- toughness regime: hypothesis report only -----------------------------


@dataclass(frozen=True)
class HypothesisReport:
    """Evaluated hypothesis rows for the toughness statement; no
    construction is attempted at that scale."""

    rows: tuple[tuple[str, bool, str], ...]

    @property
    def all_hold(self) -> bool:
        return all(ok for _, ok, _ in self.rows)

    def render(self) -> str:
        out = []
        for name, ok, detail in self.rows:
            mark = "holds" if ok else "FAILS"
            out.append(f"{mark:6} {name}  [{detail}]")
        return "\n".join(out)


def tough_hypothesis_check(
    G: MultiGraph,
    g: VertexMap,
    f: VertexMap,
    params: TheoremParams,
    cap: int = 16,
) -> HypothesisReport:
    """Evaluate every hypothesis of the toughness statement with both
    sides shown; refuses only when the graph exceeds the toughness cap."""
    _validate_gf(G, g, f)
    k, m, m0, b = params.k, params.m, params.m0, params.b
    rows = []

    tough = toughness(G, cap=cap)
    threshold = 4 * b * b
    if tough.value is None:
        ok = True
        detail = f"toughness = infinite (no separating cut); threshold = {threshold}"
    else:
        ok = tough.value >= threshold
        detail = f"toughness = {tough.value}; threshold = {threshold}"
    rows.append(("toughness >= 4b^2", ok, detail))

    n = G.num_vertices
    rows.append(
        ("|V(G)| >= 4b^2", n >= threshold, f"|V(G)| = {n}; threshold = {threshold}")
    )

    lo = 3 * m + 2 * m0 + 6 * k * k
    fmin = min(f[v] for v in G.vertices)
    fmax = max(f[v] for v in G.vertices)
    rows.append(
        (
            "3m+2m0+6k^2 < f <= b",
            fmin > lo and fmax <= b,
            f"min f = {fmin}, max f = {fmax}, lower bound {lo}, b = {b}",
        )
    )

    gaps = [f[v] - g[v] for v in G.vertices]
    rows.append(
        (
            "m+m0 < f-g <= k",
            min(gaps) > m + m0 and max(gaps) <= k,
            f"min gap = {min(gaps)}, max gap = {max(gaps)}, "
            f"m+m0 = {m + m0}, k = {k}",
        )
    )

    crit = parity_criterion(G, g, f)
    odd = [v for v in G.vertices if (f[v] - g[v]) % 2 == 1]
    if odd:
        detail = f"vertex {odd[0]} has odd gap"
    else:
        detail = f"all gaps even, sum f = {sum(f[v] for v in G.vertices)}"
    rows.append(("parity criterion", crit, detail))

    return HypothesisReport(tuple(rows))
