"""Verification campaigns: generate random instances, run the pipeline,
re-verify every certificate, and cross-check against the exhaustive
oracle whenever the instance is small enough.

A campaign's report is deterministic in (theorem, trials, params,
master_seed): per-trial randomness comes from counter-split child seeds,
and the canonical JSON excludes wall-clock time (the human rendering
reports it).
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .connectivity import spanning_tree_packing
from .errors import (
    HypothesisError,
    InputError,
    TheoremViolationError,
    is_unknown,
)
from .factors import (
    check_lovasz_condition,
    check_tutte_strict_form,
    factor_exists,
    find_f_factor,
    find_interval_factor,
)
from .generators import GenSpec, balanced_bipartition_of, gen_functions, gen_tree_connected
from .graph import Bipartition, Factor, MultiGraph
from .orientations import (
    Orientation,
    factor_from_orientation,
    orientation_from_factor,
)
from .pipeline import (
    FactorCertificate,
    NoFactorCertificate,
    TheoremParams,
    balanced_selector,
    eulerian_half_factor,
    gf_factor_almost_bipartite,
    gf_factor_bi_large,
    gf_factor_bipartite,
    tough_hypothesis_check,
    tree_connected_gf,
    tree_connected_gf_bipartite,
)
from .rng import child_seed

THEOREM_IDS = (
    "tutte-equiv",
    "lovasz-equiv",
    "bijection",
    "eulerian-half",
    "bipartite-gf",
    "almost-bipartite",
    "bi-large",
    "tree-gf-bipartite",
    "tree-gf",
    "tough-check",
)

ORACLE_EDGE_CAP = 20


@dataclass(frozen=True)
class TrialRow:
    index: int
    seed: int
    outcome: str  # success | none | refusal | unknown | hard-error
    hypothesis: str = ""
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "outcome": self.outcome,
            "hypothesis": self.hypothesis,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Report:
    theorem: str
    trials: int
    successes: int
    nones: int
    unknowns: int
    refusals: dict[str, int]
    hard_errors: int
    rows: tuple[TrialRow, ...]
    wall_time: float = field(compare=False)

    @property
    def passed(self) -> bool:
        return self.hard_errors == 0

    def to_dict(self) -> dict:
        # wall time excluded on purpose: canonical bytes must be
        # reproducible across runs
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "successes": self.successes,
            "nones": self.nones,
            "unknowns": self.unknowns,
            "refusals": dict(sorted(self.refusals.items())),
            "hard_errors": self.hard_errors,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def render(self) -> str:
        lines = [
            "theorem      %s" % self.theorem,
            "trials       %d" % self.trials,
            "successes    %d" % self.successes,
            "none         %d" % self.nones,
            "unknown      %d" % self.unknowns,
            "hard errors  %d" % self.hard_errors,
            "wall time    %.3f s" % self.wall_time,
        ]
        for hyp, count in sorted(self.refusals.items()):
            lines.append("refusal      %-4d %s" % (count, hyp))
        bad = [r for r in self.rows if r.outcome == "hard-error"]
        for r in bad[:10]:
            lines.append("  trial %d (seed %d): %s" % (r.index, r.seed, r.detail))
        lines.append("verdict      %s" % ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


# -- instance builders ---------------------------------------------------


def _random_multigraph(rng: random.Random, max_edges: int = 8) -> MultiGraph:
    n = rng.randint(2, 6)
    vertices = list(range(1, n + 1))
    m = rng.randint(1, max_edges)
    edges = []
    for _ in range(m):
        if rng.random() < 0.08:
            v = rng.choice(vertices)
            edges.append((v, v))
        else:
            u, v = rng.sample(vertices, 2)
            edges.append((u, v))
    return MultiGraph(vertices, edges)


def _random_f(G: MultiGraph, rng: random.Random) -> dict[int, int]:
    return {v: rng.randint(0, G.degree(v)) for v in G.vertices}


def _random_gf(G: MultiGraph, rng: random.Random) -> tuple[dict[int, int], dict[int, int]]:
    g, f = {}, {}
    for v in G.vertices:
        a = rng.randint(0, G.degree(v))
        b = rng.randint(0, G.degree(v))
        g[v], f[v] = min(a, b), max(a, b)
    return g, f


def _doubled(G: MultiGraph) -> MultiGraph:
    pairs = [(u, v) for _, u, v in G.edges]
    return MultiGraph(list(G.vertices), pairs + pairs)


def _with_intra_edge(G: MultiGraph, P: Bipartition, rng: random.Random) -> MultiGraph:
    side = P.X if rng.random() < 0.5 else P.Y
    if len(side) < 2:
        side = P.X if len(P.X) >= 2 else P.Y
    u, v = rng.sample(sorted(side), 2)
    return G.with_added_edges([(u, v)])


# -- per-theorem trials --------------------------------------------------
# each driver returns (outcome, hypothesis, detail)


def _trial_tutte(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    G = _random_multigraph(rng)
    f = _random_f(G, rng)
    via_finder = find_f_factor(G, f) is not None
    via_criterion, witness = check_lovasz_condition(G, f, f)
    via_oracle = factor_exists(
        G, lambda degs: all(degs[v] == f[v] for v in G.vertices)
    )
    if not (via_finder == via_criterion == via_oracle):
        return (
            "hard-error",
            "",
            "disagreement: finder=%s criterion=%s oracle=%s witness=%s"
            % (via_finder, via_criterion, via_oracle, witness),
        )
    if G.is_connected() and sum(f.values()) % 2 == 0:
        strict, sw = check_tutte_strict_form(G, f)
        if strict != via_finder:
            return (
                "hard-error",
                "",
                "strict form disagrees: strict=%s finder=%s witness=%s"
                % (strict, via_finder, sw),
            )
    return "success", "", ""


def _trial_lovasz(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    G = _random_multigraph(rng)
    g, f = _random_gf(G, rng)
    via_finder = find_interval_factor(G, g, f) is not None
    via_criterion, witness = check_lovasz_condition(G, g, f)
    via_oracle = factor_exists(
        G, lambda degs: all(g[v] <= degs[v] <= f[v] for v in G.vertices)
    )
    if not (via_finder == via_criterion == via_oracle):
        return (
            "hard-error",
            "",
            "disagreement: finder=%s criterion=%s oracle=%s witness=%s"
            % (via_finder, via_criterion, via_oracle, witness),
        )
    return "success", "", ""


def _trial_bijection(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    G = gen_tree_connected(
        GenSpec(n=rng.randint(4, 7), trees=1, extra_edges=rng.randint(0, 4),
                bipartite=True, seed=seed)
    )
    P = balanced_bipartition_of(G)
    ids = sorted(G.edge_ids)
    F = Factor(G, frozenset(eid for eid in ids if rng.random() < 0.5))
    D = orientation_from_factor(G, P, F)
    back = factor_from_orientation(G, P, D)
    if back.edge_ids != F.edge_ids:
        return "hard-error", "", "factor -> orientation -> factor is not the identity"
    out = D.outdegrees()
    for v in G.vertices:
        want = out[v] if v in P.X else G.degree(v) - out[v]
        if F.degree(v) != want:
            return "hard-error", "", "degree law fails at vertex %d" % v
    # opposite direction: any orientation survives the round trip too
    directions = {}
    for eid, u, v in G.edges:
        directions[eid] = (u, v) if rng.random() < 0.5 else (v, u)
    D0 = Orientation(G, directions)
    F0 = factor_from_orientation(G, P, D0)
    D1 = orientation_from_factor(G, P, F0)
    if D1.directions != D0.directions:
        return "hard-error", "", "orientation -> factor -> orientation is not the identity"
    return "success", "", ""


def _trial_eulerian_half(index: int, seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    t = index % 3
    base = gen_tree_connected(
        GenSpec(n=rng.randint(4, 7), trees=2, extra_edges=rng.randint(0, 3), seed=seed)
    )
    G = _doubled(base)
    i = {v: 0 for v in G.vertices}
    if t >= 1:
        # loops make |E| odd / keep it even and push bi(G) up to t - 1
        loops = [(rng.choice(list(G.vertices)), ) * 2 for _ in range(t)]
        G = G.with_added_edges(loops)
        carriers = rng.sample(list(G.vertices), t)
        for v in carriers:
            i[v] = rng.choice((-1, 1))
    cert = eulerian_half_factor(G, i)
    if cert is None:
        return "hard-error", "", "construction returned none under verified hypotheses"
    if not cert.verify():
        return "hard-error", "", "certificate failed re-verification"
    for v in G.vertices:
        if cert.factor.degree(v) != G.degree(v) // 2 + i[v]:
            return "hard-error", "", "half-degree law fails at vertex %d" % v
    return "success", "", ""


def _trial_bipartite_gf(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    G = gen_tree_connected(
        GenSpec(n=rng.randint(4, 8), trees=4, extra_edges=rng.randint(0, 3),
                bipartite=True, seed=seed)
    )
    P = balanced_bipartition_of(G)
    g, f = gen_functions(G, k=1, seed=seed)
    h = balanced_selector(G, P, g, f)
    if h is None:
        if G.num_edges <= ORACLE_EDGE_CAP:
            if factor_exists(
                G, lambda degs: all(degs[v] in (g[v], f[v]) for v in G.vertices)
            ):
                return (
                    "hard-error",
                    "",
                    "no balanced selector, yet an oracle factor exists",
                )
        return "none", "", "no balanced selector"
    z = min(P.X)
    cert = gf_factor_bipartite(G, P, g, f, h=h, z=z, seed=seed)
    if is_unknown(cert):
        return "unknown", "", "search budget exhausted"
    if cert is None:
        return "hard-error", "", "selector succeeded but no factor was produced"
    if not cert.verify():
        return "hard-error", "", "certificate failed re-verification"
    if cert.factor.degree(z) != h[z]:
        return "hard-error", "", "pinned degree law fails at z"
    return "success", "", ""


def _trial_almost_bipartite(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    c = rng.randint(14, 16)  # cross multiplicity; 6c >= 80 keeps 20 trees
    edges = [(1, 2)]
    for u in (1, 2):
        for v in (3, 4, 5):
            edges += [(u, v)] * c
    G = MultiGraph([1, 2, 3, 4, 5], edges)
    P = Bipartition(frozenset({1, 2}), frozenset({3, 4, 5}))
    g, f = gen_functions(G, k=2, seed=seed)
    v0 = 3  # force a gap-2 vertex so the derived k really is 2
    d0 = G.degree(v0)
    g[v0], f[v0] = d0 // 2 - 1, d0 // 2 + 1

    xs, ys = sorted(P.X), sorted(P.Y)
    verts = xs + ys
    choices = None
    for mask in range(1 << len(verts)):
        h = {
            v: (f[v] if mask >> j & 1 else g[v]) for j, v in enumerate(verts)
        }
        s = sum(h[v] for v in xs) - sum(h[v] for v in ys)
        if sum(h.values()) % 2 == 0 and 0 <= s <= 3:
            choices = h
            break
    if choices is None:
        return "none", "", "no admissible selector"
    cert = gf_factor_almost_bipartite(G, g, f, choices, P=P, seed=seed)
    if is_unknown(cert):
        return "unknown", "", "search budget exhausted"
    if cert is None:
        return "hard-error", "", "selector admissible but no factor was produced"
    if not cert.verify():
        return "hard-error", "", "certificate failed re-verification"
    if any(cert.factor.degree(v) not in (g[v], f[v]) for v in G.vertices):
        return "hard-error", "", "factor degree outside {g, f}"
    return "success", "", ""


def _trial_bi_large(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    G = gen_tree_connected(
        GenSpec(n=rng.randint(4, 7), trees=3, extra_edges=rng.randint(0, 2),
                bipartite=True, seed=seed)
    )
    P = balanced_bipartition_of(G)
    if rng.random() < 0.5 and min(len(P.X), len(P.Y)) >= 2:
        G = _with_intra_edge(G, P, rng)
    g, f = gen_functions(G, k=1, seed=seed)
    res = gf_factor_bi_large(G, g, f, P=P, seed=seed)
    return _classify_factor_result(res, G, g, f)


def _trial_tree_gf_bipartite(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    base = gen_tree_connected(
        GenSpec(n=rng.randint(4, 7), trees=3, extra_edges=rng.randint(0, 2),
                bipartite=True, seed=seed)
    )
    G = _doubled(base)  # 6-tree-connected, all degrees even
    P = balanced_bipartition_of(G)
    params = TheoremParams(k=1, m=1, m0=0)
    g, f = gen_functions(G, k=1, m=1, m0=0, seed=seed)
    res = tree_connected_gf_bipartite(G, P, g, f, params=params, seed=seed)
    if res is None:
        return "none", "", "no balanced selector"
    return _classify_factor_result(res, G, g, f, want_packings=("factor", "complement"))


def _trial_tree_gf(seed: int) -> tuple[str, str, str]:
    rng = random.Random(seed)
    base = gen_tree_connected(
        GenSpec(n=rng.randint(4, 7), trees=4, extra_edges=rng.randint(0, 2), seed=seed)
    )
    G = _doubled(base)  # 8-tree-connected, all degrees even
    params = TheoremParams(k=1, m=1, m0=0)
    g, f = gen_functions(G, k=1, m=1, m0=0, seed=seed)
    res = tree_connected_gf(G, g, f, params=params, seed=seed)
    return _classify_factor_result(res, G, g, f, want_packings=("factor", "complement"))


def _trial_tough_check(seed: int, params: TheoremParams) -> tuple[str, str, str]:
    rng = random.Random(seed)
    base = gen_tree_connected(
        GenSpec(n=rng.randint(4, 8), trees=rng.randint(1, 2),
                extra_edges=rng.randint(0, 3), seed=seed)
    )
    G = _doubled(base)  # even degrees keep the sampled windows nonempty
    g, f = gen_functions(G, k=params.k, m=params.m, m0=params.m0, seed=seed)
    report = tough_hypothesis_check(G, g, f, params)
    failing = [name for name, holds, _ in report.rows if not holds]
    detail = "all hypotheses hold" if not failing else "fails: " + ", ".join(failing)
    return "success", "", detail


def _classify_factor_result(
    res,
    G: MultiGraph,
    g: dict[int, int],
    f: dict[int, int],
    want_packings: tuple[str, ...] = (),
) -> tuple[str, str, str]:
    if is_unknown(res):
        return "unknown", "", "search budget exhausted"
    if res is None:
        return "none", "", "no admissible selector"
    if isinstance(res, NoFactorCertificate):
        if not res.verify(G, g, f):
            return "hard-error", "", "nonexistence certificate failed re-verification"
        if G.num_edges <= ORACLE_EDGE_CAP:
            if factor_exists(
                G, lambda degs: all(degs[v] in (g[v], f[v]) for v in G.vertices)
            ):
                return "hard-error", "", "nonexistence certified, yet an oracle factor exists"
        return "none", "", res.reason
    if not isinstance(res, FactorCertificate):
        return "hard-error", "", "unexpected result %r" % (res,)
    if not res.verify():
        return "hard-error", "", "certificate failed re-verification"
    if any(res.factor.degree(v) not in (g[v], f[v]) for v in G.vertices):
        return "hard-error", "", "factor degree outside {g, f}"
    for key in want_packings:
        if key not in res.packings:
            return "hard-error", "", "certificate is missing the %s packing" % key
        if not res.packings[key].verify():
            return "hard-error", "", "the %s packing failed re-verification" % key
    return "success", "", ""


# -- campaign loop -------------------------------------------------------


def verify_theorem(
    theorem: str,
    trials: int,
    params: TheoremParams | None = None,
    master_seed: int = 0,
) -> Report:
    """Run `trials` independent instances of the named check and report.

    Hard errors mean a guaranteed construction failed under verified
    hypotheses (or two independent routes disagreed); a passing campaign
    has none.
    """
    if theorem not in THEOREM_IDS:
        raise InputError(
            "unknown theorem id %r; know %s" % (theorem, ", ".join(THEOREM_IDS))
        )
    if trials < 1:
        raise InputError("need at least one trial")
    if params is None:
        params = TheoremParams(k=1, m=1, m0=0, b=1)

    started = time.monotonic()
    rows: list[TrialRow] = []
    for index in range(trials):
        seed = child_seed(master_seed, index)
        try:
            if theorem == "tutte-equiv":
                outcome = _trial_tutte(seed)
            elif theorem == "lovasz-equiv":
                outcome = _trial_lovasz(seed)
            elif theorem == "bijection":
                outcome = _trial_bijection(seed)
            elif theorem == "eulerian-half":
                outcome = _trial_eulerian_half(index, seed)
            elif theorem == "bipartite-gf":
                outcome = _trial_bipartite_gf(seed)
            elif theorem == "almost-bipartite":
                outcome = _trial_almost_bipartite(seed)
            elif theorem == "bi-large":
                outcome = _trial_bi_large(seed)
            elif theorem == "tree-gf-bipartite":
                outcome = _trial_tree_gf_bipartite(seed)
            elif theorem == "tree-gf":
                outcome = _trial_tree_gf(seed)
            else:
                outcome = _trial_tough_check(seed, params)
        except TheoremViolationError as exc:
            outcome = ("hard-error", "", "theorem violation: %s" % exc)
        except HypothesisError as exc:
            outcome = ("refusal", exc.hypothesis, str(exc))
        except AssertionError as exc:
            outcome = ("hard-error", "", "internal invariant failed: %s" % exc)
        rows.append(TrialRow(index, seed, *outcome))

    refusals: dict[str, int] = {}
    for row in rows:
        if row.outcome == "refusal":
            refusals[row.hypothesis] = refusals.get(row.hypothesis, 0) + 1
    return Report(
        theorem=theorem,
        trials=trials,
        successes=sum(r.outcome == "success" for r in rows),
        nones=sum(r.outcome == "none" for r in rows),
        unknowns=sum(r.outcome == "unknown" for r in rows),
        refusals=refusals,
        hard_errors=sum(r.outcome == "hard-error" for r in rows),
        rows=tuple(rows),
        wall_time=time.monotonic() - started,
    )
