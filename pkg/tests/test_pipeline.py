"""Theorem pipelines: constructions, refusals, and certificates."""
from __future__ import annotations

import itertools

import pytest

from factorkit.errors import HypothesisError, InputError, is_unknown
from factorkit.factors import factor_exists
from factorkit.graph import Bipartition, MultiGraph
from factorkit.pipeline import (
    FactorCertificate,
    NoFactorCertificate,
    TheoremParams,
    balanced_selector,
    eulerian_half_factor,
    eulerian_half_factor_at,
    gf_factor_almost_bipartite,
    gf_factor_bi_large,
    gf_factor_bipartite,
    parity_criterion,
    tough_hypothesis_check,
    tree_connected_gf,
    tree_connected_gf_bipartite,
)


def k23(mult, intra=()):
    edges = list(intra)
    for u in (1, 2):
        for v in (3, 4, 5):
            edges += [(u, v)] * mult
    return MultiGraph([1, 2, 3, 4, 5], edges)


P23 = Bipartition(frozenset({1, 2}), frozenset({3, 4, 5}))


def test_theorem_params_validation():
    assert TheoremParams(k=2, m=1, m0=0).k == 2
    with pytest.raises(InputError):
        TheoremParams(k=0)
    with pytest.raises(InputError):
        TheoremParams(k=1, m=-1)


def test_parity_criterion():
    G = MultiGraph([1, 2], [(1, 2), (1, 2)])
    assert parity_criterion(G, {1: 0, 2: 0}, {1: 1, 2: 0})  # odd gap
    assert parity_criterion(G, {1: 0, 2: 0}, {1: 2, 2: 0})  # sum f even
    assert not parity_criterion(G, {1: 1, 2: 0}, {1: 1, 2: 2})


def test_eulerian_half_factor_balanced():
    G = MultiGraph([1, 2, 3], [(1, 2), (2, 3), (3, 1)] * 2)
    cert = eulerian_half_factor(G, {1: 0, 2: 0, 3: 0})
    assert cert.verify()
    assert all(cert.factor.degree(v) == 2 for v in G.vertices)


def test_eulerian_half_factor_imbalance():
    G = MultiGraph([1, 2, 3], [(1, 2), (2, 3), (3, 1)])
    cert = eulerian_half_factor(G, {1: 1, 2: 0, 3: 0})
    assert cert.verify()
    assert cert.factor.degree(1) == 2
    # |E| = 3 is odd, so t must be odd
    with pytest.raises(HypothesisError) as exc:
        eulerian_half_factor(G, {1: 0, 2: 0, 3: 0})
    assert "mod 2" in exc.value.hypothesis


def test_eulerian_half_factor_needs_connected_at_zero():
    two_triangles = MultiGraph(
        range(1, 7),
        [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)],
    )
    with pytest.raises(HypothesisError) as exc:
        eulerian_half_factor(two_triangles, {v: 0 for v in range(1, 7)})
    assert "connected" in exc.value.hypothesis


def test_eulerian_half_factor_refuses_odd_degrees():
    G = MultiGraph([1, 2], [(1, 2)])
    with pytest.raises(HypothesisError) as exc:
        eulerian_half_factor(G, {1: 0, 2: 0})
    assert exc.value.hypothesis == "Eulerian"


def test_eulerian_half_factor_at_pinned_vertex():
    G = MultiGraph([1, 2, 3], [(1, 2), (2, 3), (3, 1)] * 4)
    cert = eulerian_half_factor_at(G, z=1, t=2)
    assert cert.verify()
    assert cert.factor.degree(1) == 6
    assert cert.factor.degree(2) == 4
    assert cert.factor.degree(3) == 4


def test_eulerian_half_factor_at_refuses_thin_graphs():
    G = MultiGraph([1, 2, 3], [(1, 2), (2, 3), (3, 1)] * 2)
    with pytest.raises(HypothesisError) as exc:
        eulerian_half_factor_at(G, z=1, t=4)
    assert "tree-connected" in exc.value.hypothesis


def test_balanced_selector_balances():
    G = k23(4)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    h = balanced_selector(G, P23, g, f)
    assert h is not None
    assert all(h[v] in (g[v], f[v]) for v in G.vertices)
    assert sum(h[v] for v in P23.X) == sum(h[v] for v in P23.Y)


def test_balanced_selector_none_when_unbalanceable():
    G = k23(4)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = dict(g)
    g[1] -= 1
    f[1] += 1  # only vertex 1 can move, by 2; imbalance is odd
    assert balanced_selector(G, P23, g, f) is None


def test_gf_factor_bipartite_pins_z():
    G = k23(4)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    h = balanced_selector(G, P23, g, f)
    cert = gf_factor_bipartite(G, P23, g, f, h=h, z=1, seed=2)
    assert isinstance(cert, FactorCertificate)
    assert cert.verify()
    assert cert.factor.degree(1) == h[1]
    assert all(cert.factor.degree(v) in (g[v], f[v]) for v in G.vertices)


def test_gf_factor_bipartite_gates():
    G = k23(4)
    d = G.degrees()
    bad_p = Bipartition(frozenset({1, 3}), frozenset({2, 4, 5}))
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    with pytest.raises(HypothesisError):
        gf_factor_bipartite(G, bad_p, g, f)
    thin = k23(1)
    dt = thin.degrees()
    with pytest.raises(HypothesisError) as exc:
        gf_factor_bipartite(
            thin, P23,
            {v: dt[v] // 2 for v in thin.vertices},
            {v: (dt[v] + 1) // 2 for v in thin.vertices},
        )
    assert "tree-connected" in exc.value.hypothesis


def test_gf_factor_bipartite_window_gate():
    G = k23(4)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = dict(g)
    f[3] = g[3] - 1  # empty window
    with pytest.raises(InputError):
        gf_factor_bipartite(G, P23, g, f)


def test_gf_factor_almost_bipartite_with_intra_edge():
    G = k23(14, intra=[(1, 2)])
    g = {1: 20, 2: 20, 3: 12, 4: 13, 5: 13}
    f = {1: 22, 2: 22, 3: 14, 4: 15, 5: 15}
    h = {1: 20, 2: 20, 3: 12, 4: 13, 5: 15}
    cert = gf_factor_almost_bipartite(G, g, f, h, seed=7)
    assert isinstance(cert, FactorCertificate)
    assert cert.verify()
    assert all(cert.factor.degree(v) in (g[v], f[v]) for v in G.vertices)


def test_gf_factor_almost_bipartite_validates_h():
    G = k23(14, intra=[(1, 2)])
    g = {1: 20, 2: 20, 3: 12, 4: 13, 5: 13}
    f = {1: 22, 2: 22, 3: 14, 4: 15, 5: 15}
    with pytest.raises(InputError):
        gf_factor_almost_bipartite(G, g, f, {**g, 3: 99})


def test_gf_factor_bi_large_constructs():
    G = k23(3)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: (d[v] + 1) // 2 for v in G.vertices}
    cert = gf_factor_bi_large(G, g, f, seed=11)
    assert isinstance(cert, FactorCertificate)
    assert cert.verify()
    assert all(cert.factor.degree(v) in (g[v], f[v]) for v in G.vertices)
    assert factor_exists(
        G, lambda degs: all(degs[v] in (g[v], f[v]) for v in G.vertices)
    )


def test_gf_factor_bi_large_certifies_nonexistence():
    # all gaps even and sum f odd: no factor can exist
    G = k23(3, intra=[(1, 2)])
    d = G.degrees()
    assert all(dv % 2 == 0 for dv in d.values())
    g = {v: d[v] // 2 for v in G.vertices}
    res = gf_factor_bi_large(G, g, dict(g), seed=3)
    assert isinstance(res, NoFactorCertificate)
    assert res.verify(G, g, g)
    assert not factor_exists(
        G, lambda degs: all(degs[v] == g[v] for v in G.vertices), cap=23
    )


def test_tree_connected_gf_bipartite_carries_packings():
    G = k23(8)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    params = TheoremParams(k=1, m=1, m0=0)
    cert = tree_connected_gf_bipartite(G, P23, g, f, params=params, seed=5)
    assert isinstance(cert, FactorCertificate)
    assert cert.verify()
    assert set(cert.packings) == {"factor", "complement"}
    assert len(cert.packings["factor"].trees) == 1
    assert cert.packings["factor"].verify()


def test_tree_connected_gf_on_nonbipartite_host():
    edges = []
    for u, v in itertools.combinations(range(1, 6), 2):
        edges += [(u, v)] * 4
    G = MultiGraph(list(range(1, 6)), edges)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    params = TheoremParams(k=1, m=1, m0=0)
    cert = tree_connected_gf(G, g, f, params=params, seed=3)
    assert isinstance(cert, FactorCertificate)
    assert cert.verify()
    assert all(cert.factor.degree(v) in (g[v], f[v]) for v in G.vertices)


def test_tree_connected_gf_refuses_thin_hosts():
    G = MultiGraph([1, 2, 3], [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(HypothesisError):
        tree_connected_gf(
            G, {v: 1 for v in G.vertices}, {v: 2 for v in G.vertices},
            params=TheoremParams(k=1, m=1, m0=0),
        )


def test_assume_hypotheses_suppresses_gates():
    # gates off: thin host, the engine answers from the search instead
    thin = k23(1)
    dt = thin.degrees()
    g = {v: dt[v] // 2 for v in thin.vertices}
    f = {v: (dt[v] + 1) // 2 for v in thin.vertices}
    res = gf_factor_bipartite(thin, P23, g, f, assume_hypotheses=True, seed=1)
    if res is not None and not is_unknown(res):
        assert res.verify()


def test_certificate_tampering_detected():
    G = k23(4)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    cert = gf_factor_bipartite(G, P23, g, f, seed=2)
    assert cert.verify()
    ids = sorted(cert.factor.edge_ids)
    dropped = type(cert.factor)(G, frozenset([ids[0]]))
    tampered = FactorCertificate(
        factor=cert.factor.minus(dropped),
        degree_report=cert.degree_report,
        packings=cert.packings,
        derivation=cert.derivation,
    )
    assert not tampered.verify()


def test_no_factor_certificate_rejects_wrong_claims():
    G = k23(3)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: (d[v] + 1) // 2 for v in G.vertices}
    bogus = NoFactorCertificate(
        reason="all gaps f-g are even and sum f is odd",
        f_total=sum(f.values()),
    )
    assert not bogus.verify(G, g, f)  # gaps are not all even here


def test_tough_hypothesis_check_reports_rows():
    G = k23(4)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: d[v] // 2 + 1 for v in G.vertices}
    report = tough_hypothesis_check(G, g, f, TheoremParams(k=1, m=0, m0=0, b=1))
    names = [name for name, _, _ in report.rows]
    assert any("tough" in n for n in names)
    assert any("parity" in n for n in names)
    assert isinstance(report.all_hold, bool)
    assert report.render()


def test_pipeline_is_deterministic():
    G = k23(3)
    d = G.degrees()
    g = {v: d[v] // 2 for v in G.vertices}
    f = {v: (d[v] + 1) // 2 for v in G.vertices}
    a = gf_factor_bi_large(G, g, f, seed=11)
    b = gf_factor_bi_large(G, g, f, seed=11)
    assert a.factor.edge_ids == b.factor.edge_ids
