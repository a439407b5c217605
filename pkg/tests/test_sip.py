import math

import pytest

from endoforge import algebra, cayley, endo, sip
from endoforge.errors import HasLoops, KTooSmall, MinDegreeViolation
from endoforge.graphs import degree_stats, girth
from conftest import make_digraph


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_gadget_counts(k):
    hp = sip.hp_graph(k)
    g = hp.graph
    assert g.n == 6 * k + 7
    assert g.num_edges == 6 * k + 9
    assert girth(g) == 2 * k + 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gadget_rigid(k):
    tm = endo.enumerate_endomorphisms(sip.hp_graph(k).graph)
    assert tm.size == 1


def test_anchor_sets_are_paths_with_size_bounds():
    for k in range(1, 8):
        hp = sip.hp_graph(k)
        g = hp.graph
        edges = set(g.edges)
        for block in (hp.hplus, hp.hminus):
            for a, b in zip(block, block[1:]):
                assert (min(a, b), max(a, b)) in edges
        gth = 2 * k + 5
        assert len(hp.hplus) >= gth / 2 - 4
        assert len(hp.hminus) >= gth / 2 - 6
        if k >= 2:
            special = set(hp.branch)
            assert not (set(hp.hplus) | set(hp.hminus)) & special
            assert not set(hp.hplus) & set(hp.hminus)


def test_anchor_distance_condition():
    from collections import deque

    for k in (1, 2, 3, 5):
        hp = sip.hp_graph(k)
        adj = hp.graph.adjacency()

        def bfs(src):
            dist = [-1] * hp.graph.n
            dist[src] = 0
            q = deque([src])
            while q:
                u = q.popleft()
                for w in adj[u]:
                    if dist[w] == -1:
                        dist[w] = dist[u] + 1
                        q.append(w)
            return dist

        g = 2 * k + 5
        d1, d2, d3 = bfs(1), bfs(2), bfs(3)
        for v in hp.hplus:
            assert 4 * d1[v] >= g and 4 * d2[v] >= g and v in hp.z1
        for v in hp.hminus:
            assert 4 * d2[v] >= g and 4 * d3[v] >= g and v in hp.z2


def test_choose_k():
    assert sip.choose_k(1) == 3
    ks = [sip.choose_k(c) for c in range(1, 9)]
    assert ks == sorted(ks)
    for c in range(1, 6):
        # the sufficient bound (g/2 - 6 >= colors) is accepted by the check
        k_bound = next(
            k for k in range(2, 40) if (2 * k + 5) / 2 - 6 >= c
        )
        hp = sip.hp_graph(k_bound)
        assert min(len(hp.hplus), len(hp.hminus)) >= c
        assert sip.choose_k(c) <= k_bound


def test_product_counts_and_degree():
    d = cayley.augment_cayley(algebra.cyclic_group(2), [1])
    for k in (7, 9):
        g = sip.sip_product(d, k)
        assert g.n == (12 * k + 15) * 2 * 2 + 2
        assert g.num_edges == (12 * k + 22) * 2 * 2
        assert g.max_degree() == max(degree_stats(d).max_deg, 3)


def test_product_wiring():
    d = make_digraph(2, [(0, 1)], [(1, 0)])
    g = sip.sip_product(d, 7)
    hp = sip.hp_graph(7)
    edges = set(g.edges)
    for (c, (x, y), off) in g.sip_copies:
        ce = off + hp.hplus[c]
        cx = off + hp.hminus[c]
        assert (min(x, ce), max(x, ce)) in edges
        assert (min(y, cx), max(y, cx)) in edges


def test_product_preconditions():
    with pytest.raises(HasLoops):
        sip.sip_product(make_digraph(1, [(0, 0)]))
    with pytest.raises(MinDegreeViolation):
        sip.sip_product(make_digraph(2, [(0, 1)]))
    with pytest.raises(KTooSmall):
        sip.sip_product(make_digraph(2, [(0, 1), (1, 0)]), 1)
    with pytest.raises(KTooSmall):
        d3 = make_digraph(2, [(0, 1), (1, 0)], [(0, 1), (1, 0)], [(1, 0), (0, 1)])
        sip.sip_product(d3, 3)  # three colors need k with |H-| >= 3


SIP_BATTERY = [
    make_digraph(2, [(0, 1), (1, 0)]),
    make_digraph(3, [(0, 1), (1, 2), (2, 0)]),
    make_digraph(2, [(0, 1)], [(1, 0)]),
    make_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [(0, 2), (1, 3), (2, 0), (3, 1)]),
    None,  # placeholder replaced below
]


def _battery():
    out = list(SIP_BATTERY[:4])
    out.append(cayley.augment_cayley(algebra.cyclic_group(2), [1]))
    return out


def test_product_preserves_end():
    for d in _battery():
        g = sip.sip_product(d)
        assert g.max_degree() == max(degree_stats(d).max_deg, 3)
        tm = endo.enumerate_endomorphisms(d)
        tmg = endo.enumerate_endomorphisms(g)
        assert tm.size == tmg.size
        assert algebra.monoid_isomorphic(
            endo.endo_monoid_table(tm), endo.endo_monoid_table(tmg)
        ) is not None


def test_rigid_product_of_trivial_monoid():
    triv = algebra.validate_monoid([[0]], 0)
    d = cayley.augment_cayley(triv, [])
    g = sip.sip_product(d)
    assert g.max_degree() <= 3
    tm = endo.enumerate_endomorphisms(g)
    assert tm.size == 1
