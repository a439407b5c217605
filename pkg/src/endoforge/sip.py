"""Rigid gadget graphs and the arc-replacement product.

The gadget family H^k arises from K_4 on b0..b3 by subdividing the edge
{b0,b2} once, {b0,b3} twice, {b1,b2} 2k+1 times, {b2,b3} 2k-1 times, and
{b3,b1} 2k times; {b0,b1} stays an edge.  H^k has 6k+7 vertices, 6k+9
edges, girth 2k+5, and no endomorphism besides the identity.  Z1, Z2, Z3
are the three short cycles (through b1b2, b2b3, b3b1 respectively, all of
length 2k+5).

H+ collects the Z1 vertices at distance >= girth/4 from both b1 and b2, H-
the Z2 vertices at distance >= girth/4 from both b2 and b3 (exact rational
comparison 4d >= g).  Each color of the input digraph is assigned one H+
vertex as its entry anchor and one H- vertex as its exit anchor; replacing
every arc (x,y) of color c by a fresh gadget copy wired x - c+ and y - c-
erases colors and orientations while preserving the endomorphism monoid,
provided the input is loopless with minimum in- and out-degree 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import HasLoops, InvariantViolated, KTooSmall, MinDegreeViolation, NoColors
from .graphs import ArcColoredDigraph, SimpleGraph, degree_stats


@dataclass(frozen=True, eq=False)
class HPGraph:
    graph: SimpleGraph
    k: int
    branch: tuple          # (b0, b1, b2, b3)
    z1: tuple              # cycle vertex lists in cyclic order
    z2: tuple
    z3: tuple
    hplus: tuple           # path order starting nearest b1
    hminus: tuple          # path order starting nearest b2

    @property
    def girth_value(self):
        return 2 * self.k + 5


def _bfs_dist(g: SimpleGraph, src: int):
    adj = g.adjacency()
    dist = [-1] * g.n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def _cycle_block(cycle, qualifies, near_dist):
    """Qualifying vertices of a cycle as one path, oriented by near_dist."""
    m = len(cycle)
    pos = [i for i in range(m) if qualifies(cycle[i])]
    if not pos:
        return ()
    qual = set(pos)
    if len(pos) == m:
        block = list(cycle)
    else:
        starts = [p for p in pos if (p - 1) % m not in qual]
        block = []
        i = starts[0]
        while i in qual and len(block) < len(pos):
            block.append(cycle[i])
            i = (i + 1) % m
        if len(block) != len(pos):
            raise InvariantViolated("anchor set is not one contiguous cycle arc")
    if near_dist[block[0]] > near_dist[block[-1]]:
        block.reverse()
    return tuple(block)


def hp_graph(k: int) -> HPGraph:
    if k < 1:
        raise KTooSmall("gadget parameter k must be >= 1")
    labels = ["b0", "b1", "b2", "b3"]
    edges = [(0, 1)]

    def subdivided_path(a, b, count, tag):
        prev = a
        mids = []
        for i in range(count):
            labels.append(f"{tag}_{i + 1}")
            mids.append(len(labels) - 1)
            edges.append((prev, mids[-1]))
            prev = mids[-1]
        edges.append((prev, b))
        return mids

    p02 = subdivided_path(0, 2, 1, "e02")
    p03 = subdivided_path(0, 3, 2, "e03")
    p12 = subdivided_path(1, 2, 2 * k + 1, "e12")
    p23 = subdivided_path(2, 3, 2 * k - 1, "e23")
    p31 = subdivided_path(3, 1, 2 * k, "e31")

    g = SimpleGraph(len(labels), tuple(labels), tuple(edges))
    z1 = tuple([0, 1] + p12 + [2] + p02)
    z2 = tuple([0] + p02 + [2] + p23 + [3] + list(reversed(p03)))
    z3 = tuple([0] + p03 + [3] + p31 + [1])

    gth = 2 * k + 5
    d = {b: _bfs_dist(g, b) for b in (1, 2, 3)}
    hplus = _cycle_block(
        z1, lambda v: 4 * d[1][v] >= gth and 4 * d[2][v] >= gth, d[1]
    )
    hminus = _cycle_block(
        z2, lambda v: 4 * d[2][v] >= gth and 4 * d[3][v] >= gth, d[2]
    )
    return HPGraph(g, k, (0, 1, 2, 3), z1, z2, z3, hplus, hminus)


def choose_k(num_colors: int) -> int:
    """Smallest k >= 2 whose gadget offers num_colors anchors on each side."""
    if num_colors < 1:
        raise NoColors("need at least one color")
    k = 2
    while True:
        hp = hp_graph(k)
        if min(len(hp.hplus), len(hp.hminus)) >= num_colors:
            return k
        k += 1


def sip_product(d: ArcColoredDigraph, k=None) -> SimpleGraph:
    """Replace every colored arc by a rigid gadget copy; simple graph out.

    Requires a loopless input with per-vertex in- and out-degree >= 1 (the
    hypotheses under which the product preserves the endomorphism monoid)
    and k large enough that distinct colors get distinct anchors.
    """
    kk = d.num_colors
    if kk == 0:
        raise NoColors("the product needs at least one color")
    if d.has_loops():
        raise HasLoops(
            "hypothesis violated: requires a loopless digraph with "
            "min in/out degree >= 1"
        )
    stats = degree_stats(d)
    if d.n and (stats.min_out < 1 or stats.min_in < 1):
        raise MinDegreeViolation(
            "hypothesis violated: requires min out-degree >= 1 and "
            "min in-degree >= 1 at every vertex"
        )
    if k is None or k == "auto":
        k = choose_k(kk)
    k = int(k)
    if k < 2:
        raise KTooSmall("k must be >= 2 so the exit anchor set is a path")
    hp = hp_graph(k)
    if min(len(hp.hplus), len(hp.hminus)) < kk:
        raise KTooSmall(
            f"k = {k} offers only {len(hp.hplus)}/{len(hp.hminus)} anchors "
            f"for {kk} colors"
        )

    labels = list(d.vlabels)
    edges = []
    copies = []
    hg = hp.graph
    for c in range(kk):
        centry = hp.hplus[c]
        cexit = hp.hminus[c]
        for (x, y) in d.arcs[c]:
            off = len(labels)
            labels.extend(
                f"{d.clabels[c]}|{d.vlabels[x]}->{d.vlabels[y]}|{hg.vlabels[i]}"
                for i in range(hg.n)
            )
            edges.extend((off + a, off + b) for (a, b) in hg.edges)
            edges.append((x, off + centry))
            edges.append((y, off + cexit))
            copies.append((c, (x, y), off))

    out = SimpleGraph(len(labels), tuple(labels), tuple(edges))
    object.__setattr__(out, "sip_k", k)
    object.__setattr__(out, "sip_copies", tuple(copies))
    object.__setattr__(out, "sip_source", d)
    return out
