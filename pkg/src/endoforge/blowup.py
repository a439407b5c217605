"""Degree-reducing blow-up of an arc-colored digraph.

Every vertex v becomes a closed walk W_v over 2|K| fresh vertices
(v,1+,c) and (v,1-,c), one per color layer c, traversed by the new colors
c+ (along the 1+ side, wrapping into the 1- side) and c- (along the 1-
side, wrapping back).  Hub vertices (v,2+,c) and (v,2-,c) exist for every
color c in which v has an out- resp. in-arc; the new color 0 wires
(v,1+,c) -> (v,2+,c) and (v,2-,c) -> (v,1-,c), and each original c-arc
(u,v) becomes the single c-arc (u,2+,c) -> (v,2-,c).

The result D' is loopless with deg(D') <= max(per-color degree of D + 1, 3)
and minimum in- and out-degree exactly 1, and End(D') is isomorphic to
End(D) via the slot- and layer-preserving lift.

Hub vertices are materialized per color with arcs rather than per vertex
with any arc: a hub (v,2+,c) with deg_c^+(v) = 0 would have out-degree 0,
destroying the minimum-degree guarantee the next construction stage needs.
"""

from __future__ import annotations

from .errors import NoColors, NotEndomorphism
from .graphs import ArcColoredDigraph, Walk, degree_stats

SLOT_1P, SLOT_2P, SLOT_1M, SLOT_2M = "1+", "2+", "1-", "2-"


def _blowup_index(d: ArcColoredDigraph):
    """Vertex universe of the blow-up in canonical order, with lookup."""
    stats = degree_stats(d)
    verts = []
    for v in range(d.n):
        for slot in (SLOT_1P, SLOT_2P, SLOT_1M, SLOT_2M):
            for c in range(d.num_colors):
                if slot == SLOT_2P and stats.out_by_color[c, v] == 0:
                    continue
                if slot == SLOT_2M and stats.in_by_color[c, v] == 0:
                    continue
                verts.append((v, slot, c))
    return verts, {t: i for i, t in enumerate(verts)}


def blow_up(d: ArcColoredDigraph) -> ArcColoredDigraph:
    if d.num_colors == 0:
        raise NoColors("blow-up needs at least one color")
    k = d.num_colors
    verts, idx = _blowup_index(d)
    vlabels = tuple(f"{d.vlabels[v]}|{slot}|{d.clabels[c]}" for (v, slot, c) in verts)

    base = [[] for _ in range(k)]          # colors c
    plus = [[] for _ in range(k)]          # colors c+
    minus = [[] for _ in range(k)]         # colors c-
    zero = []                              # color 0

    for (v, slot, c) in verts:
        if slot == SLOT_2P:
            zero.append((idx[(v, SLOT_1P, c)], idx[(v, SLOT_2P, c)]))
        elif slot == SLOT_2M:
            zero.append((idx[(v, SLOT_2M, c)], idx[(v, SLOT_1M, c)]))

    for c, arcset in enumerate(d.arcs):
        for (u, v) in arcset:
            base[c].append((idx[(u, SLOT_2P, c)], idx[(v, SLOT_2M, c)]))

    for v in range(d.n):
        for c in range(k):
            if c < k - 1:
                plus[c].append((idx[(v, SLOT_1P, c)], idx[(v, SLOT_1P, c + 1)]))
                minus[c].append((idx[(v, SLOT_1M, c)], idx[(v, SLOT_1M, c + 1)]))
            else:
                plus[c].append((idx[(v, SLOT_1P, c)], idx[(v, SLOT_1M, 0)]))
                minus[c].append((idx[(v, SLOT_1M, c)], idx[(v, SLOT_1P, 0)]))

    clabels = (
        tuple(d.clabels)
        + tuple(f"{lab}+" for lab in d.clabels)
        + tuple(f"{lab}-" for lab in d.clabels)
        + ("0",)
    )
    arcs = tuple(map(tuple, base + plus + minus + [zero]))
    out = ArcColoredDigraph(len(verts), vlabels, clabels, arcs)
    object.__setattr__(out, "blowup_vertices", tuple(verts))
    object.__setattr__(out, "blowup_source", d)
    return out


def blowup_vertex_walk(d: ArcColoredDigraph, dprime: ArcColoredDigraph, v: int) -> Walk:
    """The closed walk W_v through (v,1+,*) then (v,1-,*), back to (v,1+,0)."""
    k = d.num_colors
    verts, idx = _blowup_index(d)
    seq = [(v, SLOT_1P, c) for c in range(k)] + [(v, SLOT_1M, c) for c in range(k)]
    seq.append((v, SLOT_1P, 0))
    ids = [idx[t] for t in seq]
    steps = []
    for i in range(k):
        steps.append((k + i, (ids[i], ids[i + 1])))            # color c+
    for i in range(k):
        steps.append((2 * k + i, (ids[k + i], ids[k + i + 1])))  # color c-
    return Walk(tuple(ids), tuple(steps)).validate(dprime)


def lift_endomorphism(d: ArcColoredDigraph, dprime: ArcColoredDigraph, phi):
    """(v, slot, c) -> (phi(v), slot, c); phi must be an endomorphism of d."""
    phi = list(phi)
    for c, arcset in enumerate(d.arcs):
        for (u, v) in arcset:
            if not d.has_arc(c, phi[u], phi[v]):
                raise NotEndomorphism(
                    f"image of arc ({u},{v}) of color {c} is missing"
                )
    verts = getattr(dprime, "blowup_vertices", None)
    if verts is None:
        verts, _ = _blowup_index(d)
    idx = {t: i for i, t in enumerate(verts)}
    return tuple(idx[(phi[v], slot, c)] for (v, slot, c) in verts)
