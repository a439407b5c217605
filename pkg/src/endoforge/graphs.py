"""Arc-colored digraphs, simple undirected graphs, walks, and basic queries.

An arc-colored digraph is a vertex set together with one arc set per color;
each color class is a set of ordered pairs (no duplicates within a color,
loops allowed).  Endomorphisms must preserve every color class separately.
All data is immutable after construction, vertex labels are opaque metadata,
and every stored collection is kept in a canonical sorted order so that equal
inputs produce byte-identical outputs.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedInput, NotAWalk

INF = float("inf")


def _check_labels(labels, count, what):
    if len(labels) != count:
        raise MalformedInput(f"{what}: expected {count} labels, got {len(labels)}")


@dataclass(frozen=True)
class ArcColoredDigraph:
    """Directed graph with one arc set per color.

    arcs[c] is a sorted tuple of (u, v) pairs; duplicates within a color are
    merged (set semantics).  Empty color classes are allowed.
    """

    n: int
    vlabels: tuple
    clabels: tuple
    arcs: tuple

    def __post_init__(self):
        _check_labels(self.vlabels, self.n, "vertex labels")
        _check_labels(self.clabels, len(self.arcs), "color labels")
        norm = []
        for c, arcset in enumerate(self.arcs):
            for (u, v) in arcset:
                if not (0 <= u < self.n and 0 <= v < self.n):
                    raise MalformedInput(f"arc ({u},{v}) of color {c} out of range")
            norm.append(tuple(sorted(set(map(tuple, arcset)))))
        object.__setattr__(self, "arcs", tuple(norm))
        object.__setattr__(self, "vlabels", tuple(self.vlabels))
        object.__setattr__(self, "clabels", tuple(self.clabels))

    @property
    def num_colors(self):
        return len(self.arcs)

    @property
    def num_arcs(self):
        """Total arc count, each color counted separately."""
        return sum(len(a) for a in self.arcs)

    def has_arc(self, c, u, v):
        return (u, v) in self._arc_sets[c]

    @property
    def _arc_sets(self):
        sets = getattr(self, "_arc_sets_cache", None)
        if sets is None:
            sets = tuple(frozenset(a) for a in self.arcs)
            object.__setattr__(self, "_arc_sets_cache", sets)
        return sets

    def has_loops(self):
        return any(u == v for a in self.arcs for (u, v) in a)


@dataclass(frozen=True)
class SimpleGraph:
    """Loopless undirected graph without multi-edges."""

    n: int
    vlabels: tuple
    edges: tuple

    def __post_init__(self):
        _check_labels(self.vlabels, self.n, "vertex labels")
        norm = set()
        for (u, v) in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise MalformedInput(f"edge ({u},{v}) out of range")
            if u == v:
                raise MalformedInput(f"loop at {u} not allowed in a simple graph")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "vlabels", tuple(self.vlabels))

    @property
    def num_edges(self):
        return len(self.edges)

    def adjacency(self):
        adj = [[] for _ in range(self.n)]
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    def degrees(self):
        deg = np.zeros(self.n, dtype=np.int64)
        for (u, v) in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self):
        return int(self.degrees().max()) if self.n else 0


@dataclass(frozen=True)
class Walk:
    """Alternating vertex/arc sequence v0, a1, v1, ..., ak, vk.

    steps[i] = (color, (v_i, v_{i+1})).  validate() checks endpoint chaining
    and membership of every arc in its declared color class of the host.
    """

    vertices: tuple
    steps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise MalformedInput("a walk has at least one vertex")
        if len(self.steps) != len(self.vertices) - 1:
            raise MalformedInput("step count must be vertex count - 1")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "steps", tuple((c, (u, v)) for c, (u, v) in self.steps))

    @property
    def length(self):
        return len(self.steps)

    def validate(self, host: ArcColoredDigraph):
        for i, (c, (u, v)) in enumerate(self.steps):
            if u != self.vertices[i] or v != self.vertices[i + 1]:
                raise NotAWalk(f"step {i} does not chain: {(u, v)}")
            if not host.has_arc(c, u, v):
                raise NotAWalk(f"arc {(u, v)} missing from color {c}")
        return self

    def concat(self, other: "Walk") -> "Walk":
        if self.vertices[-1] != other.vertices[0]:
            raise NotAWalk("walks do not share an endpoint")
        return Walk(self.vertices + other.vertices[1:], self.steps + other.steps)


def map_walk(host: ArcColoredDigraph, walk: Walk, phi) -> Walk:
    """Image of a walk under a vertex map, with identical color sequence.

    Raises NotAWalk if some image arc is absent, i.e. phi was not an
    endomorphism on the walk's arcs.
    """
    verts = tuple(phi[v] for v in walk.vertices)
    steps = []
    for (c, (u, v)) in walk.steps:
        iu, iv = phi[u], phi[v]
        if not host.has_arc(c, iu, iv):
            raise NotAWalk(f"image arc ({iu},{iv}) missing from color {c}")
        steps.append((c, (iu, iv)))
    return Walk(verts, tuple(steps))


@dataclass(frozen=True)
class DegreeStats:
    out_by_color: np.ndarray   # (colors, n)
    in_by_color: np.ndarray    # (colors, n)

    @property
    def out_deg(self):
        return self.out_by_color.sum(axis=0)

    @property
    def in_deg(self):
        return self.in_by_color.sum(axis=0)

    @property
    def deg(self):
        return self.out_deg + self.in_deg

    @property
    def max_out(self):
        return int(self.out_deg.max()) if self.out_deg.size else 0

    @property
    def max_in(self):
        return int(self.in_deg.max()) if self.in_deg.size else 0

    @property
    def max_deg(self):
        return int(self.deg.max()) if self.deg.size else 0

    @property
    def min_out(self):
        return int(self.out_deg.min()) if self.out_deg.size else 0

    @property
    def min_in(self):
        return int(self.in_deg.min()) if self.in_deg.size else 0

    @property
    def max_per_color(self):
        """Largest per-color out- or in-degree over all vertices and colors."""
        if self.out_by_color.size == 0:
            return 0
        return int(max(self.out_by_color.max(), self.in_by_color.max()))


def degree_stats(d: ArcColoredDigraph) -> DegreeStats:
    """Per-color degree tables; a loop contributes 1 to out and 1 to in."""
    k = d.num_colors
    out = np.zeros((k, d.n), dtype=np.int64)
    inn = np.zeros((k, d.n), dtype=np.int64)
    for c, arcset in enumerate(d.arcs):
        for (u, v) in arcset:
            out[c, u] += 1
            inn[c, v] += 1
    return DegreeStats(out, inn)


def underlying_simple_graph(d: ArcColoredDigraph) -> SimpleGraph:
    """Forget colors, orientations, multiplicity, and loops."""
    edges = set()
    for arcset in d.arcs:
        for (u, v) in arcset:
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return SimpleGraph(d.n, d.vlabels, tuple(sorted(edges)))


def weak_components(d: ArcColoredDigraph):
    """Vertex partition into weakly connected components, sorted canonically."""
    g = underlying_simple_graph(d)
    adj = g.adjacency()
    seen = [False] * d.n
    comps = []
    for s in range(d.n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps))


def girth(g: SimpleGraph):
    """Length of a shortest cycle, or math.inf for forests.

    One breadth-first search per root; the shortest cycle through the root is
    the best dist[a]+dist[b]+1 over non-tree edges scanned.
    """
    adj = g.adjacency()
    best = INF
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            if 2 * dist[u] >= best:
                break
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w and parent[w] != u:
                    cyc = dist[u] + dist[w] + 1
                    if cyc < best:
                        best = cyc
    return best


# JSON and DOT interchange

def digraph_to_json(d: ArcColoredDigraph) -> dict:
    return {
        "vertices": list(d.vlabels),
        "colors": list(d.clabels),
        "arcs": [
            {"color": c, "from": u, "to": v}
            for c in range(d.num_colors)
            for (u, v) in d.arcs[c]
        ],
    }


def digraph_from_json(obj) -> ArcColoredDigraph:
    try:
        vlabels = tuple(str(x) for x in obj["vertices"])
        clabels = tuple(str(x) for x in obj["colors"])
        arcs = [[] for _ in clabels]
        for rec in obj["arcs"]:
            arcs[int(rec["color"])].append((int(rec["from"]), int(rec["to"])))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise MalformedInput(f"bad digraph JSON: {e}") from e
    return ArcColoredDigraph(len(vlabels), vlabels, clabels, tuple(map(tuple, arcs)))


def graph_to_json(g: SimpleGraph) -> dict:
    return {"vertices": list(g.vlabels), "edges": [[u, v] for (u, v) in g.edges]}


def graph_from_json(obj) -> SimpleGraph:
    try:
        vlabels = tuple(str(x) for x in obj["vertices"])
        edges = tuple((int(u), int(v)) for u, v in obj["edges"])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"bad graph JSON: {e}") from e
    return SimpleGraph(len(vlabels), vlabels, edges)


def load_any_graph(path):
    """Load a digraph or simple graph JSON file, detected by keys."""
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise MalformedInput("graph JSON must be an object")
    if "colors" in obj:
        return digraph_from_json(obj)
    if "edges" in obj:
        return graph_from_json(obj)
    raise MalformedInput("graph JSON needs either an 'arcs'/'colors' or an 'edges' field")


def _dot_quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(obj, name="G") -> str:
    """DOT export; one edge statement per arc with color attributes."""
    lines = []
    if isinstance(obj, ArcColoredDigraph):
        lines.append(f"digraph {name} {{")
        for v in range(obj.n):
            lines.append(f"  {v} [label={_dot_quote(obj.vlabels[v])}];")
        for c in range(obj.num_colors):
            for (u, v) in obj.arcs[c]:
                lines.append(
                    f"  {u} -> {v} [colorindex={c}, colorlabel={_dot_quote(obj.clabels[c])}];"
                )
    elif isinstance(obj, SimpleGraph):
        lines.append(f"graph {name} {{")
        for v in range(obj.n):
            lines.append(f"  {v} [label={_dot_quote(obj.vlabels[v])}];")
        for (u, v) in obj.edges:
            lines.append(f"  {u} -- {v};")
    else:
        raise MalformedInput(f"cannot export {type(obj).__name__} to DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"
