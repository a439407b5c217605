"""Colored Cayley graphs and their loop-free augmentation.

cayley_colored(M, C) is the right Cayley graph: one color per generator c,
arcs (m, m*c).  Its endomorphism monoid is M itself (acting by left
translations) whenever C generates M.

augment_cayley(M, C) additionally makes the digraph loopless with minimum
in- and out-degree 1 while keeping End: add one extra color consisting of a
loop at every vertex, then subdivide every arc (color c) into a directed
path of length 2 whose first arc keeps color c and whose second arc gets a
fresh primed partner color c'.  For |M| = n and |C| = m the result has
n(m+2) vertices, 2n(m+1) arcs, and 2(m+1) colors.
"""

from __future__ import annotations

from .algebra import Monoid, generates
from .errors import NotGenerating, TooManyGenerators
from .graphs import ArcColoredDigraph


def cayley_colored(m: Monoid, gens) -> ArcColoredDigraph:
    """Right Cayley graph with one color per generator; requires C generating."""
    gens = sorted(set(int(g) for g in gens))
    if not generates(m, gens):
        raise NotGenerating(f"{gens} does not generate the monoid")
    n = m.size
    vlabels = tuple(f"m{x}" for x in range(n))
    clabels = tuple(f"g{c}" for c in gens)
    arcs = tuple(
        tuple((x, int(m.table[x, c])) for x in range(n))
        for c in gens
    )
    return ArcColoredDigraph(n, vlabels, clabels, arcs)


def augment_cayley(m: Monoid, gens) -> ArcColoredDigraph:
    """Loopless digraph with min in/out degree 1 and End isomorphic to M.

    Color order: for each generator its base color followed by its primed
    partner, then the all-vertices loop color and its primed partner last.
    Subdivision vertices are labelled by (color, from, to) of the split arc.
    """
    gens = sorted(set(int(g) for g in gens))
    n = m.size
    mm = len(gens)
    if not generates(m, gens):
        raise NotGenerating(f"{gens} does not generate the monoid")
    if mm > n - 1:
        raise TooManyGenerators(f"|C| = {mm} exceeds n - 1 = {n - 1}")

    # arcs of the intermediate digraph: Cayley arcs plus a loop at every vertex
    base = [(f"g{c}", [(x, int(m.table[x, c])) for x in range(n)]) for c in gens]
    base.append(("loop", [(x, x) for x in range(n)]))

    vlabels = [f"m{x}" for x in range(n)]
    clabels = []
    arcs = []
    for (name, arcset) in base:
        first, second = [], []
        for (u, v) in sorted(arcset):
            s = len(vlabels)
            vlabels.append(f"{name}|{u}->{v}")
            first.append((u, s))
            second.append((s, v))
        clabels.extend([name, name + "'"])
        arcs.extend([tuple(first), tuple(second)])
    return ArcColoredDigraph(len(vlabels), tuple(vlabels), tuple(clabels), tuple(arcs))
