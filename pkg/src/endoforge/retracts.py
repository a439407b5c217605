"""Retract lattice, private parts, and cover-graph minor witnesses.

When End(D) is commutative and idempotent every endomorphism is a
retraction and distinct retractions have distinct images, so the images
ordered by inclusion form a lattice isomorphic to End(D) with meet realized
by intersection.  For a join-irreducible y (in the subposet J of
join-irreducibles) the private part P(y) is the connected component of
R(y) minus the retracts of the elements J covers below y that contains
R(y) - R(join of covered); these parts are nonempty, connected, and
pairwise disjoint, and when J is thick every cover pair of J is joined by a
host edge, which contracts to a minor model of the cover graph of J.

Digraph hosts are analyzed through their underlying simple graph: weak
connectivity for parts, an arc in either direction of any color as an edge
between parts.  The emitted MinorModel is re-verifiable from the host
alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Lattice,
    Poset,
    induced_subposet,
    is_thick,
    lattice_from_poset,
)
from .endo import TransformationMonoid, endo_monoid_table
from .errors import (
    InvariantViolated,
    MalformedInput,
    NotIdempotentCommutative,
    PreconditionFailed,
)
from .graphs import ArcColoredDigraph, SimpleGraph, underlying_simple_graph


def _host_graph(host) -> SimpleGraph:
    if isinstance(host, ArcColoredDigraph):
        return underlying_simple_graph(host)
    if isinstance(host, SimpleGraph):
        return host
    raise MalformedInput(f"unsupported host {type(host).__name__}")


def cover_graph(p: Poset) -> SimpleGraph:
    """Vertices the poset elements, one edge per cover pair."""
    return SimpleGraph(p.size, tuple(str(x) for x in range(p.size)),
                       tuple(p.covers()))


@dataclass(frozen=True, eq=False)
class RetractFamily:
    """Lattice-ordered images of the retractions of a host."""

    endo_indices: tuple          # retract id -> index into the monoid's maps
    images: tuple                # retract id -> frozenset of host vertices
    lattice: Lattice             # inclusion order of the images

    @property
    def size(self):
        return len(self.images)


def retract_lattice(host, tm: TransformationMonoid) -> RetractFamily:
    """Images of a commutative idempotent End, ordered by inclusion.

    Fails unless the family's abstract monoid is commutative and idempotent;
    checks that distinct maps have distinct images and that intersections of
    images are again images (meet as intersection).
    """
    from .algebra import monoid_predicates

    mono = endo_monoid_table(tm)
    preds = monoid_predicates(mono)
    if not (preds["commutative"] and preds["idempotent"]):
        raise NotIdempotentCommutative(
            "retract analysis requires a commutative idempotent endomorphism monoid"
        )
    images = []
    for i in range(tm.size):
        images.append(frozenset(int(x) for x in tm.maps[i]))
    if len(set(images)) != len(images):
        raise InvariantViolated("two retractions share an image")
    m = len(images)
    leq = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            leq[i, j] = images[i] <= images[j]
    lat = lattice_from_poset(Poset(leq))
    image_set = set(images)
    for i in range(m):
        for j in range(m):
            inter = images[i] & images[j]
            if inter not in image_set:
                raise InvariantViolated("image intersection is not an image")
            if images[int(lat.meet[i, j])] != inter:
                raise InvariantViolated("meet does not match image intersection")
    return RetractFamily(tuple(range(m)), tuple(images), lat)


def _components(g: SimpleGraph, inside):
    inside = set(inside)
    adj = g.adjacency()
    comps = []
    seen = set()
    for s in sorted(inside):
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w in inside and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def private_part(host, family: RetractFamily, y: int):
    """P(y) for a join-irreducible y of the retract lattice.

    C is the set of elements covered by y inside the subposet of
    join-irreducibles; P(y) is the component of R(y) - union R(x), x in C,
    containing the seed R(y) - R(join C) (join of nothing is the bottom).
    When C is empty the bottom retract is removed from the region as well:
    several join-irreducibles can be minimal at once (their subposet need
    not be a lattice), and without the removal all of their parts would
    contain the bottom retract and overlap.  For a lattice-ordered family
    of join-irreducibles only its unique minimum is affected, and there the
    shrunken part still carries the edges the minor extraction needs.
    """
    g = _host_graph(host)
    lat = family.lattice
    from .algebra import join_irreducible_indices

    jirr = join_irreducible_indices(lat)
    if y not in jirr:
        raise PreconditionFailed(f"{y} is not join-irreducible")
    sub = induced_subposet(lat.poset, jirr)
    ypos = jirr.index(y)
    covered = [jirr[a] for (a, b) in sub.covers() if b == ypos]
    ry = family.images[y]
    removed = set()
    for x in covered:
        removed |= family.images[x]
    if not covered:
        removed |= family.images[lat.bottom]
    region = ry - removed
    seed = ry - family.images[lat.join_all(covered)]
    if not seed:
        raise InvariantViolated("seed region of a join-irreducible is empty")
    comps = _components(g, region)
    holding = [c for c in comps if seed <= c]
    if len(holding) != 1:
        raise InvariantViolated("seed region spreads over several components")
    return holding[0]


@dataclass(frozen=True, eq=False)
class MinorModel:
    """Branch sets certifying that target is a minor of the host."""

    target: SimpleGraph
    branch_sets: tuple           # one frozenset of host vertices per target vertex
    cover_edges: tuple           # host edge realizing each target edge, same order


def verify_minor_model(host, model: MinorModel):
    """Re-check a minor model from the host alone; returns a list of failures."""
    g = _host_graph(host)
    fails = []
    esets = set(g.edges)
    sets = [set(b) for b in model.branch_sets]
    for i, b in enumerate(sets):
        if not b:
            fails.append(f"branch set {i} is empty")
        if len(_components(g, b)) != 1:
            fails.append(f"branch set {i} is disconnected")
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                fails.append(f"branch sets {i} and {j} intersect")
    if len(model.cover_edges) != len(model.target.edges):
        fails.append("one host edge is required per target edge")
    for (te, he) in zip(model.target.edges, model.cover_edges):
        (x, y) = te
        (u, v) = he
        if (min(u, v), max(u, v)) not in esets:
            fails.append(f"claimed host edge {he} does not exist")
        elif not (
            (u in sets[x] and v in sets[y]) or (u in sets[y] and v in sets[x])
        ):
            fails.append(f"host edge {he} does not join branch sets {x} and {y}")
    return fails


def minor_witness(host, tm: TransformationMonoid, require_thick: bool = True):
    """Minor model of the cover graph of the join-irreducible subposet.

    require_thick=False runs the extraction anyway and reports certificate
    failures instead of guaranteeing success.
    """
    family = retract_lattice(host, tm)
    lat = family.lattice
    from .algebra import join_irreducible_indices

    jirr = join_irreducible_indices(lat)
    sub = induced_subposet(lat.poset, jirr)
    if require_thick and not is_thick(sub):
        raise PreconditionFailed(
            "hypothesis violated: the join-irreducible subposet must be thick"
        )
    target = cover_graph(sub)
    parts = [private_part(host, family, y) for y in jirr]
    g = _host_graph(host)
    esets = g.edges
    cover_edges = []
    for (a, b) in target.edges:
        found = None
        pa, pb = parts[a], parts[b]
        for (u, v) in esets:
            if (u in pa and v in pb) or (u in pb and v in pa):
                found = (u, v)
                break
        if found is None:
            raise InvariantViolated(
                f"no host edge joins the private parts of cover pair {(a, b)}"
            )
        cover_edges.append(found)
    model = MinorModel(target, tuple(parts), tuple(cover_edges))
    fails = verify_minor_model(host, model)
    if fails:
        raise InvariantViolated("; ".join(fails))
    return model, family


def minor_model_to_json(model: MinorModel) -> dict:
    from .graphs import graph_to_json

    return {
        "target": graph_to_json(model.target),
        "branch_sets": [sorted(b) for b in model.branch_sets],
        "cover_edges": [[u, v] for (u, v) in model.cover_edges],
    }


def minor_model_from_json(obj) -> MinorModel:
    from .graphs import graph_from_json

    try:
        target = graph_from_json(obj["target"])
        branch = tuple(frozenset(int(v) for v in b) for b in obj["branch_sets"])
        cov = tuple((int(u), int(v)) for (u, v) in obj["cover_edges"])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"bad minor model JSON: {e}") from e
    return MinorModel(target, branch, cov)
