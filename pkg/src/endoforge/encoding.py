"""Arc-colored digraph with endomorphism monoid a prescribed lattice.

Given a finite lattice L (elements 0..n-1) and a linear extension, the
construction builds a digraph on vertices (chain, level) whose endomorphisms
are exactly the n maps phi_w, one per lattice element, composing like meet.
All per-color in- and out-degrees are at most 2.

Ingredients, in the order they appear below:

  * L+ adds a sentinel 0' below everything except the bottom element 0^,
    to which it is incomparable.  Working chains are the chains of L+ that
    meet {0^, 0'}, except the singleton {0'}.
  * bracket(Q, x) collapses some 2-element chains to {0^} depending on the
    position of x in the linear extension; the vertex set is all pairs
    (bracket(Q, x), x).
  * tilde(Q) is the successor chain: the walk W_Q (one vertex per level,
    in extension order, closed off at level bottom) ends where W_tilde(Q)
    begins, so the s-colored arcs decompose into walks, and every element x
    owns a closed walk (its petal) obtained by stitching the walks of all
    chains {z, x} for z strictly below x, then {0'} \\/ {x}.
  * the remaining six color families (r loops, c and c' collapse guards, h
    hooks, i inheritance, j join guards) pin every endomorphism to some
    phi_w.

phi_w intersects the chain component with the down-set of w in L+ and
collapses to {0^} when nothing but 0' survives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Lattice, LinearExtension, linear_extension
from .errors import BadChain, InvariantViolated, NotPrincipal, SizeOverflow
from .graphs import ArcColoredDigraph, Walk, map_walk

ZP = -1  # the sentinel 0'; lattice elements are their own indices


def _chain_label(chain, names):
    inner = ",".join("0'" if z == ZP else names[z] for z in chain)
    return "{" + inner + "}"


class LatticeEncoding:
    """The encoded digraph plus the bookkeeping needed to talk about it."""

    def __init__(self, lat: Lattice, ext: LinearExtension | None = None,
                 cap: int = 100_000):
        self.lattice = lat
        self.ext = (ext or linear_extension(lat.poset)).validate(lat.poset)
        self.n = lat.size
        self.pos = self.ext.position
        self.bottom = lat.bottom
        self.top = lat.top
        if self.ext.order[0] != self.bottom or self.ext.order[-1] != self.top:
            raise InvariantViolated("extension must start at bottom and end at top")
        self._ideal_cache = {}
        self._walk_cache = {}
        self.chains = self._chains(cap)
        self._build()

    # chains and chain surgery

    def _ideal_sorted(self, y):
        """Elements of the principal down-set of y, in extension order."""
        got = self._ideal_cache.get(y)
        if got is None:
            leq = self.lattice.leq
            got = tuple(z for z in self.ext.order if leq[z, y])
            self._ideal_cache[y] = got
        return got

    def _chains(self, cap):
        """All working chains: {0^} u C and {0'} u C for chains C of L - {0^}."""
        leq = self.lattice.leq
        elems = [x for x in self.ext.order if x != self.bottom]
        above = []

        def rec(prefix):
            above.append(tuple(prefix))
            start = elems.index(prefix[-1]) + 1 if prefix else 0
            for i in range(start, len(elems)):
                z = elems[i]
                if not prefix or leq[prefix[-1], z]:
                    prefix.append(z)
                    rec(prefix)
                    prefix.pop()

        rec([])
        out = [(self.bottom,) + c for c in above]
        out += [(ZP,) + c for c in above if c]
        if len(out) > cap:
            raise SizeOverflow(f"{len(out)} chains exceed cap {cap}")
        key = lambda q: (tuple(self.pos[z] for z in q[1:]), 0 if q[0] == self.bottom else 1)
        return tuple(sorted(out, key=key))

    def bracket(self, q, x):
        """Collapse a 2-chain to {0^} when x sits on the collapsing side."""
        if len(q) == 2:
            if q[0] == self.bottom and self.pos[x] < self.pos[q[1]]:
                return (self.bottom,)
            if q[0] == ZP and self.pos[x] >= self.pos[q[1]]:
                return (self.bottom,)
        return q

    def tilde(self, q):
        """The successor chain of q; the walk of q ends where tilde's begins."""
        bot = self.bottom
        if q == (bot,):
            return q
        if q[0] == bot:
            ideal = self._ideal_sorted(q[1])
            if len(ideal) >= 3:
                return self._sorted_chain(q + (ideal[1],))
            return (ZP,) + q[1:]
        # q starts at the sentinel
        if len(q) == 2:
            return (bot,)
        ideal = self._ideal_sorted(q[2])
        i = ideal.index(q[1]) + 1  # q[1] is the i-th least element of the ideal
        if len(ideal) >= i + 2:
            return self._sorted_chain((bot, ideal[i]) + q[2:])
        return (ZP,) + q[2:]

    def _sorted_chain(self, q):
        head = [z for z in q if z == ZP or z == self.bottom]
        tail = sorted((z for z in q if z != ZP and z != self.bottom),
                      key=self.pos.__getitem__)
        return tuple(head) + tuple(tail)

    # the digraph

    def _vertex(self, q, x):
        return self.vindex[(self.bracket(q, x), x)]

    def _build(self):
        n = self.n
        order = self.ext.order
        bot, top = self.bottom, self.top
        leq = self.lattice.leq

        vset = {}
        for q in self.chains:
            for x in order:
                key = (self.bracket(q, x), x)
                if key not in vset:
                    vset[key] = None
        chain_rank = {q: i for i, q in enumerate(self.chains)}
        verts = sorted(vset, key=lambda t: (chain_rank[t[0]], self.pos[t[1]]))
        self.vertices = tuple(verts)
        self.vindex = {t: i for i, t in enumerate(verts)}

        names = [str(x) for x in range(n)]
        vlabels = tuple(f"{_chain_label(q, names)}@{names[x]}" for (q, x) in verts)

        clabels = []
        arcsets = []

        def add_color(label, arcs):
            clabels.append(label)
            arcsets.append(tuple(sorted(set(arcs))))

        # s colors, one per element in extension order
        self.s_color = {}
        for i, x in enumerate(order):
            arcs = []
            if x != top:
                y = order[i + 1]
                for q in self.chains:
                    arcs.append((self._vertex(q, x), self._vertex(q, y)))
            else:
                for q in self.chains:
                    tq = self.tilde(q)
                    if self.bracket(tq, bot) != tq:
                        raise InvariantViolated("successor chain collapses at bottom")
                    arcs.append((self._vertex(q, top), self.vindex[(tq, bot)]))
            self.s_color[x] = len(clabels)
            add_color(f"s:{x}", arcs)

        # r colors: loops everywhere except on chains with second element x
        for x in order:
            if x == bot:
                continue
            arcs = []
            for q in self.chains:
                if len(q) >= 2 and q[1] == x:
                    continue
                for y in order:
                    v = self._vertex(q, y)
                    arcs.append((v, v))
            add_color(f"r:{x}", arcs)

        pairs = [
            (x, y)
            for x in order
            for y in order
            if x != bot and x != y and leq[x, y]
        ]
        pairs.sort(key=lambda p: (self.pos[p[0]], self.pos[p[1]]))

        # c colors: collapse guards on chains rooted at the bottom
        for (x, y) in pairs:
            arcs = [(self._vertex((bot,), y), self._vertex((bot,), bot))]
            for q in self.chains:
                if len(q) >= 2 and q[0] == bot and q[1] == x and leq[q[-1], y]:
                    arcs.append((self.vindex[(q, y)], self._vertex(q, bot)))
            add_color(f"c:{x},{y}", arcs)

        # c' colors: collapse guards on chains rooted at the sentinel
        for (x, y) in pairs:
            arcs = [
                (self._vertex((bot,), y), self._vertex((bot,), bot)),
                (self._vertex((bot,), y), self._vertex((bot,), top)),
            ]
            for q in self.chains:
                if len(q) >= 2 and q[0] == ZP and q[1] == x and leq[q[-1], y]:
                    src = self.vindex[((bot,) + q[1:], y)]
                    arcs.append((src, self.vindex[(q, bot)]))
                    arcs.append((src, self._vertex(q, top)))
            add_color(f"c':{x},{y}", arcs)

        # h colors: hook the top of a 2-chain to the start of a 3-chain walk
        for (x, y) in pairs:
            arcs = [
                (self.vindex[((bot, y), y)], self.vindex[(self._sorted_chain((bot, x, y)), bot)]),
                (self._vertex((bot,), y), self._vertex((bot,), bot)),
            ]
            add_color(f"h:{x},{y}", arcs)

        # i colors: inheritance from longer chains to their prefixes
        for (x, y) in pairs:
            arcs = []
            for q in self.chains:
                if len(q) >= 3 and q[0] == bot and q[-2] == x and q[-1] == y:
                    a = self.vindex[(q, y)]
                    b = self._vertex(q[:-1], y)
                    c0 = self._vertex(q[:-2], y)
                    arcs.extend([(a, b), (b, b), (c0, c0)])
            add_color(f"i:{x},{y}", arcs)

        # j colors: one per incomparable pair, guarding the join
        jpairs = [
            (x, y)
            for x in order
            for y in order
            if self.pos[x] < self.pos[y] and not leq[x, y] and not leq[y, x]
        ]
        jpairs.sort(key=lambda p: (self.pos[p[0]], self.pos[p[1]]))
        for (x, y) in jpairs:
            z = int(self.lattice.join[x, y])
            arcs = [
                (
                    self.vindex[(self._sorted_chain((bot, x, z)), z)],
                    self.vindex[(self._sorted_chain((bot, y, z)), z)],
                ),
                (self.vindex[((bot, x), z)], self._vertex((bot,), z)),
                (self._vertex((bot,), z), self.vindex[((bot, y), z)]),
                (self._vertex((bot,), z), self._vertex((bot,), z)),
            ]
            add_color(f"j:{x},{y}", arcs)

        self.digraph = ArcColoredDigraph(
            len(verts), vlabels, tuple(clabels), tuple(arcsets)
        )

    # walks and petals

    def base_walk(self, q) -> Walk:
        """W_q: one vertex per level in extension order, closed off at bottom."""
        verts = [self._vertex(q, x) for x in self.ext.order]
        tq = self.tilde(q)
        verts.append(self.vindex[(tq, self.bottom)])
        steps = [
            (self.s_color[x], (verts[i], verts[i + 1]))
            for i, x in enumerate(self.ext.order)
        ]
        return Walk(tuple(verts), tuple(steps)).validate(self.digraph)

    def walk_of_chain(self, q) -> Walk:
        """W_q for arbitrary nonempty chains; recursive when q misses 0^ and 0'."""
        got = self._walk_cache.get(q)
        if got is not None:
            return got
        if len(q) == 0:
            raise BadChain("empty chain has no walk")
        if q[0] == ZP or q[0] == self.bottom:
            if q not in set(self.chains):
                raise BadChain(f"{q} is not a working chain")
            w = self.base_walk(q)
        else:
            ideal = self._ideal_sorted(q[0])
            parts = [self.walk_of_chain(self._sorted_chain((z,) + q))
                     for z in ideal[:-1]]
            parts.append(self.walk_of_chain((ZP,) + q))
            w = parts[0]
            for p in parts[1:]:
                w = w.concat(p)
        self._walk_cache[q] = w
        return w

    def petal(self, x) -> Walk:
        """The closed walk owned by x; for the bottom element, the base cycle."""
        if x == self.bottom:
            return self.walk_of_chain((self.bottom,))
        return self.walk_of_chain((x,))

    # endomorphisms

    def phi(self, w):
        """The endomorphism collapsing everything outside the down-set of w."""
        leq = self.lattice.leq
        img = []
        for (q, x) in self.vertices:
            kept = tuple(
                z for z in q
                if (z == ZP and w != self.bottom) or (z != ZP and leq[z, w])
            )
            if all(z == ZP for z in kept):
                img.append(self.vindex[((self.bottom,), x)])
            else:
                img.append(self.vindex[(self.bracket(kept, x), x)])
        return tuple(img)

    def fixed_petal_ideal(self, phi_map):
        """The element whose down-set is {x : petal of x fixed by phi_map}.

        Checks that the fixed set is a principal ideal and that phi_map is
        the canonical endomorphism of its maximum.
        """
        fixed = []
        for x in range(self.n):
            walk = self.petal(x)
            image = map_walk(self.digraph, walk, list(phi_map))
            if image.vertices == walk.vertices:
                fixed.append(x)
        if not fixed:
            raise NotPrincipal("no petal is fixed, not even the base cycle")
        leq = self.lattice.leq
        tops = [x for x in fixed if all(leq[y, x] for y in fixed)]
        if len(tops) != 1 or {y for y in range(self.n) if leq[y, tops[0]]} != set(fixed):
            raise NotPrincipal(f"fixed set {fixed} is not a principal ideal")
        ell = tops[0]
        if tuple(phi_map) != self.phi(ell):
            raise InvariantViolated(
                "endomorphism disagrees with the canonical map of its fixed ideal"
            )
        return ell


def build_encoding(lat: Lattice, ext: LinearExtension | None = None) -> ArcColoredDigraph:
    """The encoded digraph; the full LatticeEncoding is attached as metadata."""
    enc = LatticeEncoding(lat, ext)
    d = enc.digraph
    object.__setattr__(d, "encoding", enc)
    return d


def chains(lat: Lattice, ext: LinearExtension | None = None):
    return LatticeEncoding(lat, ext).chains
