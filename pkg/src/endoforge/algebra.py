"""Finite monoids, posets, and lattices given by explicit tables.

Elements of every structure are the indices 0..n-1; multiplication tables are
n x n integer arrays with table[x][y] = x*y.  A lattice doubles as the
commutative idempotent monoid (L, meet) with identity the top element, which
is how lattices enter the graph constructions.

The module also ships the completely regular transformation monoid on
Omega = Z_p x {1,2,3} (constant maps, a p^2 permutation group, and the
(p!)^3 collapse-to-fiber-1 maps) whose faithful representations force large
complete bipartite subdivisions.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadIdentity,
    MalformedInput,
    MalformedTable,
    NoJoin,
    NoMeet,
    NotAssociative,
    NotCommutativeIdempotent,
    NotPoset,
    NotPrime,
    SizeOverflow,
)

DEFAULT_SIZE_CAP = 4096


@dataclass(frozen=True, eq=False)
class Monoid:
    """Finite monoid: table[x][y] = x*y, identity law and associativity hold."""

    table: np.ndarray
    identity: int

    def __post_init__(self):
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int64))

    @property
    def size(self):
        return self.table.shape[0]

    def mul(self, x, y):
        return int(self.table[x, y])

    def __eq__(self, other):
        return (
            isinstance(other, Monoid)
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.identity, self.table.tobytes()))


def validate_monoid(table, identity: int) -> Monoid:
    """Check shape, entry range, the identity law, and all n^3 triples."""
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MalformedTable(f"table must be square and non-empty, got shape {t.shape}")
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        raise MalformedTable("table entries must be integers")
    t = t.astype(np.int64)
    if t.min() < 0 or t.max() >= n:
        raise MalformedTable("table entries out of range")
    if not (0 <= identity < n):
        raise BadIdentity(identity)
    e = int(identity)
    bad = np.nonzero((t[e, :] != np.arange(n)) | (t[:, e] != np.arange(n)))[0]
    if bad.size:
        raise BadIdentity(int(bad[0]))
    # left[x,y,z] = (x*y)*z, right[x,y,z] = x*(y*z)
    left = t[t, :]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    diff = np.nonzero(left != right)
    if diff[0].size:
        x, y, z = (int(diff[i][0]) for i in range(3))
        raise NotAssociative(x, y, z)
    return Monoid(t, e)


def monoid_predicates(m: Monoid):
    """Commutativity, idempotency, and complete regularity flags.

    A finite monoid is completely regular (a union of subgroups) iff every x
    satisfies x^{k+1} = x for some k >= 1, i.e. x reappears in its own power
    sequence x, x^2, x^3, ...
    """
    t = m.table
    n = m.size
    commutative = bool(np.array_equal(t, t.T))
    idempotent = bool(np.array_equal(np.diagonal(t), np.arange(n)))
    completely_regular = True
    for x in range(n):
        p = int(t[x, x])
        ok = p == x
        for _ in range(n):
            if ok:
                break
            p = int(t[p, x])
            ok = p == x
        if not ok:
            completely_regular = False
            break
    return {
        "commutative": commutative,
        "idempotent": idempotent,
        "completely_regular": completely_regular,
    }


def is_k_cancellative(m: Monoid, k: int) -> bool:
    """Right: |{x : x*y = z}| <= k for all y,z.  Left: |{y : x*y = z}| <= k.

    The monoid is k-cancellative if the left or the right version holds.
    """
    if k < 1:
        return False
    t = m.table
    n = m.size
    right_ok = all(int(np.bincount(t[:, y], minlength=n).max()) <= k for y in range(n))
    if right_ok:
        return True
    return all(int(np.bincount(t[x, :], minlength=n).max()) <= k for x in range(n))


def submonoid_closure(m: Monoid, gens) -> frozenset:
    """Smallest subset containing gens and the identity, closed under *."""
    closed = {m.identity} | {int(g) for g in gens}
    frontier = list(closed)
    t = m.table
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            for p in (int(t[x, y]), int(t[y, x])):
                if p not in closed:
                    closed.add(p)
                    frontier.append(p)
    return frozenset(closed)


def generates(m: Monoid, gens) -> bool:
    return len(submonoid_closure(m, gens)) == m.size


def minimal_generating_set(m: Monoid):
    """Smallest generating set; ties broken by lexicographically least indices.

    A non-identity element that is no product a*b with a != x != b belongs to
    every generating set; only the remaining elements enter the size-by-size
    exhaustive search.
    """
    n = m.size
    e = m.identity
    t = m.table
    producible = set()
    for a in range(n):
        for b in range(n):
            p = int(t[a, b])
            if a != p and b != p:
                producible.add(p)
    required = [x for x in range(n) if x != e and x not in producible]
    rest = [x for x in range(n) if x != e and x in producible]
    if generates(m, required):
        return tuple(sorted(required))
    for extra in range(1, len(rest) + 1):
        for combo in itertools.combinations(rest, extra):
            gens = required + list(combo)
            if generates(m, gens):
                return tuple(sorted(gens))
    raise MalformedTable("monoid has no generating set; table is inconsistent")


def _bool_square(a):
    return (a.astype(np.int64) @ a.astype(np.int64)) > 0


@dataclass(frozen=True, eq=False)
class Poset:
    """Partial order as a boolean n x n matrix leq[x][y] <=> x <= y."""

    leq: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.leq, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NotPoset("leq must be a square matrix")
        n = a.shape[0]
        if n and not np.diagonal(a).all():
            raise NotPoset("relation is not reflexive")
        if np.any(a & a.T & ~np.eye(n, dtype=bool)):
            raise NotPoset("relation is not antisymmetric")
        if np.any(_bool_square(a) & ~a):
            raise NotPoset("relation is not transitive")
        object.__setattr__(self, "leq", a)

    @property
    def size(self):
        return self.leq.shape[0]

    def lt(self, x, y):
        return bool(self.leq[x, y]) and x != y

    def covers(self):
        """Pairs (x, y) with x covered by y, sorted."""
        n = self.size
        strict = self.leq & ~np.eye(n, dtype=bool)
        cov = strict & ~_bool_square(strict)
        return sorted((int(x), int(y)) for x, y in zip(*np.nonzero(cov)))

    def down_set(self, y):
        return frozenset(int(x) for x in np.nonzero(self.leq[:, y])[0])

    def up_set(self, x):
        return frozenset(int(y) for y in np.nonzero(self.leq[x, :])[0])

    def __eq__(self, other):
        return isinstance(other, Poset) and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash(self.leq.tobytes())


def poset_isomorphic(p: Poset, q: Poset):
    """Order isomorphism found by backtracking on degree invariants, or None."""
    if p.size != q.size:
        return None
    n = p.size

    def inv(r):
        return [(int(r.leq[:, x].sum()), int(r.leq[x, :].sum())) for x in range(n)]

    ip, iq = inv(p), inv(q)
    if sorted(ip) != sorted(iq):
        return None
    cand = [[y for y in range(n) if iq[y] == ip[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: len(cand[x]))
    image = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        x = order[i]
        for y in cand[x]:
            if used[y]:
                continue
            ok = True
            for j in range(i):
                z = order[j]
                if bool(p.leq[x, z]) != bool(q.leq[y, image[z]]) or bool(
                    p.leq[z, x]
                ) != bool(q.leq[image[z], y]):
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                if rec(i + 1):
                    return True
                used[y] = False
                image[x] = -1
        return False

    return tuple(image) if rec(0) else None


@dataclass(frozen=True, eq=False)
class Lattice:
    poset: Poset
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    def __post_init__(self):
        object.__setattr__(self, "meet", np.asarray(self.meet, dtype=np.int64))
        object.__setattr__(self, "join", np.asarray(self.join, dtype=np.int64))

    @property
    def size(self):
        return self.poset.size

    @property
    def leq(self):
        return self.poset.leq

    def meet_monoid(self) -> Monoid:
        """(L, meet) with the top element as identity."""
        return validate_monoid(self.meet, self.top)

    def join_all(self, elems):
        z = self.bottom
        for x in elems:
            z = int(self.join[z, x])
        return z

    def meet_all(self, elems):
        z = self.top
        for x in elems:
            z = int(self.meet[z, x])
        return z


def lattice_from_poset(p: Poset) -> Lattice:
    """Compute meet and join tables; fail if some pair lacks one."""
    n = p.size
    if n == 0:
        raise NoMeet(0, 0)
    leq = p.leq
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            lower = np.nonzero(leq[:, x] & leq[:, y])[0]
            glb = [int(z) for z in lower if all(leq[w, z] for w in lower)]
            if len(glb) != 1:
                raise NoMeet(x, y)
            meet[x, y] = glb[0]
            upper = np.nonzero(leq[x, :] & leq[y, :])[0]
            lub = [int(z) for z in upper if all(leq[z, w] for w in upper)]
            if len(lub) != 1:
                raise NoJoin(x, y)
            join[x, y] = lub[0]
    bottom = int(np.nonzero(leq.all(axis=1))[0][0])
    top = int(np.nonzero(leq.all(axis=0))[0][0])
    return Lattice(p, meet, join, bottom, top)


def lattice_from_meet_monoid(m: Monoid) -> Lattice:
    """Read a commutative idempotent monoid as a lattice via x <= y <=> x*y = x."""
    preds = monoid_predicates(m)
    if not (preds["commutative"] and preds["idempotent"]):
        raise NotCommutativeIdempotent(
            "meet-monoid reading requires a commutative idempotent monoid"
        )
    n = m.size
    t = m.table
    leq = np.zeros((n, n), dtype=bool)
    for x in range(n):
        for y in range(n):
            leq[x, y] = int(t[x, y]) == x
    lat = lattice_from_poset(Poset(leq))
    if lat.top != m.identity or not np.array_equal(lat.meet, t):
        raise NotCommutativeIdempotent("meet table disagrees with the induced order")
    return lat


def join_irreducible_indices(lat: Lattice):
    """Elements covering exactly one element; the bottom never qualifies."""
    cov_down = {y: 0 for y in range(lat.size)}
    for (x, y) in lat.poset.covers():
        cov_down[y] += 1
    return tuple(y for y in range(lat.size) if cov_down[y] == 1)


def induced_subposet(p: Poset, elems) -> Poset:
    idx = np.asarray(list(elems), dtype=np.int64)
    return Poset(p.leq[np.ix_(idx, idx)])


def join_irreducibles(lat: Lattice) -> Poset:
    return induced_subposet(lat.poset, join_irreducible_indices(lat))


def ideal_lattice(p: Poset, cap: int = DEFAULT_SIZE_CAP) -> Lattice:
    """Lattice of down-closed subsets ordered by inclusion.

    Ideals are enumerated as bitmasks by deciding elements along a linear
    extension, so the work is linear in the number of ideals.  The result
    additionally carries the masks as `ideal_masks`.
    """
    n = p.size
    order = linear_extension(p).order if n else ()
    pred_masks = []
    for x in range(n):
        mask = 0
        for z in range(n):
            if z != x and p.leq[z, x]:
                mask |= 1 << z
        pred_masks.append(mask)

    ideals = []

    def rec(i, mask):
        if i == len(order):
            ideals.append(mask)
            if len(ideals) > cap:
                raise SizeOverflow(f"more than {cap} ideals")
            return
        x = order[i]
        rec(i + 1, mask)
        if pred_masks[x] & mask == pred_masks[x]:
            rec(i + 1, mask | (1 << x))

    rec(0, 0)
    ideals = sorted(ideals, key=lambda m: (bin(m).count("1"), m))
    index = {m: i for i, m in enumerate(ideals)}
    sz = len(ideals)
    leq = np.zeros((sz, sz), dtype=bool)
    meet = np.zeros((sz, sz), dtype=np.int64)
    join = np.zeros((sz, sz), dtype=np.int64)
    for i, a in enumerate(ideals):
        for j, b in enumerate(ideals):
            leq[i, j] = a & b == a
            meet[i, j] = index[a & b]
            join[i, j] = index[a | b]
    lat = Lattice(Poset(leq), meet, join, index[0], index[(1 << n) - 1])
    object.__setattr__(lat, "ideal_masks", tuple(ideals))
    return lat


def boolean_lattice_poset(n: int, cap: int = DEFAULT_SIZE_CAP) -> Poset:
    """Containment order of all subsets of an n-element set."""
    if n < 1:
        raise MalformedInput("n must be >= 1")
    if 2 ** n > cap:
        raise SizeOverflow(f"2^{n} exceeds cap {cap}")
    sz = 2 ** n
    leq = np.zeros((sz, sz), dtype=bool)
    for a in range(sz):
        for b in range(sz):
            leq[a, b] = a & b == a
    return Poset(leq)


def interval_elements(p: Poset, x, z):
    return [y for y in range(p.size) if p.leq[x, y] and p.leq[y, z]]


def is_thick(p: Poset) -> bool:
    """Every interval whose shortest maximal chain has length 2 has >= 4 elements.

    Covers inside an interval agree with covers of the ambient poset (order
    convexity), so the shortest maximal chain length is a breadth-first
    distance in the cover digraph restricted to the interval.
    """
    n = p.size
    up = {x: [] for x in range(n)}
    for (a, b) in p.covers():
        up[a].append(b)
    for x in range(n):
        for z in range(n):
            if not p.leq[x, z] or x == z:
                continue
            inside = set(interval_elements(p, x, z))
            dist = {x: 0}
            frontier = [x]
            while frontier and z not in dist:
                nxt = []
                for a in frontier:
                    for b in up[a]:
                        if b in inside and b not in dist:
                            dist[b] = dist[a] + 1
                            nxt.append(b)
                frontier = nxt
            if dist.get(z) == 2 and len(inside) < 4:
                return False
    return True


@dataclass(frozen=True)
class LinearExtension:
    """Total order refining the lattice order; order[i] = i-th least element."""

    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(x) for x in self.order))

    @property
    def position(self):
        pos = getattr(self, "_position", None)
        if pos is None:
            pos = {x: i for i, x in enumerate(self.order)}
            object.__setattr__(self, "_position", pos)
        return pos

    def validate(self, p: Poset):
        pos = self.position
        if sorted(self.order) != list(range(p.size)):
            raise MalformedInput("linear extension must be a permutation of the elements")
        for x in range(p.size):
            for y in range(p.size):
                if p.leq[x, y] and pos[x] > pos[y]:
                    raise MalformedInput(f"order violates {x} <= {y}")
        return self


def linear_extension(p: Poset) -> LinearExtension:
    """Canonical linear extension: sort by longest-chain height, then index."""
    n = p.size
    strict = p.leq & ~np.eye(n, dtype=bool)
    height = [0] * n
    for x in sorted(range(n), key=lambda v: int(strict[:, v].sum())):
        below = np.nonzero(strict[:, x])[0]
        height[x] = 1 + max((height[int(b)] for b in below), default=-1)
    return LinearExtension(tuple(sorted(range(n), key=lambda x: (height[x], x))))


# the transformation monoid on Omega = Z_p x {1,2,3}

def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _point(a, i, p):
    # fibers are contiguous: (a, i) -> (i-1)*p + a
    return (i - 1) * p + a


def babai_pultr_transformations(p: int):
    """The three families of self-maps of Omega = Z_p x {1,2,3}.

    P: pi_{c,d} shifting fiber 1 by c, fiber 2 by d, fiber 3 by c+d.
    S: (k,i) -> (sigma_i(k), 1) for all triples of permutations of Z_p.
    C: the 3p constant maps.
    Returned as image tuples over the 3p points, sorted lexicographically.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    maps = set()
    pts = 3 * p
    for c in range(p):
        for d in range(p):
            img = [0] * pts
            for a in range(p):
                img[_point(a, 1, p)] = _point((a + c) % p, 1, p)
                img[_point(a, 2, p)] = _point((a + d) % p, 2, p)
                img[_point(a, 3, p)] = _point((a + c + d) % p, 3, p)
            maps.add(tuple(img))
    perms = list(itertools.permutations(range(p)))
    for s1 in perms:
        for s2 in perms:
            for s3 in perms:
                img = [0] * pts
                for k in range(p):
                    img[_point(k, 1, p)] = _point(s1[k], 1, p)
                    img[_point(k, 2, p)] = _point(s2[k], 1, p)
                    img[_point(k, 3, p)] = _point(s3[k], 1, p)
                maps.add(tuple(img))
    for x in range(pts):
        maps.add(tuple([x] * pts))
    return sorted(maps)


def babai_pultr_monoid(p: int, cap: int = DEFAULT_SIZE_CAP):
    """Abstract multiplication table of the monoid above plus the map roster.

    table[i][j] composes map j first, then map i, matching the composition
    convention used for endomorphism monoids.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    size = math.factorial(p) ** 3 + p * p + 3 * p
    if size > cap:
        raise SizeOverflow(f"|M| = {size} exceeds cap {cap}")
    maps = babai_pultr_transformations(p)
    if len(maps) != size:
        raise MalformedTable(f"expected {size} transformations, built {len(maps)}")
    index = {mp: i for i, mp in enumerate(maps)}
    n = len(maps)
    arr = np.array(maps, dtype=np.int64)
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        fi = arr[i]
        for j in range(n):
            table[i, j] = index[tuple(int(v) for v in fi[arr[j]])]
    ident = index[tuple(range(3 * p))]
    return validate_monoid(table, ident), tuple(maps)


def invertible_elements(m: Monoid):
    """Indices x with x*y = y*x = e for some y; checked to form a group."""
    t = m.table
    n = m.size
    e = m.identity
    inv = [x for x in range(n) if np.any((t[x, :] == e) & (t[:, x] == e))]
    group = set(inv)
    for x in inv:
        for y in inv:
            if int(t[x, y]) not in group:
                raise MalformedTable("invertible elements are not closed under product")
    return tuple(inv)


def submonoid_table(m: Monoid, elems) -> Monoid:
    """Abstract table of a subset that is closed and contains the identity."""
    elems = sorted(int(x) for x in elems)
    pos = {x: i for i, x in enumerate(elems)}
    if m.identity not in pos:
        raise MalformedTable("subset does not contain the identity")
    t = np.zeros((len(elems), len(elems)), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            p = int(m.table[x, y])
            if p not in pos:
                raise MalformedTable("subset is not closed under product")
            t[i, j] = pos[p]
    return validate_monoid(t, pos[m.identity])


# isomorphism testing

def _element_invariants(m: Monoid):
    t = m.table
    n = m.size
    invs = []
    for x in range(n):
        # index and period of the power sequence x, x^2, x^3, ...
        seen = {}
        p = x
        k = 1
        while p not in seen:
            seen[p] = k
            p = int(t[p, x])
            k += 1
        period = k - seen[p]
        invs.append((
            int(t[x, x] == x),
            seen[p],
            period,
            x == m.identity,
            tuple(sorted(np.bincount(t[x, :], minlength=n).tolist())),
            tuple(sorted(np.bincount(t[:, x], minlength=n).tolist())),
        ))
    return invs


def monoid_isomorphic(m1: Monoid, m2: Monoid):
    """A bijection f with f(x*y) = f(x)f(y) and f(e1) = e2, or None.

    Backtracks over images of a minimal generating set, pruned by element
    invariants (idempotency, power index and period, solution-count
    profiles); the rest of the map is forced by generator products.
    """
    if m1.size != m2.size:
        return None
    n = m1.size
    inv1 = _element_invariants(m1)
    inv2 = _element_invariants(m2)
    if sorted(inv1) != sorted(inv2):
        return None
    gens = minimal_generating_set(m1)
    t1, t2 = m1.table, m2.table
    # express every element as identity or parent*generator
    parent = {m1.identity: None}
    for g in gens:
        parent.setdefault(g, ("gen", g))
    frontier = list(parent)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(t1[x, g])
                if y not in parent:
                    parent[y] = (x, g)
                    nxt.append(y)
        frontier = nxt
    if len(parent) != n:
        return None
    cand = {g: [y for y in range(n) if inv2[y] == inv1[g]] for g in gens}
    gen_order = sorted(gens, key=lambda g: len(cand[g]))

    def build(gen_img):
        f = [-1] * n
        f[m1.identity] = m2.identity
        for g in gens:
            f[g] = gen_img[g]
        changed = True
        while changed:
            changed = False
            for x in range(n):
                if f[x] < 0:
                    px = parent[x]
                    if px[0] != "gen" and f[px[0]] >= 0:
                        f[x] = int(t2[f[px[0]], f[px[1]]])
                        changed = True
        if any(v < 0 for v in f) or sorted(f) != list(range(n)):
            return None
        fa = np.array(f, dtype=np.int64)
        if not np.array_equal(fa[t1], t2[np.ix_(fa, fa)]):
            return None
        return tuple(f)

    if not gens:
        return build({})

    def rec(i, gen_img, used):
        if i == len(gen_order):
            return build(gen_img)
        g = gen_order[i]
        for y in cand[g]:
            if y in used:
                continue
            gen_img[g] = y
            used.add(y)
            res = rec(i + 1, gen_img, used)
            if res is not None:
                return res
            used.discard(y)
            del gen_img[g]
        return None

    return rec(0, {}, set())


def monoid_isomorphic_bruteforce(m1: Monoid, m2: Monoid):
    """All-bijections oracle; only for very small monoids."""
    if m1.size != m2.size:
        return None
    n = m1.size
    t1, t2 = m1.table, m2.table
    for perm in itertools.permutations(range(n)):
        if perm[m1.identity] != m2.identity:
            continue
        fa = np.array(perm, dtype=np.int64)
        if np.array_equal(fa[t1], t2[np.ix_(fa, fa)]):
            return perm
    return None


# stock structures used across tests and the CLI

def cyclic_group(n: int) -> Monoid:
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return validate_monoid(t, 0)


def opposite_monoid(m: Monoid) -> Monoid:
    """Transpose of the table; left notions become right notions."""
    return validate_monoid(m.table.T, m.identity)


def direct_product(a: Monoid, b: Monoid) -> Monoid:
    na, nb = a.size, b.size
    t = np.zeros((na * nb, na * nb), dtype=np.int64)
    for x1 in range(na):
        for y1 in range(nb):
            for x2 in range(na):
                for y2 in range(nb):
                    t[x1 * nb + y1, x2 * nb + y2] = (
                        int(a.table[x1, x2]) * nb + int(b.table[y1, y2])
                    )
    return validate_monoid(t, a.identity * nb + b.identity)


def chain_lattice(n: int) -> Lattice:
    """0 < 1 < ... < n-1."""
    return lattice_from_poset(Poset(np.triu(np.ones((n, n), dtype=bool))))


def lattice_from_covers(n: int, cover_pairs) -> Lattice:
    leq = np.eye(n, dtype=bool)
    for (x, y) in cover_pairs:
        leq[x, y] = True
    for k in range(n):
        for i in range(n):
            if leq[i, k]:
                leq[i, :] |= leq[k, :]
    return lattice_from_poset(Poset(leq))


# JSON interchange

def monoid_to_json(m: Monoid) -> dict:
    return {"size": m.size, "identity": m.identity, "table": m.table.tolist()}


def monoid_from_json(obj) -> Monoid:
    try:
        table = obj["table"]
        identity = int(obj["identity"])
        size = int(obj["size"])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"bad monoid JSON: {e}") from e
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (size, size):
        raise MalformedInput("monoid JSON: table shape disagrees with size")
    return validate_monoid(t, identity)


def poset_to_json(p: Poset) -> dict:
    return {"size": p.size, "leq": p.leq.astype(int).tolist()}


def poset_from_json(obj) -> Poset:
    try:
        leq = np.asarray(obj["leq"], dtype=bool)
        size = int(obj["size"])
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"bad poset JSON: {e}") from e
    if leq.shape != (size, size):
        raise MalformedInput("poset JSON: leq shape disagrees with size")
    try:
        return Poset(leq)
    except NotPoset as e:
        raise MalformedInput(str(e)) from e


def load_monoid(path) -> Monoid:
    with open(path) as fh:
        return monoid_from_json(json.load(fh))


def load_poset(path) -> Poset:
    with open(path) as fh:
        return poset_from_json(json.load(fh))
