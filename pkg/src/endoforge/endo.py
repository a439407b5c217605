"""Exact enumeration of endomorphisms and the induced transformation monoid.

The engine is a complete backtracking search over vertex images in a static
order (greedy: most constraints into the already-placed prefix, ties by total
constraint degree, then index), with

  * static candidate pruning by per-color degree/loop signatures: a vertex
    with a c-colored out-arc can only map to a vertex with a c-colored
    out-arc, likewise for in-arcs, and loops map to loops;
  * per-color forward checking: assigning u prunes the domain of every arc
    partner to the in/out neighborhood of the image;
  * a walk-parity distance rule: a zigzag walk of length L from u to v maps
    to a zigzag walk of length L between the images, so both the even and
    the odd walk distance may only shrink.  Both-parity distances come from
    one breadth-first sweep of the bipartite double cover.

The third rule is what makes rigid gadget products (girth ~ 2k+5, thousands
of vertices) enumerable: plain forward checking would wander through
exponentially many foldings of each long cycle before the closing constraint
fires, while the parity rule refutes a folding the moment it happens.

Results are exact and deterministic; exceeding the node budget raises
BudgetExceeded and never returns a partial monoid.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _search
from .errors import BudgetExceeded, MalformedInput, NotClosed
from .graphs import ArcColoredDigraph, SimpleGraph

DEFAULT_NODE_BUDGET = 10 ** 8
DIST_SIZE_CAP = 6000          # vertices; the distance table is n*n*2 uint8
NEAR_CAP = 160                # distance-rule partners per vertex
STATE_BYTES_CAP = 1_500_000_000

DIST_SAT = 254                # finite distances saturate here
DIST_INF = 255                # no walk of that parity at all

# radius levels for the precomputed ball bitsets; distances between
# near-list partners beyond the last level are left unconstrained
BALL_LEVELS = tuple(range(16)) + (17, 19, 21, 23, 25, 27, 29, 31,
                                  35, 39, 43, 47, 52)


def node_budget(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("ENDOFORGE_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


def _as_colored(host):
    """Normalize a host to (n, color arc lists); edges become arc pairs."""
    if isinstance(host, ArcColoredDigraph):
        return host.n, [list(a) for a in host.arcs]
    if isinstance(host, SimpleGraph):
        arcs = [(u, v) for (u, v) in host.edges] + [(v, u) for (u, v) in host.edges]
        return host.n, [sorted(arcs)]
    raise MalformedInput(f"cannot enumerate endomorphisms of {type(host).__name__}")


def _pack_bool_rows(mat):
    """Pack a boolean (r, n) matrix into (r, W) uint64 rows, little-endian bits."""
    r, n = mat.shape
    W = max(1, (n + 63) // 64)
    packed = np.packbits(mat, axis=1, bitorder="little")
    out = np.zeros((r, W * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(out.view(np.uint64))


def _distance_parity(n, arcs):
    """Both-parity zigzag-walk distances via the bipartite double cover.

    dist[u, v, p] = shortest walk length of parity p from u to v in the
    underlying graph (loops allowed, orientation and colors ignored);
    finite values saturate at 254, 255 means no such walk exists.  The
    saturation keeps the pruning rule sound, only weaker.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    rows, cols = [], []
    for arcset in arcs:
        for (u, v) in arcset:
            # (u, parity) <-> (v, 1 - parity); a loop links the two parities
            rows.extend((u, v + n, v, u + n))
            cols.extend((v + n, u, u + n, v))
    data = np.ones(len(rows), dtype=np.int8)
    cover = csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))
    dist = np.empty((n, n, 2), dtype=np.uint8)
    chunk = max(1, min(n, 512))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        d = shortest_path(cover, method="D", unweighted=True,
                          indices=np.arange(lo, hi))
        infinite = ~np.isfinite(d)
        np.minimum(d, float(DIST_SAT), out=d, where=~infinite)
        d[infinite] = float(DIST_INF)
        dist[lo:hi, :, 0] = d[:, :n].astype(np.uint8)
        dist[lo:hi, :, 1] = d[:, n:].astype(np.uint8)
    return dist


def _ball_masks(dist):
    """balls[w, li, p] = bitset of vertices within BALL_LEVELS[li] of w, parity p.

    level_of[d] is the least level index covering distance d (255 when d is
    beyond the last level; such pairs impose no constraint).
    """
    n = dist.shape[0]
    L = len(BALL_LEVELS)
    W = max(1, (n + 63) // 64)
    balls = np.zeros((n, L, 2, W), dtype=np.uint64)
    for li, r in enumerate(BALL_LEVELS):
        for p in (0, 1):
            balls[:, li, p, :] = _pack_bool_rows(dist[:, :, p] <= r)
    level_of = np.full(256, 255, dtype=np.uint8)
    for d in range(256):
        for li, r in enumerate(BALL_LEVELS):
            if d <= r:
                level_of[d] = li
                break
    return np.ascontiguousarray(balls), level_of


def _near_lists(dist, cap):
    """Per-vertex distance-rule partners: the cap nearest by either parity."""
    n = dist.shape[0]
    big = np.iinfo(np.int64).max
    both = np.minimum(dist[:, :, 0], dist[:, :, 1]).astype(np.int64)
    np.fill_diagonal(both, big)
    ptr = np.zeros(n + 1, dtype=np.int64)
    others, des, dos = [], [], []
    take = min(cap, n - 1)
    for v in range(n):
        if take <= 0:
            ptr[v + 1] = ptr[v]
            continue
        row = both[v]
        idx = np.argpartition(row, take - 1)[:take]
        idx = idx[row[idx] < big]
        idx = np.sort(idx)
        others.append(idx.astype(np.int64))
        des.append(dist[v, idx, 0])
        dos.append(dist[v, idx, 1])
        ptr[v + 1] = ptr[v] + idx.size
    other = np.concatenate(others) if others else np.zeros(0, dtype=np.int64)
    de = np.concatenate(des) if des else np.zeros(0, dtype=np.uint8)
    do = np.concatenate(dos) if dos else np.zeros(0, dtype=np.uint8)
    return ptr, other, de, do


def _signature_candidates(n, K, arcs, dist):
    """Initial candidate matrix from degree/loop signatures (and odd-walk girth)."""
    out_f = np.zeros((K, n), dtype=bool)
    in_f = np.zeros((K, n), dtype=bool)
    loop_f = np.zeros((K, n), dtype=bool)
    for c, arcset in enumerate(arcs):
        for (u, v) in arcset:
            out_f[c, u] = True
            in_f[c, v] = True
            if u == v:
                loop_f[c, u] = True
    flags = np.concatenate([out_f, in_f, loop_f], axis=0).T  # (n, 3K)
    req = _pack_bool_rows(flags)                              # (n, G)
    ok = np.ones((n, n), dtype=bool)
    chunk = max(1, min(n, 256))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        # candidate w for v needs req[v] & ~req[w] == 0
        viol = (req[lo:hi, None, :] & ~req[None, :, :]).any(axis=2)
        ok[lo:hi] &= ~viol
    if dist is not None:
        oddball = dist[np.arange(n), np.arange(n), 1].astype(np.int64)
        ok &= oddball[None, :] <= oddball[:, None]
    return ok


def _constraints(n, K, arcs):
    """Per-vertex CSR of (other endpoint, mask row); loops are excluded."""
    per_vertex = [set() for _ in range(n)]
    for c, arcset in enumerate(arcs):
        for (u, v) in arcset:
            if u == v:
                continue
            per_vertex[u].add((v, c))        # phi(v) in out-neighbors of image
            per_vertex[v].add((u, K + c))    # phi(u) in in-neighbors of image
    ptr = np.zeros(n + 1, dtype=np.int64)
    other, mrow = [], []
    for v in range(n):
        for (x, mr) in sorted(per_vertex[v]):
            other.append(x)
            mrow.append(mr)
        ptr[v + 1] = len(other)
    return ptr, np.asarray(other, dtype=np.int64), np.asarray(mrow, dtype=np.int64)


def _static_order(n, ptr, other):
    """Greedy: max constraints into the placed prefix, then total degree, then index."""
    degree = (ptr[1:] - ptr[:-1]).astype(np.int64)
    score = np.zeros(n, dtype=np.int64)
    placed = np.zeros(n, dtype=bool)
    key_base = int(degree.max()) + 1 if n else 1
    order = np.empty(n, dtype=np.int64)
    for i in range(n):
        key = (score * key_base + degree) * np.int64(n + 1) + (n - 1 - np.arange(n))
        key[placed] = -1
        u = int(np.argmax(key))
        order[i] = u
        placed[u] = True
        for e in range(int(ptr[u]), int(ptr[u + 1])):
            score[int(other[e])] += 1
    return order


class TransformationMonoid:
    """Closed family of vertex self-maps with its composition table.

    maps is an (m, n) array sorted lexicographically; table[i][j] is the
    index of maps[i] composed after maps[j] (apply j, then i).  The table
    is materialized on first access since it is quadratic in the family.
    """

    def __init__(self, maps):
        arr = np.asarray(sorted({tuple(int(x) for x in m) for m in maps}),
                         dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise NotClosed("empty family")
        self.maps = arr
        self._index = {arr[i].tobytes(): i for i in range(arr.shape[0])}
        ident = np.arange(arr.shape[1], dtype=np.int64).tobytes()
        if ident not in self._index:
            raise NotClosed("family does not contain the identity")
        self.identity = self._index[ident]
        self._table = None

    @property
    def size(self):
        return self.maps.shape[0]

    @property
    def degree(self):
        return self.maps.shape[1]

    def map_tuple(self, i):
        return tuple(int(x) for x in self.maps[i])

    def compose(self, i, j):
        """Index of maps[i] after maps[j]; NotClosed if absent."""
        comp = self.maps[i][self.maps[j]].tobytes()
        if comp not in self._index:
            raise NotClosed(f"composition of maps {i} and {j} is not in the family")
        return self._index[comp]

    @property
    def table(self):
        if self._table is None:
            m = self.size
            table = np.zeros((m, m), dtype=np.int64)
            for i in range(m):
                for j in range(m):
                    table[i, j] = self.compose(i, j)
            self._table = table
        return self._table


def transformation_monoid(maps) -> TransformationMonoid:
    """Wrap a closed family containing the identity."""
    return TransformationMonoid(maps)


def enumerate_endomorphisms(host, budget=None, jobs: int = 1,
                            distance_pruning=None) -> TransformationMonoid:
    """All color-preserving self-maps of an arc-colored digraph or simple graph.

    Exceeding the node budget (default 10^8, env ENDOFORGE_NODE_BUDGET)
    raises BudgetExceeded.  jobs > 1 partitions the root vertex's candidate
    images across threads; the merged result is independent of the schedule.
    """
    n, arcs = _as_colored(host)
    if n == 0:
        raise MalformedInput("host has no vertices")
    bud = node_budget(budget)
    if n > bud:
        raise BudgetExceeded(
            f"host has {n} vertices; even one assignment per vertex exceeds "
            f"the node budget {bud}"
        )
    K = len(arcs)
    W = max(1, (n + 63) // 64)
    use_dist_est = distance_pruning if distance_pruning is not None else n <= DIST_SIZE_CAP
    ball_words = n * len(BALL_LEVELS) * 2 * W if use_dist_est else 0
    state_bytes = ((2 * max(K, 1) + 2) * n * W + ball_words) * 8
    if state_bytes > STATE_BYTES_CAP:
        raise BudgetExceeded(
            f"candidate state for {n} vertices and {K} colors needs about "
            f"{state_bytes} bytes; refusing (cap {STATE_BYTES_CAP})"
        )

    if n == 1:
        maps = [(0,)]
        return transformation_monoid(maps)

    use_dist = distance_pruning if distance_pruning is not None else n <= DIST_SIZE_CAP
    dist = _distance_parity(n, arcs) if use_dist else None

    ok = _signature_candidates(n, K, arcs, dist)
    cand0 = _pack_bool_rows(ok)
    ptr, other, mrow = _constraints(n, K, arcs)

    masks = np.zeros((max(2 * K, 1), n, W), dtype=np.uint64)
    for c, arcset in enumerate(arcs):
        for (u, v) in arcset:
            masks[c, u, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
            masks[K + c, v, u >> 6] |= np.uint64(1) << np.uint64(u & 63)

    order = _static_order(n, ptr, other)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n, dtype=np.int64)
    cnt0 = np.bitwise_count(cand0).sum(axis=1).astype(np.int64)
    if dist is None:
        balls = np.zeros((1, 1, 2, 1), dtype=np.uint64)
        level_of = np.full(256, 255, dtype=np.uint8)
        near_ptr = np.zeros(n + 1, dtype=np.int64)
        near_other = np.zeros(0, dtype=np.int64)
        near_de = np.zeros(0, dtype=np.uint8)
        near_do = np.zeros(0, dtype=np.uint8)
    else:
        balls, level_of = _ball_masks(dist)
        near_ptr, near_other, near_de, near_do = _near_lists(dist, NEAR_CAP)

    kernel = _search.get_kernel(want_numba=True)
    using_numba = kernel is not _search._search_impl

    root = int(np.argmin(cnt0 * np.int64(n) + rank))
    root_bits = [w for w in range(n) if ok[root, w]]
    jobs = max(1, int(jobs))
    chunks = []
    if jobs == 1 or len(root_bits) <= 1:
        chunks = [(0, n)]
    else:
        per = max(1, (len(root_bits) + jobs - 1) // jobs)
        for i in range(0, len(root_bits), per):
            lo = root_bits[i]
            hi = root_bits[min(i + per, len(root_bits)) - 1] + 1
            chunks.append((lo, hi))

    def run_chunk(lo_hi):
        lo, hi = lo_hi
        cand = cand0.copy()
        keep = np.zeros(n, dtype=bool)
        keep[lo:hi] = True
        cand[root] &= _pack_bool_rows(keep[None, :])[0]
        cnt = cnt0.copy()
        cnt[root] = int(np.bitwise_count(cand[root]).sum())
        # an empty root chunk would look like a contradiction, not "done"
        if cnt[root] == 0:
            return np.empty((0, n), dtype=np.int64), 0, 0
        return kernel(rank, cand, cnt, ptr, other, mrow, masks,
                      bool(dist is not None), balls, level_of,
                      near_ptr, near_other, near_de, near_do, bud)

    if len(chunks) > 1 and using_numba:
        run_chunk((0, 0))  # empty root range: compiles the kernel before threading
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(run_chunk, chunks))
    else:
        outs = [run_chunk(ch) for ch in chunks]

    total_nodes = sum(o[1] for o in outs)
    if any(o[2] == 1 for o in outs) or total_nodes > bud:
        raise BudgetExceeded(f"node budget {bud} exceeded after {total_nodes} nodes")
    found = [o[0] for o in outs if o[0].shape[0]]
    maps = np.concatenate(found) if found else np.empty((0, n), dtype=np.int64)
    tm = transformation_monoid([tuple(r) for r in maps])
    tm.nodes_explored = int(total_nodes)
    return tm


def naive_endomorphisms(host):
    """Filter all |V|^|V| maps; the independent oracle for small hosts."""
    n, arcs = _as_colored(host)
    if n > 7:
        raise MalformedInput("naive oracle is limited to 7 vertices")
    adj = [np.zeros((n, n), dtype=bool) for _ in arcs]
    for c, arcset in enumerate(arcs):
        for (u, v) in arcset:
            adj[c][u, v] = True
    all_maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)
    keep = np.ones(all_maps.shape[0], dtype=bool)
    for c, arcset in enumerate(arcs):
        for (u, v) in arcset:
            keep &= adj[c][all_maps[:, u], all_maps[:, v]]
    return [tuple(int(x) for x in row) for row in all_maps[keep]]


def endo_monoid_table(tm: TransformationMonoid):
    """Abstract monoid of the family under (f.g)(v) = f(g(v)) composition."""
    from .algebra import validate_monoid

    return validate_monoid(tm.table, tm.identity)


def retractions(tm: TransformationMonoid):
    """Indices of idempotent maps (restriction to the image is the identity)."""
    return tuple(
        i for i in range(tm.size)
        if np.array_equal(tm.maps[i][tm.maps[i]], tm.maps[i])
    )


def automorphisms(tm: TransformationMonoid) -> TransformationMonoid:
    """The subgroup of bijective maps, rebuilt as its own closed family."""
    n = tm.degree
    bij = [i for i in range(tm.size)
           if np.array_equal(np.sort(tm.maps[i]), np.arange(n))]
    sub = transformation_monoid([tm.map_tuple(i) for i in bij])
    t = sub.table
    for i in range(sub.size):
        if not any(int(t[i, j]) == sub.identity and int(t[j, i]) == sub.identity
                   for j in range(sub.size)):
            raise NotClosed("bijective maps do not form a group")
    return sub
