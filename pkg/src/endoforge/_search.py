"""Backtracking kernel for endomorphism enumeration.

A single monolithic routine does the depth-first search over vertex images
with bitset candidate domains, trail-based undo, per-color forward checking,
and a walk-parity distance rule (see endo.py for the preparation of its
inputs).  The routine is written in nopython-compatible style and compiled
with numba on first use; setting ENDOFORGE_NO_NUMBA=1 runs the identical
source uncompiled, which is the slow reference path.

Vertices are assigned in minimum-remaining-values order (domain popcounts
maintained incrementally, ties broken by a precomputed static rank), so
forced vertices are consumed immediately and contradictions surface at the
tightest spot.  The trail records (vertex, word, old value) triples so
backtracking restores domains and popcounts exactly.  Nodes are counted per
attempted assignment; exceeding the budget aborts the whole search, partial
results are never reported.
"""

from __future__ import annotations

import os

import numpy as np

U0 = np.uint64(0)
U1 = np.uint64(1)
UALL = np.uint64(0xFFFFFFFFFFFFFFFF)
M1 = np.uint64(0x5555555555555555)
M2 = np.uint64(0x3333333333333333)
M4 = np.uint64(0x0F0F0F0F0F0F0F0F)


def numba_enabled() -> bool:
    if os.environ.get("ENDOFORGE_NO_NUMBA", "") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _search_impl(rank, cand, cnt0, cons_ptr, cons_other, cons_mrow, masks,
                 use_dist, balls, level_of, near_ptr, near_other,
                 near_de, near_do, budget):
    """Enumerate all total assignments; returns (maps, nodes, status).

    status 0 means the search completed, 1 means the node budget was hit.
    The distance rule runs between the vertex being assigned and its
    near-list partners (both-parity source distances precomputed):
    balls[w, li, p] is the bitset of vertices within the li-th radius level
    of w at parity p, and level_of[d] is the smallest level index covering
    distance d (255: unconstrained).
    """
    n = rank.shape[0]
    W = cand.shape[1]
    assigned = np.full(n, -1, np.int64)
    cnt = cnt0.copy()
    cur = np.full(n, -1, np.int64)          # per-depth last tried bit
    vdepth = np.full(n, -1, np.int64)       # per-depth chosen vertex
    marks = np.zeros(n, np.int64)

    res = np.empty((16, n), np.int64)
    res_n = 0
    tcap = 4096
    trail_x = np.empty(tcap, np.int64)
    trail_wd = np.empty(tcap, np.int64)
    trail_val = np.empty(tcap, np.uint64)
    tlen = 0
    nodes = 0
    status = 0

    depth = 0
    while depth >= 0:
        v = vdepth[depth]
        if v < 0:
            # entering this depth: pick the unassigned vertex with the
            # smallest domain, ties by static rank
            best = -1
            best_key = np.int64(0x7FFFFFFFFFFFFFFF)
            for x in range(n):
                if assigned[x] < 0:
                    key = cnt[x] * n + rank[x]
                    if key < best_key:
                        best_key = key
                        best = x
                        if cnt[x] <= 1:
                            break
            v = best
            vdepth[depth] = v
            cur[depth] = -1

        # next candidate bit of cand[v] strictly after cur[depth]
        start = cur[depth] + 1
        nxt = -1
        wd = start >> 6
        if wd < W:
            word = cand[v, wd] & (UALL << np.uint64(start & 63))
            while True:
                if word != U0:
                    b = 0
                    ww = word
                    if ww & np.uint64(0xFFFFFFFF) == U0:
                        b += 32
                        ww >>= np.uint64(32)
                    if ww & np.uint64(0xFFFF) == U0:
                        b += 16
                        ww >>= np.uint64(16)
                    if ww & np.uint64(0xFF) == U0:
                        b += 8
                        ww >>= np.uint64(8)
                    if ww & np.uint64(0xF) == U0:
                        b += 4
                        ww >>= np.uint64(4)
                    if ww & np.uint64(0x3) == U0:
                        b += 2
                        ww >>= np.uint64(2)
                    if ww & U1 == U0:
                        b += 1
                    nxt = (wd << 6) + b
                    break
                wd += 1
                if wd >= W:
                    break
                word = cand[v, wd]

        if nxt < 0:
            # exhausted this depth; unwind the parent's propagation
            vdepth[depth] = -1
            depth -= 1
            if depth >= 0:
                mark = marks[depth]
                while tlen > mark:
                    tlen -= 1
                    x = trail_x[tlen]
                    wd2 = trail_wd[tlen]
                    old = trail_val[tlen]
                    diff = old ^ cand[x, wd2]
                    diff = diff - ((diff >> np.uint64(1)) & M1)
                    diff = (diff & M2) + ((diff >> np.uint64(2)) & M2)
                    diff = (diff + (diff >> np.uint64(4))) & M4
                    diff = diff + (diff >> np.uint64(32))
                    diff = diff + (diff >> np.uint64(16))
                    diff = diff + (diff >> np.uint64(8))
                    cnt[x] += np.int64(diff & np.uint64(0x7F))
                    cand[x, wd2] = old
                assigned[vdepth[depth]] = -1
            continue

        cur[depth] = nxt
        w = nxt
        nodes += 1
        if nodes > budget:
            status = 1
            break
        marks[depth] = tlen
        assigned[v] = w

        ok = True

        # forward checking along incident arcs
        for e in range(cons_ptr[v], cons_ptr[v + 1]):
            x = cons_other[e]
            if assigned[x] >= 0:
                continue
            mr = cons_mrow[e]
            for wd2 in range(W):
                word2 = cand[x, wd2]
                if word2 == U0:
                    continue
                nw = word2 & masks[mr, w, wd2]
                if nw != word2:
                    if tlen == trail_x.shape[0]:
                        ncap = tcap * 2
                        tx = np.empty(ncap, np.int64)
                        tw = np.empty(ncap, np.int64)
                        tv = np.empty(ncap, np.uint64)
                        tx[:tlen] = trail_x
                        tw[:tlen] = trail_wd
                        tv[:tlen] = trail_val
                        trail_x = tx
                        trail_wd = tw
                        trail_val = tv
                        tcap = ncap
                    trail_x[tlen] = x
                    trail_wd[tlen] = wd2
                    trail_val[tlen] = word2
                    tlen += 1
                    diff = word2 ^ nw
                    diff = diff - ((diff >> np.uint64(1)) & M1)
                    diff = (diff & M2) + ((diff >> np.uint64(2)) & M2)
                    diff = (diff + (diff >> np.uint64(4))) & M4
                    diff = diff + (diff >> np.uint64(32))
                    diff = diff + (diff >> np.uint64(16))
                    diff = diff + (diff >> np.uint64(8))
                    cnt[x] -= np.int64(diff & np.uint64(0x7F))
                    cand[x, wd2] = nw
            if cnt[x] == 0:
                ok = False
                break

        # walk-parity distance rule against the near-list of v
        if ok and use_dist:
            for e in range(near_ptr[v], near_ptr[v + 1]):
                x = near_other[e]
                if assigned[x] >= 0:
                    continue
                le = level_of[near_de[e]]
                lo_ = level_of[near_do[e]]
                if le == 255 and lo_ == 255:
                    continue
                for wd2 in range(W):
                    word2 = cand[x, wd2]
                    if word2 == U0:
                        continue
                    keep = word2
                    if le != 255:
                        keep &= balls[w, le, 0, wd2]
                    if lo_ != 255:
                        keep &= balls[w, lo_, 1, wd2]
                    if keep != word2:
                        if tlen == trail_x.shape[0]:
                            ncap = tcap * 2
                            tx = np.empty(ncap, np.int64)
                            tw = np.empty(ncap, np.int64)
                            tv = np.empty(ncap, np.uint64)
                            tx[:tlen] = trail_x
                            tw[:tlen] = trail_wd
                            tv[:tlen] = trail_val
                            trail_x = tx
                            trail_wd = tw
                            trail_val = tv
                            tcap = ncap
                        trail_x[tlen] = x
                        trail_wd[tlen] = wd2
                        trail_val[tlen] = word2
                        tlen += 1
                        diff = word2 ^ keep
                        diff = diff - ((diff >> np.uint64(1)) & M1)
                        diff = (diff & M2) + ((diff >> np.uint64(2)) & M2)
                        diff = (diff + (diff >> np.uint64(4))) & M4
                        diff = diff + (diff >> np.uint64(32))
                        diff = diff + (diff >> np.uint64(16))
                        diff = diff + (diff >> np.uint64(8))
                        cnt[x] -= np.int64(diff & np.uint64(0x7F))
                        cand[x, wd2] = keep
                if cnt[x] == 0:
                    ok = False
                    break

        if not ok:
            mark = marks[depth]
            while tlen > mark:
                tlen -= 1
                x = trail_x[tlen]
                wd2 = trail_wd[tlen]
                old = trail_val[tlen]
                diff = old ^ cand[x, wd2]
                diff = diff - ((diff >> np.uint64(1)) & M1)
                diff = (diff & M2) + ((diff >> np.uint64(2)) & M2)
                diff = (diff + (diff >> np.uint64(4))) & M4
                diff = diff + (diff >> np.uint64(32))
                diff = diff + (diff >> np.uint64(16))
                diff = diff + (diff >> np.uint64(8))
                cnt[x] += np.int64(diff & np.uint64(0x7F))
                cand[x, wd2] = old
            assigned[v] = -1
            continue

        if depth == n - 1:
            if res_n == res.shape[0]:
                nres = np.empty((res.shape[0] * 2, n), np.int64)
                nres[:res_n] = res[:res_n]
                res = nres
            for i in range(n):
                res[res_n, i] = assigned[i]
            res_n += 1
            mark = marks[depth]
            while tlen > mark:
                tlen -= 1
                x = trail_x[tlen]
                wd2 = trail_wd[tlen]
                old = trail_val[tlen]
                diff = old ^ cand[x, wd2]
                diff = diff - ((diff >> np.uint64(1)) & M1)
                diff = (diff & M2) + ((diff >> np.uint64(2)) & M2)
                diff = (diff + (diff >> np.uint64(4))) & M4
                diff = diff + (diff >> np.uint64(32))
                diff = diff + (diff >> np.uint64(16))
                diff = diff + (diff >> np.uint64(8))
                cnt[x] += np.int64(diff & np.uint64(0x7F))
                cand[x, wd2] = old
            assigned[v] = -1
            continue

        depth += 1

    return res[:res_n].copy(), nodes, status


_compiled = None


def get_kernel(want_numba: bool):
    """The search routine, compiled if requested and available."""
    global _compiled
    if want_numba and numba_enabled():
        if _compiled is None:
            from numba import njit

            _compiled = njit(cache=True, nogil=True)(_search_impl)
        return _compiled
    return _search_impl
