"""Exhaustive enumeration of small monoids, up to isomorphism.

With the identity fixed at index 0 the remaining (n-1)^2 table cells are
brute-forced and filtered by a vectorized associativity scan; isomorphic
tables are collapsed by taking the minimum over all identity-fixing
relabelings.  The classic counts are 1, 2, 7, 35 for n = 1..4.
"""

import itertools
from functools import lru_cache

import numpy as np

from endoforge.algebra import Monoid, validate_monoid


def _all_tables_identity0(n):
    """All n x n tables with row/column 0 the identity, as one big array."""
    free = (n - 1) * (n - 1)
    combos = np.array(
        list(itertools.product(range(n), repeat=free)), dtype=np.int64
    )
    m = combos.shape[0]
    tables = np.empty((m, n, n), dtype=np.int64)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    tables[:, 1:, 1:] = combos.reshape(m, n - 1, n - 1)
    return tables


def _associative_mask(tables):
    m, n, _ = tables.shape
    keep = np.ones(m, dtype=bool)
    rows = np.arange(m)
    for x in range(n):
        for y in range(n):
            xy = tables[:, x, y]
            for z in range(n):
                yz = tables[:, y, z]
                left = tables[rows, xy, z]
                right = tables[rows, x, yz]
                keep &= left == right
                if not keep.any():
                    return keep
    return keep


def _canonical(table):
    n = table.shape[0]
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = np.array((0,) + perm, dtype=np.int64)
        relabeled = p[table[np.ix_(np.argsort(p), np.argsort(p))]]
        key = relabeled.tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def monoids_up_to(n_max):
    """All monoids with size <= n_max, one representative per isomorphism class."""
    out = []
    for n in range(1, n_max + 1):
        tables = _all_tables_identity0(n)
        tables = tables[_associative_mask(tables)]
        seen = {}
        for t in tables:
            key = _canonical(t)
            if key not in seen:
                seen[key] = np.frombuffer(key, dtype=np.int64).reshape(n, n).copy()
        for t in sorted(seen.values(), key=lambda a: a.tobytes()):
            out.append(validate_monoid(t, 0))
    return tuple(out)


def monoid_counts(n_max):
    sizes = [m.size for m in monoids_up_to(n_max)]
    return [sizes.count(n) for n in range(1, n_max + 1)]
