"""Benchmark: compiled search kernel against the uncompiled fallback.

Runs the same enumerations through both backends (the env flag
ENDOFORGE_NO_NUMBA picks the path) and reports wall times and the speedup.
Results must agree exactly; a mismatch is a hard error.
"""

from __future__ import annotations

import os
import time

from . import algebra, blowup, cayley, encoding, endo, sip


def _cases(size):
    b2 = algebra.lattice_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    cases = [
        ("rigid gadget k=2", sip.hp_graph(2).graph),
        ("lattice encoding, 4 elements", encoding.build_encoding(b2)),
        ("blow-up of a directed 2-cycle",
         blowup.blow_up(cayley.cayley_colored(algebra.cyclic_group(2), [1]))),
    ]
    if size == "medium":
        triv = algebra.validate_monoid([[0]], 0)
        cases += [
            ("rigid gadget k=4", sip.hp_graph(4).graph),
            ("rigid product of the one-element monoid",
             sip.sip_product(cayley.augment_cayley(triv, []))),
            ("lattice encoding, 5-chain", encoding.build_encoding(algebra.chain_lattice(5))),
        ]
    return cases


def _run(host, forced_fallback):
    old = os.environ.get("ENDOFORGE_NO_NUMBA")
    os.environ["ENDOFORGE_NO_NUMBA"] = "1" if forced_fallback else "0"
    try:
        t0 = time.perf_counter()
        tm = endo.enumerate_endomorphisms(host)
        dt = time.perf_counter() - t0
    finally:
        if old is None:
            os.environ.pop("ENDOFORGE_NO_NUMBA", None)
        else:
            os.environ["ENDOFORGE_NO_NUMBA"] = old
    return tm, dt


def run_benchmark(size="small"):
    print(f"search backend benchmark ({size})")
    header = f"{'case':45s} {'numba':>10s} {'python':>10s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for name, host in _cases(size):
        tm_fast, warm = _run(host, forced_fallback=False)   # includes compile
        tm_fast, t_fast = _run(host, forced_fallback=False)
        tm_slow, t_slow = _run(host, forced_fallback=True)
        if [tm_fast.map_tuple(i) for i in range(tm_fast.size)] != [
            tm_slow.map_tuple(i) for i in range(tm_slow.size)
        ]:
            raise AssertionError(f"backends disagree on {name}")
        ratio = t_slow / t_fast if t_fast > 0 else float("inf")
        print(f"{name:45s} {t_fast:9.4f}s {t_slow:9.4f}s {ratio:8.1f}x"
              f"   |End| = {tm_fast.size}")
    print("results identical across backends")


if __name__ == "__main__":
    run_benchmark()
