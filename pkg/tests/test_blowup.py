import pytest

from endoforge import algebra, blowup, cayley, endo
from endoforge.errors import NoColors, NotEndomorphism
from endoforge.graphs import degree_stats
from conftest import make_digraph


BATTERY = [
    make_digraph(1, [(0, 0)]),
    make_digraph(2, [(0, 1), (1, 0)]),
    make_digraph(3, [(0, 1), (1, 2), (2, 0)]),
    make_digraph(2, [(0, 1)], [(1, 0)]),
    make_digraph(2, [(0, 0), (1, 1)], [(0, 1)]),
    make_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [(0, 2), (1, 3), (2, 0), (3, 1)]),
    make_digraph(3, [(0, 0), (1, 1), (2, 2)], [(0, 1), (1, 2), (2, 0)],
                 [(0, 2), (2, 1), (1, 0)]),
    make_digraph(4, [(0, 1), (2, 3), (1, 0), (3, 2)], [(0, 2), (2, 0), (1, 3), (3, 1)]),
    make_digraph(3, [(0, 1)], [(1, 2)], [(2, 0)]),
    make_digraph(2, [(0, 1), (1, 1)]),
]


def test_single_loop_blowup():
    d = make_digraph(1, [(0, 0)])
    dp = blowup.blow_up(d)
    assert dp.n == 4
    assert not dp.has_loops()
    s = degree_stats(dp)
    assert s.min_out == s.min_in == 1
    assert dp.num_colors == 4


def test_two_cycle_blowup():
    d = make_digraph(2, [(0, 1), (1, 0)])
    dp = blowup.blow_up(d)
    assert degree_stats(dp).max_deg == 3
    tm = endo.enumerate_endomorphisms(dp)
    assert tm.size == 2


def test_blowup_needs_colors():
    with pytest.raises(NoColors):
        blowup.blow_up(make_digraph(2))


def test_vertex_walk_shape():
    d = make_digraph(2, [(0, 1)], [(1, 0)], [(0, 0)])
    dp = blowup.blow_up(d)
    k = d.num_colors
    for v in range(d.n):
        w = blowup.blowup_vertex_walk(d, dp, v)
        assert w.length == 2 * k
        assert w.vertices[0] == w.vertices[-1]
        labels = [dp.vlabels[i] for i in w.vertices]
        assert all("|1+|" in s for s in labels[:k])
        assert all("|1-|" in s for s in labels[k:2 * k])


def test_degree_certificate():
    for d in BATTERY:
        dp = blowup.blow_up(d)
        base = degree_stats(d)
        s = degree_stats(dp)
        verts = dp.blowup_vertices
        deg = s.deg
        for i, (v, slot, c) in enumerate(verts):
            if slot in ("1+", "1-"):
                assert deg[i] <= 3
            elif slot == "2+":
                assert deg[i] == base.out_by_color[c, v] + 1
            else:
                assert deg[i] == base.in_by_color[c, v] + 1


def test_blowup_battery_structure_and_end():
    for d in BATTERY:
        dp = blowup.blow_up(d)
        s = degree_stats(dp)
        assert not dp.has_loops()
        assert s.min_out == 1 and s.min_in == 1
        assert s.max_deg <= max(degree_stats(d).max_per_color + 1, 3)
        assert dp.num_colors == 3 * d.num_colors + 1
        tm = endo.enumerate_endomorphisms(d)
        tmp = endo.enumerate_endomorphisms(dp)
        assert tm.size == tmp.size
        assert algebra.monoid_isomorphic(
            endo.endo_monoid_table(tm), endo.endo_monoid_table(tmp)
        ) is not None


def test_lift_is_enumeration():
    """The lifts of End(D) are exactly End(D')."""
    for d in BATTERY[:6]:
        dp = blowup.blow_up(d)
        tm = endo.enumerate_endomorphisms(d)
        lifted = sorted(
            blowup.lift_endomorphism(d, dp, tm.map_tuple(i)) for i in range(tm.size)
        )
        found = sorted(tuple(r) for r in endo.enumerate_endomorphisms(dp).maps)
        assert lifted == found


def test_lift_rejects_non_endomorphism():
    d = make_digraph(3, [(0, 1), (1, 2), (2, 0)])
    dp = blowup.blow_up(d)
    with pytest.raises(NotEndomorphism):
        blowup.lift_endomorphism(d, dp, (0, 0, 0))


def test_first_layer_slot_preserved():
    """Every endomorphism of D' maps first-layer entry vertices to each other."""
    d = make_digraph(2, [(0, 1), (1, 0)])
    dp = blowup.blow_up(d)
    verts = dp.blowup_vertices
    entry = {i for i, (v, slot, c) in enumerate(verts) if slot == "1+" and c == 0}
    tm = endo.enumerate_endomorphisms(dp)
    for i in range(tm.size):
        mp = tm.map_tuple(i)
        assert all(mp[x] in entry for x in entry)


def test_cayley_blowup_end(left_zero_adjoined):
    m = left_zero_adjoined
    d = cayley.cayley_colored(m, algebra.minimal_generating_set(m))
    dp = blowup.blow_up(d)
    tmp = endo.enumerate_endomorphisms(dp)
    assert algebra.monoid_isomorphic(endo.endo_monoid_table(tmp), m) is not None
