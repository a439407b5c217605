import numpy as np
import pytest

from endoforge import algebra, encoding, endo
from endoforge.encoding import ZP, LatticeEncoding
from endoforge.errors import BadChain
from endoforge.graphs import degree_stats, map_walk


@pytest.fixture(scope="module")
def enc_b2():
    lat = algebra.lattice_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    return LatticeEncoding(lat)


def test_chains_two_chain():
    enc = LatticeEncoding(algebra.chain_lattice(2))
    assert enc.chains == ((0,), (0, 1), (ZP, 1))


def test_chains_b2(enc_b2):
    # bottom 0, atoms 1 and 2, top 3: eleven working chains
    assert len(enc_b2.chains) == 11
    assert (0,) in enc_b2.chains
    assert (ZP, 1, 3) in enc_b2.chains
    assert (ZP,) not in enc_b2.chains
    assert all(q[0] in (0, ZP) for q in enc_b2.chains)


def test_chains_one_element():
    enc = LatticeEncoding(algebra.chain_lattice(1))
    assert enc.chains == ((0,),)
    assert enc.digraph.n == 1
    assert enc.digraph.num_colors == 1
    assert enc.digraph.arcs[0] == ((0, 0),)
    tm = endo.enumerate_endomorphisms(enc.digraph)
    assert tm.size == 1


def test_bracket(enc_b2):
    # singleton bottom never collapses
    assert enc_b2.bracket((0,), 2) == (0,)
    # bottom-rooted pair collapses below its top in the extension
    assert enc_b2.bracket((0, 2), 1) == (0,)
    # sentinel-rooted pair collapses at or above its top
    assert enc_b2.bracket((ZP, 1), 2) == (0,)
    assert enc_b2.bracket((ZP, 2), 1) == (ZP, 2)


def test_tilde_cases(enc_b2):
    assert enc_b2.tilde((0,)) == (0,)
    assert enc_b2.tilde((0, 3)) == (0, 1, 3)     # insert second ideal element
    assert enc_b2.tilde((0, 1)) == (ZP, 1)       # two-element ideal swaps root
    assert enc_b2.tilde((ZP, 1)) == (0,)
    assert enc_b2.tilde((ZP, 1, 3)) == (0, 2, 3)
    assert enc_b2.tilde((ZP, 2, 3)) == (ZP, 3)


def test_tilde_stays_fixed_at_bottom(enc_b2):
    for q in enc_b2.chains:
        tq = enc_b2.tilde(q)
        assert tq in enc_b2.chains
        assert enc_b2.bracket(tq, enc_b2.bottom) == tq


def test_base_walks_cover_s_arcs(enc_b2):
    d = enc_b2.digraph
    n = enc_b2.n
    covered_vertices = set()
    covered_arcs = set()
    for q in enc_b2.chains:
        w = enc_b2.base_walk(q)
        assert w.length == n
        covered_vertices.update(w.vertices)
        covered_arcs.update((c, a) for (c, a) in w.steps)
    s_colors = set(enc_b2.s_color.values())
    all_s_arcs = {(c, a) for c in s_colors for a in d.arcs[c]}
    assert covered_arcs == all_s_arcs
    assert covered_vertices == set(range(d.n))


def test_walk_chaining(enc_b2):
    for q in enc_b2.chains:
        w = enc_b2.base_walk(q)
        nxt = enc_b2.base_walk(enc_b2.tilde(q))
        assert w.vertices[-1] == nxt.vertices[0]
    closed = enc_b2.base_walk((0,))
    assert closed.vertices[0] == closed.vertices[-1]


def test_petal_decomposition(enc_b2):
    # the petal of an atom splits into its two constituent base walks
    pet = enc_b2.petal(1)
    w1 = enc_b2.base_walk((0, 1))
    w2 = enc_b2.base_walk((ZP, 1))
    assert pet.vertices == w1.concat(w2).vertices
    assert pet.vertices[0] == pet.vertices[-1]
    with pytest.raises(BadChain):
        enc_b2.walk_of_chain(())


def test_per_color_degree_bound(enc_b2, m3_lattice, n5_lattice):
    for lat in (algebra.chain_lattice(1), algebra.chain_lattice(2),
                algebra.chain_lattice(3), enc_b2.lattice, m3_lattice, n5_lattice):
        d = encoding.build_encoding(lat)
        assert degree_stats(d).max_per_color <= 2


def test_r_loop_absence(enc_b2):
    d = enc_b2.digraph
    for x in (1, 2, 3):
        ci = list(d.clabels).index(f"r:{x}")
        looped = {u for (u, v) in d.arcs[ci] if u == v}
        for y in range(enc_b2.n):
            for q in ((0, x), (ZP, x)):
                key = (enc_b2.bracket(q, y), y)
                if key[0] == q and key in enc_b2.vindex:
                    assert enc_b2.vindex[key] not in looped


def test_phi_family(enc_b2):
    n = enc_b2.n
    top = enc_b2.top
    assert enc_b2.phi(top) == tuple(range(enc_b2.digraph.n))
    # the map of an atom collapses the other atom's chain
    v = enc_b2.vindex[((0, 2), 2)]
    target = enc_b2.vindex[((0,), 2)]
    assert enc_b2.phi(1)[v] == target
    # composition is meet
    lat = enc_b2.lattice
    for x in range(n):
        fx = np.array(enc_b2.phi(x))
        for y in range(n):
            fy = np.array(enc_b2.phi(y))
            assert np.array_equal(fx[fy], np.array(enc_b2.phi(int(lat.meet[x, y]))))
    # injectivity
    assert len({enc_b2.phi(x) for x in range(n)}) == n


def test_phi_maps_are_endomorphisms(enc_b2):
    d = enc_b2.digraph
    for w in range(enc_b2.n):
        phi = enc_b2.phi(w)
        for c in range(d.num_colors):
            for (u, v) in d.arcs[c]:
                assert d.has_arc(c, phi[u], phi[v])


def test_end_is_exactly_the_phi_family(enc_b2):
    tm = endo.enumerate_endomorphisms(enc_b2.digraph)
    assert tm.size == enc_b2.n
    assert sorted(tm.map_tuple(i) for i in range(tm.size)) == sorted(
        enc_b2.phi(w) for w in range(enc_b2.n)
    )
    mono = endo.endo_monoid_table(tm)
    assert algebra.monoid_isomorphic(mono, enc_b2.lattice.meet_monoid()) is not None


def test_fixed_petal_ideal(enc_b2):
    assert enc_b2.fixed_petal_ideal(enc_b2.phi(enc_b2.top)) == enc_b2.top
    assert enc_b2.fixed_petal_ideal(enc_b2.phi(enc_b2.bottom)) == enc_b2.bottom
    assert enc_b2.fixed_petal_ideal(enc_b2.phi(1)) == 1
    # the bottom map fixes only the base cycle
    phi0 = enc_b2.phi(enc_b2.bottom)
    pet = enc_b2.petal(1)
    image = map_walk(enc_b2.digraph, pet, list(phi0))
    assert image.vertices != pet.vertices


def test_build_encoding_attaches_metadata(enc_b2):
    d = encoding.build_encoding(enc_b2.lattice)
    assert isinstance(d.encoding, LatticeEncoding)
    assert d.encoding.digraph.n == d.n


def test_r_loop_chain_families(enc_b2):
    """The chains carrying loops of each r color, for the example lattice."""
    d = enc_b2.digraph

    def loop_chains(x):
        ci = list(d.clabels).index(f"r:{x}")
        return {enc_b2.vertices[u][0] for (u, v) in d.arcs[ci] if u == v}

    assert loop_chains(1) == {
        (0,), (0, 2), (ZP, 2), (0, 3), (ZP, 3), (0, 2, 3), (ZP, 2, 3)
    }
    assert loop_chains(3) == {
        (0,), (0, 1), (ZP, 1), (0, 2), (ZP, 2),
        (0, 1, 3), (ZP, 1, 3), (0, 2, 3), (ZP, 2, 3)
    }


def test_tilde_closure_more_lattices(m3_lattice, n5_lattice):
    for lat in (algebra.chain_lattice(3), m3_lattice, n5_lattice):
        enc = LatticeEncoding(lat)
        pool = set(enc.chains)
        covered_v = set()
        covered_a = set()
        for q in enc.chains:
            tq = enc.tilde(q)
            assert tq in pool
            assert enc.bracket(tq, enc.bottom) == tq
            w = enc.base_walk(q)
            covered_v.update(w.vertices)
            covered_a.update(w.steps)
        assert covered_v == set(range(enc.digraph.n))
        s_colors = set(enc.s_color.values())
        all_s = {(c, a) for c in s_colors for a in enc.digraph.arcs[c]}
        assert covered_a == all_s


def test_fixed_petal_ideal_rejects_non_endomorphism(enc_b2):
    from endoforge.errors import NotAWalk

    bogus = [0] * enc_b2.digraph.n
    with pytest.raises(NotAWalk):
        enc_b2.fixed_petal_ideal(bogus)


def test_color_labels(enc_b2):
    labels = enc_b2.digraph.clabels
    assert "s:0" in labels and "r:3" in labels
    assert "c:1,3" in labels and "c':1,3" in labels
    assert "h:1,3" in labels and "i:1,3" in labels
    assert "j:1,2" in labels
