"""Graphs with prescribed endomorphism monoids, verified by exact enumeration."""

from .algebra import (
    Lattice,
    LinearExtension,
    Monoid,
    Poset,
    babai_pultr_monoid,
    boolean_lattice_poset,
    ideal_lattice,
    invertible_elements,
    is_k_cancellative,
    is_thick,
    join_irreducibles,
    lattice_from_meet_monoid,
    linear_extension,
    minimal_generating_set,
    monoid_isomorphic,
    monoid_predicates,
    validate_monoid,
)
from .blowup import blow_up, lift_endomorphism
from .cayley import augment_cayley, cayley_colored
from .encoding import LatticeEncoding, build_encoding
from .endo import (
    TransformationMonoid,
    automorphisms,
    endo_monoid_table,
    enumerate_endomorphisms,
    naive_endomorphisms,
    retractions,
)
from .graphs import (
    ArcColoredDigraph,
    SimpleGraph,
    Walk,
    degree_stats,
    girth,
    map_walk,
    underlying_simple_graph,
    weak_components,
)
from .retracts import (
    MinorModel,
    cover_graph,
    minor_witness,
    private_part,
    retract_lattice,
    verify_minor_model,
)
from .sip import choose_k, hp_graph, sip_product

__version__ = "0.1.0"
