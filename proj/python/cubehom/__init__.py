"""Homomorphism counting, reflectivity certificates and rainbow-cycle bounds."""

from ._core import (
    CapabilityError,
    EdgeColouring,
    Graph,
    InputError,
    PreconditionError,
    automorphism_count,
    certify,
    certify_all_pairs,
    complete,
    complete_bipartite,
    cycle,
    direction_colouring,
    edge_density,
    find_rainbow_cycle,
    greedy_colouring,
    h2k_exact,
    h2k_pattern,
    h2k_spectral,
    hom_count,
    hypercube,
    injective_hom_count,
    involution_count,
    random_graph,
    set_graph,
    sidorenko_holds,
    turan_exponent,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
