"""Cluster algebras of finite type: exchange graphs, root systems and automorphism groups."""

from .automorphism import (
    AutGroup,
    ClusterAutomorphism,
    aut_group,
    exceptional_automorphism,
    extend_seed_map,
    f0_automorphism,
    identify_structure,
    tau_automorphisms,
)
from .dynkin import DynkinLabel, catalan_number, parse_label, standard_cartan
from .folding import fold_matrix, invariant_seeds, quiver_aut_group, quotient_aut_check
from .laurent import LaurentPoly, denominator_vector, lp_exchange
from .matrix import (
    ExchangeMatrix,
    SignFunction,
    bipartite_sign,
    cartan_counterpart,
    find_symmetrizer,
    is_gluing_free,
    matrix_isomorphisms,
    mutate_matrix,
)
from .pattern import (
    CapExceeded,
    LabeledSeed,
    bipartite_belt,
    enumerate_bipartite_seeds,
    exchange_graph,
    initial_seed,
    is_finite_type,
    mutate_seed,
    root_variable_bijection,
)
from .roots import (
    RootSystem,
    build_root_system,
    d_vector_walk,
    longest_involution,
    sigma,
    simple_reflection,
    standard_exchange_matrix,
    tau,
    tau_group,
)
from .universal import aut_univ, frozen_tau_symmetry, specialize, universal_matrix

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
