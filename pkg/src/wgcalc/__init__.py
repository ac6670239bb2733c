"""Exact Weingarten calculus for unitary and orthogonal matrix integrals.

The package computes unitary and orthogonal Weingarten functions (one and
two dimension parameters) in exact rational arithmetic, turns them into
moment formulas for Haar matrices and for conjugation- or left-right
invariant random matrices, evaluates inverse Wishart, pseudo-inverse
Ginibre, and compound-Wishart-inverse moments exactly, and ships a
reproducible Monte Carlo harness that checks every exact formula by
simulation.
"""

from .combinatorics import (
    PairPartition,
    Partition,
    Permutation,
    class_size,
    coset_type,
    cycle_type,
    delta_o,
    delta_u,
    enumerate_pairings,
    enumerate_sym,
    hyperoctahedral_contains,
    hyperoctahedral_elements,
    pairing_class_size,
    partitions,
    t_k,
    trace_monomial_o,
    trace_monomial_u,
    z_mu,
)
from .characters import (
    CharacterTable,
    ZonalTable,
    c_poly,
    c_prime_poly,
    character,
    character_table,
    dimension,
    zonal,
    zonal_table,
)
from .errors import CapacityError, ValidityError
from .moments import (
    MomentFormula,
    ScaleMatrix,
    ShapeMatrix,
    compound_wishart_inv_c,
    compound_wishart_inv_r,
    conj_invariant_moment_o,
    conj_invariant_moment_u,
    ginibre_pinv_moment_c,
    ginibre_pinv_moment_r,
    haar_orthogonal_moment,
    haar_unitary_moment,
    inv_wishart_trace_o,
    inv_wishart_trace_u,
    lr_invariant_moment_o,
    lr_invariant_moment_u,
)
from .montecarlo import (
    EstimatorResult,
    estimate_moment,
    hermitian_sqrt,
    make_generator,
    pseudo_inverse,
    sample_ginibre_c,
    sample_ginibre_r,
    sample_haar_orthogonal,
    sample_haar_unitary,
)
from .weingarten import (
    BiinvariantFunction,
    ClassFunction,
    convolve,
    convolve_sharp,
    delta_e,
    frac_str,
    one_hk,
    power_class,
    power_coset,
    verify_pseudo_inverse,
    wg_orthogonal,
    wg_orthogonal_double,
    wg_unitary,
    wg_unitary_double,
)

__version__ = "0.1.0"
