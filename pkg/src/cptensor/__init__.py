"""Completely positive symmetric tensors.

Strongly symmetric storage, structural dominance checks, hierarchical
elimination into binary rank-one terms (and CP factors when all coefficients
are nonnegative), H-/Z-eigenpair power iterations, and sampled
copositivity / CP-cone pairing checks.
"""
from .core import (
    EPS,
    MultiIndex,
    Shape,
    SubsetTensor,
    SymTensor,
    binary_power,
    canonicalize,
    contract_full,
    contract_once,
    rank_one,
    to_dense,
    to_subset,
)
from .checks import (
    CheckReport,
    SDuplicate,
    check_diagonal_mean_dominance,
    check_hierarchical_dominance,
    check_propagated_dominance,
    check_s_duplicate,
    check_zero_pattern_dominance,
    is_nonnegative,
    is_strongly_symmetric,
)
from .elimination import (
    CpFactorization,
    Decomposition,
    DecompositionTerm,
    cp_rank_bound,
    eliminate,
    reconstruct,
    to_cp_factors,
)
from .spectral import (
    IterationConfig,
    check_cp_spectral_properties,
    h_eigenpair_power,
    verify_h_eigenpair,
    verify_z_eigenpair,
    z_eigenpair_power,
)
from .cone import (
    SimplexGrid,
    copositivity_grid_check,
    duality_pairing_check,
    inner_product,
)
from .fileformat import parse_tensor, read_tensor, render_decomposition, render_tensor

__version__ = "0.1.0"
