"""Moment models and row-space symmetry groups of two-level orthogonal arrays.

The package builds the integer model whose nonnegative solutions are the
strength-t designs, realizes the model's permutation symmetries (signed
factor relabelings, and their rho extension for strength 2), computes the
exact symmetry group from the Gram matrix, classifies half-coefficient basis
images, and enumerates designs with isomorph rejection.
"""

from .enumeration import EnumerationResult, enumerate_oa, verify_group_action
from .errors import BudgetExceededError
from .factorial import (
    Design,
    FrequencyVector,
    design_from_freq,
    design_from_text,
    design_to_text,
    freq_from_design,
    freq_from_full_j,
    full_factorial,
    interaction_column,
    j_characteristic,
    j_vector_full,
    strength,
)
from .generators import (
    GeneratorSet,
    factor_swap_perm,
    rho_perm,
    sign_flip_perm,
    strength2_generators,
    wreath_generators,
)
from .glp import (
    AutSearchResult,
    BasisImageReport,
    HalfComboReport,
    brute_force_glp,
    classify_half_combinations,
    half_family_sign_rule,
    is_half_family,
    is_pair_cycle,
    refine_automorphisms,
    verify_form_lemmas,
)
from .model import (
    ModelMatrix,
    RhsVector,
    build_j,
    build_m,
    gram_projection,
    is_feasible,
    labels_up_to,
    perm_preserves_rowspace,
    rowspace_member,
)
from .perms import (
    PermGroup,
    VectorOrbit,
    compose,
    group_order,
    identity,
    inverse,
    orbit_of_vector,
    perm_from_json,
    perm_to_json,
    permute_vector,
)

__version__ = "0.1.0"

__all__ = [
    "AutSearchResult",
    "BasisImageReport",
    "BudgetExceededError",
    "Design",
    "EnumerationResult",
    "FrequencyVector",
    "GeneratorSet",
    "HalfComboReport",
    "ModelMatrix",
    "PermGroup",
    "RhsVector",
    "VectorOrbit",
    "brute_force_glp",
    "build_j",
    "build_m",
    "classify_half_combinations",
    "compose",
    "design_from_freq",
    "design_from_text",
    "design_to_text",
    "enumerate_oa",
    "factor_swap_perm",
    "freq_from_design",
    "freq_from_full_j",
    "full_factorial",
    "gram_projection",
    "group_order",
    "half_family_sign_rule",
    "identity",
    "interaction_column",
    "inverse",
    "is_feasible",
    "is_half_family",
    "is_pair_cycle",
    "j_characteristic",
    "j_vector_full",
    "labels_up_to",
    "orbit_of_vector",
    "perm_from_json",
    "perm_preserves_rowspace",
    "perm_to_json",
    "permute_vector",
    "refine_automorphisms",
    "rho_perm",
    "rowspace_member",
    "sign_flip_perm",
    "strength",
    "strength2_generators",
    "verify_form_lemmas",
    "verify_group_action",
    "wreath_generators",
]
