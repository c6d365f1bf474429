"""Exact computations with abelian group gradings on finite-dimensional algebras."""

from .algebra import Algebra, LinearMap, Subspace, eigensplit, is_automorphism, multiply, subspace_from_spanning
from .catalog import CATALOG_NAMES, CatalogEntry, all_catalog_gradings, catalog_load, m2_inner
from .comodule import (
    Character,
    ComoduleMap,
    GroupAlgebra,
    comodule_from_grading,
    grading_from_comodule,
    pushforward,
    specialize_character,
    verify_generic_automorphism,
)
from .errors import *  # noqa: F401,F403
from .extension import (
    ExtensionContext,
    ExtensionReport,
    check_extension_invariants,
    extend_algebra,
    extend_comodule,
    extend_grading,
    extend_map,
    try_descend,
)
from .grading import (
    EquivalenceFingerprint,
    EquivalenceResult,
    Grading,
    Refinement,
    Verdict,
    check_equivalence_witness,
    check_isomorphism_witness,
    common_refinement,
    conjugate_grading,
    decide_equivalence,
    equivalence_invariants,
    grading_from_degrees,
    induce,
    normalize_to_support_subgroup,
    refine_by_automorphism,
    refinement_relation,
    support,
    trivial_grading,
    universal_group,
    universal_property_factor,
    universal_realization,
    verify_grading,
)
from .groups import (
    FPAbelianGroup,
    GroupElement,
    GroupHom,
    abelian_group,
    compose,
    cyclic,
    direct_product,
    group_from_presentation,
    hom_make,
    identity_hom,
    inverse,
    multiplicative_degree_group,
    multiplicative_subgroup_of_finite_field,
    multiplicative_subgroup_of_rationals,
    parse_group,
    parse_hom,
    smith_normal_form,
    subgroup_generated,
    zero_hom,
)
from .scalars import QQ, Field, PrimeField, Rationals, Scalar, SimpleExtension, embed, parse_field_spec
from .serialize import (
    parse_algebra,
    parse_document,
    parse_grading,
    serialize_algebra,
    serialize_document,
    serialize_grading,
)

__version__ = "0.1.0"
