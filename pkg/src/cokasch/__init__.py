"""Co-Kasch and Kasch modules over finite rings, with brute-force oracles."""

from .errors import AlgebraError, CapExceeded, InvariantBreach, ModuleAxiomError, RingAxiomError
from .fixtures import fixture_rings, random_ring, random_rings
from .kasch import (
    CartanMatrix,
    PropertyReport,
    cartan_matrix,
    check_projective_cokasch,
    construct_extension,
    ext1,
    is_co_kasch,
    is_h_ring,
    is_kasch,
)
from .kernel import Subgroup, lattice_hnf, smith_decompose, solve_congruence_system
from .module import (
    FiniteModule,
    ModuleMap,
    Submodule,
    composition_profile,
    direct_sum,
    hom_space,
    is_isomorphic,
    principal_module,
    quotient_module,
    radical,
    regular_module,
    simple_catalog,
    socle,
    submodule_generated,
    validate_module,
)
from .oracle import Budget, HarnessResult, brute_co_kasch, brute_kasch, enumerate_submodules, run_harness
from .ring import FiniteRing, jacobson_radical, primitive_decomposition, validate_ring
from .zmod import ZModuleExpr, is_co_kasch_z, parse_zmodule

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CapExceeded",
    "InvariantBreach",
    "ModuleAxiomError",
    "RingAxiomError",
    "fixture_rings",
    "random_ring",
    "random_rings",
    "CartanMatrix",
    "PropertyReport",
    "cartan_matrix",
    "check_projective_cokasch",
    "construct_extension",
    "ext1",
    "is_co_kasch",
    "is_h_ring",
    "is_kasch",
    "Subgroup",
    "lattice_hnf",
    "smith_decompose",
    "solve_congruence_system",
    "FiniteModule",
    "ModuleMap",
    "Submodule",
    "composition_profile",
    "direct_sum",
    "hom_space",
    "is_isomorphic",
    "principal_module",
    "quotient_module",
    "radical",
    "regular_module",
    "simple_catalog",
    "socle",
    "submodule_generated",
    "validate_module",
    "Budget",
    "HarnessResult",
    "brute_co_kasch",
    "brute_kasch",
    "enumerate_submodules",
    "run_harness",
    "FiniteRing",
    "jacobson_radical",
    "primitive_decomposition",
    "validate_ring",
    "ZModuleExpr",
    "is_co_kasch_z",
    "parse_zmodule",
]
