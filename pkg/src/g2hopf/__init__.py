"""Exact computations in the two-parameter quantum Borel algebra of type G2."""
from .coefficients import LaurentPoly, LocalizedPoly
from .free_algebra import FreeElement, confluence_check, default_system, irreducible_count, nf_reduce
from .pbw_algebra import (
    AlgebraElement,
    PBWMonomial,
    X,
    e1,
    e2,
    free_to_pbw,
    graded_dimension,
    k_elem,
    multiply,
    pbw_to_free,
    specialize,
)
from .hopf import antipode, check_hopf_axioms, coproduct, counit
from .automorphisms import (
    EndoParams,
    apply_endo,
    check_hopf_compat,
    check_relations,
    compose,
    derive_exponent_constraints,
    gl_nonneg_permutation,
    invert,
    solve_weight_equations,
    verify_commutation_lemmas,
)
from .parsing import ParseError, parse_element_text as parse_element

__version__ = "0.1.0"
