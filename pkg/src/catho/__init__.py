"""Finite categories, Grothendieck and zigzag constructions, and homotopy pullbacks."""
from .category import (
    CatFunctor,
    CategoryError,
    FiniteCategory,
    FunctorError,
    Morphism,
    NatTransformation,
    SearchBoundExceeded,
    ValidationReport,
    build_standard,
    check_naturality,
    find_nat_trans,
    opposite,
    validate_category,
    validate_functor,
)
from .grothendieck import CatDiagram, GrothResult, fibre, grothendieck, validate_diagram
from .homotopy import Answer, Config, HomologyProfile, Verdict, contractible, homology, nerve, verify_verdict, weak_equivalence
from .zigzag import (
    CommaResult,
    build_comma,
    build_two_sided,
    groth_identification,
    slice_at_source,
    slice_at_target,
    slice_two_sided,
    strict_pullback,
)
from .theorems import (
    Conclusion,
    Outcome,
    PropertyReport,
    PullbackReport,
    check_property_Bn,
    check_property_Cn,
    check_property_Q,
    homotopy_fibre_model,
    homotopy_pullback,
)

__version__ = "0.1.0"
