"""Drinfeld orbifold / PBW deformations of skew group algebras in any characteristic.

The algebra H_{lambda,kappa} is generated by V and a finite group G subject to
``v w - w v = kappa(v, w)`` and ``g v - ^g v g = lambda(g, v)``.  This package
decides when it has the PBW property (condition checks, a rewriting oracle and
a Hochschild cohomology test), converts parameters in nonmodular
characteristic and searches for filtered isomorphisms in small cases.
"""
from .errors import (CharacteristicError, ClosureError, FieldMismatchError, GroupMismatchError,
                     NotAGroupError, NotAReflectionError, NotConfluentError, ParseError, PBWError,
                     PreconditionError, SliceError, WellDefinednessError)
from .field import GF, Q, Field, FieldScalar, scalar_arith
from .matrix import EchelonBasis, Matrix, nullspace, rank_of, rref
from .groups import (FiniteGroup, GroupAlgebraElem, Representation, classify_element,
                     close_generators, fixed_space, ga_multiply, image_of_difference)
from .skew import SkewElem, act_on_monomial, skew_multiply
from .params import (GeneralKappa, KappaParam, LambdaParam, build_lambda_coxeter, diagonal_lambda,
                     extend_lambda_by_recursion, random_kappa, random_lambda, validate_structural)
from .conditions import (CONDITIONS, ConditionReport, InstanceSpace, check_pbw,
                         enumerate_instances, evaluate_condition, free_family)
from .rewriting import (FreeElem, ReductionSystem, extract_mu, filtered_dimension,
                        graded_dimension, iso_search, kappa_from_mu, lambda_from_mu, pbw_count,
                        reduce_literal, reduction_bound, resolve_ambiguities, search_kappa_family,
                        verify_homomorphism)
from .conversion import build_conversion_iso, gamma, kappa_from_gamma
from .hochschild import (BarChain, Cochain, XChain, bar_differential, check_homological,
                         check_infrastructure, coboundary, differential, extend_cochain,
                         gerstenhaber_bracket, lift_to_deformation, middle_basis, phi, psi2,
                         verify_mu_extraction)
from .maps import verify_map
from .textio import Instance, parse_instance, parse_params, render_instance, render_params
from .corpus import corpus_get, corpus_names

__version__ = "0.1.0"

__all__ = [
    "CharacteristicError", "ClosureError", "FieldMismatchError", "GroupMismatchError",
    "NotAGroupError", "NotAReflectionError", "NotConfluentError", "ParseError", "PBWError",
    "PreconditionError", "SliceError", "WellDefinednessError", "GF", "Q", "Field",
    "FieldScalar", "scalar_arith", "EchelonBasis", "Matrix", "nullspace", "rank_of", "rref",
    "FiniteGroup", "GroupAlgebraElem", "Representation", "classify_element", "close_generators",
    "fixed_space", "ga_multiply", "image_of_difference", "SkewElem", "act_on_monomial",
    "skew_multiply", "GeneralKappa", "KappaParam", "LambdaParam", "build_lambda_coxeter",
    "diagonal_lambda", "extend_lambda_by_recursion", "random_kappa", "random_lambda",
    "validate_structural", "CONDITIONS", "ConditionReport", "InstanceSpace", "check_pbw",
    "enumerate_instances", "evaluate_condition", "free_family", "FreeElem", "ReductionSystem",
    "extract_mu", "filtered_dimension", "graded_dimension", "iso_search", "kappa_from_mu",
    "lambda_from_mu", "pbw_count", "reduce_literal", "reduction_bound", "resolve_ambiguities",
    "search_kappa_family", "verify_homomorphism", "build_conversion_iso", "gamma",
    "kappa_from_gamma", "BarChain", "Cochain", "XChain", "bar_differential",
    "check_homological", "check_infrastructure", "coboundary", "differential", "extend_cochain",
    "gerstenhaber_bracket", "lift_to_deformation", "middle_basis", "phi", "psi2",
    "verify_mu_extraction", "verify_map", "Instance", "parse_instance", "parse_params",
    "render_instance", "render_params", "corpus_get", "corpus_names",
]
