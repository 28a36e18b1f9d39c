"""Local reduction data of elliptic curves over Q and imaginary quadratic fields,
CM reduction-type tables, genus-2 type constraints and local torsion bounds."""

from .cmclass import CMSpec, ConformanceReport, JClass, allowed_types_cm, allowed_types_potential_cm, check_curve, mu_of_imaginary_quadratic
from .errors import CMReductionError
from .genus2 import (
    Genus2Context,
    NUTypeInstance,
    QuarticCMSpec,
    allowed_not_potentially_good,
    allowed_potentially_good,
    allowed_potentially_good_restricted,
    degree_of_singularity,
    excluded_cm_types,
    j2_parity_constraint,
    semistability_degree_check,
)
from .localfield import QQ, FieldElement, LocalPlace, QuadraticField, ResidueField, factor_prime, get_place, reduce, residue_solve, valuation
from .tate import AbelianGroupDescriptor, KodairaType, LocalData, geometric_component_group, minimal_model, tate_algorithm
from .torsion import TorsionInput, bad_reduction_bound, gamma_p, hasse_floor, torsion_bound
from .weierstrass import Transform, WeierstrassModel, apply_transform, derived, integralize, quadratic_twist

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupDescriptor",
    "CMReductionError",
    "CMSpec",
    "ConformanceReport",
    "FieldElement",
    "Genus2Context",
    "JClass",
    "KodairaType",
    "LocalData",
    "LocalPlace",
    "NUTypeInstance",
    "QQ",
    "QuadraticField",
    "QuarticCMSpec",
    "ResidueField",
    "TorsionInput",
    "Transform",
    "WeierstrassModel",
    "allowed_not_potentially_good",
    "allowed_potentially_good",
    "allowed_potentially_good_restricted",
    "allowed_types_cm",
    "allowed_types_potential_cm",
    "apply_transform",
    "bad_reduction_bound",
    "check_curve",
    "degree_of_singularity",
    "derived",
    "excluded_cm_types",
    "factor_prime",
    "gamma_p",
    "geometric_component_group",
    "get_place",
    "hasse_floor",
    "integralize",
    "j2_parity_constraint",
    "minimal_model",
    "mu_of_imaginary_quadratic",
    "quadratic_twist",
    "reduce",
    "residue_solve",
    "semistability_degree_check",
    "tate_algorithm",
    "torsion_bound",
    "valuation",
]
