"""Regular/biregular maximum-excess Hadamard matrices from quadratic residues.

Exact finite-field tables drive every construction and verification; complex
character sums are used only as cross-checks and to resolve sign ambiguities,
so floating point never touches a constructed set or matrix.
"""

from .association_schemes import SchemePartition, SchemeReport, example_partition, verify_scheme
from .finite_field import ZERO, FieldContext, FieldSpec, build_field, field_for, quadratic_tower
from .hadamard import (
    ExcessReport,
    SignMatrix,
    construct_q1,
    construct_q3,
    excess_and_bound,
    is_hadamard,
    transform_biregular_q1,
    transform_biregular_q3,
    transform_regular,
)
from .intersection_sets import BlockDesign, IntersectionSet, ParamChoice, build_dlh, find_params

__version__ = "0.1.0"

__all__ = [
    "ZERO",
    "BlockDesign",
    "ExcessReport",
    "FieldContext",
    "FieldSpec",
    "IntersectionSet",
    "ParamChoice",
    "SchemePartition",
    "SchemeReport",
    "SignMatrix",
    "build_dlh",
    "build_field",
    "construct_q1",
    "construct_q3",
    "example_partition",
    "excess_and_bound",
    "field_for",
    "find_params",
    "is_hadamard",
    "quadratic_tower",
    "transform_biregular_q1",
    "transform_biregular_q3",
    "transform_regular",
    "verify_scheme",
    "__version__",
]
