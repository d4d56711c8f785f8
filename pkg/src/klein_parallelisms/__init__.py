"""Exact line geometry on the Klein quadric.

Regular spreads and pencilled regular parallelisms of PG(3,K), studied
through their images on the Klein quadric in PG(5,K), over exact fields:
the rationals, small prime fields, and F2(s,t).
"""

from .fields import (
    F2RationalFunctions,
    Field,
    FieldMismatch,
    DivisionByZero,
    PrimeField,
    Rationals,
    arith,
    field_from_flag,
    field_from_json,
    field_to_json,
)
from .projspace import (
    LineParam,
    ProjSubspace,
    enumerate_subspaces,
    gaussian_binomial,
    incident,
    meet,
    point_at,
    span,
)
from .quadforms import (
    IsotropyVerdict,
    QuadraticForm,
    binary_anisotropic,
    hilbert_symbol,
    restrict_form,
    ternary_isotropic,
)
from .klein import (
    AnisotropyCertificate,
    classify_line,
    is_external_plane,
    is_nucleus_line,
    klein_form,
    line_from_plucker,
    plane_polar_type,
    plucker_embed,
    plucker_point,
    polar,
    polar_value,
    quadric_value,
    second_external_plane,
    tangent_hyperplane_containing,
    tangent_through_point_avoiding,
)

__version__ = "0.1.0"
