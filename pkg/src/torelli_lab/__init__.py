"""Exact verification of tangent-space ranks for hyperelliptic curves.

Constructs hyperelliptic curves over Q and finite fields, materializes
their differential bases and the multiplication / mu0 / mu1 maps as exact
matrices, and checks the rank and cokernel dimensions in both
characteristics, together with the Hirzebruch-surface dimension counts.
"""

from .curves import (
    ASModel,
    OddModel,
    RamificationData,
    RawASCurve,
    TransformLog,
    TransformStep,
    curve_genus,
    encode_raw,
    mobius_shift,
    normal_form_string,
    parse_curve_spec,
    random_curve,
    reduce_to_normal_form,
    replay_check,
    scramble_raw,
    serialize_curve,
    validate_as_model,
    validate_odd_model,
)
from .fields import (
    GF,
    QQ,
    FieldElem,
    make_ext_field,
    parse_element,
    parse_field_spec,
    field_spec_string,
    sqrt_char2,
)
from .hirzebruch import (
    DivisorClass,
    adjunction_genus,
    aut_dimension,
    canonical_class,
    hg_dimension,
    hyperelliptic_class,
    intersect,
    linear_system_dim,
)
from .linalg import Matrix
from .poly import (
    PartialFraction,
    Poly,
    RatFunc,
    formal_derivative,
    parse_poly,
    partial_fractions,
    poly_gcd,
    poly_string,
)
from .tangent import (
    FFElem,
    LinMap,
    RankReport,
    Section,
    SpaceBasis,
    TangentAnalysis,
    analyze,
    basis_H0_L_and_omega_Ldual,
    basis_H0_omega,
    coordinatize_omega2,
    expected_dims,
    ff_differential,
    ff_mul,
    mu0_map,
    mu1_image,
    mult_map,
    rank_report,
)

__version__ = "0.1.0"
