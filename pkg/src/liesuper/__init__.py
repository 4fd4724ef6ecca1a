"""Exact Lie-algebra verification and nonlinear superposition for a family of
second-order ODEs with cubic nonlinearity, including time-dependent
second-order Riccati equations.

The package has two halves that meet in the acceptance suite:

* an exact symbolic half (``exactpoly``, ``algebra``) that machine-verifies
  the underlying sl(3,R) vector-field algebra, its matrix realisation, the
  quasi-Lie scheme conditions, and the first integrals Lambda1/Lambda2 as
  zero-tolerance polynomial identities;
* a numerical half (``coeffexpr``, ``odeint``, ``superpose``, ``riccati``)
  that integrates family members adaptively and rebuilds their general
  solution from four particular solutions and two constants.
"""

from .exactpoly import (
    CoordinateMismatch,
    Polynomial,
    RationalFunction,
    VectorField,
    derive_along,
    in_span,
    lie_bracket,
    prolong,
    rank_at,
)
from .algebra import (
    Matrix3,
    NotClosed,
    Report,
    builtin_fields,
    matrix_bracket,
    sl3_matrices,
    structure_constants,
    verify_isomorphism,
    verify_paper_table,
    verify_scheme,
)
from .coeffexpr import CoeffExpr, DomainError, ParseError, parse_expr
from .odeint import (
    BlowUp,
    ConstraintViolation,
    FirstOrderSystem,
    GridTooCoarse,
    NonFinite,
    Trajectory,
    integrate,
    lift_sode,
    residual,
)
from .superpose import (
    Degenerate,
    SuperposeProblem,
    ReconstructionResult,
    f_abc,
    fit_constants,
    g_abcd,
    genericity_product,
    lambda_integrals,
    lambda_rational_functions,
    reconstruct,
    recover_v0,
    superpose_value,
    verify_lambda_annihilation,
)
from .riccati import (
    RiccatiCoeffs,
    build_riccati,
    superpose_riccati,
    transform_state,
    transformed_rhs_check,
)

__version__ = "0.1.0"
