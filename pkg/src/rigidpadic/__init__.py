"""Exact finite-precision models of rigid analytic function spaces on Z_p.

The library provides capped-precision arithmetic in Q_p, certified
truncated power series on closed balls, piecewise-analytic function
models with gluing tests, the Iwahori-level group actions, orbit
expansions with valuation certificates, a cokernel model with a
provably nonzero witness, and Galois-side parameter classification.
"""

from .actions import (
    I1,
    Factorization,
    InductionCharacter,
    IwahoriElement,
    WeylCellVector,
    act,
    act_cell,
    act_locally_algebraic,
    act_smooth,
    iwahori_factorize,
)
from .analytic import (
    BoundReport,
    CokernelElement,
    GAElement,
    OrbitExpansion,
    bound_report,
    cokernel_equal,
    expand_all,
    is_analytic_vector,
    orbit_dilation,
    orbit_inv_torus,
    orbit_membership,
    orbit_mobius,
    orbit_translation,
    verify_bounds,
    witness_nonzero,
)
from .errors import (
    BoundViolation,
    DivisionError,
    DomainError,
    FactorizationError,
    InvariantViolation,
    ParameterError,
    ParameterMismatch,
    PrecisionError,
    RigidPadicError,
)
from .functions import (
    CanMembership,
    Leaf,
    LocallyAlgebraicFunction,
    PiecewiseFunction,
    StepFunction,
    is_member_Can,
    is_member_C_m,
    is_member_pi_an,
    mahler_coefficients,
)
from .galois import (
    ContinuousCharacter,
    CrisResult,
    Ext1Result,
    FilteredPhiModule,
    StarResult,
    TriangulineParam,
    abs_x_character,
    ext1_dimension,
    in_S_cris,
    in_S_star,
    validate_crystalline,
    weight,
    x_character,
)
from .padic import INF, PadicContext, PadicNumber, binom, invert, padic_log, valp
from .series import TateSeries
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "INF",
    "I1",
    "BoundReport",
    "BoundViolation",
    "CanMembership",
    "CokernelElement",
    "ContinuousCharacter",
    "CrisResult",
    "DivisionError",
    "DomainError",
    "Ext1Result",
    "Factorization",
    "FactorizationError",
    "FilteredPhiModule",
    "GAElement",
    "InductionCharacter",
    "InvariantViolation",
    "IwahoriElement",
    "Leaf",
    "LocallyAlgebraicFunction",
    "OrbitExpansion",
    "PadicContext",
    "PadicNumber",
    "ParameterError",
    "ParameterMismatch",
    "PiecewiseFunction",
    "PrecisionError",
    "RigidPadicError",
    "StarResult",
    "StepFunction",
    "TateSeries",
    "TriangulineParam",
    "Verdict",
    "WeylCellVector",
    "abs_x_character",
    "act",
    "act_cell",
    "act_locally_algebraic",
    "act_smooth",
    "binom",
    "bound_report",
    "cokernel_equal",
    "expand_all",
    "ext1_dimension",
    "in_S_cris",
    "in_S_star",
    "invert",
    "is_analytic_vector",
    "is_member_Can",
    "is_member_C_m",
    "is_member_pi_an",
    "iwahori_factorize",
    "mahler_coefficients",
    "orbit_dilation",
    "orbit_inv_torus",
    "orbit_membership",
    "orbit_mobius",
    "orbit_translation",
    "padic_log",
    "valp",
    "verify_bounds",
    "weight",
    "witness_nonzero",
    "x_character",
]
