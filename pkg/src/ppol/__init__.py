"""Exact symbolic computation with p-polynomials and p-torsion unipotent
group presentations over rational function fields GF(p)(t1,...,tr)."""

__version__ = "0.1.0"

from .errors import (
    DivisionByZero,
    NotInvertible,
    ParseError,
    PpolError,
    ShapeError,
    TruncationOverflow,
)
from .fields import (
    FieldCtx,
    FrobDecomp,
    MonomialBasis,
    MPoly,
    RatFunc,
    arith,
    expand_in_basis,
    frobenius_decompose,
    kp_module_membership,
    p_independent,
    p_root,
    total_degree_basis,
)
from .linalg import AffineSolutionSpace, solve_fp_linear
