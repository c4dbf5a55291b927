"""palinfrac: palindromic structure of periodic continued fractions, exactly.

The package models functions whose continued-fraction coefficient pairs
(a_n, b_n) are eventually periodic, decides by exact rational polynomial
arithmetic whether the period is doubly palindromic at a given first length
(equivalently, whether the function and the second root of its quadratic
relation satisfy the corresponding Moebius identity), and provides a numeric
layer for evaluating these functions and recovering coefficients from
expansions at infinity.
"""

from .errors import (
    BranchAmbiguity,
    DegenerateRelation,
    DivisionByZero,
    IndexOutOfRange,
    InsufficientCoefficients,
    InsufficientOrder,
    NotAnMFunction,
    NotNormalized,
    NumericInstability,
    PalinfracError,
    ParseError,
)
from .exactalg import (
    Mat2,
    Poly,
    Rational,
    as_rational,
    mat2_det,
    mat2_mul,
    mobius_apply,
    poly_eval,
    poly_gcd,
    poly_is_square,
)
from .jacobi import (
    JacobiPair,
    JacobiSequence,
    PalindromeSplit,
    double_period,
    dump_sequence,
    find_palindrome_splits,
    load_sequence,
    normalize_kp,
    pair,
    reversed_periodic,
    sequence,
    strip,
)
from .mfun import (
    LaurentSeries,
    RecoveredPair,
    eval_m,
    eval_periodic_m,
    eval_truncated,
    laurent_of_quadratic,
    recover_coefficients,
    strip_identity_check,
)
from .orthopoly import (
    build_T1,
    build_T2,
    build_T3,
    conj_transfer,
    first_kind_polys,
    second_kind_polys,
)
from .quadratic import (
    QuadraticRelation,
    ReverseObstructionReport,
    VerificationReport,
    discriminant_is_square,
    periodic_quadratic,
    pullback_quadratic,
    reverse_asymptotics,
    second_solution_value,
    verify_main_identity,
    verify_reverse_obstruction,
    verify_splits,
)

__version__ = "0.1.0"

__all__ = [
    "BranchAmbiguity",
    "DegenerateRelation",
    "DivisionByZero",
    "IndexOutOfRange",
    "InsufficientCoefficients",
    "InsufficientOrder",
    "JacobiPair",
    "JacobiSequence",
    "LaurentSeries",
    "Mat2",
    "NotAnMFunction",
    "NotNormalized",
    "NumericInstability",
    "PalinfracError",
    "PalindromeSplit",
    "ParseError",
    "Poly",
    "QuadraticRelation",
    "Rational",
    "RecoveredPair",
    "ReverseObstructionReport",
    "VerificationReport",
    "as_rational",
    "build_T1",
    "build_T2",
    "build_T3",
    "conj_transfer",
    "discriminant_is_square",
    "double_period",
    "dump_sequence",
    "eval_m",
    "eval_periodic_m",
    "eval_truncated",
    "find_palindrome_splits",
    "first_kind_polys",
    "laurent_of_quadratic",
    "load_sequence",
    "mat2_det",
    "mat2_mul",
    "mobius_apply",
    "normalize_kp",
    "pair",
    "periodic_quadratic",
    "poly_eval",
    "poly_gcd",
    "poly_is_square",
    "pullback_quadratic",
    "recover_coefficients",
    "reverse_asymptotics",
    "reversed_periodic",
    "second_kind_polys",
    "second_solution_value",
    "sequence",
    "strip",
    "strip_identity_check",
    "verify_main_identity",
    "verify_reverse_obstruction",
    "verify_splits",
]
