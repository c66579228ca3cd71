"""Exact computations with Clifford-type algebras and the Hopf algebras E(n)."""

from .clifford import (
    CliffordAlgebra,
    CliffordElement,
    LinearOperator,
    algebra_new,
    center,
    en_algebra,
    even_odd_split,
    grade_involution,
    mul,
    pseudoscalar,
    regular_trace,
    try_invert,
)
from .scalars import QQ, FieldElement, invert, is_square, parse_field, prime_field, quadratic_field

__all__ = [
    "CliffordAlgebra",
    "CliffordElement",
    "LinearOperator",
    "algebra_new",
    "center",
    "en_algebra",
    "even_odd_split",
    "grade_involution",
    "mul",
    "pseudoscalar",
    "regular_trace",
    "try_invert",
    "QQ",
    "FieldElement",
    "invert",
    "is_square",
    "parse_field",
    "prime_field",
    "quadratic_field",
]
