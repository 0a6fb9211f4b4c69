"""Sinkhorn scaling: exact and high-precision matrix balancing.

Matrices travel as lists of rows of rational strings ("p/q" or "p");
high-precision approximations come back as decimal strings.
"""

from ._core import (
    DegenerateQuarticError,
    ExpressionTooLargeError,
    InvalidRowError,
    InvalidTError,
    NotSymmetricError,
    NoValidRootError,
    ParseError,
    col_normalize,
    detect_finite_termination,
    exact3,
    exact3_kl,
    exact3_klm,
    family_ar,
    family_ar_symbolic,
    generate_finite_termination,
    is_doubly_stochastic,
    isolate_positive_roots,
    row_normalize,
    scale,
    symmetric_balance,
)

__all__ = [
    "DegenerateQuarticError",
    "ExpressionTooLargeError",
    "InvalidRowError",
    "InvalidTError",
    "NotSymmetricError",
    "NoValidRootError",
    "ParseError",
    "col_normalize",
    "detect_finite_termination",
    "exact3",
    "exact3_kl",
    "exact3_klm",
    "family_ar",
    "family_ar_symbolic",
    "generate_finite_termination",
    "is_doubly_stochastic",
    "isolate_positive_roots",
    "row_normalize",
    "scale",
    "symmetric_balance",
]

__version__ = "0.1.0"
