"""Exact umbral calculus for time-space harmonic polynomials of Levy processes."""

from .exceptions import (
    DomainError,
    IdentityError,
    OrderExceededError,
    SingularInverseError,
    SpecParseError,
    UmbralError,
)
from .poly import ONE, ZERO, MPoly, Rational, S, T, X, Y
from .umbra import (
    DEFAULT_ORDER,
    CumulantSequence,
    Umbra,
    builtin,
    compose,
    compositional_inverse,
    conditional_moment,
    cumulants,
    derivative_umbra,
    disjoint_difference,
    disjoint_sum,
    dot_scalar,
    dot_umbra,
    factorial_moments,
    from_cumulants,
    umbra_add,
)
from .tsh import TSHFamily, TSHPoly, tsh_family, tsh_polynomial

__version__ = "0.1.0"
