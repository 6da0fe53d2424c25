"""Classical polynomial families recovered from the ``Q_k`` construction.

Hermite polynomials are ``Q_k`` on the Brownian umbra, Poisson-Charlier
polynomials are Stirling combinations of ``Q_k`` on the compensated Poisson
umbra, and Levy-Sheffer systems are Bell-polynomial combinations of a plus-sign
family.  Boolean and free cumulants parametrize the moment sequence through
ordinary generating functions.

Each builder cross-checks its result against an independent series expansion
and raises :class:`~umbral_tsh.exceptions.IdentityError` on disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Tuple

from . import series
from .combinatorics import bell_partial, falling_factorial, stirling1
from .exceptions import DomainError, IdentityError
from .poly import ONE, ZERO, MPoly, T, X, poly_sum
from .tsh import TSHFamily, tsh_family, tsh_polynomial
from .umbra import (
    DEFAULT_ORDER,
    Umbra,
    builtin,
    compose,
    compositional_inverse,
    cumulant_umbra,
    derivative_umbra,
    disjoint_difference,
    dot_umbra,
    negate,
)


def brownian_umbra(order: int = DEFAULT_ORDER) -> Umbra:
    """``beta.delta`` with ``f(delta, z) = 1 + z^2/2``: standard Gaussian moments."""
    return dot_umbra(builtin("bell", order), builtin("gauss-delta", order)).relabel("brownian")


def compensated_poisson_umbra(order: int = DEFAULT_ORDER) -> Umbra:
    """``beta.(u -. chi)``: Poisson(1) shifted to mean zero."""
    gamma = disjoint_difference(builtin("unity", order), builtin("singleton", order))
    return dot_umbra(builtin("bell", order), gamma).relabel("compensated-poisson")


# -- Hermite ------------------------------------------------------------------


def hermite_series_polynomial(k: int, order: Optional[int] = None) -> MPoly:
    """``k!`` times the ``z^k`` coefficient of ``exp(x z - t z^2 / 2)``."""
    order = k if order is None else order
    coeffs = series.exp([ZERO, X, T.scale(Fraction(-1, 2))], order)
    return coeffs[k].scale(factorial(k))


def hermite_family(order: int = DEFAULT_ORDER) -> TSHFamily:
    family = tsh_family(brownian_umbra(order))
    for q in family:
        expected = hermite_series_polynomial(q.k, order)
        if q.poly != expected:
            raise IdentityError(f"Q_{q.k} on the Brownian umbra is not H_{q.k}", q.poly - expected)
    return family


# -- Poisson-Charlier ----------------------------------------------------------


def charlier_polynomial(k: int) -> MPoly:
    """``C~_k(x, t)`` from ``e^{-t z} (1 + z)^x``."""
    falling = [falling_factorial(X, n).scale(Fraction(1, factorial(n))) for n in range(k + 1)]
    decay = [(-T) ** n * Fraction(1, factorial(n)) for n in range(k + 1)]
    return series.mul(falling, decay, k)[k].scale(factorial(k))


def charlier_decomposition(k: int, order: Optional[int] = None) -> Tuple[int, ...]:
    """Coefficients ``c_j = s(k, j)``, ``j = 0..k``, with
    ``C~_k(x + t, t) = sum_j c_j Q_j(x, t)`` on the compensated Poisson umbra."""
    order = max(k, 1) if order is None else order
    alpha = compensated_poisson_umbra(order)
    coeffs = tuple(stirling1(k, j) for j in range(k + 1))
    lhs = charlier_polynomial(k).subs("x", X + T)
    rhs = poly_sum(tsh_polynomial(j, alpha).poly.scale(c) for j, c in enumerate(coeffs) if c)
    if lhs != rhs:
        raise IdentityError(f"Charlier decomposition fails at k={k}", lhs - rhs)
    return coeffs


# -- Levy-Sheffer --------------------------------------------------------------


@dataclass(frozen=True)
class LevySchefferSpec:
    """``alpha`` carries ``g(z) = f(alpha, z)`` and ``gamma`` carries
    ``1 + u(z) = f(gamma, z)``."""

    alpha: Umbra
    gamma: Umbra

    def __post_init__(self):
        if self.alpha.order != self.gamma.order:
            raise DomainError("alpha and gamma must share one truncation order")

    @property
    def order(self) -> int:
        return self.alpha.order


def levy_sheffer_base(spec: LevySchefferSpec) -> Umbra:
    """``beta.kappa`` with ``kappa`` the cumulant umbra of ``alpha.beta.gamma^{<-1>}``."""
    composed = compose(spec.alpha, compositional_inverse(spec.gamma))
    return dot_umbra(builtin("bell", spec.order), cumulant_umbra(composed))


def levy_sheffer_series_polynomial(k: int, spec: LevySchefferSpec) -> MPoly:
    """``k!`` times the ``z^k`` coefficient of ``g(z)^t exp(x u(z))``."""
    order = spec.order
    g = series.egf_to_ogf(spec.alpha.moments)
    u = series.egf_to_ogf(spec.gamma.moments)
    u[0] = ZERO
    exponent = [T * c + X * d for c, d in zip(series.log(g, order), u)]
    return series.exp(exponent, order)[k].scale(factorial(k))


def levy_sheffer(k: int, spec: LevySchefferSpec) -> MPoly:
    """``V_k(x, t) = sum_i E[(x + t.beta.kappa)^i] B_{k,i}(g_1, ...)``."""
    if k > spec.order:
        raise DomainError(f"k={k} exceeds the truncation order {spec.order}")
    base = levy_sheffer_base(spec)
    g = spec.gamma.moments[1:]
    value = poly_sum(tsh_polynomial(i, base, "plus").poly * bell_partial(k, i, g)
                     for i in range(k + 1))
    expected = levy_sheffer_series_polynomial(k, spec)
    if value != expected:
        raise IdentityError(f"Levy-Sheffer V_{k} disagrees with its generating function", value - expected)
    return value


# -- boolean and free cumulants ----------------------------------------------


@dataclass(frozen=True)
class OrdinarySeries:
    """Coefficients ``c_1..c_N`` of ``sum_n c_n z^n`` (constant term implicit)."""

    coefficients: Tuple[MPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(MPoly.coerce(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def to_bar_umbra(self) -> Umbra:
        """Umbra with moments ``n! c_n``."""
        return Umbra.from_values(c.scale(factorial(n)) for n, c in enumerate(self.coefficients, start=1))

    @classmethod
    def from_bar_umbra(cls, umbra: Umbra) -> "OrdinarySeries":
        return cls(tuple(m.scale(Fraction(1, factorial(n))) for n, m in enumerate(umbra.moments[1:], start=1)))


def _check_direction(direction: str):
    if direction not in ("to_moments", "from_moments"):
        raise DomainError(f"direction must be 'to_moments' or 'from_moments', got {direction!r}")


def boolean_transform(direction: str, seq: OrdinarySeries) -> OrdinarySeries:
    """``M(z) = 1 / (1 - B(z))`` and its inverse ``B = 1 - 1/M``."""
    _check_direction(direction)
    n = seq.order
    c = list(seq.coefficients)
    if direction == "to_moments":
        out = series.inverse([ONE] + [-v for v in c], n)
    else:
        out = [-v for v in series.inverse([ONE] + c, n)]
    return OrdinarySeries(tuple(out[1:]))


def free_transform(direction: str, seq: OrdinarySeries) -> OrdinarySeries:
    """Moments from free cumulants through ``M(z) = R(z M(z))`` and back.

    The ``z^n`` coefficient of ``R(z M)`` involves ``r_n`` only through the
    term ``r_n (z M)^n``, whose leading coefficient is 1, and ``m_1..m_{n-1}``
    otherwise; both directions solve this triangle one order at a time.
    """
    _check_direction(direction)
    n = seq.order
    given = list(seq.coefficients)
    moments = [ONE] + [ZERO] * n
    cumul = [ONE] + [ZERO] * n
    for i in range(1, n + 1):
        zm = series.scale_z(moments, i)
        if direction == "to_moments":
            cumul[i] = given[i - 1]
            moments[i] = series.compose(cumul[: i + 1], zm, i)[i]
        else:
            moments[i] = given[i - 1]
            cumul[i] = moments[i] - series.compose(cumul[:i], zm, i)[i]
    out = moments if direction == "to_moments" else cumul
    return OrdinarySeries(tuple(out[1:]))


def _as_series(seq) -> OrdinarySeries:
    return seq if isinstance(seq, OrdinarySeries) else OrdinarySeries(tuple(seq))


def boolean_bar_umbra(b) -> Umbra:
    """``alpha-bar`` (moments ``n! a_n``) from boolean cumulants ``b``."""
    return boolean_transform("to_moments", _as_series(b)).to_bar_umbra()


def free_bar_umbra(r) -> Umbra:
    """``alpha-bar`` (moments ``n! a_n``) from free cumulants ``r``."""
    return free_transform("to_moments", _as_series(r)).to_bar_umbra()


def boolean_umbral_identity(b) -> Umbra:
    """``u-bar.beta.eta-bar`` with ``eta-bar`` carrying moments ``n! b_n``."""
    b = _as_series(b)
    return compose(builtin("ubar", b.order), b.to_bar_umbra())


def free_umbral_identity(r) -> Umbra:
    """``K-bar.beta.(-1.K-bar)_D^{<-1>}`` with ``K-bar`` carrying moments ``n! r_n``."""
    kbar = _as_series(r).to_bar_umbra()
    return compose(kbar, compositional_inverse(derivative_umbra(negate(kbar))))


def tsh_from_boolean(b, order: Optional[int] = None) -> TSHFamily:
    """Family ``E[(x - t.alpha-bar)^k]`` parametrized by boolean cumulants."""
    alpha_bar = boolean_bar_umbra(b)
    via_composition = boolean_umbral_identity(b)
    if alpha_bar != via_composition:
        raise IdentityError("alpha-bar differs from u-bar.beta.eta-bar")
    return tsh_family(alpha_bar, order)


def tsh_from_free(r, order: Optional[int] = None) -> TSHFamily:
    """Family ``E[(x - t.alpha-bar)^k]`` parametrized by free cumulants."""
    alpha_bar = free_bar_umbra(r)
    via_inverse = free_umbral_identity(r)
    if alpha_bar != via_inverse:
        raise IdentityError("alpha-bar differs from K-bar.beta.(-1.K-bar)_D^{<-1>}")
    return tsh_family(alpha_bar, order)
