"""Umbrae as truncated moment sequences and the umbral operators on them.

An :class:`Umbra` stores ``E[alpha^n]`` for ``n = 0..order``.  Two umbrae are
similar exactly when these sequences agree, so similarity is plain equality
here.  Distinct ``Umbra`` values are always treated as uncorrelated, which is
what every moment formula below assumes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Optional, Sequence, Tuple

from .combinatorics import bell_partial, bell_partial_table, falling_factorial, stirling1
from .exceptions import DomainError, OrderExceededError, SingularInverseError, SpecParseError
from .poly import ONE, ZERO, MPoly, S, T, Y, format_rational, parse_rational, poly_sum

DEFAULT_ORDER = 12
MAX_ORDER = 24

BUILTIN_NAMES = ("epsilon", "unity", "bell", "singleton", "ubar", "gauss-delta")


class Umbra:
    """Moment sequence ``m_0 = 1, m_1, ..., m_N`` with polynomial entries."""

    __slots__ = ("moments", "label", "_hash")

    def __init__(self, moments: Iterable, label: Optional[str] = None):
        ms = tuple(MPoly.coerce(m) for m in moments)
        if not ms:
            raise DomainError("an umbra needs at least the moment m_0")
        if ms[0] != ONE:
            raise DomainError(f"m_0 must be 1, got {ms[0]}")
        self.moments: Tuple[MPoly, ...] = ms
        self.label = label
        self._hash = None

    @classmethod
    def from_values(cls, values: Iterable, label: Optional[str] = None) -> "Umbra":
        """Build from ``m_1..m_N``; ``m_0 = 1`` is implicit."""
        return cls((ONE, *values), label)

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    def moment(self, n: int) -> MPoly:
        if n < 0:
            raise DomainError("moment index must be nonnegative")
        if n > self.order:
            raise OrderExceededError(f"moment {n} requested from an umbra of order {self.order}")
        return self.moments[n]

    def __getitem__(self, n: int) -> MPoly:
        return self.moment(n)

    def truncate(self, order: int) -> "Umbra":
        if order > self.order:
            raise OrderExceededError(f"cannot extend an umbra of order {self.order} to {order}")
        return Umbra(self.moments[: order + 1], self.label)

    def relabel(self, label: Optional[str]) -> "Umbra":
        return Umbra(self.moments, label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Umbra):
            return NotImplemented
        return self.moments == other.moments

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.moments)
        return self._hash

    def __repr__(self) -> str:
        name = f"{self.label}, " if self.label else ""
        shown = ", ".join(str(m) for m in self.moments[:6])
        more = ", ..." if self.order > 5 else ""
        return f"Umbra({name}order={self.order}: {shown}{more})"


def _same_order(*umbrae: Umbra) -> int:
    orders = {u.order for u in umbrae}
    if len(orders) != 1:
        raise DomainError(f"umbrae must share one truncation order, got {sorted(orders)}")
    return orders.pop()


def builtin(name: str, order: int = DEFAULT_ORDER) -> Umbra:
    """Special scalar umbrae: epsilon, unity, bell, singleton, ubar, gauss-delta."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    if name == "epsilon":
        ms = [1] + [0] * order
    elif name == "unity":
        ms = [1] * (order + 1)
    elif name == "singleton":
        ms = [1, 1] + [0] * (order - 1)
    elif name == "bell":
        ms = [bell_number(n) for n in range(order + 1)]
    elif name == "ubar":
        ms = [factorial(n) for n in range(order + 1)]
    elif name == "gauss-delta":
        ms = [1 if n in (0, 2) else 0 for n in range(order + 1)]
    else:
        raise DomainError(f"unknown builtin umbra {name!r}; expected one of {BUILTIN_NAMES}")
    return Umbra(ms[: order + 1], name)


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * bell_number(k) for k in range(n))


@lru_cache(maxsize=256)
def _bell_table(alpha: Umbra):
    return bell_partial_table(alpha.order, alpha.moments[1:])


def umbra_add(alpha: Umbra, gamma: Umbra) -> Umbra:
    """Sum of two uncorrelated umbrae (binomial convolution of moments)."""
    n = _same_order(alpha, gamma)
    a, g = alpha.moments, gamma.moments
    return Umbra(poly_sum((a[j] * g[k - j]).scale(comb(k, j)) for j in range(k + 1))
                 for k in range(n + 1))


def disjoint_sum(alpha: Umbra, gamma: Umbra) -> Umbra:
    """Generating function ``f(alpha) + f(gamma) - 1``."""
    n = _same_order(alpha, gamma)
    return Umbra([ONE] + [alpha.moments[i] + gamma.moments[i] for i in range(1, n + 1)])


def disjoint_difference(alpha: Umbra, gamma: Umbra) -> Umbra:
    """Generating function ``f(alpha) - f(gamma) + 1``."""
    n = _same_order(alpha, gamma)
    return Umbra([ONE] + [alpha.moments[i] - gamma.moments[i] for i in range(1, n + 1)])


def dot_scalar(c, alpha: Umbra) -> Umbra:
    """Dot-product ``c.alpha`` for a polynomial scalar ``c`` in t and s.

    ``m_i = sum_k (c)_k B_{i,k}(a_1, ...)``.
    """
    c = MPoly.coerce(c)
    if not c.free_of("x", "y"):
        raise DomainError(f"dot-product scalar must not involve x or y: {c}")
    return _dot_scalar(c, alpha)


@lru_cache(maxsize=1024)
def _dot_scalar(c: MPoly, alpha: Umbra) -> Umbra:
    table = _bell_table(alpha)
    n = alpha.order
    ff = [falling_factorial(c, k) for k in range(n + 1)]
    return Umbra([ONE] + [poly_sum(ff[k] * table[i][k] for k in range(1, i + 1) if table[i][k])
                          for i in range(1, n + 1)])


def negate(alpha: Umbra) -> Umbra:
    """The umbra ``-1.alpha`` (generating function ``1/f(alpha)``)."""
    return dot_scalar(-1, alpha)


def factorial_moments(gamma: Umbra) -> Tuple[MPoly, ...]:
    """``E[(gamma)_k] = sum_j s(k,j) m_j`` for ``k = 0..order``."""
    m = gamma.moments
    return tuple(poly_sum(m[j].scale(stirling1(k, j)) for j in range(k + 1))
                 for k in range(gamma.order + 1))


@lru_cache(maxsize=256)
def dot_umbra(gamma: Umbra, alpha: Umbra) -> Umbra:
    """Dot-product ``gamma.alpha``: ``m_i = sum_k E[(gamma)_k] B_{i,k}(a)``."""
    n = _same_order(gamma, alpha)
    fm = factorial_moments(gamma)
    table = _bell_table(alpha)
    return Umbra([ONE] + [poly_sum(fm[k] * table[i][k] for k in range(1, i + 1) if fm[k] and table[i][k])
                          for i in range(1, n + 1)])


@dataclass(frozen=True)
class CumulantSequence:
    """Cumulants ``c_1..c_N``; classical ones follow the exponential convention,
    boolean and free ones the ordinary-series convention."""

    kind: str
    values: Tuple[MPoly, ...]

    def __post_init__(self):
        if self.kind not in ("classical", "boolean", "free"):
            raise DomainError(f"unknown cumulant kind {self.kind!r}")
        object.__setattr__(self, "values", tuple(MPoly.coerce(v) for v in self.values))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> MPoly:
        """1-based access, ``seq[1]`` is the first cumulant."""
        if i < 1 or i > len(self.values):
            raise OrderExceededError(f"cumulant {i} outside 1..{len(self.values)}")
        return self.values[i - 1]


def cumulants(alpha: Umbra) -> CumulantSequence:
    """Classical cumulants, read off as the moments of ``chi.alpha``."""
    kappa = dot_umbra(builtin("singleton", alpha.order), alpha)
    return CumulantSequence("classical", kappa.moments[1:])


def cumulant_umbra(alpha: Umbra) -> Umbra:
    """The alpha-cumulant umbra ``chi.alpha``."""
    return dot_umbra(builtin("singleton", alpha.order), alpha)


def from_cumulants(h) -> Umbra:
    """Umbra ``beta.kappa`` whose classical cumulants are ``h``."""
    if isinstance(h, CumulantSequence):
        if h.kind != "classical":
            raise DomainError("from_cumulants expects classical cumulants")
        h = h.values
    kappa = h if isinstance(h, Umbra) else Umbra.from_values(h)
    return dot_umbra(builtin("bell", kappa.order), kappa)


def compose(alpha: Umbra, gamma: Umbra) -> Umbra:
    """Composition umbra ``alpha.beta.gamma``: ``f(alpha, f(gamma, z) - 1)``."""
    n = _same_order(alpha, gamma)
    table = _bell_table(gamma)
    a = alpha.moments
    return Umbra([ONE] + [poly_sum(a[k] * table[i][k] for k in range(1, i + 1) if a[k] and table[i][k])
                          for i in range(1, n + 1)])


def compositional_inverse(gamma: Umbra) -> Umbra:
    """Umbra ``gamma^{<-1>}`` with ``gamma.beta.gamma^{<-1>}`` similar to chi.

    Solved order by order: ``B_{i,1}(d) = d_i`` carries the only unknown at
    order ``i``, so each step is one division by ``g_1``.
    """
    n = gamma.order
    if n == 0:
        return Umbra([ONE])
    g1 = gamma.moments[1]
    if g1.is_zero():
        raise SingularInverseError("compositional inverse needs E[gamma] != 0")
    if not g1.is_constant():
        raise DomainError(f"compositional inverse needs a rational E[gamma], got {g1}")
    inv_g1 = Fraction(1) / Fraction(g1.constant_value())
    g = gamma.moments
    d = []
    for i in range(1, n + 1):
        target = ONE if i == 1 else ZERO
        rest = poly_sum(g[k] * bell_partial(i, k, d) for k in range(2, i + 1) if g[k])
        d.append((target - rest).scale(inv_g1))
    return Umbra([ONE] + d)


def derivative_umbra(alpha: Umbra) -> Umbra:
    """``alpha_D`` with ``f(alpha_D, z) = 1 + z f(alpha, z)``, i.e. ``m_n = n a_{n-1}``."""
    m = alpha.moments
    return Umbra([ONE] + [m[n - 1].scale(n) for n in range(1, alpha.order + 1)])


@lru_cache(maxsize=1024)
def conditional_moment(k: int, alpha: Umbra) -> MPoly:
    """``E[(t.alpha)^k | s.alpha]`` as a polynomial in y over Q[s, t].

    ``y`` stands for the conditioning umbra ``s.alpha``.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k > alpha.order:
        raise OrderExceededError(f"k={k} exceeds umbra order {alpha.order}")
    inc = dot_scalar(T - S, alpha).moments
    return poly_sum((Y ** j * inc[k - j]).scale(comb(k, j)) for j in range(k + 1))


# -- JSON umbra specs ----------------------------------------------------

SPEC_KINDS = ("moments", "classical-cumulants", "boolean-cumulants", "free-cumulants", "builtin")


def umbra_from_spec(spec, default_order: int = DEFAULT_ORDER) -> Umbra:
    """Build an umbra from a parsed JSON spec.

    ``{"order": N, "kind": ..., "values": ["1", "1/2", ...], "name": ...}``;
    ``values`` hold entries ``1..N``.  Boolean and free cumulants are mapped
    to the ordinary moment sequence they determine.
    """
    if not isinstance(spec, dict):
        raise SpecParseError("umbra spec must be a JSON object", "$")
    kind = spec.get("kind", "moments" if "values" in spec else "builtin")
    if kind not in SPEC_KINDS:
        raise SpecParseError(f"unknown umbra kind {kind!r}", "$.kind")
    order = spec.get("order")
    if order is not None and (not isinstance(order, int) or isinstance(order, bool)):
        raise SpecParseError("order must be an integer", "$.order")
    if kind == "builtin":
        name = spec.get("name")
        if not isinstance(name, str):
            raise SpecParseError("builtin spec needs a string 'name'", "$.name")
        order = default_order if order is None else order
        _check_order(order)
        return resolve_builtin(name, order)
    raw = spec.get("values")
    if not isinstance(raw, list):
        raise SpecParseError("'values' must be a list of rational strings", "$.values")
    values = []
    for i, v in enumerate(raw):
        try:
            values.append(parse_rational(v))
        except SpecParseError as exc:
            raise SpecParseError(str(exc), f"$.values[{i}]") from None
    order = len(values) if order is None else order
    _check_order(order)
    if len(values) < order:
        raise SpecParseError(f"spec declares order {order} but lists {len(values)} values", "$.values")
    values = values[:order]
    if kind == "moments":
        umbra = Umbra.from_values(values)
    elif kind == "classical-cumulants":
        umbra = from_cumulants(values) if values else Umbra([ONE])
    else:
        from .families import OrdinarySeries, boolean_transform, free_transform

        transform = boolean_transform if kind == "boolean-cumulants" else free_transform
        moments = transform("to_moments", OrdinarySeries(values))
        umbra = Umbra.from_values(moments.coefficients)
    return umbra.relabel(spec.get("name"))


def _check_order(order: int):
    if not 1 <= order <= MAX_ORDER:
        raise SpecParseError(f"order must lie in [1, {MAX_ORDER}], got {order}", "$.order")


def resolve_builtin(name: str, order: int = DEFAULT_ORDER) -> Umbra:
    """Engine builtins plus the process umbrae ``brownian`` and ``compensated-poisson``."""
    if name in ("brownian", "gauss-compound"):
        from .families import brownian_umbra

        return brownian_umbra(order)
    if name == "compensated-poisson":
        from .families import compensated_poisson_umbra

        return compensated_poisson_umbra(order)
    try:
        return builtin(name, order)
    except DomainError as exc:
        raise SpecParseError(str(exc), "$.name") from None


def umbra_to_spec(alpha: Umbra) -> dict:
    """Moment-kind JSON spec; entries must be rational."""
    values = []
    for i, m in enumerate(alpha.moments[1:], start=1):
        if not m.is_constant():
            raise DomainError(f"moment {i} is not rational: {m}")
        values.append(format_rational(m.constant_value()))
    spec = {"order": alpha.order, "kind": "moments", "values": values}
    if alpha.label:
        spec["name"] = alpha.label
    return spec


def load_umbra(path, default_order: int = DEFAULT_ORDER) -> Umbra:
    with open(path, encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    return umbra_from_spec(spec, default_order)
