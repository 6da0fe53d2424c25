"""Exact rationals and sparse polynomials in the indeterminates x, t, s, y.

``x`` is the space variable, ``t`` the time variable, ``s`` the conditioning
time and ``y`` the placeholder that stands for powers of ``s.alpha`` inside a
conditional evaluation.  Every coefficient is an exact rational; integral
coefficients are stored as plain ``int`` so that the common case stays fast.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .exceptions import DomainError, SpecParseError

Rational = Fraction
"""Exact rational scalar type (always reduced, positive denominator)."""

VARS = ("x", "t", "s", "y")
_INDEX = {name: i for i, name in enumerate(VARS)}

Exponent = Tuple[int, int, int, int]
Scalar = Union[int, Fraction]

_ZERO_EXP: Exponent = (0, 0, 0, 0)


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _as_scalar(c) -> Scalar:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, _RationalABC):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


def var_index(var) -> int:
    """Index of an indeterminate given by name (``"x"``) or position."""
    if isinstance(var, int) and 0 <= var < 4:
        return var
    try:
        return _INDEX[str(var).lower()]
    except KeyError:
        raise DomainError(f"unknown indeterminate {var!r}; expected one of {VARS}") from None


def format_rational(c) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"`` when the denominator is 1."""
    c = _as_scalar(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text) -> Scalar:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational.

    Integers and ``Fraction`` instances pass through.  Decimal or float
    notation is rejected so that no inexact value sneaks in.
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return _as_scalar(text)
    if not isinstance(text, str):
        raise SpecParseError(f"expected a rational string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise SpecParseError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise SpecParseError(f"zero denominator in {text!r}")
    return _norm(Fraction(num, den))


def format_monomial(exp: Exponent) -> str:
    parts = []
    for name, e in zip(VARS, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


_FACTOR_RE = re.compile(r"^([xtsy])(?:\^(\d+))?$")


def parse_monomial(text: str) -> Exponent:
    """Inverse of :func:`format_monomial`; ``"1"`` is the constant monomial."""
    text = text.strip().lower()
    if text == "1":
        return _ZERO_EXP
    exp = [0, 0, 0, 0]
    for factor in text.split("*"):
        m = _FACTOR_RE.match(factor.strip())
        if not m:
            raise SpecParseError(f"bad monomial factor {factor!r} in {text!r}")
        exp[_INDEX[m.group(1)]] += int(m.group(2) or 1)
    return tuple(exp)


class MPoly:
    """Immutable sparse polynomial over the rationals in x, t, s, y."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: Dict[Exponent, Scalar] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != 4 or min(exp) < 0:
                    raise DomainError(f"bad exponent vector {exp!r}")
                c = _as_scalar(c)
                if c:
                    clean[exp] = _norm(clean.get(exp, 0) + c) if exp in clean else c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Scalar]) -> "MPoly":
        # caller guarantees normalized, zero-free terms
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _as_scalar(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name) -> "MPoly":
        exp = [0, 0, 0, 0]
        exp[var_index(name)] = 1
        return cls._raw({tuple(exp): 1})

    @classmethod
    def coerce(cls, value) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        return cls.const(value)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_value(self) -> Scalar:
        """The constant term; raises if the polynomial is not constant."""
        if not self.is_constant():
            raise DomainError(f"{self} is not a constant")
        return self._terms.get(_ZERO_EXP, 0)

    def degree(self, var=None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = var_index(var)
        return max(e[i] for e in self._terms)

    def variables(self) -> Tuple[str, ...]:
        used = [False] * 4
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(name for name, u in zip(VARS, used) if u)

    def free_of(self, *names) -> bool:
        idx = [var_index(n) for n in names]
        return all(exp[i] == 0 for exp in self._terms for i in idx)

    def coeff(self, var, n: int) -> "MPoly":
        """Coefficient of ``var**n`` as a polynomial in the other variables."""
        i = var_index(var)
        out = {}
        for exp, c in self._terms.items():
            if exp[i] == n:
                e = list(exp)
                e[i] = 0
                out[tuple(e)] = c
        return MPoly._raw(out)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        try:
            return self._terms == MPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "MPoly":
        return MPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "MPoly":
        return self

    def __add__(self, other) -> "MPoly":
        try:
            other = MPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _norm(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        try:
            other = MPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return MPoly.coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if not self._terms or not other._terms:
                return ZERO
            if len(other._terms) == 1 and _ZERO_EXP in other._terms:
                return self.scale(other._terms[_ZERO_EXP])
            if len(self._terms) == 1 and _ZERO_EXP in self._terms:
                return other.scale(self._terms[_ZERO_EXP])
            out: Dict[Exponent, Scalar] = {}
            for (a0, a1, a2, a3), ca in self._terms.items():
                for (b0, b1, b2, b3), cb in other._terms.items():
                    e = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
                    out[e] = out.get(e, 0) + ca * cb
            return MPoly._raw({e: _norm(c) for e, c in out.items() if c})
        try:
            return self.scale(_as_scalar(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = _as_scalar(c)
        if not c:
            return ZERO
        if c == 1:
            return self
        return MPoly._raw({e: _norm(v * c) for e, v in self._terms.items()})

    def __truediv__(self, other) -> "MPoly":
        # division only by nonzero rational constants
        if isinstance(other, MPoly):
            other = other.constant_value()
        other = _as_scalar(other)
        if not other:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(Fraction(1) / other)

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial powers need a nonnegative integer exponent")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and substitution ---------------------------------------

    def diff(self, var) -> "MPoly":
        """Formal partial derivative."""
        i = var_index(var)
        out = {}
        for exp, c in self._terms.items():
            e = exp[i]
            if e:
                ne = list(exp)
                ne[i] = e - 1
                out[tuple(ne)] = _norm(c * e)
        return MPoly._raw(out)

    def subs(self, var, value) -> "MPoly":
        """Substitute ``value`` (polynomial or rational) for ``var``."""
        i = var_index(var)
        value = MPoly.coerce(value)
        if value == MPoly.var(VARS[i]):
            return self
        groups: Dict[int, Dict[Exponent, Scalar]] = {}
        for exp, c in self._terms.items():
            e = list(exp)
            k = e[i]
            e[i] = 0
            groups.setdefault(k, {})[tuple(e)] = c
        result = ZERO
        powers = {0: ONE}
        for k in sorted(groups):
            if k not in powers:
                top = max(powers)
                p = powers[top]
                for j in range(top + 1, k + 1):
                    p = p * value
                    powers[j] = p
            result = result + MPoly._raw(groups[k]) * powers[k]
        return result

    def subs_many(self, mapping: Mapping) -> "MPoly":
        """Simultaneous substitution of several indeterminates."""
        out = ZERO
        values = {var_index(k): MPoly.coerce(v) for k, v in mapping.items()}
        cache: Dict[Tuple[int, int], MPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = values[i] ** k
            return cache[key]

        for exp, c in self._terms.items():
            rest = list(exp)
            term = ONE
            for i in values:
                if exp[i]:
                    term = term * power(i, exp[i])
                rest[i] = 0
            out = out + MPoly._raw({tuple(rest): c}) * term
        return out

    def evaluate(self, **values) -> Scalar:
        """Evaluate at rational values for every variable that occurs."""
        total: Scalar = 0
        vals = [None] * 4
        for name, v in values.items():
            vals[var_index(name)] = _as_scalar(v)
        for exp, c in self._terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    if vals[i] is None:
                        raise DomainError(f"no value given for {VARS[i]}")
                    term = term * vals[i] ** e
            total = total + term
        return _norm(Fraction(total)) if not isinstance(total, int) else total

    # -- presentation ------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms ordered by descending x-, t-, s-, then y-degree."""
        return sorted(self._terms.items(), key=lambda kv: tuple(-e for e in kv[0]))

    def to_json(self) -> Dict[str, str]:
        return {format_monomial(e): format_rational(c) for e, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "MPoly":
        if not isinstance(data, Mapping):
            raise SpecParseError(f"polynomial must be a JSON object, got {type(data).__name__}")
        terms: Dict[Exponent, Scalar] = {}
        for key, value in data.items():
            exp = parse_monomial(key)
            terms[exp] = _norm(terms.get(exp, 0) + parse_rational(value))
        return cls(terms)

    def __str__(self) -> str:
        return self._render(lambda e: format_monomial(e), "*")

    def latex(self) -> str:
        def mono(exp):
            parts = []
            for name, e in zip(VARS, exp):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{{{e}}}")
            return " ".join(parts) if parts else "1"

        def coeff(c):
            if isinstance(c, int):
                return str(c)
            return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"

        return self._render(mono, " ", coeff)

    def _render(self, mono, sep, fmt=format_rational) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (exp, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            m = mono(exp)
            if exp == _ZERO_EXP:
                body = fmt(a)
            elif a == 1:
                body = m
            else:
                body = f"{fmt(a)}{sep}{m}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"MPoly({self})"


ZERO = MPoly._raw({})
ONE = MPoly._raw({_ZERO_EXP: 1})
X = MPoly.var("x")
T = MPoly.var("t")
S = MPoly.var("s")
Y = MPoly.var("y")


def poly_arith(a, b, op: str) -> MPoly:
    """Exact ring operation ``op`` in {"add", "sub", "mul"}."""
    a, b = MPoly.coerce(a), MPoly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown ring operation {op!r}")


def poly_substitute(p, var, value) -> MPoly:
    return MPoly.coerce(p).subs(var, value)


def poly_derivative(p, var) -> MPoly:
    return MPoly.coerce(p).diff(var)


def poly_sum(items: Iterable) -> MPoly:
    out: Dict[Exponent, Scalar] = {}
    for p in items:
        for e, c in MPoly.coerce(p).items():
            out[e] = out.get(e, 0) + c
    return MPoly._raw({e: _norm(c) for e, c in out.items() if c})
