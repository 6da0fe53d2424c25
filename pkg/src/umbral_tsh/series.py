"""Truncated formal power series in z with polynomial coefficients.

A series is a list ``c`` with ``c[n]`` the coefficient of ``z**n`` (ordinary
convention), truncated after index ``order``.  These routines serve as
generating-function oracles for the umbral operators.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import List, Sequence

from .exceptions import DomainError
from .poly import ONE, ZERO, MPoly, poly_sum

Series = List[MPoly]


def _pad(a: Sequence, order: int) -> Series:
    out = [MPoly.coerce(v) for v in list(a)[: order + 1]]
    return out + [ZERO] * (order + 1 - len(out))


def mul(a: Sequence, b: Sequence, order: int) -> Series:
    a, b = _pad(a, order), _pad(b, order)
    return [poly_sum(a[i] * b[n - i] for i in range(n + 1) if a[i] and b[n - i])
            for n in range(order + 1)]


def inverse(a: Sequence, order: int) -> Series:
    """Reciprocal series; the constant term must be a nonzero rational."""
    a = _pad(a, order)
    if not a[0] or not a[0].is_constant():
        raise DomainError("series reciprocal needs a nonzero rational constant term")
    inv0 = Fraction(1) / Fraction(a[0].constant_value())
    out = [MPoly.const(inv0)]
    for n in range(1, order + 1):
        acc = poly_sum(a[k] * out[n - k] for k in range(1, n + 1) if a[k])
        out.append(acc.scale(-inv0))
    return out


def exp(a: Sequence, order: int) -> Series:
    """``exp(a)`` for a series with zero constant term."""
    a = _pad(a, order)
    if a[0]:
        raise DomainError("series exp needs a zero constant term")
    out = [ONE]
    for n in range(1, order + 1):
        acc = poly_sum((a[k] * out[n - k]).scale(k) for k in range(1, n + 1) if a[k])
        out.append(acc.scale(Fraction(1, n)))
    return out


def log(a: Sequence, order: int) -> Series:
    """``log(a)`` for a series with constant term 1."""
    a = _pad(a, order)
    if a[0] != ONE:
        raise DomainError("series log needs constant term 1")
    out = [ZERO]
    for n in range(1, order + 1):
        acc = a[n].scale(n) - poly_sum((out[k] * a[n - k]).scale(k) for k in range(1, n) if a[n - k])
        out.append(acc.scale(Fraction(1, n)))
    return out


def compose(f: Sequence, g: Sequence, order: int) -> Series:
    """``f(g(z))`` for ``g`` with zero constant term."""
    f, g = _pad(f, order), _pad(g, order)
    if g[0]:
        raise DomainError("series composition needs an inner series with zero constant term")
    out = [ZERO] * (order + 1)
    power = [ONE] + [ZERO] * order
    for i in range(order + 1):
        if f[i]:
            for n in range(order + 1):
                if power[n]:
                    out[n] = out[n] + f[i] * power[n]
        power = mul(power, g, order)
    return out


def scale_z(a: Sequence, order: int) -> Series:
    """``z * a(z)``."""
    a = _pad(a, order)
    return [ZERO] + a[:order]


def egf_to_ogf(moments: Sequence) -> Series:
    """Ordinary coefficients ``m_n / n!`` of an exponential generating function."""
    return [MPoly.coerce(m).scale(Fraction(1, factorial(n))) for n, m in enumerate(moments)]


def ogf_to_egf(coeffs: Sequence) -> Series:
    """Moments ``n! c_n`` from ordinary coefficients."""
    return [MPoly.coerce(c).scale(factorial(n)) for n, c in enumerate(coeffs)]
