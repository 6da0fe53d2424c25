"""Time-space harmonic polynomials ``Q_k(x, t) = E[(x - t.alpha)^k]``.

Besides the construction itself, this module carries exact checks for each
identity these polynomials satisfy.  A check returns a :class:`CheckResult`
whose ``residual`` is the zero polynomial on success and a witness otherwise.

Families come in two signs: ``"minus"`` builds ``E[(x - t.alpha)^k]`` and
``"plus"`` builds ``E[(x + t.alpha)^k]``.  The plus family on ``alpha`` is the
minus family on ``-1.alpha``, and every check reduces to the minus case that
way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from .combinatorics import bell_complete, d_lambda, partitions, stirling1
from .exceptions import DomainError, IdentityError, OrderExceededError, SpecParseError
from .poly import ONE, ZERO, MPoly, S, T, X, Y, parse_monomial, poly_sum
from .umbra import (
    Umbra,
    conditional_moment,
    cumulant_umbra,
    cumulants,
    dot_scalar,
    dot_umbra,
    builtin,
    from_cumulants,
    negate,
)

SIGNS = ("minus", "plus")


def _check_sign(sign: str):
    if sign not in SIGNS:
        raise DomainError(f"sign must be 'minus' or 'plus', got {sign!r}")


def _check_k(k: int, alpha: Umbra):
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k > alpha.order:
        raise OrderExceededError(f"k={k} exceeds umbra order {alpha.order}")


def effective_umbra(alpha: Umbra, sign: str = "minus") -> Umbra:
    """The umbra whose minus family equals the ``sign`` family on ``alpha``."""
    _check_sign(sign)
    return alpha if sign == "minus" else _negate(alpha)


@lru_cache(maxsize=128)
def _negate(alpha: Umbra) -> Umbra:
    return negate(alpha)


@dataclass(frozen=True)
class TSHPoly:
    """``Q_k = sum_j coeffs[j] * x^j`` with ``coeffs[j]`` in Q[t]."""

    k: int
    coeffs: Tuple[MPoly, ...]
    source: Optional[Umbra] = field(default=None, compare=False, repr=False)
    sign: str = field(default="minus", compare=False)

    def __post_init__(self):
        coeffs = tuple(MPoly.coerce(c) for c in self.coeffs)
        if len(coeffs) != self.k + 1:
            raise DomainError(f"Q_{self.k} needs {self.k + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def poly(self) -> MPoly:
        return poly_sum(c * X ** j for j, c in enumerate(self.coeffs))

    def with_coeff(self, j: int, value) -> "TSHPoly":
        coeffs = list(self.coeffs)
        coeffs[j] = MPoly.coerce(value)
        return TSHPoly(self.k, tuple(coeffs), self.source, self.sign)

    def to_json(self) -> dict:
        return {"k": self.k, "coeffs": {("1" if j == 0 else ("x" if j == 1 else f"x^{j}")): c.to_json()
                                        for j, c in enumerate(self.coeffs)}}

    @classmethod
    def from_json(cls, data) -> "TSHPoly":
        if not isinstance(data, dict) or "k" not in data or "coeffs" not in data:
            raise SpecParseError("TSH polynomial needs 'k' and 'coeffs'")
        k = data["k"]
        if not isinstance(k, int) or k < 0:
            raise SpecParseError(f"bad degree {k!r}", "k")
        coeffs = [ZERO] * (k + 1)
        for key, value in data["coeffs"].items():
            exp = parse_monomial(key)
            if exp[1:] != (0, 0, 0) or exp[0] > k:
                raise SpecParseError(f"coefficient key must be a power of x up to x^{k}: {key!r}")
            coeffs[exp[0]] = MPoly.from_json(value)
        return cls(k, tuple(coeffs))

    def latex(self) -> str:
        return self.poly.latex()

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class TSHFamily:
    """``Q_0..Q_N`` built on one umbra."""

    alpha: Umbra
    polys: Tuple[TSHPoly, ...]
    sign: str = "minus"

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, k: int) -> TSHPoly:
        return self.polys[k]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)


def time_moments(alpha: Umbra, sign: str = "minus", time=T) -> Tuple[MPoly, ...]:
    """Moments of ``-time.alpha`` (minus) or ``+time.alpha`` (plus)."""
    _check_sign(sign)
    c = -MPoly.coerce(time) if sign == "minus" else MPoly.coerce(time)
    return dot_scalar(c, alpha).moments


def tsh_polynomial(k: int, alpha: Umbra, sign: str = "minus") -> TSHPoly:
    """``q_j^(k)(t) = C(k, j) E[(-t.alpha)^{k-j}]``."""
    _check_k(k, alpha)
    m = time_moments(alpha, sign)
    return TSHPoly(k, tuple(m[k - j].scale(comb(k, j)) for j in range(k + 1)), alpha, sign)


def tsh_family(alpha: Umbra, order: Optional[int] = None, sign: str = "minus") -> TSHFamily:
    order = alpha.order if order is None else order
    _check_k(order, alpha)
    return TSHFamily(alpha, tuple(tsh_polynomial(k, alpha, sign) for k in range(order + 1)), sign)


@lru_cache(maxsize=512)
def coeff_closed_form(k: int, alpha: Umbra, stirling: str = "signed") -> TSHPoly:
    """Minus-sign ``Q_k`` from the partition and Stirling sum

    ``c_{i,j} = C(k,j) sum_{lambda |- k-j} d_lambda (-1)^{2 l + i} s[l, i] a^r``.

    ``stirling="unsigned"`` uses ``|s[l, i]|`` instead; it exists only to show
    that this reading does not reproduce the dot-product moments.
    """
    _check_k(k, alpha)
    if stirling not in ("signed", "unsigned"):
        raise DomainError("stirling must be 'signed' or 'unsigned'")
    a = alpha.moments
    coeffs = []
    for j in range(k + 1):
        acc = []
        for lam in partitions(k - j):
            mono = ONE
            for part, r in lam.multiplicities.items():
                mono = mono * a[part] ** r
            l = lam.length
            tpoly = poly_sum(T ** i * ((-1) ** (i + 2 * l) * (stirling1(l, i) if stirling == "signed"
                                                                   else abs(stirling1(l, i))))
                             for i in range(l + 1))
            acc.append((mono * tpoly).scale(d_lambda(lam)))
        coeffs.append(poly_sum(acc).scale(comb(k, j)))
    return TSHPoly(k, tuple(coeffs), alpha, "minus")


@lru_cache(maxsize=512)
def complete_bell_polynomial(k: int, alpha: Umbra, sign: str = "minus") -> MPoly:
    """``Y_k(x + h_1, h_2, ..., h_k)`` with ``h`` the cumulants of ``-t.alpha``."""
    _check_k(k, alpha)
    h = cumulants(dot_scalar(-T, effective_umbra(alpha, sign))).values
    if k == 0:
        return ONE
    args = [X + h[0], *h[1:k]]
    return bell_complete(k, args)


def complete_bell_form(k: int, alpha: Umbra, sign: str = "minus") -> MPoly:
    """Complete Bell form of ``Q_k``; raises :class:`IdentityError` if it
    disagrees with :func:`tsh_polynomial`."""
    bell_form = complete_bell_polynomial(k, alpha, sign)
    direct = tsh_polynomial(k, alpha, sign).poly
    if bell_form != direct:
        raise IdentityError(f"complete Bell form of Q_{k} disagrees", bell_form - direct)
    return bell_form


# -- checks ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    k: int
    passed: bool
    residual: MPoly = ZERO
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def _result(name: str, k: int, residual: MPoly, detail: str = "") -> CheckResult:
    return CheckResult(name, k, residual.is_zero(), residual, detail)


def _coeffs(k: int, alpha: Umbra, poly, sign: str) -> Tuple[MPoly, ...]:
    if poly is None:
        return tsh_polynomial(k, alpha, sign).coeffs
    if isinstance(poly, TSHPoly):
        if poly.k != k:
            raise DomainError(f"expected Q_{k}, got a polynomial of degree {poly.k}")
        return poly.coeffs
    return tuple(MPoly.coerce(c) for c in poly)


def martingale_check(k: int, alpha: Umbra, poly=None, sign: str = "minus") -> CheckResult:
    """``E(P(t.alpha, t) | s.alpha) - P(y, s)`` must vanish identically.

    ``P`` defaults to ``Q_k``; pass ``poly`` to test another coefficient list.
    The conditional evaluation expands ``(t.alpha)^j`` around the placeholder
    ``y`` for ``s.alpha``, so success means every ``t`` cancels.
    """
    _check_k(k, alpha)
    eff = effective_umbra(alpha, sign)
    q = _coeffs(k, alpha, poly, sign)
    lhs = poly_sum(q[j] * conditional_moment(j, eff) for j in range(len(q)) if q[j])
    rhs = poly_sum(q[j].subs("t", S) * Y ** j for j in range(len(q)) if q[j])
    residual = lhs - rhs
    detail = "" if lhs.free_of("t") else "conditional evaluation still depends on t"
    return _result("martingale", k, residual, detail)


def wald_residual(k: int, alpha: Umbra, poly=None, sign: str = "minus") -> MPoly:
    """``E[Q_k(t.alpha, t)] - [k == 0]`` as a polynomial in t."""
    _check_k(k, alpha)
    process = time_moments(effective_umbra(alpha, sign), "plus")
    q = _coeffs(k, alpha, poly, sign)
    value = poly_sum(q[j] * process[j] for j in range(len(q)) if q[j])
    return value - (ONE if k == 0 else ZERO)


def wald_check(alpha: Umbra, up_to: int, sign: str = "minus") -> CheckResult:
    """Substituting ``x^j -> E[(t.alpha)^j]`` sends ``Q_k`` to ``[k == 0]``."""
    _check_k(up_to, alpha)
    for k in range(up_to + 1):
        r = wald_residual(k, alpha, sign=sign)
        if r:
            return _result("wald", k, r, f"E[Q_{k}(t.alpha, t)] != {int(k == 0)}")
    return _result("wald", up_to, ZERO)


def appell_check(family: Union[TSHFamily, Sequence[TSHPoly]]) -> CheckResult:
    """``d/dx Q_k = k Q_{k-1}`` for every ``k >= 1`` in the family."""
    polys = list(family)
    for k in range(1, len(polys)):
        r = polys[k].poly.diff("x") - polys[k - 1].poly.scale(k)
        if r:
            return _result("appell", k, r, f"d/dx Q_{k} != {k} Q_{k - 1}")
    return _result("appell", len(polys) - 1, ZERO)


@dataclass(frozen=True)
class TSHDecomposition:
    """Outcome of :func:`is_tsh`: coefficients ``c_j = p_j(0)`` on accept,
    the first violating ``(j, residual)`` on reject."""

    accepted: bool
    coefficients: Tuple[MPoly, ...] = ()
    failed_index: Optional[int] = None
    residual: MPoly = ZERO

    def __bool__(self) -> bool:
        return self.accepted


def is_tsh(p, alpha: Umbra, sign: str = "minus") -> TSHDecomposition:
    """Decide whether ``P = sum_j p_j(t) x^j`` is time-space harmonic.

    Accepts iff ``p_j(t) = sum_{i >= j} C(i, j) p_i(0) E[(-t.alpha)^{i-j}]``
    for every ``j``, checked from the top degree down.  On acceptance
    ``P = sum_j p_j(0) Q_j``.
    """
    if isinstance(p, TSHPoly):
        coeffs = list(p.coeffs)
    elif isinstance(p, MPoly):
        coeffs = [p.coeff("x", j) for j in range(max(p.degree("x"), 0) + 1)]
    else:
        coeffs = [MPoly.coerce(c) for c in p]
    for c in coeffs:
        if not c.free_of("x", "s", "y"):
            raise DomainError(f"coefficients must be polynomials in t only: {c}")
    k = len(coeffs) - 1
    _check_k(k, alpha)
    m = time_moments(alpha, sign)
    at_zero = [c.subs("t", 0) for c in coeffs]
    for j in range(k, -1, -1):
        expected = poly_sum(m[i - j].scale(comb(i, j)) * at_zero[i] for i in range(j, k + 1) if at_zero[i])
        r = coeffs[j] - expected
        if r:
            return TSHDecomposition(False, (), j, r)
    return TSHDecomposition(True, tuple(at_zero))


def prop5_check(k: int, alpha: Umbra, poly=None, sign: str = "minus") -> CheckResult:
    """``Q_k`` passes :func:`is_tsh` and decomposes as exactly ``1 * Q_k``."""
    q = _coeffs(k, alpha, poly, sign)
    dec = is_tsh(q, alpha, sign)
    if not dec:
        return _result("prop5", k, dec.residual * X ** dec.failed_index,
                       f"coefficient of x^{dec.failed_index} violates the characterization")
    excess = poly_sum((c - (ONE if j == k else ZERO)) * X ** j for j, c in enumerate(dec.coefficients))
    return _result("prop5", k, excess, "" if not excess else "decomposition is not the unit vector at k")


def eq5_check(k: int, alpha: Umbra, poly=None, sign: str = "minus") -> CheckResult:
    """Compare ``Q_k`` with the partition/Stirling closed form."""
    q = _coeffs(k, alpha, poly, sign)
    closed = coeff_closed_form(k, effective_umbra(alpha, sign)).coeffs
    residual = poly_sum((q[j] - closed[j]) * X ** j for j in range(k + 1))
    return _result("eq5", k, residual)


def complbell_check(k: int, alpha: Umbra, poly=None, sign: str = "minus") -> CheckResult:
    """Compare ``Q_k`` with ``Y_k(x + h_1, h_2, ..., h_k)``."""
    q = _coeffs(k, alpha, poly, sign)
    given = poly_sum(c * X ** j for j, c in enumerate(q))
    return _result("complbell", k, given - complete_bell_polynomial(k, alpha, sign))


def shift_identity_check(k: int, alpha: Umbra, poly=None, sign: str = "minus") -> CheckResult:
    """``q_j(t-1) = sum_{i>=j} C(i,j) q_i(t) a_{i-j}`` for all ``j``, and the
    moment recovery ``a_k = q_0(t-1) - sum_{j<k} q_j(t) a_j``."""
    _check_k(k, alpha)
    a = effective_umbra(alpha, sign).moments
    q = _coeffs(k, alpha, poly, sign)
    for j in range(k + 1):
        rhs = poly_sum((q[i] * a[i - j]).scale(comb(i, j)) for i in range(j, k + 1))
        r = q[j].subs("t", T - 1) - rhs
        if r:
            return _result("shift", k, r, f"shift identity fails at j={j}")
    recovered = q[0].subs("t", T - 1) - poly_sum(q[j] * a[j] for j in range(k))
    r = recovered - a[k]
    return _result("shift", k, r, "" if not r else f"moment a_{k} not recovered")


def discrete_identity_check(k: int, n: int, alpha: Umbra, poly=None, sign: str = "minus",
                            include_top: bool = False) -> CheckResult:
    """Integer-time identities, evaluated exactly at ``t = 0..n``:

    ``q_j(n) + sum_{i>j} C(i,j) sum_{l=1}^n q_i(l) a_{i-j} = 0`` for ``j < k``
    and ``q_0(n) + sum_{l=1}^n sum_{j>=1} a_j q_j(l) = 0``.  With
    ``include_top`` the first display is also evaluated at ``j = k``, where it
    reads ``q_k(n) = 0`` and fails.
    """
    _check_k(k, alpha)
    if n < 1:
        raise DomainError("n must be at least 1")
    a = effective_umbra(alpha, sign).moments
    q = _coeffs(k, alpha, poly, sign)
    at = [[c.subs("t", l) for l in range(n + 1)] for c in q]
    top = k + 1 if include_top else k
    for j in range(top):
        total = at[j][n] + poly_sum((at[i][l] * a[i - j]).scale(comb(i, j))
                                    for i in range(j + 1, k + 1) for l in range(1, n + 1))
        if total:
            return _result("discrete", k, total, f"fails at j={j}, n={n}")
    total = at[0][n] + poly_sum(a[j] * at[j][l] for l in range(1, n + 1) for j in range(1, k + 1))
    if k >= 1 and total:
        return _result("discrete", k, total, f"summed identity fails at n={n}")
    return _result("discrete", k, ZERO)


def sheffer_identity_check(k: int, alpha: Umbra, sign: str = "minus", polys=None) -> CheckResult:
    """``Q_k(x, t+s) = sum_j C(k,j) P_j(s) Q_{k-j}(x, t)`` with ``P_j(s) = Q_j(0, s)``.

    ``polys`` may supply ``Q_0..Q_k`` in place of the constructed family.
    """
    _check_k(k, alpha)
    if polys is None:
        family = [tsh_polynomial(j, alpha, sign).poly for j in range(k + 1)]
    else:
        family = [p.poly if isinstance(p, TSHPoly) else MPoly.coerce(p) for p in list(polys)[: k + 1]]
    lhs = family[k].subs("t", T + S)
    p = [family[j].subs("x", 0).subs("t", S) for j in range(k + 1)]
    rhs = poly_sum((p[j] * family[k - j]).scale(comb(k, j)) for j in range(k + 1))
    return _result("sheffer", k, lhs - rhs)


def dt_derivative_check(k: int, alpha: Umbra, sign: str = "plus") -> CheckResult:
    """``d/dt q_j^(k) = sum_{i=1}^{k-j} C(k,i) h_i q_j^(k-i)`` for all ``j``.

    The family is ``E[(x + t.beta.kappa_alpha)^k]`` (``sign="plus"``) and ``h``
    the cumulants of ``alpha``; with ``sign="minus"`` the cumulants of
    ``-1.alpha`` take their place.
    """
    _check_k(k, alpha)
    _check_sign(sign)
    partition_umbra = from_cumulants(cumulants(alpha))
    h = cumulants(alpha).values if sign == "plus" else cumulants(_negate(alpha)).values
    family = [tsh_polynomial(m, partition_umbra, sign).coeffs for m in range(k + 1)]
    for j in range(k + 1):
        lhs = family[k][j].diff("t")
        rhs = poly_sum((h[i - 1] * family[k - i][j]).scale(comb(k, i)) for i in range(1, k - j + 1))
        if lhs != rhs:
            return _result("dtderiv", k, lhs - rhs, f"fails at j={j}")
    return _result("dtderiv", k, ZERO)


def cumulant_form_check(k: int, alpha: Umbra, sign: str = "minus") -> CheckResult:
    """``Q_k`` on ``alpha`` equals ``Q_k`` on ``beta.(chi.alpha)``."""
    bk = dot_umbra(builtin("bell", alpha.order), cumulant_umbra(alpha))
    r = tsh_polynomial(k, alpha, sign).poly - tsh_polynomial(k, bk, sign).poly
    return _result("cumulant", k, r)


def triple_path_check(k: int, alpha: Umbra) -> CheckResult:
    """Dot-product, closed-form and complete-Bell constructions must agree."""
    direct = tsh_polynomial(k, alpha).poly
    r1 = coeff_closed_form(k, alpha).poly - direct
    if r1:
        return _result("triple", k, r1, "closed form disagrees")
    r2 = complete_bell_polynomial(k, alpha) - direct
    return _result("triple", k, r2, "" if not r2 else "complete Bell form disagrees")
