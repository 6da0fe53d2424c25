"""Integer partitions, Stirling numbers, falling factorials and Bell polynomials."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .exceptions import DomainError
from .poly import ONE, ZERO, MPoly, poly_sum


@dataclass(frozen=True)
class Partition:
    """An integer partition stored as weakly decreasing parts."""

    parts: Tuple[int, ...]
    multiplicities: Dict[int, int] = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be positive and weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "multiplicities", dict(sorted(Counter(parts).items())))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def multiplicity(self, j: int) -> int:
        return self.multiplicities.get(j, 0)


@lru_cache(maxsize=None)
def _partitions(i: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if i == 0:
        return ((),)
    out = []
    for first in range(min(i, largest), 0, -1):
        for rest in _partitions(i - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(i: int) -> List[Partition]:
    """All partitions of ``i`` in reverse-lexicographic order of parts."""
    if i < 0:
        raise DomainError("cannot partition a negative integer")
    return [Partition(p) for p in _partitions(i, i)]


def partitions_with_length(i: int, k: int) -> List[Partition]:
    return [p for p in partitions(i) if p.length == k]


def d_lambda(lam: Partition) -> int:
    """Number of set partitions of a ``weight``-set with block sizes ``lam``."""
    denom = 1
    for j, r in lam.multiplicities.items():
        denom *= factorial(r) * factorial(j) ** r
    return factorial(lam.weight) // denom


def falling_factorial(c, k: int) -> MPoly:
    """``c (c-1) ... (c-k+1)``; equals 1 for ``k = 0``."""
    if k < 0:
        raise DomainError("falling factorial needs k >= 0")
    return _falling_factorial(MPoly.coerce(c), k)


@lru_cache(maxsize=4096)
def _falling_factorial(c: MPoly, k: int) -> MPoly:
    if k == 0:
        return ONE
    return _falling_factorial(c, k - 1) * (c - (k - 1))


def _check_stirling_args(n: int, k: int):
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"Stirling number needs 0 <= k <= n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def _s1(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _s1(n - 1, k - 1) - (n - 1) * _s1(n - 1, k)


@lru_cache(maxsize=None)
def _s2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _s2(n - 1, k - 1) + k * _s2(n - 1, k)


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind: ``(x)_n = sum_k s(n,k) x^k``."""
    _check_stirling_args(n, k)
    return _s1(n, k)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind: ``x^n = sum_k S(n,k) (x)_k``."""
    _check_stirling_args(n, k)
    return _s2(n, k)


def _monomial(lam: Partition, a: Sequence[MPoly], powers: Dict[Tuple[int, int], MPoly]) -> MPoly:
    out = ONE
    for j, r in lam.multiplicities.items():
        key = (j, r)
        if key not in powers:
            powers[key] = a[j - 1] ** r
        out = out * powers[key]
    return out


def _args(a: Sequence, needed: int) -> List[MPoly]:
    if len(a) < needed:
        raise DomainError(f"Bell polynomial needs {needed} arguments, got {len(a)}")
    return [MPoly.coerce(v) for v in a[:needed]]


def bell_partial(i: int, k: int, a: Sequence) -> MPoly:
    """Exponential partial Bell polynomial ``B_{i,k}(a_1, ..., a_{i-k+1})``.

    ``a[0]`` is ``a_1``.  Computed as the sum over partitions of ``i`` with
    ``k`` parts of ``d_lambda * a_1^r_1 a_2^r_2 ...``; zero when ``k > i``.
    """
    if i < 0 or k < 0:
        raise DomainError("Bell polynomial indices must be nonnegative")
    if k > i:
        return ZERO
    if i == 0:
        return ONE
    if k == 0:
        return ZERO
    args = _args(a, i - k + 1)
    powers: Dict[Tuple[int, int], MPoly] = {}
    return poly_sum(_monomial(lam, args, powers).scale(d_lambda(lam))
                    for lam in partitions_with_length(i, k))


def bell_partial_table(n: int, a: Sequence) -> List[List[MPoly]]:
    """``table[i][k] = B_{i,k}(a)`` for ``0 <= k <= i <= n``.

    Shares monomial products across all entries, which matters when the
    arguments are themselves polynomials.
    """
    args = _args(a, n) if n else []
    powers: Dict[Tuple[int, int], MPoly] = {}
    table = [[ZERO] * (i + 1) for i in range(n + 1)]
    table[0][0] = ONE
    for i in range(1, n + 1):
        acc: Dict[int, list] = {}
        for lam in partitions(i):
            acc.setdefault(lam.length, []).append(_monomial(lam, args, powers).scale(d_lambda(lam)))
        for k, items in acc.items():
            table[i][k] = poly_sum(items)
    return table


def bell_complete(k: int, a: Sequence) -> MPoly:
    """Exponential complete Bell polynomial ``Y_k = sum_j B_{k,j}(a)``."""
    if k < 0:
        raise DomainError("complete Bell polynomial needs k >= 0")
    if k == 0:
        return ONE
    args = _args(a, k)
    return poly_sum(bell_partial(k, j, args) for j in range(1, k + 1))
