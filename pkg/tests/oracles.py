"""Brute-force reference computations, independent of the package internals."""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial


def set_partitions(n):
    """All set partitions of {0..n-1} as lists of blocks."""
    if n == 0:
        yield []
        return
    for rest in set_partitions(n - 1):
        yield rest + [[n - 1]]
        for i in range(len(rest)):
            yield rest[:i] + [rest[i] + [n - 1]] + rest[i + 1:]


def bell_number(n):
    return sum(1 for _ in set_partitions(n))


def stirling2(n, k):
    return sum(1 for p in set_partitions(n) if len(p) == k)


@lru_cache(maxsize=None)
def partition_count(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        return 1
    return sum(partition_count(n - p, p) for p in range(1, min(n, largest) + 1))


def partitions_brute(n):
    """Partitions of n as sorted-descending tuples, by exhaustive filtering."""
    found = set()

    def rec(rest, parts):
        if rest == 0:
            found.add(tuple(sorted(parts, reverse=True)))
            return
        for p in range(1, rest + 1):
            rec(rest - p, parts + [p])

    rec(n, [])
    return found


def is_noncrossing(blocks):
    for a, b in combinations(blocks, 2):
        for i, j in combinations(sorted(a), 2):
            for k, l in combinations(sorted(b), 2):
                if i < k < j < l or k < i < l < j:
                    return False
    return True


def free_moment(n, r):
    """m_n = sum over non-crossing partitions of prod r_{|block|}; r[0] is r_1."""
    total = 0
    for p in set_partitions(n):
        if is_noncrossing(p):
            term = 1
            for block in p:
                term *= r[len(block) - 1]
            total += term
    return total


def classical_moment(n, h):
    """m_n = sum over all set partitions of prod h_{|block|}."""
    total = 0
    for p in set_partitions(n):
        term = 1
        for block in p:
            term *= h[len(block) - 1]
        total += term
    return total


def boolean_moment(n, b):
    """m_n = sum over interval partitions (compositions) of prod b_part."""
    total = 0
    for cuts in range(1 << max(n - 1, 0)):
        sizes, run = [], 1
        for i in range(n - 1):
            if cuts >> i & 1:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        term = 1
        for s in sizes:
            term *= b[s - 1]
        total += term
    return total


def moment_to_cumulant_recursion(m):
    """Classical cumulants from moments m[0..N] via k_n = m_n - sum C(n-1,i-1) k_i m_{n-i}."""
    k = [0]
    for n in range(1, len(m)):
        k.append(m[n] - sum(comb(n - 1, i - 1) * k[i] * m[n - i] for i in range(1, n)))
    return k[1:]


def double_factorial_moments(n):
    return [0 if i % 2 else (factorial(i) // (2 ** (i // 2) * factorial(i // 2))) for i in range(n + 1)]


def expand_product(factors):
    """Coefficient list (ascending) of a product of (c0 + c1 x) linear factors."""
    out = [Fraction(1)]
    for c0, c1 in factors:
        new = [Fraction(0)] * (len(out) + 1)
        for i, v in enumerate(out):
            new[i] += v * c0
            new[i + 1] += v * c1
        out = new
    return out
