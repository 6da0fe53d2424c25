from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umbral_tsh.combinatorics import falling_factorial, stirling1
from umbral_tsh.exceptions import DomainError, SingularInverseError
from umbral_tsh.families import (
    LevySchefferSpec,
    OrdinarySeries,
    boolean_bar_umbra,
    boolean_transform,
    boolean_umbral_identity,
    brownian_umbra,
    charlier_decomposition,
    charlier_polynomial,
    compensated_poisson_umbra,
    free_bar_umbra,
    free_transform,
    free_umbral_identity,
    hermite_family,
    levy_sheffer,
    tsh_from_boolean,
    tsh_from_free,
)
from umbral_tsh.poly import ONE, T, X, poly_sum
from umbral_tsh.tsh import tsh_polynomial
from umbral_tsh.umbra import Umbra, builtin, cumulant_umbra, dot_umbra

import oracles
from conftest import small_rationals


def values(seq):
    return [c.constant_value() for c in seq.coefficients]


def test_hermite_examples():
    fam = hermite_family(8)
    assert fam[0].poly == ONE
    assert fam[2].poly == X ** 2 - T
    assert fam[3].poly == X ** 3 - 3 * T * X
    h = [ONE, X]
    for n in range(1, 8):
        h.append(X * h[n] - T * h[n - 1] * n)
    assert [q.poly for q in fam] == h


def charlier_oracle(k):
    return poly_sum(falling_factorial(X, j) * (-T) ** (k - j) * comb(k, j) for j in range(k + 1))


def test_charlier_examples():
    assert charlier_polynomial(0) == ONE
    assert charlier_polynomial(1) == X - T
    assert charlier_polynomial(1).subs("x", X + T) == X
    assert charlier_polynomial(2).subs("x", X + T) == X ** 2 - X - T
    assert charlier_decomposition(1) == (0, 1)
    assert charlier_decomposition(2) == (0, -1, 1)
    assert charlier_decomposition(0) == (1,)


@pytest.mark.parametrize("k", range(9))
def test_charlier_matches_binomial_oracle(k):
    assert charlier_polynomial(k) == charlier_oracle(k)
    assert charlier_decomposition(k, 8) == tuple(stirling1(k, j) for j in range(k + 1))


def test_base_umbrae_moments():
    b = brownian_umbra(6)
    assert [m.constant_value() for m in b.moments[1:]] == [0, 1, 0, 3, 0, 15]
    assert [m.constant_value() for m in b.moments] == oracles.double_factorial_moments(6)
    p = compensated_poisson_umbra(8)
    # centred Poisson(1): cumulants 0, 1, 1, 1, ...
    expected = [oracles.classical_moment(n, [0] + [1] * 8) for n in range(1, 9)]
    assert [m.constant_value() for m in p.moments[1:]] == expected
    assert expected[:4] == [0, 1, 1, 4]


def touchard_family_oracle(k):
    """k! [z^k] e^{tz} exp(x(e^z - 1)) = sum_j C(k,j) t^(k-j) sum_i S(j,i) x^i."""
    return poly_sum(T ** (k - j) * X ** i * (comb(k, j) * oracles.stirling2(j, i))
                    for j in range(k + 1) for i in range(j + 1))


def test_levy_sheffer_touchard():
    spec = LevySchefferSpec(builtin("unity", 7), builtin("unity", 7))
    assert levy_sheffer(0, spec) == ONE
    assert levy_sheffer(1, spec) == X + T
    for k in range(8):
        assert levy_sheffer(k, spec) == touchard_family_oracle(k)


def test_levy_sheffer_singleton_collapses(rng_umbrae):
    alpha = rng_umbrae[0].truncate(8)
    spec = LevySchefferSpec(alpha, builtin("singleton", 8))
    base = dot_umbra(builtin("bell", 8), cumulant_umbra(alpha))
    for k in range(9):
        assert levy_sheffer(k, spec) == tsh_polynomial(k, base, "plus").poly


def test_levy_sheffer_geometric_quadratic():
    # g(z) = 1/(1 - z), u(z) = z + z^2/2
    spec = LevySchefferSpec(builtin("ubar", 6), Umbra.from_values([1, 1, 0, 0, 0, 0]))
    for k in range(7):
        assert levy_sheffer(k, spec).subs("t", 0).subs("x", 0) == (1 if k == 0 else 0)
    # t = 0: exp(x u(z)); k=2 coefficient is x^2 + x
    assert levy_sheffer(2, spec).subs("t", 0) == X ** 2 + X
    # x = 0: (1 - z)^{-t}; k! [z^k] is the rising factorial
    assert levy_sheffer(3, spec).subs("x", 0) == T * (T + 1) * (T + 2)


def test_levy_sheffer_singular_gamma():
    spec = LevySchefferSpec(builtin("unity", 4), Umbra.from_values([0, 1, 1, 1]))
    with pytest.raises(SingularInverseError):
        levy_sheffer(2, spec)
    with pytest.raises(DomainError):
        LevySchefferSpec(builtin("unity", 4), builtin("unity", 5))


def test_boolean_examples():
    assert values(boolean_transform("to_moments", OrdinarySeries((1,) * 6))) == [1, 2, 4, 8, 16, 32]
    b1 = Fraction(3, 2)
    assert values(boolean_transform("to_moments", OrdinarySeries((b1, 0, 0, 0)))) == [b1 ** n for n in range(1, 5)]
    assert values(boolean_transform("from_moments", OrdinarySeries((0,) * 5))) == [0] * 5


def test_free_examples():
    assert values(free_transform("to_moments", OrdinarySeries((1, 0, 0, 0, 0)))) == [1] * 5
    assert values(free_transform("to_moments", OrdinarySeries((0, 1, 0, 0, 0, 0)))) == [0, 1, 0, 2, 0, 5]
    assert values(free_transform("to_moments", OrdinarySeries((1, 1, 1, 1)))) == [1, 2, 5, 14]


def test_transform_direction_validation():
    with pytest.raises(DomainError):
        free_transform("sideways", OrdinarySeries((1,)))


seqs = st.lists(small_rationals, min_size=6, max_size=6)


@settings(max_examples=30, deadline=None)
@given(seqs)
def test_free_matches_noncrossing_oracle(r):
    got = values(free_transform("to_moments", OrdinarySeries(tuple(r))))
    assert got == [oracles.free_moment(n, r) for n in range(1, 7)]


@settings(max_examples=30, deadline=None)
@given(seqs)
def test_boolean_matches_interval_oracle(b):
    got = values(boolean_transform("to_moments", OrdinarySeries(tuple(b))))
    assert got == [oracles.boolean_moment(n, b) for n in range(1, 7)]


@settings(max_examples=30, deadline=None)
@given(st.lists(small_rationals, min_size=1, max_size=10))
def test_transforms_round_trip(c):
    s = OrdinarySeries(tuple(c))
    for transform in (boolean_transform, free_transform):
        assert transform("from_moments", transform("to_moments", s)) == s
        assert transform("to_moments", transform("from_moments", s)) == s


def test_free_round_trip_symbolic():
    s = OrdinarySeries((T, X, T * X, ONE, T ** 2))
    assert free_transform("from_moments", free_transform("to_moments", s)) == s


@settings(max_examples=20, deadline=None)
@given(seqs)
def test_umbral_identities(c):
    assert boolean_bar_umbra(c) == boolean_umbral_identity(c)
    assert free_bar_umbra(c) == free_umbral_identity(c)


def test_tsh_from_boolean_examples():
    fam = tsh_from_boolean([1, 0, 0, 0, 0])
    assert [m.constant_value() for m in fam.alpha.moments] == [factorial(n) for n in range(6)]
    assert fam[1].poly == X - T
    zero = tsh_from_boolean([0] * 4)
    assert all(q.poly == X ** q.k for q in zero)


def test_tsh_from_free_examples():
    fam = tsh_from_free([0, 1, 0, 0])
    assert [m.constant_value() for m in fam.alpha.moments] == [1, 0, 2, 0, 48]
    assert fam[1].poly == X
    assert fam[2].poly == X ** 2 - 2 * T
    zero = tsh_from_free([0] * 4)
    assert all(q.poly == X ** q.k for q in zero)
