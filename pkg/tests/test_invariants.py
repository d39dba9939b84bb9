from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bianchidim.arith import factorize
from bianchidim.invariants import (
    MAX_EXPONENT,
    ONE,
    TypeInvariants,
    combine_product,
    combine_sum,
    gamma0_invariants,
    gamma0_new_invariants,
    lambda_cond,
    sigma_prime_power,
    sigma_prime_power_new,
    verify_new_recursion,
)

PRIMES = [2, 3, 5, 7, 11, 13, 19, 23]
inv_strategy = st.builds(TypeInvariants, *(st.fractions(max_denominator=6, min_value=-50, max_value=50) for _ in range(5)))


def test_values_are_fractions():
    t = TypeInvariants(1, 2, 3, 4, 5)
    assert all(isinstance(x, Fraction) for x in t)
    assert TypeInvariants.of([1, 2, 3, 4, 5]) == t == TypeInvariants.of(1, 2, 3, 4, 5)


@given(inv_strategy, inv_strategy, inv_strategy)
def test_algebra(a, b, c):
    assert combine_sum(a, b) == combine_sum(b, a)
    assert (a * b) * c == a * (b * c)
    assert a * ONE == a
    assert (a + b) - b == a
    assert 2 * a == a + a


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("e", range(0, 7))
def test_new_block_matches_recursion(p, e):
    assert verify_new_recursion(p, e)


def test_level_p_blocks():
    assert sigma_prime_power(7, 1) == TypeInvariants(8, 2, 2, 0, 1)
    assert sigma_prime_power_new(11, 1) == TypeInvariants(10, 0, -2, -2, -1)
    assert sigma_prime_power_new(7, 2) == TypeInvariants(41, 5, -1, 1, 0)


def test_special_small_prime_powers():
    assert sigma_prime_power_new(3, 3).i3 == 1
    assert sigma_prime_power_new(2, 3).i4 == 1
    assert sigma_prime_power_new(3, 4).i3 == 0


def test_lambda():
    assert [lambda_cond(e, 5) for e in range(5)] == [1, 2, 6, 10, 30]


def test_exponent_caps():
    with pytest.raises(ValueError):
        sigma_prime_power(3, -1)
    with pytest.raises(ValueError):
        sigma_prime_power_new(3, MAX_EXPONENT + 1)


def test_combine_product_example():
    # sigma^{2,new} (x) sigma^{3,new}, level 6
    got = combine_product([sigma_prime_power_new(2, 1), sigma_prime_power_new(3, 1)])
    assert got == TypeInvariants(2, 0, 2, 2, 1)
    assert got == gamma0_new_invariants(6)


@given(st.integers(1, 3000), st.integers(1, 3000))
def test_multiplicative_over_coprime_levels(m, n):
    if gcd(m, n) == 1:
        assert gamma0_invariants(m * n) == gamma0_invariants(m) * gamma0_invariants(n)
        assert gamma0_new_invariants(m * n) == gamma0_new_invariants(m) * gamma0_new_invariants(n)


@given(st.integers(1, 5000))
def test_blocks_integral(N):
    assert gamma0_invariants(N).is_integral()
    assert gamma0_new_invariants(N).is_integral()
    assert gamma0_invariants(N).i1 == N * _psi_ratio(N)


def _psi_ratio(N):
    out = Fraction(1)
    for p, _ in factorize(N):
        out *= Fraction(p + 1, p)
    return out


def test_level_validation():
    with pytest.raises(ValueError):
        gamma0_invariants(0)
