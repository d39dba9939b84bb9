from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bianchidim.arith import (
    QuadField,
    SplittingType,
    class_number,
    divisors,
    factorize,
    is_fundamental_discriminant,
    is_prime,
    is_squarefree,
    kronecker,
    mobius,
    radical,
    reduced_forms,
    splitting_type,
    valuation,
)


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def test_small_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_large_prime_and_carmichael():
    assert is_prime(1_000_000_007)
    assert not is_prime(561)
    assert not is_prime(3_215_031_751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_roundtrip(n):
    fac = factorize(n)
    prod = 1
    for p, e in fac:
        assert is_prime(p) and e >= 1
        prod *= p**e
    assert prod == n
    assert [p for p, _ in fac] == sorted(p for p, _ in fac)


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(min_value=1, max_value=5000))
def test_divisors_and_mobius(n):
    ds = divisors(n)
    assert all(n % d == 0 for d in ds)
    assert len(ds) == len(set(ds))
    assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)
    assert is_squarefree(n) == (radical(n) == n)


def test_valuation():
    assert valuation(48, 2) == 4
    with pytest.raises(ValueError):
        valuation(0, 2)


@given(st.integers(min_value=-500, max_value=500), st.sampled_from([3, 5, 7, 11, 13, 19, 43, 97]))
def test_kronecker_is_legendre_at_odd_primes(a, p):
    assert kronecker(a, p) == legendre(a, p)


@given(st.integers(-200, 200), st.integers(-200, 200), st.integers(1, 300))
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-200, 200), st.integers(1, 100), st.integers(1, 100))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_at_two_and_zero():
    assert [kronecker(a, 2) for a in (1, 3, 5, 7, 4)] == [1, -1, -1, 1, 0]
    with pytest.raises(ValueError):
        kronecker(3, 0)


def test_fundamental_discriminants():
    assert [D for D in range(-30, 0) if is_fundamental_discriminant(D)] == [
        -24, -23, -20, -19, -15, -11, -8, -7, -4, -3
    ]


@pytest.mark.parametrize(
    "D,h",
    [(-3, 1), (-4, 1), (-7, 1), (-11, 1), (-19, 1), (-43, 1), (-67, 1), (-163, 1), (-23, 3), (-15, 2), (-20, 2), (-47, 5), (-71, 7)],
)
def test_class_numbers(D, h):
    assert class_number(D) == h


def test_class_number_rejects_nonfundamental():
    with pytest.raises(ValueError):
        class_number(-12)


def test_reduced_forms_have_discriminant():
    for D in (-23, -47, -71, -104):
        for a, b, c in reduced_forms(D):
            assert b * b - 4 * a * c == D and abs(b) <= a <= c and gcd(gcd(a, b), c) == 1


def test_quadfield_validation_and_splitting():
    f = QuadField.from_disc(-19)
    assert f.class_number == 1 and f.rad_disc == 19
    assert splitting_type(f, 19) is SplittingType.RAMIFIED
    assert splitting_type(f, 7) is SplittingType.SPLIT
    assert splitting_type(f, 2) is SplittingType.INERT
    assert not SplittingType.RAMIFIED.unramified and SplittingType.SPLIT.unramified
    with pytest.raises(ValueError):
        QuadField(-12, 1)
    with pytest.raises(ValueError):
        QuadField(5, 1)
    with pytest.raises(ValueError):
        splitting_type(f, 9)
