"""
Independent closed-form dimensions of S_k(Gamma_0(M), chi) for quadratic chi.

This is the Cohen-Oesterle formula with the elliptic point sums evaluated by
brute-force enumeration of residues. It shares no code with the trace-form
path in :mod:`bianchidim.dim_engine` and is used to cross-check it and to fit
its constants.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import factorize, is_fundamental_discriminant, kronecker


def quadratic_character_disc(conductor):
    """Fundamental discriminant of the quadratic character of the given
    conductor, or 1 for the trivial character.

    Only conductors with a unique primitive quadratic character are
    accepted (odd square-free, or 4 times one, or 8 when unambiguous is
    never the case), matching the omega_d family.
    """
    if conductor == 1:
        return 1
    if conductor % 2 == 0:
        if conductor % 8 == 4 and is_fundamental_discriminant(-conductor):
            odd = conductor // 4
            star = _odd_star(odd) if odd > 1 else 1
            return -4 * star if star > 0 else 4 * -star
        raise ValueError(f"no unique quadratic character of conductor {conductor}")
    star = _odd_star(conductor)
    if not is_fundamental_discriminant(star):
        raise ValueError(f"no primitive quadratic character of conductor {conductor}")
    return star


def _odd_star(m):
    star = 1
    for p, e in factorize(m):
        if e != 1:
            raise ValueError(f"conductor {m} is not square-free")
        star *= p if p % 4 == 1 else -p
    return star


def character_parity(conductor):
    """+1 for even characters, -1 for odd ones."""
    D = quadratic_character_disc(conductor)
    return 1 if D > 0 else -1


def _psi(M):
    out = M
    for p, _ in factorize(M):
        out = out // p * (p + 1)
    return out


def _lam(r, s, p):
    if r == 0:
        return 1
    if 2 * s <= r:
        half, odd = divmod(r, 2)
        return 2 * p**half if odd else p**half + p ** (half - 1)
    return 2 * p ** (r - s)


@lru_cache(maxsize=None)
def _root_sums(M, D):
    s3 = s4 = 0
    for x in range(M):
        if gcd(x, M) != 1:
            continue
        chi = 1 if D == 1 else kronecker(D, x)
        if (x * x + 1) % M == 0:
            s4 += chi
        if (x * x + x + 1) % M == 0:
            s3 += chi
    return s3, s4


def _gamma3(k):
    return {0: Fraction(1, 3), 1: Fraction(0), 2: Fraction(-1, 3)}[k % 3]


def _gamma4(k):
    if k % 2:
        return Fraction(0)
    return Fraction(1, 4) if k % 4 == 0 else Fraction(-1, 4)


def oracle_dim_gamma0_chi(M, chi_conductor, k):
    """dim S_k(Gamma_0(M), omega_f) with f = chi_conductor dividing M."""
    if k < 2:
        raise ValueError("weight must be >= 2")
    if M % chi_conductor:
        raise ValueError(f"conductor {chi_conductor} does not divide level {M}")
    D = quadratic_character_disc(chi_conductor)
    parity = 1 if D > 0 else -1
    if parity != (-1) ** k:
        return 0
    value = Fraction(k - 1, 12) * _psi(M)
    lam = 1
    for p, r in factorize(M):
        s = 0
        f = chi_conductor
        while f % p == 0:
            f //= p
            s += 1
        lam *= _lam(r, s, p)
    value -= Fraction(lam, 2)
    s3, s4 = _root_sums(M, D)
    value += _gamma4(k) * s4 + _gamma3(k) * s3
    if k == 2 and chi_conductor == 1:
        value += 1
    assert value.denominator == 1 and value >= 0, (M, chi_conductor, k, value)
    return int(value)


def _beta(n):
    out = 1
    for p, e in factorize(n):
        if e == 1:
            out *= -2
        elif e >= 3:
            return 0
    return out


def oracle_dim_new(M, chi_conductor, k):
    """New subspace dimension by inclusion-exclusion over levels carrying the
    character: sum over M' with f | M' | M of beta(M/M') dim S_k(M')."""
    total = 0
    for p_e in _divisors(M):
        Mp = M // p_e
        if Mp % chi_conductor:
            continue
        b = _beta(p_e)
        if b:
            total += b * oracle_dim_gamma0_chi(Mp, chi_conductor, k)
    return total


def _divisors(n):
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return divs
