"""
Elementary exact number theory: Kronecker symbols, factorization,
fundamental discriminants and class numbers of imaginary quadratic fields.

Everything works on Python integers, so there is no overflow anywhere.
"""
import enum
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

# Deterministic Miller-Rabin bases, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 10**6


def is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    if n < _TRIAL_LIMIT:
        f = 17
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def _factorize(n):
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    step = 2
    while f * f <= n:
        if n > _TRIAL_LIMIT and is_prime(n):
            break
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n):
    """Return the factorization of ``n >= 1`` as a list of ``(prime, exponent)``
    with strictly increasing primes."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    return list(_factorize(n))


def prime_divisors(n):
    return [p for p, _ in factorize(abs(n))] if n else []


def radical(n):
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def is_squarefree(n):
    return all(e == 1 for _, e in factorize(n))


def divisors(n):
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def valuation(n, p):
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def mobius(n):
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def kronecker(a, n):
    """Kronecker symbol (a/n).

    Completely multiplicative in both arguments and equal to the Legendre
    symbol when n is an odd prime.
    """
    if n == 0:
        raise ValueError("kronecker symbol (a/0) is not supported")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor of 2 in n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D):
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


@lru_cache(maxsize=1024)
def _reduced_forms(D):
    forms = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            forms.append((a, b, c))
    return tuple(forms)


def reduced_forms(D):
    """Reduced primitive positive definite forms (a, b, c) with b^2 - 4ac = D,
    |b| <= a <= c and b >= 0 whenever |b| = a or a = c."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"not a negative discriminant: {D}")
    return [f for f in _reduced_forms(D) if gcd(gcd(f[0], f[1]), f[2]) == 1]


def class_number(D):
    """Class number of the imaginary quadratic field of discriminant ``D``,
    by counting reduced forms."""
    if D >= 0 or not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    return len(reduced_forms(D))


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"

    @property
    def unramified(self):
        return self is not SplittingType.RAMIFIED


@dataclass(frozen=True)
class QuadField:
    """An imaginary quadratic field, identified by its discriminant."""

    disc: int
    class_number: int

    def __post_init__(self):
        if self.disc >= 0 or not is_fundamental_discriminant(self.disc):
            raise ValueError(f"{self.disc} is not a negative fundamental discriminant")
        if self.class_number < 1:
            raise ValueError("class number must be positive")

    @classmethod
    def from_disc(cls, disc):
        return cls(disc, class_number(disc))

    @property
    def rad_disc(self):
        return radical(-self.disc)

    def splitting(self, p):
        return splitting_type(self, p)

    def __str__(self):
        return f"Q(sqrt({self.disc if self.disc % 4 else self.disc // 4}))"


def splitting_type(field, p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = kronecker(field.disc, p)
    if k == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if k == 1 else SplittingType.INERT
