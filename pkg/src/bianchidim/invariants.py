"""
The five invariants of a level-structure representation and their calculus.

A representation sigma of SL(2, Z/N) enters the trace form for
``dim Hom(S_k(Gamma(N)), sigma)`` only through

    i1 = dim sigma            i2 = dim of the unipotent-fixed part
    i3 = trace of an order-3 element
    i4 = trace of an order-4 element
    i5 = dim of the invariants

Invariants are additive in direct sums and multiplicative in tensor products
over coprime prime-power levels, so everything is built from prime-power
blocks.
"""
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import reduce

from .arith import factorize, kronecker

MAX_EXPONENT = 64


@dataclass(frozen=True)
class TypeInvariants:
    i1: Fraction
    i2: Fraction
    i3: Fraction
    i4: Fraction
    i5: Fraction

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))

    @classmethod
    def of(cls, *values):
        if len(values) == 1:
            values = tuple(values[0])
        return cls(*values)

    def as_tuple(self):
        return (self.i1, self.i2, self.i3, self.i4, self.i5)

    def __iter__(self):
        return iter(self.as_tuple())

    def __add__(self, other):
        return TypeInvariants(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return TypeInvariants(*(a - b for a, b in zip(self, other)))

    def __mul__(self, other):
        if isinstance(other, TypeInvariants):
            return TypeInvariants(*(a * b for a, b in zip(self, other)))
        return TypeInvariants(*(a * other for a in self))

    __rmul__ = __mul__

    def is_integral(self):
        return all(x.denominator == 1 for x in self)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self) + ")"


ONE = TypeInvariants(1, 1, 1, 1, 1)
ZERO = TypeInvariants(0, 0, 0, 0, 0)


def _check(p, e):
    if e < 0:
        raise ValueError(f"exponent must be non-negative, got {e}")
    if e > MAX_EXPONENT:
        raise ValueError(f"exponent {e} exceeds cap {MAX_EXPONENT}")


def lambda_cond(e, p):
    """Cusp-count factor lambda(e, 0, p) for Gamma_0(p^e)."""
    _check(p, e)
    if e == 0:
        return 1
    n, odd = divmod(e, 2)
    if odd:
        return 2 * p**n
    return p**n + p ** (n - 1)


def sigma_prime_power(p, e):
    """Invariants of the representation defining S_k(Gamma_0(p^e))."""
    _check(p, e)
    if e == 0:
        return ONE
    i1 = p ** (e - 1) * (p + 1)
    i2 = lambda_cond(e, p)
    if p == 3:
        i3 = 1 if e == 1 else 0
    else:
        i3 = 1 + kronecker(-3, p)
    if p == 2:
        i4 = 1 if e == 1 else 0
    else:
        i4 = 1 + kronecker(-1, p)
    return TypeInvariants(i1, i2, i3, i4, 1)


def sigma_prime_power_new(p, e):
    """Invariants of the representation defining the new subspace of
    S_k(Gamma_0(p^e)), from the closed-form case lists."""
    _check(p, e)
    if e == 0:
        return ONE
    q = p**e
    if e == 1:
        i1 = p - 1
    elif e == 2:
        i1 = p * p - p - 1
    else:
        i1 = p ** (e - 3) * (p - 1) ** 2 * (p + 1)

    if e % 2:
        i2 = 0
    elif e == 2:
        i2 = p - 2
    else:
        i2 = p ** (e // 2 - 2) * (p - 1) ** 2

    if q == 27:
        i3 = 1
    elif q in (3, 9):
        i3 = -1
    elif e == 1:
        i3 = kronecker(-3, p) - 1
    elif e == 2:
        i3 = -kronecker(-3, p)
    else:
        i3 = 0

    if q == 8:
        i4 = 1
    elif q in (2, 4):
        i4 = -1
    elif e == 1:
        i4 = kronecker(-1, p) - 1
    elif e == 2:
        i4 = -kronecker(-1, p)
    else:
        i4 = 0

    i5 = -1 if e == 1 else 0
    return TypeInvariants(i1, i2, i3, i4, i5)


def verify_new_recursion(p, e):
    """Check the closed-form new block against old-block inclusion-exclusion:
    new(e) = full(e) - 2 full(e-1) + full(e-2). Test oracle only."""
    _check(p, e)

    def full(j):
        return sigma_prime_power(p, j) if j >= 0 else ZERO

    rhs = full(e) - 2 * full(e - 1) + full(e - 2)
    return sigma_prime_power_new(p, e) == rhs


def combine_product(parts):
    return reduce(lambda a, b: a * b, parts, ONE)


def combine_sum(a, b):
    return a + b


def gamma0_invariants(N):
    if N < 1:
        raise ValueError("level must be positive")
    return combine_product(sigma_prime_power(p, e) for p, e in factorize(N))


def gamma0_new_invariants(N):
    if N < 1:
        raise ValueError("level must be positive")
    return combine_product(sigma_prime_power_new(p, e) for p, e in factorize(N))
