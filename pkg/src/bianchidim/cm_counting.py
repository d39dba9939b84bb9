"""
Counts of classical CM newforms whose base change to K is Eisenstein.

Only the number of compatible Hecke-character choices matters, and that is a
product of local counts over the prime powers exactly dividing N*d. Nothing
here depends on the weight.
"""
from dataclasses import dataclass
from math import gcd

from .arith import QuadField, SplittingType, factorize, is_squarefree, splitting_type
from .errors import PreconditionViolated


@dataclass(frozen=True)
class CmLocalInput:
    p: int
    t: int
    splitting: SplittingType

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("exponent t must be non-negative")


def cm_local_count(inp):
    p, t, kind = inp.p, inp.t, inp.splitting
    if t == 0:
        return 1
    if t == 1:
        return 1 if kind is SplittingType.RAMIFIED else 0
    if t == 2:
        if kind is SplittingType.RAMIFIED:
            return 1
        return p - 2 if kind is SplittingType.SPLIT else p
    n, odd = divmod(t, 2)
    if odd:
        return 0
    # t = 2n >= 4; a ramified prime cannot reach this exponent in N*d
    if kind is SplittingType.SPLIT:
        return p**n * (p - 1) ** 2
    if kind is SplittingType.INERT:
        return p**n * (p * p - 1)
    return 0


def _check(field, N, d):
    if N < 1 or d < 1:
        raise ValueError("N and d must be positive")
    if gcd(N, field.disc) != 1:
        raise PreconditionViolated("gcd(N, D_K) = 1", f"N={N}, D_K={field.disc}")
    if (field.disc * field.disc) % d:
        raise PreconditionViolated("d | D_K^2", f"d={d}, D_K={field.disc}")


def dim_cm_correction(field, N, d):
    """Product of local CM counts over p^t || N*d.

    A CM form by K has level |D_K| * Nm(conductor), so the count is 0 unless
    |D_K| divides N*d; the local product alone would return 1 at d = 1.
    """
    _check(field, N, d)
    if (N * d) % field.disc:
        return 0
    out = 1
    for p, t in factorize(N * d):
        out *= cm_local_count(CmLocalInput(p, t, splitting_type(field, p)))
        if out == 0:
            break
    return out


def cm_unverified(N, d):
    """True when the local table is applied at p = 2 with t >= 1; the case
    analysis behind it only covers odd residue characteristic."""
    return (N * d) % 2 == 0


def squarefree_specialization(field, N, d):
    _check(field, N, d)
    if not is_squarefree(N):
        raise PreconditionViolated("N square-free", f"N={N}")
    return 1 if N == 1 and d % field.rad_disc == 0 else 0


def verify_squarefree_specialization(field, N, d):
    return dim_cm_correction(field, N, d) == squarefree_specialization(field, N, d)


__all__ = [
    "CmLocalInput",
    "QuadField",
    "cm_local_count",
    "cm_unverified",
    "dim_cm_correction",
    "squarefree_specialization",
    "verify_squarefree_specialization",
]
