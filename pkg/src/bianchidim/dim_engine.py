"""
Trace-form evaluation of classical cusp form dimensions.

``dim_from_invariants`` evaluates

    (k-1)/12 i1 - 1/2 i2 + eps_k i3 + mu_k i4 + [k == 2] i5

exactly. The elliptic constants were fitted against the independent
closed-form oracle in :mod:`bianchidim.oracle`; ``bianchidim.derive``
re-runs that fit and must reproduce the tables below with zero residual.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FormulaNegative, FormulaNonIntegral
from .invariants import TypeInvariants, gamma0_invariants, gamma0_new_invariants


@dataclass(frozen=True)
class EllipticConstants:
    eps: dict = field(default_factory=dict)  # k mod 3 -> Fraction
    mu: dict = field(default_factory=dict)  # k mod 4 -> Fraction

    def eps_k(self, k):
        return self.eps[k % 3]

    def mu_k(self, k):
        return self.mu[k % 4]


# mu for odd k multiplies Tr sigma(S_4), which vanishes for every sigma with
# sigma(-1) = -1 and real character; it is unidentifiable and fixed at 0.
ELLIPTIC = EllipticConstants(
    eps={0: Fraction(1, 3), 1: Fraction(0), 2: Fraction(-1, 3)},
    mu={0: Fraction(1, 4), 1: Fraction(0), 2: Fraction(-1, 4), 3: Fraction(0)},
)


def check_weight(k):
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"weight must be an integer >= 2, got {k!r}")


def trace_form(inv, k, constants=ELLIPTIC):
    """Exact rational value of the trace form; no integrality checks."""
    check_weight(k)
    inv = inv if isinstance(inv, TypeInvariants) else TypeInvariants.of(inv)
    value = (
        Fraction(k - 1, 12) * inv.i1
        - Fraction(1, 2) * inv.i2
        + constants.eps_k(k) * inv.i3
        + constants.mu_k(k) * inv.i4
    )
    if k == 2:
        value += inv.i5
    return value


def dim_from_invariants(inv, k, constants=ELLIPTIC):
    value = trace_form(inv, k, constants)
    if value.denominator != 1:
        raise FormulaNonIntegral(f"trace form gave {value} for {inv} at k={k}")
    if value < 0:
        raise FormulaNegative(f"trace form gave {value} for {inv} at k={k}")
    return int(value)


def dim_cusp_gamma0(N, k):
    """dim S_k(Gamma_0(N)); zero for odd k (trivial character)."""
    check_weight(k)
    if k % 2:
        return 0
    return dim_from_invariants(gamma0_invariants(N), k)


def dim_new_gamma0(N, k):
    check_weight(k)
    if k % 2:
        return 0
    return dim_from_invariants(gamma0_new_invariants(N), k)
