"""
Dimension of the base-change subspace at a square-free level N coprime to
the discriminant:

    dim S_k^BC(N O_K) = sum over d | D_K^2 of 2^-|S(d)| (dim S_k^{d-sc,new}(Gamma_0(Nd), omega_d) - CM(N, d))

where S(d) is the set of primes dividing d and the d-sc newspace is cut out
by the representation sigma^{N,new} (x) tau^d. The tau^d come from a
versioned plain-text table (see ``DPartProvider``).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd

from .arith import QuadField, factorize, is_squarefree
from .cm_counting import dim_cm_correction
from .dim_engine import check_weight, dim_from_invariants
from .errors import FormulaNegative, FormulaNonIntegral, MissingDPart, PreconditionViolated
from .invariants import TypeInvariants, gamma0_new_invariants

DPART_FORMAT = "dpart-table v1"
EVEN, ODD = "even", "odd"


@dataclass(frozen=True)
class DPartEntry:
    invariants: TypeInvariants
    parity: str


def parse_fraction(text):
    text = text.strip()
    if "/" in text:
        a, b = text.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(text))


def format_fraction(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DPartProvider:
    """Immutable (D_K, d) -> tau^d table. Hashable, so it can key caches."""

    entries: tuple = ()  # sorted tuple of ((disc, d), DPartEntry)
    source: str = field(default="<memory>", compare=False)

    @classmethod
    def from_mapping(cls, mapping, source="<memory>"):
        return cls(tuple(sorted(mapping.items())), source)

    def as_dict(self):
        return dict(self.entries)

    def entry(self, disc, d):
        for key, value in self.entries:
            if key == (disc, d):
                return value
        raise MissingDPart(f"no d-part entry for D_K={disc}, d={d} in {self.source}")

    def __call__(self, disc, d):
        return self.entry(disc, d).invariants

    def discs(self):
        return sorted({disc for (disc, _), _ in self.entries}, reverse=True)

    def restricted(self, keep):
        """Provider with only the d in ``keep``; used for single-term checks."""
        return DPartProvider(tuple((k, v) for k, v in self.entries if k[1] in keep), self.source)

    @classmethod
    def parse(cls, text, source="<string>"):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != DPART_FORMAT:
            raise ValueError(f"{source}: expected header line '{DPART_FORMAT}'")
        mapping = {}
        for n, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 8:
                raise ValueError(f"{source}: line {n}: expected 8 fields, got {len(parts)}")
            disc, d = int(parts[0]), int(parts[1])
            inv = TypeInvariants(*(parse_fraction(x) for x in parts[2:7]))
            parity = parts[7]
            if parity not in (EVEN, ODD):
                raise ValueError(f"{source}: line {n}: parity must be even or odd")
            if (disc, d) in mapping:
                raise ValueError(f"{source}: line {n}: duplicate entry ({disc}, {d})")
            mapping[(disc, d)] = DPartEntry(inv, parity)
        return cls.from_mapping(mapping, source)

    @classmethod
    def load(cls, path=None):
        if path is None:
            ref = resources.files("bianchidim") / "data" / "dpart_table.txt"
            return cls.parse(ref.read_text(), "built-in d-part table")
        with open(path) as fh:
            return cls.parse(fh.read(), str(path))

    def dumps(self):
        out = [DPART_FORMAT, "# disc d i1 i2 i3 i4 i5 parity"]
        for (disc, d), e in self.entries:
            vals = " ".join(format_fraction(x) for x in e.invariants)
            out.append(f"{disc} {d} {vals} {e.parity}")
        return "\n".join(out) + "\n"


@lru_cache(maxsize=1)
def default_provider():
    return DPartProvider.load()


def _two_part(disc):
    """2-component of the genus decomposition D_K = D_2 * prod p*, with
    p* = (-1)^((p-1)/2) p; D_2 is one of 1, -4, 8, -8."""
    odd = 1
    for p, _ in factorize(abs(disc)):
        if p != 2:
            odd *= p if p % 4 == 1 else -p
    return disc // odd


def _local_char_parity(field, p, v):
    """Parity of the p-component of omega_d when p^v || d; trivial at v = 0
    and at p^2 || d."""
    if v in (0, 2):
        return EVEN
    if p == 2:
        return ODD if _two_part(field.disc) < 0 else EVEN
    return ODD if p % 4 == 3 else EVEN


def discriminant_divisors(field):
    """All d | D_K^2 as (d, |S(d)|, parity of omega_d), sorted by d."""
    out = []
    square = field.disc * field.disc
    divs = [1]
    for p, e in factorize(square):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    for d in sorted(divs):
        odd = 0
        for p, v in factorize(d):
            if _local_char_parity(field, p, v) == ODD:
                odd ^= 1
        out.append((d, len(factorize(d)), ODD if odd else EVEN))
    return out


def _parity_of(k):
    return ODD if k % 2 else EVEN


def check_units(field):
    if field.disc in (-3, -4):
        raise PreconditionViolated("unit group of O_K is {1, -1}", f"D_K={field.disc}")


def _check_coprime(field, N):
    check_units(field)
    if N < 1:
        raise ValueError("level must be positive")
    if gcd(N, field.disc) != 1:
        raise PreconditionViolated("gcd(N, D_K) = 1", f"N={N}, D_K={field.disc}")


def sc_new_space_dim(field, N, d, k, provider=None):
    """dim S_k^{d-sc,new}(Gamma_0(Nd), omega_d); 0 on a parity mismatch."""
    check_weight(k)
    _check_coprime(field, N)
    if (field.disc * field.disc) % d:
        raise PreconditionViolated("d | D_K^2", f"d={d}, D_K={field.disc}")
    provider = provider or default_provider()
    parity = dict((dd, par) for dd, _, par in discriminant_divisors(field))[d]
    if parity != _parity_of(k):
        return 0
    entry = provider.entry(field.disc, d)
    if entry.parity != parity:
        raise ValueError(f"provider parity {entry.parity} for d={d} disagrees with omega_d ({parity})")
    return dim_from_invariants(gamma0_new_invariants(N) * entry.invariants, k)


def basechange_terms(field, N, k, provider=None, only=None):
    """Per-d summands as (d, weight 2^-|S(d)|, sc_dim, cm) tuples; ``only``
    restricts the sum to the given d."""
    provider = provider or default_provider()
    terms = []
    for d, s, parity in discriminant_divisors(field):
        if only is not None and d not in only:
            continue
        sc = sc_new_space_dim(field, N, d, k, provider)
        # CM forms carry the nebentypus omega_d too, so the parity filter applies
        cm = dim_cm_correction(field, N, d) if parity == _parity_of(k) else 0
        if cm > sc:
            raise FormulaNegative(f"CM correction {cm} exceeds d-sc newspace {sc} at d={d}")
        terms.append((d, Fraction(1, 2**s), sc, cm))
    return terms


def _check_basechange(field, N):
    _check_coprime(field, N)
    if not is_squarefree(N):
        raise PreconditionViolated("N square-free", f"N={N}")
    if field.class_number % 2 == 0:
        raise PreconditionViolated("h_K odd", f"h_K={field.class_number}")


def _dim_basechange(field, N, k, provider, only=None):
    total = sum((w * (sc - cm) for _, w, sc, cm in basechange_terms(field, N, k, provider, only)), Fraction(0))
    if total.denominator != 1:
        raise FormulaNonIntegral(f"base-change sum gave {total} at D_K={field.disc}, N={N}, k={k}")
    if total < 0:
        raise FormulaNegative(f"base-change sum gave {total} at D_K={field.disc}, N={N}, k={k}")
    return int(total)


@lru_cache(maxsize=65536)
def _dim_basechange_cached(field, N, k, provider, only):
    return _dim_basechange(field, N, k, provider, only)


def dim_basechange(field, N, k, provider=None, use_cache=True, only=None):
    """dim S_k^BC(N O_K) for square-free N coprime to D_K and odd h_K.

    The cache is keyed by value (the field, N, k and the whole provider) and
    is only an optimization; ``use_cache=False`` bypasses it.
    """
    check_weight(k)
    _check_basechange(field, N)
    provider = provider or default_provider()
    only = None if only is None else frozenset(only)
    if use_cache:
        return _dim_basechange_cached(field, N, k, provider, only)
    return _dim_basechange(field, N, k, provider, only)


def clear_cache():
    _dim_basechange_cached.cache_clear()


__all__ = [
    "DPartEntry",
    "DPartProvider",
    "QuadField",
    "basechange_terms",
    "clear_cache",
    "default_provider",
    "dim_basechange",
    "discriminant_divisors",
    "sc_new_space_dim",
]
