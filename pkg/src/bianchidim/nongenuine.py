"""
Non-genuine dimensions: base change, its twists, and CM forms.

* square-free N coprime to D_K, odd h_K:  nG = h_K * BC, of which
  (h_K - 1) * BC are twists and nothing is CM;
* the ramified prime P with P^2 = (p), D_K = -p, h_K = 1:
  nG(P) = dim S_k^new(Gamma_0(p)) and nG(P^2) from the four local-type rows
  below, each weighted by a multiplicity from a config table.

The rows depend on the traces SC_3(p), SC_4(p) of the order-3 and order-4
elements on the twist-invariant depth-zero supercuspidal; those live in a
versioned plain-text table produced by ``bianchidim.derive``.
"""
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from .arith import QuadField, is_prime, kronecker
from .basechange import check_units, default_provider, dim_basechange, format_fraction, parse_fraction
from .cm_counting import cm_unverified, dim_cm_correction
from .dim_engine import check_weight, dim_new_gamma0, trace_form
from .errors import FormulaNegative, FormulaNonIntegral, MissingScConstants, PreconditionViolated
from .invariants import TypeInvariants, gamma0_new_invariants
from .oracle import oracle_dim_gamma0_chi

SC_FORMAT = "sc-table v1"
MULT_FORMAT = "psquared-multiplicities v1"
FITTED_NOTE = "P^2 row multiplicities fitted, not transcribed"
P2_CM_NOTE = "CM table applied at p = 2, unverified"


def cps(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return -2 if p % 3 == 1 else 0


# -- supercuspidal traces -------------------------------------------------


@dataclass(frozen=True)
class ScConstants:
    p: int
    sc3: Fraction
    sc4: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sc3", Fraction(self.sc3))
        object.__setattr__(self, "sc4", Fraction(self.sc4))


@dataclass(frozen=True)
class ScTable:
    entries: tuple = ()  # sorted ScConstants
    source: str = field(default="<memory>", compare=False)

    @classmethod
    def from_entries(cls, entries, source="<memory>"):
        return cls(tuple(sorted(entries, key=lambda e: e.p)), source)

    def get(self, p):
        for e in self.entries:
            if e.p == p:
                return e
        raise MissingScConstants(f"no SC constants for p={p} in {self.source}")

    @classmethod
    def parse(cls, text, source="<string>"):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != SC_FORMAT:
            raise ValueError(f"{source}: expected header line '{SC_FORMAT}'")
        seen = {}
        for n, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{source}: line {n}: expected 3 fields")
            p = int(parts[0])
            if p in seen:
                raise ValueError(f"{source}: line {n}: duplicate p={p}")
            seen[p] = ScConstants(p, parse_fraction(parts[1]), parse_fraction(parts[2]))
        return cls.from_entries(seen.values(), source)

    @classmethod
    def load(cls, path=None):
        if path is None:
            ref = resources.files("bianchidim") / "data" / "sc_table.txt"
            return cls.parse(ref.read_text(), "built-in SC table")
        with open(path) as fh:
            return cls.parse(fh.read(), str(path))

    def dumps(self):
        out = [SC_FORMAT, "# p SC_3 SC_4"]
        out += [f"{e.p} {format_fraction(e.sc3)} {format_fraction(e.sc4)}" for e in self.entries]
        return "\n".join(out) + "\n"


@lru_cache(maxsize=1)
def default_sc_table():
    return ScTable.load()


# -- level P^2 rows -------------------------------------------------------


class RowKind(enum.Enum):
    PRINCIPAL_OMEGA_OMEGA = "principal_omega_omega"
    PRINCIPAL_ETA_ETA = "principal_eta_eta"
    TWISTED_STEINBERG = "twisted_steinberg"
    SUPERCUSPIDAL = "supercuspidal"


@dataclass(frozen=True)
class PSquaredRow:
    kind: RowKind
    invariants: TypeInvariants


def printed_rows(p, sc, h=1):
    """The four rows exactly as published."""
    s3, s4 = kronecker(-3, p), kronecker(-1, p)
    half = Fraction(1, 2)
    return [
        PSquaredRow(RowKind.PRINCIPAL_OMEGA_OMEGA, TypeInvariants(Fraction(p + 1, 2), p - 3, 1 + half * sc.sc3, 0, 0)),
        PSquaredRow(RowKind.PRINCIPAL_ETA_ETA, TypeInvariants(Fraction((p - 3) * (p + 1), 2), 1 + h, cps(p), 1 + half * sc.sc4, 0)),
        PSquaredRow(RowKind.TWISTED_STEINBERG, TypeInvariants(p - 1, 0, s3 - 1, s4 - 1, -1)),
        PSquaredRow(
            RowKind.SUPERCUSPIDAL,
            TypeInvariants(Fraction((p - 3) * (p - 1), 2), p - 2 + h, -2 * s3 - cps(p) - sc.sc3, -1 - half * s4, 0),
        ),
    ]


def reconstructed_rows(p, sc, h=1):
    """Rows rebuilt from the local-type decomposition of the level p^2 new
    space. The first row is the level-one twist plus half the twist-invariant
    supercuspidal, which is where its half-integral traces come from."""
    s3, s4 = kronecker(-3, p), kronecker(-1, p)
    tau_p2 = TypeInvariants(p - 1, 0, sc.sc3, sc.sc4, 0)
    return [
        PSquaredRow(RowKind.PRINCIPAL_OMEGA_OMEGA, TypeInvariants(1, 1, 1, 1, 1) + Fraction(1, 2) * tau_p2),
        PSquaredRow(RowKind.PRINCIPAL_ETA_ETA, TypeInvariants(Fraction((p - 3) * (p + 1), 2), p - 3, cps(p), 0, 0)),
        PSquaredRow(RowKind.TWISTED_STEINBERG, TypeInvariants(p - 1, 0, s3 - 1, s4 - 1, -1)),
        PSquaredRow(
            RowKind.SUPERCUSPIDAL,
            TypeInvariants(Fraction((p - 3) * (p - 1), 2), 0, -2 * s3 - cps(p) - sc.sc3, 2 - sc.sc4, 0),
        ),
    ]


ROW_BUILDERS = {"printed": printed_rows, "reconstructed": reconstructed_rows}


@dataclass(frozen=True)
class Multiplicities:
    variant: str
    rows: tuple  # ((RowKind, Fraction), ...) in RowKind order
    cm: Fraction

    def of(self, kind):
        return dict(self.rows)[kind]

    @classmethod
    def parse(cls, text, source="<string>"):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0] != MULT_FORMAT:
            raise ValueError(f"{source}: expected header line '{MULT_FORMAT}'")
        variant, cm, rows = None, None, {}
        for n, line in enumerate(lines[1:], start=2):
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{source}: line {n}: expected 'key value'")
            key, val = parts
            if key == "variant":
                if val not in ROW_BUILDERS:
                    raise ValueError(f"{source}: line {n}: unknown variant {val}")
                variant = val
            elif key == "cm":
                cm = parse_fraction(val)
            else:
                try:
                    rows[RowKind(key)] = parse_fraction(val)
                except ValueError:
                    raise ValueError(f"{source}: line {n}: unknown row {key}") from None
        missing = [k.value for k in RowKind if k not in rows]
        if variant is None or cm is None or missing:
            raise ValueError(f"{source}: incomplete config (missing {missing or 'variant/cm'})")
        return cls(variant, tuple((k, rows[k]) for k in RowKind), cm)

    @classmethod
    def load(cls, path=None):
        if path is None:
            ref = resources.files("bianchidim") / "data" / "psquared_multiplicities.txt"
            return cls.parse(ref.read_text(), "built-in multiplicities")
        with open(path) as fh:
            return cls.parse(fh.read(), str(path))


@lru_cache(maxsize=1)
def default_multiplicities():
    return Multiplicities.load()


# -- the assemblies -------------------------------------------------------


def _ramified_prime(field):
    check_units(field)
    p = -field.disc
    if not is_prime(p) or p % 4 != 3:
        raise PreconditionViolated("D_K = -p with p prime, p = 3 mod 4", f"D_K={field.disc}")
    if field.class_number != 1:
        raise PreconditionViolated("h_K = 1", f"h_K={field.class_number}")
    return p


def printed_level_p_invariants(p):
    return TypeInvariants(p - 1, 0, kronecker(-3, p) - 1, -2, -1)


def dim_nongenuine_ramified_p(field, k):
    """Everything new at Gamma_0(p) base-changes to level P, one-to-one, with
    no twists and no CM; odd k has nothing (trivial nebentypus)."""
    check_weight(k)
    p = _ramified_prime(field)
    if printed_level_p_invariants(p) != gamma0_new_invariants(p):
        raise AssertionError(f"level-P parameter list disagrees with the new block at p={p}")
    return dim_new_gamma0(p, k)


def psquared_terms(field, k, sc=None, multiplicities=None):
    """Exact rational contributions (label, value) at level P^2, even k."""
    p = _ramified_prime(field)
    sc = sc or default_sc_table()
    mult = multiplicities or default_multiplicities()
    consts = sc.get(p) if isinstance(sc, ScTable) else sc
    rows = ROW_BUILDERS[mult.variant](p, consts, field.class_number)
    terms = [(r.kind.value, mult.of(r.kind) * trace_form(r.invariants, k)) for r in rows]
    terms.append(("cm", -mult.cm * dim_cm_correction(field, 1, p * p)))
    return terms


def _odd_psquared(field, k, provider):
    """Odd k: forms with nebentypus omega_p. Level p forms pair up under
    twisting by omega_p except the single CM form; level p^2 forms new at p^2
    each base-change alone."""
    p = -field.disc
    level_p = trace_form(provider(field.disc, p), k)
    new_p2 = oracle_dim_gamma0_chi(p * p, p, k) - 2 * oracle_dim_gamma0_chi(p, p, k)
    cm = dim_cm_correction(field, 1, p)
    return [("omega_level_p", Fraction(1, 2) * (level_p - cm)), ("omega_new_p2", Fraction(new_p2))]


def dim_nongenuine_ramified_p2(field, k, sc=None, multiplicities=None, provider=None):
    check_weight(k)
    _ramified_prime(field)
    if k % 2:
        terms = _odd_psquared(field, k, provider or default_provider())
    else:
        terms = psquared_terms(field, k, sc, multiplicities)
    total = sum((v for _, v in terms), Fraction(0))
    if total.denominator != 1:
        raise FormulaNonIntegral(f"level P^2 assembly gave {total} at D_K={field.disc}, k={k}")
    if total < 0:
        raise FormulaNegative(f"level P^2 assembly gave {total} at D_K={field.disc}, k={k}")
    return int(total)


def dim_nongenuine_squarefree(field, N, k, provider=None, use_cache=True):
    """h_K * BC; the twists account for (h_K - 1) * BC and CM for nothing."""
    return field.class_number * dim_basechange(field, N, k, provider, use_cache=use_cache)


# -- breakdown ------------------------------------------------------------


@dataclass(frozen=True)
class LevelDescriptor:
    """A rational square-free level (N), the ramified prime P, or P^2."""

    kind: str  # "rational" | "p" | "p2"
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("rational", "p", "p2"):
            raise ValueError(f"unknown level kind {self.kind!r}")

    def __str__(self):
        return {"rational": f"({self.n})", "p": "P", "p2": "P^2"}[self.kind]


@dataclass
class DimBreakdown:
    field: QuadField
    level: object
    weight: int
    bc: Optional[int] = 0
    tbc: Optional[int] = 0
    cm: Optional[int] = 0
    ng: Optional[int] = 0
    full_dim: Optional[int] = None
    genuine: Optional[int] = None
    ng_status: str = "exact"
    notes: list = field(default_factory=list)

    def __post_init__(self):
        parts = (self.bc, self.tbc, self.cm)
        if self.ng is None:
            if any(x is not None for x in parts):
                raise ValueError("bc, tbc, cm must be empty when ng is")
        elif None in parts or self.ng != sum(parts):
            raise ValueError("ng must equal bc + tbc + cm")

    def with_full(self, full_dim):
        """Attach the full newform dimension; genuine = full - ng."""
        self.full_dim = full_dim
        self.genuine = None if self.ng is None else full_dim - self.ng
        return self


def breakdown(field, level, k, provider=None, sc=None, multiplicities=None, use_cache=True):
    check_weight(k)
    notes = []
    if level.kind == "rational":
        bc = dim_basechange(field, level.n, k, provider, use_cache=use_cache)
        tbc = (field.class_number - 1) * bc
        if cm_unverified(level.n, 1):
            notes.append(P2_CM_NOTE)
        return DimBreakdown(field, level, k, bc=bc, tbc=tbc, cm=0, ng=bc + tbc, notes=notes)
    if level.kind == "p":
        ng = dim_nongenuine_ramified_p(field, k)
        return DimBreakdown(field, level, k, bc=ng, ng=ng, notes=notes)
    ng = dim_nongenuine_ramified_p2(field, k, sc, multiplicities, provider)
    if k % 2 == 0:
        notes.append(FITTED_NOTE)
    return DimBreakdown(field, level, k, bc=ng, ng=ng, notes=notes)


__all__ = [
    "DimBreakdown",
    "LevelDescriptor",
    "Multiplicities",
    "PSquaredRow",
    "RowKind",
    "ScConstants",
    "ScTable",
    "breakdown",
    "cps",
    "default_multiplicities",
    "default_sc_table",
    "dim_nongenuine_ramified_p",
    "dim_nongenuine_ramified_p2",
    "dim_nongenuine_squarefree",
    "printed_level_p_invariants",
    "printed_rows",
    "psquared_terms",
    "reconstructed_rows",
]
