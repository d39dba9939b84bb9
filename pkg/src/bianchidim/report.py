"""
Genuine-subspace reports from externally computed newform dimensions.

Input is a CSV with header ``disc,hnf_a,hnf_b,hnf_c,weight,dim_new`` where
``[a, b, c]`` is the Hermite normal form of the level: the ideal
Z*(a/c) + Z*(b + c*w), w = (1 + sqrt D)/2 (or sqrt(D/4) for even D), of
norm a. Rational levels (N) are [N^2, 0, N]. Weights are classical k.

Each row gets a ``DimBreakdown``; the genuine dimension is full - nG.
Per-row failures are recorded in ``ng_status`` and never stop the run.
"""
import csv
import io
from dataclasses import dataclass, field
from math import gcd

from .arith import QuadField, is_prime, is_squarefree
from .errors import BianchiDimError, DuplicateKey, MalformedHnf, ParseError
from .nongenuine import DimBreakdown, LevelDescriptor, breakdown

HEADER = ("disc", "hnf_a", "hnf_b", "hnf_c", "weight", "dim_new")
REPORT_HEADER = HEADER + ("bc", "tbc", "cm", "ng", "genuine", "ng_status", "notes")

STATUS_EXACT = "exact"
STATUS_LOWER_BOUND = "lower bound 0"
STATUS_NOT_COMPUTABLE = "not computable"


@dataclass(frozen=True)
class Level:
    hnf: tuple
    norm: int

    @property
    def is_rational(self):
        a, b, c = self.hnf
        return b == 0 and a == c * c

    def is_galois_stable(self, disc):
        a, b, c = self.hnf
        m = a // c
        if disc % 4 == 0:
            return (2 * b) % m == 0
        return (2 * b + c) % m == 0

    def __str__(self):
        a, b, c = self.hnf
        return f"[{a}, {b}, {c}]"


def parse_level(a, b, c):
    if a < 1 or c < 1:
        raise MalformedHnf(f"[{a}, {b}, {c}]: a and c must be positive")
    if a % (c * c):
        raise MalformedHnf(f"[{a}, {b}, {c}]: c^2 must divide a")
    if b % c or not 0 <= b < a // c:
        raise MalformedHnf(f"[{a}, {b}, {c}]: need c | b and 0 <= b < a/c")
    return Level((a, b, c), a)


def to_classical_weight(value, label="weight"):
    """The single place weight labels are normalized.

    ``weight`` columns of published dimension tables and a
    ``k+2`` row both give the weight of the Bianchi form, which is the
    classical weight k used throughout; a bare ``k`` parameter is shifted.
    """
    if label in ("weight", "k+2"):
        return value
    if label == "k":
        return value + 2
    raise ValueError(f"unknown weight label {label!r}")


@dataclass(frozen=True)
class DatasetRow:
    field: QuadField
    level: Level
    weight: int
    full_dim: int
    row: int = field(default=0, compare=False)

    @property
    def key(self):
        return (self.field.disc, self.level.hnf, self.weight)


def _int(value, name, row):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(row, f"{name} is not an integer: {value!r}") from None


def ingest_text(text, source="<string>"):
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r and any(x.strip() for x in r)]
    if not rows:
        return []
    header = tuple(x.strip() for x in rows[0])
    if header[: len(HEADER)] != HEADER:
        raise ParseError(1, f"header must start with {','.join(HEADER)}")
    out, seen = [], {}
    fields_cache = {}
    for n, raw in enumerate(rows[1:], start=2):
        if len(raw) < len(HEADER):
            raise ParseError(n, f"expected {len(HEADER)} columns, got {len(raw)}")
        disc, a, b, c, k, dim = (_int(v.strip(), name, n) for v, name in zip(raw, HEADER))
        if disc not in fields_cache:
            try:
                fields_cache[disc] = QuadField.from_disc(disc)
            except ValueError as e:
                raise ParseError(n, str(e)) from None
        try:
            level = parse_level(a, b, c)
        except MalformedHnf as e:
            raise ParseError(n, f"malformed HNF {e}") from None
        if k < 2:
            raise ParseError(n, f"weight must be >= 2, got {k}")
        if dim < 0:
            raise ParseError(n, f"dim_new must be non-negative, got {dim}")
        row = DatasetRow(fields_cache[disc], level, to_classical_weight(k), dim, n)
        if row.key in seen:
            raise DuplicateKey(f"{source}: rows {seen[row.key]} and {n} share key {row.key}")
        seen[row.key] = n
        out.append(row)
    return out


def ingest(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return ingest_text(fh.read(), str(path))


def classify_level(fld, level):
    """LevelDescriptor for the computable cases, else a status string."""
    if not level.is_galois_stable(fld.disc):
        return STATUS_LOWER_BOUND
    a, b, c = level.hnf
    p = -fld.disc
    if level.is_rational:
        if gcd(c, fld.disc) == 1 and is_squarefree(c):
            return LevelDescriptor("rational", c)
        if c == p and is_prime(p):
            return LevelDescriptor("p2")
        return STATUS_NOT_COMPUTABLE
    if c == 1 and a == p and is_prime(p):
        return LevelDescriptor("p")
    return STATUS_NOT_COMPUTABLE


class NegativeGenuine(BianchiDimError, ValueError):
    pass


def report_row(row, provider=None, sc=None, multiplicities=None, use_cache=True):
    kind = classify_level(row.field, row.level)
    if kind == STATUS_LOWER_BOUND:
        # base change needs a Galois-stable level; twists and CM are not
        # covered by the theorems here, so nG = 0 is only a lower bound
        b = DimBreakdown(row.field, row.level, row.weight, ng_status=STATUS_LOWER_BOUND)
    elif kind == STATUS_NOT_COMPUTABLE:
        b = DimBreakdown(row.field, row.level, row.weight, None, None, None, None, ng_status=STATUS_NOT_COMPUTABLE)
    else:
        try:
            b = breakdown(row.field, kind, row.weight, provider, sc, multiplicities, use_cache=use_cache)
            b.level = row.level
        except (BianchiDimError, ValueError, KeyError) as e:
            status = f"error: {e}"
            b = DimBreakdown(row.field, row.level, row.weight, None, None, None, None, ng_status=status)
    b.with_full(row.full_dim)
    if b.genuine is not None and b.genuine < 0:
        raise NegativeGenuine(
            f"row {row.row} ({row.field.disc}, {row.level}, k={row.weight}): "
            f"full {row.full_dim} < non-genuine {b.ng}"
        )
    return b


def genuine_report(dataset, provider=None, sc=None, multiplicities=None, use_cache=True):
    return [report_row(r, provider, sc, multiplicities, use_cache) for r in dataset]


def has_errors(table):
    return any(b.ng_status.startswith("error") for b in table)


def _sort_key(b):
    return (b.field.disc, b.level.norm, b.weight, b.level.hnf)


def _cell(x):
    return "" if x is None else str(x)


def emit(table, fmt="csv"):
    rows = sorted(table, key=_sort_key)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for b in rows:
            w.writerow(
                [b.field.disc, *b.level.hnf, b.weight, _cell(b.full_dim)]
                + [_cell(x) for x in (b.bc, b.tbc, b.cm, b.ng, b.genuine)]
                + [b.ng_status, "; ".join(b.notes)]
            )
        return buf.getvalue()
    if fmt == "text":
        return _emit_text(rows)
    raise ValueError(f"unknown format {fmt!r}")


def _emit_text(rows):
    cols = ("weight", "level HNF", "full", "BC", "tBC", "CM", "nG", "genuine", "status")
    lines = []
    by_disc = {}
    for b in rows:
        by_disc.setdefault(b.field.disc, []).append(b)
    if not by_disc:
        return "  ".join(cols) + "\n"
    for disc, group in by_disc.items():
        body = [
            (str(b.weight), str(b.level), _cell(b.full_dim), _cell(b.bc), _cell(b.tbc), _cell(b.cm), _cell(b.ng), _cell(b.genuine), b.ng_status)
            for b in group
        ]
        widths = [max(len(c), *(len(r[i]) for r in body)) for i, c in enumerate(cols)]
        if lines:
            lines.append("")
        lines.append(f"Discriminant {disc}")
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        for r in body:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def load_report(text):
    """Rebuild the breakdown table from ``emit(table, 'csv')`` output."""
    dataset = {r.row: r for r in ingest_text(text)}
    reader = csv.reader(io.StringIO(text))
    next(reader, None)
    out = []
    for n, raw in enumerate(reader, start=2):
        if not raw:
            continue
        rec = dict(zip(REPORT_HEADER, raw))
        ds = dataset[n]

        def opt(name):
            return None if rec[name] == "" else int(rec[name])

        b = DimBreakdown(
            ds.field, ds.level, ds.weight, opt("bc"), opt("tbc"), opt("cm"), opt("ng"),
            full_dim=ds.full_dim, genuine=opt("genuine"), ng_status=rec["ng_status"],
            notes=[x for x in rec["notes"].split("; ") if x],
        )
        out.append(b)
    return out


__all__ = [
    "DatasetRow",
    "HEADER",
    "Level",
    "NegativeGenuine",
    "classify_level",
    "emit",
    "genuine_report",
    "has_errors",
    "ingest",
    "ingest_text",
    "load_report",
    "parse_level",
    "report_row",
    "to_classical_weight",
]
