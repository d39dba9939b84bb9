"""Command-line interface: ``bianchidim <command> [options]``."""
import argparse
import contextlib
import sys

from .arith import QuadField, is_prime
from .basechange import DPartProvider, basechange_terms, default_provider, dim_basechange, discriminant_divisors
from .cm_counting import cm_unverified, dim_cm_correction
from .derive import derive_all, diff_against_shipped
from .dim_engine import dim_cusp_gamma0, dim_new_gamma0
from .errors import BianchiDimError, PreconditionViolated
from .invariants import gamma0_invariants, gamma0_new_invariants
from .nongenuine import LevelDescriptor, Multiplicities, ScTable, breakdown, default_multiplicities, default_sc_table
from .report import emit, genuine_report, has_errors, ingest


def weight_spec(text):
    """``k`` or an inclusive range ``a..b``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}; use k or a..b") from None
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad weight range {text!r}; need 2 <= a <= b")
    return list(range(lo, hi + 1))


def _field(disc):
    try:
        return QuadField.from_disc(disc)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _common(p):
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--dpart-table", metavar="PATH", help="d-part table replacing the built-in one")
    p.add_argument("--sc-table", metavar="PATH", help="SC_3/SC_4 table replacing the built-in one")
    p.add_argument("--multiplicities", metavar="PATH", help="level P^2 row multiplicity config")
    p.add_argument("--no-cache", action="store_true", help="bypass memoization")


def build_parser():
    ap = argparse.ArgumentParser(prog="bianchidim", description="Dimensions of non-genuine Bianchi newform spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical-dim", help="dim S_k(Gamma_0(N)) or its new part")
    p.add_argument("--gamma0", type=int, required=True, metavar="N")
    p.add_argument("--weight", type=weight_spec, required=True)
    p.add_argument("--new", action="store_true")
    _common(p)

    p = sub.add_parser("invariants", help="the five invariants of the Gamma_0(N) representation")
    p.add_argument("--gamma0", type=int, required=True, metavar="N")
    p.add_argument("--new", action="store_true")
    _common(p)

    p = sub.add_parser("cm-dim", help="CM-to-Eisenstein correction for (N, d)")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--level-n", type=int, required=True)
    p.add_argument("--d", type=int, default=None, help="divisor of D_K^2 (default: all)")
    _common(p)

    p = sub.add_parser("basechange-dim", help="dim S_k^BC(N O_K)")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--level-n", type=int, required=True)
    p.add_argument("--weight", type=weight_spec, required=True)
    p.add_argument("--terms", action="store_true", help="also print the per-d summands")
    _common(p)

    p = sub.add_parser("nongenuine-dim", help="non-genuine dimension with its BC/tBC/CM split")
    p.add_argument("--disc", type=int, required=True)
    lv = p.add_mutually_exclusive_group(required=True)
    lv.add_argument("--level-n", type=int, metavar="N")
    lv.add_argument("--level-p", action="store_true", help="the ramified prime P")
    lv.add_argument("--level-p2", action="store_true", help="P^2 = (p)")
    p.add_argument("--weight", type=weight_spec, required=True)
    _common(p)

    p = sub.add_parser("genuine-report", help="genuine dimensions from a CSV of full dimensions")
    p.add_argument("--input", required=True, metavar="PATH")
    _common(p)

    p = sub.add_parser("derive-constants", help="re-derive fitted tables and diff against the shipped ones")
    p.add_argument("--disc", type=int, required=True)
    _common(p)
    return ap


def _tables(args):
    provider = DPartProvider.load(args.dpart_table) if args.dpart_table else default_provider()
    sc = ScTable.load(args.sc_table) if args.sc_table else default_sc_table()
    mult = Multiplicities.load(args.multiplicities) if args.multiplicities else default_multiplicities()
    return provider, sc, mult


def _table(rows, header, fmt):
    if fmt == "csv":
        return "\n".join([",".join(header)] + [",".join(str(x) for x in r) for r in rows])
    return "\n".join(" ".join(f"{h}={x}" for h, x in zip(header, r)) for r in rows)


def cmd_classical_dim(args):
    f = dim_new_gamma0 if args.new else dim_cusp_gamma0
    rows = [(args.gamma0, k, f(args.gamma0, k)) for k in args.weight]
    return _table(rows, ("N", "k", "dim_new" if args.new else "dim"), args.format)


def cmd_invariants(args):
    inv = (gamma0_new_invariants if args.new else gamma0_invariants)(args.gamma0)
    return _table([(args.gamma0, *inv)], ("N", "i1", "i2", "i3", "i4", "i5"), args.format)


def cmd_cm_dim(args):
    fld = _field(args.disc)
    ds = [args.d] if args.d else [d for d, _, _ in discriminant_divisors(fld)]
    rows = []
    for d in ds:
        flag = "unverified" if cm_unverified(args.level_n, d) else "ok"
        rows.append((fld.disc, args.level_n, d, dim_cm_correction(fld, args.level_n, d), flag))
    return _table(rows, ("disc", "N", "d", "cm", "p2_check"), args.format)


def cmd_basechange_dim(args):
    fld = _field(args.disc)
    provider, _, _ = _tables(args)
    rows, lines = [], []
    for k in args.weight:
        rows.append((fld.disc, args.level_n, k, dim_basechange(fld, args.level_n, k, provider, use_cache=not args.no_cache)))
        if args.terms:
            for d, w, sc, cm in basechange_terms(fld, args.level_n, k, provider):
                lines.append((fld.disc, args.level_n, k, d, w, sc, cm))
    out = _table(rows, ("disc", "N", "k", "bc"), args.format)
    if args.terms:
        out += "\n" + _table(lines, ("disc", "N", "k", "d", "weight", "sc_new", "cm"), args.format)
    return out


def cmd_nongenuine_dim(args):
    fld = _field(args.disc)
    provider, sc, mult = _tables(args)
    if args.level_n is not None:
        level = LevelDescriptor("rational", args.level_n)
    else:
        level = LevelDescriptor("p" if args.level_p else "p2")
    rows = []
    for k in args.weight:
        b = breakdown(fld, level, k, provider, sc, mult, use_cache=not args.no_cache)
        rows.append((fld.disc, level, k, b.ng, b.bc, b.tbc, b.cm, "; ".join(b.notes) or "-"))
    return _table(rows, ("disc", "level", "k", "ng", "bc", "tbc", "cm", "notes"), args.format)


def cmd_genuine_report(args):
    provider, sc, mult = _tables(args)
    table = genuine_report(ingest(args.input), provider, sc, mult, use_cache=not args.no_cache)
    return emit(table, args.format).rstrip("\n"), 1 if has_errors(table) else 0


def cmd_derive_constants(args):
    p = -args.disc
    if not (is_prime(p) and p % 4 == 3 and p > 3):
        raise PreconditionViolated("D_K = -p with p > 3 prime, p = 3 mod 4", f"D_K={args.disc}")
    provider, sc, _ = _tables(args)
    der = derive_all([p])
    ell = der.elliptic.constants
    lines = ["elliptic constants"]
    lines += [f"  eps[k = {r} mod 3] = {ell.eps[r]}" for r in sorted(ell.eps)]
    lines += [f"  mu[k = {r} mod 4] = {ell.mu[r]}" for r in sorted(ell.mu)]
    lines.append(f"  unidentifiable: mu at odd k ({len(der.elliptic.unidentified)} weights), fixed at 0")
    lines.append(f"d-part invariants, D_K = {args.disc}")
    for d, (inv, parity) in sorted(der.dpart[p].items()):
        lines.append(f"  d = {d}: {inv} {parity}")
    sc3, sc4 = der.sc[p]
    lines.append(f"SC constants, p = {p}: SC_3 = {sc3}, SC_4 = {sc4}")
    lines.append("residuals")
    for label, res in der.residuals.items():
        lines.append(f"  {label}: {len(res)} equations, max |r| = {max((abs(r) for r in res), default=0)}")
    problems = diff_against_shipped(der, provider, sc)
    bad = der.max_residual() != 0 or problems
    lines += [f"MISMATCH {x}" for x in problems]
    lines.append("shipped tables reproduced exactly" if not bad else "DERIVATION DOES NOT MATCH")
    return "\n".join(lines), 1 if bad else 0


COMMANDS = {
    "classical-dim": cmd_classical_dim,
    "invariants": cmd_invariants,
    "cm-dim": cmd_cm_dim,
    "basechange-dim": cmd_basechange_dim,
    "nongenuine-dim": cmd_nongenuine_dim,
    "genuine-report": cmd_genuine_report,
    "derive-constants": cmd_derive_constants,
}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as e:
        print(f"bianchidim: error: {e}", file=err)
        return 2
    except PreconditionViolated as e:
        print(f"precondition failed: {e}", file=err)
        return 1
    except (BianchiDimError, OSError, ValueError) as e:
        print(f"error: {e}", file=err)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(result, file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
