#!/usr/bin/env python3
"""Re-derive the shipped d-part and supercuspidal-trace tables.

Without --write, compares the derivation with the shipped files and exits 1
on any mismatch or nonzero residual.
"""
import argparse
import sys
from pathlib import Path

from bianchidim.arith import is_prime
from bianchidim.basechange import DPartEntry, DPartProvider
from bianchidim.derive import derive_all, diff_against_shipped
from bianchidim.nongenuine import ScConstants, ScTable

DATA = Path(__file__).resolve().parent.parent / "src" / "bianchidim" / "data"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-p", type=int, default=200)
    ap.add_argument("--write", action="store_true", help="overwrite the shipped tables")
    args = ap.parse_args(argv)

    primes = [p for p in range(7, args.max_p) if p % 4 == 3 and is_prime(p)]
    der = derive_all(primes)
    bad = {k: v for k, v in der.residuals.items() if any(v)}
    for label, res in sorted(bad.items()):
        print(f"nonzero residual in {label}: {[str(r) for r in res if r]}")
    print(f"{len(der.residuals)} residual groups, max |residual| = {der.max_residual()}")

    provider = DPartProvider.from_mapping(
        {(-p, d): DPartEntry(inv, par) for p, ent in der.dpart.items() for d, (inv, par) in ent.items()}
    )
    sc = ScTable.from_entries(ScConstants(p, sc3, sc4) for p, (sc3, sc4) in der.sc.items())
    if args.write:
        (DATA / "dpart_table.txt").write_text(provider.dumps())
        (DATA / "sc_table.txt").write_text(sc.dumps())
        print(f"wrote {DATA / 'dpart_table.txt'} and {DATA / 'sc_table.txt'}")
        return 1 if bad else 0

    problems = diff_against_shipped(der, DPartProvider.load(), ScTable.load())
    for line in problems:
        print(line)
    print("tables match" if not problems else f"{len(problems)} mismatches")
    return 1 if (bad or problems) else 0


if __name__ == "__main__":
    sys.exit(main())
