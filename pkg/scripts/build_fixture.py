#!/usr/bin/env python3
"""Rebuild the reconstructed fixture dataset.

Reads the transcribed genuine dimensions (genuine = 0 marks spaces the
tables call completely exhausted by non-genuine forms) and writes
dim_new = nG + genuine, with nG from the shipped formulas. The output is a
reconstruction for checking sign conventions and plumbing, not primary data.
"""
import argparse
import csv
import sys
from pathlib import Path

from bianchidim.arith import QuadField
from bianchidim.report import HEADER, DatasetRow, parse_level, report_row

HERE = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--source", default=HERE / "published_genuine_source.csv")
    ap.add_argument("--out", default=HERE / "published_genuine.csv")
    args = ap.parse_args(argv)

    out = [",".join(HEADER)]
    with open(args.source, newline="") as fh:
        for rec in csv.DictReader(fh):
            fld = QuadField.from_disc(int(rec["disc"]))
            level = parse_level(int(rec["hnf_a"]), int(rec["hnf_b"]), int(rec["hnf_c"]))
            k, genuine = int(rec["weight"]), int(rec["genuine"])
            # placeholder full dim large enough that genuine stays non-negative
            b = report_row(DatasetRow(fld, level, k, 10**9))
            if b.ng is None:
                print(f"cannot compute nG for {rec}: {b.ng_status}", file=sys.stderr)
                return 1
            out.append(f"{fld.disc},{level.hnf[0]},{level.hnf[1]},{level.hnf[2]},{k},{b.ng + genuine}")
    Path(args.out).write_text("\n".join(out) + "\n")
    print(f"wrote {len(out) - 1} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
