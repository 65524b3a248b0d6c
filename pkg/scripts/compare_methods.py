#!/usr/bin/env python3
"""Reproduce the method comparison on the email network.

Runs every maximization method at k in {5, 10, 15, 20} with the default
budget and pool sizes, averaging the randomized baseline over five
seeds, and writes the size-increase grid as CSV. Anything here can be
overridden; the defaults pin the headline experiment.
"""

import argparse
from pathlib import Path

from trussmerge.cli import main as cli_main


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dataset", nargs="?",
                    default=str(Path(__file__).resolve().parents[1] / "data" / "email.txt"))
    ap.add_argument("--k", default="5,10,15,20")
    ap.add_argument("--methods", default="BM,EQ,II,IO,RD,NE,NT")
    ap.add_argument("--budget", type=int, default=10)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    cli_args = ["compare", args.dataset, "--k", args.k,
                "--methods", args.methods, "--budget", str(args.budget),
                "--trials", str(args.trials)]
    if args.out:
        cli_args += ["--out", args.out]
    return cli_main(cli_args)


if __name__ == "__main__":
    raise SystemExit(main())
