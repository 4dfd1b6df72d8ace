#!/usr/bin/env python3
"""Dump numerical and exact final-time profiles for the five benchmark cases.

Writes case<N>_<scheme>.csv and case<N>_exact.csv into --outdir; plot the
columns against x to reproduce the standard profile comparisons.
"""
import argparse
import pathlib

from bn_relax import exact_profile, get_case, run_case
from bn_relax.harness import write_diagnostics_csv, write_profile_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cells", type=int, default=100)
    ap.add_argument("--cases", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--schemes", nargs="+", default=["relaxation"],
                    choices=["relaxation", "rusanov"])
    ap.add_argument("--outdir", default="profiles_out")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for cid in args.cases:
        case = get_case(cid)
        x, exact = exact_profile(case, args.cells, case.t_max)
        write_profile_csv(outdir / f"case{cid}_exact.csv", x, exact)
        for scheme in args.schemes:
            res = run_case(case, scheme, args.cells)
            write_profile_csv(outdir / f"case{cid}_{scheme}.csv", res.x, res.prim)
            write_diagnostics_csv(outdir / f"case{cid}_{scheme}_log.csv", res.records)
            print(f"case {cid} [{scheme}]: {res.steps} steps, "
                  f"wall {res.wall_time:.2f}s, min rho1 {res.records[-1].min_rho1:.3e}")


if __name__ == "__main__":
    main()
