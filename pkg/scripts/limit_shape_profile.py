#!/usr/bin/env python3
"""Tabulate the macroscopic profile and compare finite-size kernel
densities against the limiting one-point function.

Writes CSV with columns x, rho_limit, rho_lattice for a schedule of q
values approaching 1 at fixed eta = xi / (1 - q).
"""

import argparse
import csv
import math
import sys
from fractions import Fraction

from qpart.kernels import limit_shape, q_bessel_kernel
from qpart.qspecial import QParams


def lattice_density(xi: float, q: float, x: float) -> float:
    # site closest to x on the scaled lattice u = x / log(1/q)
    eps = math.log(1.0 / q)
    k = math.floor(x / eps)
    r = Fraction(2 * k + 1, 2)
    return q_bessel_kernel(QParams(q=q, xi=xi), r, r)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--xi", type=float, default=0.5)
    ap.add_argument("--q", type=float, default=0.97)
    ap.add_argument("--points", type=int, default=60)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    shape = limit_shape(args.xi)
    lo, hi = shape.a - 0.5, shape.b + 0.5
    rows = []
    for i in range(args.points):
        x = lo + (hi - lo) * i / (args.points - 1)
        rows.append({
            "x": x,
            "rho_limit": shape.rho(x),
            "rho_lattice": lattice_density(args.xi, args.q, x),
        })

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fieldnames=["x", "rho_limit", "rho_lattice"])
    writer.writeheader()
    for row in rows:
        writer.writerow({k: f"{v:.10f}" for k, v in row.items()})
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
