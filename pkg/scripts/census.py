#!/usr/bin/env python3
"""Exhaustive census of mu-tables at a given rank.

For every function mu with mu(0) = 0, check whether its polarization is
bilinear, classify the valid ones by their invariant tuple, and partition
them into basis-change orbits.  Orbit sizes times automorphism-group orders
should multiply back to |GL(k, 2)|, which the table prints for inspection.
"""

import argparse
import sys

sys.path.insert(0, "src")

from sympf2.autgrp import sp_full_order
from sympf2.cli import _census
from sympf2.f2core import gl_order


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rank", type=int, default=3, choices=range(0, 5))
    args = parser.parse_args()
    k = args.rank

    valid, classes, orbit_sizes = _census(k)
    total = 1 << ((1 << k) - 1)
    print(f"rank {k}: {total} tables with mu(0)=0, {len(valid)} valid, "
          f"{total - len(valid)} rejected")
    print(f"{len(classes)} isomorphism classes; GL-orbit sizes {orbit_sizes}")
    print()
    print(f"{'class':>16} {'tables':>8} {'|Aut|':>10} {'orbit*|Aut|':>12}")
    gl = gl_order(k)
    for t in sorted(classes, key=lambda t: (t.eps, t.delta, t.r, t.s)):
        count = classes[t]
        aut = sp_full_order(t.eps, t.delta, t.r, t.s)
        print(f"{t.label():>16} {count:>8} {aut:>10} {count * aut:>12}")
    print(f"{'':>16} {len(valid):>8} {'':>10} {'|GL|=' + str(gl):>12}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
