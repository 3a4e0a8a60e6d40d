#!/usr/bin/env python3
"""Tabulate exact game values on small grids, both variants.

Usage: python scripts/grid_values.py [--max-king 6] [--max-cart 4]
"""

from __future__ import annotations

import argparse

from lcsgame.engine import CONNECTED
from lcsgame.generators import cartesian_grid, king_grid_2rows
from lcsgame.solver import cg


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-king", type=int, default=6)
    ap.add_argument("--max-cart", type=int, default=4)
    args = ap.parse_args()

    print("two-row king's grids")
    print(f"{'m':>3} {'n':>3} {'c_g':>4} {'c^c_g':>6}")
    for m in range(1, args.max_king + 1):
        g = king_grid_2rows(m).graph
        plain = cg(g).value
        conn = cg(g, CONNECTED).value
        print(f"{m:>3} {g.n:>3} {plain:>4} {conn:>6}")

    print()
    print("Cartesian grids (rows <= cols)")
    print(f"{'rows':>4} {'cols':>4} {'n':>3} {'c_g':>4} {'2*rows':>6} {'c^c_g':>6}")
    for rows in range(1, 4):
        for cols in range(rows, args.max_cart + 1):
            g = cartesian_grid(rows, cols).graph
            plain = cg(g).value
            conn = cg(g, CONNECTED).value
            print(f"{rows:>4} {cols:>4} {g.n:>3} {plain:>4} {2 * rows:>6} {conn:>6}")


if __name__ == "__main__":
    main()
