"""Map of minimum output entropy and Holevo information for two channels.

Tabulates H_min, H(control marginal) and chi on a (q1, q2, p) grid at fixed
target dimension d, where p is the weight of the first causal order. The
resulting CSV is ready for contour plotting with external tools.

Usage:
    python scripts/noise_plane_map.py --d 2 --points 41 --out noise_map_d2.csv
"""

import argparse
import sys

import numpy as np

from qnswitch import holevo_information


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d", type=int, default=2, help="target dimension")
    parser.add_argument("--points", type=int, default=41, help="grid points per axis")
    parser.add_argument("--out", default="noise_map.csv", help="output CSV path")
    args = parser.parse_args()

    grid = np.linspace(0.0, 1.0, args.points)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write("d,q1,q2,p,h_min,h_control,chi\n")
        for q1 in grid:
            for q2 in grid:
                for p in grid:
                    rep = holevo_information(2, args.d, (q1, q2), (p, 1.0 - p))
                    handle.write(
                        f"{args.d},{q1:.6g},{q2:.6g},{p:.6g},"
                        f"{rep.h_min:.6g},{rep.h_control:.6g},{rep.chi:.6g}\n"
                    )
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
