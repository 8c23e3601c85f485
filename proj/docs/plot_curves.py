#!/usr/bin/env python3
"""Plot spectral curve samples produced by `fucik trace`.

Example:
    fucik --preset sine:12.566 trace --k 2 --quadrant pm --out pm.csv
    fucik --preset classical trace --k 3 --out pp.csv
    python3 docs/plot_curves.py pm.csv pp.csv -o curves.png
"""

import argparse
import csv
import sys
from collections import defaultdict


def load(path):
    groups = defaultdict(list)
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            key = (int(row["k"]), row["branch"], row["quadrant"])
            groups[key].append((float(row["a"]), float(row["b"])))
    return groups


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", nargs="+", help="trace CSV files")
    ap.add_argument("-o", "--out", default="curves.png", help="output image")
    ap.add_argument("--log", action="store_true", help="symlog axes")
    args = ap.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required: pip install matplotlib")

    fig, ax = plt.subplots(figsize=(7, 6))
    for path in args.csv:
        for (k, branch, quadrant), pts in sorted(load(path).items()):
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            ax.plot(xs, ys, lw=1.2, label=f"C{k} {branch} {quadrant}")
    if args.log:
        ax.set_xscale("symlog")
        ax.set_yscale("symlog")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.axvline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(args.out)


if __name__ == "__main__":
    main()
