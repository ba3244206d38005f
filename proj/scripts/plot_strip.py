#!/usr/bin/env python3
"""Plot a Kagome strip band structure from `squeezemap strip`, colored by
edge-localization weight."""
import argparse
import csv

import matplotlib.pyplot as plt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="strip-<hash>.csv artifact")
    ap.add_argument("-o", "--out", default=None)
    args = ap.parse_args()

    k, e, w = [], [], []
    with open(args.csv) as fh:
        for row in csv.DictReader(fh):
            k.append(float(row["k_par"]))
            e.append(float(row["energy"]))
            w.append(float(row["edge_weight"]))

    fig, ax = plt.subplots(figsize=(5, 4))
    sc = ax.scatter(k, e, c=w, s=2, cmap="viridis", vmin=0, vmax=1)
    fig.colorbar(sc, ax=ax, label="edge weight")
    ax.set_xlabel(r"$k_\parallel$")
    ax.set_ylabel(r"$E/J$")
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=180)
    else:
        plt.show()


if __name__ == "__main__":
    main()
