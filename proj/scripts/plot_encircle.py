#!/usr/bin/env python3
"""Plot amplitude and entanglement traces from `squeezemap encircle` CSVs.

Pass one CSV for a single run or two (ccw, cw) to overlay directions.
"""
import argparse
import csv

import matplotlib.pyplot as plt


def load(path):
    t, cp, cm, en = [], [], [], []
    with open(path) as fh:
        for row in csv.DictReader(fh):
            t.append(float(row["t"]))
            cp.append(float(row["abs_c_plus"]))
            cm.append(float(row["abs_c_minus"]))
            en.append(float(row["E_N"]))
    return t, cp, cm, en


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+", help="encircle-<hash>.csv artifact(s)")
    ap.add_argument("-o", "--out", default=None)
    args = ap.parse_args()

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(5.5, 5.5), sharex=True)
    for path, style in zip(args.csv, ("-", "--")):
        t, cp, cm, en = load(path)
        label = path.rsplit("/", 1)[-1]
        ax1.semilogy(t, cp, style, label=rf"$|c_+|$ {label}")
        ax1.semilogy(t, cm, style, alpha=0.5, label=rf"$|c_-|$ {label}")
        ax2.plot(t, en, style, label=label)
    ax1.set_ylabel("instantaneous amplitudes")
    ax1.legend(fontsize=7)
    ax2.set_xlabel(r"$t\gamma$")
    ax2.set_ylabel(r"$E_N$ (ebits)")
    ax2.legend(fontsize=7)
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=180)
    else:
        plt.show()


if __name__ == "__main__":
    main()
