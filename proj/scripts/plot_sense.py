#!/usr/bin/env python3
"""Plot a reflection spectrum produced by `squeezemap sense`."""
import argparse
import csv

import matplotlib.pyplot as plt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="sense-<hash>.csv artifact")
    ap.add_argument("-o", "--out", default=None, help="output image (default: show)")
    ap.add_argument("--log", action="store_true", help="log-scale flux axis")
    args = ap.parse_args()

    omega, flux = [], []
    with open(args.csv) as fh:
        for row in csv.DictReader(fh):
            omega.append(float(row["omega_p"]))
            flux.append(float(row["flux"]))

    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(omega, flux, lw=1.2)
    ax.set_xlabel(r"$\omega_p/\kappa$")
    ax.set_ylabel(r"$P_\mathrm{out}/|\alpha_\mathrm{in}|^2$")
    if args.log:
        ax.set_yscale("log")
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=180)
    else:
        plt.show()


if __name__ == "__main__":
    main()
