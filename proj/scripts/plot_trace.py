#!/usr/bin/env python3
"""Plot best objective against evaluations from one or more trace CSVs."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("traces", nargs="+")
    parser.add_argument("-o", "--output", default="trace.png")
    parser.add_argument("--negate", action="store_true", help="plot -best_objective (compound runs)")
    args = parser.parse_args()

    fig, ax = plt.subplots(figsize=(7, 4))
    for path in args.traces:
        df = pd.read_csv(path)
        y = -df["best_objective"] if args.negate else df["best_objective"]
        ax.step(df["evaluations"], y, where="post", label=path)
    ax.set_xlabel("evaluations")
    ax.set_ylabel("best objective")
    if len(args.traces) > 1:
        ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
