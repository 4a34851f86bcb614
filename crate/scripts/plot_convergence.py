#!/usr/bin/env python3
"""Plot convergence CSVs produced by `cfr-forge bench` on log-log axes.

Usage: plot_convergence.py <out.png> <run.csv> [<run.csv> ...]
"""
import csv
import sys


def main() -> int:
    if len(sys.argv) < 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is required", file=sys.stderr)
        return 1

    out, paths = sys.argv[1], sys.argv[2:]
    fig, ax = plt.subplots(figsize=(6, 4))
    for path in paths:
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        xs = [int(r["iteration"]) for r in rows]
        ys = [float(r["exploitability"]) for r in rows]
        label = path.rsplit("/", 1)[-1].removesuffix(".csv")
        ax.plot(xs, ys, label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("iteration")
    ax.set_ylabel("exploitability")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
