"""Print StA, DAC and SAC of the six toy networks next to the published values.

    python scripts/toy_graphs.py [--out toy.csv]
"""
import argparse

from stratassort import dac, sac, sta
from stratassort.io import csv_text, write_text
from stratassort.toygraphs import NAMES, PUBLISHED, partition, toy_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="CSV output path (default: stdout)")
    args = ap.parse_args()
    rows = []
    for name in NAMES:
        g, p = toy_graph(name), partition(name)
        rows.append([name, g.m, sta(g, p).sta, PUBLISHED[name][0], dac(g, p).value,
                     PUBLISHED[name][1], sac(g).value, PUBLISHED[name][2]])
    write_text(args.out, csv_text(["graph", "edges", "sta", "sta_published", "dac",
                                   "dac_published", "sac", "sac_published"], rows))


if __name__ == "__main__":
    main()
