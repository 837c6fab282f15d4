#!/usr/bin/env python3
"""Run the surgery verification oracle on a plumbing presentation: build the
filled graph's lattice complex directly and the assembled surgery complex
from the knot complex, and compare them cell-by-cell and invariant-by-
invariant."""

import argparse
import sys
from pathlib import Path

from knotlattice.plumbing import parse_graph
from knotlattice.surgery import verify_surgery

TREFOIL = """
vertex c -1
vertex a -2
vertex b -3
vertex v0 unweighted
edge c a
edge c b
edge v0 c
"""


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graph", help="graph file (default: the trefoil)")
    parser.add_argument("--framings", type=int, nargs="*",
                        default=[-7, -8, -9])
    parser.add_argument("--radius", type=int, default=4)
    args = parser.parse_args()

    graph = parse_graph(Path(args.graph).read_text() if args.graph else TREFOIL)
    failed = False
    for n in args.framings:
        report = verify_surgery(graph, n, radius=args.radius)
        print(report.summary())
        print()
        failed |= not report.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
