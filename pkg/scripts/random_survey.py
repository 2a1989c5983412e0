"""Survey random multigraphs: how often do the classification flags hold?

Samples seeded random graphs per vertex count, tabulates the frequency of
Conditions (L) and (K), simplicity and pure infiniteness, and the mean ideal
lattice size.

Usage: python scripts/random_survey.py [--samples N] [--seed S] [--max-n K]
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from graphck import admissible_pairs, classify

from util import random_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200, help="graphs per vertex count")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()

    print(f"{'|V|':>3} {'L%':>6} {'K%':>6} {'simple%':>8} {'PI%':>6} {'mean pairs':>11}")
    for n in range(1, args.max_n + 1):
        rng = random.Random(args.seed * 1009 + n)
        counts = {"L": 0, "K": 0, "simple": 0, "pi": 0}
        pair_total = 0
        for _ in range(args.samples):
            g = random_graph(rng, max_n=n)
            r = classify(g)
            counts["L"] += r.aperiodic
            counts["K"] += r.residually_aperiodic
            counts["simple"] += r.simple.verdict == "yes"
            counts["pi"] += r.purely_infinite.verdict == "yes"
            pair_total += len(admissible_pairs(g))
        s = args.samples
        print(
            f"{n:>3} {100*counts['L']/s:>6.1f} {100*counts['K']/s:>6.1f} "
            f"{100*counts['simple']/s:>8.1f} {100*counts['pi']/s:>6.1f} "
            f"{pair_total/s:>11.2f}"
        )


if __name__ == "__main__":
    main()
