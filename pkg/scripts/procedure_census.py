"""Outcome and step-count census of the interval procedure on random premise pairs.

    python3 scripts/procedure_census.py --pairs 1000 --q 2
"""
import argparse
import random
from collections import Counter

from majork.generators import premise_fg
from majork.procp import run_procedure_p, split_functions, verify_phis_psis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=1000)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    steps, outcomes = Counter(), Counter()
    for k in range(args.pairs):
        f, g = premise_fg(random.Random(f"{args.seed}:{k}"), args.q)
        dec = run_procedure_p(f, g, args.q)
        assert verify_phis_psis(split_functions(f, g, dec))
        steps[len(dec.steps)] += 1
        outcomes.update(dec.outcomes)
    print("steps:   ", dict(sorted(steps.items())))
    print("outcomes:", dict(sorted(outcomes.items())))


if __name__ == "__main__":
    main()
