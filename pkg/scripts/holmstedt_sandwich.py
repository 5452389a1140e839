"""Ratio J / K of the Holmstedt expression to the exact (l1, l^q) K-functional.

Prints, for each q, the smallest and largest ratio over random sequences and a
log grid of t; both must lie in [1, C(q)].

    python3 scripts/holmstedt_sandwich.py --samples 200
"""
import argparse

import numpy as np

from majork.kfunc import c_q_bound, holmstedt_J, k_l1_lq


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    grid = [2.0 ** k for k in range(-10, 11)]
    for q in (1.5, 2.0, 3.0):
        ratios = []
        for _ in range(args.samples):
            x = rng.normal(size=int(rng.integers(1, args.n_max + 1)))
            for t in grid:
                k = k_l1_lq(t, x, q).value
                if k > 0:
                    ratios.append(holmstedt_J(t, x, q) / k)
        print(f"q={q}: J/K in [{min(ratios):.6f}, {max(ratios):.6f}], C(q) = {c_q_bound(q):.6f}")


if __name__ == "__main__":
    main()
