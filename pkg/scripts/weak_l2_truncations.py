"""Truncations of x_n = n^{-1/p} in weak l^p stay bounded while the limit leaves the separable part.

The profile m^{1/p - 1} sum_{n<=m} x_n tends to p / (p - 1), so the tail of
the sequence never becomes small in the weak norm.

    python3 scripts/weak_l2_truncations.py --p 2
"""
import argparse

from majork.spaces import wfp_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=2.0)
    args = ap.parse_args()
    p = args.p
    for m in (10 ** 2, 10 ** 4, 10 ** 6):
        r = wfp_probe(f"weak-lp-sep:{p}", lambda n: n ** (-1 / p), m)
        print(f"N_max={m:>8}: sup of truncated norms {r.sup_truncated:.5f}, "
              f"profile at N_max {r.limit_estimate:.5f}, in separable part: {r.full_in_E}")
    print(f"limit p/(p-1) = {p / (p - 1):.5f}")


if __name__ == "__main__":
    main()
