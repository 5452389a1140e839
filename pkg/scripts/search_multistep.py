"""Hill-climb integer (f, g) pairs that drive the interval procedure through many steps.

Each candidate is a pair of staircases given by block values and block lengths;
the climb keeps a mutation whenever the step count does not drop. Writes the
pairs found to a JSON corpus used by the test suite:

    python3 scripts/search_multistep.py --out tests/data/procp_multistep.json
"""
import argparse
import json
import random

from majork.core import StepFn
from majork.errors import MajorkError
from majork.procp import run_procedure_p


def expand(p):
    fv, fl, gv, gl = p
    f = [v for v, n in zip(fv, fl) for _ in range(n)]
    g = [v for v, n in zip(gv, gl) for _ in range(n)]
    return f, g


def n_steps(p, q, n_max) -> int:
    f, g = expand(p)
    if len(f) > n_max or len(g) > n_max:
        return 0
    try:
        return len(run_procedure_p(StepFn.of(f), StepFn.of(g), q).steps)
    except MajorkError:
        return 0


def _sorted(p):
    fv, fl, gv, gl = p
    return sorted(fv, reverse=True), list(fl), sorted(gv, reverse=True), list(gl)


def random_blocks(rng, k):
    vals = lambda: [rng.randint(1, 200) for _ in range(k)]
    lens = lambda: [rng.randint(1, 6) for _ in range(k)]
    return _sorted((vals(), lens(), vals(), lens()))


def mutate(rng, p):
    p = [list(part) for part in p]
    h = rng.randrange(4)
    i = rng.randrange(len(p[h]))
    if h in (0, 2):
        p[h][i] = max(1, p[h][i] + rng.randint(-20, 20))
    else:
        p[h][i] = max(1, p[h][i] + rng.choice((-1, 1)))
    return _sorted(p)


def climb(seed, q, iters, n_max):
    rng = random.Random(f"{q}:{seed}")
    p = random_blocks(rng, rng.randint(3, 6))
    s = n_steps(p, q, n_max)
    for _ in range(iters):
        p2 = mutate(rng, p)
        s2 = n_steps(p2, q, n_max)
        if s2 >= s and s2 > 0:
            p, s = p2, s2
    return p, s


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="tests/data/procp_multistep.json")
    ap.add_argument("--seeds", type=int, default=60)
    ap.add_argument("--iters", type=int, default=400)
    ap.add_argument("--min-steps", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=48)
    args = ap.parse_args()
    corpus = []
    for q in (2, 3):
        for seed in range(args.seeds):
            p, s = climb(seed, q, args.iters, args.n_max)
            if s >= args.min_steps:
                f, g = expand(p)
                corpus.append({"q": q, "seed": seed, "steps": s, "f": f, "g": g})
                print(f"q={q} seed={seed} steps={s}", flush=True)
    with open(args.out, "w") as fh:
        json.dump(corpus, fh)
    print(f"{len(corpus)} pairs written to {args.out}")


if __name__ == "__main__":
    main()
