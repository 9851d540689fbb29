"""Random point configurations in the plane pushed through the whole pipeline."""

import argparse

from framedlin.heart import hilbert_demo
from framedlin.sampling import DEFAULT_SEED, Sampler


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    S = Sampler(args.seed)
    for t in range(args.trials):
        pts = S.points(args.k)
        rep = hilbert_demo(pts, seed=args.seed + t)
        failed = [c.id for c in rep.checks if not c.passed]
        shown = " ".join(f"({x},{y})" for x, y in pts)
        print(f"{shown}: {'pass' if rep.passed else 'FAIL ' + ','.join(failed)}")


if __name__ == "__main__":
    main()
