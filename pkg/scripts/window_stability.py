"""Check that hypercohomology stays put as the monomial window grows past the bound."""

import argparse

from framedlin.cohomology import hypercohomology
from framedlin.sampling import DEFAULT_SEED, Sampler


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--surface", default="P2")
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--extra", type=int, default=4)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    S = Sampler(args.seed)
    for _ in range(args.count):
        cx = S.complex(args.surface)
        N = cx.min_window()
        h = hypercohomology(cx, check_stability=False).h
        drift = [w for w in range(N + 1, N + args.extra + 1)
                 if hypercohomology(cx, window=w, check_stability=False).h != h]
        print(f"bound {N}: h={dict(sorted(h.items()))} {'stable' if not drift else f'changes at {drift}'}")


if __name__ == "__main__":
    main()
