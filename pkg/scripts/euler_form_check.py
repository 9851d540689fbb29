"""Tabulate the quiver Euler form against Riemann-Roch on a box of numerical classes."""

import argparse
import itertools

from framedlin.quiver import dimension_vector, euler_form, preset
from framedlin.surface import NumericalClass, chern_character, chi_pair, get_surface


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--surface", default="P2", choices=("P2", "P1xP1"))
    ap.add_argument("--box", type=int, default=2)
    args = ap.parse_args()
    s = get_surface(args.surface)
    q, J = preset(s.tag)
    rng = range(-args.box, args.box + 1)
    classes = [NumericalClass.from_coordinates(s, c) for c in itertools.product(rng, repeat=s.picard_rank + 2)]
    bad = 0
    for v, w in itertools.product(classes, repeat=2):
        d = dimension_vector(s, v, allow_negative=True)
        e = dimension_vector(s, w, allow_negative=True)
        bad += euler_form(q, J, d, e) != chi_pair(s, chern_character(v), chern_character(w))
    print(f"{s.tag}: {len(classes) ** 2} pairs, {bad} mismatches")


if __name__ == "__main__":
    main()
