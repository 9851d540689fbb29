"""Seeded generators of small exact test data."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .adhm import ADHMDatum, gl_action, monad_maps, torus_fixed_points
from .cohomology import LineBundleComplex
from .forms import Poly, PolyMatrix, Space, space_of
from .quiver import Representation, preset_p2
from .ratla import RationalMatrix, inverse, is_invertible
from .surface import NumericalClass, get_surface

DEFAULT_SEED = 20240917
NUMERATOR_BOUND = 5
DENOMINATORS = (1, 2, 3)


@dataclass
class Sampler:
    """Random rationals ``n/q`` with ``|n| <= 5`` and ``q`` in {1, 2, 3}, and objects built from them."""

    seed: int = DEFAULT_SEED

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    def scalar(self, nonzero: bool = False) -> Fraction:
        while True:
            x = Fraction(self.rng.randint(-NUMERATOR_BOUND, NUMERATOR_BOUND), self.rng.choice(DENOMINATORS))
            if x or not nonzero:
                return x

    def matrix(self, rows: int, cols: int, density: float = 1.0) -> RationalMatrix:
        return RationalMatrix(rows, cols, [self.scalar() if self.rng.random() < density else 0
                                           for _ in range(rows * cols)])

    def invertible(self, n: int) -> RationalMatrix:
        while True:
            g = self.matrix(n, n)
            if is_invertible(g):
                return g

    def numerical_class(self, surface, box: int = 4) -> NumericalClass:
        s = get_surface(surface)
        coords = [self.rng.randint(-box, box) for _ in range(s.picard_rank + 2)]
        return NumericalClass.from_coordinates(s, coords)

    def distinct_values(self, count: int) -> list:
        out: list = []
        while len(out) < count:
            x = self.scalar()
            if x not in out:
                out.append(x)
        return out

    def points(self, count: int) -> list:
        out: list = []
        while len(out) < count:
            p = (self.scalar(), self.scalar())
            if p not in out:
                out.append(p)
        return out

    # ADHM data ----------------------------------------------------------------

    def stable_adhm(self, k: int, r: int) -> ADHMDatum:
        """A stable solution: diagonal B's at distinct points, or a conjugated fixed point."""
        kind = self.rng.choice(["diagonal", "fixed"] if r == 1 else ["diagonal", "with_j"])
        if k == 0:
            return ADHMDatum.zero(0, r)
        if kind == "fixed":
            shapes = torus_fixed_points(k)
            d = shapes[self.rng.randrange(len(shapes))][1]
        else:
            pts = self.points(k)
            B1 = RationalMatrix(k, k, [pts[a][0] if a == b else 0 for a in range(k) for b in range(k)])
            B2 = RationalMatrix(k, k, [pts[a][1] if a == b else 0 for a in range(k) for b in range(k)])
            i_cols = r - 1 if kind == "with_j" else r
            while True:
                i = self.matrix(k, i_cols)
                if all(any(i[a, c] for c in range(i_cols)) for a in range(k)):
                    break
            i = i.hstack(RationalMatrix.zeros(k, r - i_cols))
            j = RationalMatrix.zeros(r, k)
            if kind == "with_j":
                j = RationalMatrix.zeros(r - 1, k).vstack(self.matrix(1, k))
            d = ADHMDatum(k, r, B1, B2, i, j)
        return gl_action(self.invertible(k), d)

    def nonsolution_adhm(self, k: int, r: int) -> ADHMDatum:
        if k == 0:
            raise ValueError("every k = 0 datum solves the equation")
        while True:
            d = ADHMDatum(k, r, self.matrix(k, k), self.matrix(k, k), self.matrix(k, r), self.matrix(r, k))
            if not d.residual().is_zero():
                return d

    def solution_adhm(self, k: int, r: int) -> ADHMDatum:
        """A solution that need not be stable: commuting B's, ij = 0 via split blocks."""
        d = self.stable_adhm(k, r)
        if self.rng.random() < 0.3 and k:
            return ADHMDatum(k, r, d.B1, d.B2, RationalMatrix.zeros(k, r), d.j)
        return d

    # representations ------------------------------------------------------------

    def p2_representation(self, dims: Sequence[int], satisfy: bool = True) -> Representation:
        """P2 quiver representation; relation-satisfying ones come from random solutions."""
        q, _ = preset_p2()
        d0, d1, d2 = dims
        if satisfy and d0 == d2 and d1 >= 2 * d0:
            k, r = d0, d1 - 2 * d0
            alpha, beta = monad_maps(self.solution_adhm(k, r))
            g = self.invertible(d1)
            h0, h2 = self.invertible(d0), self.invertible(d2)
            mats = {}
            for m in range(3):
                e = tuple(int(v == m) for v in range(3))
                mats[f"a{m + 1}"] = g @ alpha.coefficient_matrix(e) @ inverse(h0) if d0 else RationalMatrix(d1, 0)
                mats[f"b{m + 1}"] = h2 @ beta.coefficient_matrix(e) @ inverse(g) if d2 else RationalMatrix(0, d1)
            return Representation(tuple(dims), mats)
        if satisfy:
            raise ValueError("relation-satisfying samples need dims (k, 2k + r, k)")
        mats = {f"a{m}": self.matrix(d1, d0) for m in (1, 2, 3)}
        mats.update({f"b{m}": self.matrix(d2, d1) for m in (1, 2, 3)})
        return Representation(tuple(dims), mats)

    # complexes --------------------------------------------------------------------

    def form(self, space: Space, D, density: float = 0.7) -> Poly:
        mons = space.monomials(D) if min(space.twist(D)) >= 0 else []
        return Poly(space.nvars, {m: self.scalar() for m in mons if self.rng.random() < density})

    def complex(self, space, length: int | None = None, max_twist: int = 2, max_rank: int = 2) -> LineBundleComplex:
        """Random complex of length 1 to 3; three-term ones are sums of Koszul pieces and so compose to zero."""
        sp = space_of(space)
        length = self.rng.randint(1, 3) if length is None else length
        if length == 1:
            terms = [self._twists(sp, max_twist, max_rank)]
            return LineBundleComplex(sp, self.rng.randint(-1, 1), terms, ())
        if length == 2:
            src, dst = self._twists(sp, max_twist, max_rank), self._twists(sp, max_twist, max_rank)
            return LineBundleComplex(sp, self.rng.randint(-1, 0), [src, dst], [self._map(sp, src, dst)])
        cx = self._three_term(sp, max_twist)
        if self.rng.random() < 0.4:
            other = self._three_term(sp, max_twist)
            cx = cx.direct_sum(LineBundleComplex(sp, cx.start, other.terms, other.maps))
        return cx

    def _twists(self, sp: Space, max_twist: int, max_rank: int) -> list:
        return [tuple(self.rng.randint(-max_twist, max_twist) for _ in range(sp.rank))
                for _ in range(self.rng.randint(1, max_rank))]

    def _map(self, sp: Space, src: Sequence, dst: Sequence) -> PolyMatrix:
        entries = []
        for D2 in dst:
            for D1 in src:
                diff = tuple(a - b for a, b in zip(D2, D1))
                entries.append(self.form(sp, diff) if min(diff) >= 0 else Poly.zero(sp.nvars))
        return PolyMatrix(len(dst), len(src), sp.nvars, entries)

    def _three_term(self, sp: Space, max_twist: int) -> LineBundleComplex:
        """``O(a) -> O(a+b) + O(a+c) -> O(a+b+c)`` via ``(u, v)`` and ``w (v, -u)``."""
        a = tuple(self.rng.randint(-max_twist, 0) for _ in range(sp.rank))
        degs = []
        for _ in range(2):
            while True:
                d = tuple(self.rng.randint(0, 1) for _ in range(sp.rank))
                if any(d):
                    break
            degs.append(d)
        b, c = degs
        u, v = self.form(sp, b), self.form(sp, c)
        w = self.form(sp, (0,) * sp.rank)  # scalar factor on the second map
        if not w:
            w = Poly.const(sp.nvars, 1)
        mid = [tuple(x + y for x, y in zip(a, b)), tuple(x + y for x, y in zip(a, c))]
        top = [tuple(x + y + z for x, y, z in zip(a, b, c))]
        f = PolyMatrix.from_rows([[u], [v]], sp.nvars)
        g = PolyMatrix.from_rows([[v * w, -(u * w)]], sp.nvars)
        return LineBundleComplex(sp, self.rng.randint(-1, 0), [[a], mid, top], [f, g])
