"""Hypercohomology of complexes of sums of line bundles on P1, P2 and P1xP1.

The engine works on the Cech double complex of the standard toric cover,
with chart sections written as Laurent monomials. A Laurent monomial ``x^m``
is a section over the chart intersection ``U_S`` exactly when every variable
with a negative exponent is inverted on some chart of ``S``, so the Cech
complex of a line bundle splits into one small complex per monomial, and that
complex depends only on the set of negative variables (its *pattern*).

Two independent solvers share this description:

* ``method="reduced"`` contracts each pattern complex onto its cohomology
  with an explicit strong deformation retraction and transfers the maps of
  the complex through the perturbation lemma. The transferred complex has one
  basis vector per cohomology monomial, so ranks are tiny.
* ``method="direct"`` assembles the whole truncated total complex and takes
  sparse exact ranks.

Monomials are truncated to the window ``m_j >= -N``. The window is a
subcomplex (maps only raise exponents) and every monomial carrying
cohomology of a summand lies inside it once ``N`` clears the twists, so the
truncation is exact; stability at ``N + 2`` is re-checked anyway.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .forms import P1_SPACE, Poly, PolyMatrix, Space, space_of
from .ratla import (RationalMatrix, complement_basis, inverse, kernel_basis, rank, solve, span_basis,
                    sparse_rank)
from .surface import CurveModel, get_curve

log = logging.getLogger(__name__)


class ComplexError(ValueError):
    """A map has the wrong shape or degree, or consecutive maps do not compose to zero."""


class WindowError(ValueError):
    pass


class NotLocallyFreeError(ValueError):
    pass


# complexes ------------------------------------------------------------------


@dataclass(frozen=True)
class LineBundleComplex:
    """Bounded complex ``terms[0] -> terms[1] -> ...`` placed at positions ``start, start+1, ...``.

    ``terms[k]`` lists the twists of the line-bundle summands at position
    ``start + k``; ``maps[k]`` is a ``len(terms[k+1]) x len(terms[k])`` matrix of
    forms whose entry (r, c) has degree ``terms[k+1][r] - terms[k][c]``.
    """

    space: Space
    start: int
    terms: tuple
    maps: tuple = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        sp = space_of(self.space)
        object.__setattr__(self, "space", sp)
        object.__setattr__(self, "terms", tuple(tuple(sp.twist(D) for D in t) for t in self.terms))
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.check:
            self.validate()

    @property
    def end(self) -> int:
        return self.start + len(self.terms) - 1

    @property
    def positions(self) -> range:
        return range(self.start, self.start + len(self.terms))

    def term(self, p: int) -> tuple:
        k = p - self.start
        return self.terms[k] if 0 <= k < len(self.terms) else ()

    def map(self, p: int) -> PolyMatrix | None:
        """Differential leaving position p."""
        k = p - self.start
        return self.maps[k] if 0 <= k < len(self.maps) else None

    def validate(self) -> None:
        sp = self.space
        if len(self.maps) != max(len(self.terms) - 1, 0):
            raise ComplexError(f"{len(self.terms)} terms need {max(len(self.terms) - 1, 0)} maps")
        for k, M in enumerate(self.maps):
            src, dst = self.terms[k], self.terms[k + 1]
            if M.shape != (len(dst), len(src)) or M.nvars != sp.nvars:
                raise ComplexError(f"map {k} has shape {M.shape}, expected {(len(dst), len(src))}")
            for r in range(M.rows):
                for c in range(M.cols):
                    p = M[r, c]
                    if not p:
                        continue
                    want = tuple(a - b for a, b in zip(dst[r], src[c]))
                    if p.degrees(sp) != {want}:
                        raise ComplexError(f"map {k} entry ({r},{c}) = {p} is not of degree {want}")
        for k in range(len(self.maps) - 1):
            comp = self.maps[k + 1] @ self.maps[k]
            if not comp.is_zero():
                raise ComplexError(f"maps {k} and {k + 1} do not compose to zero: {comp}")

    def max_twist(self) -> int:
        return max((abs(x) for t in self.terms for D in t for x in D), default=0)

    def total_map_degree(self) -> int:
        return sum(M.max_degree() for M in self.maps)

    def min_window(self) -> int:
        return 2 + self.max_twist() + self.total_map_degree()

    def twisted(self, D) -> "LineBundleComplex":
        D = self.space.twist(D)
        terms = [[tuple(a + b for a, b in zip(t, D)) for t in term] for term in self.terms]
        return LineBundleComplex(self.space, self.start, terms, self.maps, check=False)

    def shifted(self, k: int) -> "LineBundleComplex":
        """Complex with term at position p moved to position p - k (maps negated for odd k)."""
        sign = -1 if k % 2 else 1
        return LineBundleComplex(self.space, self.start - k, self.terms,
                                 [M.scale(sign) for M in self.maps], check=False)

    def tensor(self, other: "LineBundleComplex") -> "LineBundleComplex":
        """Tensor product with the Koszul sign ``d(e x f) = de x f + (-1)^p e x df``."""
        if self.space != other.space:
            raise ComplexError("tensor product of complexes on different spaces")
        if not self.terms or not other.terms:
            return LineBundleComplex(self.space, 0, (), ())
        n = self.space.nvars
        start = self.start + other.start
        end = self.end + other.end
        blocks = {}  # position -> list of (p, q)
        for p in self.positions:
            for q in other.positions:
                blocks.setdefault(p + q, []).append((p, q))
        terms, offsets = [], {}
        for pos in range(start, end + 1):
            summands, off = [], 0
            for p, q in blocks[pos]:
                offsets[(p, q)] = off
                for a in self.term(p):
                    for b in other.term(q):
                        summands.append(tuple(x + y for x, y in zip(a, b)))
                off += len(self.term(p)) * len(other.term(q))
            terms.append(summands)
        maps = []
        for pos in range(start, end):
            rows, cols = len(terms[pos + 1 - start]), len(terms[pos - start])
            grid = [[Poly.zero(n) for _ in range(cols)] for _ in range(rows)]
            for p, q in blocks[pos]:
                c0 = offsets[(p, q)]
                nb = len(other.term(q))
                if self.map(p) is not None and (p + 1, q) in offsets:
                    r0 = offsets[(p + 1, q)]
                    M = self.map(p)
                    for i in range(M.rows):
                        for j in range(M.cols):
                            if M[i, j]:
                                for b in range(nb):
                                    grid[r0 + i * nb + b][c0 + j * nb + b] = grid[r0 + i * nb + b][c0 + j * nb + b] + M[i, j]
                if other.map(q) is not None and (p, q + 1) in offsets:
                    r0 = offsets[(p, q + 1)]
                    M = other.map(q)
                    sign = -1 if p % 2 else 1
                    nb1 = len(other.term(q + 1))
                    for a in range(len(self.term(p))):
                        for i in range(M.rows):
                            for j in range(M.cols):
                                if M[i, j]:
                                    r, c = r0 + a * nb1 + i, c0 + a * nb + j
                                    grid[r][c] = grid[r][c] + M[i, j].scale(sign)
            maps.append(PolyMatrix(rows, cols, n, [x for row in grid for x in row]))
        return LineBundleComplex(self.space, start, terms, maps, check=False)

    def direct_sum(self, other: "LineBundleComplex") -> "LineBundleComplex":
        if self.space != other.space:
            raise ComplexError("direct sum of complexes on different spaces")
        if not self.terms:
            return other
        if not other.terms:
            return self
        n = self.space.nvars
        start, end = min(self.start, other.start), max(self.end, other.end)
        terms = [list(self.term(p)) + list(other.term(p)) for p in range(start, end + 1)]
        maps = []
        for p in range(start, end):
            A = self.map(p) or PolyMatrix.zeros(len(self.term(p + 1)), len(self.term(p)), n)
            B = other.map(p) or PolyMatrix.zeros(len(other.term(p + 1)), len(other.term(p)), n)
            maps.append(A.block(B))
        return LineBundleComplex(self.space, start, terms, maps, check=False)

    def restrict(self, forms: Sequence[Poly], target: Space, degree_of) -> "LineBundleComplex":
        terms = [[target.twist(degree_of(D)) for D in t] for t in self.terms]
        maps = [M.substitute(forms) for M in self.maps]
        return LineBundleComplex(target, self.start, terms, maps)

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "space": self.space.name,
            "positions": [self.start, self.end],
            "terms": [[list(D) for D in t] for t in self.terms],
            "maps": [M.to_json() for M in self.maps],
        }

    @classmethod
    def from_json(cls, obj) -> "LineBundleComplex":
        sp = space_of(obj["space"])
        start = int(obj["positions"][0])
        terms = obj["terms"]
        if len(obj["positions"]) > 1 and terms and int(obj["positions"][1]) != start + len(terms) - 1:
            raise ComplexError("positions do not match the number of terms")
        maps = [PolyMatrix.from_json(sp.nvars, m) for m in obj.get("maps", [])]
        return cls(sp, start, terms, maps)


def single_term(space, twists: Sequence, position: int = 0) -> LineBundleComplex:
    """Direct sum of line bundles placed at one position (zero differentials)."""
    return LineBundleComplex(space, position, [list(twists)], ())


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# closed forms -----------------------------------------------------------------


def _p1(m: int) -> tuple[int, int]:
    return (m + 1, 0) if m >= 0 else (0, max(-m - 1, 0))


def line_bundle_cohomology(space, D) -> tuple[int, ...]:
    """``(h^0, h^1[, h^2])`` of a line bundle from Bott's formula and Kunneth."""
    sp = space_of(space)
    D = sp.twist(D)
    if sp.name == "P1":
        return _p1(D[0])
    if sp.name == "P2":
        d = D[0]
        h0 = comb(d + 2, 2) if d >= 0 else 0
        h2 = comb(-d - 1, 2) if d <= -3 else 0
        return (h0, 0, h2)
    if sp.name == "P1xP1":
        a, b = _p1(D[0]), _p1(D[1])
        return (a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1])
    raise ValueError(sp.name)


def chi_line_bundle(space, D) -> int:
    h = line_bundle_cohomology(space, D)
    return sum(_sign(i) * x for i, x in enumerate(h))


def euler_characteristic(cx: LineBundleComplex) -> int:
    """Alternating sum over positions of the Riemann-Roch values of the summands."""
    return sum(_sign(p) * chi_line_bundle(cx.space, D) for p in cx.positions for D in cx.term(p))


# pattern complexes ------------------------------------------------------------


@dataclass
class PatternRetraction:
    """Cech complex of one negativity pattern with a contraction onto its cohomology.

    ``pi[S]`` and ``h[S]`` are sparse images of the basis cochain at chart
    subset ``S``; ``iota[i]`` is the representative of cohomology vector ``i``.
    Conventions: ``pi iota = 1`` and ``1 - iota pi = delta h + h delta``.
    """

    cells: list
    hdeg: list            # Cech degree of each cohomology vector
    pi: dict
    h: dict
    iota: list

    @property
    def dims(self) -> dict:
        out: dict = defaultdict(int)
        for q in self.hdeg:
            out[q] += 1
        return dict(out)


def _subsets(n: int):
    from itertools import combinations
    for k in range(1, n + 1):
        yield from combinations(range(n), k)


def cech_cells(space: Space, pattern: frozenset) -> list:
    out = []
    for S in _subsets(len(space.charts)):
        inverted = frozenset().union(*(space.charts[c] for c in S))
        if pattern <= inverted:
            out.append(S)
    return out


def cech_coboundary(S: tuple, nch: int, valid: set) -> list:
    """Sparse Cech coboundary of the cochain supported at S."""
    out = []
    for c in range(nch):
        if c in S:
            continue
        T = tuple(sorted(S + (c,)))
        if T in valid:
            out.append((T, -1 if T.index(c) % 2 else 1))
    return out


@lru_cache(maxsize=None)
def pattern_retraction(space: Space, pattern: frozenset) -> PatternRetraction:
    cells = cech_cells(space, pattern)
    valid = set(cells)
    nch = len(space.charts)
    by_deg: dict = defaultdict(list)
    for S in cells:
        by_deg[len(S) - 1].append(S)
    top = max(by_deg) if by_deg else -1
    index = {q: {S: i for i, S in enumerate(by_deg.get(q, []))} for q in range(top + 2)}

    def delta_matrix(q):
        src, dst = by_deg.get(q, []), by_deg.get(q + 1, [])
        cols = []
        for S in src:
            v = [Fraction(0)] * len(dst)
            for T, sgn in cech_coboundary(S, nch, valid):
                v[index[q + 1][T]] += sgn
            cols.append(v)
        return RationalMatrix.from_columns(cols, rows=len(dst)) if cols else RationalMatrix(len(dst), 0)

    pi: dict = {}
    h: dict = {}
    iota: list = []
    hdeg: list = []
    prev_K: list = []  # complement K_{q-1}, whose coboundaries form the chosen basis of B_q
    for q in range(0, top + 1):
        n = len(by_deg.get(q, []))
        if n == 0:
            prev_K = []
            continue
        D = delta_matrix(q)
        Z = kernel_basis(D) if D.cols else []
        Dprev = delta_matrix(q - 1) if q > 0 else None
        B = [Dprev.apply(k) for k in prev_K] if Dprev is not None else []
        H = complement_basis(B, Z, n)
        unit = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        K = complement_basis(B + H, unit, n)
        P = RationalMatrix.from_columns(B + H + K, rows=n)
        if P.cols != n:
            raise RuntimeError("pattern decomposition is not a basis")
        Pinv = inverse(P)
        nb, nh = len(B), len(H)
        hstart = len(iota)
        for S, i in index[q].items():
            coords = Pinv.col(i)
            pi[S] = [(hstart + a, coords[nb + a]) for a in range(nh) if coords[nb + a]]
            img: dict = defaultdict(Fraction)
            for b in range(nb):
                if coords[b]:
                    for t, x in enumerate(prev_K[b]):
                        if x:
                            img[by_deg[q - 1][t]] += coords[b] * x
            h[S] = [(T, x) for T, x in img.items() if x]
        for vec in H:
            iota.append([(by_deg[q][t], x) for t, x in enumerate(vec) if x])
            hdeg.append(q)
        prev_K = K
    return PatternRetraction(cells, hdeg, pi, h, iota)


def negativity(m: Sequence[int]) -> frozenset:
    return frozenset(v for v, e in enumerate(m) if e < 0)


# reduced (transferred) complex ------------------------------------------------


def _add_into(acc: dict, key, val) -> None:
    x = acc.get(key, 0) + val
    if x:
        acc[key] = x
    else:
        acc.pop(key, None)


class CechModel:
    """The truncated Cech double complex of a line-bundle complex, lazily.

    Cells are ``(p, s, m, S)``: position, summand, Laurent monomial, chart
    subset. The total differential is ``phi + (-1)^p delta``.
    """

    def __init__(self, cx: LineBundleComplex, window: int):
        self.cx = cx
        self.space = cx.space
        self.window = window
        self._cols = {}
        for p in cx.positions:
            M = cx.map(p)
            if M is None:
                continue
            for c in range(M.cols):
                self._cols[(p, c)] = [(r, list(M[r, c].terms.items())) for r in range(M.rows) if M[r, c]]

    def phi(self, vec: dict) -> dict:
        out: dict = {}
        for (p, s, m, S), c in vec.items():
            for r, terms in self._cols.get((p, s), ()):
                for e, a in terms:
                    _add_into(out, (p + 1, r, tuple(x + y for x, y in zip(m, e)), S), a * c)
        return out

    def delta(self, vec: dict) -> dict:
        out: dict = {}
        nch = len(self.space.charts)
        for (p, s, m, S), c in vec.items():
            valid = set(pattern_retraction(self.space, negativity(m)).cells)
            sign = -c if p % 2 else c
            for T, x in cech_coboundary(S, nch, valid):
                _add_into(out, (p, s, m, T), sign * x)
        return out

    def contract(self, vec: dict) -> dict:
        """The homotopy ``-(-1)^p h`` (sign chosen for the perturbation lemma)."""
        out: dict = {}
        for (p, s, m, S), c in vec.items():
            R = pattern_retraction(self.space, negativity(m))
            sign = c if p % 2 else -c
            for T, x in R.h.get(S, ()):
                _add_into(out, (p, s, m, T), sign * x)
        return out

    def project(self, vec: dict) -> dict:
        out: dict = {}
        for (p, s, m, S), c in vec.items():
            R = pattern_retraction(self.space, negativity(m))
            for i, x in R.pi.get(S, ()):
                _add_into(out, (p, s, m, i), c * x)
        return out

    def include(self, label) -> dict:
        p, s, m, i = label
        R = pattern_retraction(self.space, negativity(m))
        return {(p, s, m, S): x for S, x in R.iota[i]}

    # perturbed maps
    def include_perturbed(self, red: dict) -> dict:
        total: dict = {}
        v: dict = {}
        for label, c in red.items():
            for key, x in self.include(label).items():
                _add_into(v, key, c * x)
        while v:
            for key, x in v.items():
                _add_into(total, key, x)
            v = self.contract(self.phi(v))
        return total

    def project_perturbed(self, vec: dict) -> dict:
        acc: dict = {}
        w = dict(vec)
        while w:
            for key, x in self.project(w).items():
                _add_into(acc, key, x)
            w = self.phi(self.contract(w))
        return acc

    def transferred_differential(self, label) -> dict:
        acc: dict = {}
        v = self.include(label)
        while v:
            w = self.phi(v)
            for key, x in self.project(w).items():
                _add_into(acc, key, x)
            v = self.contract(w)
        return acc


def _cohomology_monomials(space: Space, D, window: int) -> list:
    out = []
    for m in space.monomials(D, lower=-window):
        R = pattern_retraction(space, negativity(m))
        for i, q in enumerate(R.hdeg):
            out.append((m, i, q))
    return out


@dataclass
class ReducedComplex:
    """Finite complex quasi-isomorphic to the truncated Cech total complex."""

    model: CechModel
    basis: dict           # total degree -> list of labels (p, s, m, i)
    differential: dict    # total degree n -> RationalMatrix from degree n to n + 1

    @classmethod
    def build(cls, cx: LineBundleComplex, window: int) -> "ReducedComplex":
        model = CechModel(cx, window)
        basis: dict = defaultdict(list)
        for p in cx.positions:
            for s, D in enumerate(cx.term(p)):
                for m, i, q in _cohomology_monomials(cx.space, D, window):
                    basis[p + q].append((p, s, m, i))
        for n in basis:
            basis[n].sort()
        index = {n: {lab: k for k, lab in enumerate(labs)} for n, labs in basis.items()}
        diff = {}
        for n, labs in basis.items():
            tgt = basis.get(n + 1, [])
            cols = []
            for lab in labs:
                img = model.transferred_differential(lab)
                v = [Fraction(0)] * len(tgt)
                for key, x in img.items():
                    if key not in index.get(n + 1, {}):
                        raise WindowError(f"transferred differential leaves the window at {key}")
                    v[index[n + 1][key]] = x
                cols.append(v)
            diff[n] = RationalMatrix.from_columns(cols, rows=len(tgt)) if cols else RationalMatrix(len(tgt), 0)
        return cls(model, dict(basis), diff)

    def degrees(self) -> list:
        return sorted(self.basis)

    def matrix(self, n: int) -> RationalMatrix:
        if n in self.differential:
            return self.differential[n]
        return RationalMatrix(len(self.basis.get(n + 1, [])), len(self.basis.get(n, [])))

    def dimension(self, n: int) -> int:
        return len(self.basis.get(n, [])) - rank(self.matrix(n)) - rank(self.matrix(n - 1))

    def is_complex(self) -> bool:
        return all((self.matrix(n + 1) @ self.matrix(n)).is_zero() for n in self.basis)

    def cohomology_basis(self, n: int) -> list:
        """Deterministic representatives: kernel vectors (echelon form) completing the image."""
        dim = len(self.basis.get(n, []))
        Z = kernel_basis(self.matrix(n)) if dim else []
        prev = self.matrix(n - 1)
        B = prev.columns() if prev.cols else []
        return complement_basis(B, Z, dim)

    def coordinates(self, n: int, vec: Sequence, classes: Sequence) -> list | None:
        """Coordinates of the class of ``vec`` in terms of ``classes`` (cycles of degree n)."""
        prev = self.matrix(n - 1)
        cols = [list(c) for c in classes] + (prev.columns() if prev.cols else [])
        if not cols:
            return [] if not any(vec) else None
        x = solve(RationalMatrix.from_columns(cols, rows=len(vec)), vec)
        return None if x is None else x[:len(classes)]

    def to_vector(self, n: int, red: dict) -> list:
        idx = {lab: k for k, lab in enumerate(self.basis.get(n, []))}
        v = [Fraction(0)] * len(idx)
        for lab, x in red.items():
            v[idx[lab]] += x
        return v

    def from_vector(self, n: int, vec: Sequence) -> dict:
        return {lab: x for lab, x in zip(self.basis.get(n, []), vec) if x}


# reports ----------------------------------------------------------------------


@dataclass
class CohomologyReport:
    h: dict
    euler: int
    window: int
    window_stable: bool

    def __getitem__(self, n: int) -> int:
        return self.h.get(n, 0)

    def vector(self, lo: int, hi: int) -> tuple:
        return tuple(self.h.get(n, 0) for n in range(lo, hi + 1))

    def to_json(self) -> dict:
        return {"h": {str(n): d for n, d in sorted(self.h.items())}, "euler": self.euler,
                "window": self.window, "window_stable": self.window_stable}


def _check_window(cx: LineBundleComplex, window: int | None) -> int:
    need = cx.min_window()
    if window is None:
        return need
    if window < need:
        raise WindowError(f"window {window} is below the required bound {need}")
    return window


def _degree_range(cx: LineBundleComplex) -> range:
    if not cx.terms:
        return range(0)
    return range(cx.start, cx.end + cx.space.dim + 1)


def _dims_reduced(cx: LineBundleComplex, window: int) -> dict:
    red = ReducedComplex.build(cx, window)
    return {n: red.dimension(n) for n in _degree_range(cx)}


def _dims_direct(cx: LineBundleComplex, window: int) -> dict:
    sp = cx.space
    model = CechModel(cx, window)
    cells: dict = defaultdict(list)
    for p in cx.positions:
        for s, D in enumerate(cx.term(p)):
            for m in sp.monomials(D, lower=-window):
                for S in pattern_retraction(sp, negativity(m)).cells:
                    cells[p + len(S) - 1].append((p, s, m, S))
    ranks = {}
    for n, cs in cells.items():
        cols = []
        for cell in cs:
            img = model.phi({cell: Fraction(1)})
            for key, x in model.delta({cell: Fraction(1)}).items():
                _add_into(img, key, x)
            cols.append(img)
        ranks[n] = sparse_rank(cols)
    return {n: len(cells.get(n, [])) - ranks.get(n, 0) - ranks.get(n - 1, 0) for n in _degree_range(cx)}


def hypercohomology(cx: LineBundleComplex, window: int | None = None, method: str = "reduced",
                    check_stability: bool = True) -> CohomologyReport:
    """Hypercohomology dimensions ``h^n`` of a line-bundle complex.

    Raises :class:`WindowError` for a window below the bound and
    :class:`RuntimeError` if the alternating sum disagrees with Riemann-Roch.
    """
    N = _check_window(cx, window)
    solver = {"reduced": _dims_reduced, "direct": _dims_direct}[method]
    dims = solver(cx, N)
    stable = True
    if check_stability:
        stable = solver(cx, N + 2) == dims
        if not stable:
            log.warning("cohomology changed between windows %d and %d", N, N + 2)
    euler = sum(_sign(n) * d for n, d in dims.items())
    expected = euler_characteristic(cx)
    if euler != expected:
        raise RuntimeError(f"Euler characteristic mismatch: Cech gives {euler}, Riemann-Roch gives {expected}")
    return CohomologyReport({n: d for n, d in dims.items() if d}, euler, N, stable)


def h_vector(cx: LineBundleComplex, lo: int = 0, hi: int | None = None, **kw) -> tuple:
    rep = hypercohomology(cx, **kw)
    hi = cx.space.dim if hi is None else hi
    return rep.vector(lo, hi)


# Beilinson-style cross-check on P2 -------------------------------------------


def spectral_sequence_p2(cx: LineBundleComplex) -> dict:
    """``h^n`` from the two nonzero rows ``q = 0, 2`` of the first-quadrant spectral sequence.

    Row 0 holds global sections (monomials with nonnegative exponents), row 2
    holds top Cech classes (all exponents negative). With at most three
    positions every higher differential vanishes, so ``E_2`` is the abutment.
    """
    if cx.space.name != "P2":
        raise ValueError("the two-row cross-check is implemented for P2 only")
    if len(cx.terms) > 3:
        raise ValueError("degeneration at E2 is only guaranteed for complexes of length <= 3")
    sp = cx.space

    def basis(p, row):
        out = []
        for s, D in enumerate(cx.term(p)):
            d = D[0]
            if row == 0:
                mons = sp.monomials((d,), lower=0)
            else:
                mons = [m for m in sp.monomials((d,), lower=d + 2) if all(e < 0 for e in m)]
            out.extend((s, m) for m in mons)
        return out

    def row_map(p, row):
        src, dst = basis(p, row), basis(p + 1, row)
        idx = {b: i for i, b in enumerate(dst)}
        M = cx.map(p)
        cols = []
        for s, m in src:
            v = [Fraction(0)] * len(dst)
            if M is not None:
                for r in range(M.rows):
                    for e, a in M[r, s].terms.items():
                        mm = tuple(x + y for x, y in zip(m, e))
                        if (r, mm) in idx:
                            v[idx[(r, mm)]] += a
            cols.append(v)
        return RationalMatrix.from_columns(cols, rows=len(dst)) if cols else RationalMatrix(len(dst), 0)

    h: dict = defaultdict(int)
    for row in (0, 2):
        for p in cx.positions:
            n_here = len(basis(p, row))
            out_rank = rank(row_map(p, row))
            in_rank = rank(row_map(p - 1, row)) if p - 1 in cx.positions else 0
            e2 = n_here - out_rank - in_rank
            if e2:
                h[p + row] += e2
    return dict(h)


# curves and splitting -----------------------------------------------------------


def restrict_to_curve(cx: LineBundleComplex, C0) -> LineBundleComplex:
    """Pull a complex on a surface back along the parametrization of C0."""
    curve: CurveModel = get_curve(C0)
    if cx.space.name != curve.surface.tag:
        raise ValueError(f"curve {curve.name} lives on {curve.surface.tag}, complex on {cx.space.name}")
    forms = [Poly(2, f) for f in curve.parametrization]
    return cx.restrict(forms, P1_SPACE, lambda D: (curve.restricted_degree(D),))


def _sample_points_p1(count: int) -> list:
    pts = [(1, 0), (0, 1)]
    k = 1
    while len(pts) < count:
        pts.append((1, k))
        if len(pts) < count:
            pts.append((k + 1, -1))
        k += 1
    return [tuple(Fraction(x) for x in p) for p in pts[:count]]


def fiber_profile(cx: LineBundleComplex, point: Sequence) -> dict:
    """Dimensions of the cohomology of the fiber complex at a point, per position."""
    out = {}
    for p in cx.positions:
        n = len(cx.term(p))
        out_rank = rank(cx.map(p).evaluate(point)) if cx.map(p) is not None else 0
        in_rank = rank(cx.map(p - 1).evaluate(point)) if cx.map(p - 1) is not None else 0
        out[p] = n - out_rank - in_rank
    return out


def bundle_rank_on_p1(cx: LineBundleComplex, samples: int | None = None) -> int:
    """Rank of the bundle a complex on P1 presents at position 0; raises if it is not a bundle."""
    if cx.space.name != "P1":
        raise ValueError("expected a complex on P1")
    if samples is None:
        samples = 2 * max(1, cx.total_map_degree()) * max(1, max((len(t) for t in cx.terms), default=1)) + 3
    profiles = [fiber_profile(cx, pt) for pt in _sample_points_p1(samples)]
    ranks = {pr.get(0, 0) for pr in profiles}
    stray = any(d for pr in profiles for p, d in pr.items() if p != 0)
    if stray or len(ranks) > 1:
        raise NotLocallyFreeError(f"fiber cohomology jumps or lives off position 0: {profiles}")
    return ranks.pop() if ranks else 0


def degree_on_p1(cx: LineBundleComplex) -> int:
    """Degree of the presented bundle: ``chi(E) - rank`` with the complex's alternating sums."""
    r = sum(_sign(p) * len(cx.term(p)) for p in cx.positions)
    return euler_characteristic(cx) - r


def splitting_type(cx: LineBundleComplex) -> tuple:
    """Splitting type ``(a_1 >= ... >= a_r)`` read off the jumps of ``t -> h^0(E(t))``."""
    r = bundle_rank_on_p1(cx)
    if r == 0:
        return ()
    h0 = {}

    def f(t):
        if t not in h0:
            h0[t] = hypercohomology(cx.twisted((t,)), check_stability=False)[0]
        return h0[t]

    t = -cx.max_twist() - 1
    while f(t) != 0:
        t -= 1
    lo = t
    while f(t + 1) - f(t) != r:
        t += 1
    hi = t + 1
    # #{a_m >= -t} = f(t) - f(t-1)
    at_least = {u: f(u) - f(u - 1) for u in range(lo + 1, hi + 1)}
    degrees = []
    for c in range(-hi, -lo):
        ge_c = at_least.get(-c, 0 if -c <= lo else r)
        ge_next = at_least.get(-c - 1, 0 if -c - 1 <= lo else r)
        degrees.extend([c] * (ge_c - ge_next))
    degrees.sort(reverse=True)
    if len(degrees) != r or sum(degrees) != degree_on_p1(cx):
        raise RuntimeError(f"inconsistent splitting {degrees} for rank {r}")
    return tuple(degrees)


# chain maps --------------------------------------------------------------------


@dataclass
class ChainMap:
    source: LineBundleComplex
    target: LineBundleComplex
    components: dict      # position -> PolyMatrix

    def restrict(self, forms, target_source, target_target) -> "ChainMap":
        return ChainMap(target_source, target_target,
                        {p: M.substitute(forms) for p, M in self.components.items()})

    def apply_cech(self, vec: dict) -> dict:
        out: dict = {}
        for (p, s, m, S), c in vec.items():
            M = self.components.get(p)
            if M is None:
                continue
            for r in range(M.rows):
                for e, a in M[r, s].terms.items():
                    _add_into(out, (p, r, tuple(x + y for x, y in zip(m, e)), S), a * c)
        return out


def _unknowns(E: LineBundleComplex, F: LineBundleComplex, shift: int):
    """Monomial unknowns for maps E_p -> F_{p+shift}."""
    sp = E.space
    out = []
    for p in E.positions:
        for s, D in enumerate(E.term(p)):
            for r, D2 in enumerate(F.term(p + shift)):
                diff = tuple(a - b for a, b in zip(D2, D))
                if min(diff) < 0:
                    continue
                for e in sp.monomials(diff):
                    out.append((p, r, s, e))
    return out


def _to_matrices(E, F, shift, unknowns, coeffs) -> dict:
    n = E.space.nvars
    comps: dict = {}
    for p in E.positions:
        rows, cols = len(F.term(p + shift)), len(E.term(p))
        if rows and cols:
            comps[p] = [[{} for _ in range(cols)] for _ in range(rows)]
    for (p, r, s, e), c in zip(unknowns, coeffs):
        if c:
            comps[p][r][s][e] = comps[p][r][s].get(e, 0) + c
    return {p: PolyMatrix(len(g), len(g[0]), n, [Poly(n, d) for row in g for d in row]) for p, g in comps.items()}


def _compose_coeffs(E, F, f_unknowns, vec):
    """Coefficients of ``phi_F f - f phi_E`` for a map given by coefficient vector ``vec``."""
    f = _to_matrices(E, F, 0, f_unknowns, vec)
    out: dict = {}
    n = E.space.nvars
    for p in E.positions:
        rows, cols = len(F.term(p + 1)), len(E.term(p))
        if not rows or not cols:
            continue
        acc = PolyMatrix.zeros(rows, cols, n)
        if p in f and F.map(p) is not None:
            acc = acc + F.map(p) @ f[p]
        if (p + 1) in f and E.map(p) is not None:
            acc = acc - f[p + 1] @ E.map(p)
        for r in range(rows):
            for c in range(cols):
                for e, x in acc[r, c].terms.items():
                    out[(p, r, c, e)] = x
    return out


def chain_map_space(E: LineBundleComplex, F: LineBundleComplex):
    """Basis of chain maps ``E -> F`` modulo null-homotopic ones.

    Returns ``(unknowns, basis, homotopy_rank)``; each basis element is a
    coefficient vector over ``unknowns``.
    """
    if E.space != F.space:
        raise ValueError("complexes on different spaces")
    unk = _unknowns(E, F, 0)
    eqs: dict = {}
    for j in range(len(unk)):
        vec = [Fraction(int(i == j)) for i in range(len(unk))]
        for key, x in _compose_coeffs(E, F, unk, vec).items():
            eqs.setdefault(key, [Fraction(0)] * len(unk))[j] += x
    A = RationalMatrix.from_rows(list(eqs.values()), cols=len(unk)) if eqs else RationalMatrix(0, len(unk))
    Z = kernel_basis(A)
    # null-homotopic maps phi_F k + k phi_E with k: E_p -> F_{p-1}
    kunk = _unknowns(E, F, -1)
    index = {u: i for i, u in enumerate(unk)}
    Bvecs = []
    n = E.space.nvars
    for j in range(len(kunk)):
        k = _to_matrices(E, F, -1, kunk, [Fraction(int(i == j)) for i in range(len(kunk))])
        v = [Fraction(0)] * len(unk)
        for p in E.positions:
            rows, cols = len(F.term(p)), len(E.term(p))
            if not rows or not cols:
                continue
            acc = PolyMatrix.zeros(rows, cols, n)
            if p in k and F.map(p - 1) is not None:
                acc = acc + F.map(p - 1) @ k[p]
            if (p + 1) in k and E.map(p) is not None:
                acc = acc + k[p + 1] @ E.map(p)
            for r in range(rows):
                for c in range(cols):
                    for e, x in acc[r, c].terms.items():
                        v[index[(p, r, c, e)]] += x
        Bvecs.append(v)
    B = span_basis(Bvecs, len(unk)) if Bvecs else []
    basis = complement_basis(B, Z, len(unk))
    return unk, basis, len(B)


def chain_map_from_vector(E, F, unknowns, vec) -> ChainMap:
    return ChainMap(E, F, _to_matrices(E, F, 0, unknowns, vec))


def reduced_pair(E: LineBundleComplex, F: LineBundleComplex, window: int | None = None):
    """Reduced complexes of E and F built on a common window."""
    N = max(_check_window(E, window), _check_window(F, window))
    return ReducedComplex.build(E, N), ReducedComplex.build(F, N)


def induced_map(f: ChainMap, degree: int, window: int | None = None, reduced=None):
    """Matrix of the map on ``H^degree`` in the deterministic cohomology bases of source and target."""
    E, F = f.source, f.target
    RE, RF = reduced if reduced is not None else reduced_pair(E, F, window)
    bE, bF = RE.cohomology_basis(degree), RF.cohomology_basis(degree)
    cols = []
    for v in bE:
        cech = RE.model.include_perturbed(RE.from_vector(degree, v))
        image = RF.model.project_perturbed(f.apply_cech(cech))
        w = RF.to_vector(degree, {k: x for k, x in image.items() if k[0] + _hdeg(F.space, k) == degree})
        coords = RF.coordinates(degree, w, bF)
        if coords is None:
            raise RuntimeError("induced image is not a cycle")
        cols.append(coords)
    return RationalMatrix.from_columns(cols, rows=len(bF)) if cols else RationalMatrix(len(bF), 0)


def _hdeg(space, label) -> int:
    p, s, m, i = label
    return pattern_retraction(space, negativity(m)).hdeg[i]
