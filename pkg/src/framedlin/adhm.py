"""ADHM data on (P2, line at infinity) and the monads they define."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import LineBundleComplex
from .forms import Poly, PolyMatrix
from .ratla import (RationalMatrix, as_scalar, complement_basis, inverse, is_invertible, kernel_basis, rank,
                    span_basis, sum_subspaces)


class ADHMEquationError(ValueError):
    def __init__(self, residual: RationalMatrix):
        super().__init__(f"[B1,B2] + ij is not zero: {residual}")
        self.residual = residual


class FramingError(RuntimeError):
    pass


@dataclass(frozen=True)
class ADHMDatum:
    k: int
    r: int
    B1: RationalMatrix
    B2: RationalMatrix
    i: RationalMatrix
    j: RationalMatrix

    def __post_init__(self):
        k, r = self.k, self.r
        if k < 0 or r < 0:
            raise ValueError("k and r must be nonnegative")
        want = {"B1": (k, k), "B2": (k, k), "i": (k, r), "j": (r, k)}
        for name, shape in want.items():
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @classmethod
    def from_lists(cls, B1, B2, i, j, k: int | None = None, r: int | None = None) -> "ADHMDatum":
        k = len(B1) if k is None else k
        r = (len(j) if j else (len(i[0]) if i and i[0] else 0)) if r is None else r
        return cls(k, r, RationalMatrix.from_rows(B1, cols=k), RationalMatrix.from_rows(B2, cols=k),
                   RationalMatrix.from_rows(i, cols=r) if k else RationalMatrix(0, r),
                   RationalMatrix.from_rows(j, cols=k) if r else RationalMatrix(0, k))

    @classmethod
    def zero(cls, k: int, r: int) -> "ADHMDatum":
        Z = RationalMatrix.zeros
        return cls(k, r, Z(k, k), Z(k, k), Z(k, r), Z(r, k))

    def residual(self) -> RationalMatrix:
        return self.B1 @ self.B2 - self.B2 @ self.B1 + self.i @ self.j

    def to_json(self) -> dict:
        return {"k": self.k, "r": self.r, "B1": self.B1.to_json(), "B2": self.B2.to_json(),
                "i": self.i.to_json(), "j": self.j.to_json()}

    @classmethod
    def from_json(cls, obj) -> "ADHMDatum":
        M = RationalMatrix.from_json
        return cls(int(obj["k"]), int(obj["r"]), M(obj["B1"]), M(obj["B2"]), M(obj["i"]), M(obj["j"]))


def check_equation(d: ADHMDatum) -> bool:
    return d.residual().is_zero()


def krylov_closure(generators: Sequence[Sequence], operators: Sequence[RationalMatrix], dim: int) -> list:
    """Smallest subspace containing ``generators`` and stable under every operator."""
    basis = span_basis([list(g) for g in generators], dim) if generators else []
    while True:
        images = [op.apply(v) for op in operators for v in basis]
        grown = sum_subspaces([basis, images], dim) if images else basis
        if len(grown) == len(basis):
            return basis
        basis = grown


def is_stable(d: ADHMDatum) -> bool:
    if d.k == 0:
        return True
    return len(krylov_closure(d.i.columns(), [d.B1, d.B2], d.k)) == d.k


def is_costable(d: ADHMDatum) -> bool:
    """No nonzero B-invariant subspace inside ker j; dual to stability for the transposes."""
    if d.k == 0:
        return True
    return len(krylov_closure(d.j.to_rows(), [d.B1.T, d.B2.T], d.k)) == d.k


# monads ---------------------------------------------------------------------------


def _lin(coeffs: Sequence) -> Poly:
    return Poly.linear(coeffs)


def monad_maps(d: ADHMDatum) -> tuple[PolyMatrix, PolyMatrix]:
    """``alpha = (B1 x2 - x0; B2 x2 - x1; j x2)`` and ``beta = (-(B2 x2 - x1) | B1 x2 - x0 | i x2)``."""
    k, r = d.k, d.r
    I = RationalMatrix.identity(k)
    Zk, Zkr, Zrk = RationalMatrix.zeros(k, k), RationalMatrix.zeros(k, r), RationalMatrix.zeros(r, k)
    alpha = PolyMatrix.from_linear([
        (-I).vstack(Zk, Zrk),
        Zk.vstack(-I, Zrk),
        d.B1.vstack(d.B2, d.j),
    ]) if k else PolyMatrix.zeros(2 * k + r, k, 3)
    beta = PolyMatrix.from_linear([
        Zk.hstack(-I, Zkr),
        I.hstack(Zk, Zkr),
        (-d.B2).hstack(d.B1, d.i),
    ]) if k else PolyMatrix.zeros(k, 2 * k + r, 3)
    return alpha, beta


def monad_from_adhm(d: ADHMDatum) -> LineBundleComplex:
    """The monad ``O(-1)^k -> O^(2k+r) -> O(1)^k`` in positions -1, 0, 1."""
    if not check_equation(d):
        raise ADHMEquationError(d.residual())
    alpha, beta = monad_maps(d)
    terms = [[(-1,)] * d.k, [(0,)] * (2 * d.k + d.r), [(1,)] * d.k]
    return LineBundleComplex("P2", -1, terms, [alpha, beta])


def _point(p: Sequence) -> tuple:
    p = tuple(as_scalar(x) for x in p)
    if len(p) != 3 or not any(p):
        raise ValueError(f"not a point of P2: {p}")
    return p


def fiber_homology(monad: LineBundleComplex, point: Sequence) -> tuple[int, list]:
    """Dimension of ``ker beta(p) / im alpha(p)`` and vectors spanning a complement of the image."""
    p = _point(point)
    A = monad.map(-1).evaluate(p)
    B = monad.map(0).evaluate(p)
    n = A.rows
    Z = kernel_basis(B) if n else []
    im = A.columns() if A.cols else []
    H = complement_basis(im, Z, n)
    return len(H), H


def w_projection(d: ADHMDatum, vectors: Sequence[Sequence]) -> RationalMatrix:
    """Coordinates of ``vectors`` in the W-block of ``O^(2k+r)`` (one column per vector)."""
    cols = [list(v[2 * d.k:]) for v in vectors]
    return RationalMatrix.from_columns(cols, rows=d.r) if cols else RationalMatrix(d.r, 0)


LINE_SAMPLES = ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (2, 1, 0))


@dataclass
class CanonicalFraming:
    """The W-block sections of a stable monad restricted to the line at infinity."""

    rank: int
    sections: RationalMatrix   # (2k+r) x r constant sections of the middle term
    samples: list

    def to_json(self) -> dict:
        return {"rank": self.rank, "sections": self.sections.to_json(),
                "samples": [{"point": [str(x) for x in p], "fiber_dim": n, "w_invertible": ok}
                            for p, n, ok in self.samples]}


def canonical_framing(d: ADHMDatum, points: Sequence = LINE_SAMPLES) -> CanonicalFraming:
    """Sections ``(0, 0, e_w)`` trivializing the restriction to the line, checked fiberwise.

    Stability is a precondition: on the line the restricted monad does not see
    (B1, B2, i, j) at all, so the fiber test alone cannot detect an unstable datum.
    """
    if not check_equation(d):
        raise FramingError(f"equation fails: residual {d.residual()}")
    if not is_stable(d):
        raise FramingError("datum is not stable; the sheaf is not torsion free and has no framing")
    monad = monad_from_adhm(d)
    samples = []
    for p in points:
        p = _point(p)
        if p[2] != 0:
            raise ValueError(f"{p} is not on the line x2 = 0")
        n, H = fiber_homology(monad, p)
        P = w_projection(d, H)
        ok = n == d.r and (d.r == 0 or is_invertible(P))
        samples.append((p, n, ok))
        if not ok:
            raise FramingError(f"W-projection of fiber homology at {p} is not invertible")
    sections = RationalMatrix.zeros(2 * d.k, d.r).vstack(RationalMatrix.identity(d.r))
    return CanonicalFraming(d.r, sections, samples)


# special data ---------------------------------------------------------------------


def partitions(k: int, largest: int | None = None):
    """Partitions of k as nonincreasing tuples, in reverse lexicographic order."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first, *rest)


def young_datum(shape: Sequence[int]) -> ADHMDatum:
    """Fixed point for a partition: boxes (a, b) with a < shape[b]; B1 moves a, B2 moves b."""
    boxes = [(a, b) for b, row in enumerate(shape) for a in range(row)]
    index = {box: n for n, box in enumerate(boxes)}
    k = len(boxes)
    B1 = [[Fraction(0)] * k for _ in range(k)]
    B2 = [[Fraction(0)] * k for _ in range(k)]
    for (a, b), n in index.items():
        if (a + 1, b) in index:
            B1[index[(a + 1, b)]][n] = Fraction(1)
        if (a, b + 1) in index:
            B2[index[(a, b + 1)]][n] = Fraction(1)
    i = [[Fraction(int(n == 0))] for n in range(k)]
    return ADHMDatum(k, 1, RationalMatrix.from_rows(B1, cols=k), RationalMatrix.from_rows(B2, cols=k),
                     RationalMatrix.from_rows(i, cols=1) if k else RationalMatrix(0, 1), RationalMatrix(1, k))


def torus_fixed_points(k: int, r: int = 1) -> list[tuple[tuple, ADHMDatum]]:
    if r != 1:
        raise NotImplementedError("torus fixed points are only enumerated for r = 1")
    return [(lam, young_datum(lam)) for lam in partitions(k)]


def adhm_from_points(points: Sequence[Sequence]) -> ADHMDatum:
    k = len(points)
    B1 = RationalMatrix(k, k, [as_scalar(points[a][0]) if a == b else 0 for a in range(k) for b in range(k)])
    B2 = RationalMatrix(k, k, [as_scalar(points[a][1]) if a == b else 0 for a in range(k) for b in range(k)])
    return ADHMDatum(k, 1, B1, B2, RationalMatrix(k, 1, [1] * k), RationalMatrix(1, k))


def gl_action(g: RationalMatrix, d: ADHMDatum) -> ADHMDatum:
    if g.shape != (d.k, d.k):
        raise ValueError(f"g has shape {g.shape}, expected {(d.k, d.k)}")
    gi = inverse(g)
    return ADHMDatum(d.k, d.r, g @ d.B1 @ gi, g @ d.B2 @ gi, g @ d.i, d.j @ gi)


# tangent space ----------------------------------------------------------------------


@dataclass
class TangentReport:
    rank_dmu: int
    stabilizer_dim: int
    tangent_dim: int

    def to_json(self) -> dict:
        return {"rank_dmu": self.rank_dmu, "stabilizer_dim": self.stabilizer_dim, "tangent_dim": self.tangent_dim}


def _unit(rows: int, cols: int, n: int) -> RationalMatrix:
    return RationalMatrix(rows, cols, [int(t == n) for t in range(rows * cols)])


def tangent_report(d: ADHMDatum) -> TangentReport:
    """Rank of the linearized moment map and dimension of the infinitesimal stabilizer."""
    if not check_equation(d):
        raise ADHMEquationError(d.residual())
    k, r = d.k, d.r
    if k == 0:
        return TangentReport(0, 0, 0)
    cols = []
    for n in range(k * k):
        dB = _unit(k, k, n)
        cols.append((dB @ d.B2 - d.B2 @ dB).entries)
    for n in range(k * k):
        dB = _unit(k, k, n)
        cols.append((d.B1 @ dB - dB @ d.B1).entries)
    for n in range(k * r):
        cols.append((_unit(k, r, n) @ d.j).entries)
    for n in range(r * k):
        cols.append((d.i @ _unit(r, k, n)).entries)
    rank_dmu = rank(RationalMatrix.from_columns(cols, rows=k * k))
    stab_cols = []
    for n in range(k * k):
        xi = _unit(k, k, n)
        stab_cols.append(list((xi @ d.B1 - d.B1 @ xi).entries) + list((xi @ d.B2 - d.B2 @ xi).entries)
                         + list((xi @ d.i).entries) + list((d.j @ xi).entries))
    S = RationalMatrix.from_columns(stab_cols, rows=2 * k * k + 2 * k * r)
    stab = len(kernel_basis(S))
    tangent = (2 * k * k + 2 * k * r - rank_dmu) - (k * k - stab)
    return TangentReport(rank_dmu, stab, tangent)
