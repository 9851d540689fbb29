"""Homogeneous coordinate rings of P1, P2, P1xP1 and matrices of forms over them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ratla import RationalMatrix, as_scalar, scalar_to_str


@dataclass(frozen=True)
class Space:
    """A smooth projective toric variety with its standard affine cover.

    ``grading[v]`` is the degree vector of variable ``v``; ``charts[c]`` is the
    set of variables inverted on chart ``c``.
    """

    name: str
    variables: tuple[str, ...]
    grading: tuple[tuple[int, ...], ...]
    charts: tuple[frozenset, ...]

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def rank(self) -> int:
        return len(self.grading[0])

    @property
    def dim(self) -> int:
        return self.nvars - self.rank

    def degree(self, exps: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(e * self.grading[v][g] for v, e in enumerate(exps)) for g in range(self.rank))

    def groups(self) -> list[list[int]]:
        """Variables grouped by the (unit) degree vector they carry."""
        out = []
        for g in range(self.rank):
            out.append([v for v in range(self.nvars) if self.grading[v][g]])
        return out

    def twist(self, D) -> tuple[int, ...]:
        if isinstance(D, int):
            D = (D,)
        D = tuple(int(x) for x in D)
        if len(D) != self.rank:
            raise ValueError(f"twist {D} does not match {self.name}")
        return D

    def monomials(self, D, lower: int = 0) -> list[tuple[int, ...]]:
        """Exponent vectors of degree D with every exponent >= lower (sorted)."""
        D = self.twist(D)
        per_group = []
        for g, vars_ in enumerate(self.groups()):
            total = D[g] - lower * len(vars_)
            if total < 0:
                return []
            per_group.append([tuple(x + lower for x in c) for c in _compositions(total, len(vars_))])
        out = []
        groups = self.groups()
        for choice in itertools.product(*per_group):
            e = [0] * self.nvars
            for vars_, part in zip(groups, choice):
                for v, x in zip(vars_, part):
                    e[v] = x
            out.append(tuple(e))
        return sorted(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


P1_SPACE = Space("P1", ("s", "t"), ((1,), (1,)), (frozenset({0}), frozenset({1})))
P2_SPACE = Space("P2", ("x0", "x1", "x2"), ((1,), (1,), (1,)),
                 (frozenset({0}), frozenset({1}), frozenset({2})))
P1xP1_SPACE = Space(
    "P1xP1", ("x0", "x1", "y0", "y1"), ((1, 0), (1, 0), (0, 1), (0, 1)),
    (frozenset({0, 2}), frozenset({0, 3}), frozenset({1, 2}), frozenset({1, 3})),
)

SPACES = {s.name: s for s in (P1_SPACE, P2_SPACE, P1xP1_SPACE)}


def space_of(name) -> Space:
    if isinstance(name, Space):
        return name
    try:
        return SPACES[str(name)]
    except KeyError:
        raise ValueError(f"unknown space {name!r}; expected one of {sorted(SPACES)}") from None


class Poly:
    """Polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = as_scalar(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, v: int, c=1) -> "Poly":
        return cls(nvars, {tuple(int(i == v) for i in range(nvars)): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == v) for i in range(n)): c for v, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, s) -> "Poly":
        s = as_scalar(s)
        return Poly(self.nvars, {e: s * c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    def degrees(self, space: Space) -> set:
        return {space.degree(e) for e in self.terms}

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_scalar(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, forms: Sequence["Poly"]) -> "Poly":
        """Replace variable v by ``forms[v]`` (all forms share one ring)."""
        if len(forms) != self.nvars:
            raise ValueError("substitution needs one form per variable")
        n = forms[0].nvars
        out = Poly.zero(n)
        powers: dict = {}
        for e, c in self.terms.items():
            term = Poly.const(n, c)
            for v, k in enumerate(e):
                if k:
                    key = (v, k)
                    if key not in powers:
                        p = Poly.const(n, 1)
                        for _ in range(k):
                            p = p * forms[v]
                        powers[key] = p
                    term = term * powers[key]
            out = out + term
        return out

    def to_json(self) -> list:
        return [{"coeff": scalar_to_str(c), "exponents": list(e)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, nvars: int, obj) -> "Poly":
        if isinstance(obj, (int, str)):
            return cls.const(nvars, obj)
        return cls(nvars, [(t["exponents"], t["coeff"]) for t in obj])

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"z{v}" + (f"^{k}" if k > 1 else "") for v, k in enumerate(e) if k)
            parts.append(scalar_to_str(c) + ("*" + mono if mono else ""))
        return " + ".join(parts)


class PolyMatrix:
    """Matrix of polynomials; entry (r, c) maps summand c of the source to summand r of the target."""

    __slots__ = ("rows", "cols", "nvars", "_data")

    def __init__(self, rows: int, cols: int, nvars: int, entries: Iterable[Poly] = ()):
        data = tuple(entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        for p in data:
            if p.nvars != nvars:
                raise ValueError("entries live in different rings")
        self.rows, self.cols, self.nvars, self._data = rows, cols, nvars, data

    @classmethod
    def zeros(cls, rows: int, cols: int, nvars: int) -> "PolyMatrix":
        return cls(rows, cols, nvars, [Poly.zero(nvars)] * (rows * cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], nvars: int, cols: int = 0) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else cols
        return cls(len(rows), ncols, nvars, [p for r in rows for p in r])

    @classmethod
    def from_linear(cls, coeff_mats: Sequence[RationalMatrix]) -> "PolyMatrix":
        """``sum_v coeff_mats[v] * z_v``."""
        n = len(coeff_mats)
        rows, cols = coeff_mats[0].shape
        entries = []
        for r in range(rows):
            for c in range(cols):
                entries.append(Poly.linear([m[r, c] for m in coeff_mats]))
        return cls(rows, cols, n, entries)

    @classmethod
    def constant(cls, m: RationalMatrix, nvars: int) -> "PolyMatrix":
        return cls(m.rows, m.cols, nvars, [Poly.const(nvars, x) for x in m.entries])

    def __getitem__(self, idx) -> Poly:
        r, c = idx
        return self._data[r * self.cols + c]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return self._data

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = Poly.zero(self.nvars)
                for k in range(self.cols):
                    a, b = self[i, k], other[k, j]
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, self.nvars, out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols, self.nvars, [a + b for a, b in zip(self._data, other._data)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, self.nvars, [p.scale(s) for p in self._data])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def is_zero(self) -> bool:
        return not any(self._data)

    def evaluate(self, point: Sequence) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, [p.evaluate(point) for p in self._data])

    def substitute(self, forms: Sequence[Poly]) -> "PolyMatrix":
        n = forms[0].nvars
        return PolyMatrix(self.rows, self.cols, n, [p.substitute(forms) for p in self._data])

    def coefficient_matrix(self, exps: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, [p.coefficient(exps) for p in self._data])

    def max_degree(self) -> int:
        return max((p.total_degree() for p in self._data if p), default=0)

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product; row/col index (i, k) -> i * other.rows + k."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                for j in range(self.cols):
                    for l in range(other.cols):
                        a, b = self[i, j], other[k, l]
                        out.append(a * b if a and b else Poly.zero(self.nvars))
        return PolyMatrix(self.rows * other.rows, self.cols * other.cols, self.nvars, out)

    def block(self, *others: "PolyMatrix") -> "PolyMatrix":
        """Block-diagonal sum."""
        mats = (self, *others)
        R, C = sum(m.rows for m in mats), sum(m.cols for m in mats)
        grid = [[Poly.zero(self.nvars) for _ in range(C)] for _ in range(R)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                for j in range(m.cols):
                    grid[r0 + i][c0 + j] = m[i, j]
            r0 += m.rows
            c0 += m.cols
        return PolyMatrix(R, C, self.nvars, [p for row in grid for p in row])

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        grid = [[self[i, j] for j in range(self.cols)] + [other[i, j] for j in range(other.cols)]
                for i in range(self.rows)]
        return PolyMatrix(self.rows, self.cols + other.cols, self.nvars, [p for r in grid for p in r])

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return PolyMatrix(self.rows + other.rows, self.cols, self.nvars, self._data + other._data)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [p.to_json() for p in self._data]}

    @classmethod
    def from_json(cls, nvars: int, obj) -> "PolyMatrix":
        return cls(int(obj["rows"]), int(obj["cols"]), nvars, [Poly.from_json(nvars, e) for e in obj["entries"]])

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(repr(self[i, j]) for j in range(self.cols)) + "]" for i in range(self.rows)]
        return f"PolyMatrix({self.rows}x{self.cols}: " + "; ".join(rows) + ")"
