"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries. Matrices are
immutable; ``0 x n`` and ``n x 0`` shapes are legal and behave as the empty
linear maps they represent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction


def as_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def scalar_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Dense row-major matrix of Fractions; omitted entries mean the zero matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if entries is None:
            data = (Fraction(0),) * (rows * cols)
        else:
            data = tuple(as_scalar(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    # construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0)
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), n, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RationalMatrix":
        columns = [list(c) for c in columns]
        if not columns:
            return cls(rows or 0, 0)
        return cls.from_rows(columns).T

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [1 if r == c else 0 for r in range(n) for c in range(n)])

    @classmethod
    def scalar(cls, n: int, value) -> "RationalMatrix":
        value = as_scalar(value)
        return cls(n, n, [value if r == c else 0 for r in range(n) for c in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "RationalMatrix":
        return cls(len(values), 1, values)

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        r, c = idx
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(idx)
        return self._data[r * self.cols + c]

    def row(self, r: int) -> list[Fraction]:
        return list(self._data[r * self.cols:(r + 1) * self.cols])

    def col(self, c: int) -> list[Fraction]:
        return [self._data[r * self.cols + c] for r in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(r) for r in range(self.rows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.col(c) for c in range(self.cols)]

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._data

    # arithmetic -------------------------------------------------------

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              (self._data[r * self.cols + c] for c in range(self.cols) for r in range(self.rows)))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix(self.rows, self.cols, (a + b for a, b in zip(self._data, other._data)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix(self.rows, self.cols, (a - b for a, b in zip(self._data, other._data)))

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, (-a for a in self._data))

    def scale(self, s) -> "RationalMatrix":
        s = as_scalar(s)
        return RationalMatrix(self.rows, self.cols, (s * a for a in self._data))

    def __rmul__(self, s) -> "RationalMatrix":
        return self.scale(s)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self._data, other._data
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            nz = [(k, x) for k, x in enumerate(arow) if x]
            for j in range(p):
                s = Fraction(0)
                for k, x in nz:
                    y = b[k * p + j]
                    if y:
                        s += x * y
                out.append(s)
        return RationalMatrix(n, p, out)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        vec = [as_scalar(v) for v in vec]
        out = []
        for i in range(self.rows):
            s = Fraction(0)
            base = i * self.cols
            for k, v in enumerate(vec):
                if v:
                    s += self._data[base + k] * v
            out.append(s)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(scalar_to_str(x) for x in self.row(r)) for r in range(self.rows))
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not any(self._data)

    def hstack(self, *others: "RationalMatrix") -> "RationalMatrix":
        mats = (self, *others)
        if len({m.rows for m in mats}) != 1:
            raise ValueError("hstack needs equal row counts")
        rows = [sum((m.row(r) for m in mats), []) for r in range(self.rows)]
        return RationalMatrix(self.rows, sum(m.cols for m in mats), (e for r in rows for e in r))

    def vstack(self, *others: "RationalMatrix") -> "RationalMatrix":
        mats = (self, *others)
        if len({m.cols for m in mats}) != 1:
            raise ValueError("vstack needs equal column counts")
        return RationalMatrix(sum(m.rows for m in mats), self.cols, (e for m in mats for e in m._data))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(len(rows), len(cols), (self[r, c] for r in rows for c in cols))

    def _check_same(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [scalar_to_str(x) for x in self._data]}

    @classmethod
    def from_json(cls, obj) -> "RationalMatrix":
        if isinstance(obj, list):
            return cls.from_rows(obj)
        return cls(int(obj["rows"]), int(obj["cols"]), obj["entries"])


# elimination ------------------------------------------------------------


def _pick_pivot(rows: list[list[Fraction]], start: int, col: int) -> int | None:
    # largest |numerator| among nonzero candidates; ties broken by smallest denominator
    best, best_key = None, None
    for r in range(start, len(rows)):
        x = rows[r][col]
        if x:
            key = (abs(x.numerator), -x.denominator)
            if best_key is None or key > best_key:
                best, best_key = r, key
    return best


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == len(rows):
            break
        p = _pick_pivot(rows, r, c)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.cols > m.rows:
        m = m.T
    return len(rref(m)[1])


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    rows, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(v)
    return basis


def solve(m: RationalMatrix, b: Sequence) -> list[Fraction] | None:
    """Some exact solution of ``m x = b``, or None if the system is inconsistent."""
    b = [as_scalar(x) for x in b]
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    aug = RationalMatrix(m.rows, m.cols + 1, (e for r in range(m.rows) for e in m.row(r) + [b[r]]))
    rows, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.cols]
    return x


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    aug = m.hstack(RationalMatrix.identity(n))
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return RationalMatrix(n, n, (x for r in rows for x in r[n:]))


def det(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = m.to_rows()
    n = m.rows
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d *= piv
        for r in range(c + 1, n):
            f = rows[r][c] / piv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return d


def is_invertible(m: RationalMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


# subspaces ----------------------------------------------------------------


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[list[Fraction]]:
    """Echelon basis of the span of ``vectors`` inside Q^dim."""
    vectors = [[as_scalar(x) for x in v] for v in vectors]
    for v in vectors:
        if len(v) != dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {dim}")
    if not vectors:
        return []
    rows, pivots = rref(RationalMatrix.from_rows(vectors))
    return [rows[i] for i in range(len(pivots))]


def sum_subspaces(bases: Sequence[Sequence[Sequence]], dim: int) -> list[list[Fraction]]:
    return span_basis([v for b in bases for v in b], dim)


def intersect_subspaces(bases: Sequence[Sequence[Sequence]], dim: int) -> list[list[Fraction]]:
    """Basis of the intersection of the spans of each basis in ``bases``."""
    if not bases:
        return [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    current = span_basis(bases[0], dim)
    for other in bases[1:]:
        other = span_basis(other, dim)
        if not current or not other:
            return []
        # x = sum a_i u_i = sum b_j w_j  <=>  [U | -W] (a, b) = 0
        k = len(current)
        stacked = RationalMatrix.from_columns(current + [[-x for x in w] for w in other])
        sols = kernel_basis(stacked)
        vecs = [[sum(s[i] * current[i][t] for i in range(k)) for t in range(dim)] for s in sols]
        current = span_basis(vecs, dim)
    return current


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not basis:
        return not any(as_scalar(x) for x in v)
    return solve(RationalMatrix.from_columns(basis), v) is not None


def complement_basis(sub: Sequence[Sequence], ambient: Sequence[Sequence], dim: int) -> list[list[Fraction]]:
    """Vectors from ``ambient`` extending a basis of ``sub`` to a basis of sub + ambient."""
    chosen = span_basis(sub, dim)
    out = []
    r = len(chosen)
    for v in ambient:
        trial = chosen + [list(v)]
        if rank(RationalMatrix.from_rows(trial)) > r:
            chosen = trial
            out.append([as_scalar(x) for x in v])
            r += 1
    return out


# sparse elimination, used for large Cech complexes ----------------------------


def sparse_rank(columns: Sequence[dict]) -> int:
    """Rank of a matrix given as a list of sparse columns ``{row: value}``.

    Gaussian elimination keyed on pivot rows, always reducing by the sparsest
    available pivot column first.
    """
    pivots: dict = {}
    r = 0
    for col in sorted((dict(c) for c in columns if c), key=len):
        col = {k: v for k, v in col.items() if v}
        while col:
            key = min(col)
            if key in pivots:
                pcol = pivots[key]
                f = col[key] / pcol[key]
                for k, v in pcol.items():
                    nv = col.get(k, 0) - f * v
                    if nv:
                        col[k] = nv
                    else:
                        col.pop(k, None)
            else:
                pivots[key] = col
                r += 1
                break
    return r
