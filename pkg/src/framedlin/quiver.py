"""Bound quivers, representations, hom spaces and the dimension-vector dictionary."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ratla import (RationalMatrix, as_scalar, det, kernel_basis, scalar_to_str, span_basis)
from .surface import (NumericalClass, chern_character, chi_pair, collection_characters, get_surface)


@dataclass(frozen=True)
class Arrow:
    id: str
    src: int
    dst: int


@dataclass(frozen=True)
class Quiver:
    vertices: int
    arrows: tuple

    def __post_init__(self):
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("arrow ids must be unique")
        for a in self.arrows:
            if not (0 <= a.src < self.vertices and 0 <= a.dst < self.vertices):
                raise ValueError(f"arrow {a.id} has an invalid endpoint")

    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def path_ends(self, path: Sequence[str]) -> tuple[int, int]:
        """Source and target of a path listed in traversal order (first arrow first)."""
        arrows = [self.arrow(a) for a in path]
        for x, y in zip(arrows, arrows[1:]):
            if x.dst != y.src:
                raise ValueError(f"path {list(path)} is not composable")
        return arrows[0].src, arrows[-1].dst

    def paths(self, i: int, j: int, length: int) -> list[tuple]:
        out = []

        def walk(v, acc):
            if len(acc) == length:
                if v == j:
                    out.append(tuple(acc))
                return
            for a in self.arrows:
                if a.src == v:
                    walk(a.dst, acc + [a.id])

        if length == 0:
            return [()] if i == j else []
        walk(i, [])
        return out


@dataclass(frozen=True)
class RelationSet:
    """Each relation is a tuple of ``(coefficient, path)`` with paths in traversal order."""

    relations: tuple

    def __len__(self) -> int:
        return len(self.relations)

    def ends(self, q: Quiver) -> list[tuple[int, int]]:
        out = []
        for rel in self.relations:
            ends = {q.path_ends(p) for _, p in rel}
            if len(ends) != 1:
                raise ValueError(f"relation {rel} mixes endpoints")
            if any(len(p) < 2 for _, p in rel):
                raise ValueError("relations must be combinations of paths of length >= 2")
            out.append(ends.pop())
        return out


@dataclass
class Representation:
    dims: tuple
    mats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in self.dims):
            raise ValueError("dimension vector must be nonnegative")

    def matrix(self, q: Quiver, aid: str) -> RationalMatrix:
        a = q.arrow(aid)
        m = self.mats.get(aid)
        if m is None:
            return RationalMatrix.zeros(self.dims[a.dst], self.dims[a.src])
        return m

    def validate(self, q: Quiver) -> None:
        if len(self.dims) != q.vertices:
            raise ValueError(f"dimension vector has {len(self.dims)} entries for {q.vertices} vertices")
        for aid, m in self.mats.items():
            a = q.arrow(aid)
            if m.shape != (self.dims[a.dst], self.dims[a.src]):
                raise ValueError(f"arrow {aid}: matrix {m.shape} does not match dims "
                                 f"{(self.dims[a.dst], self.dims[a.src])}")

    def evaluate_path(self, q: Quiver, path: Sequence[str]) -> RationalMatrix:
        src, _ = q.path_ends(path)
        out = RationalMatrix.identity(self.dims[src])
        for aid in path:
            out = self.matrix(q, aid) @ out
        return out

    def conjugate(self, q: Quiver, g: dict) -> "Representation":
        """Action of ``(g_v)``: ``M_a -> g_dst M_a g_src^{-1}``."""
        from .ratla import inverse
        inv = {v: inverse(m) for v, m in g.items()}
        mats = {}
        for a in q.arrows:
            mats[a.id] = g[a.dst] @ self.matrix(q, a.id) @ inv[a.src]
        return Representation(self.dims, mats)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "mats": {k: m.to_json() for k, m in sorted(self.mats.items())}}

    @classmethod
    def from_json(cls, obj) -> "Representation":
        return cls(tuple(obj["dims"]), {k: RationalMatrix.from_json(m) for k, m in obj.get("mats", {}).items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation) or self.dims != other.dims:
            return False
        keys = set(self.mats) | set(other.mats)
        for k in keys:
            a, b = self.mats.get(k), other.mats.get(k)
            if a is None:
                a = RationalMatrix.zeros(*b.shape)
            if b is None:
                b = RationalMatrix.zeros(*a.shape)
            if a != b:
                return False
        return True


# presets ----------------------------------------------------------------------


def preset_p2() -> tuple[Quiver, RelationSet]:
    """Beilinson quiver: a_m : 0 -> 1 and b_m : 1 -> 2, relations ``b_i a_j + b_j a_i`` for i <= j."""
    arrows = [Arrow(f"a{m}", 0, 1) for m in (1, 2, 3)] + [Arrow(f"b{m}", 1, 2) for m in (1, 2, 3)]
    rels = []
    for i in (1, 2, 3):
        for j in range(i, 4):
            if i == j:
                rels.append(((Fraction(1), (f"a{i}", f"b{i}")),))
            else:
                rels.append(((Fraction(1), (f"a{j}", f"b{i}")), (Fraction(1), (f"a{i}", f"b{j}"))))
    return Quiver(3, tuple(arrows)), RelationSet(tuple(rels))


def preset_p1xp1() -> tuple[Quiver, RelationSet]:
    """Square quiver: a1_m : 0 -> 1, a2_m : 0 -> 2, b1_m : 1 -> 3, b2_m : 2 -> 3.

    Relations ``b1_i a1_j + b2_j a2_i`` for i, j in {1, 2}. Vertex 3 is the sink
    so that vertex ``v`` matches row ``v`` of the dimension-vector matrix.
    """
    arrows = ([Arrow(f"a1_{m}", 0, 1) for m in (1, 2)] + [Arrow(f"a2_{m}", 0, 2) for m in (1, 2)]
              + [Arrow(f"b1_{m}", 1, 3) for m in (1, 2)] + [Arrow(f"b2_{m}", 2, 3) for m in (1, 2)])
    rels = []
    for i in (1, 2):
        for j in (1, 2):
            rels.append(((Fraction(1), (f"a1_{j}", f"b1_{i}")), (Fraction(1), (f"a2_{i}", f"b2_{j}"))))
    return Quiver(4, tuple(arrows)), RelationSet(tuple(rels))


PRESETS = {"P2": preset_p2, "P1xP1": preset_p1xp1}


def preset(surface) -> tuple[Quiver, RelationSet]:
    return PRESETS[get_surface(surface).tag]()


# relations, homs, isomorphism -------------------------------------------------


def check_relations(q: Quiver, J: RelationSet, rep: Representation) -> tuple[bool, list]:
    """Evaluate every relation; returns ``(ok, [(index, residual), ...])``."""
    rep.validate(q)
    bad = []
    for idx, rel in enumerate(J.relations):
        src, dst = q.path_ends(rel[0][1])
        acc = RationalMatrix.zeros(rep.dims[dst], rep.dims[src])
        for c, path in rel:
            acc = acc + rep.evaluate_path(q, path).scale(c)
        if not acc.is_zero():
            bad.append((idx, acc))
    return not bad, bad


@dataclass
class HomSpace:
    dim: int
    basis: list  # each element: dict vertex -> RationalMatrix


def _hom_layout(q: Quiver, r1: Representation, r2: Representation):
    offsets, n = {}, 0
    for v in range(q.vertices):
        offsets[v] = n
        n += r2.dims[v] * r1.dims[v]
    return offsets, n


def hom_space(q: Quiver, J: RelationSet, rep1: Representation, rep2: Representation) -> HomSpace:
    """Intertwiners ``phi`` with ``phi_dst M1_a = M2_a phi_src`` for every arrow."""
    rep1.validate(q)
    rep2.validate(q)
    offsets, n = _hom_layout(q, rep1, rep2)
    d1, d2 = rep1.dims, rep2.dims

    def var(v, r, c):
        return offsets[v] + r * d1[v] + c

    rows = []
    for a in q.arrows:
        M1, M2 = rep1.matrix(q, a.id), rep2.matrix(q, a.id)
        s, t = a.src, a.dst
        # entry (r, c) of phi_t M1 - M2 phi_s, a map C^{d1_s} -> C^{d2_t}
        for r in range(d2[t]):
            for c in range(d1[s]):
                row = [Fraction(0)] * n
                for k in range(d1[t]):
                    if M1[k, c]:
                        row[var(t, r, k)] += M1[k, c]
                for k in range(d2[s]):
                    if M2[r, k]:
                        row[var(s, k, c)] -= M2[r, k]
                rows.append(row)
    A = RationalMatrix.from_rows(rows, cols=n) if rows else RationalMatrix(0, n)
    basis = []
    for vec in kernel_basis(A):
        phi = {}
        for v in range(q.vertices):
            o = offsets[v]
            phi[v] = RationalMatrix(d2[v], d1[v], vec[o:o + d2[v] * d1[v]])
        basis.append(phi)
    return HomSpace(len(basis), basis)


def _invertible_everywhere(phi: dict) -> bool:
    return all(m.rows == m.cols and (m.rows == 0 or det(m) != 0) for m in phi.values())


def _combine(basis: list, coeffs: Sequence) -> dict:
    out = {}
    for v in basis[0]:
        acc = RationalMatrix.zeros(*basis[0][v].shape)
        for c, phi in zip(coeffs, basis):
            if c:
                acc = acc + phi[v].scale(c)
        out[v] = acc
    return out


def is_isomorphic(q: Quiver, J: RelationSet, rep1: Representation, rep2: Representation,
                  trials: int = 20, seed: int = 0, exhaustive_limit: int = 9) -> bool:
    """Random combinations of the hom basis first, exhaustive small coefficients after."""
    if rep1.dims != rep2.dims:
        return False
    if not any(rep1.dims):
        return True
    H = hom_space(q, J, rep1, rep2)
    if H.dim == 0:
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(H.dim)]
        if _invertible_everywhere(_combine(H.basis, coeffs)):
            return True
    if H.dim <= exhaustive_limit:
        for coeffs in itertools.product(range(-2, 3), repeat=H.dim):
            if any(coeffs) and _invertible_everywhere(_combine(H.basis, coeffs)):
                return True
    return False


# Euler form and the dictionary --------------------------------------------------


def euler_form(q: Quiver, J: RelationSet, d: Sequence[int], e: Sequence[int]) -> int:
    """``sum d_i e_i - sum_arrows d_src e_dst + sum_relations d_src e_dst``."""
    val = sum(x * y for x, y in zip(d, e))
    val -= sum(d[a.src] * e[a.dst] for a in q.arrows)
    val += sum(d[s] * e[t] for s, t in J.ends(q))
    return val


DIMENSION_VECTOR_MATRICES = {
    "P2": ((1, 2, -1), (3, 3, -2), (1, 1, -1)),
    "P1xP1": ((1, 1, 2, -1), (2, 0, 2, -1), (1, 1, 1, -1), (1, 0, 1, -1)),
}


def dimension_vector_matrix(surface) -> RationalMatrix:
    return RationalMatrix.from_rows(DIMENSION_VECTOR_MATRICES[get_surface(surface).tag])


class NotInHeartError(ValueError):
    pass


def dimension_vector(surface, v: NumericalClass, collection=None, allow_negative: bool = False) -> tuple:
    """``d_i = -chi(E_i, v)`` over the standard collection, from Riemann-Roch."""
    s = get_surface(surface)
    if v.surface != s:
        raise ValueError(f"class lives on {v.surface.tag}, not {s.tag}")
    chars = collection if collection is not None else collection_characters(s)
    ch = chern_character(v)
    out = []
    for E in chars:
        x = -chi_pair(s, E, ch)
        if x.denominator != 1:
            raise ValueError(f"non-integral Euler pairing {x}")
        out.append(int(x))
    if not allow_negative and any(x < 0 for x in out):
        raise NotInHeartError(f"dimension vector {out} has a negative entry")
    return tuple(out)


def path_space_dim(q: Quiver, J: RelationSet, i: int, j: int) -> int:
    """Dimension of ``e_j (kQ/J) e_i``: paths i -> j modulo the two-sided ideal, length by length."""
    ends = J.ends(q)
    total = 0
    for L in range(0, q.vertices + 1):
        paths = q.paths(i, j, L)
        if not paths:
            continue
        index = {p: k for k, p in enumerate(paths)}
        gens = []
        for rel, (s, t) in zip(J.relations, ends):
            rl = len(rel[0][1])
            for u in range(0, L - rl + 1):
                for pre in q.paths(i, s, u):
                    for post in q.paths(t, j, L - rl - u):
                        vec = [Fraction(0)] * len(paths)
                        for c, p in rel:
                            vec[index[pre + tuple(p) + post]] += c
                        gens.append(vec)
        total += len(paths) - len(span_basis(gens, len(paths)))
    return total


# serialization ----------------------------------------------------------------


def quiver_to_json(q: Quiver, J: RelationSet) -> dict:
    return {
        "vertices": q.vertices,
        "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in q.arrows],
        "relations": [[{"coeff": scalar_to_str(c), "path": list(p)} for c, p in rel] for rel in J.relations],
    }


def quiver_from_json(obj) -> tuple[Quiver, RelationSet]:
    q = Quiver(int(obj["vertices"]), tuple(Arrow(a["id"], int(a["src"]), int(a["dst"])) for a in obj["arrows"]))
    J = RelationSet(tuple(tuple((as_scalar(t["coeff"]), tuple(t["path"])) for t in rel)
                          for rel in obj.get("relations", [])))
    J.ends(q)
    return q, J
