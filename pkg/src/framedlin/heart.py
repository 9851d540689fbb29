"""Heart membership, framings along the curve, and the monad <-> representation dictionary."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .adhm import FramingError, adhm_from_points, canonical_framing, fiber_homology, is_stable, monad_from_adhm
from .cohomology import (LineBundleComplex, ReducedComplex, chain_map_from_vector, chain_map_space, degree_on_p1, hypercohomology, bundle_rank_on_p1,
                         induced_map, reduced_pair, restrict_to_curve, splitting_type)
from .forms import Poly, PolyMatrix
from .quiver import Representation, check_relations, dimension_vector, preset_p2
from .ratla import RationalMatrix, as_scalar, inverse, is_invertible, rank, solve
from .surface import COLLECTIONS, NumericalClass, get_curve, get_surface


# vanishing battery -------------------------------------------------------------------


def cotangent_resolution() -> LineBundleComplex:
    """``O(-1)^3 -> O`` via ``(x0, x1, x2)`` in positions 0, 1; its only cohomology sheaf is the cotangent bundle."""
    x = [Poly.var(3, v) for v in range(3)]
    return LineBundleComplex("P2", 0, [[(-1,)] * 3, [(0,)]], [PolyMatrix.from_rows([x], 3)])


@dataclass
class BatteryEntry:
    member: str
    degree: int
    value: int


@dataclass
class VanishingReport:
    surface: str
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.value == 0 for e in self.entries)

    def value(self, member: str, degree: int) -> int:
        for e in self.entries:
            if e.member == member and e.degree == degree:
                return e.value
        raise KeyError((member, degree))

    def to_json(self) -> dict:
        return {"surface": self.surface, "pass": self.passed,
                "entries": [{"member": e.member, "h": e.degree, "value": e.value} for e in self.entries],
                "anchor": "H^l(E tensor E_i dual) = 0 for l = 0, 2 and every member E_i"}


def _member_name(m) -> str:
    if m == "tangent":
        return "tangent"
    return "O(" + ",".join(str(x) for x in m) + ")"


def vanishing_battery(cx: LineBundleComplex, surface=None, collection=None) -> VanishingReport:
    """``h^0`` and ``h^2`` of E twisted by the dual of each collection member."""
    s = get_surface(surface or cx.space.name)
    if s.tag != cx.space.name:
        raise ValueError(f"complex lives on {cx.space.name}, collection on {s.tag}")
    members = COLLECTIONS[s.tag] if collection is None else collection
    entries = []
    for m in members:
        if m == "tangent":
            twisted = cx.tensor(cotangent_resolution())
        else:
            twisted = cx.twisted(tuple(-x for x in m))
        rep = hypercohomology(twisted)
        for ell in (0, 2):
            entries.append(BatteryEntry(_member_name(m), ell, rep[ell]))
    return VanishingReport(s.tag, entries)


# framings -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Framing:
    """``sigma_j = sum_i matrix[i, j] c_i``: chosen sections against the canonical sections ``c``."""

    matrix: RationalMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols or not is_invertible(self.matrix):
            raise FramingError("a framing matrix must be square and invertible")

    @property
    def rank(self) -> int:
        return self.matrix.rows

    @classmethod
    def identity(cls, r: int) -> "Framing":
        return cls(RationalMatrix.identity(r))

    def act(self, g: RationalMatrix) -> "Framing":
        """Compose the trivialization with ``g`` in GL(r)."""
        return Framing(self.matrix @ inverse(g))

    def relative_to(self, other: "Framing") -> RationalMatrix:
        """The unique ``g`` with ``other.act(g) == self``."""
        return inverse(self.matrix) @ other.matrix

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json()}


@dataclass
class TrivialityReport:
    trivial: bool
    rank: int
    degree: int
    h0_minus_one: int
    splitting: tuple | None
    framing: Framing | None = None

    def to_json(self) -> dict:
        return {"trivial": self.trivial, "rank": self.rank, "degree": self.degree,
                "h0(E(-1))": self.h0_minus_one,
                "splitting": list(self.splitting) if self.splitting is not None else None,
                "framing": self.framing.to_json() if self.framing else None,
                "anchor": "trivial on C0 iff degree 0 and h0(E|C0(-1)) = 0"}


def canonical_sections(restricted: LineBundleComplex) -> tuple[ReducedComplex, list]:
    red = ReducedComplex.build(restricted, restricted.min_window())
    return red, red.cohomology_basis(0)


def framing_from_sections(red: ReducedComplex, canonical: list, sections: Sequence) -> Framing:
    """Express a basis of restricted sections (reduced-complex cycles of degree 0) in the canonical basis."""
    cols = []
    for v in sections:
        c = red.coordinates(0, list(v), canonical)
        if c is None:
            raise FramingError("a proposed section is not a global section of the restriction")
        cols.append(c)
    return Framing(RationalMatrix.from_columns(cols, rows=len(canonical)) if cols else RationalMatrix(0, 0))


def triviality_on_curve(cx: LineBundleComplex, C0, sections: Sequence | None = None) -> TrivialityReport:
    """Triviality of the restriction to C0, with a framing when it is trivial.

    Raises :class:`NotLocallyFreeError` if the restriction does not present a bundle.
    """
    res = restrict_to_curve(cx, C0)
    r = bundle_rank_on_p1(res)
    deg = degree_on_p1(res)
    h0m = hypercohomology(res.twisted((-1,)))[0]
    trivial = deg == 0 and h0m == 0
    if not trivial:
        return TrivialityReport(False, r, deg, h0m, splitting_type(res))
    red, canon = canonical_sections(res)
    if len(canon) != r:
        raise FramingError(f"h0 of the restriction is {len(canon)}, expected rank {r}")
    framing = Framing.identity(r) if sections is None else framing_from_sections(red, canon, sections)
    return TrivialityReport(True, r, deg, h0m, (0,) * r, framing)


# monads and representations ------------------------------------------------------------


class NormalFormError(ValueError):
    pass


class RelationError(ValueError):
    def __init__(self, residual):
        super().__init__(f"relations fail; beta alpha = {residual}")
        self.residual = residual


def _check_normal_form(monad: LineBundleComplex) -> tuple[int, int, int]:
    if monad.space.name != "P2" or monad.start != -1 or len(monad.terms) != 3:
        raise NormalFormError("expected a three-term complex on P2 in positions -1, 0, 1")
    for t, want in zip(monad.terms, ((-1,), (0,), (1,))):
        if any(D != want for D in t):
            raise NormalFormError(f"expected twists {want}, got {t}")
    return tuple(len(t) for t in monad.terms)


def _units():
    return [tuple(int(v == m) for v in range(3)) for m in range(3)]


def rep_from_monad(monad: LineBundleComplex) -> Representation:
    """``a_m`` and ``b_m`` are the coefficients of ``x_{m-1}`` in alpha and beta."""
    d0, d1, d2 = _check_normal_form(monad)
    alpha, beta = monad.map(-1), monad.map(0)
    mats = {}
    for m, e in enumerate(_units(), start=1):
        mats[f"a{m}"] = alpha.coefficient_matrix(e)
        mats[f"b{m}"] = beta.coefficient_matrix(e)
    return Representation((d0, d1, d2), mats)


def monad_from_rep(rep: Representation) -> LineBundleComplex:
    q, J = preset_p2()
    rep.validate(q)
    d0, d1, d2 = rep.dims
    alpha = PolyMatrix.from_linear([rep.matrix(q, f"a{m}") for m in (1, 2, 3)]) if d0 * d1 else \
        PolyMatrix.zeros(d1, d0, 3)
    beta = PolyMatrix.from_linear([rep.matrix(q, f"b{m}") for m in (1, 2, 3)]) if d1 * d2 else \
        PolyMatrix.zeros(d2, d1, 3)
    residual = beta @ alpha
    if not residual.is_zero():
        raise RelationError(residual)
    return LineBundleComplex("P2", -1, [[(-1,)] * d0, [(0,)] * d1, [(1,)] * d2], [alpha, beta])


# framed morphisms ----------------------------------------------------------------------


@dataclass
class FramedHomReport:
    hom_dim: int              # Hom(E, F) as chain maps modulo homotopy
    homotopy_dim: int
    restriction_rank: int     # rank of Hom(E, F) -> Hom(E|C0, F|C0)
    framed_solutions: int     # -1: none; otherwise dimension of the affine solution set
    framed_map: list | None = None

    @property
    def injective(self) -> bool:
        return self.restriction_rank == self.hom_dim

    @property
    def unique(self) -> bool:
        return self.framed_solutions == 0

    def to_json(self) -> dict:
        return {"hom_dim": self.hom_dim, "homotopy_dim": self.homotopy_dim,
                "restriction_rank": self.restriction_rank, "restriction_injective": self.injective,
                "framed_solution_dim": self.framed_solutions, "unique": self.unique,
                "anchor": "framed morphisms satisfy phi' o xi|C0 = phi; restriction to C0 is injective"}


def restriction_maps(E: LineBundleComplex, F: LineBundleComplex, C0="linf"):
    """Basis of Hom(E, F) and the induced maps on sections over C0 (canonical bases)."""
    unk, basis, hdim = chain_map_space(E, F)
    curve = get_curve(C0)
    resE, resF = restrict_to_curve(E, curve), restrict_to_curve(F, curve)
    forms = [Poly(2, f) for f in curve.parametrization]
    reduced = reduced_pair(resE, resF)
    mats = []
    for vec in basis:
        f = chain_map_from_vector(E, F, unk, vec)
        mats.append(induced_map(f.restrict(forms, resE, resF), 0, reduced=reduced))
    return unk, basis, hdim, mats


def framed_hom(E: LineBundleComplex, framing_E: Framing, F: LineBundleComplex, framing_F: Framing,
               C0="linf") -> FramedHomReport:
    if framing_E.rank != framing_F.rank:
        raise FramingError(f"framings of rank {framing_E.rank} and {framing_F.rank}")
    unk, basis, hdim, mats = restriction_maps(E, F, C0)
    r = framing_E.rank
    for R in mats:
        if R.shape != (r, r):
            raise FramingError(f"restricted sections have dimension {R.shape}, framings have rank {r}")
    # sum_b c_b R_b Phi_E = Phi_F, unknowns c_b
    cols = [list((R @ framing_E.matrix).entries) for R in mats]
    rhs = list(framing_F.matrix.entries)
    A = RationalMatrix.from_columns(cols, rows=r * r) if cols else RationalMatrix(r * r, 0)
    restr_rank = rank(RationalMatrix.from_columns([list(R.entries) for R in mats], rows=r * r)) if mats else 0
    x = solve(A, rhs)
    if x is None:
        return FramedHomReport(len(basis), hdim, restr_rank, -1)
    return FramedHomReport(len(basis), hdim, restr_rank, len(basis) - rank(A), x)


def hom_restriction_injective(E: LineBundleComplex, F: LineBundleComplex | None = None, C0="linf") -> tuple[int, int]:
    """``(dim Hom(E, F), rank of its restriction to C0)``."""
    F = E if F is None else F
    _, basis, _, mats = restriction_maps(E, F, C0)
    if not mats:
        return 0, 0
    R = mats[0]
    return len(basis), rank(RationalMatrix.from_columns([list(M.entries) for M in mats], rows=R.rows * R.cols))


# end-to-end demo -------------------------------------------------------------------------


@dataclass
class Check:
    id: str
    passed: bool
    anchor: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "pass": self.passed, "anchor": self.anchor, "detail": self.detail}


@dataclass
class DemoReport:
    points: list
    stable: bool
    checks: list

    @property
    def passed(self) -> bool:
        return self.stable and all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"points": [[str(x) for x in p] for p in self.points], "stable": self.stable,
                "pass": self.passed, "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)]}


def _random_affine_points(rng: random.Random, count: int, avoid: set) -> list:
    out = []
    while len(out) < count:
        p = (Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        if p not in avoid and p not in out:
            out.append(p)
    return out


def hilbert_demo(points: Sequence, seed: int = 0, others: int = 20) -> DemoReport:
    """Points of the affine plane -> ADHM datum -> monad -> every framed-sheaf check."""
    pts = [(as_scalar(x), as_scalar(y)) for x, y in points]
    d = adhm_from_points(pts)
    if not is_stable(d):
        return DemoReport(pts, False, [Check("stability", False, "stable iff the points are distinct",
                                             {"k": d.k})])
    checks = [Check("stability", True, "stable iff the points are distinct", {"k": d.k})]
    M = monad_from_adhm(d)
    at_points = [fiber_homology(M, (x, y, 1))[0] for x, y in pts]
    rng = random.Random(seed)
    generic = [fiber_homology(M, (x, y, 1))[0] for x, y in _random_affine_points(rng, others, set(pts))]
    checks.append(Check("fiber_profile", all(n == 2 for n in at_points) and all(n == 1 for n in generic),
                        "fiber homology jumps by one at each point of the support",
                        {"at_points": at_points, "elsewhere": sorted(set(generic))}))
    triv = triviality_on_curve(M, "linf")
    checks.append(Check("trivial_on_line", triv.trivial, "trivial on C0 iff degree 0 and h0(E|C0(-1)) = 0",
                        triv.to_json()))
    try:
        canonical_framing(d)
        checks.append(Check("canonical_framing", True, "global sections over C0 are framings"))
    except FramingError as exc:
        checks.append(Check("canonical_framing", False, "global sections over C0 are framings", {"error": str(exc)}))
    bat = vanishing_battery(M)
    checks.append(Check("vanishing_battery", bat.passed, "H^l(E tensor E_i dual) = 0 for l = 0, 2", bat.to_json()))
    rep = rep_from_monad(M)
    q, J = preset_p2()
    ok, _ = check_relations(q, J, rep)
    cls = NumericalClass(get_surface("P2"), 1, (0,), 1 - d.k)
    dv = dimension_vector("P2", cls)
    checks.append(Check("representation", ok and rep.dims == dv, "d_i = -chi(E_i, v)",
                        {"dims": list(rep.dims), "dimension_vector": list(dv)}))
    back = rep_from_monad(monad_from_rep(rep))
    checks.append(Check("round_trip", back == rep, "monad and representation determine each other"))
    return DemoReport(pts, True, checks)


def direct_sum_of_line_bundles(space, twists: Sequence) -> LineBundleComplex:
    return LineBundleComplex(space, 0, [list(twists)], ())


def koszul_point_p1xp1(p: Sequence, q: Sequence) -> LineBundleComplex:
    """Ideal sheaf of ``(p, q)`` as ``O(-1,-1) -> O(-1,0) + O(0,-1)`` in positions -1, 0."""
    p0, p1 = (as_scalar(x) for x in p)
    q0, q1 = (as_scalar(x) for x in q)
    l1 = Poly(4, {(1, 0, 0, 0): -p1, (0, 1, 0, 0): p0})
    l2 = Poly(4, {(0, 0, 1, 0): q1, (0, 0, 0, 1): -q0})
    M = PolyMatrix.from_rows([[l2], [-l1]], 4)
    return LineBundleComplex("P1xP1", -1, [[(-1, -1)], [(-1, 0), (0, -1)]], [M])
