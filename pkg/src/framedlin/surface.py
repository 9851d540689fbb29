"""Intersection theory, Chern characters and Riemann-Roch on P2 and P1xP1.

Divisor classes are integer coordinate vectors: ``(d,)`` in the basis ``H`` on
P2 and ``(a, b)`` in the basis ``(H, F)`` on P1xP1. Numerical classes carry
``(rank, c1, chi)`` because the dimension-vector matrices act on exactly these
coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ratla import as_scalar, scalar_to_str


@dataclass(frozen=True)
class SurfaceKind:
    tag: str
    intersection_matrix: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    chart_count: int

    @property
    def picard_rank(self) -> int:
        return len(self.canonical)

    def __str__(self) -> str:
        return self.tag


P2 = SurfaceKind("P2", ((1,),), (-3,), 3)
P1xP1 = SurfaceKind("P1xP1", ((0, 1), (1, 0)), (-2, -2), 4)

SURFACES = {"P2": P2, "P1xP1": P1xP1}


def get_surface(surface) -> SurfaceKind:
    if isinstance(surface, SurfaceKind):
        return surface
    try:
        return SURFACES[str(surface)]
    except KeyError:
        raise ValueError(f"unknown surface {surface!r}; expected one of {sorted(SURFACES)}") from None


def _coords(surface: SurfaceKind, D) -> tuple[int, ...]:
    if isinstance(D, int):
        D = (D,)
    D = tuple(int(x) for x in D)
    if len(D) != surface.picard_rank:
        raise ValueError(f"divisor {D} does not live on {surface.tag}")
    return D


def intersect(surface, D: Sequence[int], E: Sequence[int]) -> int:
    s = get_surface(surface)
    D, E = _coords(s, D), _coords(s, E)
    q = s.intersection_matrix
    return sum(D[i] * q[i][j] * E[j] for i in range(len(D)) for j in range(len(E)))


def half_anticanonical_dot(surface, D) -> Fraction:
    """``D . (-K_X / 2)``, the degree-one part of the Todd class paired with D."""
    s = get_surface(surface)
    return Fraction(-intersect(s, D, s.canonical), 2)


@dataclass(frozen=True)
class ChernCharacter:
    surface: SurfaceKind
    rank: int
    c1: tuple[int, ...]
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c1", _coords(self.surface, self.c1))
        object.__setattr__(self, "ch2", as_scalar(self.ch2))

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        _same(self.surface, other.surface)
        return ChernCharacter(self.surface, self.rank + other.rank,
                              tuple(a + b for a, b in zip(self.c1, other.c1)), self.ch2 + other.ch2)

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(self.surface, -self.rank, tuple(-a for a in self.c1), -self.ch2)

    def __mul__(self, other: "ChernCharacter") -> "ChernCharacter":
        _same(self.surface, other.surface)
        s = self.surface
        return ChernCharacter(
            s,
            self.rank * other.rank,
            tuple(self.rank * b + other.rank * a for a, b in zip(self.c1, other.c1)),
            self.rank * other.ch2 + other.rank * self.ch2 + intersect(s, self.c1, other.c1),
        )

    def dual(self) -> "ChernCharacter":
        return ChernCharacter(self.surface, self.rank, tuple(-a for a in self.c1), self.ch2)


@dataclass(frozen=True)
class NumericalClass:
    surface: SurfaceKind
    rank: int
    c1: tuple[int, ...]
    chi: int

    def __post_init__(self):
        object.__setattr__(self, "c1", _coords(self.surface, self.c1))

    @property
    def coordinates(self) -> tuple[int, ...]:
        """``(rk, c1..., chi)``: the column the dimension-vector matrix acts on."""
        return (self.rank, *self.c1, self.chi)

    def to_json(self) -> dict:
        return {"surface": self.surface.tag, "class": {"rank": self.rank, "c1": list(self.c1), "chi": self.chi}}

    @classmethod
    def from_json(cls, obj) -> "NumericalClass":
        s = get_surface(obj["surface"])
        c = obj["class"]
        return cls(s, int(c["rank"]), tuple(c["c1"]), int(c["chi"]))

    @classmethod
    def from_coordinates(cls, surface, coords: Sequence[int]) -> "NumericalClass":
        s = get_surface(surface)
        coords = [int(x) for x in coords]
        if len(coords) != s.picard_rank + 2:
            raise ValueError(f"{s.tag} classes have {s.picard_rank + 2} coordinates, got {len(coords)}")
        return cls(s, coords[0], tuple(coords[1:-1]), coords[-1])

    def __add__(self, other: "NumericalClass") -> "NumericalClass":
        _same(self.surface, other.surface)
        return NumericalClass(self.surface, self.rank + other.rank,
                              tuple(a + b for a, b in zip(self.c1, other.c1)), self.chi + other.chi)


def _same(s, t) -> None:
    if s != t:
        raise ValueError(f"surface mismatch: {s} vs {t}")


def chi(surface, ch: ChernCharacter) -> Fraction:
    """Hirzebruch-Riemann-Roch: ``ch2 + c1.(-K/2) + rank`` (chi(O_X) = 1 for both surfaces)."""
    s = get_surface(surface)
    _same(s, ch.surface)
    return ch.ch2 + half_anticanonical_dot(s, ch.c1) + ch.rank


def chern_character(v: NumericalClass) -> ChernCharacter:
    s = v.surface
    ch2 = Fraction(v.chi) - half_anticanonical_dot(s, v.c1) - v.rank
    return ChernCharacter(s, v.rank, v.c1, ch2)


def numerical_class(ch: ChernCharacter) -> NumericalClass:
    value = chi(ch.surface, ch)
    if value.denominator != 1:
        raise ValueError(f"character {ch} has non-integral Euler characteristic {value}")
    return NumericalClass(ch.surface, ch.rank, ch.c1, int(value))


def chi_pair(surface, v: ChernCharacter, w: ChernCharacter) -> Fraction:
    """``chi(v, w) = int ch(v)^dual ch(w) td(X)``. Not symmetric in general."""
    s = get_surface(surface)
    return chi(s, v.dual() * w)


def line_bundle(surface, D) -> ChernCharacter:
    s = get_surface(surface)
    D = _coords(s, D)
    return ChernCharacter(s, 1, D, Fraction(intersect(s, D, D), 2))


def twist(v: NumericalClass, D) -> NumericalClass:
    return numerical_class(chern_character(v) * line_bundle(v.surface, D))


def structure_sheaf(surface) -> NumericalClass:
    s = get_surface(surface)
    return NumericalClass(s, 1, (0,) * s.picard_rank, 1)


# P2 tangent and cotangent bundles, from the Euler sequence
TANGENT_P2 = ChernCharacter(P2, 2, (3,), Fraction(3, 2))
COTANGENT_P2 = ChernCharacter(P2, 2, (-3,), Fraction(3, 2))


# framing curves -------------------------------------------------------------

# forms in (s, t): dict exponent -> coefficient
Form = dict


@dataclass(frozen=True)
class CurveModel:
    """A smooth rational curve C0 in X given by a parametrization P1 -> X.

    ``parametrization`` holds one binary form in ``(s, t)`` per homogeneous
    coordinate of X, in the coordinate order of the ambient space.
    """

    name: str
    surface: SurfaceKind
    divisor: tuple[int, ...]
    parametrization: tuple = field(repr=False)

    def form_degrees(self) -> tuple[int, ...]:
        degs = []
        for f in self.parametrization:
            ds = {sum(e) for e, c in f.items() if c}
            if len(ds) > 1:
                raise ValueError(f"parametrization form {f} is not homogeneous")
            degs.append(ds.pop() if ds else None)
        return tuple(degs)

    def check(self) -> bool:
        """Degree bookkeeping: each grading block is parametrized by forms of one degree
        and those degrees equal ``H.C0`` (resp. ``H.C0, F.C0``)."""
        from .forms import space_of

        space = space_of(self.surface.tag)
        degs = self.form_degrees()
        basis = [tuple(int(i == g) for i in range(self.surface.picard_rank)) for g in range(self.surface.picard_rank)]
        for g, e in enumerate(basis):
            block = [degs[v] for v in range(space.nvars) if space.grading[v][g]]
            present = {d for d in block if d is not None}
            if len(present) != 1 or present.pop() != intersect(self.surface, e, self.divisor):
                return False
        return True

    def restricted_degree(self, D) -> int:
        return intersect(self.surface, D, self.divisor)


def _lin(s: int, t: int) -> dict:
    out = {}
    if s:
        out[(1, 0)] = Fraction(s)
    if t:
        out[(0, 1)] = Fraction(t)
    return out


# the line x2 = 0, parametrized by [s : t : 0]
LINE_AT_INFINITY = CurveModel("linf", P2, (1,), (_lin(1, 0), _lin(0, 1), {}))
# the diagonal of P1xP1, parametrized by ([s : t], [s : t]); coordinates x0, x1, y0, y1
DIAGONAL = CurveModel("diag", P1xP1, (1, 1), (_lin(1, 0), _lin(0, 1), _lin(1, 0), _lin(0, 1)))

CURVES = {"linf": LINE_AT_INFINITY, "diag": DIAGONAL}


def get_curve(curve) -> CurveModel:
    if isinstance(curve, CurveModel):
        return curve
    try:
        return CURVES[str(curve)]
    except KeyError:
        raise ValueError(f"unknown curve {curve!r}; expected one of {sorted(CURVES)}") from None


# standard collections --------------------------------------------------------

# line-bundle members of the full strong collections, keyed by quiver vertex.
# On P2 vertex 1 is the tangent bundle.
COLLECTIONS = {
    "P2": ((2,), "tangent", (1,)),
    "P1xP1": ((2, 1), (2, 0), (1, 1), (1, 0)),
}


def collection_characters(surface) -> list[ChernCharacter]:
    s = get_surface(surface)
    out = []
    for member in COLLECTIONS[s.tag]:
        out.append(TANGENT_P2 if member == "tangent" else line_bundle(s, member))
    return out


@dataclass
class HypothesisReport:
    surface: str
    curve: str
    self_intersection: int
    anticanonical_degree: int
    linear_system_dim: int
    members: list[dict]
    degree_one_class: tuple[int, ...] | None

    @property
    def passed(self) -> bool:
        return (all(m["lower"] and m["upper"] for m in self.members)
                and self.degree_one_class is not None and self.linear_system_dim > 0)

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "curve": self.curve,
            "C0.C0": self.self_intersection,
            "-K.C0": self.anticanonical_degree,
            "dim|C0|": self.linear_system_dim,
            "members": self.members,
            "degree_one_class": list(self.degree_one_class) if self.degree_one_class else None,
            "pass": self.passed,
        }


def hypothesis_check(surface, C0, collection: Sequence, box: int = 3) -> HypothesisReport:
    """Check ``0 < D_i.C0 < -K.C0`` for each member and find a class L with ``L.C0 = 1``."""
    from .cohomology import line_bundle_cohomology

    s = get_surface(surface)
    curve = get_curve(C0)
    _same(s, curve.surface)
    bound = -intersect(s, s.canonical, curve.divisor)
    members = []
    for D in collection:
        D = _coords(s, D)
        deg = intersect(s, D, curve.divisor)
        members.append({"D": list(D), "D.C0": deg, "lower": deg > 0, "upper": deg < bound})
    candidates = [c for c in itertools.product(range(-box, box + 1), repeat=s.picard_rank)
                  if intersect(s, c, curve.divisor) == 1]
    candidates.sort(key=lambda c: (sum(map(abs, c)), tuple(-x for x in c)))
    h0 = line_bundle_cohomology(s.tag, curve.divisor)[0]
    return HypothesisReport(
        surface=s.tag,
        curve=curve.name,
        self_intersection=intersect(s, curve.divisor, curve.divisor),
        anticanonical_degree=bound,
        linear_system_dim=h0 - 1,
        members=members,
        degree_one_class=candidates[0] if candidates else None,
    )


def ch_to_json(ch: ChernCharacter) -> dict:
    return {"rank": ch.rank, "c1": list(ch.c1), "ch2": scalar_to_str(ch.ch2)}
