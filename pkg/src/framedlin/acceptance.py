"""The twelve acceptance criteria as runnable checks."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from . import adhm, cohomology, heart, quiver, surface
from .cohomology import hypercohomology
from .sampling import DEFAULT_SEED, Sampler


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: dict = field(default_factory=dict)

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"[{verdict}] {self.number:2d} {self.name} ({self.seconds:.2f}s / {self.budget:g}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "pass": self.ok, "checks_pass": self.passed,
                "seconds": round(self.seconds, 3), "budget": self.budget, "detail": self.detail}


STABLE_SHAPES = ((0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2))


def stable_pool(seed: int = DEFAULT_SEED) -> list:
    """Stable ADHM data: every fixed point with k <= 3 plus random samples for each (k, r)."""
    S = Sampler(seed)
    pool = [d for k in (1, 2, 3) for _, d in adhm.torus_fixed_points(k)]
    pool += [S.stable_adhm(k, r) for k, r in STABLE_SHAPES for _ in range(2)]
    return pool


def ideal_sheaf_datum() -> adhm.ADHMDatum:
    return adhm.ADHMDatum.from_lists([[0]], [[0]], [[1]], [[0]])


# criteria -------------------------------------------------------------------------------


def c1_dimension_vectors(seed: int) -> dict:
    S = Sampler(seed)
    bad = []
    for tag in ("P2", "P1xP1"):
        M = quiver.dimension_vector_matrix(tag)
        for _ in range(50):
            v = S.numerical_class(tag)
            d = quiver.dimension_vector(tag, v, allow_negative=True)
            if list(d) != M.apply(v.coordinates):
                bad.append((tag, v.coordinates))
    return {"pass": not bad, "failures": bad, "samples": 100}


def c2_euler_form(seed: int) -> dict:
    S = Sampler(seed)
    bad = []
    pinned = {}
    for tag in ("P2", "P1xP1"):
        q, J = quiver.preset(tag)
        s = surface.get_surface(tag)
        for _ in range(50):
            v, w = S.numerical_class(tag), S.numerical_class(tag)
            d = quiver.dimension_vector(tag, v, allow_negative=True)
            e = quiver.dimension_vector(tag, w, allow_negative=True)
            lhs = quiver.euler_form(q, J, d, e)
            rhs = surface.chi_pair(s, surface.chern_character(v), surface.chern_character(w))
            if lhs != rhs:
                bad.append((tag, v.coordinates, w.coordinates, lhs, str(rhs)))
        ideal = surface.NumericalClass(s, 1, (0,) * s.picard_rank, 0)
        d = quiver.dimension_vector(tag, ideal)
        pinned[tag] = (quiver.euler_form(q, J, d, d),
                       int(surface.chi_pair(s, surface.chern_character(ideal), surface.chern_character(ideal))))
    ok = not bad and all(x == (-1, -1) for x in pinned.values())
    return {"pass": ok, "failures": bad, "ideal_sheaf": pinned,
            "relation_counts": {t: len(quiver.preset(t)[1]) for t in ("P2", "P1xP1")}}


def c3_adhm_monad(seed: int) -> dict:
    S = Sampler(seed)
    shapes = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)]
    mismatches = 0
    sols = [S.solution_adhm(*shapes[n % 5]) for n in range(20)]
    nons = [S.nonsolution_adhm(*shapes[n % 5]) for n in range(20)]
    for d in sols + nons:
        alpha, beta = adhm.monad_maps(d)
        if (beta @ alpha).is_zero() != adhm.check_equation(d):
            mismatches += 1
    truth = [adhm.check_equation(d) for d in sols] + [not adhm.check_equation(d) for d in nons]
    return {"pass": mismatches == 0 and all(truth), "mismatches": mismatches}


def c4_fixed_points(seed: int) -> dict:
    counts = []
    ok = True
    for k in range(1, 7):
        pts = adhm.torus_fixed_points(k)
        counts.append(len(pts))
        ok &= all(adhm.check_equation(d) and adhm.is_stable(d) for _, d in pts)
    return {"pass": ok and counts == [1, 2, 3, 5, 7, 11], "counts": counts}


def c5_framability(seed: int) -> dict:
    failures = []
    pool = stable_pool(seed)
    for n, d in enumerate(pool):
        M = adhm.monad_from_adhm(d)
        res = cohomology.restrict_to_curve(M, "linf")
        deg = cohomology.degree_on_p1(res)
        h0m = hypercohomology(res.twisted((-1,)))[0]
        split = cohomology.splitting_type(res)
        try:
            fr = adhm.canonical_framing(d)
            framed = fr.rank == d.r
        except adhm.FramingError:
            framed = False
        if not (deg == 0 and h0m == 0 and split == (0,) * d.r and framed):
            failures.append({"sample": n, "k": d.k, "r": d.r, "degree": deg, "h0(-1)": h0m, "split": split})
    return {"pass": not failures, "pool": len(pool), "failures": failures}


def c6_battery(seed: int) -> dict:
    failures = []
    pool = stable_pool(seed)
    for n, d in enumerate(pool):
        rep = heart.vanishing_battery(adhm.monad_from_adhm(d))
        if not rep.passed:
            failures.append({"sample": n, "report": rep.to_json()})
    counter = heart.vanishing_battery(heart.direct_sum_of_line_bundles("P2", [(-1,), (1,)]))
    h0 = counter.value("O(1)", 0)
    return {"pass": not failures and not counter.passed and h0 == 1, "pool": len(pool),
            "failures": failures, "counterexample_h0(E(-1))": h0}


def c7_engine(seed: int) -> dict:
    S = Sampler(seed)
    euler_bad, unstable = 0, 0
    for n in range(100):
        cx = S.complex(("P1", "P2", "P1xP1")[n % 3])
        rep = hypercohomology(cx)
        if rep.euler != cohomology.euler_characteristic(cx):
            euler_bad += 1
        if not rep.window_stable:
            unstable += 1
    closed_bad = []
    for tag, rank in (("P1", 1), ("P2", 1), ("P1xP1", 2)):
        for D in itertools.product(range(-3, 4), repeat=rank):
            rep = hypercohomology(cohomology.single_term(tag, [D]))
            want = cohomology.line_bundle_cohomology(tag, D)
            if rep.vector(0, len(want) - 1) != tuple(want):
                closed_bad.append((tag, D))
    ss_bad = 0
    for _ in range(20):
        cx = S.complex("P2", length=3)
        if cohomology.spectral_sequence_p2(cx) != hypercohomology(cx).h:
            ss_bad += 1
    ok = euler_bad == 0 and unstable == 0 and not closed_bad and ss_bad == 0
    return {"pass": ok, "euler_mismatches": euler_bad, "window_unstable": unstable,
            "closed_form_mismatches": closed_bad, "spectral_sequence_mismatches": ss_bad}


def c8_fiber_profile(seed: int) -> dict:
    S = Sampler(seed)
    failures = []
    for k in (1, 2, 3):
        pts = S.points(k)
        rep = heart.hilbert_demo(pts, seed=seed)
        prof = next(c for c in rep.checks if c.id == "fiber_profile") if rep.stable else None
        if prof is None or not prof.passed:
            failures.append({"k": k, "points": [[str(x) for x in p] for p in pts]})
    return {"pass": not failures, "failures": failures}


def c9_tangent(seed: int) -> dict:
    S = Sampler(seed)
    rows = []
    ok = True
    for k, r in ((1, 1), (2, 1), (2, 2), (3, 2)):
        for _ in range(3):
            d = S.stable_adhm(k, r)
            t = adhm.tangent_report(d)
            good = t.tangent_dim == 2 * k * r and t.rank_dmu == k * k and t.stabilizer_dim == 0
            ok &= good
            rows.append({"k": k, "r": r, **t.to_json()})
    return {"pass": ok, "reports": rows}


def c10_round_trip(seed: int) -> dict:
    S = Sampler(seed)
    q, J = quiver.preset_p2()
    trips = 0
    dims = [(1, 3, 1), (1, 4, 1), (2, 5, 2), (2, 6, 2), (0, 2, 0)]
    for n in range(20):
        rep = S.p2_representation(dims[n % 5])
        back = heart.rep_from_monad(heart.monad_from_rep(rep))
        trips += back == rep
    equiv_bad = 0
    for n in range(20):
        rep = S.p2_representation(dims[n % 4], satisfy=(n % 2 == 0))
        rel_ok, _ = quiver.check_relations(q, J, rep)
        try:
            heart.monad_from_rep(rep)
            complex_ok = True
        except heart.RelationError:
            complex_ok = False
        equiv_bad += rel_ok != complex_ok
    return {"pass": trips == 20 and equiv_bad == 0, "round_trips": trips, "equivalence_mismatches": equiv_bad}


def c11_framed_rigidity(seed: int) -> dict:
    failures = []
    pool = stable_pool(seed)
    for n, d in enumerate(pool):
        M = adhm.monad_from_adhm(d)
        phi = heart.Framing.identity(d.r)
        rep = heart.framed_hom(M, phi, M, phi)
        if not rep.unique:
            failures.append({"sample": n, **rep.to_json()})
    injective = 0
    for d in pool[:10]:
        dim, rk = heart.hom_restriction_injective(adhm.monad_from_adhm(d))
        injective += dim == rk
    return {"pass": not failures and injective == 10, "pool": len(pool), "failures": failures,
            "injective": injective}


def c12_hypothesis(seed: int) -> dict:
    a = surface.hypothesis_check("P1xP1", "diag", [(1, 0), (1, 1), (2, 0), (2, 1)])
    b = surface.hypothesis_check("P2", "linf", [(1,), (2,)])
    c = surface.hypothesis_check("P2", "linf", [(3,)])
    degrees = [m["D.C0"] for m in a.members]
    ok = (a.passed and b.passed and not c.passed and degrees == [1, 2, 2, 3] and a.anticanonical_degree == 4
          and b.anticanonical_degree == 3)
    return {"pass": ok, "P1xP1": a.to_json(), "P2": b.to_json(), "P2_twist_3": c.to_json()}


CRITERIA: list[tuple[int, str, float, Callable]] = [
    (1, "dimension-vector dictionary", 1.0, c1_dimension_vectors),
    (2, "Euler-form compatibility", 1.0, c2_euler_form),
    (3, "ADHM equation iff monad condition", 5.0, c3_adhm_monad),
    (4, "torus fixed points", 5.0, c4_fixed_points),
    (5, "framability along the line", 30.0, c5_framability),
    (6, "vanishing battery", 60.0, c6_battery),
    (7, "hypercohomology engine", 120.0, c7_engine),
    (8, "Hilbert-scheme fiber profile", 10.0, c8_fiber_profile),
    (9, "tangent dimension", 10.0, c9_tangent),
    (10, "round trip and relations", 5.0, c10_round_trip),
    (11, "framed rigidity", 60.0, c11_framed_rigidity),
    (12, "hypothesis checker", 1.0, c12_hypothesis),
]


def run_criterion(number: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    for n, name, budget, fn in CRITERIA:
        if n == number:
            t = time.perf_counter()
            detail = fn(seed)
            dt = time.perf_counter() - t
            return CriterionResult(n, name, bool(detail.pop("pass")), dt, budget, detail)
    raise KeyError(number)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [run_criterion(n, seed) for n, *_ in CRITERIA]
