"""Command-line entry point: ``framedlin <command> [<subcommand>] [flags]``.

Exit codes: 0 when every check passes, 1 for usage or input errors, 2 when a
mathematical check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import acceptance, adhm, cohomology, heart, quiver, surface
from .cohomology import LineBundleComplex
from .ratla import as_scalar
from .sampling import DEFAULT_SEED

OK, INPUT_ERROR, MATH_FAILURE = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    subcommand: str | None = None
    input: str | None = None
    output: str = "text"
    window: int | None = None
    seed: int = DEFAULT_SEED
    samples: int | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        known = {"command", "subcommand", "input", "output", "window", "seed", "samples"}
        extra = {k: v for k, v in vars(ns).items() if k not in known}
        return cls(ns.command, getattr(ns, "subcommand", None), ns.input, ns.output, ns.window,
                   ns.seed, ns.samples, extra)


@dataclass
class Result:
    payload: dict
    ok: bool = True
    summary: str = ""


# helpers ---------------------------------------------------------------------------


def _load(path: str | None):
    if path is None:
        raise InputError("this command needs --input FILE")
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _ints(text: str | None, what: str) -> tuple:
    if text is None:
        raise InputError(f"missing {what}")
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _complex(cfg: RunConfig) -> LineBundleComplex:
    obj = _load(cfg.input)
    return LineBundleComplex.from_json(obj.get("complex", obj))


def _datum(cfg: RunConfig) -> adhm.ADHMDatum:
    obj = _load(cfg.input)
    return adhm.ADHMDatum.from_json(obj.get("datum", obj))


def _points(cfg: RunConfig) -> list:
    path = cfg.extra.get("points") or cfg.input
    obj = _load(path)
    pts = obj.get("points", obj) if isinstance(obj, dict) else obj
    try:
        return [(as_scalar(p[0]), as_scalar(p[1])) for p in pts]
    except (TypeError, IndexError, ValueError):
        raise InputError("points must be a list of [x, y] pairs") from None


def _quiver_and_reps(cfg: RunConfig, names: tuple):
    obj = _load(cfg.input)
    if "quiver" in obj:
        q, J = quiver.quiver_from_json(obj["quiver"])
    else:
        q, J = quiver.preset(cfg.extra.get("surface") or "P2")
    reps = [quiver.Representation.from_json(obj[n]) for n in names]
    return q, J, reps


def _report(rep: cohomology.CohomologyReport) -> dict:
    return rep.to_json()


# commands ----------------------------------------------------------------------------


def cmd_dimvec(cfg: RunConfig) -> Result:
    tag = surface.get_surface(cfg.extra["surface"]).tag
    v = surface.NumericalClass.from_coordinates(tag, _ints(cfg.extra.get("class_"), "--class"))
    d = quiver.dimension_vector(tag, v, allow_negative=True)
    ok = all(x >= 0 for x in d)
    return Result({"surface": tag, "class": list(v.coordinates), "dimension_vector": list(d),
                   "in_heart_range": ok, "anchor": "d_i = -chi(E_i, v)"},
                  True, "(" + ",".join(map(str, d)) + ")")


def cmd_quiver(cfg: RunConfig) -> Result:
    sub = cfg.subcommand
    if sub == "check-relations":
        q, J, (rep,) = _quiver_and_reps(cfg, ("rep",))
        ok, bad = quiver.check_relations(q, J, rep)
        return Result({"pass": ok, "violations": [{"relation": i, "residual": m.to_json()} for i, m in bad],
                       "anchor": "representations of the bound quiver satisfy J"}, ok,
                      "relations hold" if ok else f"{len(bad)} relations violated")
    if sub == "hom":
        q, J, (r1, r2) = _quiver_and_reps(cfg, ("rep1", "rep2"))
        H = quiver.hom_space(q, J, r1, r2)
        basis = [{str(v): m.to_json() for v, m in phi.items()} for phi in H.basis]
        return Result({"dim": H.dim, "basis": basis}, True, f"dim Hom = {H.dim}")
    if sub == "iso":
        q, J, (r1, r2) = _quiver_and_reps(cfg, ("rep1", "rep2"))
        iso = quiver.is_isomorphic(q, J, r1, r2, seed=cfg.seed)
        return Result({"isomorphic": iso}, True, "isomorphic" if iso else "not isomorphic")
    if sub == "euler":
        q, J = quiver.preset(cfg.extra.get("surface") or "P2")
        d, e = _ints(cfg.extra.get("d"), "--d"), _ints(cfg.extra.get("e"), "--e")
        if len(d) != q.vertices or len(e) != q.vertices:
            raise InputError(f"dimension vectors need {q.vertices} entries")
        val = quiver.euler_form(q, J, d, e)
        return Result({"euler_form": val, "d": list(d), "e": list(e)}, True, str(val))
    if sub == "paths":
        q, J = quiver.preset(cfg.extra.get("surface") or "P2")
        i, j = cfg.extra.get("source"), cfg.extra.get("target")
        if i is None or j is None:
            raise InputError("paths needs --from and --to")
        n = quiver.path_space_dim(q, J, i, j)
        return Result({"from": i, "to": j, "dim": n}, True, str(n))
    raise InputError(f"unknown quiver subcommand {sub!r}")


def cmd_adhm(cfg: RunConfig) -> Result:
    sub = cfg.subcommand
    if sub == "check":
        d = _datum(cfg)
        ok = adhm.check_equation(d)
        return Result({"equation": ok, "residual": d.residual().to_json(),
                       "anchor": "[B1,B2] + ij = 0"}, ok, "equation holds" if ok else "equation fails")
    if sub == "stable":
        d = _datum(cfg)
        st, co = adhm.is_stable(d), adhm.is_costable(d)
        return Result({"stable": st, "costable": co}, st, f"stable={st} costable={co}")
    if sub == "monad":
        d = _datum(cfg)
        try:
            M = adhm.monad_from_adhm(d)
        except adhm.ADHMEquationError as exc:
            return Result({"error": "equation fails", "residual": exc.residual.to_json()}, False,
                          "equation fails; residual reported")
        return Result({"complex": M.to_json()}, True, f"monad O(-1)^{d.k} -> O^{2 * d.k + d.r} -> O(1)^{d.k}")
    if sub == "fixed-points":
        k, r = cfg.extra.get("k"), cfg.extra.get("r") or 1
        if k is None:
            raise InputError("fixed-points needs --k")
        pts = adhm.torus_fixed_points(k, r)
        data = [{"partition": list(lam), "datum": d.to_json()} for lam, d in pts]
        return Result({"k": k, "count": len(pts), "fixed_points": data}, True,
                      f"{len(pts)} fixed points: " + " ".join("+".join(map(str, lam)) for lam, _ in pts))
    if sub == "from-points":
        d = adhm.adhm_from_points(_points(cfg))
        st = adhm.is_stable(d)
        return Result({"datum": d.to_json(), "stable": st}, True, f"k={d.k} stable={st}")
    if sub == "tangent":
        t = adhm.tangent_report(_datum(cfg))
        return Result(t.to_json(), True, f"rank dmu={t.rank_dmu} stabilizer={t.stabilizer_dim} "
                                          f"tangent={t.tangent_dim}")
    raise InputError(f"unknown adhm subcommand {sub!r}")


def cmd_cohomology(cfg: RunConfig) -> Result:
    sub = cfg.subcommand
    if sub == "hyper":
        cx = _complex(cfg)
        rep = cohomology.hypercohomology(cx, window=cfg.window, method=cfg.extra.get("method") or "reduced")
        return Result(_report(rep), rep.window_stable, " ".join(f"h{n}={d}" for n, d in sorted(rep.h.items()))
                      or "all zero")
    if sub == "line-bundle":
        tag = cfg.extra.get("surface") or "P2"
        D = _ints(cfg.extra.get("twist"), "--twist")
        h = cohomology.line_bundle_cohomology(tag, D)
        return Result({"space": tag, "twist": list(D), "h": list(h)}, True, str(tuple(h)))
    if sub == "restrict":
        res = cohomology.restrict_to_curve(_complex(cfg), cfg.extra.get("curve") or "linf")
        return Result({"complex": res.to_json()}, True, f"terms {res.terms}")
    if sub == "splitting":
        cx = _complex(cfg)
        if cx.space.name != "P1":
            cx = cohomology.restrict_to_curve(cx, cfg.extra.get("curve") or "linf")
        split = cohomology.splitting_type(cx)
        return Result({"splitting": list(split)}, True, str(split))
    raise InputError(f"unknown cohomology subcommand {sub!r}")


def cmd_heart(cfg: RunConfig) -> Result:
    sub = cfg.subcommand
    if sub == "battery":
        rep = heart.vanishing_battery(_complex(cfg), cfg.extra.get("surface"))
        return Result(rep.to_json(), rep.passed, "pass" if rep.passed else "fail")
    if sub == "trivial":
        rep = heart.triviality_on_curve(_complex(cfg), cfg.extra.get("curve") or "linf")
        return Result(rep.to_json(), rep.trivial, "trivial" if rep.trivial else f"not trivial {rep.splitting}")
    if sub == "rep":
        rep = heart.rep_from_monad(_complex(cfg))
        q, J = quiver.preset_p2()
        ok, _ = quiver.check_relations(q, J, rep)
        return Result({"rep": rep.to_json(), "relations": ok}, ok, f"dims {rep.dims}")
    if sub == "monad":
        obj = _load(cfg.input)
        rep = quiver.Representation.from_json(obj.get("rep", obj))
        try:
            M = heart.monad_from_rep(rep)
        except heart.RelationError as exc:
            return Result({"error": "relations fail", "residual": str(exc.residual)}, False, "relations fail")
        return Result({"complex": M.to_json()}, True, f"monad with dims {rep.dims}")
    raise InputError(f"unknown heart subcommand {sub!r}")


def cmd_demo(cfg: RunConfig) -> Result:
    if cfg.subcommand != "hilbert":
        raise InputError(f"unknown demo {cfg.subcommand!r}")
    rep = heart.hilbert_demo(_points(cfg), seed=cfg.seed, others=cfg.samples or 20)
    lines = [f"{c.id}: {'pass' if c.passed else 'FAIL'}" for c in sorted(rep.checks, key=lambda c: c.id)]
    return Result(rep.to_json(), rep.passed, "\n".join(lines))


def cmd_suite(cfg: RunConfig) -> Result:
    if cfg.subcommand != "acceptance":
        raise InputError(f"unknown suite {cfg.subcommand!r}")
    results = acceptance.run_all(cfg.seed)
    ok = all(r.ok for r in results)
    return Result({"seed": cfg.seed, "pass": ok, "criteria": [r.to_json() for r in results]}, ok,
                  "\n".join(r.line() for r in results))


COMMANDS = {"dimvec": cmd_dimvec, "quiver": cmd_quiver, "adhm": cmd_adhm, "cohomology": cmd_cohomology,
            "heart": cmd_heart, "demo": cmd_demo, "suite": cmd_suite}


# parser ------------------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="JSON input file")
    p.add_argument("--output", choices=("json", "text"), default="text")
    p.add_argument("--window", type=int, help="monomial window bound (must satisfy the lower bound)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framedlin", description="Framed sheaves on P2 and P1xP1 via linear data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dimvec", help="dimension vector of a numerical class")
    _common(p)
    p.add_argument("--surface", required=True, choices=("P2", "P1xP1"))
    p.add_argument("--class", dest="class_", required=True, help="rank,c1...,chi")

    groups = {
        "quiver": ["check-relations", "hom", "iso", "euler", "paths"],
        "adhm": ["check", "stable", "monad", "fixed-points", "from-points", "tangent"],
        "cohomology": ["hyper", "line-bundle", "restrict", "splitting"],
        "heart": ["battery", "trivial", "rep", "monad"],
        "demo": ["hilbert"],
        "suite": ["acceptance"],
    }
    helps = {
        "quiver": "bound quiver representations",
        "adhm": "ADHM data, monads and fixed points",
        "cohomology": "hypercohomology of line-bundle complexes",
        "heart": "battery, triviality and the monad dictionary",
        "demo": "end-to-end demonstrations",
        "suite": "acceptance checks",
    }
    for name, subs in groups.items():
        g = sub.add_parser(name, help=helps[name])
        gs = g.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
        for s in subs:
            p = gs.add_parser(s)
            _common(p)
            p.add_argument("--surface", choices=("P2", "P1xP1", "P1"))
            p.add_argument("--curve", choices=("linf", "diag"))
            p.add_argument("--k", type=int)
            p.add_argument("--r", type=int)
            p.add_argument("--points")
            p.add_argument("--twist")
            p.add_argument("--d")
            p.add_argument("--e")
            p.add_argument("--from", dest="source", type=int)
            p.add_argument("--to", dest="target", type=int)
            p.add_argument("--method", choices=("reduced", "direct"))
    return parser


def _render(cfg: RunConfig, res: Result) -> str:
    if cfg.output == "json":
        return json.dumps(res.payload, sort_keys=True, indent=2)
    return res.summary


def dispatch(cfg: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        res = COMMANDS[cfg.command](cfg)
    except (adhm.FramingError, adhm.ADHMEquationError, cohomology.NotLocallyFreeError, RuntimeError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return MATH_FAILURE
    except (InputError, KeyError, TypeError, ValueError) as exc:
        # window below the bound, malformed complexes and bad JSON shapes land here
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    print(_render(cfg, res), file=out)
    return OK if res.ok else MATH_FAILURE


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return dispatch(RunConfig.from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
