"""Command-line front end.

Every command prints one JSON document (sorted keys) on stdout.  Checks
exit with 0 for Yes, 1 for No, 2 for Unknown; unreadable input exits 3.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from . import classify, dtransform, generators, homotopy
from .canon import is_isomorphic
from .geometry import covers as cover_gen
from .geometry.box import frac, frac_text
from .geometry.cover import Cover, CoverError, compress_cover, is_lcl, nerve
from .geometry.digitize import SHAPES, digitize, refinement_sequence
from .graph import Graph, GraphError
from .invariants import invariants_report
from .verdict import Outcome, Verdict, _jsonable

EXIT_PARSE = 3
MAX_VERTICES = 4096

QUESTIONS = (
    "contractible", "manifold", "sphere", "disk", "compressed", "lcl",
    "sphere-bounding", "disk-containment",
)
# numbered names kept for compatibility with existing manifests
ALIASES = {"hypothesis-8.1": "sphere-bounding", "hypothesis-9.1": "disk-containment"}


class InputError(Exception):
    pass


def _budget(args: argparse.Namespace) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    return int(os.environ.get("DIGITOPO_BUDGET", homotopy.DEFAULT_BUDGET))


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        if text.lstrip().startswith("{"):
            return Graph.from_json(text)
        return Graph.from_edgelist(text, name=Path(path).stem)
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_cover(path: str) -> Cover:
    try:
        return Cover.from_dict(_read_json(path))
    except (CoverError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _dump(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True)


def _emit(obj: Any, out: str | None = None) -> None:
    text = _dump(obj)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- gen -----------------------------------------------------------------


def _gen(args: argparse.Namespace) -> Any:
    k = args.kind
    if k == "minimal-sphere":
        return classify.minimal_sphere(args.n)
    if k == "minimal-disk":
        return classify.minimal_disk(args.n)
    if k == "torus16":
        return generators.torus16()
    if k == "torus":
        return generators.triangulated_torus(args.p, args.q)
    if k == "cycle":
        return generators.cycle(args.n)
    if k == "subdivided-sphere":
        s = classify.minimal_sphere(args.n)
        return generators.random_subdivide(s, args.steps, args.seed).renamed(
            f"S{args.n}sub{args.steps}s{args.seed}")
    if k == "cube-cover":
        return cover_gen.cube_boundary_cover(args.n)
    if k == "refined-cover":
        return cover_gen.refined_sphere_cover(args.n, args.k)
    if k == "brick-patch":
        return cover_gen.brick_tiling_patch(args.n, args.extent)
    if k == "torus-cover":
        return cover_gen.torus_cover_4x4()
    raise InputError(f"unknown kind {k!r}")


GEN_KINDS = (
    "minimal-sphere", "minimal-disk", "torus16", "torus", "cycle", "subdivided-sphere",
    "cube-cover", "refined-cover", "brick-patch", "torus-cover",
)


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        obj = _gen(args)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(obj.to_dict(), args.out)
    return 0


# -- check ---------------------------------------------------------------


def run_check(path: str, question: str, n: int | None, m: int | None, budget: int, seed: int) -> dict:
    """One check as a report dict; shared by ``check`` and ``batch``."""
    question = ALIASES.get(question, question)
    if question not in QUESTIONS:
        raise InputError(f"unknown question {question!r}")
    report: dict[str, Any] = {"question": question, "n": n, "budget": budget, "seed": seed}
    if question == "lcl":
        c = load_cover(path)
        v = is_lcl(c, n)
        report.update(v.to_dict())
        return report
    g = load_graph(path)
    if g.n_vertices > MAX_VERTICES:
        v = Verdict.unknown(note=f"graph has more than {MAX_VERTICES} vertices")
        report.update(v.to_dict())
        return report
    if question == "contractible":
        if g.n_vertices == 0:
            raise InputError("empty graph")
        v = homotopy.is_contractible(g, budget)
    else:
        if n is None:
            raise InputError(f"question {question!r} needs --n")
        if question == "manifold":
            v = classify.is_n_manifold(g, n, budget)
        elif question == "sphere":
            v = classify.is_n_sphere(g, n, budget, seed=seed)
        elif question == "disk":
            v = classify.is_n_disk(g, n, budget)
        elif question == "compressed":
            v = dtransform.is_compressed(g, n, budget)
        elif question == "sphere-bounding":
            v = classify.sphere_bounding_hypothesis(g, n, budget=budget)
        else:
            v = classify.disk_containment_hypothesis(g, m if m is not None else n - 1, n, budget=budget)
    report.update(v.to_dict())
    return report


def cmd_check(args: argparse.Namespace) -> int:
    report = run_check(args.file, args.question, args.n, args.m, _budget(args), args.seed)
    _emit(report, args.out)
    return Outcome(report["outcome"]).exit_code


# -- transform -----------------------------------------------------------


def cmd_transform(args: argparse.Namespace) -> int:
    budget = _budget(args)
    if args.replay:
        try:
            trace = homotopy.Trace.from_dict(_read_json(args.replay))
        except (KeyError, TypeError, GraphError) as exc:
            raise InputError(f"{args.replay}: {exc}") from exc
        try:
            end = trace.replay(validate=True, budget=budget)
        except homotopy.MoveError as exc:
            _emit({"replayed": False, "error": str(exc)}, args.out)
            return 1
        _emit({"replayed": True, "moves": len(trace), "graph": end.to_dict(),
               "end_digest": end.digest()}, args.out)
        return 0
    if not args.file:
        raise InputError("transform needs an input graph")
    g = load_graph(args.file)
    if args.n is None:
        raise InputError("transform needs --n")
    if args.compress:
        small, trace = dtransform.compress(g, args.n, budget, args.seed)
        result = {"graph": small.to_dict(), "trace": trace.to_dict(), "vertices": small.n_vertices,
                  "seed": args.seed, "budget": budget}
    elif args.merge:
        data = _read_json(args.merge)
        verts = data["vertices"] if isinstance(data, dict) else data
        dv = classify.is_n_disk(g.induced(verts), args.n, budget)
        if not dv.is_yes:
            _emit({"error": "not a certified disk", "outcome": dv.outcome.value}, args.out)
            return dv.outcome.exit_code
        spec = classify.DiskSpec(g, dv.witness.vertices, dv.witness.boundary, dv.witness.interior, args.n)
        out = dtransform.merge_disk(g, spec, budget=budget)
        result = {"graph": out.to_dict(), "trace": dtransform.merge_moves(g, spec).to_dict()}
    elif args.split:
        if not args.disk:
            raise InputError("--split needs --disk")
        d = load_graph(args.disk)
        iso = _read_json(args.iso) if args.iso else None
        if iso is None:
            found = is_isomorphic(d.induced(classify.is_n_disk(d, args.n).witness.boundary),
                                  g.induced(g.neighbors(args.split)))
            if not found.is_yes:
                raise InputError("disk boundary is not isomorphic to the rim")
            iso = found.witness
        out = dtransform.split_vertex(g, args.split, d, iso, args.n, budget)
        result = {"graph": out.to_dict(),
                  "trace": dtransform.split_moves(g, args.split, d, iso, args.n).to_dict()}
    else:
        raise InputError("choose one of --compress, --merge, --split, --replay")
    _emit(result, args.out)
    return 0


# -- invariants, cover, digitize, iso -----------------------------------


def cmd_invariants(args: argparse.Namespace) -> int:
    g = load_graph(args.file)
    rep = invariants_report(homotopy.reduce(g)[0] if args.reduce else g)
    _emit(rep, args.out)
    return 0


def cmd_cover(args: argparse.Namespace) -> int:
    c = load_cover(args.file)
    if args.action == "nerve":
        _emit(nerve(c).to_dict(), args.out)
        return 0
    if args.action == "lcl":
        v = is_lcl(c, args.n)
        _emit(v.to_dict(), args.out)
        return v.outcome.exit_code
    small, log = compress_cover(c, args.n, seed=args.seed)
    _emit({"cover": small.to_dict(), "steps": log, "elements": len(small)}, args.out)
    return 0


def cmd_digitize(args: argparse.Namespace) -> int:
    try:
        params = json.loads(args.params) if args.params else {}
        surf = SHAPES[args.shape](**params)
        if args.levels > 1:
            rep = refinement_sequence(surf, args.h, args.levels, args.samples)
            finest = frac_text(frac(args.h) / 2 ** (args.levels - 1))
        else:
            rep = None
            finest = frac_text(frac(args.h))
        cubes, g = digitize(surf, finest, args.samples)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc
    if args.out:
        Path(args.out).write_text(_dump(g.to_dict()) + "\n")
    summary = {"shape": args.shape, "h": finest, "cubes": len(cubes), "vertices": g.n_vertices,
               "edges": g.n_edges}
    if rep is not None:
        summary["refinement"] = rep
    print(_dump(summary))
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    v = is_isomorphic(load_graph(args.a), load_graph(args.b))
    _emit(v.to_dict(), args.out)
    return v.outcome.exit_code


# -- batch ---------------------------------------------------------------


def _case(item: tuple[int, dict, str, int]) -> dict:
    idx, case, base, default_budget = item
    out: dict[str, Any] = {"index": idx}
    try:
        path = case["file"]
        if not os.path.isabs(path):
            path = os.path.join(base, path)
        out["file"] = case["file"]
        rep = run_check(
            path, case["question"], case.get("n"), case.get("m"),
            int(case.get("budget", default_budget)), int(case.get("seed", 0)),
        )
        out.update(rep)
        if "expect" in case:
            out["expect"] = case["expect"]
            out["pass"] = rep["outcome"] == case["expect"]
    except Exception as exc:  # isolate the case; report and go on
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out


def cmd_batch(args: argparse.Namespace) -> int:
    data = _read_json(args.manifest)
    cases = data.get("cases", []) if isinstance(data, dict) else data
    if not isinstance(cases, list):
        raise InputError("manifest must be a list of cases or {\"cases\": [...]}")
    base = str(Path(args.manifest).resolve().parent)
    items = [(i, c, base, _budget(args)) for i, c in enumerate(cases)]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_case, items))
    else:
        results = [_case(it) for it in items]
    summary = {
        "cases": len(results),
        "errors": sum("error" in r for r in results),
        "failed": sum(r.get("pass") is False for r in results),
    }
    print(_dump(summary), file=sys.stderr)
    lines = [_dump(r) for r in results]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_PARSE if any("error" in r for r in results) else 0


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="digitopo", description="Digital topology of graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--budget", type=int, default=None,
                        help="search budget (default: $DIGITOPO_BUDGET or 200)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="write the JSON here instead of stdout")

    sp = sub.add_parser("gen", help="generate a graph or cover")
    sp.add_argument("kind", choices=GEN_KINDS)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--steps", type=int, default=5)
    sp.add_argument("--k", type=int, default=3, help="strips per facet for refined-cover")
    sp.add_argument("--p", type=int, default=4)
    sp.add_argument("--q", type=int, default=4)
    sp.add_argument("--extent", type=int, nargs="+", default=[4])
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("check", help="answer a yes/no/unknown question")
    sp.add_argument("file")
    sp.add_argument("--question", "-q", required=True, choices=QUESTIONS + tuple(ALIASES))
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--m", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("transform", help="compress, merge, split or replay")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--n", type=int, default=None)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--compress", action="store_true")
    g.add_argument("--merge", metavar="DISK_JSON")
    g.add_argument("--split", metavar="VERTEX")
    g.add_argument("--replay", metavar="TRACE_JSON")
    sp.add_argument("--disk", help="disk graph for --split")
    sp.add_argument("--iso", help="JSON map from disk boundary to the rim, for --split")
    common(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("invariants", help="Euler characteristic and mod-2 Betti numbers")
    sp.add_argument("file")
    sp.add_argument("--reduce", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("cover", help="nerve, LCL check or compression of a cover")
    sp.add_argument("file")
    sp.add_argument("action", choices=("nerve", "lcl", "compress"))
    sp.add_argument("--n", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("digitize", help="digitize a built-in surface")
    sp.add_argument("--shape", choices=sorted(SHAPES), default="sphere")
    sp.add_argument("--h", default="0.25")
    sp.add_argument("--levels", type=int, default=1)
    sp.add_argument("--samples", type=int, default=3)
    sp.add_argument("--params", default=None, help="JSON keyword arguments for the shape")
    common(sp)
    sp.set_defaults(func=cmd_digitize)

    sp = sub.add_parser("iso", help="graph isomorphism")
    sp.add_argument("a")
    sp.add_argument("b")
    common(sp)
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("batch", help="run a manifest of checks")
    sp.add_argument("manifest")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
