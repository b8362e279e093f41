"""Command line front end.

Every subcommand builds a RunReport: the command line, sha256 digests of the
inputs, named checks (a failed check carries a witness), the result and the
elapsed time.  ``--report PATH`` writes it as JSON; a one-line summary goes to
stdout.

Exit codes: 0 success, 1 parse or I/O error, 2 precondition, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import io
from .disk import (NOT_CONVEX, SLDisk, boundary_circle, check_key_finding, convexity,
                   find_key_or_twinkey, is_TrV, natural_edges, roof, spanning_simplices, validate)
from .errors import (ConsistencyError, Obstructive, ParseError, PreconditionError,
                     PreconditionViolated, SLError)
from .geometry import format_rational, parse_rational

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CONSISTENCY = 0, 1, 2, 3

DISK_SUFFIX = ".disk.json"
MAP_SUFFIX = ".map.json"


@dataclass
class RunReport:
    command: list
    inputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK
    elapsed: float = 0.0

    def add_input(self, path) -> None:
        try:
            self.inputs[str(path)] = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        except OSError:
            pass

    def check(self, name: str, passed: bool, witness=None) -> bool:
        if not passed and witness is None:
            witness = "no witness recorded"
        entry = {"name": name, "passed": bool(passed)}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)
        return passed

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_json(self, timing: bool = True) -> dict:
        out = {"command": self.command, "inputs": dict(sorted(self.inputs.items())),
               "checks": self.checks, "result": self.result, "exit_code": self.exit_code}
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


def _error_witness(exc: Exception) -> dict:
    w = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, Obstructive):
        w["edges"] = [list(e) for e in exc.edges]
    if isinstance(exc, PreconditionViolated):
        w["clause"] = exc.clause
    return w


def _pairs(edges) -> list:
    return [list(e) for e in edges]


def _q(x) -> str:
    return format_rational(Fraction(x))


# -- check ----------------------------------------------------------------------


def cmd_check(args, report: RunReport) -> str:
    d = _read_disk(args.disk, report)
    v = validate(d)
    report.check("valid", v.valid, v.problems or None)
    if not v.valid:
        report.exit_code = EXIT_PRECONDITION
        return "invalid: " + "; ".join(v.problems)
    conv = convexity(boundary_circle(d))
    trv = is_TrV(d)
    spans = spanning_simplices(d)
    res = {"convexity": conv, "TrV": trv, "simple": not spans, "spanning": _pairs(spans),
           "triangles": len(d.triangles), "interior_vertices": list(d.interior_vertices)}
    words = ["valid", conv.replace("_", " "), "TrV" if trv else "not TrV"]
    if spans:
        words.append("not simple, spanning=" + ",".join(f"({a},{b})" for a, b in spans))
    else:
        words.append("simple")
    if trv:
        res["roof"] = _pairs(roof(d))
        if not spans and len(d.triangles) > 1:
            kf = find_key_or_twinkey(d)
            problems = check_key_finding(d, kf)
            report.check("key finding", not problems, problems or None)
            res["key"] = {"kind": kf.kind, "triangles": [list(t) for t in kf.triangles],
                          "apex": kf.apex}
            verts = sorted({w for t in kf.triangles for w in t})
            words.append(f"{kf.kind.lower()}=(" + ",".join(map(str, verts)) + ")")
    report.result = res
    return ", ".join(words)


# -- reduce ---------------------------------------------------------------------


def cmd_reduce(args, report: RunReport) -> str:
    from .reduction import reduce

    d = _read_disk(args.disk, report)
    rf = reduce(d, args.edge)
    back = rf.map.inverse()
    moved = [v for v, p in d.points.items() if back(rf.disk.points[v]) != p]
    report.check("round trip", not moved, {"vertices": moved} if moved else None)
    if moved:
        raise ConsistencyError(f"inverse map moves vertices {moved}")
    report.result = {"base_edge": list(rf.base_edge), "map": io.projective_to_json(rf.map)}
    if args.out:
        io.write_json(args.out, io.reduced_to_json(rf))
        report.result["written"] = str(args.out)
    return f"reduced on edge {rf.base_edge}"


# -- extend ---------------------------------------------------------------------


def extend_case(d: SLDisk, f: dict, vertical: bool) -> dict:
    """Run one extension and classify it.

    ``status`` is "ok" (oracle verified), "obstructive", "precondition" or
    "failed".  The result carries the map on success.
    """
    from .extension import extend, vertical_extend
    from .oracle import embedding_violations

    try:
        out = vertical_extend(d, f) if vertical else extend(d, f)
    except Obstructive as exc:
        return {"status": "obstructive", "witness": _error_witness(exc)}
    except PreconditionError as exc:
        return {"status": "precondition", "witness": _error_witness(exc)}
    except ConsistencyError as exc:
        return {"status": "failed", "witness": _error_witness(exc)}
    problems = embedding_violations(d, out)
    agree = [w for w in d.boundary if out[w] != f[w]]
    if problems or agree:
        return {"status": "failed", "witness": {"oracle": problems[:5], "boundary": agree}}
    return {"status": "ok", "map": out}


def _corpus_pairs(root: Path) -> list:
    """(name, disk file, map file) triples, sorted by file name."""
    out = []
    for disk_file in sorted(root.glob("*" + DISK_SUFFIX)):
        stem = disk_file.name[: -len(DISK_SUFFIX)]
        for map_file in sorted(root.glob(f"{stem}.*{MAP_SUFFIX}")):
            label = map_file.name[len(stem) + 1: -len(MAP_SUFFIX)]
            out.append((f"{stem}/{label}", disk_file, map_file))
    return out


def _extend_job(job) -> tuple:
    name, disk_file, map_file, vertical = job
    try:
        d, f = io.read_disk(disk_file), io.read_map(map_file)
    except ParseError as exc:
        return name, {"status": "parse", "witness": _error_witness(exc)}
    res = extend_case(d, f, vertical)
    res.pop("map", None)
    return name, res


def _run_jobs(fn, jobs, workers: int) -> list:
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    else:
        results = [fn(j) for j in jobs]
    return sorted(results, key=lambda r: r[0])


def _extend_corpus(args, report: RunReport, vertical: bool) -> str:
    root = Path(args.corpus)
    pairs = _corpus_pairs(root)
    if not pairs:
        raise ParseError(f"no {DISK_SUFFIX} files with maps in {root}")
    results = _run_jobs(_extend_job, [(n, a, b, vertical) for n, a, b in pairs], args.jobs)
    counts: dict = {}
    for name, res in results:
        counts[res["status"]] = counts.get(res["status"], 0) + 1
        if res["status"] in ("failed", "parse"):
            report.check(name, False, res["witness"])
    report.result = {"counts": dict(sorted(counts.items())),
                     "cases": {name: res for name, res in results}}
    if counts.get("failed"):
        report.exit_code = EXIT_CONSISTENCY
    elif counts.get("parse"):
        report.exit_code = EXIT_PARSE
    total = len(results)
    return f"{counts.get('ok', 0)}/{total} ok, " + ", ".join(
        f"{k}={v}" for k, v in sorted(counts.items()) if k != "ok") if total else "empty corpus"


def cmd_extend(args, report: RunReport, vertical: bool | None = None) -> str:
    vertical = args.vertical if vertical is None else vertical
    if args.corpus:
        return _extend_corpus(args, report, vertical)
    if not args.disk or not args.map:
        raise ParseError("extend needs DISK and MAP (or --corpus DIR)")
    d = _read_disk(args.disk, report)
    f = _read_map(args.map, report)
    from .extension import extend, vertical_extend
    from .oracle import embedding_violations

    out = vertical_extend(d, f) if vertical else extend(d, f)
    problems = embedding_violations(d, out)
    report.check("oracle", not problems, problems[:5] or None)
    agree = [w for w in d.boundary if out[w] != f[w]]
    report.check("boundary agreement", not agree, agree or None)
    if problems or agree:
        raise ConsistencyError("extension failed verification; nothing written")
    report.result = {"vertices": len(out)}
    if args.out:
        io.write_json(args.out, io.map_to_json(out))
        report.result["written"] = str(args.out)
    if args.svg:
        _write_figures(d, out, args.svg)
        report.result["figures"] = [f"{args.svg}-before.svg", f"{args.svg}-after.svg"]
    return f"extension verified, interior vertices placed: {len(d.interior_vertices)}"


def _write_figures(d: SLDisk, images: dict, prefix: str) -> None:
    from .svg import annotations_for, render_svg

    Path(f"{prefix}-before.svg").write_text(render_svg(d, annotations=annotations_for(d)))
    Path(f"{prefix}-after.svg").write_text(render_svg(d, images))


def cmd_check_obstructive(args, report: RunReport) -> str:
    from .extension import obstructive_simplices

    d = _read_disk(args.disk, report)
    f = _read_map(args.map, report)
    obs = obstructive_simplices(d, f)
    report.result = {"obstructive": _pairs(obs)}
    if not obs:
        return "no obstructive simplices"
    return "obstructive: " + ",".join(f"({a},{b})" for a, b in obs)


# -- polytope commands ----------------------------------------------------------


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(parse_rational(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational vector {text!r}") from exc


def _setup_for(d: SLDisk, edge=None):
    """Apex setup of ``d``, reducing it first unless it is already reduced."""
    from .polytope.fibers import apex_setup
    from .reduction import reduce

    if edge is None:
        try:
            return apex_setup(d)
        except PreconditionViolated as exc:
            if exc.clause != "reduced":
                raise
        c = boundary_circle(d)
        if convexity(c) == NOT_CONVEX:
            raise PreconditionViolated("reduced", "disk is not convex and cannot be reduced")
        runs = [r for r in natural_edges(c) if len(r) == 2]
        if not runs:
            raise PreconditionViolated("reduced", "every natural edge carries a flat vertex")
        edge = runs[0]
    return apex_setup(reduce(d, edge).disk)


def _fiber_json(rep) -> dict:
    return {
        "X": [_q(x) for x in rep.X],
        "y": _q(rep.y_level),
        "dimensions": list(rep.dimensions),
        "expected_dimensions": list(rep.expected_dimensions),
        "bounded": list(rep.bounded),
        "interior_nonempty": list(rep.interior_nonempty),
        "unbounded_directions": [list(u) for u in rep.unbounded],
        "polytopes": {"full": io.hpoly_to_json(rep.full), "at_least": io.hpoly_to_json(rep.at_least),
                      "level": io.hpoly_to_json(rep.level)},
    }


def cmd_fiber(args, report: RunReport) -> str:
    from .polytope.fibers import fiber_polytopes

    d = _read_disk(args.disk, report)
    setup = _setup_for(d, args.edge)
    X = _parse_vector(args.x)
    rep = fiber_polytopes(setup, X, parse_rational(args.y))
    report.check("fiber structure", rep.consistent,
                 None if rep.consistent else {"dimensions": list(rep.dimensions),
                                              "bounded": list(rep.bounded)})
    report.result = _fiber_json(rep)
    report.result["movable"] = list(setup.movable)
    if args.out:
        io.write_json(args.out, report.result)
    dims = rep.dimensions
    y = _q(rep.y_level)
    return f"dim(F)={dims[0]}, dim(F^>={y})={dims[1]}, dim(F^{y})={dims[2]}"


def lemma6_case(d: SLDisk, samples: int, fiber_samples: int, seed: int, levels=(0, -1)) -> dict:
    """Fiber structure at embedding-sampled X and the projection equality
    check at ``samples`` X for one disk (reduced first when needed)."""
    from .polytope.fibers import fiber_polytopes, projection_equality_check, sample_x, walk_length
    from .polytope.sampling import sample_embeddings

    try:
        setup = _setup_for(d)
    except PreconditionError as exc:
        return {"status": "skipped", "witness": _error_witness(exc)}
    K = setup.disk
    fibers = []
    walk = sample_embeddings(K, {v: K.points[v] for v in K.boundary},
                             max(fiber_samples, walk_length(samples)), seed, start=K.points)
    bad = []
    for e in walk[:fiber_samples]:
        X = tuple(e[v].x for v in setup.movable)
        rep = fiber_polytopes(setup, X, e[setup.apex].y)
        fibers.append(rep)
        if not rep.consistent:
            bad.append({"X": [_q(x) for x in X], "y": _q(rep.y_level),
                        "dimensions": list(rep.dimensions), "bounded": list(rep.bounded),
                        "interior_nonempty": list(rep.interior_nonempty)})
    proj = projection_equality_check(setup, levels[0], levels[1], sample_x(setup, samples, seed, walk))
    disagreements = [{"X": [_q(x) for x in X], "verdicts": v} for X, v in proj.disagreements]
    ok = not bad and proj.ok
    return {
        "status": "ok" if ok else "failed",
        "m": setup.m,
        "fibers_checked": len(fibers),
        "fiber_failures": bad,
        "projection_checked": proj.checked,
        "projection_inside": proj.inside,
        "disagreements": disagreements,
        "_fibers": fibers,
    }


def _lemma6_job(job) -> tuple:
    name, disk_file, samples, fiber_samples, seed = job
    try:
        d = io.read_disk(disk_file)
    except ParseError as exc:
        return name, {"status": "parse", "witness": _error_witness(exc)}
    res = lemma6_case(d, samples, fiber_samples, seed)
    res.pop("_fibers", None)
    return name, res


def cmd_lemma6(args, report: RunReport) -> str:
    if args.corpus:
        files = sorted(Path(args.corpus).glob("*" + DISK_SUFFIX))
        if not files:
            raise ParseError(f"no {DISK_SUFFIX} files in {args.corpus}")
        jobs = [(f.name[: -len(DISK_SUFFIX)], f, args.samples, args.fiber_samples, args.seed)
                for f in files]
    else:
        if not args.disk:
            raise ParseError("lemma6-check needs DISK (or --corpus DIR)")
        report.add_input(args.disk)
        jobs = [(Path(args.disk).name, Path(args.disk), args.samples, args.fiber_samples, args.seed)]
    results = _run_jobs(_lemma6_job, jobs, args.jobs)
    counts: dict = {}
    for name, res in results:
        counts[res["status"]] = counts.get(res["status"], 0) + 1
        if res["status"] == "failed":
            report.check(name, False, {"fiber_failures": res["fiber_failures"],
                                       "disagreements": res["disagreements"]})
        elif res["status"] == "parse":
            report.check(name, False, res["witness"])
    report.result = {"counts": dict(sorted(counts.items())), "cases": dict(results)}
    if counts.get("failed"):
        report.exit_code = EXIT_CONSISTENCY
    elif counts.get("parse"):
        report.exit_code = EXIT_PARSE
    elif not args.corpus and counts.get("skipped"):
        report.exit_code = EXIT_PRECONDITION
    checked = sum(r.get("projection_checked", 0) for _, r in results)
    dis = sum(len(r.get("disagreements", [])) for _, r in results)
    return (f"{counts.get('ok', 0)} disks ok, {counts.get('skipped', 0)} skipped, "
            f"{checked} X checked, {dis} disagreements")


def cmd_sample(args, report: RunReport) -> str:
    from .polytope.sampling import sample_embeddings

    d = _read_disk(args.disk, report)
    if args.map:
        f = _read_map(args.map, report)
    else:
        f = {v: d.points[v] for v in d.boundary}
    start = None if args.map else d.points
    maps = sample_embeddings(d, f, args.n, args.seed, start=start)
    out = Path(args.out) if args.out else None
    written = []
    if out:
        out.mkdir(parents=True, exist_ok=True)
        for i, m in enumerate(maps):
            p = out / f"sample{i:03d}{MAP_SUFFIX}"
            io.write_json(p, io.map_to_json(m))
            written.append(p.name)
    report.check("oracle", True)
    report.result = {"n": len(maps), "seed": args.seed, "files": written,
                     "digests": [hashlib.sha256(io.dumps(io.map_to_json(m)).encode()).hexdigest()
                                 for m in maps]}
    if out:
        io.write_json(out / "summary.json", report.result)
    return f"{len(maps)} embeddings sampled"


def cmd_render(args, report: RunReport) -> str:
    from .svg import annotations_for, render_svg

    d = _read_disk(args.disk, report)
    f = _read_map(args.map, report) if args.map else None
    if f is not None and any(v not in f for v in d.vertex_ids):
        # boundary data only: draw the disk with obstructive edges marked
        ann = annotations_for(d, f) if args.annotate else None
        svg = render_svg(d, annotations=ann)
    else:
        ann = annotations_for(d, None) if args.annotate else None
        svg = render_svg(d, f, ann)
    if args.out:
        Path(args.out).write_text(svg)
        report.result = {"written": str(args.out)}
    else:
        sys.stdout.write(svg)
    return "rendered"


def cmd_corpus(args, report: RunReport) -> str:
    from .generate import boundary_maps, build_corpus

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for i, (name, d) in enumerate(build_corpus(args.seed, args.size)):
        io.write_json(out / f"{name}{DISK_SUFFIX}", io.disk_to_json(d))
        for label, f in boundary_maps(d, args.seed * 1000 + i).items():
            io.write_json(out / f"{name}.{label}{MAP_SUFFIX}", io.map_to_json(f))
        names.append(name)
    report.result = {"disks": len(names), "directory": str(out)}
    return f"{len(names)} disks written to {out}"


# -- plumbing -------------------------------------------------------------------


def _read_disk(path, report: RunReport) -> SLDisk:
    report.add_input(path)
    return io.read_disk(path)


def _read_map(path, report: RunReport) -> dict:
    report.add_input(path)
    return io.read_map(path)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slembed", description="Exact extension of boundary embeddings "
                                "of triangulated disks.")
    p.add_argument("--report", help="write the run report JSON here")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field from the report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate and classify a disk")
    s.add_argument("disk")

    s = sub.add_parser("reduce", help="projective reduction onto a natural edge")
    s.add_argument("disk")
    s.add_argument("--edge", type=int, default=0, help="natural edge index")
    s.add_argument("--out")

    for name in ("extend", "vertical-extend"):
        s = sub.add_parser(name, help="extend boundary data to an embedding")
        s.add_argument("disk", nargs="?")
        s.add_argument("map", nargs="?")
        s.add_argument("--out")
        s.add_argument("--svg", help="prefix for before/after figures")
        s.add_argument("--corpus", help="directory of *.disk.json with *.<label>.map.json")
        s.add_argument("--jobs", type=int, default=1)
        if name == "extend":
            s.add_argument("--vertical", action="store_true")

    s = sub.add_parser("check-obstructive", help="list obstructive spanning edges")
    s.add_argument("disk")
    s.add_argument("map")

    s = sub.add_parser("fiber", help="fiber polytopes over fixed x-coordinates")
    s.add_argument("disk")
    s.add_argument("--x", required=True, help="comma separated rationals, apex last")
    s.add_argument("--y", default="0")
    s.add_argument("--edge", type=int, default=None)
    s.add_argument("--out")

    s = sub.add_parser("lemma6-check", help="fiber structure and projection equality checks")
    s.add_argument("disk", nargs="?")
    s.add_argument("--corpus")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--fiber-samples", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("sample", help="random embeddings with fixed boundary")
    s.add_argument("disk")
    s.add_argument("map", nargs="?")
    s.add_argument("-n", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")

    s = sub.add_parser("render", help="SVG picture of a disk or an embedding")
    s.add_argument("disk")
    s.add_argument("map", nargs="?")
    s.add_argument("--annotate", action="store_true", help="mark roof, key and obstructive edges")
    s.add_argument("--out")

    s = sub.add_parser("corpus", help="write the generated test corpus")
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--size", type=int, default=200)
    return p


COMMANDS = {
    "check": cmd_check,
    "reduce": cmd_reduce,
    "extend": cmd_extend,
    "vertical-extend": lambda a, r: cmd_extend(a, r, vertical=True),
    "check-obstructive": cmd_check_obstructive,
    "fiber": cmd_fiber,
    "lemma6-check": cmd_lemma6,
    "sample": cmd_sample,
    "render": cmd_render,
    "corpus": cmd_corpus,
}


def run(argv=None) -> RunReport:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = RunReport(command=["slembed"] + argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors are input errors; --help exits cleanly
        report.exit_code = EXIT_PARSE if exc.code else EXIT_OK
        return report
    start = time.perf_counter()
    try:
        summary = COMMANDS[args.command](args, report)
    except ParseError as exc:
        report.exit_code = EXIT_PARSE
        summary = f"parse error: {exc}"
        report.check("input", False, _error_witness(exc))
    except OSError as exc:
        report.exit_code = EXIT_PARSE
        summary = f"I/O error: {exc}"
        report.check("input", False, {"error": type(exc).__name__, "message": str(exc)})
    except PreconditionError as exc:
        report.exit_code = EXIT_PRECONDITION
        summary = f"{type(exc).__name__}: {exc}"
        report.check("precondition", False, _error_witness(exc))
    except ConsistencyError as exc:
        report.exit_code = EXIT_CONSISTENCY
        summary = f"{type(exc).__name__}: {exc}"
        report.check("consistency", False, _error_witness(exc))
    except SLError as exc:
        report.exit_code = EXIT_CONSISTENCY
        summary = f"{type(exc).__name__}: {exc}"
        report.check("run", False, _error_witness(exc))
    report.elapsed = time.perf_counter() - start
    report.result.setdefault("summary", summary)
    if args.report:
        io.write_json(args.report, report.to_json(timing=not args.no_timing))
    if report.exit_code:
        print(summary, file=sys.stderr)
    elif args.command != "render" or args.out:
        print(summary)
    return report


def main(argv=None) -> int:
    return run(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
