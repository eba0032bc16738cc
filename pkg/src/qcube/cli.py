"""Command-line interface: ``qcube <command> ...``.

Exit codes: 0 and 1 answer the question asked (partial cube / full PSD set
or not), 2 means the independent characterisations disagreed, and the
sysexits-style codes 64-70 report usage, input and internal errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import DEFAULT_MAX_N, AnalysisReport, verify_equivalences
from .errors import GraphParseError, InternalInconsistency, QCubeError
from .families import generate
from .graph import Graph, bfs_distances, format_edge_list, parse_graph
from .partial_cube import djokovic_embedding
from .qmatrix import DEFAULT_GRID_STEP, estimate_pi, qec, write_samples_csv
from .spectral import DEFAULT_TOL

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INCONSISTENT = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66
EXIT_SOFTWARE = 70


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with EXIT_INCONSISTENT
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class InputMissing(QCubeError):
    pass


def _read_graph(path: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except FileNotFoundError:
            raise InputMissing(f"file not found: {path}") from None
    return parse_graph(text)


def _dump(report: AnalysisReport, g: Graph, root: str) -> Path:
    digest = hashlib.sha256(format_edge_list(g).encode()).hexdigest()[:12]
    out = Path(root) / f"inconsistent-{digest}"
    out.mkdir(parents=True, exist_ok=True)
    (out / "graph.txt").write_text(format_edge_list(g), encoding="utf-8")
    (out / "report.json").write_text(report.model_dump_json(indent=2), encoding="utf-8")
    d = bfs_distances(g)
    np.savetxt(out / "distances.txt", d.d, fmt="%d", header=" ".join(d.labels))
    return out


def _summary(report: AnalysisReport) -> str:
    gs, v = report.graph, report.verdicts
    lines = [
        f"vertices {gs.n}  edges {gs.m}  diameter {gs.diameter}",
        f"bipartite           {report.bipartite}",
        f"distance-regular    {report.distance_regular}",
        f"psd set             {_intervals(report.pi.intervals)}",
        f"qec                 {report.qec.value:.12g}",
        "",
        f"(i)   Q_q PSD on all of [-1,1]        {v.full_interval}",
        f"(ii)  isometric hypercube embedding   {v.partial_cube}",
        f"(iii) bipartite, no quintuple         {v.no_quintuple}",
        f"(iv)  bipartite, half-spaces convex   {v.convex_half_spaces}",
        f"consistent                            {report.equivalence_consistent}",
    ]
    if report.odd_cycle:
        lines.append("odd cycle: " + " ".join(report.odd_cycle))
    if report.quintuple:
        q = report.quintuple
        lines.append(
            f"quintuple: {' '.join(q.vertices)}  (i={q.i}, j={q.j}, h={q.h}, xi={list(q.xi)}, value={q.value})"
        )
    if report.non_convex:
        nc = report.non_convex
        lines.append(f"G({nc.x},{nc.y}) not convex: {nc.z} lies on a geodesic {nc.u} .. {nc.v}")
    if report.cube.embedding:
        lines.append(f"embedding into the {report.cube.embedding.classes}-cube (use `qcube embed` for the map)")
    return "\n".join(lines)


def _intervals(iv) -> str:
    return " U ".join(f"[{lo:.6g}, {hi:.6g}]" for lo, hi in iv) or "(empty)"


def cmd_generate(args) -> int:
    g = generate(args.family, args.params, seed=args.seed)
    sys.stdout.write(format_edge_list(g))
    return EXIT_TRUE


def _analysis(args) -> tuple[Graph, AnalysisReport]:
    g = _read_graph(args.file)
    report = verify_equivalences(g, args.grid_step, args.tol, args.max_n)
    if args.no_timings:
        report = report.model_copy(update={"runtime_ms": {}})
    return g, report


def _emit_report(args, g: Graph, report: AnalysisReport) -> None:
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(_summary(report))
    if not report.equivalence_consistent:
        where = _dump(report, g, args.dump_dir)
        print(f"qcube: characterisations disagree; artifacts written to {where}", file=sys.stderr)


def cmd_analyze(args) -> int:
    g, report = _analysis(args)
    _emit_report(args, g, report)
    return EXIT_TRUE if report.equivalence_consistent else EXIT_INCONSISTENT


def cmd_verify(args) -> int:
    g, report = _analysis(args)
    _emit_report(args, g, report)
    if not report.equivalence_consistent:
        return EXIT_INCONSISTENT
    return EXIT_TRUE if report.verdict else EXIT_FALSE


def cmd_pi_scan(args) -> int:
    g = _read_graph(args.file)
    report = estimate_pi(g, args.grid_step, args.tol)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_samples_csv(report, fh)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(f"psd set       {_intervals(report.intervals)}")
        print(f"full [-1,1]   {report.full_interval}")
        if report.singleton:
            print("single vertex: Q_q = [1] is PSD for every real q")
        for q, lam in report.endpoints:
            print(f"endpoint q={q:.9f}  lambda_min={lam:.3e}")
    return EXIT_TRUE


def cmd_qec(args) -> int:
    g = _read_graph(args.file)
    report = qec(g, args.tol)
    out = {"value": report.value, "witness": dict(zip(g.vertices, report.witness or []))}
    print(json.dumps(out, indent=2))
    return EXIT_TRUE


def cmd_embed(args) -> int:
    g = _read_graph(args.file)
    verdict = djokovic_embedding(g, bfs_distances(g))
    if verdict.is_partial_cube:
        print(verdict.embedding.model_dump_json(indent=2))
        return EXIT_TRUE
    print(verdict.counterexample.model_dump_json(indent=2))
    return EXIT_FALSE


def cmd_schema(args) -> int:
    print(json.dumps(AnalysisReport.model_json_schema(), indent=2))
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcube", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qcube {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("generate", help="write a family member as an edge list")
    p.add_argument("family", help="hypercube, doubled-odd, cycle, path, complete, complete-bipartite, petersen, random-tree, coxeter")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_generate)

    def analysis_flags(p):
        p.add_argument("file", help="edge-list file, or - for stdin")
        p.add_argument("--grid-step", type=float, default=DEFAULT_GRID_STEP)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--json", action="store_true")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
        p.add_argument("--no-timings", action="store_true", help="omit runtime_ms for byte-stable output")
        p.add_argument("--dump-dir", default="qcube-dump", help="where to write artifacts on disagreement")

    p = sub.add_parser("analyze", help="full report on one graph")
    analysis_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="exit 0 if all four characterisations hold, 1 if none, 2 if they disagree")
    analysis_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pi-scan", help="estimate the set of q with Q_q PSD")
    p.add_argument("file")
    p.add_argument("--grid-step", type=float, default=DEFAULT_GRID_STEP)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pi_scan)

    p = sub.add_parser("qec", help="quadratic embedding constant and maximiser")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_qec)

    p = sub.add_parser("embed", help="hypercube embedding JSON, or a counterexample")
    p.add_argument("file")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("schema", help="print the JSON schema of the analyze/verify report")
    p.set_defaults(func=cmd_schema)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputMissing as exc:
        print(f"qcube: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except InternalInconsistency as exc:
        print(f"qcube: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_SOFTWARE
    except (GraphParseError, QCubeError, ValueError) as exc:
        print(f"qcube: {exc}", file=sys.stderr)
        return EXIT_DATAERR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
