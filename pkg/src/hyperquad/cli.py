"""Command-line front end.

    hyperquad enumerate --n 3 --what nonsingular
    hyperquad map --n 2 --forward 1100 --trace
    hyperquad verify --n 4 --suite all --report report.json
    hyperquad verify --n 5 --suite theorem --sample 1000000 --seed 1
    hyperquad graph --n 3 --relation B2 --format graph6 --out no6.g6
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .correspondence import (
    Antiflag,
    Frame,
    antiflags,
    forward,
    forward_trace,
    inverse,
    nonsingular_points,
    singular_points,
    standard_frame,
)
from .gf2 import Subspace, parse_vector, render, span
from .quadric import ConsistencyError, perp
from .relations import EXHAUSTIVE_VERTEX_LIMIT, RelationLabel, ResourceBoundError, build_graph, vertex_count
from .report import RunReport, Verdict, VerificationError
from .serialize import export
from .verify import (
    verify_bijection,
    verify_crossing,
    verify_facts,
    verify_srg,
    verify_stanley_takeda_iso,
    verify_theorem,
)

LIST_MAX_N = 12
COUNT_MAX_N = 14
SUITE_ORDER = ("bijection", "crossing", "facts", "theorem", "srg", "stanley-takeda")


class UsageError(Exception):
    pass


def make_frame(n: int, name: str) -> Frame:
    frame = standard_frame(n)
    return frame.swapped() if name == "swapped" else frame


# ---------------------------------------------------------------------------
# enumerate

def _count_vectorized(n: int, what: str) -> int:
    # standard form only: Q(x) = parity of x & (x >> 1) on the odd coordinates
    m = 2 * n
    if what == "antiflags":
        # antiflags of V(n,2): (point p, functional c) with <p, c> = 1
        p = np.arange(1, 1 << n, dtype=np.uint64)
        return int(sum(
            int(np.count_nonzero(np.bitwise_count(p & np.uint64(c)) & 1))
            for c in range(1, 1 << n)
        ))
    odd = np.uint64(sum(1 << i for i in range(0, m, 2)))
    total = 0
    chunk = 1 << 22
    for lo in range(1, 1 << m, chunk):
        x = np.arange(lo, min(lo + chunk, 1 << m), dtype=np.uint64)
        q = np.bitwise_count(x & (x >> np.uint64(1)) & odd) & 1
        total += int(np.count_nonzero(q))
    return total if what == "nonsingular" else (1 << m) - 1 - total


def cmd_enumerate(args, out) -> int:
    n = args.n
    if n < 2 or n > COUNT_MAX_N:
        raise UsageError(f"--n must be in [2, {COUNT_MAX_N}]")
    count_only = args.count_only or n > LIST_MAX_N
    if count_only:
        out.write(f"count: {_count_vectorized(n, args.what)}\n")
        return 0
    frame = make_frame(n, args.frame)
    m = frame.m
    if args.what == "antiflags":
        items = [af.render() for af in antiflags(frame)]
    elif args.what == "nonsingular":
        items = [render(x.basis[0], m) for x in nonsingular_points(frame)]
    else:
        items = [render(y.basis[0], m) for y in singular_points(frame)]
    for line in items:
        out.write(line + "\n")
    out.write(f"count: {len(items)}\n")
    return 0


# ---------------------------------------------------------------------------
# map

def parse_point(text: str, m: int) -> Subspace:
    v, dim = parse_vector(text)
    if dim != m:
        raise UsageError(f"expected {m} coordinates, got {dim}")
    if v == 0:
        raise UsageError("the zero vector is not a point")
    return Subspace(m, (v,))


def parse_antiflag(text: str, m: int) -> Antiflag:
    """``P;H`` with H given by comma-separated spanning vectors (ambient coordinates)."""
    if text.count(";") != 1:
        raise UsageError("antiflag must be written as P;H1,H2,...")
    ptext, htext = text.split(";")
    p = parse_point(ptext, m)
    vecs = []
    for part in filter(None, (s.strip() for s in htext.split(","))):
        v, dim = parse_vector(part)
        if dim != m:
            raise UsageError(f"expected {m} coordinates, got {dim}")
        vecs.append(v)
    return Antiflag(p, span(vecs, m))


def cmd_map(args, out) -> int:
    if args.n < 2 or 2 * args.n > 64:
        raise UsageError("--n must be in [2, 32]")
    frame = make_frame(args.n, args.frame)
    m, qs = frame.m, frame.qs
    if args.forward is not None:
        x = parse_point(args.forward, m)
        try:
            af = forward(frame, x)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.trace:
            tr = forward_trace(frame, x)
            out.write(f"X      {render(x.basis[0], m)}  Q(x)={qs.q(x.basis[0])}\n")
            out.write(f"G      {tr.g}\n")
            out.write(f"H      {tr.h}\n")
            out.write(f"P      {tr.p}\n")
            out.write(f"L      {tr.line}\n")
        out.write(af.render() + "\n")
    else:
        af = parse_antiflag(args.inverse, m)
        try:
            x = inverse(frame, af)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.trace:
            g = perp(qs, af.p) & frame.pi
            out.write(f"G      {g}\n")
            out.write(f"L      {perp(qs, g + af.h)}\n")
        out.write(render(x.basis[0], m) + "\n")
    return 0


# ---------------------------------------------------------------------------
# verify

def _run_suite(name: str, args, frame: Frame) -> RunReport:
    n = args.n
    if name == "bijection":
        return verify_bijection(n, frame)
    if name == "crossing":
        return verify_crossing(n, frame)
    if name == "facts":
        return verify_facts(n, frame, sample=args.sample, seed=args.seed)
    if name == "theorem":
        return verify_theorem(n, frame, sample=args.sample, seed=args.seed)
    if name == "srg":
        labels = tuple(args.relation) if args.relation else ("B1", "B2")
        return verify_srg(n, frame, labels)
    if name == "stanley-takeda":
        return verify_stanley_takeda_iso(n, frame)
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args, out) -> int:
    n = args.n
    if n < 2 or 2 * n > 64:
        raise UsageError("--n must be in [2, 32]")
    if args.sample is not None and args.seed is None:
        raise UsageError("--sample needs --seed")
    suites = SUITE_ORDER if args.suite == "all" else (args.suite,)
    v = vertex_count(n)
    if v > EXHAUSTIVE_VERTEX_LIMIT:
        exhaustive_only = {"srg", "stanley-takeda"} & set(suites)
        if exhaustive_only or ("theorem" in suites and args.sample is None):
            raise UsageError(
                f"n={n} has {v} vertices, above the exhaustive bound {EXHAUSTIVE_VERTEX_LIMIT}; "
                "use --suite theorem with --sample K --seed R"
            )
    frame = make_frame(n, args.frame)
    total = RunReport(f"verify {args.suite}", n, frame.describe(), seed=args.seed)
    start = time.perf_counter()
    for name in suites:
        try:
            total.merge(_run_suite(name, args, frame))
        except VerificationError as exc:
            total.verdicts.append(Verdict(f"{name}: {exc.check}", False, exc.witness))
        except (ConsistencyError, ResourceBoundError) as exc:
            total.verdicts.append(Verdict(f"{name}: completed", False, str(exc)))
    total.wall_time = time.perf_counter() - start
    out.write(total.to_text())
    if args.report:
        try:
            with open(args.report, "w") as fh:
                fh.write(total.to_json())
        except OSError as exc:
            raise UsageError(f"cannot write report: {exc}") from None
    return 0 if total.ok else 1


# ---------------------------------------------------------------------------
# graph

def cmd_graph(args, out) -> int:
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    try:
        label = RelationLabel.parse(args.relation)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if label.family == "=":
        raise UsageError("EQUAL does not define a graph")
    if vertex_count(n) > EXHAUSTIVE_VERTEX_LIMIT:
        raise UsageError(f"n={n} exceeds the exhaustive bound of {EXHAUSTIVE_VERTEX_LIMIT} vertices")
    graph = build_graph(make_frame(n, args.frame), label)
    text = export(graph, args.format)
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    out.write(f"{label}: {graph.v} vertices, {graph.edge_count} edges -> {args.out}\n")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperquad",
        description="Antiflags of V(n,2) versus nonsingular points of O+(2n,2).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--frame", choices=("standard", "swapped"), default="standard",
                       help="swapped exchanges the roles of Pi and Sigma")

    p = sub.add_parser("enumerate", help="list nonsingular points, singular points or antiflags")
    common(p)
    p.add_argument("--what", choices=("nonsingular", "singular", "antiflags"), required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("map", help="apply f or its inverse to one element")
    common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--forward", metavar="POINT", help="0/1 coordinates, e.g. 1100")
    g.add_argument("--inverse", metavar="P;H", help="e.g. '0100;0001'")
    p.add_argument("--trace", action="store_true", help="print intermediate subspaces")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", choices=SUITE_ORDER + ("all",), required=True)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--relation", action="append", help="relation label for the srg suite (repeatable)")
    p.add_argument("--report", metavar="FILE", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="export a relation graph")
    common(p)
    p.add_argument("--relation", required=True, help="A1..A4, B1, B2, C1..C4")
    p.add_argument("--format", choices=("edges", "graph6", "json"), default="graph6")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"hyperquad {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
