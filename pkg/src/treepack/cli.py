"""Command-line front end.

Exit codes: 0 success, 1 validation or verification failure, 2 hypothesis
failure, 3 oracle budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional, Tuple

from . import construct, degseq, egraph, enumeration, generate, oracle
from .errors import DimensionError, HypothesisError, NotFoundError, OracleTimeout, ParseError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64

JOBS_ENV = "TREEPACK_JOBS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _n_range(spec: str) -> Tuple[int, int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return int(lo), int(hi)
    return int(spec), int(spec)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_check(args) -> int:
    m = degseq.parse_degree_matrix(_read(args.matrix))
    out: List[str] = []
    status = EXIT_OK
    bad_rows = [i for i, r in enumerate(m.rows) if not degseq.is_tree_degree_sequence(r)]
    if bad_rows:
        out.append("invalid: rows " + ", ".join(str(i + 1) for i in bad_rows) + " are not tree degree sequences")
        status = EXIT_INVALID
    else:
        out.append(f"valid tree degree matrix (k={m.k}, n={m.n})")
    hit = degseq.find_common_leaves(m)
    if hit is None:
        out.append("no common leaves")
    else:
        v, a, b = hit
        out.append(f"common leaf: vertex {v + 1} is a leaf in rows {a + 1} and {b + 1}")
        status = EXIT_INVALID
    nl = degseq.count_never_leaves(m)
    out.append(f"{nl} never-leaves")
    sums = degseq.sum_sequence(m).sums
    out.append("sum graphical" if degseq.erdos_gallai_graphical(sums) else "sum NOT graphical")
    if status == EXIT_OK:
        if degseq.all_paths(m):
            out.append("paths builder eligible")
        if m.k == 4:
            out.append("k=4 builder eligible")
        need = construct.never_leaf_threshold(m.k)
        if nl >= need:
            out.append(f"never-leaves builder eligible ({nl} >= 2k-4 = {need})")
        else:
            out.append(f"never-leaves builder not eligible ({nl} < 2k-4 = {need})")
        if m.k == 5:
            out.append("k=5 builder eligible")
        if m.k not in (4, 5) and nl < need and not degseq.all_paths(m):
            out.append("no proven builder applies; conjectural instance (oracle only)")
    print("\n".join(out))
    return status


def cmd_realize(args) -> int:
    m = degseq.parse_degree_matrix(_read(args.matrix))
    try:
        res = construct.realize(m, args.strategy, args.budget, args.base_limit)
    except OracleTimeout as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HypothesisError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    report = egraph.verify_realization(res.graph, m)
    if not report.ok:
        print("internal error: realization failed verification", file=sys.stderr)
        for line in report.lines():
            print(line, file=sys.stderr)
        return EXIT_INVALID
    text = res.graph.to_edge_list_text() if args.format == "edges" else res.graph.to_adjacency_text()
    _write(args.output, text)
    print(f"strategy: {res.strategy}, peel depth: {res.depth}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    m = degseq.parse_degree_matrix(_read(args.matrix))
    g = egraph.parse_graph(_read(args.graph), k=m.k)
    try:
        report = egraph.verify_realization(g, m)
    except DimensionError as exc:
        print(str(exc))
        return EXIT_INVALID
    if report.ok:
        print("ok")
        return EXIT_OK
    for line in report.lines():
        print(line)
    return EXIT_INVALID


def cmd_enumerate(args) -> int:
    lo, hi = _n_range(args.n)
    if args.k < 1 or lo < 2 * args.k:
        print("need k >= 1 and n >= 2k", file=sys.stderr)
        return EXIT_USAGE
    chunks = []
    for n in range(lo, hi + 1):
        classes = list(enumeration.enumerate_tuples(args.k, n, args.jobs))
        if args.count:
            chunks.append(f"{n} {len(classes)}\n")
        else:
            chunks.append("\n".join(c.representative.to_text() for c in classes))
    if args.count:
        _write(args.output, "".join(chunks))
    else:
        _write(args.output, "\n".join(c for c in chunks if c))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.k < 1 or args.n_max < 2 * args.k:
        print("need k >= 1 and n_max >= 2k", file=sys.stderr)
        return EXIT_USAGE
    report = oracle.oracle_sweep(
        args.k, args.n_max, args.budget, args.jobs, args.builder, args.checkpoint, args.n_min
    )
    sys.stdout.write("# n\tclasses\trealized\tnone\texceeded\n" + report.to_text())
    print(f"# total classes: {report.total_classes}")
    status = EXIT_OK
    if args.class_bound is not None and report.total_classes > args.class_bound:
        print(f"# class count exceeds bound {args.class_bound}")
        status = EXIT_INVALID
    if args.acceptance and not report.all_realized:
        if any(r.exceeded for r in report.rows):
            return EXIT_BUDGET
        return EXIT_INVALID
    return status


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.count):
        m = generate.random_matrix(args.k, args.n, rng, args.never_leaves)
        out.append(m.to_json() + "\n" if args.format == "json" else m.to_text())
    _write(args.output, "\n".join(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treepack", description="Edge-disjoint tree realizations of degree matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="validate a degree matrix and list applicable builders")
    c.add_argument("matrix")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("realize", help="build a realization")
    r.add_argument("matrix")
    r.add_argument("--strategy", choices=construct.STRATEGIES, default="auto")
    r.add_argument("--format", choices=("adjacency", "edges"), default="adjacency")
    r.add_argument("-o", "--output")
    r.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    r.add_argument("--base-limit", type=int, default=18)
    r.set_defaults(func=cmd_realize)

    v = sub.add_parser("verify", help="check a realization against a degree matrix")
    v.add_argument("matrix")
    v.add_argument("graph")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="list canonical classes")
    e.add_argument("-k", type=int, required=True)
    e.add_argument("-n", required=True, help="N or LO..HI")
    e.add_argument("--count", action="store_true")
    e.add_argument("--jobs", type=int, default=_default_jobs())
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sweep", help="realize every enumerated class up to n_max")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--n-min", type=int)
    s.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    s.add_argument("--jobs", type=int, default=_default_jobs())
    s.add_argument("--builder", action="store_true", help="use the constructive dispatcher")
    s.add_argument("--checkpoint")
    s.add_argument("--acceptance", action="store_true", help="fail unless every class is realized")
    s.add_argument("--class-bound", type=int, help="fail if more classes than this are found")
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("gen", help="random valid instances")
    g.add_argument("-k", type=int, required=True)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--never-leaves", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotFoundError as exc:
        print(f"internal search failure: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
