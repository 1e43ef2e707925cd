"""Command-line entry point.

Exit codes: 0 yes / success, 1 no, 2 timeout or size cap, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from .edgelist import EdgeListError, format_edge_list, parse_edge_list, to_dot
from .families import DEFAULT_C1, FAMILY_NAMES, get_family
from .generate import KINDS, POSITIVE, gen_instance, read_corpus, write_corpus
from .graph import Graph, kth_power
from .oracle import DEFAULT_EDGE_CAP, OracleCapExceeded, enumerate_roots, is_minimal_root
from .reduction import reduce_instance
from .search import DEFAULT_TIMEOUT, NO, UNKNOWN, YES, solve
from .width import PATH, TREE, WidthCapExceeded, exact_width

EXIT_YES = 0
EXIT_NO = 1
EXIT_LIMIT = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_graph(path: str) -> Graph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(text)
    except EdgeListError as exc:
        raise InputError(f"{path}: {exc}") from None


def _family(args):
    try:
        return get_family(
            args.family,
            c1=args.c1,
            twin_threshold=args.twin_threshold,
            width_cutoff="keep" if args.width_cutoff is None else _cutoff(args.width_cutoff),
            spread_count=args.spread_count,
        )
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


def _cutoff(text: str):
    if text in ("none", "unlimited"):
        return None
    try:
        return int(text)
    except ValueError:
        raise InputError(f"--width-cutoff must be an integer or 'none', got {text!r}") from None


def _edges_text(edges) -> str:
    return " ".join(f"{u}-{v}" for u, v in sorted(edges))


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


# commands -----------------------------------------------------------------


def cmd_solve(args) -> int:
    g = _read_graph(args.input)
    fam = _family(args)
    if args.trace:
        logging.getLogger("graphroots").setLevel(logging.DEBUG)
    out = solve(g, fam, timeout=args.timeout_secs)
    doc = out.to_json()
    if not args.trace:
        doc["stats"]["rule_trace"] = [
            {"vertices": t["vertices"], "labels": t.get("labels")} for t in out.trail
        ]
    print(json.dumps(doc, sort_keys=True, indent=2 if args.pretty else None))
    if args.dot:
        _write(args.dot, to_dot(g, out.root or ()))
    return {YES: EXIT_YES, NO: EXIT_NO, UNKNOWN: EXIT_LIMIT}[out.answer]


def cmd_oracle(args) -> int:
    g = _read_graph(args.input)
    fam = None if args.family == "any" else _family(args)
    try:
        roots = sorted(enumerate_roots(g, fam, cap=args.cap), key=sorted)
    except OracleCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    minimal = 0
    for es in roots:
        is_min = is_minimal_root(Graph(g.n, es), g)
        minimal += is_min
        if is_min or not args.minimal_only:
            print(_edges_text(es) + (" minimal" if is_min else ""))
    print(f"roots={len(roots)} minimal={minimal}")
    return EXIT_YES if roots else EXIT_NO


def cmd_reduce(args) -> int:
    g = _read_graph(args.input)
    fam = _family(args)
    inst = reduce_instance(g, fam, twins=not args.no_twins)
    if args.trace or args.json:
        doc = {"family": fam.name, "labels": inst.summary(), "failing_rule": inst.failing_rule}
        if args.trace:
            doc["rules"] = inst.trace
        print(json.dumps(doc, sort_keys=True, indent=2 if args.pretty else None))
    else:
        s = inst.summary()
        print(f"status: {s['status']}" + (f" ({s['reason']})" if s["reason"] else ""))
        print("hubs: " + " ".join(map(str, s["hubs"])))
        for key in ("red", "blue", "deleted"):
            print(f"{key}: {_edges_text(map(tuple, s[key]))}")
    return EXIT_YES if inst.running else EXIT_NO


def cmd_width(args) -> int:
    g = _read_graph(args.input)
    kind = PATH if args.path else TREE
    try:
        width, dec = exact_width(g, kind, cap=args.cap)
    except WidthCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.json:
        print(json.dumps({"kind": kind, "width": width, "bags": [sorted(b) for b in dec.bags],
                          "tree_edges": [list(e) for e in dec.tree_edges]}, sort_keys=True))
    else:
        print(width)
        sys.stdout.write(dec.to_text())
    return EXIT_YES


def cmd_power(args) -> int:
    g = _read_graph(args.input)
    if args.k < 1:
        raise InputError("--k must be at least 1")
    p = kth_power(g, args.k)
    text = format_edge_list(p)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if args.dot:
        _write(args.dot, to_dot(p))
    return EXIT_YES


def cmd_gen(args) -> int:
    if args.family not in FAMILY_NAMES:
        raise InputError(f"unknown family {args.family!r}; choose from {', '.join(FAMILY_NAMES)}")
    if args.n < 1 or args.count < 0:
        raise InputError("--n must be positive and --count non-negative")
    insts = [gen_instance(args.family, args.n, args.seed + i, args.kind) for i in range(args.count)]
    if args.out:
        write_corpus(args.out, insts)
        print(f"wrote {len(insts)} instances to {args.out}")
    else:
        for inst in insts:
            sys.stdout.write(format_edge_list(inst.square, comment=inst.name))
    return EXIT_YES


def _verify_one(job):
    inst, fam_name, c1, timeout = job
    out = solve(inst.square, get_family(fam_name, c1=c1), timeout=timeout)
    return inst.name, inst.label, out.answer


def cmd_verify_corpus(args) -> int:
    try:
        insts = read_corpus(args.corpus)
    except (OSError, ValueError, KeyError, EdgeListError) as exc:
        raise InputError(f"cannot read corpus {args.corpus}: {exc}") from None
    jobs = [
        (i, args.family or i.family, args.c1, args.timeout_secs)
        for i in insts
        if i.label is not None
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    mismatches = timeouts = 0
    for name, label, answer in sorted(results):
        if answer == UNKNOWN:
            timeouts += 1
            print(f"TIMEOUT {name}")
        elif (answer == YES) != label:
            mismatches += 1
            print(f"MISMATCH {name}: expected {'yes' if label else 'no'}, got {answer}")
    skipped = len(insts) - len(jobs)
    print(f"checked={len(results)} mismatches={mismatches} timeouts={timeouts} unlabelled={skipped}")
    if mismatches:
        return EXIT_NO
    return EXIT_LIMIT if timeouts else EXIT_YES


# parser -------------------------------------------------------------------


def _add_family(p, default="outerplanar", allow_any=False):
    choices = FAMILY_NAMES + (("any",) if allow_any else ())
    p.add_argument("--family", default=default, choices=choices)
    p.add_argument("--c1", type=int, default=DEFAULT_C1, help="twin bound for the pw2 pipeline")
    p.add_argument("--twin-threshold", type=int, default=None)
    p.add_argument("--width-cutoff", default=None, help="integer or 'none'")
    p.add_argument("--spread-count", type=int, choices=(3, 5), default=None,
                   help="spread neighbours needed to label a hub (family default when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphroots", description="Square roots in restricted graph families.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide whether a graph has a family square root")
    p.add_argument("input", help="edge-list file, or - for stdin")
    _add_family(p)
    p.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is JSON")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--trace", action="store_true", help="include the full rule trace")
    p.add_argument("--dot", help="write the graph with the root highlighted as DOT")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="enumerate square roots by brute force")
    p.add_argument("input")
    _add_family(p, default="any", allow_any=True)
    p.add_argument("--cap", type=int, default=DEFAULT_EDGE_CAP)
    p.add_argument("--minimal-only", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="run the reduction rules only")
    p.add_argument("input")
    _add_family(p)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--no-twins", action="store_true", help="skip twin deletion")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("width", help="exact treewidth or pathwidth with a decomposition")
    p.add_argument("input")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--tree", action="store_true", help="treewidth (default)")
    kind.add_argument("--path", action="store_true", help="pathwidth")
    p.add_argument("--cap", type=int, default=None, help="largest vertex count to attempt")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("power", help="k-th power of a graph")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("gen", help="generate planted or perturbed instances")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=KINDS, default=POSITIVE)
    p.add_argument("--out", help="corpus directory; edge lists go to stdout when omitted")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify-corpus", help="compare solve against stored labels")
    p.add_argument("corpus")
    p.add_argument("--family", choices=FAMILY_NAMES, default=None,
                   help="override the family recorded per instance")
    p.add_argument("--c1", type=int, default=DEFAULT_C1)
    p.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_corpus)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
