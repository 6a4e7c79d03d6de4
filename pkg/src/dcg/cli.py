"""Command line entry point: ``dcg <command> ...``.

Exit codes: 0 success (or "equivalent"), 1 negative verdict, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from dcg.corpus import run_corpus
from dcg.dsep import SeparationStatement, all_separations, is_d_connected_fast, is_d_connected_oracle
from dcg.equivalence import CONDITION_NAMES, acyclic_equivalent_exists, markov_equivalent, oracle_equivalent
from dcg.errors import GraphError, OracleCapError
from dcg.features import FeatureSet, classify
from dcg.formats import dumps, export_dot, read_graph, serialize_graph
from dcg.generate import GeneratorConfig, generate_random

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


def _fmt(item) -> str:
    if isinstance(item, tuple):
        return "<" + ", ".join(item) + ">"
    return str(item)


def format_features(f: FeatureSet) -> str:
    d = f.to_dict()
    out = ["vertices: " + " ".join(d["vertices"])]
    out.append("adjacencies:")
    virtual = set(map(tuple, d["virtual_edges"]))
    for a, b in d["hadj"]:
        out.append(f"  {a} - {b}" + ("  (virtual)" if (a, b) in virtual else ""))
    for key in (
        "conductors",
        "perfect_non_conductors",
        "me_conductors",
        "imperfect_ancestors",
        "me_imperfect_ancestors",
    ):
        out.append(f"{key}:")
        out += [f"  {_fmt(tuple(x))}" for x in d[key]]
    return "\n".join(out) + "\n"


def cmd_check(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    verdict = markov_equivalent(g1, g2)
    if args.json:
        sys.stdout.write(dumps(verdict.to_dict()))
    elif verdict.equivalent:
        print("equivalent")
    else:
        k = verdict.failing_condition
        print(f"not equivalent: condition {k} fails ({CONDITION_NAMES[k]})")
        only1, only2 = verdict.witness
        for label, items in (("only in first", only1), ("only in second", only2)):
            for item in sorted(items):
                print(f"  {label}: {_fmt(item)}")
    return EXIT_OK if verdict.equivalent else EXIT_NO


def cmd_features(args) -> int:
    f = classify(read_graph(args.graph))
    sys.stdout.write(dumps(f.to_dict()) if args.json else format_features(f))
    return EXIT_OK


def cmd_dsep(args) -> int:
    g = read_graph(args.graph)
    given = frozenset(v for v in (args.given or "").split(",") if v)
    st = SeparationStatement(args.x, args.y, given)
    if args.witness:
        w = is_d_connected_oracle(g, st)
        connected = w is not None
    else:
        connected = is_d_connected_fast(g, st)
    print("d-connected" if connected else "d-separated")
    if args.witness and connected:
        print(f"witness: {w}")
    return EXIT_OK


def cmd_dsep_all(args) -> int:
    g = read_graph(args.graph)
    for st in sorted(all_separations(g, args.max_n), key=SeparationStatement.sort_key):
        print(st)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    if g1.vertices != g2.vertices:
        print("not equivalent: vertex sets differ")
        return EXIT_NO
    same = oracle_equivalent(g1, g2, args.max_n)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_NO


def cmd_acyclic_equiv(args) -> int:
    exists = acyclic_equivalent_exists(read_graph(args.graph))
    print("acyclic equivalent exists" if exists else "no acyclic equivalent")
    return EXIT_OK if exists else EXIT_NO


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(args.n, args.p, args.seed, not args.no_two_cycles)
    text = serialize_graph(generate_random(cfg))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_corpus(args) -> int:
    report = run_corpus(args.n)
    if args.json:
        sys.stdout.write(dumps(report.to_dict()))
    else:
        print(f"n={report.n} graphs={report.graph_count} classes={len(report.class_sizes)}")
        print(f"partitions match: {'yes' if report.partitions_match else 'NO'}")
        print(f"classes without an acyclic member: {report.classes_without_dag}")
        print(f"acyclic-equivalent mismatches: {len(report.acyclic_check_mismatches)}")
        print("class sizes: " + " ".join(map(str, report.class_sizes)))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_export_dot(args) -> int:
    sys.stdout.write(export_dot(read_graph(args.graph)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide Markov equivalence via graph features")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("features", help="print the canonical feature set")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("dsep", help="test one d-separation statement")
    p.add_argument("graph")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--given", default="")
    p.add_argument("--witness", action="store_true", help="use the path oracle and print a path")
    p.set_defaults(func=cmd_dsep)

    p = sub.add_parser("dsep-all", help="list every pairwise d-separation")
    p.add_argument("graph")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_dsep_all)

    p = sub.add_parser("oracle-check", help="decide equivalence by comparing all d-separations")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("acyclic-equiv", help="does some DAG have the same d-separations?")
    p.add_argument("graph")
    p.set_defaults(func=cmd_acyclic_equiv)

    p = sub.add_parser("gen", help="generate a seeded random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--no-two-cycles", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("corpus", help="exhaustive cross-check on all graphs with n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("export-dot", help="write the graph in DOT notation")
    p.add_argument("graph")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (GraphError, OracleCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
