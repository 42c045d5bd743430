"""Command line front end.

Results go to stdout, diagnostics to stderr.  Exit code 0 on success, 1 on
a domain error (an input violating a documented precondition) and when
`verify` finds failures, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import TreeSum, lie_bracket, operad_compose, prelie_product
from .decompose import decompose, f_action, project_to_f
from .lyndon import (
    enumerate_basis,
    enumerate_partitions,
    expand_monomial,
    lyndon_bracketing,
    parse_monomial,
    serialize_monomial,
)
from .suites import hard_limit, run_suite, suite_names
from .trees import (
    DomainError,
    TreeSyntaxError,
    _skip_ws,
    enumerate_f_trees,
    enumerate_trees,
    parse_tree,
    parse_tree_prefix,
    serialize_tree,
)


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(self, message)


def parse_tree_sum(text: str) -> TreeSum:
    """Parse ``[sign] term (sign term)*`` with ``term := [INT "*"] tree``.

    The bare literal ``0`` is the zero sum.  All trees must share one label
    set.
    """
    pos = _skip_ws(text, 0)
    if text[pos:pos + 1] == "0" and _skip_ws(text, pos + 1) == len(text):
        return TreeSum.zero(())
    entries = []
    sign = 1
    if pos < len(text) and text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    while True:
        coeff, tree, pos = _parse_term(text, pos)
        entries.append((sign * coeff, tree))
        pos = _skip_ws(text, pos)
        if pos == len(text):
            break
        if text[pos] not in "+-":
            raise TreeSyntaxError("expected '+' or '-' between terms", pos)
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    labels = entries[0][1].labels
    for _, tree in entries:
        if tree.labels != labels:
            raise DomainError(
                f"terms mix label sets {sorted(labels)} and "
                f"{sorted(tree.labels)}; a sum lives on one label set")
    acc: dict = {}
    for coeff, tree in entries:
        acc[tree] = acc.get(tree, 0) + coeff
    return TreeSum(labels, acc)


def _parse_term(text: str, pos: int):
    pos = _skip_ws(text, pos)
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos > start:
        after = _skip_ws(text, pos)
        if after < len(text) and text[after] == "*":
            tree, end = parse_tree_prefix(text, after + 1)
            return int(text[start:pos]), tree, end
    tree, end = parse_tree_prefix(text, start)
    return 1, tree, end


def _parse_permutation(images: str) -> dict[int, int]:
    try:
        values = [int(chunk) for chunk in images.split(",")]
    except ValueError:
        raise DomainError(f"cannot read permutation images {images!r}")
    mapping = {k + 1: v for k, v in enumerate(values)}
    if sorted(mapping.values()) != sorted(mapping):
        raise DomainError(
            f"images {values} are not a permutation of 1..{len(values)}")
    return mapping


# --------------------------------------------------------------- commands

def _cmd_enumerate(args) -> tuple[str, dict, int]:
    if args.n < 0:
        raise DomainError("--n must be at least 0")
    labels = range(1, args.n + 1)
    if args.family == "trees":
        items = [serialize_tree(t) for t in enumerate_trees(labels)]
    elif args.family == "f-trees":
        items = [serialize_tree(t) for t in enumerate_f_trees(labels)]
    elif args.family == "basis":
        items = [serialize_monomial(lyndon_bracketing(w))
                 for w in enumerate_basis(labels)]
    else:
        items = [" | ".join(",".join(str(x) for x in block) for block in p)
                 for p in enumerate_partitions(labels)]
    data = {"family": args.family, "n": args.n, "items": items}
    if args.family == "partitions":
        data["items"] = [[list(block) for block in p]
                         for p in enumerate_partitions(labels)]
    return "\n".join(items), data, 0


def _sum_result(x: TreeSum) -> tuple[str, dict, int]:
    return str(x), x.as_json(), 0


def _cmd_product(args):
    return _sum_result(prelie_product(parse_tree(args.left),
                                      parse_tree(args.right)))


def _cmd_bracket(args):
    left = expand_monomial(parse_monomial(args.left))
    right = expand_monomial(parse_monomial(args.right))
    return _sum_result(lie_bracket(left, right))


def _cmd_compose(args):
    return _sum_result(operad_compose(parse_tree(args.left), args.at,
                                      parse_tree(args.right)))


def _cmd_expand(args):
    return _sum_result(expand_monomial(parse_monomial(args.monomial)))


def _cmd_decompose(args):
    result = decompose(parse_tree_sum(args.expression))
    return str(result), result.as_json(), 0


def _cmd_project(args):
    return _sum_result(project_to_f(parse_tree_sum(args.expression)))


def _cmd_act(args):
    mapping = _parse_permutation(args.perm)
    return _sum_result(f_action(mapping, parse_tree(args.tree)))


def _cmd_verify(args):
    if args.suite == "all":
        names = suite_names()
        reports = [run_suite(name, min(args.max_n, hard_limit(name)),
                             args.seed)
                   for name in names]
    else:
        reports = [run_suite(args.suite, args.max_n, args.seed)]
    ok = all(r.ok for r in reports)
    text = "\n".join(r.render() for r in reports)
    data = [r.as_json() for r in reports] if args.suite == "all" \
        else reports[0].as_json()
    return text, data, 0 if ok else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="prelie",
                     description="Exact computations with labelled rooted "
                                 "trees: grafting, brackets, compositions, "
                                 "and the bracket-word basis.")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default text)")
    shared = _Parser(add_help=False)
    shared.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS,
                        help="output format (default text)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[shared],
                       help="list trees, f-trees, basis words, or partitions")
    p.add_argument("--n", type=int, required=True,
                   help="label set is 1..n")
    p.add_argument("--family",
                   choices=("trees", "f-trees", "basis", "partitions"),
                   default="trees")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("product", parents=[shared],
                       help="grafting product of two trees")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_product)

    p = sub.add_parser("bracket", parents=[shared],
                       help="bracket of two trees or bracket expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_bracket)

    p = sub.add_parser("compose", parents=[shared],
                       help="substitute a tree for a vertex, in all ways")
    p.add_argument("left")
    p.add_argument("--at", type=int, required=True,
                   help="vertex of the first tree to substitute at")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_compose)

    p = sub.add_parser("expand", parents=[shared],
                       help="multiply a bracket expression out into trees")
    p.add_argument("monomial")
    p.set_defaults(handler=_cmd_expand)

    p = sub.add_parser("decompose", parents=[shared],
                       help="coordinates of a tree sum in the word basis")
    p.add_argument("expression")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("project", parents=[shared],
                       help="class of a tree sum modulo all brackets")
    p.add_argument("expression")
    p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("act", parents=[shared],
                       help="permutation action on the bracket quotient")
    p.add_argument("--perm", required=True,
                   help="comma separated images of 1..n, e.g. 2,1,3")
    p.add_argument("tree")
    p.set_defaults(handler=_cmd_act)

    p = sub.add_parser("verify", parents=[shared],
                       help="run a property suite and report failures")
    p.add_argument("--suite", required=True,
                   choices=suite_names() + ("all",))
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, data, code = args.handler(args)
    except _UsageError as err:
        err.parser.print_usage(sys.stderr)
        print(f"{err.parser.prog}: error: {err}", file=sys.stderr)
        return 2
    except DomainError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(data, indent=2))
    elif text:
        print(text)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
