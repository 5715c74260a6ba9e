"""Command-line interface.

Exit statuses: 0 success, 1 usage or input errors, 2 no parse, 3 search
budget exhausted, 4 specialized programs differ.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .clauses import BUILTIN_NAMES, TransformError, builtin_program, egnf_transform, format_program, improve
from .engines import Strategy, parse
from .grammar import VIEWS, GrammarLoadError, load_grammar
from .specializer import partially_execute, specialization_identity
from .syntax import TermSyntaxError, read_term
from .traversal import Order, format_tree as format_trav_tree, invert, read_tree, traverse
from .trees import DEFAULT_BUDGET, format_tree

EXIT_OK, EXIT_USAGE, EXIT_NO_PARSE, EXIT_INCOMPLETE, EXIT_DIFFERENT = 0, 1, 2, 3, 4

_PROGRAM_ALIASES = {"egnf_bu": "egnf_bu_improved", "egnf_lc": "egnf_lc_improved"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read grammar {path}: {exc.strerror}") from None
    try:
        return load_grammar(text)
    except GrammarLoadError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _term(text: str, what: str):
    try:
        return read_term(text)
    except TermSyntaxError as exc:
        raise UsageError(f"malformed {what} {text!r}: {exc}") from None


def cmd_parse(args, out) -> int:
    g = _load(args.grammar)
    root = _term(args.root, "root term") if args.root is not None else None
    try:
        strategy = Strategy(args.strategy)
    except ValueError:
        raise UsageError(f"unknown strategy {args.strategy!r}") from None
    if args.budget <= 0:
        raise UsageError("budget must be positive")
    result = parse(g, args.words, strategy, root=root, budget=args.budget)
    for t in result.trees:
        print(format_tree(t, pretty=args.pretty), file=out)
    print(f"trees={len(result.trees)} complete={str(result.complete).lower()}", file=out)
    if not result.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK if result.trees else EXIT_NO_PARSE


def cmd_traverse(args, out) -> int:
    text = sys.stdin.read()
    try:
        tree = read_tree(text.strip())
    except TermSyntaxError as exc:
        raise UsageError(f"malformed tree term: {exc}") from None
    print(" ".join(map(repr, traverse(Order(args.order), tree))), file=out)
    return EXIT_OK


def cmd_invert(args, out) -> int:
    labels = [_term(l, "label") for l in args.labels]
    trees = invert(Order(args.order), labels)
    for t in trees:
        print(format_trav_tree(t), file=out)
    print(f"trees={len(trees)}", file=out)
    return EXIT_OK


def _builtin(name: str):
    try:
        return builtin_program(_PROGRAM_ALIASES.get(name, name))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_transform(args, out) -> int:
    p = _builtin(args.program)
    try:
        p = egnf_transform(p)
        if args.improve:
            p = improve(p)
    except TransformError as exc:
        raise UsageError(f"cannot transform {args.program}: {exc}") from None
    out.write(format_program(p))
    return EXIT_OK


def cmd_specialize(args, out) -> int:
    g = _load(args.grammar)
    p = partially_execute(_builtin(args.program), g, unfold_lexicon=not args.keep_lexicon, view=args.view)
    out.write(format_program(p) if p.clauses else "% no clauses\n")
    return EXIT_OK


def cmd_compare(args, out) -> int:
    g = _load(args.grammar)
    report = specialization_identity(g, unfold_lexicon=not args.keep_lexicon, view=args.view)
    print(f"identical={str(report.identical).lower()}", file=out)
    for line in report.diff:
        print(line, file=out)
    return EXIT_OK if report.identical else EXIT_DIFFERENT


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="travparse", description="Parsing strategies as tree traversals.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse words with one strategy")
    p.add_argument("--grammar", required=True)
    p.add_argument("--strategy", default="bu", help=", ".join(s.value for s in Strategy))
    p.add_argument("--root")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("words", nargs="*")
    p.set_defaults(func=cmd_parse)

    orders = [o.value for o in Order]
    p = sub.add_parser("traverse", help="print the labels of a tree term read from stdin")
    p.add_argument("--order", required=True, choices=orders)
    p.set_defaults(func=cmd_traverse)

    p = sub.add_parser("invert", help="print every tree with the given traversal")
    p.add_argument("--order", required=True, choices=orders)
    p.add_argument("labels", nargs="*")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("transform", help="EGNF-transform a built-in parser program")
    p.add_argument("--program", required=True, help=", ".join(BUILTIN_NAMES))
    p.add_argument("--improve", action="store_true")
    p.add_argument("--show", action="store_true", help="print the listing (the default)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("specialize", help="partially execute a parser against a grammar")
    p.add_argument("--grammar", required=True)
    p.add_argument("--program", required=True, help="egnf_bu, egnf_lc or a built-in name")
    p.add_argument("--emit", action="store_true", help="print the listing (the default)")
    p.add_argument("--keep-lexicon", action="store_true")
    p.add_argument("--view", choices=VIEWS, default="category")
    p.set_defaults(func=cmd_specialize)

    p = sub.add_parser("compare", help="check that specialized bottom-up and left-corner parsers coincide")
    p.add_argument("--grammar", required=True)
    p.add_argument("--keep-lexicon", action="store_true")
    p.add_argument("--view", choices=VIEWS, default="category")
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"travparse: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
