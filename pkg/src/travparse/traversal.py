"""Preorder, postorder and inorder traversal of binary trees, and their inverses.

:func:`invert` returns every tree whose traversal in a given order yields a
label sequence.  It works by splitting the sequence rather than by running a
traversal program backwards, since the backward reading of ``post`` and
``in`` is left-recursive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .syntax import TermParser, TermSyntaxError, print_term
from .terms import Struct, Term


class Order(enum.Enum):
    PRE = "pre"
    POST = "post"
    IN = "in"


@dataclass(frozen=True)
class Empty:
    def __repr__(self):
        return "empty"


EMPTY = Empty()


@dataclass(frozen=True)
class Node:
    label: Term
    left: "TravTree" = EMPTY
    right: "TravTree" = EMPTY


TravTree = Union[Empty, Node]


def traverse(order: Order, t: TravTree) -> list[Term]:
    out: list[Term] = []

    def walk(t):
        if isinstance(t, Empty):
            return
        if order is Order.PRE:
            out.append(t.label)
        walk(t.left)
        if order is Order.IN:
            out.append(t.label)
        walk(t.right)
        if order is Order.POST:
            out.append(t.label)

    walk(t)
    return out


def invert(order: Order, labels: Sequence[Term]) -> list[TravTree]:
    """All trees whose ``order`` traversal is ``labels``, smallest left subtree first."""
    return list(_invert(order, tuple(labels)))


@lru_cache(maxsize=None)
def _invert(order: Order, labels: tuple) -> tuple:
    if not labels:
        return (EMPTY,)
    n = len(labels)
    out = []
    if order is Order.IN:
        for pivot in range(n):
            for left in _invert(order, labels[:pivot]):
                for right in _invert(order, labels[pivot + 1:]):
                    out.append(Node(labels[pivot], left, right))
        return tuple(out)
    if order is Order.PRE:
        root, rest = labels[0], labels[1:]
    else:
        root, rest = labels[-1], labels[:-1]
    for k in range(len(rest) + 1):
        for left in _invert(order, rest[:k]):
            for right in _invert(order, rest[k:]):
                out.append(Node(root, left, right))
    return tuple(out)


def node_count(t: TravTree) -> int:
    if isinstance(t, Empty):
        return 0
    return 1 + node_count(t.left) + node_count(t.right)


# -- term notation: empty | node(Label,Left,Right) --------------------------


def tree_to_term(t: TravTree) -> Struct:
    if isinstance(t, Empty):
        return Struct("empty")
    return Struct("node", (t.label, tree_to_term(t.left), tree_to_term(t.right)))


def term_to_tree(term: Term) -> TravTree:
    if isinstance(term, Struct):
        if term.functor == "empty" and not term.args:
            return EMPTY
        if term.functor == "node" and term.arity == 3:
            label, left, right = term.args
            return Node(label, term_to_tree(left), term_to_tree(right))
    raise ValueError(f"not a traversal tree: {term!r}")


def format_tree(t: TravTree) -> str:
    return print_term(tree_to_term(t))


def read_tree(text: str) -> TravTree:
    p = TermParser(text)
    term = p.term()
    if not p.at_eof():
        p.error("expected end of input")
    try:
        return term_to_tree(term)
    except ValueError as exc:
        raise TermSyntaxError(str(exc), 0, text) from None
