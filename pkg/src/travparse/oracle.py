"""Span-based chart parser used as ground truth.

Every span of the input gets the full list of trees deriving it: one-word
spans from the lexicon, longer spans from every split point and every rule
whose daughter categories unify with the root categories of the two
sub-trees.  No search, so left recursion is harmless.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .grammar import Grammar
from .terms import Bindings, Struct, Term, VarSource, canonicalize, rename_apart
from .trees import ParseTree, make_result


def _category(tree: Struct) -> Term:
    return tree.args[0]


def oracle_chart(g: Grammar, words: Sequence[str]) -> dict[tuple[int, int], list[Term]]:
    """Tree terms for every span ``(i, j)``, canonical and deduplicated per span."""
    source = VarSource()
    n = len(words)
    chart: dict[tuple[int, int], list[Term]] = {}

    def add(span, tree, seen):
        c = canonicalize(tree)
        if c not in seen:
            seen.add(c)
            chart[span].append(c)

    for i, w in enumerate(words):
        chart[(i, i + 1)] = []
        seen: set = set()
        for fact in g.lexicon:
            if fact.word.functor == w:
                pre = rename_apart(fact.preterm, source)
                add((i, i + 1), Struct("node", (pre, Struct("lf", (fact.word,)))), seen)

    for width in range(2, n + 1):
        for i in range(n - width + 1):
            j = i + width
            chart[(i, j)] = []
            seen = set()
            for k in range(i + 1, j):
                for left in chart[(i, k)]:
                    for right in chart[(k, j)]:
                        for rule in g.rules:
                            b = Bindings()
                            m, l, r = rename_apart(rule.as_term(), source).args
                            lt = rename_apart(left, source)
                            rt = rename_apart(right, source)
                            if b.unify(l, _category(lt)) and b.unify(r, _category(rt)):
                                add((i, j), b.resolve(Struct("node", (m, lt, rt))), seen)
    return chart


def oracle_parse(g: Grammar, words: Sequence[str], root: Optional[Term] = None) -> list[ParseTree]:
    """All trees spanning exactly ``words``, filtered by ``root`` if given."""
    if not words:
        return []
    chart = oracle_chart(g, words)
    return list(make_result(chart[(0, len(words))], True, 0, root).trees)
