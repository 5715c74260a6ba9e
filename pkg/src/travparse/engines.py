"""Directly coded parsers for the three strategies.

Each engine is a set of mutually recursive generators transcribed from one
parser listing: the top-down, bottom-up and left-corner programs, and the
improved EGNF bottom-up and left-corner programs with their auxiliary ``b``
predicate carrying the accumulated left subtree.  Every generator call
corresponds to one predicate call and yields the input position it reaches.

``rule`` goals see daughters as trees (the grammar's ``tree`` fact view),
exactly as the clause interpreter does, so both produce the same results
for the same budget.
"""

from __future__ import annotations

import enum
from typing import Iterator, Optional, Sequence

from .grammar import Grammar
from .oracle import oracle_parse
from .terms import Bindings, FactIndex, Struct, Term, VarSource, rename_apart
from .trees import DEFAULT_BUDGET, ParseResult, Search, run_search


class Strategy(enum.Enum):
    TD = "td"
    BU_NAIVE = "bu-naive"
    LC_NAIVE = "lc-naive"
    BU_EGNF = "bu"
    LC_EGNF = "lc"
    ORACLE = "oracle"


def _node(*args: Term) -> Struct:
    return Struct("node", args)


def _lf(w: Term) -> Struct:
    return Struct("lf", (w,))


class _Engine:
    def __init__(self, g: Grammar, words: Sequence[str], search: Search):
        self.words = [Struct(w) for w in words]
        self.n = len(words)
        self.search = search
        self.b = Bindings()
        self.source = VarSource()
        self.rule_facts = FactIndex(g.facts("rule", "tree"))
        self.word_facts = FactIndex(g.facts("word", "tree"))

    def fresh(self, name: Optional[str] = None):
        return self.source.fresh(name)

    def resolve_facts(self, goal: Struct, facts: FactIndex) -> Iterator[None]:
        """Succeed once per fact unifying with ``goal``, in fact order."""
        b = self.b
        for fact, has_vars in facts.candidates(goal, b):
            if not b.may_unify(goal, fact):
                continue
            if has_vars:
                fact = rename_apart(fact, self.source)
            mark = b.mark()
            if b.unify(goal, fact):
                yield
            b.undo(mark)

    def lexical(self, tree: Term, i: int, end: Optional[int]) -> Iterator[int]:
        """``x(node(PreTerm,lf(Word))) --> [Word], {word(PreTerm,Word)}.``"""
        b = self.b
        pre, word = self.fresh("PreTerm"), self.fresh("Word")
        mark = b.mark()
        if b.unify(tree, _node(pre, _lf(word))):
            if i < self.n and (end is None or i + 1 == end) and b.unify(word, self.words[i]):
                for _ in self.resolve_facts(Struct("word", (pre, word)), self.word_facts):
                    yield i + 1
        b.undo(mark)

    def query(self, start) -> Iterator[Term]:
        tree = self.fresh("Tree")
        for _ in start(tree, 0, self.n, 1):
            yield self.b.resolve(tree)


class _TopDown(_Engine):
    def td(self, tree, i, end, depth):
        if not self.search.enter(depth):
            return
        yield from self.lexical(tree, i, end)
        # td(node(Mother,Left,Right)) --> {rule(Mother,Left,Right)}, td(Left), td(Right).
        b = self.b
        m, l, r = self.fresh("Mother"), self.fresh("Left"), self.fresh("Right")
        mark = b.mark()
        if b.unify(tree, _node(m, l, r)):
            for _ in self.resolve_facts(Struct("rule", (m, l, r)), self.rule_facts):
                for j in self.td(l, i, None, depth + 1):
                    yield from self.td(r, j, end, depth + 1)
        b.undo(mark)

    def solve(self):
        return self.query(self.td)


class _BottomUp(_Engine):
    def bu(self, tree, i, end, depth):
        if not self.search.enter(depth):
            return
        yield from self.lexical(tree, i, end)
        # bu(node(Mother,Left,Right)) --> bu(Left), bu(Right), {rule(Mother,Left,Right)}.
        b = self.b
        m, l, r = self.fresh("Mother"), self.fresh("Left"), self.fresh("Right")
        mark = b.mark()
        if b.unify(tree, _node(m, l, r)):
            for j in self.bu(l, i, None, depth + 1):
                for k in self.bu(r, j, end, depth + 1):
                    for _ in self.resolve_facts(Struct("rule", (m, l, r)), self.rule_facts):
                        yield k
        b.undo(mark)

    def solve(self):
        return self.query(self.bu)


class _LeftCorner(_Engine):
    def lc(self, tree, i, end, depth):
        if not self.search.enter(depth):
            return
        yield from self.lexical(tree, i, end)
        # lc(node(Mother,Left,Right)) --> lc(Left), {rule(Mother,Left,Right)}, lc(Right).
        b = self.b
        m, l, r = self.fresh("Mother"), self.fresh("Left"), self.fresh("Right")
        mark = b.mark()
        if b.unify(tree, _node(m, l, r)):
            for j in self.lc(l, i, None, depth + 1):
                for _ in self.resolve_facts(Struct("rule", (m, l, r)), self.rule_facts):
                    yield from self.lc(r, j, end, depth + 1)
        b.undo(mark)

    def solve(self):
        return self.query(self.lc)


class _Greibach(_Engine):
    """Shared main predicate of the improved EGNF parsers.

    ``x(Node) --> [Word], {word(PreTerm,Word)}, b(node(PreTerm,lf(Word)),Node).``
    """

    def main(self, tree, i, end, depth):
        if not self.search.enter(depth):
            return
        if i >= self.n:
            return
        b = self.b
        pre, word = self.fresh("PreTerm"), self.fresh("Word")
        mark = b.mark()
        if b.unify(word, self.words[i]):
            for _ in self.resolve_facts(Struct("word", (pre, word)), self.word_facts):
                yield from self.aux(_node(pre, _lf(word)), tree, i + 1, end, depth + 1)
        b.undo(mark)

    def aux(self, acc, tree, i, end, depth):
        if not self.search.enter(depth):
            return
        b = self.b
        # b(Node,Node) --> [].
        mark = b.mark()
        if b.unify(acc, tree) and (end is None or i == end):
            yield i
        b.undo(mark)
        yield from self.step(acc, tree, i, end, depth)

    def solve(self):
        return self.query(self.main)


class _GreibachBottomUp(_Greibach):
    def step(self, acc, tree, i, end, depth):
        # b(L,Node) --> bu(R), {rule(Mother,L,R)}, b(node(Mother,L,R),Node).
        m, r = self.fresh("Mother"), self.fresh("R")
        for j in self.main(r, i, None, depth + 1):
            for _ in self.resolve_facts(Struct("rule", (m, acc, r)), self.rule_facts):
                yield from self.aux(_node(m, acc, r), tree, j, end, depth + 1)


class _GreibachLeftCorner(_Greibach):
    def step(self, acc, tree, i, end, depth):
        # b(L,Node) --> {rule(Mother,L,R)}, lc(R), b(node(Mother,L,R),Node).
        m, r = self.fresh("Mother"), self.fresh("R")
        for _ in self.resolve_facts(Struct("rule", (m, acc, r)), self.rule_facts):
            for j in self.main(r, i, None, depth + 1):
                yield from self.aux(_node(m, acc, r), tree, j, end, depth + 1)


_ENGINES = {
    Strategy.TD: _TopDown,
    Strategy.BU_NAIVE: _BottomUp,
    Strategy.LC_NAIVE: _LeftCorner,
    Strategy.BU_EGNF: _GreibachBottomUp,
    Strategy.LC_EGNF: _GreibachLeftCorner,
}


def parse(g: Grammar, words: Sequence[str], strategy: Strategy = Strategy.BU_EGNF,
          root: Optional[Term] = None, budget: int = DEFAULT_BUDGET) -> ParseResult:
    """Parse the whole of ``words`` with one strategy.

    ``root`` keeps only trees whose root category unifies with it.  The
    search stops after ``budget`` predicate calls, in which case the result
    is incomplete and holds the trees found so far.
    """
    strategy = Strategy(strategy)
    words = [w if isinstance(w, str) else w.functor for w in words]
    if strategy is Strategy.ORACLE:
        if not isinstance(budget, int) or budget <= 0:
            raise ValueError(f"budget must be a positive integer, got {budget!r}")
        return ParseResult(tuple(oracle_parse(g, words, root)), True, 0)
    engine_cls = _ENGINES[strategy]
    return run_search(lambda search: engine_cls(g, words, search).solve(), budget, root)
