"""Resolution interpreter for parser programs.

Execution is depth-first and clause-ordered.  Every literal is threaded
through two input positions; the start position is always known, the end
position is known when the caller fixes it and only constraint goals follow.
Terminals consume one token, constraint goals are resolved against renamed
copies of the grammar's facts, and calls recurse.  Search is driven by
:func:`travparse.trees.run_search`, so budgets and completeness mean the same
thing as for the hand-coded engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .clauses import Clause, Constraint, Program, Terminal
from .grammar import Grammar
from .terms import Bindings, FactIndex, Struct, Term, Var, VarSource, rename_apart
from .trees import DEFAULT_BUDGET, ParseResult, Search, run_search


def _template(t: Term, slots: dict):
    """``t`` with its variables replaced by slot numbers; ground subterms are kept."""
    if t.__class__ is Var:
        return slots.setdefault(t, len(slots))
    if not t.args:
        return t
    args = tuple(_template(a, slots) for a in t.args)
    if all(a.__class__ is Struct for a in args):
        return t
    return (t.functor, args)


def _build(tpl, fresh: list):
    if tpl.__class__ is int:
        return fresh[tpl]
    if tpl.__class__ is Struct:
        return tpl
    return Struct(tpl[0], tuple(_build(a, fresh) for a in tpl[1]))


_TERMINAL, _CONSTRAINT, _CALL = 0, 1, 2


@dataclass(frozen=True)
class _Compiled:
    """A clause as templates over numbered variable slots.

    Body items are ``(kind, key, argument templates, end known)`` where the
    end position is known when only constraint goals follow the item.
    """
    head: tuple
    body: tuple
    names: tuple


def _compile(c: Clause) -> _Compiled:
    slots: dict = {}
    head = tuple(_template(a, slots) for a in c.head.args)
    body = []
    for k, item in enumerate(c.body):
        known = all(isinstance(x, Constraint) for x in c.body[k + 1:])
        if isinstance(item, Terminal):
            body.append((_TERMINAL, None, (_template(item.term, slots),), known))
        else:
            kind = _CONSTRAINT if isinstance(item, Constraint) else _CALL
            body.append((kind, item.lit.key, tuple(_template(a, slots) for a in item.lit.args), known))
    names = tuple(v.name for v in slots)
    return _Compiled(head, tuple(body), names)


class _Machine:
    def __init__(self, p: Program, g: Grammar, words: Sequence[str], search: Search, view: str):
        self.p = p
        self.words = [Struct(w) for w in words]
        self.n = len(words)
        self.search = search
        self.b = Bindings()
        self.source = VarSource()
        self.clauses: dict = {}
        for c in p.clauses:
            self.clauses.setdefault(c.head.key, []).append((c, _compile(c)))
        self.heads = {key: FactIndex(c.head.as_term() for c, _ in cs) for key, cs in self.clauses.items()}
        self.clauses = {key: [comp for _, comp in cs] for key, cs in self.clauses.items()}
        self.facts = {pred: FactIndex(g.facts(pred, view)) for pred in ("rule", "word")}

    def call(self, key, args, i: int, end: Optional[int], depth: int):
        if not self.search.enter(depth):
            return
        b = self.b
        compiled_clauses = self.clauses.get(key)
        if compiled_clauses is None:
            return
        positions = self.heads[key].positions(Struct(key[0], args), b)
        fresh_var = self.source.fresh
        for compiled in compiled_clauses if positions is None else map(compiled_clauses.__getitem__, positions):
            if not all(b.may_unify(a, h) for h, a in zip(compiled.head, args) if h.__class__ is Struct):
                continue
            fresh = [fresh_var(name) for name in compiled.names]
            mark = b.mark()
            if all(b.unify(_build(h, fresh), a) for h, a in zip(compiled.head, args)):
                yield from self.body(compiled.body, fresh, 0, i, end, depth)
            b.undo(mark)

    def body(self, items, fresh, k: int, i: int, end: Optional[int], depth: int):
        if k == len(items):
            if end is None or i == end:
                yield i
            return
        kind, key, tpls, known = items[k]
        e = end if known else None
        b = self.b
        if kind == _TERMINAL:
            if i < self.n and (e is None or i + 1 == e):
                mark = b.mark()
                if b.unify(_build(tpls[0], fresh), self.words[i]):
                    yield from self.body(items, fresh, k + 1, i + 1, end, depth)
                b.undo(mark)
        elif kind == _CONSTRAINT:
            goal = Struct(key[0], tuple(_build(t, fresh) for t in tpls))
            for fact, has_vars in self.facts[key[0]].candidates(goal, b):
                if not b.may_unify(goal, fact):
                    continue
                if has_vars:
                    fact = rename_apart(fact, self.source)
                mark = b.mark()
                if b.unify(goal, fact):
                    yield from self.body(items, fresh, k + 1, i, end, depth)
                b.undo(mark)
        else:
            args = tuple(_build(t, fresh) for t in tpls)
            for j in self.call(key, args, i, e, depth + 1):
                yield from self.body(items, fresh, k + 1, j, end, depth)

    def solve(self):
        tree = self.source.fresh("Tree")
        for _ in self.call((self.p.main, 1), (tree,), 0, self.n, 1):
            yield self.b.resolve(tree)


def run_program(p: Program, g: Grammar, words: Sequence[str], root: Optional[Term] = None,
                budget: int = DEFAULT_BUDGET, view: str = "tree") -> ParseResult:
    """Query ``main(Tree)`` over the whole of ``words`` and collect the trees.

    ``view`` selects how constraint goals see the grammar (see
    :mod:`travparse.grammar`); only the ``tree`` view makes the parser
    listings behave as parsers.
    """
    words = [w if isinstance(w, str) else w.functor for w in words]
    return run_search(lambda search: _Machine(p, g, words, search, view).solve(), budget, root)
