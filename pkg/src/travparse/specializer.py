"""Partial execution of parser programs against a fixed grammar.

Constraint goals are unfolded away: each clause containing one is replaced
by one clause per grammar fact the goal unifies with, with the unifier
applied to the clause and the goal deleted.  Calls are never unfolded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .clauses import Clause, Constraint, Program, builtin_program, program_diff, program_equal
from .grammar import Grammar
from .terms import Bindings, VarSource, rename_apart


def _unfold(c: Clause, g: Grammar, preds: set, view: str, source: VarSource) -> list[Clause]:
    for k, item in enumerate(c.body):
        if isinstance(item, Constraint) and item.lit.pred in preds:
            break
    else:
        return [c]
    goal = item.lit.as_term()
    rest = Clause(c.head, c.body[:k] + c.body[k + 1:])
    out = []
    for fact in g.facts(item.lit.pred, view):
        b = Bindings()
        if b.unify(goal, rename_apart(fact, source)):
            specialized = rest.map_terms(b.resolve)
            out.extend(_unfold(specialized, g, preds, view, source))
    return out


def partially_execute(p: Program, g: Grammar, unfold_lexicon: bool = True, view: str = "category",
                      source: Optional[VarSource] = None) -> Program:
    """Unfold ``rule`` (and, if ``unfold_lexicon``, ``word``) goals of ``p`` against ``g``.

    ``view="category"`` unfolds against the facts as written, which is how a
    grammar rule such as ``rule(s(T),np(NP),vp(VP))`` becomes a ``b`` clause
    mentioning ``np(NP)`` directly.  ``view="tree"`` unfolds against the
    tree-level facts that :func:`travparse.interpreter.run_program` resolves
    against, so the result can be run in place of ``p``.
    """
    source = source or VarSource()
    preds = {"rule", "word"} if unfold_lexicon else {"rule"}
    clauses = [s for c in p.clauses for s in _unfold(rename_apart(c, source), g, preds, view, source)]
    return Program(tuple(clauses), p.main, check_main=False)


def residual_grammar(g: Grammar, unfold_lexicon: bool = True) -> Grammar:
    """The facts a specialized program still consults at run time."""
    return Grammar() if unfold_lexicon else g.without_rules()


@dataclass(frozen=True)
class IdentityReport:
    identical: bool
    diff: tuple = field(default=())
    bottom_up: Optional[Program] = field(default=None, compare=False, repr=False)
    left_corner: Optional[Program] = field(default=None, compare=False, repr=False)


def specialization_identity(g: Grammar, unfold_lexicon: bool = True, view: str = "category") -> IdentityReport:
    """Specialize the improved EGNF bottom-up and left-corner parsers to ``g`` and compare.

    Predicate names are matched by the fixed bijection ``bu``↔``lc``,
    ``b``↔``b``.
    """
    bu = partially_execute(builtin_program("egnf_bu_improved"), g, unfold_lexicon, view)
    lc = partially_execute(builtin_program("egnf_lc_improved"), g, unfold_lexicon, view)
    names = {"bu": "lc", "b": "b"}
    same = program_equal(bu, lc, names)
    diff = () if same else tuple(program_diff(bu, lc, names))
    return IdentityReport(same, diff, bu, lc)
