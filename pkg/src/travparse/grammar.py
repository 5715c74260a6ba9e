"""Grammars of binary ``rule/3`` facts and ``word/2`` lexicon facts.

File format: UTF-8 text of facts ``rule(Mother,Left,Right).`` and
``word(PreTerm,Word).``, each terminated by a period; ``%`` starts a comment.
Variables are scoped to the fact they appear in.

A grammar is seen by parser programs through one of two *fact views*:

``category``
    the facts exactly as written; ``rule(s,np,vp)`` relates categories.
``tree``
    ``rule/3`` relates a mother category to two daughter *trees*, so every
    rule is lifted to four facts, one per daughter shape (lexical
    ``node(C,lf(W))`` or branching ``node(C,X,Y)``).  This is the view under
    which the parser programs, whose ``rule`` goals receive parse trees, run
    as parsers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .syntax import TermParser, TermSyntaxError, print_term, VarNamer
from .terms import Struct, Term, Var, VarSource, is_atom, variables

VIEWS = ("category", "tree")


class GrammarLoadError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class RuleFact:
    mother: Term
    left: Term
    right: Term

    def as_term(self) -> Struct:
        return Struct("rule", (self.mother, self.left, self.right))


@dataclass(frozen=True)
class LexFact:
    preterm: Term
    word: Struct

    def __post_init__(self):
        if not is_atom(self.word):
            raise ValueError(f"word must be an atom, got {self.word!r}")

    def as_term(self) -> Struct:
        return Struct("word", (self.preterm, self.word))


def _daughter_shapes(cat: Term, tag: str) -> tuple[Struct, Struct]:
    lex = Struct("node", (cat, Struct("lf", (Var((tag, "w"), "W"),))))
    branch = Struct("node", (cat, Var((tag, "l"), "L"), Var((tag, "r"), "R")))
    return lex, branch


def lift_rule(rule: RuleFact, index: int = 0) -> list[Struct]:
    """The four tree-level facts for one category-level rule."""
    lefts = _daughter_shapes(rule.left, f"{index}.left")
    rights = _daughter_shapes(rule.right, f"{index}.right")
    return [Struct("rule", (rule.mother, l, r)) for l in lefts for r in rights]


@dataclass(frozen=True)
class Grammar:
    rules: tuple[RuleFact, ...] = ()
    lexicon: tuple[LexFact, ...] = ()
    _views: dict = field(init=False, compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "lexicon", tuple(self.lexicon))
        words = tuple(f.as_term() for f in self.lexicon)
        lifted = tuple(t for i, r in enumerate(self.rules) for t in lift_rule(r, i))
        object.__setattr__(self, "_views", {
            ("category", "rule"): tuple(r.as_term() for r in self.rules),
            ("category", "word"): words,
            ("tree", "rule"): lifted,
            ("tree", "word"): words,
        })

    @classmethod
    def from_facts(cls, rules: Iterable[Sequence[Term]] = (), lexicon: Iterable[Sequence[Term]] = ()):
        return cls(tuple(RuleFact(*r) for r in rules), tuple(LexFact(*w) for w in lexicon))

    def facts(self, pred: str, view: str = "tree") -> tuple[Struct, ...]:
        if view not in VIEWS:
            raise ValueError(f"unknown fact view {view!r}; expected one of {VIEWS}")
        return self._views.get((view, pred), ())

    @property
    def vocabulary(self) -> list[str]:
        seen: dict[str, None] = {}
        for f in self.lexicon:
            seen.setdefault(f.word.functor)
        return list(seen)

    def without_rules(self) -> "Grammar":
        return Grammar((), self.lexicon)

    def __str__(self):
        return format_grammar(self)


def format_grammar(g: Grammar) -> str:
    lines = []
    for r in g.rules:
        namer = VarNamer()
        lines.append(f"rule({print_term(r.mother, namer)},{print_term(r.left, namer)},{print_term(r.right, namer)}).")
    for w in g.lexicon:
        namer = VarNamer()
        lines.append(f"word({print_term(w.preterm, namer)},{print_term(w.word, namer)}).")
    return "\n".join(lines) + ("\n" if lines else "")


def load_grammar(text: str, source: Optional[VarSource] = None) -> Grammar:
    """Read a grammar file's contents.

    Several facts may share a line.  Every fact gets its own variable scope,
    and all variables are drawn from one source so ids never overlap across
    facts.
    """
    source = source or VarSource()
    rules: list[RuleFact] = []
    lexicon: list[LexFact] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            p = TermParser(line, source)
        except TermSyntaxError as exc:
            raise GrammarLoadError(lineno, str(exc)) from None
        while not p.at_eof():
            p.new_scope()
            try:
                fact = p.term()
                p.expect(".")
            except TermSyntaxError as exc:
                raise GrammarLoadError(lineno, str(exc)) from None
            if not isinstance(fact, Struct) or (fact.functor, fact.arity) not in (("rule", 3), ("word", 2)):
                raise GrammarLoadError(lineno, f"expected rule/3 or word/2 fact, got {fact!r}")
            if fact.functor == "rule":
                rules.append(RuleFact(*fact.args))
            else:
                preterm, word = fact.args
                if not is_atom(word):
                    raise GrammarLoadError(lineno, f"word must be an atom, got {print_term(word)}")
                lexicon.append(LexFact(preterm, word))
    return Grammar(tuple(rules), tuple(lexicon))


def grammar_variables(g: Grammar) -> list[list[Var]]:
    """Variables of each fact, rules first; used to check scoping."""
    return [variables(f.as_term()) for f in (*g.rules, *g.lexicon)]
