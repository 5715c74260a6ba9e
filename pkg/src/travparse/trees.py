"""Parse trees, parse results and the budgeted search driver shared by all parsers.

A parse tree is either a lexical leaf ``node(PreTerm,lf(Word))`` or a branch
``node(Mother,Left,Right)``.  Search-based parsers run under
:func:`run_search`: depth-first, clause-ordered backtracking, repeated with a
doubling call-depth limit so that left-recursive programs still enumerate
every tree reachable at some finite depth.  A *step* is one predicate call;
once the step budget is spent the search stops and the result is marked
incomplete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Union

from .syntax import print_term, VarNamer
from .terms import Struct, Term, Var, canonicalize, is_atom, unify

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class Lex:
    preterm: Term
    word: Struct

    @property
    def category(self) -> Term:
        return self.preterm

    def to_term(self) -> Struct:
        return Struct("node", (self.preterm, Struct("lf", (self.word,))))

    def __str__(self):
        return print_term(self.to_term())


@dataclass(frozen=True)
class Branch:
    mother: Term
    left: "ParseTree"
    right: "ParseTree"

    @property
    def category(self) -> Term:
        return self.mother

    def to_term(self) -> Struct:
        return Struct("node", (self.mother, self.left.to_term(), self.right.to_term()))

    def __str__(self):
        return print_term(self.to_term())


ParseTree = Union[Lex, Branch]


def from_term(t: Term) -> ParseTree:
    """Convert a ``node/2`` / ``node/3`` term into a :data:`ParseTree`."""
    if isinstance(t, Struct) and t.functor == "node":
        if t.arity == 2:
            cat, leaf = t.args
            if isinstance(leaf, Struct) and leaf.functor == "lf" and leaf.arity == 1 and is_atom(leaf.args[0]):
                return Lex(cat, leaf.args[0])
        elif t.arity == 3:
            return Branch(t.args[0], from_term(t.args[1]), from_term(t.args[2]))
    raise ValueError(f"not a parse tree: {t!r}")


def yield_words(t: ParseTree) -> list[str]:
    if isinstance(t, Lex):
        return [t.word.functor]
    return yield_words(t.left) + yield_words(t.right)


def format_tree(t: ParseTree, pretty: bool = False) -> str:
    if not pretty:
        return str(t)
    namer = VarNamer()
    lines: list[str] = []

    def walk(t, indent):
        pad = "  " * indent
        if isinstance(t, Lex):
            lines.append(f"{pad}node({print_term(t.preterm, namer)},lf({t.word.functor}))")
        else:
            lines.append(f"{pad}node({print_term(t.mother, namer)},")
            walk(t.left, indent + 1)
            lines[-1] += ","
            walk(t.right, indent + 1)
            lines[-1] += ")"

    walk(t, 0)
    return "\n".join(lines)


def root_matches(t: ParseTree, root: Optional[Term]) -> bool:
    return root is None or unify(t.category, root) is not None


@dataclass(frozen=True)
class ParseResult:
    """Deduplicated, canonically numbered trees sorted by their text."""

    trees: tuple[ParseTree, ...]
    complete: bool
    steps: int = 0

    def tree_set(self) -> frozenset:
        return frozenset(self.trees)

    def __len__(self):
        return len(self.trees)


def make_result(terms: Iterable[Term], complete: bool, steps: int = 0,
                root: Optional[Term] = None) -> ParseResult:
    found: dict[Term, ParseTree] = {}
    for t in terms:
        c = canonicalize(t)
        if c not in found:
            found[c] = from_term(c)
    trees = [t for t in found.values() if root_matches(t, root)]
    trees.sort(key=str)
    return ParseResult(tuple(trees), complete, steps)


class BudgetExhausted(Exception):
    pass


class Search:
    """Step budget and depth limit for one parse."""

    __slots__ = ("budget", "steps", "limit", "cutoff")

    def __init__(self, budget: int):
        if not isinstance(budget, int) or budget <= 0:
            raise ValueError(f"budget must be a positive integer, got {budget!r}")
        self.budget = budget
        self.steps = 0
        self.limit = 1
        self.cutoff = False

    def enter(self, depth: int) -> bool:
        """Account for one call at ``depth``; False means the depth limit cut it off."""
        if depth > self.limit:
            self.cutoff = True
            return False
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExhausted
        return True


def run_search(solve: Callable[[Search], Iterator[Term]], budget: int = DEFAULT_BUDGET,
               root: Optional[Term] = None) -> ParseResult:
    """Drive ``solve`` under iterative deepening until it finishes without cutoff.

    ``solve`` yields the resolved tree term of every solution found within
    the current depth limit.  Trees found in any iteration are kept.
    """
    search = Search(budget)
    found: list[Term] = []
    complete = False
    try:
        while True:
            search.cutoff = False
            for t in solve(search):
                found.append(t)
            if not search.cutoff:
                complete = True
                break
            search.limit *= 2
    except BudgetExhausted:
        search.steps = search.budget
    return make_result(found, complete, search.steps, root)
