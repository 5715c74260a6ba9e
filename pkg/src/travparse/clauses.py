"""Parser programs as data.

A program is an ordered list of grammar-rule clauses ``Head --> Body.`` over
string-threaded predicates.  Body items are terminals ``[Word]``, calls to
other predicates, and constraint goals ``{rule(M,L,R)}`` / ``{word(P,W)}``
that are resolved against a grammar.

This module reads and prints the ``-->`` notation, holds the built-in
parser listings, and implements the two program transformations: Greibach
left-recursion removal lifted to clause arguments (:func:`egnf_transform`),
and folding the optional continuation into the auxiliary predicate
(:func:`improve`).
"""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .syntax import TermParser, TermSyntaxError, VarNamer, print_term
from .terms import Struct, Term, Var, VarSource, apply, canonicalize, occurs, rename_apart, variables

CONSTRAINT_PREDS = {("rule", 3), ("word", 2)}


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class Literal:
    pred: str
    args: tuple = ()

    def __post_init__(self):
        if not self.pred:
            raise ValueError("predicate names must be nonempty")

    @property
    def key(self) -> tuple[str, int]:
        return self.pred, len(self.args)

    def as_term(self) -> Struct:
        return Struct(self.pred, self.args)

    def map_terms(self, fn: Callable[[Term], Term]) -> "Literal":
        return Literal(self.pred, tuple(fn(a) for a in self.args))


@dataclass(frozen=True)
class Terminal:
    term: Term

    def map_terms(self, fn):
        return Terminal(fn(self.term))


@dataclass(frozen=True)
class Call:
    lit: Literal

    def map_terms(self, fn):
        return Call(self.lit.map_terms(fn))


@dataclass(frozen=True)
class Constraint:
    lit: Literal

    def __post_init__(self):
        if self.lit.key not in CONSTRAINT_PREDS:
            raise ValueError(f"constraint goals must be rule/3 or word/2, got {self.lit.pred}/{len(self.lit.args)}")

    def map_terms(self, fn):
        return Constraint(self.lit.map_terms(fn))


BodyItem = Union[Terminal, Call, Constraint]


@dataclass(frozen=True)
class Clause:
    head: Literal
    body: tuple = ()

    def map_terms(self, fn: Callable[[Term], Term]) -> "Clause":
        # head first, then body left to right: this fixes canonical numbering
        head = self.head.map_terms(fn)
        return Clause(head, tuple(item.map_terms(fn) for item in self.body))

    def variables(self) -> list[Var]:
        seen: dict[Var, None] = {}
        for t in _terms(self):
            for v in variables(t):
                seen.setdefault(v)
        return list(seen)

    def __str__(self):
        return format_clause(self)


@dataclass(frozen=True)
class Program:
    """Ordered clauses plus the name of the entry predicate.

    ``main`` must head some clause, except for programs produced by
    specialization, where a grammar without lexicon can leave none.
    """

    clauses: tuple
    main: str
    check_main: InitVar[bool] = True

    def __post_init__(self, check_main):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if not self.main:
            raise ValueError("main predicate name must be nonempty")
        if check_main and not any(c.head.pred == self.main for c in self.clauses):
            raise ValueError(f"main predicate {self.main!r} heads no clause")

    def predicates(self) -> list[tuple[str, int]]:
        """Head predicates in order of first appearance."""
        seen: dict = {}
        for c in self.clauses:
            seen.setdefault(c.head.key)
        return list(seen)

    def clauses_for(self, key: tuple[str, int]) -> list[Clause]:
        return [c for c in self.clauses if c.head.key == key]

    def canonical(self) -> "Program":
        return Program(tuple(canonicalize(c) for c in self.clauses), self.main, False)

    def map_clauses(self, fn) -> "Program":
        return Program(tuple(fn(c) for c in self.clauses), self.main, False)

    def __str__(self):
        return format_program(self)


# -- printing ----------------------------------------------------------------


def _format_literal(lit: Literal, namer: VarNamer) -> str:
    return print_term(lit.as_term(), namer)


def _format_item(item: BodyItem, namer: VarNamer) -> str:
    if isinstance(item, Terminal):
        return f"[{print_term(item.term, namer)}]"
    if isinstance(item, Constraint):
        return "{" + _format_literal(item.lit, namer) + "}"
    return _format_literal(item.lit, namer)


def format_clause(c: Clause) -> str:
    namer = VarNamer()
    head = _format_literal(c.head, namer)
    if not c.body:
        return f"{head} --> []."
    items = [_format_item(i, namer) for i in c.body]
    return head + " -->\n    " + ",\n    ".join(items) + "."


def format_program(p: Program) -> str:
    """Clauses one per paragraph, with a blank line where the head predicate changes."""
    out: list[str] = []
    for i, c in enumerate(p.clauses):
        if i and c.head.key != p.clauses[i - 1].head.key:
            out.append("")
        out.append(format_clause(c))
    return "\n".join(out) + "\n"


# -- reading -----------------------------------------------------------------


def _literal(p: TermParser) -> Literal:
    tok = p.peek
    t = p.term()
    if not isinstance(t, Struct):
        p.error("expected a predicate call", tok)
    return Literal(t.functor, t.args)


def _body_item(p: TermParser) -> list[BodyItem]:
    if p.at("["):
        p.advance()
        items: list[BodyItem] = []
        if not p.at("]"):
            items.append(Terminal(p.term()))
            while p.at(","):
                p.advance()
                items.append(Terminal(p.term()))
        p.expect("]")
        return items
    if p.at("{"):
        p.advance()
        out = []
        while True:
            tok = p.peek
            lit = _literal(p)
            if lit.key not in CONSTRAINT_PREDS:
                p.error("constraint goals must be rule/3 or word/2", tok)
            out.append(Constraint(lit))
            if not p.at(","):
                break
            p.advance()
        p.expect("}")
        return out
    return [Call(_literal(p))]


def read_program(text: str, main: Optional[str] = None, source: Optional[VarSource] = None) -> Program:
    """Parse clauses in ``Head --> Body.`` notation.

    ``main`` defaults to the head predicate of the first clause.
    """
    p = TermParser(text, source or VarSource())
    clauses = []
    while not p.at_eof():
        p.new_scope()
        head = _literal(p)
        p.expect("-->")
        body = _body_item(p)
        while p.at(","):
            p.advance()
            body.extend(_body_item(p))
        p.expect(".")
        clauses.append(Clause(head, tuple(body)))
    if not clauses:
        raise TermSyntaxError("empty program", 0, text)
    return Program(tuple(clauses), main or clauses[0].head.pred)


# -- built-in listings -------------------------------------------------------

_LISTINGS = {
    "naive_td": ("td", """
        td(node(PreTerm,lf(Word))) -->
            [Word],
            {word(PreTerm,Word)}.
        td(node(Mother,Left,Right)) -->
            {rule(Mother,Left,Right)},
            td(Left),
            td(Right).
    """),
    "naive_bu": ("bu", """
        bu(node(PreTerm,lf(Word))) -->
            [Word],
            {word(PreTerm,Word)}.
        bu(node(Mother,Left,Right)) -->
            bu(Left),
            bu(Right),
            {rule(Mother,Left,Right)}.
    """),
    "naive_lc": ("lc", """
        lc(node(PreTerm,lf(Word))) -->
            [Word],
            {word(PreTerm,Word)}.
        lc(node(Mother,Left,Right)) -->
            lc(Left),
            {rule(Mother,Left,Right)},
            lc(Right).
    """),
    "egnf_bu": ("bu", """
        bu(node(PreTerm,lf(Word))) -->
            [Word],
            {word(PreTerm,Word)}.
        bu(Node) -->
            [Word],
            {word(PreTerm,Word)},
            b(node(PreTerm,lf(Word)),Node).
        b(L,node(Mother,L,R)) -->
            bu(R),
            {rule(Mother,L,R)}.
        b(L,Node) -->
            bu(R),
            {rule(Mother,L,R)},
            b(node(Mother,L,R),Node).
    """),
    "egnf_bu_improved": ("bu", """
        bu(Node) -->
            [Word],
            {word(PreTerm,Word)},
            b(node(PreTerm,lf(Word)),Node).
        b(Node,Node) --> [].
        b(L,Node) -->
            bu(R),
            {rule(Mother,L,R)},
            b(node(Mother,L,R),Node).
    """),
    "egnf_lc_improved": ("lc", """
        lc(Node) -->
            [Word],
            {word(PreTerm,Word)},
            b(node(PreTerm,lf(Word)),Node).
        b(Node,Node) --> [].
        b(L,Node) -->
            {rule(Mother,L,R)},
            lc(R),
            b(node(Mother,L,R),Node).
    """),
}

BUILTIN_NAMES = tuple(_LISTINGS)


def builtin_program(name: str) -> Program:
    try:
        main, text = _LISTINGS[name]
    except KeyError:
        raise ValueError(f"unknown built-in program {name!r}; expected one of {', '.join(BUILTIN_NAMES)}") from None
    return read_program(text, main)


# -- analysis ----------------------------------------------------------------


def nullable_predicates(p: Program) -> set[tuple[str, int]]:
    """Predicates that can succeed without consuming a terminal."""
    nullable: set = set()
    changed = True
    while changed:
        changed = False
        for c in p.clauses:
            if c.head.key in nullable:
                continue
            if all(isinstance(i, Constraint) or (isinstance(i, Call) and i.lit.key in nullable) for i in c.body):
                nullable.add(c.head.key)
                changed = True
    return nullable


def left_call_graph(p: Program) -> dict[tuple[str, int], set[tuple[str, int]]]:
    """Edges P -> Q where P can call Q before consuming any terminal."""
    nullable = nullable_predicates(p)
    graph: dict = {key: set() for key in p.predicates()}
    for c in p.clauses:
        for item in c.body:
            if isinstance(item, Terminal):
                break
            if isinstance(item, Call):
                graph.setdefault(c.head.key, set()).add(item.lit.key)
                if item.lit.key not in nullable:
                    break
    return graph


def left_recursive_predicates(p: Program) -> set[tuple[str, int]]:
    """Predicates on a call cycle that crosses no terminal."""
    graph = left_call_graph(p)
    out = set()
    for start in graph:
        stack, seen = list(graph.get(start, ())), set()
        while stack:
            q = stack.pop()
            if q == start:
                out.add(start)
                break
            if q not in seen:
                seen.add(q)
                stack.extend(graph.get(q, ()))
    return out


# -- EGNF transformation -----------------------------------------------------


def _describe(c: Clause) -> str:
    return format_clause(c).replace("\n    ", " ")


def _fresh_aux_name(p: Program, base: str = "b") -> str:
    used = {c.head.pred for c in p.clauses}
    if base not in used:
        return base
    for n in itertools.count(1):
        if f"{base}{n}" not in used:
            return f"{base}{n}"


def egnf_transform(p: Program, source: Optional[VarSource] = None) -> Program:
    """Remove immediate left recursion, threading clause arguments.

    Supported shape: a single unary predicate ``A`` whose clauses are either
    left-recursive, ``A(H) --> A(X), alpha`` with ``X`` a variable inside
    ``H``, or start with a terminal, ``A(H0) --> beta``.  The result is::

        A(H0) --> beta.
        A(Node) --> beta, b(H0,Node).
        b(X,H) --> alpha.
        b(X,Node) --> alpha, b(H,Node).

    with constraint goals kept where they stood relative to their
    neighbours.  Anything else is rejected with a diagnostic.
    """
    source = source or VarSource()
    main = (p.main, 1)
    base_clauses, recursive = [], []
    for c in p.clauses:
        if c.head.key != main:
            raise TransformError(f"expected a single predicate {p.main}/1; offending clause: {_describe(c)}")
        for item in c.body:
            if isinstance(item, Call) and item.lit.key != main:
                raise TransformError(f"call to another predicate in clause: {_describe(c)}")
        first = c.body[0] if c.body else None
        if isinstance(first, Call):
            x = first.lit.args[0]
            if not isinstance(x, Var) or not occurs(x, c.head.args[0]) or c.head.args[0] == x:
                raise TransformError(
                    f"left-recursive call argument must be a variable strictly inside the head argument: {_describe(c)}")
            alpha = c.body[1:]
            if not any(isinstance(i, (Terminal, Call)) for i in alpha):
                raise TransformError(f"left-recursive clause consumes nothing after its recursive call: {_describe(c)}")
            recursive.append(c)
        elif isinstance(first, Terminal):
            base_clauses.append(c)
        else:
            raise TransformError(f"clause neither starts with a terminal nor is left-recursive: {_describe(c)}")
    if not recursive:
        raise TransformError(f"no left-recursive clause for {p.main}/1")
    if not base_clauses:
        raise TransformError(f"no clause for {p.main}/1 starting with a terminal")

    aux = _fresh_aux_name(p)
    plain, continued, steps, continued_steps = [], [], [], []
    for c in base_clauses:
        c = rename_apart(c, source)
        plain.append(c)
        c = rename_apart(c, source)
        node = source.fresh("Node")
        continued.append(Clause(Literal(p.main, (node,)),
                                c.body + (Call(Literal(aux, (c.head.args[0], node))),)))
    for c in recursive:
        c = rename_apart(c, source)
        x, alpha = c.body[0].lit.args[0], c.body[1:]
        steps.append(Clause(Literal(aux, (x, c.head.args[0])), alpha))
        c = rename_apart(c, source)
        x, alpha = c.body[0].lit.args[0], c.body[1:]
        node = source.fresh("Node")
        continued_steps.append(Clause(Literal(aux, (x, node)),
                                      alpha + (Call(Literal(aux, (c.head.args[0], node))),)))
    return Program(tuple(plain + continued + steps + continued_steps), p.main)


def _collapse(c: Clause, aux: str) -> Optional[Clause]:
    """Undo a trailing ``aux(H,V)`` continuation: bind the head's last argument V to H."""
    if not c.body:
        return None
    last = c.body[-1]
    if not (isinstance(last, Call) and last.lit.pred == aux and len(last.lit.args) == 2):
        return None
    h, v = last.lit.args
    if not isinstance(v, Var) or not c.head.args or c.head.args[-1] != v:
        return None
    rest = Clause(Literal(c.head.pred, c.head.args[:-1]), c.body[:-1])
    if any(occurs(v, t) for t in _terms(rest)) or occurs(v, h):
        return None
    return Clause(Literal(c.head.pred, c.head.args[:-1] + (h,)), c.body[:-1])


def _terms(c: Clause) -> list[Term]:
    out: list[Term] = []
    c.map_terms(lambda t: out.append(t) or t)
    return out


def improve(p: Program, aux: str = "b", source: Optional[VarSource] = None) -> Program:
    """Fold the optional ``aux`` continuation into ``aux`` itself.

    Expects every predicate to have exactly two clauses, one equal to the
    other minus a final ``aux(H,Node)`` call (with ``Node`` in place of
    ``H`` in the head).  Keeps the continued clauses and adds the unit
    clause ``aux(Node,Node) --> []`` in front of the ``aux`` clauses.
    """
    source = source or VarSource()
    preds = p.predicates()
    if (aux, 2) not in preds:
        raise TransformError(f"no auxiliary predicate {aux}/2")
    out: list[Clause] = []
    for key in preds:
        group = p.clauses_for(key)
        if len(group) != 2:
            raise TransformError(
                f"{key[0]}/{key[1]} has {len(group)} clauses; expected a plain and a continued clause")
        plain, continued = group
        collapsed = _collapse(continued, aux)
        if collapsed is None or canonicalize(collapsed) != canonicalize(plain):
            raise TransformError(
                f"clauses for {key[0]}/{key[1]} do not differ only by a final {aux} call: "
                f"{_describe(plain)} / {_describe(continued)}")
        if key == (aux, 2):
            node = source.fresh("Node")
            out.append(Clause(Literal(aux, (node, node)), ()))
        out.append(rename_apart(continued, source))
    return Program(tuple(out), p.main)


# -- equality up to renaming -------------------------------------------------


def _rename_preds(c: Clause, names: Mapping[str, str]) -> Clause:
    def lit(l: Literal) -> Literal:
        return Literal(names.get(l.pred, l.pred), l.args)

    body = tuple(Call(lit(i.lit)) if isinstance(i, Call) else i for i in c.body)
    return Clause(lit(c.head), body)


def _called_predicates(p: Program) -> set[tuple[str, int]]:
    keys = set(p.predicates())
    for c in p.clauses:
        keys.update(i.lit.key for i in c.body if isinstance(i, Call))
    return keys


def _groups(p: Program, names: Mapping[str, str]) -> dict:
    groups: dict = {}
    for c in p.clauses:
        c = canonicalize(_rename_preds(c, names))
        groups.setdefault(c.head.key, []).append(c)
    return groups


def program_equal(p: Program, q: Program, names: Optional[Mapping[str, str]] = None) -> bool:
    """Equal up to variable renaming and a bijective renaming of predicates.

    ``names`` maps predicate names of ``p`` to those of ``q``; when omitted,
    a bijection sending ``p.main`` to ``q.main`` is searched for.  Clause
    order within a predicate is significant; constraint predicates and
    terminals are never renamed.
    """
    if names is not None:
        return _groups(p, names) == _groups(q, {})
    return find_predicate_bijection(p, q) is not None


def find_predicate_bijection(p: Program, q: Program) -> Optional[dict[str, str]]:
    p_preds = sorted(_called_predicates(p))
    q_preds = sorted(_called_predicates(q))
    if len(p_preds) != len(q_preds) or len({n for n, _ in p_preds}) != len(p_preds) \
            or len({n for n, _ in q_preds}) != len(q_preds):
        # overloaded names (same name, different arity) fall back to identity
        names = {n: n for n, _ in p_preds}
        return names if _groups(p, names) == _groups(q, {}) else None
    target = _groups(q, {})
    for perm in itertools.permutations(q_preds):
        if any(a[1] != b[1] for a, b in zip(p_preds, perm)):
            continue
        names = {a[0]: b[0] for a, b in zip(p_preds, perm)}
        if names.get(p.main, p.main) != q.main:
            continue
        if _groups(p, names) == target:
            return names
    return None


def program_diff(p: Program, q: Program, names: Mapping[str, str]) -> list[str]:
    """Clause-level differences between ``p`` (renamed by ``names``) and ``q``."""
    gp, gq = _groups(p, names), _groups(q, {})
    lines = []
    for key in sorted(set(gp) | set(gq)):
        a, b = gp.get(key, []), gq.get(key, [])
        for idx in range(max(len(a), len(b))):
            ca = a[idx] if idx < len(a) else None
            cb = b[idx] if idx < len(b) else None
            if ca != cb:
                where = f"{key[0]}/{key[1]} clause {idx + 1}"
                lines.append(f"{where}: left  {_describe(ca) if ca else '(missing)'}")
                lines.append(f"{where}: right {_describe(cb) if cb else '(missing)'}")
    return lines


def constraint_free(p: Program, preds: Iterable[str] = ("rule", "word")) -> bool:
    preds = set(preds)
    return not any(isinstance(i, Constraint) and i.lit.pred in preds for c in p.clauses for i in c.body)
