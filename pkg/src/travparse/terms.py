"""First-order terms, substitutions and unification.

Terms are immutable: a :class:`Var` is identified by its ``id`` alone (the
``name`` is a display hint), and a :class:`Struct` is a functor applied to a
tuple of argument terms.  Atoms are structs with no arguments.

Two substitution representations live here.  :class:`Subst` is the public,
idempotent one returned by :func:`unify`.  :class:`Bindings` is a mutable
triangular store with a trail, used by the search engines where copying an
idempotent map at every step would dominate the run time.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union


class Var:
    """Logic variable; identity is the ``id`` alone, ``name`` is a display hint."""

    __slots__ = ("id", "name")

    def __init__(self, id: object, name: Optional[str] = None):
        self.id = id
        self.name = name

    def __eq__(self, other):
        return other.__class__ is Var and other.id == self.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return self.name if self.name else f"_G{self.id}"


class Struct:
    """Functor applied to a tuple of argument terms; an atom has no arguments."""

    __slots__ = ("functor", "args", "_hash")

    def __init__(self, functor: str, args: tuple = ()):
        if not functor:
            raise ValueError("functor names must be nonempty")
        self.functor = functor
        self.args = args
        self._hash = None

    @property
    def arity(self) -> int:
        return len(self.args)

    def __eq__(self, other):
        return (other.__class__ is Struct and self.functor == other.functor
                and self.args == other.args)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.functor, self.args))
        return h

    def __lt__(self, other):
        return repr(self) < repr(other)

    def __repr__(self):
        if not self.args:
            return self.functor
        return f"{self.functor}({','.join(map(repr, self.args))})"


Term = Union[Var, Struct]


def atom(name: str) -> Struct:
    return Struct(name)


def compound(functor: str, *args: Term) -> Struct:
    return Struct(functor, tuple(args))


def is_atom(t: Term) -> bool:
    return isinstance(t, Struct) and not t.args


class VarSource:
    """Allocates variable ids from a monotone counter.

    One source per logical task; terms built from different sources must be
    renamed apart before they meet in a unification.
    """

    def __init__(self, start: int = 0):
        self._counter = itertools.count(start)

    def fresh(self, name: Optional[str] = None) -> Var:
        return Var(next(self._counter), name)


def variables(t: Term) -> list[Var]:
    """Distinct variables of ``t`` in first-occurrence order."""
    seen: dict[Var, None] = {}
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            seen.setdefault(x)
        else:
            stack.extend(reversed(x.args))
    return list(seen)


def occurs(v: Var, t: Term) -> bool:
    if isinstance(t, Var):
        return t == v
    return any(occurs(v, a) for a in t.args)


def map_vars(t: Term, fn: Callable[[Var], Term]) -> Term:
    if t.__class__ is Var:
        return fn(t)
    if not t.args:
        return t
    return Struct(t.functor, tuple(map_vars(a, fn) for a in t.args))


# -- idempotent substitutions ---------------------------------------------


class Subst(Mapping):
    """Idempotent finite map from variables to terms."""

    __slots__ = ("_map",)

    def __init__(self, bindings: Optional[Mapping[Var, Term]] = None):
        self._map = dict(bindings or {})

    def __getitem__(self, v):
        return self._map[v]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        inner = ", ".join(f"{k!r}↦{v!r}" for k, v in self._map.items())
        return "{" + inner + "}"

    def __call__(self, t: Term) -> Term:
        return apply(self, t)


def apply(s: Mapping[Var, Term], t: Term) -> Term:
    """Replace every bound variable of ``t`` by its binding, to a fixed point."""
    if not s:
        return t
    if isinstance(t, Var):
        bound = s.get(t)
        return t if bound is None else apply(s, bound)
    if not t.args:
        return t
    return Struct(t.functor, tuple(apply(s, a) for a in t.args))


def unify(a: Term, b: Term, s: Optional[Mapping[Var, Term]] = None) -> Optional[Subst]:
    """Most general unifier of ``a`` and ``b`` extending ``s``, or ``None``.

    When two variables meet, the one on the ``a`` side is bound.  The occurs
    check is always performed.
    """
    store = Bindings(s)
    if not store.unify(a, b):
        return None
    return store.to_subst()


# -- trail-based bindings ---------------------------------------------------


class Bindings:
    """Triangular variable bindings with an undo trail."""

    __slots__ = ("map", "trail")

    def __init__(self, initial: Optional[Mapping[Var, Term]] = None):
        self.map: dict[Var, Term] = dict(initial or {})
        self.trail: list[Var] = []

    def walk(self, t: Term) -> Term:
        m = self.map
        while t.__class__ is Var:
            nxt = m.get(t)
            if nxt is None:
                return t
            t = nxt
        return t

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        trail, m = self.trail, self.map
        while len(trail) > mark:
            del m[trail.pop()]

    def _occurs(self, v: Var, t: Term) -> bool:
        t = self.walk(t)
        if t.__class__ is Var:
            return t == v
        for a in t.args:
            if self._occurs(v, a):
                return True
        return False

    def _bind(self, v: Var, t: Term) -> bool:
        if self._occurs(v, t):
            return False
        self.map[v] = t
        self.trail.append(v)
        return True

    def unify(self, a: Term, b: Term) -> bool:
        """Unify under the current bindings; on failure nothing is left bound."""
        mark = len(self.trail)
        if self._unify(a, b):
            return True
        self.undo(mark)
        return False

    def _unify(self, a: Term, b: Term) -> bool:
        a = self.walk(a)
        b = self.walk(b)
        if a.__class__ is Var:
            if a == b:
                return True
            return self._bind(a, b)
        if b.__class__ is Var:
            return self._bind(b, a)
        if a.functor != b.functor or len(a.args) != len(b.args):
            return False
        for x, y in zip(a.args, b.args):
            if not self._unify(x, y):
                return False
        return True

    def may_unify(self, a: Term, b: Term) -> bool:
        """Cheap necessary condition for unifying ``a`` with a fresh copy of ``b``.

        Variables of ``b`` act as wildcards; sharing and the occurs check are
        ignored, so True does not guarantee success.
        """
        if b.__class__ is Var:
            return True
        a = self.walk(a)
        if a.__class__ is Var:
            return True
        if a.functor != b.functor or len(a.args) != len(b.args):
            return False
        for x, y in zip(a.args, b.args):
            if not self.may_unify(x, y):
                return False
        return True

    def resolve(self, t: Term) -> Term:
        t = self.walk(t)
        if isinstance(t, Var) or not t.args:
            return t
        return Struct(t.functor, tuple(self.resolve(a) for a in t.args))

    def to_subst(self) -> Subst:
        return Subst({v: self.resolve(v) for v in self.map})


class FactIndex:
    """Facts of one predicate indexed on the outer shape of each argument.

    ``candidates`` narrows the facts a goal could unify with, using the
    functor and arity of each bound goal argument and of its first
    sub-argument, and returns them in their original order, so a search
    driven through the index visits exactly the facts it would visit by
    scanning.
    """

    __slots__ = ("entries", "_args")

    def __init__(self, facts: Iterable[Term]):
        self.entries = [(f, bool(variables(f))) for f in facts]
        arity = max((len(f.args) for f, _ in self.entries), default=0)
        # per argument: outer key -> (inner key -> indices), indices with a variable there
        self._args = [({}, []) for _ in range(arity)]
        for i, (f, _) in enumerate(self.entries):
            for k, a in enumerate(f.args):
                outer, loose = self._args[k]
                if a.__class__ is Var:
                    loose.append(i)
                    continue
                inner = outer.setdefault((a.functor, len(a.args)), {})
                sub = a.args[0] if a.args else None
                key = (sub.functor, len(sub.args)) if sub.__class__ is Struct else None
                inner.setdefault(key, []).append(i)

    def candidates(self, goal: Struct, b: "Bindings") -> list:
        positions = self.positions(goal, b)
        if positions is None:
            return self.entries
        entries = self.entries
        return [entries[i] for i in positions]

    def positions(self, goal: Struct, b: "Bindings") -> Optional[list[int]]:
        """Sorted indices of the candidate facts, or None for all of them."""
        best = None
        for k, a in enumerate(goal.args[:len(self._args)]):
            a = b.walk(a)
            if a.__class__ is Var:
                continue
            outer, loose = self._args[k]
            inner = outer.get((a.functor, len(a.args)))
            found = list(loose)
            if inner:
                sub = b.walk(a.args[0]) if a.args else None
                if sub.__class__ is Struct:
                    found += inner.get((sub.functor, len(sub.args)), ())
                    found += inner.get(None, ())
                else:
                    for ids in inner.values():
                        found += ids
            if best is None or len(found) < len(best):
                best = found
        return None if best is None else sorted(best)


# -- renaming and canonical forms -------------------------------------------


def rename_term(t: Term, source: VarSource, mapping: Optional[dict] = None) -> Term:
    """Copy ``t`` with fresh variables; ``mapping`` carries sharing across calls."""
    if mapping is None:
        mapping = {}

    def fresh(v: Var) -> Var:
        new = mapping.get(v)
        if new is None:
            new = mapping[v] = source.fresh(v.name)
        return new

    return map_vars(t, fresh)


def rename_apart(x, source: VarSource):
    """Variant of a term (or of anything with ``map_terms``) with fresh variables.

    Sharing inside ``x`` is preserved; nothing is shared with any earlier
    variable issued by ``source``.
    """
    mapping: dict = {}
    if isinstance(x, (Var, Struct)):
        return rename_term(x, source, mapping)
    return x.map_terms(lambda t: rename_term(t, source, mapping))


def canonical_var(n: int) -> Var:
    # string ids never collide with the integer ids of a VarSource
    return Var(f"_{n}", f"_{n}")


def canonicalize(x):
    """Renumber variables 0, 1, 2, ... in left-to-right first-occurrence order.

    Accepts a term or any object exposing ``map_terms`` (clauses, literals);
    programs provide their own ``canonical`` since each clause is numbered
    independently.
    """
    mapping: dict[Var, Var] = {}

    def number(v: Var) -> Var:
        new = mapping.get(v)
        if new is None:
            new = mapping[v] = canonical_var(len(mapping))
        return new

    if isinstance(x, (Var, Struct)):
        return map_vars(x, number)
    return x.map_terms(lambda t: map_vars(t, number))


def is_variant(a, b) -> bool:
    return canonicalize(a) == canonicalize(b)


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Struct):
        for a in t.args:
            yield from subterms(a)


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 1
    return 1 + max(term_depth(a) for a in t.args)


def all_variables(terms: Iterable[Term]) -> list[Var]:
    seen: dict[Var, None] = {}
    for t in terms:
        for v in variables(t):
            seen.setdefault(v)
    return list(seen)
