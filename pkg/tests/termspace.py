"""The exhaustive small-term space and a brute-force most-general-unifier check.

Terms have depth at most 3 over variables X and Y, the atom ``a`` and the
binary functor ``f``.  Candidate unifiers map X and Y into a fixed set of
small terms; a unifier returned by :func:`unify` must equate the pair and
be more general than every candidate that also equates it.
"""

import itertools

from travparse.terms import Struct, Var, apply, occurs, unify

X, Y = Var("X", "X"), Var("Y", "Y")
a = Struct("a")


def f(*args):
    return Struct("f", args)


def once(theta, t):
    """Simultaneous one-step application; works for non-idempotent maps."""
    if isinstance(t, Var):
        return theta.get(t, t)
    return Struct(t.functor, tuple(once(theta, x) for x in t.args))


def small_terms(depth: int) -> list:
    """Every term over variables X, Y, atom a and binary f with depth <= ``depth``."""
    if depth == 1:
        return [X, Y, a]
    smaller = small_terms(depth - 1)
    return [X, Y, a] + [f(p, q) for p in smaller for q in smaller]


TERMS3 = small_terms(3)
CANDIDATES = [X, Y, a, f(a, a), f(X, Y), f(Y, X), f(X, X)]
THETAS = [{X: p, Y: q} for p in CANDIDATES for q in CANDIDATES]


def theta_images() -> list[dict]:
    return [{t: once(theta, t) for t in TERMS3} for theta in THETAS]


def check_pair(s, t, images) -> bool:
    """Soundness, idempotence and most-generality of unify(s, t)."""
    u = unify(s, t)
    unifiers = [i for i, img in enumerate(images) if img[s] == img[t]]
    if u is None:
        return not unifiers
    if u(s) != u(t):
        return False
    if any(occurs(v, bound) or apply(u, bound) != bound for v, bound in u.items()):
        return False
    for i in unifiers:
        theta = THETAS[i]
        if any(once(theta, u(v)) != once(theta, v) for v in (X, Y)):
            return False
    return True


def all_pairs():
    return itertools.product(TERMS3, TERMS3)
