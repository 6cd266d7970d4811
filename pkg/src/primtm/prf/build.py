"""Helpers for writing terms without counting projection indices by hand."""

from ..errors import ArityMismatch
from .terms import BoundedMu, Comp, Proj, Ref, S, Z, arity_check


_BUILTIN = {"S": S, "Z": Z}


def const(k, n=1):
    """The ``n``-ary constant function with value ``k``."""
    t = Comp(Z, [Proj(n, 1)]) if n > 1 else Z
    for _ in range(k):
        t = Comp(S, [t])
    return t


def fn(params, body):
    """Compile a small expression over named parameters into a term.

    ``body`` is a parameter name, an int constant, or a tuple
    ``(f, arg, ...)`` where ``f`` is a term, ``"S"``/``"Z"``, or a library name.  The result
    has arity ``len(params)``.
    """
    params = list(params)
    if not params:
        raise ValueError("terms have at least one argument")
    n = len(params)
    index = {p: k + 1 for k, p in enumerate(params)}

    def go(e):
        if isinstance(e, str):
            try:
                return Proj(n, index[e])
            except KeyError:
                raise ValueError(f"unknown parameter {e!r}") from None
        if isinstance(e, int):
            return const(e, n)
        head, *args = e
        if isinstance(head, str):
            head = _BUILTIN.get(head) or Ref(head)
        if not args:
            raise ValueError("a call needs at least one argument")
        return Comp(head, [go(a) for a in args])

    return go(body)


def bounded_search(params, var, pred, bound):
    """``mu var <= bound [pred]`` with ``pred`` over ``params + [var]``."""
    return BoundedMu(fn(list(params) + [var], pred), fn(params, bound))


def corollary_substitute(p, b, env=None):
    """``f(x..) = h(x.., b(x..))`` with ``h(x.., z) = mu y <= z [p(x.., y)]``.

    The search binds the last argument of ``p``.
    """
    n = arity_check(b, env, path=("b",))
    m = arity_check(p, env, path=("p",))
    if m != n + 1:
        raise ArityMismatch(f"predicate is {m}-ary, expected {n + 1}", ("p",))
    # p'(x.., z, y) = p(x.., y), so the bound z sits in the slot h searches over
    shifted = Comp(p, [Proj(n + 2, k) for k in range(1, n + 1)] + [Proj(n + 2, n + 2)])
    h = BoundedMu(shifted, Proj(n + 1, n + 1))
    return Comp(h, [Proj(n, k) for k in range(1, n + 1)] + [b])
