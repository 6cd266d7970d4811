"""Two evaluators for terms.

``eval_honest`` follows the schemas literally and charges one unit of budget
per schema application.  ``eval_fast`` computes the same function but hands
named library functions to native (lazy-aware) arithmetic.
"""

from ..arith.lazy import nat_add
from ..errors import BudgetExceeded, MuDiverged
from .terms import BoundedMu, Comp, Mu, Proj, Rec, Ref, Succ, Zero, arity_check

DEFAULT_BUDGET = 10**7
DEFAULT_MU_CEILING = 10**6


# arity of recently evaluated terms, keyed by identity; the entry keeps the
# term alive so its id cannot be reused while cached
_ARITY_CACHE = {}
_ARITY_CACHE_SIZE = 4096


def _arity(t, env):
    key = (id(t), id(env))
    hit = _ARITY_CACHE.get(key)
    if hit is not None and hit[0] is t and hit[1] is env:
        return hit[2]
    n = arity_check(t, env)
    if len(_ARITY_CACHE) >= _ARITY_CACHE_SIZE:
        _ARITY_CACHE.clear()
    _ARITY_CACHE[key] = (t, env, n)
    return n


def _check_args(t, args, env):
    n = _arity(t, env)
    if len(args) != n:
        raise ValueError(f"term is {n}-ary but got {len(args)} arguments")


class _Meter:
    __slots__ = ("left",)

    def __init__(self, budget):
        self.left = budget


def eval_honest(t, args, env=None, budget=DEFAULT_BUDGET):
    args = tuple(args)
    _check_args(t, args, env)
    return _honest(t, args, env, _Meter(budget))


def _honest(t, args, env, meter):
    meter.left -= 1
    if meter.left < 0:
        raise BudgetExceeded("honest evaluation ran out of budget")
    cls = type(t)
    if cls is Proj:
        return args[t.i - 1]
    if cls is Succ:
        return args[0] + 1
    if cls is Zero:
        return 0
    if cls is Comp:
        inner = []
        for h in t.hs:
            if type(h) is Proj:
                # a projection costs one application like any other
                meter.left -= 1
                inner.append(args[h.i - 1])
            else:
                inner.append(_honest(h, args, env, meter))
        if meter.left < 0:
            raise BudgetExceeded("honest evaluation ran out of budget")
        return _honest(t.g, tuple(inner), env, meter)
    if cls is Ref:
        return _honest(env.term(t.name), args, env, meter)
    if cls is Rec:
        xs, k = args[:-1], args[-1]
        acc = _honest(t.g, xs, env, meter)
        for j in range(k):
            acc = _honest(t.h, xs + (j, acc), env, meter)
        return acc
    if cls is BoundedMu:
        bound = _honest(t.b, args, env, meter)
        for y in range(bound + 1):
            if _honest(t.p, args + (y,), env, meter) != 0:
                return y
        return 0
    if cls is Mu:
        y = 0
        try:
            while _honest(t.p, args + (y,), env, meter) == 0:
                y += 1
        except BudgetExceeded:
            raise MuDiverged(f"no witness found up to y={y} within budget") from None
        return y
    raise TypeError(f"not a term: {t!r}")


def eval_fast(t, args, env=None, mu_ceiling=DEFAULT_MU_CEILING):
    args = tuple(args)
    _check_args(t, args, env)
    return _Fast(env, mu_ceiling).run(t, args)


class _Fast:
    """One evaluation; holds no state shared between calls."""

    def __init__(self, env, mu_ceiling):
        self.env = env
        self.native = env.intrinsics if env is not None else {}
        self.mu_ceiling = mu_ceiling

    def run(self, t, args):
        cls = type(t)
        if cls is Proj:
            return args[t.i - 1]
        if cls is Comp:
            g = t.g
            if type(g) is Ref and g.name == "cond" and "cond" in self.native:
                # evaluate only the chosen branch
                test = self.run(t.hs[0], args)
                return self.run(t.hs[1] if test != 0 else t.hs[2], args)
            if type(g) is Succ:
                # a run of successors, as constants are written, adds its length
                k = 0
                while type(t) is Comp and type(t.g) is Succ:
                    k += 1
                    t = t.hs[0]
                return nat_add(self.run(t, args), k)
            inner = tuple(self.run(h, args) for h in t.hs)
            return self.run(g, inner)
        if cls is Ref:
            fn = self.native.get(t.name)
            if fn is not None:
                return fn(*args)
            return self.run(self.env.term(t.name), args)
        if cls is Succ:
            return nat_add(args[0], 1)
        if cls is Zero:
            return 0
        if cls is Rec:
            xs, k = args[:-1], args[-1]
            acc = self.run(t.g, xs)
            for j in range(k):
                acc = self.run(t.h, xs + (j, acc))
            return acc
        if cls is BoundedMu:
            bound = self.run(t.b, args)
            y = 0
            while y <= bound:
                if self.run(t.p, args + (y,)) != 0:
                    return y
                y += 1
            return 0
        if cls is Mu:
            for y in range(self.mu_ceiling + 1):
                if self.run(t.p, args + (y,)) != 0:
                    return y
            raise MuDiverged(f"no witness up to the ceiling {self.mu_ceiling}")
        raise TypeError(f"not a term: {t!r}")
