"""Terms of the primitive-recursive / mu-recursive function language.

Textual form (whitespace-insensitive)::

    S  Z  P[n,i]  C[g; h1, ..., hm]  R[g; h]  BMU[p; b]  MU[p]  name

and environments are sequences of ``DEF name = term`` statements.
"""

import re
from dataclasses import dataclass
from enum import Enum

from ..errors import ArityMismatch, ParseError, UnresolvedRef


class PrTerm:
    __slots__ = ()

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True, eq=True, repr=False)
class Succ(PrTerm):
    def __repr__(self):
        return "S"


@dataclass(frozen=True, eq=True, repr=False)
class Zero(PrTerm):
    def __repr__(self):
        return "Z"


@dataclass(frozen=True, repr=False)
class Proj(PrTerm):
    n: int
    i: int

    def __repr__(self):
        return f"P[{self.n},{self.i}]"


@dataclass(frozen=True, repr=False)
class Comp(PrTerm):
    g: PrTerm
    hs: tuple

    def __init__(self, g, hs):
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "hs", tuple(hs))

    def __repr__(self):
        return format_term(self)


@dataclass(frozen=True, repr=False)
class Rec(PrTerm):
    g: PrTerm
    h: PrTerm

    def __repr__(self):
        return format_term(self)


@dataclass(frozen=True, repr=False)
class BoundedMu(PrTerm):
    """Least ``y <= b(x...)`` with ``p(x..., y) != 0``, else 0."""

    p: PrTerm
    b: PrTerm

    def __repr__(self):
        return format_term(self)


@dataclass(frozen=True, repr=False)
class Mu(PrTerm):
    p: PrTerm

    def __repr__(self):
        return format_term(self)


@dataclass(frozen=True, repr=False)
class Ref(PrTerm):
    name: str

    def __repr__(self):
        return self.name


S = Succ()
Z = Zero()


def P(n, i):
    return Proj(n, i)


def C(g, *hs):
    return Comp(g, hs)


class Kind(Enum):
    PRIMITIVE_RECURSIVE = "PrimitiveRecursive"
    MU_RECURSIVE = "MuRecursive"

    def __str__(self):
        return self.value


class DefEnv:
    """Ordered definitions; each may reference only earlier names.

    ``intrinsics`` maps a defined name to a native function with the same
    meaning, used by the accelerated evaluator.
    """

    def __init__(self, parent=None):
        self._terms = dict(parent._terms) if parent else {}
        self._arity = dict(parent._arity) if parent else {}
        self.intrinsics = dict(parent.intrinsics) if parent else {}
        self._kind = dict(parent._kind) if parent else {}

    def define(self, name, term, intrinsic=None):
        if name in self._terms:
            raise ValueError(f"{name!r} is already defined")
        if not _IDENT.fullmatch(name) or name in _RESERVED:
            raise ValueError(f"{name!r} is not a valid definition name")
        self._arity[name] = arity_check(term, self, path=(name,))
        self._terms[name] = term
        if intrinsic is not None:
            self.intrinsics[name] = intrinsic
        return self

    def extend(self):
        return DefEnv(self)

    def term(self, name):
        try:
            return self._terms[name]
        except KeyError:
            raise UnresolvedRef(name) from None

    def arity(self, name):
        try:
            return self._arity[name]
        except KeyError:
            raise UnresolvedRef(name) from None

    def __contains__(self, name):
        return name in self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def items(self):
        return self._terms.items()


def arity_check(t, env=None, path=()):
    """Return the arity of ``t`` or raise ArityMismatch naming the subterm."""
    if isinstance(t, (Succ, Zero)):
        return 1
    if isinstance(t, Proj):
        if not 1 <= t.i <= t.n:
            raise ArityMismatch(f"P[{t.n},{t.i}] needs 1 <= i <= n", path)
        return t.n
    if isinstance(t, Comp):
        if not t.hs:
            raise ArityMismatch("composition needs at least one inner function", path)
        g = arity_check(t.g, env, path + ("C.g",))
        ns = [arity_check(h, env, path + (f"C.h{k + 1}",)) for k, h in enumerate(t.hs)]
        if g != len(t.hs):
            raise ArityMismatch(f"outer function is {g}-ary but given {len(t.hs)} inner functions", path)
        if len(set(ns)) != 1:
            raise ArityMismatch(f"inner functions disagree on arity {ns}", path)
        return ns[0]
    if isinstance(t, Rec):
        g = arity_check(t.g, env, path + ("R.g",))
        h = arity_check(t.h, env, path + ("R.h",))
        if h != g + 2:
            raise ArityMismatch(f"recursion step is {h}-ary, expected {g + 2}", path)
        return g + 1
    if isinstance(t, BoundedMu):
        p = arity_check(t.p, env, path + ("BMU.p",))
        b = arity_check(t.b, env, path + ("BMU.b",))
        if p != b + 1:
            raise ArityMismatch(f"bounded mu predicate is {p}-ary, expected {b + 1}", path)
        return b
    if isinstance(t, Mu):
        p = arity_check(t.p, env, path + ("MU.p",))
        if p < 2:
            raise ArityMismatch("mu predicate needs at least two arguments", path)
        return p - 1
    if isinstance(t, Ref):
        if env is None:
            raise UnresolvedRef(t.name)
        return env.arity(t.name)
    raise TypeError(f"not a term: {t!r}")


def classify(t, env=None):
    return Kind.MU_RECURSIVE if _has_mu(t, env) else Kind.PRIMITIVE_RECURSIVE


def _has_mu(t, env):
    if isinstance(t, Mu):
        return True
    if isinstance(t, Comp):
        return _has_mu(t.g, env) or any(_has_mu(h, env) for h in t.hs)
    if isinstance(t, Rec):
        return _has_mu(t.g, env) or _has_mu(t.h, env)
    if isinstance(t, BoundedMu):
        return _has_mu(t.p, env) or _has_mu(t.b, env)
    if isinstance(t, Ref):
        if env is None:
            raise UnresolvedRef(t.name)
        cached = env._kind.get(t.name)
        if cached is None:
            cached = _has_mu(env.term(t.name), env)
            env._kind[t.name] = cached
        return cached
    return False


def refs(t):
    """Names referenced anywhere inside ``t`` (not following definitions)."""
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Ref):
            out.add(u.name)
        elif isinstance(u, Comp):
            stack.append(u.g)
            stack.extend(u.hs)
        elif isinstance(u, Rec):
            stack.extend((u.g, u.h))
        elif isinstance(u, BoundedMu):
            stack.extend((u.p, u.b))
        elif isinstance(u, Mu):
            stack.append(u.p)
    return out


def size(t):
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        n += 1
        if isinstance(u, Comp):
            stack.append(u.g)
            stack.extend(u.hs)
        elif isinstance(u, Rec):
            stack.extend((u.g, u.h))
        elif isinstance(u, BoundedMu):
            stack.extend((u.p, u.b))
        elif isinstance(u, Mu):
            stack.append(u.p)
    return n


# -- text format ------------------------------------------------------------

_RESERVED = {"S", "Z", "P", "C", "R", "BMU", "MU", "DEF"}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([\[\];,=]))")


def format_term(t):
    if isinstance(t, Succ):
        return "S"
    if isinstance(t, Zero):
        return "Z"
    if isinstance(t, Proj):
        return f"P[{t.n},{t.i}]"
    if isinstance(t, Comp):
        return f"C[{format_term(t.g)}; {', '.join(format_term(h) for h in t.hs)}]"
    if isinstance(t, Rec):
        return f"R[{format_term(t.g)}; {format_term(t.h)}]"
    if isinstance(t, BoundedMu):
        return f"BMU[{format_term(t.p)}; {format_term(t.b)}]"
    if isinstance(t, Mu):
        return f"MU[{format_term(t.p)}]"
    if isinstance(t, Ref):
        return t.name
    raise TypeError(f"not a term: {t!r}")


def format_env(env, names=None):
    names = list(env) if names is None else names
    return "".join(f"DEF {name} = {format_term(env.term(name))}\n" for name in names)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        comment, ident, num, punct = m.groups()
        start = m.start(m.lastindex) if m.lastindex else pos
        if ident:
            out.append(("id", ident, start))
        elif num:
            out.append(("num", int(num), start))
        elif punct:
            out.append((punct, punct, start))
        pos = m.end()
    out.append(("eof", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind, what=None):
        tok = self.toks[self.k]
        if tok[0] != kind or (what is not None and tok[1] != what):
            shown = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {what or kind} but found {shown}", tok[2])
        self.k += 1
        return tok

    def term(self):
        kind, val, pos = self.peek()
        if kind != "id":
            shown = "end of input" if kind == "eof" else repr(val)
            raise ParseError(f"expected a term but found {shown}", pos)
        self.k += 1
        if val == "S":
            return S
        if val == "Z":
            return Z
        if val == "P":
            self.take("[")
            n = self.take("num")[1]
            self.take(",")
            i = self.take("num")[1]
            self.take("]")
            return Proj(n, i)
        if val == "C":
            self.take("[")
            g = self.term()
            self.take(";")
            hs = [self.term()]
            while self.peek()[0] == ",":
                self.k += 1
                hs.append(self.term())
            self.take("]")
            return Comp(g, hs)
        if val in ("R", "BMU"):
            self.take("[")
            a = self.term()
            self.take(";")
            b = self.term()
            self.take("]")
            return Rec(a, b) if val == "R" else BoundedMu(a, b)
        if val == "MU":
            self.take("[")
            p = self.term()
            self.take("]")
            return Mu(p)
        if val == "DEF":
            raise ParseError("DEF is only allowed at the start of a definition", pos)
        return Ref(val)


def parse_term(text, env=None):
    """Parse one term; arity is checked against ``env`` when given."""
    parser = _Parser(text)
    t = parser.term()
    parser.take("eof")
    if env is not None:
        arity_check(t, env)
    return t


def parse_env(text, base=None):
    """Parse ``DEF name = term`` statements into a new environment."""
    env = DefEnv(base)
    parser = _Parser(text)
    while parser.peek()[0] != "eof":
        parser.take("id", "DEF")
        _, name, pos = parser.take("id")
        parser.take("=")
        t = parser.term()
        try:
            env.define(name, t)
        except ValueError as exc:
            if isinstance(exc, ArityMismatch):
                raise
            raise ParseError(str(exc), pos) from None
    return env
