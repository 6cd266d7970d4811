"""Compile a machine and a primitive recursive step bound into a PR term.

The emitted function is ``F(x..) = U(mu y <= Y(x..) [T(t, x.., y)])`` where
``t`` is the machine's code, written as a small constant expression rather
than a numeral.  Every piece is an ordinary term over the library, so the
whole construction classifies as primitive recursive.

Codes used throughout: a machine is ``t = sigma3(M, N, P)`` with ``P`` a
product of prime powers, one per transition; a configuration is
``w = sigma3(a, b, c)`` with head index ``a``, tape code ``b`` and state ``c``.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import ArityMismatch, NotPrimitiveRecursive
from ..prf.build import bounded_search, fn
from ..prf.stdlib import stdlib
from ..prf.terms import BoundedMu, Comp, DefEnv, Kind, Rec, Ref, arity_check, classify, format_term
from ..tm.encode import action_code


def _generic_definitions():
    """Machine-independent pieces, as ``(name, term)`` in dependency order."""
    defs = []

    def define(name, params, body):
        defs.append((name, fn(params, body)))

    # machine code fields and transition entries
    define("tm_states", ["t"], ("sigma3_1", "t"))
    define("tm_symbols", ["t"], ("sigma3_2", "t"))
    define("tm_table", ["t"], ("sigma3_3", "t"))
    define("tm_entry", ["t", "k"], ("pred", ("exponent_of", ("tm_table", "t"), "k")))
    define("tm_present", ["t", "k"], ("sign", ("exponent_of", ("tm_table", "t"), "k")))
    define("rule_state", ["e"], ("sigma2_x", ("sigma2_x", "e")))
    define("rule_symbol", ["e"], ("sigma2_y", ("sigma2_x", "e")))
    define("rule_action", ["e"], ("sigma2_x", ("sigma2_y", "e")))
    define("rule_next", ["e"], ("sigma2_y", ("sigma2_y", "e")))
    define(
        "tm_match",
        ["t", "c", "s", "k"],
        (
            "cond",
            ("tm_present", "t", "k"),
            (
                "and",
                ("eq", ("rule_state", ("tm_entry", "t", "k")), ("pred", "c")),
                ("eq", ("rule_symbol", ("tm_entry", "t", "k")), "s"),
            ),
            0,
        ),
    )
    defs.append(
        (
            "tm_find",
            bounded_search(
                ["t", "c", "s"], "k", ("tm_match", "t", "c", "s", "k"), ("mul", ("tm_states", "t"), ("S", ("tm_symbols", "t")))
            ),
        )
    )
    define("tm_found", ["t", "c", "s"], ("tm_match", "t", "c", "s", ("tm_find", "t", "c", "s")))

    # configuration fields
    define("cfg_head", ["w"], ("sigma3_1", "w"))
    define("cfg_tape", ["w"], ("sigma3_2", "w"))
    define("cfg_state", ["w"], ("sigma3_3", "w"))
    define("cfg_scanned", ["w"], ("exponent_of", ("cfg_tape", "w"), ("cfg_head", "w")))
    define("tm_live", ["t", "w"], ("tm_found", "t", ("cfg_state", "w"), ("cfg_scanned", "w")))
    define("tm_rule", ["t", "w"], ("tm_entry", "t", ("tm_find", "t", ("cfg_state", "w"), ("cfg_scanned", "w"))))

    # head moves in cell-index terms: even indices lie right of cell 0, odd ones left
    define("index_right", ["a"], ("cond", ("mod", "a", 2), ("sub", "a", 2), ("add", "a", 2)))
    define("index_left", ["a"], ("cond", ("mod", "a", 2), ("add", "a", 2), ("cond", "a", ("sub", "a", 2), 1)))
    define(
        "index_left_by",
        ["a", "k"],
        (
            "cond",
            ("mod", "a", 2),
            ("add", "a", ("mul", 2, "k")),
            ("cond", ("le", ("mul", 2, "k"), "a"), ("sub", "a", ("mul", 2, "k")), ("pred", ("sub", ("mul", 2, "k"), "a"))),
        ),
    )
    define(
        "tape_rewrite",
        ["b", "a", "s", "j"],
        ("mul", ("div", "b", ("prime_pow", "a", "s")), ("prime_pow", "a", "j")),
    )
    writes = ("le", ("rule_action", "e"), ("tm_symbols", "t"))
    a, b = ("cfg_head", "w"), ("cfg_tape", "w")
    define(
        "tm_apply",
        ["t", "w", "e"],
        (
            "sigma3",
            (
                "cond",
                writes,
                a,
                ("cond", ("eq", ("rule_action", "e"), ("S", ("tm_symbols", "t"))), ("index_left", a), ("index_right", a)),
            ),
            ("cond", writes, ("tape_rewrite", b, a, ("cfg_scanned", "w"), ("rule_action", "e")), b),
            ("S", ("rule_next", "e")),
        ),
    )
    define("tm_next", ["t", "w"], ("cond", ("tm_live", "t", "w"), ("tm_apply", "t", "w", ("tm_rule", "t", "w")), "w"))

    # strokes(o, k): tape code of strokes at offsets o, o+1, ..., o+k
    defs.append(
        (
            "tape_strokes",
            Rec(
                fn(["o"], ("prime", ("mul", 2, "o"))),
                fn(["o", "j", "acc"], ("mul", "acc", ("prime", ("mul", 2, ("add", "o", ("S", "j")))))),
            ),
        )
    )

    # output: strokes left of the head, minus one
    w = ("sigma2_y", "y")
    defs.append(
        (
            "out_strokes",
            bounded_search(
                ["y"],
                "k",
                ("nsign", ("exponent_of", ("cfg_tape", w), ("index_left_by", ("cfg_head", w), ("S", "k")))),
                ("cfg_tape", w),
            ),
        )
    )
    define("U", ["y"], ("pred", ("out_strokes", "y")))
    return defs


@lru_cache(maxsize=1)
def compiler_env():
    env = stdlib()
    for name, term in _generic_definitions():
        env.define(name, term)
    return env


GENERIC_NAMES = tuple(name for name, _ in _generic_definitions())


def _args(n):
    return [f"x{i}" for i in range(1, n + 1)]


def arity_definitions(n):
    """``init_n``, ``kfun_n`` and ``T_n`` for machines of ``n`` arguments."""
    xs = _args(n)
    starts = [1]
    for i in range(1, n):
        starts.append(("add", starts[-1], ("add", xs[i - 1], 2)))
    tape = ("tape_strokes", starts[0], xs[0])
    for i in range(1, n):
        tape = ("mul", tape, ("tape_strokes", starts[i], xs[i]))
    head = ("mul", 2, ("add", starts[-1], ("S", xs[-1])))
    init = fn(xs, ("sigma3", head, tape, 1))
    kfun_t = Rec(fn(["t"] + xs, (Ref(f"init_{n}"),) + tuple(xs)), fn(["t"] + xs + ["z", "w"], ("tm_next", "t", "w")))
    w = ("sigma2_y", "y")
    t_n = fn(
        ["t"] + xs + ["y"],
        (
            "cond",
            ("eq", w, (Ref(f"kfun_{n}"), "t") + tuple(xs) + (("sigma2_x", "y"),)),
            ("not", ("tm_live", "t", w)),
            0,
        ),
    )
    return [(f"init_{n}", init), (f"kfun_{n}", kfun_t), (f"T_{n}", t_n)]


def machine_code_expr(spec):
    """Expression for the machine's code built from small constants."""
    factors = []
    for k, ((q, sym), (act, nxt)) in enumerate(spec.delta.items()):
        entry = ("sigma2", ("sigma2", q - 1, sym), ("sigma2", action_code(act, spec.N), nxt - 1))
        factors.append(("prime_pow", k, ("S", entry)))
    product = factors[0] if factors else 1
    for f in factors[1:]:
        product = ("mul", product, f)
    return ("sigma3", spec.M, spec.N, product)


def machine_code_term(spec, n=1):
    """The ``n``-ary constant function whose value is the machine's code."""
    return fn(_args(n), machine_code_expr(spec))


@dataclass
class YBound:
    term: object
    parts: dict = field(default_factory=dict)


def step_bound_to_y_bound(B, spec, env=None):
    """A PR bound on ``y = sigma2(r, s)`` for runs of at most ``B(x..)`` steps.

    The head starts at offset ``sum(x) + 2n`` and moves at most one cell per
    step, so every occupied index is at most ``J = 2 * (span + B) + 2``.  With
    ``prime(j) <= 2 ** 2 ** j`` the tape code is at most
    ``2 ** (2 ** J * N * (J + 1))``; the configuration code is then bounded
    by pairing those bounds with ``M``, and y by pairing that with ``B``.
    """
    env = env or compiler_env()
    n = arity_check(B, env)
    if classify(B, env) is not Kind.PRIMITIVE_RECURSIVE:
        raise NotPrimitiveRecursive("the step bound must be primitive recursive")
    xs = _args(n)
    total = xs[0]
    for x in xs[1:]:
        total = ("add", total, x)
    bound = (B,) + tuple(xs)
    parts = {}
    parts["span"] = ("add", total, 2 * n)
    parts["reach"] = ("add", parts["span"], bound)
    parts["index_bound"] = ("add", ("mul", 2, parts["reach"]), 2)
    J = parts["index_bound"]
    parts["tape_exponent"] = ("mul", ("pow", 2, J), ("mul", spec.N, ("S", J)))
    parts["tape_bound"] = ("pow", 2, parts["tape_exponent"])
    parts["config_bound"] = ("sigma2", ("sigma2", J, parts["tape_bound"]), spec.M)
    parts["y_bound"] = ("sigma2", bound, parts["config_bound"])
    terms = {k: fn(xs, v) for k, v in parts.items()}
    return YBound(terms["y_bound"], terms)


@dataclass
class Compiled:
    term: object
    env: DefEnv
    arity: int
    names: list
    y_bound: YBound

    def text(self):
        lines = [f"DEF {name} = {format_term(self.env.term(name))}" for name in self.names]
        return "\n".join(lines) + "\n"


def theorem1_compile(spec, B, env=None):
    """``F = C[U; BMU[T_t; Y]]`` computing the machine's function on ``n = arity(B)`` arguments."""
    base = env or compiler_env()
    n = arity_check(B, base)
    if classify(B, base) is not Kind.PRIMITIVE_RECURSIVE:
        raise NotPrimitiveRecursive("the step bound must be primitive recursive")
    out = DefEnv(base)
    names = list(GENERIC_NAMES)
    for name, term in arity_definitions(n):
        out.define(name, term)
        names.append(name)
    xs = _args(n)
    out.define("machine_code", machine_code_term(spec, n))
    out.define("step_bound", B)
    yb = step_bound_to_y_bound(Ref("step_bound"), spec, out)
    out.define("y_bound", yb.term)
    t_machine = fn(xs + ["y"], (Ref(f"T_{n}"), (Ref("machine_code"),) + tuple(xs)) + tuple(xs) + ("y",))
    out.define("T_machine", t_machine)
    F = Comp(Ref("U"), [BoundedMu(Ref("T_machine"), Ref("y_bound"))])
    out.define("F", F)
    names += ["machine_code", "step_bound", "y_bound", "T_machine", "F"]
    if arity_check(Ref("F"), out) != n:
        raise ArityMismatch("compiled function has the wrong arity", ("F",))
    return Compiled(Ref("F"), out, n, names, yb)

