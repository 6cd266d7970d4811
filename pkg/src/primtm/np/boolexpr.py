"""Boolean expressions, their Goedel numbers, and satisfiability by truth table.

Surface syntax is ASCII: ``e1``, ``e2``, ... for variables, ``!E`` for
negation, ``(E|F)`` and ``(E&F)`` for the binary connectives.  Numbering
works on the abstract symbols, so the surface choice does not change it.
"""

import itertools
import random
import time
from dataclasses import dataclass

from ..arith.primes import prime, strip_prime
from ..errors import ParseError, TooManyVariables

MAX_VARIABLES = 20


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variables are numbered from 1")


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class NotWellFormed:
    """Returned instead of an expression when a number encodes none."""

    reason: str


def format_bool(e):
    if isinstance(e, Var):
        return f"e{e.index}"
    if isinstance(e, Not):
        return "!" + format_bool(e.arg)
    op = "|" if isinstance(e, Or) else "&"
    return f"({format_bool(e.left)}{op}{format_bool(e.right)})"


def parse_bool(text):
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expr():
        nonlocal pos
        skip()
        if pos >= len(text):
            raise ParseError("expected an expression", pos)
        ch = text[pos]
        if ch == "e":
            start = pos
            pos += 1
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            digits = text[start + 1 : pos]
            if not digits or int(digits) < 1:
                raise ParseError("variables are e1, e2, ...", start)
            return Var(int(digits))
        if ch == "!":
            pos += 1
            return Not(expr())
        if ch == "(":
            pos += 1
            left = expr()
            skip()
            if pos >= len(text) or text[pos] not in "|&":
                raise ParseError("expected '|' or '&'", pos)
            kind = Or if text[pos] == "|" else And
            pos += 1
            right = expr()
            skip()
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return kind(left, right)
        raise ParseError(f"unexpected {ch!r}", pos)

    e = expr()
    skip()
    if pos != len(text):
        raise ParseError(f"unexpected {text[pos]!r} after the expression", pos)
    return e


# -- numbering ----------------------------------------------------------------

NEG, OR, AND, LPAREN, RPAREN = "not", "or", "and", "(", ")"
_SYMBOL_NUMBERS = {NEG: 1, OR: 2, AND: 3, LPAREN: 4, RPAREN: 5}


def sn(symbol):
    """Symbol number: connectives and brackets 1..5, variable ``e_i`` is ``5 + i``."""
    if isinstance(symbol, Var):
        return 5 + symbol.index
    return _SYMBOL_NUMBERS[symbol]


def symbols(e):
    """The fully parenthesised symbol sequence of ``e``."""
    if isinstance(e, Var):
        return [e]
    if isinstance(e, Not):
        return [NEG] + symbols(e.arg)
    op = OR if isinstance(e, Or) else AND
    return [LPAREN] + symbols(e.left) + [op] + symbols(e.right) + [RPAREN]


def gn(e):
    out = 1
    for i, s in enumerate(symbols(e)):
        out *= prime(i) ** sn(s)
    return out


def _symbol_of(number):
    for name, k in _SYMBOL_NUMBERS.items():
        if k == number:
            return name
    return Var(number - 5)


def _parse_symbols(seq):
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(seq):
            raise ValueError("symbol sequence ends early")
        s = seq[pos]
        pos += 1
        if isinstance(s, Var):
            return s
        if s == NEG:
            return Not(expr())
        if s != LPAREN:
            raise ValueError(f"unexpected symbol {s!r}")
        left = expr()
        if pos >= len(seq) or seq[pos] not in (OR, AND):
            raise ValueError("expected a connective")
        kind = Or if seq[pos] == OR else And
        pos += 1
        right = expr()
        if pos >= len(seq) or seq[pos] != RPAREN:
            raise ValueError("expected a closing bracket")
        pos += 1
        return kind(left, right)

    e = expr()
    if pos != len(seq):
        raise ValueError("symbols left over after the expression")
    return e


def decode_gn(x):
    """The expression numbered ``x``, or :class:`NotWellFormed`."""
    if not isinstance(x, int) or x < 2:
        return NotWellFormed("no symbols")
    seq = []
    i = 0
    while x > 1:
        k, x = strip_prime(x, prime(i))
        if k == 0:
            return NotWellFormed(f"prime {prime(i)} is missing from the product")
        seq.append(_symbol_of(k))
        i += 1
    try:
        return _parse_symbols(seq)
    except ValueError as exc:
        return NotWellFormed(str(exc))


def decode_gn_timed(x):
    """``(decode_gn(x), seconds)``: the measured cost of decoding ``x``."""
    start = time.perf_counter()
    e = decode_gn(x)
    return e, time.perf_counter() - start


# -- satisfiability -----------------------------------------------------------


def variables(e):
    if isinstance(e, Var):
        return {e.index}
    if isinstance(e, Not):
        return variables(e.arg)
    return variables(e.left) | variables(e.right)


def evaluate(e, assignment):
    """Truth value under ``assignment``, a mapping from variable index to bool."""
    if isinstance(e, Var):
        return assignment[e.index]
    if isinstance(e, Not):
        return not evaluate(e.arg, assignment)
    if isinstance(e, Or):
        return evaluate(e.left, assignment) or evaluate(e.right, assignment)
    return evaluate(e.left, assignment) and evaluate(e.right, assignment)


def truth_table(e):
    """Rows ``(assignment, value)`` with every variable false in the first row."""
    names = sorted(variables(e))
    if len(names) > MAX_VARIABLES:
        raise TooManyVariables(f"{len(names)} variables, at most {MAX_VARIABLES} allowed")
    for values in itertools.product((False, True), repeat=len(names)):
        row = dict(zip(names, values))
        yield row, evaluate(e, row)


def truth_table_sat(e):
    """``(True, assignment)`` for the first satisfying row, else ``(False, None)``."""
    for row, value in truth_table(e):
        if value:
            return True, row
    return False, None


def sat_fn(x):
    e = decode_gn(x)
    if isinstance(e, NotWellFormed):
        return 0
    return 1 if truth_table_sat(e)[0] else 0


# -- corpus -------------------------------------------------------------------


def depth(e):
    if isinstance(e, Var):
        return 0
    if isinstance(e, Not):
        return 1 + depth(e.arg)
    return 1 + max(depth(e.left), depth(e.right))


def expressions_up_to(max_depth, max_vars):
    """Every expression of at most the given depth over ``e1..e_max_vars``."""
    levels = [[Var(i) for i in range(1, max_vars + 1)]]
    for _ in range(max_depth):
        below = [e for level in levels for e in level]
        top = levels[-1]
        fresh = [Not(e) for e in top]
        for a, b in itertools.product(below, repeat=2):
            if a in top or b in top:
                fresh.append(Or(a, b))
                fresh.append(And(a, b))
        levels.append(fresh)
    return [e for level in levels for e in level]


def random_expression(rng, max_depth, max_vars):
    if max_depth == 0 or rng.random() < 0.2:
        return Var(rng.randint(1, max_vars))
    kind = rng.choice((Not, Or, And))
    if kind is Not:
        return Not(random_expression(rng, max_depth - 1, max_vars))
    return kind(random_expression(rng, max_depth - 1, max_vars), random_expression(rng, max_depth - 1, max_vars))


def corpus(max_vars=3, max_depth=3, extra=300, seed=0):
    """All expressions of depth at most 2, then ``extra`` distinct seeded deeper ones."""
    out = expressions_up_to(min(max_depth, 2), max_vars)
    if max_depth <= 2:
        return out
    seen = set(out)
    rng = random.Random(seed)
    target = len(out) + extra
    while len(out) < target:
        e = random_expression(rng, max_depth, max_vars)
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out
