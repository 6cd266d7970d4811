"""Gödel numbers of tapes, configurations and machines, and the machine file format."""

import re

from ..arith.codec import sigma2, sigma2_inv, sigma3, sigma3_inv
from ..arith.lazy import LazyNat, PrimeProduct, nat_add, prime_product
from ..arith.primes import small_factorization
from ..errors import MalformedConfig, MalformedMachine, ParseError, Unmaterializable
from .machine import LEFT, RIGHT, Action, Configuration, TmSpec, Write


def encode_tape(cfg):
    """``prod prime(j) ** beta(j)`` over occupied cells."""
    return prime_product(1, dict(cfg.beta))


def decode_tape(b):
    """Occupied cells of a tape code, as ``{index: symbol}``."""
    if isinstance(b, PrimeProduct):
        if b.cof != 1:
            exps = dict(small_factorization(b.cof))
            for i, e in b.exps:
                exps[i] = nat_add(exps.get(i, 0), e)
        else:
            exps = dict(b.exps)
        return exps
    if isinstance(b, LazyNat):
        raise MalformedConfig("tape code is not a product of prime powers")
    if b < 1:
        raise MalformedConfig("tape code must be positive")
    try:
        return small_factorization(b)
    except OverflowError:
        raise MalformedConfig("tape code has a prime factor beyond the sieve") from None


def encode_config(cfg):
    return sigma3(cfg.a, encode_tape(cfg), cfg.c)


def decode_config(w, spec):
    try:
        a, b, c = sigma3_inv(w)
    except (Unmaterializable, ValueError) as exc:
        raise MalformedConfig(f"not a configuration code: {exc}") from None
    if isinstance(a, LazyNat) or isinstance(c, LazyNat):
        raise MalformedConfig("head position or state is astronomically large")
    if not 1 <= c <= spec.M:
        raise MalformedConfig(f"state {c} outside 1..{spec.M}")
    beta = decode_tape(b)
    for j, s in beta.items():
        if isinstance(s, LazyNat) or not 1 <= s <= spec.N:
            raise MalformedConfig(f"cell {j} holds symbol {s} outside 1..{spec.N}")
    return Configuration.make(a, beta, c)


def action_code(act, N):
    if act.kind == "W":
        return act.symbol
    return N + 1 if act.kind == "L" else N + 2


def action_from_code(code, N):
    if code <= N:
        return Write(code)
    if code == N + 1:
        return LEFT
    if code == N + 2:
        return RIGHT
    raise MalformedMachine(f"action code {code} exceeds {N + 2}")


def entry_code(q, sym, act, nxt, N):
    return sigma2(sigma2(q - 1, sym), sigma2(action_code(act, N), nxt - 1))


def godel_number(spec):
    """``sigma3(M, N, prod_k prime(k) ** (1 + e_k))`` over entries sorted by (state, symbol)."""
    exps = {}
    for k, ((q, sym), (act, nxt)) in enumerate(sorted(spec.delta.items())):
        exps[k] = nat_add(entry_code(q, sym, act, nxt, spec.N), 1)
    return sigma3(spec.M, spec.N, prime_product(1, exps))


def decode_machine(t):
    try:
        M, N, prod = sigma3_inv(t)
    except (Unmaterializable, ValueError) as exc:
        raise MalformedMachine(f"not a machine code: {exc}") from None
    if isinstance(M, LazyNat) or isinstance(N, LazyNat) or M < 1 or N < 1:
        raise MalformedMachine("state or alphabet count out of range")
    if isinstance(prod, PrimeProduct):
        if prod.cof != 1:
            raise MalformedMachine("transition product has a stray factor")
        exps = dict(prod.exps)
    elif isinstance(prod, LazyNat) or prod < 1:
        raise MalformedMachine("transition product is not a prime product")
    else:
        exps = small_factorization(prod)
    if sorted(exps) != list(range(len(exps))):
        raise MalformedMachine("transition primes are not consecutive")
    delta = {}
    for k in range(len(exps)):
        e = nat_add(exps[k], -1)
        if isinstance(e, int) and e < 0:
            raise MalformedMachine("zero exponent")
        try:
            head, tail = sigma2_inv(e)
            q0, sym = sigma2_inv(head)
            code, nxt0 = sigma2_inv(tail)
        except (Unmaterializable, ValueError) as exc:
            raise MalformedMachine(f"entry {k} does not decode: {exc}") from None
        if any(isinstance(v, LazyNat) for v in (q0, sym, code, nxt0)):
            raise MalformedMachine(f"entry {k} has an astronomically large field")
        if (q0 + 1, sym) in delta:
            raise MalformedMachine(f"duplicate entry for {(q0 + 1, sym)}")
        delta[(q0 + 1, sym)] = (action_from_code(code, N), nxt0 + 1)
    if list(delta) != sorted(delta):
        raise MalformedMachine("entries are not in canonical order")
    return TmSpec(M, N, delta)


# -- file format -------------------------------------------------------------

_DELTA = re.compile(r"(\d+)\s+(\d+)\s*->\s*(?:(W)\s+(\d+)|([LR]))\s+(\d+)$")


def format_machine(spec):
    lines = []
    if spec.name:
        lines.append(f"# {spec.name}")
    lines += [f"states: {spec.M}", f"alphabet: {spec.N}", "start: 1"]
    for (q, sym), (act, nxt) in spec.delta.items():
        lines.append(f"delta: {q} {sym} -> {act} {nxt}")
    return "\n".join(lines) + "\n"


def parse_machine(text, name=None):
    M = N = None
    delta = {}
    offset = 0
    for line in text.splitlines(keepends=True):
        pos = offset
        offset += len(line)
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, rest = body.partition(":")
        rest = rest.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', got {body!r}", pos)
        key = key.strip()
        if key in ("states", "alphabet", "start"):
            if not rest.isdigit():
                raise ParseError(f"{key} needs a number", pos)
            if key == "states":
                M = int(rest)
            elif key == "alphabet":
                N = int(rest)
            elif int(rest) != 1:
                raise ParseError("the start state must be 1", pos)
        elif key == "delta":
            m = _DELTA.match(rest)
            if not m:
                raise ParseError(f"bad transition {rest!r}", pos)
            q, sym, w, j, move, nxt = m.groups()
            act = Write(int(j)) if w else (LEFT if move == "L" else RIGHT)
            k = (int(q), int(sym))
            if k in delta:
                raise ParseError(f"second transition for {k}", pos)
            delta[k] = (act, int(nxt))
        else:
            raise ParseError(f"unknown key {key!r}", pos)
    if M is None or N is None:
        raise ParseError("missing 'states' or 'alphabet'", len(text))
    return TmSpec(M, N, delta, name=name)


__all__ = [
    "Action",
    "decode_config",
    "decode_machine",
    "decode_tape",
    "encode_config",
    "encode_tape",
    "format_machine",
    "godel_number",
    "parse_machine",
]
