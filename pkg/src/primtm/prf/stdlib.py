"""The library environment and the native twin of each definition.

The twins accept lazy naturals wherever the arithmetic allows it, so that
the accelerated evaluator can run terms over astronomically large codes.
"""

from functools import lru_cache
from importlib import resources

from ..arith import lazy as _lazy
from ..arith.codec import prime_pow, sigma2, sigma2_inv, sigma3, sigma3_inv, trunc_sub
from ..arith.lazy import (
    LazyNat,
    PrimeProduct,
    nat,
    nat_add,
    nat_cmp,
    nat_exponent,
    nat_mod,
    nat_mul,
    nat_shift_right,
    prime_product,
)
from ..arith.primes import prime, prime_index, small_factorization
from ..errors import Unmaterializable
from .terms import DefEnv, parse_env


def _bool(b):
    return 1 if b else 0


def nat_pow(x, y):
    if isinstance(y, int) and y == 0:
        return 1
    if isinstance(x, int):
        if x <= 1:
            return x
        if isinstance(y, int) and y * x.bit_length() <= _lazy.LAZY_BITS:
            return x**y
        return prime_product(1, {i: nat_mul(e, y) for i, e in small_factorization(x).items()})
    if isinstance(y, int) and isinstance(x, PrimeProduct):
        return prime_product(x.cof**y, {i: nat_mul(e, y) for i, e in x.exps})
    if isinstance(y, int) and y == 1:
        return x
    raise Unmaterializable("power of a lazy natural")


def nat_mod_total(x, y):
    if isinstance(y, int):
        return x if y == 0 else nat_mod(x, y)
    if isinstance(x, int):
        return x  # a lazy modulus exceeds any int
    if x == y:
        return 0
    raise Unmaterializable("remainder modulo a lazy natural")


def nat_div(x, y):
    if isinstance(y, int):
        if y == 0:
            return 0
        if isinstance(x, int):
            return x // y
        r = nat_mod(x, y)
        return _exact_div(nat_add(x, -r) if r else x, y)
    if isinstance(x, int):
        return 0
    if x == y:
        return 1
    raise Unmaterializable("quotient by a lazy natural")


def _exact_div(x, y):
    if isinstance(x, PrimeProduct):
        exps = dict(x.exps)
        cof = x.cof
        for i, k in small_factorization(y).items():
            p = prime(i)
            while k and cof % p == 0:
                cof //= p
                k -= 1
            if k:
                exps[i] = nat_add(exps[i], -k)
        return prime_product(cof, exps)
    v = (y & -y).bit_length() - 1
    if y >> v == 1:
        return nat_shift_right(x, v)
    raise Unmaterializable("odd division of a shift form")


def nat_divides(d, n):
    if isinstance(d, int) and d == 0:
        return _bool(n == 0)
    return _bool(nat_mod_total(n, d) == 0)


def _dcount(y, k):
    return sum(1 for d in range(1, k + 1) if y % d == 0)


@lru_cache(maxsize=4096)
def _isprime(y):
    if y < 2:
        return 0
    if y < 20_000_000:
        return _bool(prime_index(y) is not None)
    return _bool(all(y % d for d in range(2, int(y**0.5) + 1)))


def _nextprime(p):
    if p == 0:
        return 1
    q = p + 1
    while not _isprime(q):
        q += 1
    return q


def _exponent_of(n, i):
    if not isinstance(n, LazyNat) and n == 0:
        return 0
    return nat_exponent(n, i)


def _sign(x):
    return _bool(x != 0)


INTRINSICS = {
    "add": nat_add,
    "mul": nat_mul,
    "pow": nat_pow,
    "pred": lambda x: trunc_sub(x, 1),
    "sub": trunc_sub,
    "sign": _sign,
    "nsign": lambda x: _bool(x == 0),
    "le": lambda x, y: _bool(nat_cmp(x, y) <= 0),
    "lt": lambda x, y: _bool(nat_cmp(x, y) < 0),
    "eq": lambda x, y: _bool(x == y),
    "and": lambda x, y: _bool(x != 0 and y != 0),
    "or": lambda x, y: _bool(x != 0 or y != 0),
    "not": lambda x: _bool(x == 0),
    "cond": lambda t, x, y: x if t != 0 else y,
    "mod": nat_mod_total,
    "div": nat_div,
    "divides": nat_divides,
    "dcount": _dcount,
    "isprime": _isprime,
    "nextprime": _nextprime,
    "prime": prime,
    "prime_pow": lambda i, e: prime_pow(i, e),
    "exponent_of": _exponent_of,
    "sigma2": lambda x, y: nat(sigma2(x, y)),
    "sigma2_x": lambda z: sigma2_inv(z)[0],
    "sigma2_y": lambda z: sigma2_inv(z)[1],
    "sigma3": lambda x, y, z: nat(sigma3(x, y, z)),
    "sigma3_1": lambda w: sigma3_inv(w)[0],
    "sigma3_2": lambda w: sigma3_inv(w)[1],
    "sigma3_3": lambda w: sigma3_inv(w)[2],
}


def stdlib_source():
    return resources.files(__package__).joinpath("stdlib.prf").read_text()


@lru_cache(maxsize=1)
def _library():
    env = parse_env(stdlib_source())
    missing = set(env) ^ set(INTRINSICS)
    if missing:
        raise RuntimeError(f"library and intrinsics disagree on {sorted(missing)}")
    env.intrinsics.update(INTRINSICS)
    return env


def stdlib(env=None):
    """A new environment holding ``env``'s definitions plus the library."""
    lib = _library()
    if env is None:
        return DefEnv(lib)
    out = DefEnv(lib)
    for name, term in env.items():
        out.define(name, term, env.intrinsics.get(name))
    return out


STDLIB_NAMES = tuple(INTRINSICS)
