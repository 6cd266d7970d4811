"""Pairing functions and prime-power decoding.

``sigma2(x, y) = 2**x * (2*y + 1) - 1`` is a bijection from pairs of
naturals onto the naturals; ``sigma3`` nests it.  Inverses read the
factorisation of ``z + 1`` directly rather than searching.
"""

from ..errors import ZeroInput
from . import lazy as _lazy
from .lazy import (
    LazyNat,
    nat_add,
    nat_exponent,
    nat_mul,
    nat_shift_right,
    nat_val2,
    prime_product,
    shift_form,
)
from .primes import prime


def trunc_sub(x, y):
    """``max(x - y, 0)``."""
    if isinstance(x, LazyNat) or isinstance(y, LazyNat):
        if not isinstance(y, LazyNat):
            return nat_add(x, -y)
        if x == y:
            return 0
        if not isinstance(x, LazyNat):
            return 0
        return x - y  # raises Unmaterializable unless equal
    return x - y if x > y else 0


def exponent_of(n, i):
    """Largest ``e`` such that ``prime(i) ** e`` divides ``n``."""
    if not isinstance(n, LazyNat) and n == 0:
        raise ZeroInput("exponent_of is undefined at 0")
    return nat_exponent(n, i)


def prime_pow(i, e):
    return prime_product(1, {i: e})


def sigma2(x, y):
    if isinstance(x, int) and isinstance(y, int) and x + y.bit_length() < _lazy.LAZY_BITS:
        return ((2 * y + 1) << x) - 1
    return shift_form(x, nat_add(nat_mul(y, 2), 1), -1)


def sigma2_inv(z):
    """The unique ``(x, y)`` with ``sigma2(x, y) == z``."""
    u = nat_add(z, 1)
    x = nat_val2(u)
    odd = nat_shift_right(u, x)
    return x, nat_shift_right(nat_add(odd, -1), 1)


def sigma3(x, y, z):
    return sigma2(sigma2(x, y), z)


def sigma3_inv(w):
    xy, z = sigma2_inv(w)
    x, y = sigma2_inv(xy)
    return x, y, z


__all__ = [
    "prime",
    "trunc_sub",
    "exponent_of",
    "prime_pow",
    "sigma2",
    "sigma2_inv",
    "sigma3",
    "sigma3_inv",
]
