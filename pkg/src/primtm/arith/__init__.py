"""Exact natural-number arithmetic and the pairing/prime encodings."""

from .codec import (
    exponent_of,
    prime_pow,
    sigma2,
    sigma2_inv,
    sigma3,
    sigma3_inv,
    trunc_sub,
)
from .lazy import (
    OffsetProduct,
    LazyNat,
    PrimeProduct,
    ShiftForm,
    decimal_digits,
    format_nat,
    is_lazy,
    nat,
    nat_cmp,
    nat_eq,
    nat_mod,
    parse_nat,
)
from .primes import prime, prime_index, small_factorization, strip_prime

__all__ = [
    "LazyNat",
    "OffsetProduct",
    "PrimeProduct",
    "ShiftForm",
    "decimal_digits",
    "exponent_of",
    "format_nat",
    "is_lazy",
    "nat",
    "nat_cmp",
    "nat_eq",
    "nat_mod",
    "parse_nat",
    "prime",
    "prime_index",
    "prime_pow",
    "sigma2",
    "sigma2_inv",
    "sigma3",
    "sigma3_inv",
    "small_factorization",
    "strip_prime",
    "trunc_sub",
]
