"""Primitive recursive and mu-recursive terms: syntax, evaluation, library."""

from .build import bounded_search, const, corollary_substitute, fn
from .evaluate import DEFAULT_BUDGET, eval_fast, eval_honest
from .stdlib import INTRINSICS, STDLIB_NAMES, stdlib
from .terms import (
    C,
    P,
    S,
    Z,
    BoundedMu,
    Comp,
    DefEnv,
    Kind,
    Mu,
    PrTerm,
    Proj,
    Rec,
    Ref,
    Succ,
    Zero,
    arity_check,
    classify,
    format_env,
    format_term,
    parse_env,
    parse_term,
    size,
)

__all__ = [
    "C", "P", "S", "Z", "BoundedMu", "Comp", "DefEnv", "Kind", "Mu", "PrTerm",
    "Proj", "Rec", "Ref", "Succ", "Zero", "arity_check", "classify",
    "format_env", "format_term", "parse_env", "parse_term", "size",
    "DEFAULT_BUDGET", "eval_fast", "eval_honest", "INTRINSICS", "STDLIB_NAMES",
    "stdlib", "bounded_search", "const", "corollary_substitute", "fn",
]
