"""Step counts and primitive recursive bounds on them.

Bounds are terms: constants for the zero machine, fitted linear terms for
the copy-based machines, and the composition and recursion rules that
combine bounds of the parts into a bound for the whole.
"""

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import ArityMismatch, FitFailed, NotPrimitiveRecursive
from .prf.build import const, fn
from .prf.evaluate import eval_fast
from .prf.stdlib import stdlib
from .prf.terms import Comp, Kind, Proj, Rec, Ref, arity_check, classify
from .tm.builders import projection_machine, successor_machine, zero_machine
from .tm.machine import DEFAULT_MAX_STEPS, encode_args, simulate


class Provenance(enum.Enum):
    MEASURED_FIT = "Measured-fit"
    COMPOSITION_RULE = "Composition-rule"
    RECURSION_RULE = "Recursion-rule"
    CONSTANT = "Constant"


@dataclass(frozen=True)
class TauBound:
    term: object
    provenance: Provenance
    arity: int
    slope: int = 0
    intercept: int = 0


def measure_steps(spec, xs, max_steps=DEFAULT_MAX_STEPS):
    # only the count is needed, so skip reading the output back
    return simulate(spec, encode_args(xs), max_steps)[1]


def _args(n):
    return [f"x{i}" for i in range(1, n + 1)]


def _sum_expr(names):
    expr = names[0]
    for name in names[1:]:
        expr = ("add", expr, name)
    return expr


def linear_term(n, slope, intercept, offset=0):
    """``slope * (x1 + ... + xn + offset) + intercept`` as an n-ary term."""
    size = _sum_expr(_args(n))
    if offset:
        size = ("add", size, offset)
    return fn(_args(n), ("add", ("mul", slope, size), intercept))


def fit_linear(points, max_doublings=40):
    """Fit ``slope * size + intercept`` through the two smallest sizes, then
    double the slope until it dominates every ``(size, steps)`` point."""
    by_size = {}
    for size, steps in points:
        by_size[size] = max(steps, by_size.get(size, 0))
    sizes = sorted(by_size)
    if len(sizes) < 2:
        raise FitFailed("a linear fit needs measurements at two sizes")
    s0, s1 = sizes[0], sizes[1]
    slope = max(1, -(-(by_size[s1] - by_size[s0]) // (s1 - s0)))
    for _ in range(max_doublings):
        intercept = max(0, by_size[s0] - slope * s0)
        if all(slope * s + intercept >= m for s, m in by_size.items()):
            return slope, intercept
        slope *= 2
    raise FitFailed(f"no slope up to {slope} dominates the sweep")


def default_sweep(n, limit=30):
    """Argument tuples with every component and the sum at most ``limit``."""
    return [xs for xs in itertools.product(range(limit + 1), repeat=n) if sum(xs) <= limit]


def _initial_machine(which):
    if which == "Z":
        return zero_machine(), 1
    if which == "S":
        return successor_machine(), 1
    if which.startswith("P"):
        try:
            n, i = (int(v) for v in which[1:].split(","))
        except ValueError:
            raise ValueError(f"projection must look like P3,1, got {which!r}") from None
        return projection_machine(n, i), n
    raise ValueError(f"unknown initial function {which!r}")


def tau_initial(which, sweep=None):
    """Step bound for ``"Z"``, ``"S"`` or ``"Pn,i"``.

    S is measured against its argument value and a projection against the
    total length of its words, ``sum(x) + n``.
    """
    spec, n = _initial_machine(which)
    if which == "Z":
        return TauBound(const(3, 1), Provenance.CONSTANT, 1, 0, 3)
    sweep = default_sweep(n) if sweep is None else sweep
    offset = n if which.startswith("P") else 0
    points = [(sum(xs) + offset, measure_steps(spec, xs)) for xs in sweep]
    slope, intercept = fit_linear(points)
    return TauBound(linear_term(n, slope, intercept, offset), Provenance.MEASURED_FIT, n, slope, intercept)


def _pr_arity(term, env, label):
    n = arity_check(term, env, path=(label,))
    if classify(term, env) is not Kind.PRIMITIVE_RECURSIVE:
        raise NotPrimitiveRecursive(f"{label} must be primitive recursive")
    return n


def tau_compose(tauG, tauHs, Hs, env=None):
    """``tau_F(x) = tau_G(H1(x), ..., Hm(x)) + sum_i tau_Hi(x)``."""
    env = env or stdlib()
    Hs = list(Hs)
    tauHs = list(tauHs)
    m = _pr_arity(tauG.term, env, "tau_G")
    if not Hs or len(Hs) != m or len(tauHs) != m:
        raise ArityMismatch(f"tau_G takes {m} arguments, got {len(Hs)} functions and {len(tauHs)} bounds", ("H",))
    n = arity_check(Hs[0], env, path=("H1",))
    for k, (h, th) in enumerate(zip(Hs, tauHs), 1):
        if arity_check(h, env, path=(f"H{k}",)) != n:
            raise ArityMismatch(f"H{k} is not {n}-ary", (f"H{k}",))
        if _pr_arity(th.term, env, f"tau_H{k}") != n:
            raise ArityMismatch(f"tau_H{k} is not {n}-ary", (f"tau_H{k}",))
    term = Comp(tauG.term, Hs)
    for th in tauHs:
        term = Comp(Ref("add"), [term, th.term])
    return TauBound(term, Provenance.COMPOSITION_RULE, n)


def tau_recursion(tauG, tauH, F, env=None):
    """``tau_F(x.., x) = tau_G(x..) + sum_{y < x} tau_H(x.., y, F(x.., y))``."""
    env = env or stdlib()
    n = _pr_arity(tauG.term, env, "tau_G")
    if _pr_arity(tauH.term, env, "tau_H") != n + 2:
        raise ArityMismatch(f"tau_H must take {n + 2} arguments", ("tau_H",))
    if arity_check(F, env, path=("F",)) != n + 1:
        raise ArityMismatch(f"F must take {n + 1} arguments", ("F",))
    k = n + 2
    head = [Proj(k, j) for j in range(1, n + 2)]
    # h(x.., y, acc) = acc + tau_H(x.., y, F(x.., y))
    step = Comp(Ref("add"), [Proj(k, k), Comp(tauH.term, head + [Comp(F, head)])])
    return TauBound(Rec(tauG.term, step), Provenance.RECURSION_RULE, n + 1)


@dataclass(frozen=True)
class BoundRow:
    args: tuple
    measured: int
    bound: object

    @property
    def ok(self):
        return self.measured <= self.bound

    def line(self):
        args = " ".join(str(x) for x in self.args)
        return f"{args}  {self.measured}  {self.bound}  {'OK' if self.ok else 'VIOLATION'}"


@dataclass(frozen=True)
class BoundReport:
    rows: tuple

    @property
    def violations(self):
        return [row for row in self.rows if not row.ok]

    def text(self):
        lines = [row.line() for row in self.rows]
        lines.append(f"violations: {len(self.violations)} of {len(self.rows)}")
        return "\n".join(lines) + "\n"


def check_bound(spec, B, samples, env=None, jobs=1, max_steps=DEFAULT_MAX_STEPS):
    """Compare measured steps with ``B`` on every sample."""
    env = env or stdlib()
    _pr_arity(B, env, "B")

    def row(xs):
        xs = tuple(xs)
        return BoundRow(xs, measure_steps(spec, xs, max_steps), eval_fast(B, list(xs), env))

    samples = list(samples)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            rows = list(pool.map(row, samples))
    else:
        rows = [row(xs) for xs in samples]
    return BoundReport(tuple(rows))
