import itertools
import random

import pytest

from primtm.complexity import (
    Provenance,
    TauBound,
    check_bound,
    default_sweep,
    fit_linear,
    measure_steps,
    tau_compose,
    tau_initial,
    tau_recursion,
)
from primtm.errors import ArityMismatch, FitFailed, NonTermination
from primtm.prf import Kind, P, S, classify, const, eval_fast, fn, stdlib
from primtm.tm import TmSpec, Write, projection_machine, run, successor_machine, zero_machine

ENV = stdlib()


def bound(params, body):
    term = fn(params, body)
    return TauBound(term, Provenance.CONSTANT, len(params))


def test_measure_steps_examples():
    assert measure_steps(zero_machine(), [4]) == 3
    k0 = measure_steps(successor_machine(), [0])
    k1 = measure_steps(successor_machine(), [1])
    assert k1 >= k0
    p = projection_machine(2, 2)
    assert measure_steps(p, [3, 3]) == measure_steps(p, [3, 3]) == run(p, [3, 3]).steps
    spin = TmSpec(1, 1, {(1, 0): (Write(0), 1)})
    with pytest.raises(NonTermination):
        measure_steps(spin, [0], max_steps=100)


def test_tau_zero_is_exactly_three():
    tz = tau_initial("Z")
    assert tz.provenance is Provenance.CONSTANT
    for x in range(21):
        assert eval_fast(tz.term, [x], ENV) == 3 == measure_steps(zero_machine(), [x])


def test_tau_successor_dominates_its_sweep():
    ts = tau_initial("S")
    assert ts.provenance is Provenance.MEASURED_FIT
    assert classify(ts.term, ENV) is Kind.PRIMITIVE_RECURSIVE
    for x in range(31):
        assert measure_steps(successor_machine(), [x]) <= eval_fast(ts.term, [x], ENV)


@pytest.mark.parametrize("which, n", [("P1,1", 1), ("P2,1", 2), ("P2,2", 2), ("P3,1", 3), ("P3,2", 3), ("P3,3", 3)])
def test_tau_projection_dominates_its_sweep(which, n):
    tp = tau_initial(which)
    i = int(which.split(",")[1])
    spec = projection_machine(n, i)
    for xs in itertools.product(range(6), repeat=n):
        assert measure_steps(spec, xs) <= eval_fast(tp.term, list(xs), ENV)


def test_fit_linear_doubles_until_dominating():
    # quadratic data: the two-point slope is 1 and the sweep forces doublings
    points = [(s, s * s + 2) for s in range(10)]
    slope, intercept = fit_linear(points)
    assert slope > 1 and slope & (slope - 1) == 0
    assert all(slope * s + intercept >= m for s, m in points)
    assert fit_linear([(0, 4), (1, 6), (2, 8)]) == (2, 4)
    with pytest.raises(FitFailed):
        fit_linear([(0, 1)])
    with pytest.raises(FitFailed):
        fit_linear([(0, 0), (1, 1), (2, 10**40)], max_doublings=3)


def test_unknown_initial_function():
    with pytest.raises(ValueError):
        tau_initial("Q")
    with pytest.raises(ValueError):
        tau_initial("P3")


# -- composition rule ---------------------------------------------------------


def test_compose_example():
    tg = bound(["u"], "u")
    th = bound(["x"], 2)
    tf = tau_compose(tg, [th], [P(1, 1)], ENV)
    assert tf.provenance is Provenance.COMPOSITION_RULE
    assert eval_fast(tf.term, [5], ENV) == 7
    assert classify(tf.term, ENV) is Kind.PRIMITIVE_RECURSIVE


def test_compose_with_zero_costs_is_plain_composition():
    tg = bound(["u", "v"], ("mul", "u", "v"))
    zero = bound(["x"], 0)
    H = [S, fn(["x"], ("add", "x", 3))]
    tf = tau_compose(tg, [zero, zero], H, ENV)
    for x in range(10):
        assert eval_fast(tf.term, [x], ENV) == (x + 1) * (x + 3)


def test_compose_matches_unrolled_recurrence():
    rng = random.Random(11)
    tg = bound(["u", "v"], ("add", ("mul", 2, "u"), "v"))
    th1 = bound(["x", "y"], ("add", "x", 4))
    th2 = bound(["x", "y"], ("mul", "y", "y"))
    H1 = fn(["x", "y"], ("add", "x", "y"))
    H2 = fn(["x", "y"], ("mul", 3, "x"))
    tf = tau_compose(tg, [th1, th2], [H1, H2], ENV)

    def oracle(x, y):
        h1, h2 = x + y, 3 * x
        return (2 * h1 + h2) + (x + 4) + (y * y)

    for _ in range(12):
        x, y = rng.randrange(15), rng.randrange(15)
        assert eval_fast(tf.term, [x, y], ENV) == oracle(x, y)


def test_compose_arity_errors():
    tg = bound(["u", "v"], "u")
    with pytest.raises(ArityMismatch):
        tau_compose(tg, [bound(["x"], 1)], [S], ENV)
    with pytest.raises(ArityMismatch):
        tau_compose(tg, [bound(["x"], 1), bound(["x", "y"], 1)], [S, S], ENV)


# -- recursion rule -----------------------------------------------------------


def test_recursion_base_case_is_tau_g():
    tg = bound(["a"], ("add", ("mul", 3, "a"), 1))
    th = bound(["a", "y", "f"], ("add", "f", "y"))
    F = fn(["a", "y"], ("mul", "a", "y"))
    tf = tau_recursion(tg, th, F, ENV)
    assert tf.provenance is Provenance.RECURSION_RULE and tf.arity == 2
    for a in range(10):
        assert eval_fast(tf.term, [a, 0], ENV) == eval_fast(tg.term, [a], ENV)


def test_recursion_with_constant_step_cost():
    tg = bound(["a"], ("add", "a", 2))
    th = bound(["a", "y", "f"], 5)
    F = fn(["a", "y"], ("add", "a", "y"))
    tf = tau_recursion(tg, th, F, ENV)
    rng = random.Random(3)
    for _ in range(12):
        a, x = rng.randrange(20), rng.randrange(20)
        assert eval_fast(tf.term, [a, x], ENV) == a + 2 + 5 * x


def test_recursion_matches_unrolled_sum():
    tg = bound(["a"], ("mul", 2, "a"))
    th = bound(["a", "y", "f"], ("add", ("mul", "a", "y"), "f"))
    F = fn(["a", "y"], ("add", ("mul", "y", "y"), "a"))
    tf = tau_recursion(tg, th, F, ENV)
    assert classify(tf.term, ENV) is Kind.PRIMITIVE_RECURSIVE

    def oracle(a, x):
        total = 2 * a
        for y in range(x):
            total += a * y + (y * y + a)
        return total

    for a in range(4):
        for x in range(7):
            assert eval_fast(tf.term, [a, x], ENV) == oracle(a, x)


def test_recursion_arity_errors():
    tg = bound(["a"], "a")
    with pytest.raises(ArityMismatch):
        tau_recursion(tg, bound(["a", "y"], 1), fn(["a", "y"], "a"), ENV)
    with pytest.raises(ArityMismatch):
        tau_recursion(tg, bound(["a", "y", "f"], 1), S, ENV)


# -- bound checking -----------------------------------------------------------


def test_check_bound_examples():
    report = check_bound(zero_machine(), const(3, 1), [(x,) for x in range(21)])
    assert report.violations == []
    assert report.text().splitlines()[-1] == "violations: 0 of 21"
    assert report.text().splitlines()[0] == "0  3  3  OK"

    ts = tau_initial("S")
    assert check_bound(successor_machine(), ts.term, [(x,) for x in range(31)], jobs=4).violations == []

    bad = check_bound(successor_machine(), const(1, 1), [(x,) for x in range(10)])
    assert len(bad.violations) == 10
    assert bad.rows[0].line().endswith("VIOLATION")


def test_default_sweep():
    sweep = default_sweep(2, 4)
    assert (4, 0) in sweep and (3, 2) not in sweep
    assert len(default_sweep(3)) == 5456
