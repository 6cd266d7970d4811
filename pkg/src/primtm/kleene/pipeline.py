"""Normal form by simulation: the configuration sequence, T, U and the search for y.

``kfun(t, xs, z)`` is the code of the z-th configuration of machine ``t`` on
``xs``; after the terminal configuration the sequence stays put.  ``t_pred``
accepts exactly the pairs ``sigma2(r, kfun(t, xs, r))`` whose configuration
is terminal, so the least accepted ``y`` is the one built from the first
terminal step.
"""

import random
import threading
from collections import OrderedDict
from dataclasses import dataclass

from ..arith import lazy as _lazy
from ..arith.codec import sigma2, sigma2_inv, sigma3_inv
from ..arith.lazy import LazyNat, nat_cmp
from ..arith.primes import prime
from ..errors import BudgetExceeded, MalformedConfig, NoOutputNumeral, Unmaterializable, WitnessRefuted
from ..tm.encode import decode_machine, decode_tape, encode_config, encode_tape
from ..tm.machine import DEFAULT_MAX_STEPS, Configuration, Tape, cell_index, cell_offset, encode_args

_CACHE_SIZE = 64
_lock = threading.Lock()
_machines = OrderedDict()
_runs = OrderedDict()


def _remember(cache, key, make):
    with _lock:
        if key in cache:
            cache.move_to_end(key)
            return cache[key]
    value = make()
    with _lock:
        cache[key] = value
        while len(cache) > _CACHE_SIZE:
            cache.popitem(last=False)
    return value


def machine_of(t):
    return _remember(_machines, t, lambda: decode_machine(t))


class _Run:
    """Configuration codes of one computation, extended on demand."""

    def __init__(self, spec, xs):
        self.spec = spec
        self.tape = Tape(encode_args(xs))
        self.codes = [encode_config(self.tape.snapshot())]
        self.halted = self._terminal()
        self.lock = threading.Lock()

    def _terminal(self):
        return (self.tape.state, self.tape.cells.get(self.tape.pos, 0)) not in self.spec.delta

    def code(self, z, max_steps=DEFAULT_MAX_STEPS):
        with self.lock:
            while not self.halted and (isinstance(z, LazyNat) or z >= len(self.codes)):
                if len(self.codes) > max_steps:
                    raise BudgetExceeded(f"machine still running after {max_steps} steps")
                self._advance()
            if isinstance(z, LazyNat) or z >= len(self.codes):
                return self.codes[-1]
            return self.codes[z]

    def _advance(self):
        tape = self.tape
        act, nxt = self.spec.delta[(tape.state, tape.cells.get(tape.pos, 0))]
        if act.kind == "R":
            tape.pos += 1
        elif act.kind == "L":
            tape.pos -= 1
        elif act.symbol:
            tape.cells[tape.pos] = act.symbol
        else:
            tape.cells.pop(tape.pos, None)
        tape.state = nxt
        self.codes.append(encode_config(tape.snapshot()))
        self.halted = self._terminal()

    @property
    def steps(self):
        return len(self.codes) - 1


def _run_of(t, xs):
    xs = tuple(xs)
    return _remember(_runs, (t, xs), lambda: _Run(machine_of(t), xs))


def kfun(t, xs, z, max_steps=DEFAULT_MAX_STEPS):
    """Code of the z-th configuration; frozen once the machine halts."""
    return _run_of(t, xs).code(z, max_steps)


def is_terminal(spec, cfg):
    return (cfg.c, cfg.tape.get(cfg.a, 0)) not in spec.delta


def decode_loose(w):
    """Configuration from a code without checking it against a machine."""
    try:
        a, b, c = sigma3_inv(w)
    except (Unmaterializable, ValueError) as exc:
        raise MalformedConfig(f"not a configuration code: {exc}") from None
    if isinstance(a, LazyNat) or isinstance(c, LazyNat):
        raise MalformedConfig("head position or state is astronomically large")
    beta = decode_tape(b)
    if any(isinstance(v, LazyNat) or v < 1 for v in beta.values()):
        raise MalformedConfig("tape code has an astronomically large exponent")
    return Configuration.make(a, beta, c)


def t_pred(t, xs, y):
    """1 iff ``y = sigma2(r, kfun(t, xs, r))`` with a terminal configuration."""
    try:
        r, s = sigma2_inv(y)
        if not (s == kfun(t, xs, r)):
            return 0
        return 1 if is_terminal(machine_of(t), decode_loose(s)) else 0
    except (MalformedConfig, Unmaterializable):
        return 0


def output_value(cfg):
    """Strokes in the block left of the head, minus one."""
    tape = cfg.tape
    pos = cell_offset(cfg.a)
    k = 0
    while tape.get(cell_index(pos - 1 - k), 0) == 1:
        k += 1
    if k == 0:
        raise NoOutputNumeral("the cell left of the head is blank")
    return k - 1


def u_extract(y):
    _, s = sigma2_inv(y)
    return output_value(decode_loose(s))


@dataclass(frozen=True)
class Witness:
    r: int
    s: object
    y: object


def sample_below(rng, ystar, width=4096):
    """A ``y < ystar`` drawn as a uniform natural would be, component by component.

    For uniform ``y`` the first component ``val2(y + 1)`` is geometric and the
    second is uniform once the first is fixed.  When ``ystar`` is too large
    to hold, the second component is drawn uniformly from ``width``-bit
    numbers instead of from its full astronomically large range.
    """
    if isinstance(ystar, int):
        return rng.randrange(ystar) if ystar > 0 else None
    r = 0
    while rng.random() < 0.5:
        r += 1
    y = sigma2(r, rng.getrandbits(width))
    try:
        return y if nat_cmp(y, ystar) < 0 else None
    except Unmaterializable:
        return None


def adversarial_below(t, xs, wit):
    """Near misses of the witness: other steps and perturbed codes."""
    out = []
    for r in range(wit.r):
        out.append(sigma2(r, kfun(t, xs, r)))
    if wit.r:
        out.append(sigma2(wit.r - 1, wit.s))
    for delta in (1, 2, 3):
        try:
            out.append(sigma2(wit.r, _lazy.nat_add(wit.s, -delta)))
        except (Unmaterializable, ValueError):
            pass
    try:
        out.append(_lazy.nat_add(wit.y, -1))
    except Unmaterializable:
        pass
    return out


def mu_search(t, xs, mode="witness", budget=10**6, samples=200, seed=0, max_steps=DEFAULT_MAX_STEPS):
    """Least ``y`` with ``t_pred(t, xs, y) = 1``.

    ``mode="linear"`` scans y = 0, 1, 2, ... and gives up after ``budget``
    candidates.  ``mode="witness"`` builds y from the simulation and checks
    it: T holds at y, fails at every earlier configuration pair, and fails at
    sampled and perturbed smaller values.  Minimality is structural, since
    T(y) = 1 forces ``y = sigma2(r, kfun(r))`` with a terminal configuration,
    and the first such r gives the smallest y because sigma2 grows in both
    arguments and ``kfun`` is frozen from then on.
    """
    if mode == "linear":
        for y in range(budget + 1):
            if t_pred(t, xs, y):
                r, s = sigma2_inv(y)
                return Witness(r, s, y)
        raise BudgetExceeded(f"no y up to {budget} satisfies T")
    if mode != "witness":
        raise ValueError(f"unknown search mode {mode!r}")
    run = _run_of(t, xs)
    run.code(max_steps, max_steps)
    if not run.halted:
        raise BudgetExceeded(f"machine still running after {max_steps} steps")
    r = run.steps
    s = run.codes[-1]
    wit = Witness(r, s, sigma2(r, s))
    if t_pred(t, xs, wit.y) != 1:
        raise WitnessRefuted(f"T rejects the simulated witness at r={r}")
    for y in adversarial_below(t, xs, wit):
        if t_pred(t, xs, y) != 0:
            raise WitnessRefuted(f"T accepts a smaller value {_lazy.format_nat(y)[:80]}")
    rng = random.Random(seed)
    checked = 0
    attempts = 0
    while checked < samples and attempts < samples * 20:
        attempts += 1
        y = sample_below(rng, wit.y)
        if y is None:
            continue
        if t_pred(t, xs, y) != 0:
            raise WitnessRefuted(f"T accepts a sampled smaller value {_lazy.format_nat(y)[:80]}")
        checked += 1
    if checked < min(samples, _count_below(wit.y)):
        raise WitnessRefuted(f"only {checked} of {samples} smaller samples could be drawn")
    return wit


def _count_below(y):
    return y if isinstance(y, int) else float("inf")


def theorem_b0_eval(t, xs, mode="witness", **kw):
    return u_extract(mu_search(t, xs, mode, **kw).y)


# -- numeric bounds on a run ---------------------------------------------------


@dataclass(frozen=True)
class Prop1Bounds:
    a_max: int
    cells_max: int
    b_max: int
    c_max: int


def initial_span(cfg):
    """Largest physical distance from cell 0 of the head or any occupied cell."""
    return max([abs(cell_offset(cfg.a))] + [abs(cell_offset(j)) for j, _ in cfg.beta])


def prop1_bounds(spec, xs, r):
    """Bounds after at most ``r`` steps: head index, occupied cells, tape code, state."""
    first = encode_args(xs)
    reach = initial_span(first) + r
    a_max = 2 * reach
    b_max = 1
    for j in range(a_max + 1):
        b_max *= prime(j) ** spec.N
    return Prop1Bounds(a_max, len(first.beta) + r, b_max, spec.M)


def check_prop1(spec, xs, trace):
    """Violations of the bounds along a recorded trace (empty when all hold)."""
    first = encode_args(xs)
    span = initial_span(first)
    bad = []
    b_max, covered = 1, -1
    for k, cfg in enumerate(trace):
        a_max = 2 * (span + k)
        for j in range(covered + 1, a_max + 1):
            b_max *= prime(j) ** spec.N
        covered = a_max
        bd = Prop1Bounds(a_max, len(first.beta) + k, b_max, spec.M)
        if cfg.a > bd.a_max:
            bad.append((k, "a", cfg.a, bd.a_max))
        if len(cfg.beta) > bd.cells_max:
            bad.append((k, "cells", len(cfg.beta), bd.cells_max))
        if encode_tape(cfg) > bd.b_max:
            bad.append((k, "b", "encode_tape", "b_max"))
        if cfg.c > bd.c_max:
            bad.append((k, "c", cfg.c, bd.c_max))
    return bad
