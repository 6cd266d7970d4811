"""Single-tape quadruple machines over a two-way infinite tape.

Each step performs exactly one action: write a symbol, move left or move
right.  A machine halts when its transition table has no entry for the
current (state, scanned symbol).  Cells are addressed by a physical offset
from the anchor cell 0 and numbered 0, 2, 4, ... to the right and 1, 3,
5, ... to the left.
"""

from dataclasses import dataclass, field

from ..errors import EmptyArgs, MalformedMachine, NonTermination, NoOutputNumeral

DEFAULT_MAX_STEPS = 10**7


@dataclass(frozen=True)
class Action:
    kind: str  # "W", "L" or "R"
    symbol: int = 0

    def __str__(self):
        return f"W {self.symbol}" if self.kind == "W" else self.kind


def Write(j):
    return Action("W", j)


LEFT = Action("L")
RIGHT = Action("R")


class TmSpec:
    """States 1..M (start 1), symbols 0..N (0 is the blank), partial delta."""

    __slots__ = ("M", "N", "delta", "name")

    def __init__(self, M, N, delta, name=None):
        if M < 1 or N < 1:
            raise MalformedMachine("need at least one state and one symbol")
        table = {}
        for (q, sym), (act, nxt) in dict(delta).items():
            if not (1 <= q <= M and 0 <= sym <= N and 1 <= nxt <= M):
                raise MalformedMachine(f"transition {(q, sym)} -> {(act, nxt)} is out of range")
            if act.kind not in ("W", "L", "R") or (act.kind == "W" and not 0 <= act.symbol <= N):
                raise MalformedMachine(f"bad action {act!r}")
            table[(q, sym)] = (act, nxt)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "delta", dict(sorted(table.items())))
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("machines are immutable")

    def __eq__(self, other):
        return isinstance(other, TmSpec) and (self.M, self.N, self.delta) == (other.M, other.N, other.delta)

    def __hash__(self):
        return hash((self.M, self.N, tuple(self.delta.items())))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<TmSpec{label} M={self.M} N={self.N} |delta|={len(self.delta)}>"


def cell_index(offset):
    if offset > 0:
        return 2 * offset
    if offset < 0:
        return -2 * offset - 1
    return 0


def cell_offset(index):
    """Inverse of :func:`cell_index`."""
    if index % 2 == 0:
        return index // 2
    return -(index + 1) // 2


@dataclass(frozen=True)
class Configuration:
    """Head cell index ``a``, occupied cells ``beta`` (index -> symbol), state ``c``."""

    a: int
    beta: tuple = field(default=())
    c: int = 1

    @classmethod
    def make(cls, a, beta, c):
        return cls(a, tuple(sorted((k, v) for k, v in dict(beta).items() if v)), c)

    @property
    def tape(self):
        return dict(self.beta)

    def scanned(self):
        return self.tape.get(self.a, 0)


class Terminal:
    """Returned by :func:`step` when no transition applies."""

    def __repr__(self):
        return "Terminal"


TERMINAL = Terminal()


@dataclass
class RunResult:
    value: int
    steps: int
    trace: list = None
    final: Configuration = None


def encode_args(xs):
    """Initial configuration for arguments written as unary words."""
    xs = list(xs)
    if not xs:
        raise EmptyArgs("a machine needs at least one argument")
    tape = {}
    pos = 1
    for x in xs:
        for _ in range(x + 1):
            tape[pos] = 1
            pos += 1
        pos += 1
    # pos now sits one past the blank after the last word; step back onto it
    return Configuration.make(cell_index(pos - 1), {cell_index(k): v for k, v in tape.items()}, 1)


def step(spec, cfg):
    entry = spec.delta.get((cfg.c, cfg.scanned()))
    if entry is None:
        return TERMINAL
    act, nxt = entry
    tape = cfg.tape
    a = cfg.a
    if act.kind == "W":
        if act.symbol:
            tape[a] = act.symbol
        else:
            tape.pop(a, None)
    else:
        a = cell_index(cell_offset(a) + (1 if act.kind == "R" else -1))
    return Configuration.make(a, tape, nxt)


class Tape:
    """Mutable tape keyed by physical offset, used by the fast simulator."""

    __slots__ = ("cells", "pos", "state")

    def __init__(self, cfg):
        self.cells = {cell_offset(k): v for k, v in cfg.beta}
        self.pos = cell_offset(cfg.a)
        self.state = cfg.c

    def snapshot(self):
        return Configuration.make(cell_index(self.pos), {cell_index(k): v for k, v in self.cells.items()}, self.state)


def simulate(spec, cfg, max_steps=DEFAULT_MAX_STEPS, keep_trace=False):
    """Run from ``cfg`` until halting; returns ``(tape, steps, trace)``."""
    tape = Tape(cfg)
    # (move, written symbol or None for a move, next state) per entry
    table = {
        key: ({"R": 1, "L": -1}.get(act.kind, 0), None if act.kind in ("R", "L") else act.symbol, nxt)
        for key, (act, nxt) in spec.delta.items()
    }
    cells = tape.cells
    get = cells.get
    lookup = table.get
    trace = [cfg] if keep_trace else None
    steps = 0
    pos, state = tape.pos, tape.state
    while True:
        entry = lookup((state, get(pos, 0)))
        if entry is None:
            break
        if steps >= max_steps:
            raise NonTermination(max_steps)
        move, symbol, state = entry
        if move:
            pos += move
        elif symbol:
            cells[pos] = symbol
        else:
            cells.pop(pos, None)
        steps += 1
        if keep_trace:
            tape.pos, tape.state = pos, state
            trace.append(tape.snapshot())
    tape.pos, tape.state = pos, state
    return tape, steps, trace


def read_output(tape):
    """Strokes in the block immediately left of the head, minus one."""
    k = 0
    while tape.cells.get(tape.pos - 1 - k, 0) == 1:
        k += 1
    if k == 0:
        raise NoOutputNumeral("the cell left of the head is blank")
    return k - 1


def run(spec, xs, max_steps=DEFAULT_MAX_STEPS, keep_trace=False):
    tape, steps, trace = simulate(spec, encode_args(xs), max_steps, keep_trace)
    return RunResult(read_output(tape), steps, trace, tape.snapshot())
