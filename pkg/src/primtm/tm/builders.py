"""Elementary machines and the machines for the initial functions.

Words are blocks of strokes (symbol 1) separated by single blanks, and a
machine for an n-ary function starts on the blank right after its last
argument.  Every numeric machine here leaves the head on the blank right
after its result word.
"""

from .machine import LEFT, RIGHT, TmSpec, Write


def _one_step(act, name):
    return TmSpec(2, 1, {(1, 0): (act, 2), (1, 1): (act, 2)}, name=name)


def move_right():
    return _one_step(RIGHT, "r")


def move_left():
    return _one_step(LEFT, "l")


def print_stroke():
    return _one_step(Write(1), "|")


def _reachable(spec):
    seen = {1}
    todo = [1]
    while todo:
        q = todo.pop()
        for sym in range(spec.N + 1):
            entry = spec.delta.get((q, sym))
            if entry and entry[1] not in seen:
                seen.add(entry[1])
                todo.append(entry[1])
    return seen


def prune(spec):
    """Drop unreachable states and renumber the rest in order."""
    keep = sorted(_reachable(spec))
    renum = {q: k + 1 for k, q in enumerate(keep)}
    delta = {(renum[q], s): (act, renum[n]) for (q, s), (act, n) in spec.delta.items() if q in renum}
    return TmSpec(len(keep), spec.N, delta, name=spec.name)


def seq(m1, m2, name=None):
    """Run ``m1``, then ``m2`` from where ``m1`` halted.

    A halt of ``m1`` on symbol ``s`` takes the transition ``m2`` would take
    from its start state on ``s``, so no step is spent on the hand-over.
    """
    N = max(m1.N, m2.N)
    shift = m1.M
    delta = dict(m1.delta)
    for (q, s), (act, n) in m2.delta.items():
        delta[(q + shift, s)] = (act, n + shift)
    for q in range(1, m1.M + 1):
        for s in range(N + 1):
            if (q, s) not in m1.delta and (1, s) in m2.delta:
                act, n = m2.delta[(1, s)]
                delta[(q, s)] = (act, n + shift)
    label = name or f"{m1.name or '?'}{m2.name or '?'}"
    return prune(TmSpec(m1.M + m2.M, N, delta, name=label))


class _Builder:
    def __init__(self):
        self.names = []
        self.delta = {}

    def state(self, label):
        self.names.append(label)
        return len(self.names)

    def on(self, q, sym, act, nxt):
        self.delta[(q, sym)] = (act, nxt)

    def build(self, name):
        return TmSpec(len(self.names), 1, self.delta, name=name)


def copy_machine_n(m):
    """Copy the m-th word left of the head to the right of the head.

    The copy is separated from the last word by the blank the head starts
    on, and the head finishes on the blank right after the copy.  Strokes
    are copied one at a time: each is erased to mark the spot, a stroke is
    appended to the copy, and the erased stroke is restored.
    """
    if m < 1:
        raise ValueError("the word index must be at least 1")
    b = _Builder()
    start = b.state("start")
    scan = [b.state(f"seek{k}") for k in range(1, m + 1)]
    check = b.state("check")
    away = b.state("away")
    ahead = [b.state(f"ahead{k}") for k in range(1, m + 1)]
    append = b.state("append")
    back = [b.state(f"back{k}") for k in range(1, m + 2)]
    restore = b.state("restore")
    done = [b.state(f"done{k}") for k in range(2, m + 1)]
    finish = b.state("finish")

    # walk left to the first stroke of the m-th word
    b.on(start, 0, LEFT, scan[0])
    for k, q in enumerate(scan):
        b.on(q, 1, LEFT, q)
        if k + 1 < m:
            b.on(q, 0, LEFT, scan[k + 1])
        else:
            b.on(q, 0, RIGHT, check)
    # on a stroke still to copy: erase it as a marker; on a blank: the word is done
    b.on(check, 1, Write(0), away)
    b.on(check, 0, RIGHT, done[0] if done else finish)
    b.on(away, 0, RIGHT, ahead[0])
    # cross m blanks (the gaps after each word, the last being the start cell)
    for k, q in enumerate(ahead):
        b.on(q, 1, RIGHT, q)
        b.on(q, 0, RIGHT, ahead[k + 1] if k + 1 < m else append)
    b.on(append, 1, RIGHT, append)
    b.on(append, 0, Write(1), back[0])
    # return over m blanks to the marker, which is the (m+1)-th blank
    for k, q in enumerate(back):
        b.on(q, 1, LEFT, q)
        if k < m:
            b.on(q, 0, LEFT, back[k + 1])
        else:
            b.on(q, 0, Write(1), restore)
    b.on(restore, 1, RIGHT, check)
    # source exhausted: walk right past the remaining words and the copy
    for k, q in enumerate(done):
        b.on(q, 1, RIGHT, q)
        b.on(q, 0, RIGHT, done[k + 1] if k + 1 < len(done) else finish)
    b.on(finish, 1, RIGHT, finish)
    return b.build(f"K{m}")


def copy_machine():
    return copy_machine_n(1)


def successor_machine():
    """Copy the argument, add a stroke, step right."""
    return seq(copy_machine(), seq(print_stroke(), move_right()), name="S")


def zero_machine():
    """Step right, print a stroke, step right: three steps for every input."""
    return seq(move_right(), seq(print_stroke(), move_right()), name="Z")


def projection_machine(n, i):
    if not 1 <= i <= n:
        raise ValueError("projection needs 1 <= i <= n")
    spec = copy_machine_n(n + 1 - i)
    return TmSpec(spec.M, spec.N, spec.delta, name=f"P{n},{i}")


def builder_machines(max_arity=3):
    """Every machine the builders produce, keyed by name, with its arity."""
    out = {"Z": (zero_machine(), 1), "S": (successor_machine(), 1)}
    for n in range(1, max_arity + 1):
        for i in range(1, n + 1):
            out[f"P{n},{i}"] = (projection_machine(n, i), n)
    return out
