import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import PRIMES, pair
from primtm.arith import sigma3
from primtm.errors import EmptyArgs, MalformedConfig, MalformedMachine, NonTermination, NoOutputNumeral, ParseError
from primtm.tm import (
    LEFT,
    RIGHT,
    TERMINAL,
    Configuration,
    TmSpec,
    Write,
    builder_machines,
    cell_index,
    cell_offset,
    copy_machine,
    copy_machine_n,
    decode_config,
    decode_machine,
    encode_args,
    encode_config,
    encode_tape,
    format_machine,
    godel_number,
    move_right,
    parse_machine,
    projection_machine,
    run,
    seq,
    simulate,
    step,
    successor_machine,
    zero_machine,
)

MACHINES = builder_machines()


def layout_oracle(xs):
    """Lay the words out as a string and read indices off it directly."""
    text = "_" + "_".join("1" * (x + 1) for x in xs) + "_"
    strokes = [k for k, ch in enumerate(text) if ch == "1"]
    head = len(text) - 1
    to_index = lambda d: 2 * d if d > 0 else (-2 * d - 1 if d < 0 else 0)
    return {to_index(k) for k in strokes}, to_index(head)


@pytest.mark.parametrize("offset, index", [(0, 0), (2, 4), (-1, 1), (-3, 5), (7, 14)])
def test_cell_index(offset, index):
    assert cell_index(offset) == index
    assert cell_offset(index) == offset


def test_cell_index_is_a_bijection():
    assert sorted(cell_index(d) for d in range(-500, 501)) == list(range(1001))


@pytest.mark.parametrize("xs", [[1], [0], [0, 0], [3, 0, 2], [5]])
def test_encode_args_matches_layout(xs):
    cfg = encode_args(xs)
    strokes, head = layout_oracle(xs)
    assert set(cfg.tape) == strokes
    assert cfg.a == head
    assert cfg.c == 1


def test_encode_args_examples():
    assert encode_args([1]) == Configuration.make(6, {2: 1, 4: 1}, 1)
    assert encode_args([0]) == Configuration.make(4, {2: 1}, 1)
    assert encode_args([0, 0]) == Configuration.make(8, {2: 1, 6: 1}, 1)
    with pytest.raises(EmptyArgs):
        encode_args([])


def test_step_semantics():
    z = zero_machine()
    cfg = encode_args([4])
    nxt = step(z, cfg)
    assert cell_offset(nxt.a) == cell_offset(cfg.a) + 1
    assert step(TmSpec(1, 1, {}), cfg) is TERMINAL
    writer = TmSpec(2, 1, {(1, 0): (Write(1), 2)})
    after = step(writer, cfg)
    assert after.a == cfg.a and after.c == 2 and after.scanned() == 1


def test_zero_machine_takes_three_steps():
    for x in range(21):
        r = run(zero_machine(), [x])
        assert (r.value, r.steps) == (0, 3)


def test_successor_machine():
    assert run(successor_machine(), [0]).value == 1
    assert run(successor_machine(), [2]).value == 3
    for x in range(51):
        assert run(successor_machine(), [x]).value == x + 1


def test_projections():
    assert run(projection_machine(3, 2), [7, 8, 9]).value == 8
    for n in range(1, 4):
        for i in range(1, n + 1):
            spec = projection_machine(n, i)
            for args in itertools.product(range(6), repeat=n):
                assert run(spec, list(args)).value == args[i - 1]


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("xs", [[0, 0, 0], [2, 1, 4], [5, 0, 1]])
def test_copy_machine_appends_a_copy(m, xs):
    tape, _, _ = simulate(copy_machine_n(m), encode_args(xs))
    expected = encode_args(xs + [xs[-m]])
    got = tape.snapshot()
    assert (got.a, got.beta) == (expected.a, expected.beta)


def test_copy_machine_region_equals_input_word():
    for v in range(10):
        tape, _, _ = simulate(copy_machine(), encode_args([v]))
        copy = [k for k in tape.cells if k > v + 2]
        assert sorted(copy) == list(range(v + 3, v + 4 + v))


def test_seq_spends_no_step_on_hand_over():
    two = seq(move_right(), move_right())
    tape, steps, _ = simulate(two, encode_args([0]))
    assert steps == 2 and tape.pos == 4


def test_run_errors():
    spin = TmSpec(1, 1, {(1, 0): (Write(0), 1)})
    with pytest.raises(NonTermination):
        run(spin, [1], max_steps=1000)
    with pytest.raises(NoOutputNumeral):
        run(move_right(), [1])


# -- encodings ----------------------------------------------------------------


def test_encode_tape_examples():
    assert encode_tape(Configuration.make(0, {}, 1)) == 1
    assert encode_tape(Configuration.make(0, {2: 1, 4: 1}, 1)) == 55
    assert encode_tape(Configuration.make(0, {0: 1}, 1)) == 2
    cfg = encode_args([3, 1])
    want = 1
    for j in cfg.tape:
        want *= PRIMES[j]
    assert encode_tape(cfg) == want


def test_encode_config_examples():
    assert sigma3(0, 1, 0) == 3
    assert encode_config(Configuration(0, (), 0)) == 3
    cfg = encode_args([2])
    assert encode_config(cfg) == pair(pair(cfg.a, encode_tape(cfg)), cfg.c)
    codes = [encode_config(Configuration(cfg.a, cfg.beta, c)) for c in range(1, 8)]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)


@pytest.mark.parametrize("name", sorted(MACHINES))
def test_configuration_roundtrip_on_traces(name):
    spec, arity = MACHINES[name]
    for args in itertools.product(range(3), repeat=arity):
        for cfg in run(spec, list(args), keep_trace=True).trace:
            assert decode_config(encode_config(cfg), spec) == cfg


def test_decode_config_rejects_bad_codes():
    z = zero_machine()
    with pytest.raises(MalformedConfig):
        decode_config(sigma3(0, 1, 0), z)  # state 0
    with pytest.raises(MalformedConfig):
        decode_config(sigma3(0, 0, 1), z)  # empty product
    with pytest.raises(MalformedConfig):
        decode_config(sigma3(0, 4, 1), z)  # symbol 2 on a one-symbol machine


@pytest.mark.parametrize("name", sorted(MACHINES))
def test_machine_number_roundtrip(name):
    spec, _ = MACHINES[name]
    t = godel_number(spec)
    assert decode_machine(t) == spec
    assert godel_number(spec) == t


def test_machine_numbers_are_distinct():
    # P1,1, P2,2 and P3,3 are all the plain copier, so compare distinct machines
    specs = set(spec for spec, _ in MACHINES.values())
    numbers = {godel_number(spec) for spec in specs}
    assert len(specs) == 5 and len(numbers) == len(specs)
    z = zero_machine()
    changed = dict(z.delta)
    changed[(3, 0)] = (LEFT, 4)
    assert godel_number(TmSpec(z.M, z.N, changed)) != godel_number(z)


def test_small_machine_number_by_hand():
    spec = TmSpec(1, 1, {(1, 0): (RIGHT, 1)})
    e = pair(pair(0, 0), pair(3, 0))
    assert godel_number(spec) == pair(pair(1, 1), 2 ** (1 + e))


def test_decode_machine_rejects_garbage():
    with pytest.raises(MalformedMachine):
        decode_machine(0)
    with pytest.raises(MalformedMachine):
        decode_machine(sigma3(2, 1, 3))  # prime 3 without prime 2


def test_machine_file_roundtrip():
    for spec, _ in MACHINES.values():
        assert parse_machine(format_machine(spec)) == spec
    text = "# a comment\nstates: 2\nalphabet: 1\nstart: 1\ndelta: 1 0 -> W 1 2  # print\ndelta: 2 1 -> R 2\n"
    spec = parse_machine(text)
    assert spec.delta[(1, 0)] == (Write(1), 2)
    for bad in ["states: 2\nalphabet: 1\ndelta: 1 0 -> X 2\n", "states: 2\n", "states: 1\nalphabet: 1\nstart: 2\n"]:
        with pytest.raises(ParseError):
            parse_machine(bad)
    with pytest.raises(MalformedMachine):
        parse_machine("states: 1\nalphabet: 1\ndelta: 1 0 -> R 5\n")


# -- run invariants -----------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(MACHINES)), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_trace_invariants(name, pool):
    spec, arity = MACHINES[name]
    args = pool[:arity]
    r = run(spec, args, keep_trace=True)
    assert r.steps == len(r.trace) - 1
    first = r.trace[0]
    span = max(abs(cell_offset(j)) for j, _ in first.beta)
    for k, cfg in enumerate(r.trace):
        assert abs(cell_offset(cfg.a)) <= max(span, abs(cell_offset(first.a))) + k
        assert len(cfg.beta) <= len(first.beta) + k
        assert 1 <= cfg.c <= spec.M
