"""Quadruple Turing machines, their encodings and elementary builders."""

from .builders import (
    builder_machines,
    copy_machine,
    copy_machine_n,
    move_left,
    move_right,
    print_stroke,
    projection_machine,
    prune,
    seq,
    successor_machine,
    zero_machine,
)
from .encode import (
    decode_config,
    decode_machine,
    decode_tape,
    encode_config,
    encode_tape,
    format_machine,
    godel_number,
    parse_machine,
)
from .machine import (
    LEFT,
    RIGHT,
    TERMINAL,
    Action,
    Configuration,
    RunResult,
    TmSpec,
    Write,
    cell_index,
    cell_offset,
    encode_args,
    read_output,
    run,
    simulate,
    step,
)
