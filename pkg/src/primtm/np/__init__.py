"""Satisfiability and Hamiltonian paths as functions on numbers."""

from .boolexpr import (
    MAX_VARIABLES,
    And,
    Not,
    NotWellFormed,
    Or,
    Var,
    corpus,
    decode_gn,
    decode_gn_timed,
    depth,
    evaluate,
    expressions_up_to,
    format_bool,
    gn,
    parse_bool,
    random_expression,
    sat_fn,
    sn,
    symbols,
    truth_table,
    truth_table_sat,
    variables,
)
from .graphs import (
    MAX_NODES,
    Digraph,
    decode_graph,
    encode_graph,
    format_graph,
    hampath_brute,
    hampath_fn,
    parse_graph,
    random_digraph,
    random_digraphs,
)
