import itertools
import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from oracles import PRIMES, pair
from primtm.errors import MalformedGraph, ParseError, TooManyNodes, TooManyVariables
from primtm.np import (
    And,
    Digraph,
    Not,
    NotWellFormed,
    Or,
    Var,
    corpus,
    decode_gn,
    decode_gn_timed,
    decode_graph,
    depth,
    encode_graph,
    expressions_up_to,
    format_bool,
    format_graph,
    gn,
    hampath_brute,
    hampath_fn,
    parse_bool,
    parse_graph,
    random_digraphs,
    sat_fn,
    sn,
    truth_table,
    truth_table_sat,
)

CORPUS = corpus()


def python_truth(text, assignment):
    """Evaluate the ASCII form with Python's own operators."""
    src = text.replace("!", " not ").replace("|", " or ").replace("&", " and ")
    src = re.sub(r"e(\d+)", r"v[\1]", src)
    return bool(eval(src, {"v": assignment}))


def sat_oracle(e):
    text = format_bool(e)
    names = sorted({int(k) for k in re.findall(r"e(\d+)", text)})
    for values in itertools.product((False, True), repeat=len(names)):
        if python_truth(text, dict(zip(names, values))):
            return True
    return False


def gn_oracle(e):
    """Number the ASCII text directly, symbol by symbol."""
    tokens = re.findall(r"e\d+|[!|&()]", format_bool(e))
    table = {"!": 1, "|": 2, "&": 3, "(": 4, ")": 5}
    out = 1
    for k, tok in enumerate(tokens):
        out *= PRIMES[k] ** (table[tok] if tok in table else 5 + int(tok[1:]))
    return out


# -- parsing ------------------------------------------------------------------


def test_parse_examples():
    assert parse_bool("e1") == Var(1)
    assert parse_bool("(e1|!e1)") == Or(Var(1), Not(Var(1)))
    assert parse_bool(" ( e2 & !!e3 ) ") == And(Var(2), Not(Not(Var(3))))


@pytest.mark.parametrize(
    "text, position",
    [("e1|e2", 2), ("(e1|e2", 6), ("(e1 e2)", 4), ("e0", 0), ("x", 0), ("", 0), ("(e1&e2))", 7), ("!", 1)],
)
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_bool(text)
    assert info.value.position == position


def test_format_parse_roundtrip_on_corpus():
    for e in CORPUS:
        assert parse_bool(format_bool(e)) == e


# -- numbering ----------------------------------------------------------------


def test_symbol_numbers():
    assert sn("not") == 1
    assert [sn(s) for s in ("or", "and", "(", ")")] == [2, 3, 4, 5]
    assert sn(Var(1)) == 6
    assert sn(Var(3)) == 8


def test_gn_examples():
    assert gn(Var(1)) == 64
    assert gn(Not(Var(1))) == 1458
    assert gn(Or(Var(1), Var(2))) == 2**4 * 3**6 * 5**2 * 7**7 * 11**5


def test_gn_matches_text_numbering_and_roundtrips():
    numbers = set()
    for e in CORPUS:
        x = gn(e)
        assert x == gn_oracle(e)
        assert decode_gn(x) == e
        numbers.add(x)
    assert len(numbers) == len(CORPUS) >= 500


def test_decode_rejects_non_numbers():
    assert isinstance(decode_gn(7), NotWellFormed)
    assert isinstance(decode_gn(1), NotWellFormed)
    assert isinstance(decode_gn(0), NotWellFormed)
    assert isinstance(decode_gn(2**6 * 5), NotWellFormed)  # gap at 3
    assert isinstance(decode_gn(2**4 * 3**6), NotWellFormed)  # unclosed bracket
    assert isinstance(decode_gn(2**2), NotWellFormed)  # a lone connective


def test_timed_decode_reports_cost():
    e, seconds = decode_gn_timed(gn(Or(Var(1), Var(2))))
    assert e == Or(Var(1), Var(2)) and seconds >= 0
    bad, _ = decode_gn_timed(7)
    assert isinstance(bad, NotWellFormed)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**7))
def test_sat_fn_is_total(x):
    value = sat_fn(x)
    assert value in (0, 1)
    if isinstance(decode_gn(x), NotWellFormed):
        assert value == 0


# -- satisfiability -----------------------------------------------------------


def test_truth_table_examples():
    assert truth_table_sat(Var(1)) == (True, {1: True})
    assert truth_table_sat(And(Var(1), Not(Var(1)))) == (False, None)
    rows = list(truth_table(Or(Var(1), Var(2))))
    assert len(rows) == 4 and sum(v for _, v in rows) == 3


def test_sat_fn_examples():
    assert sat_fn(64) == 1
    assert sat_fn(gn(And(Var(1), Not(Var(1))))) == 0
    assert sat_fn(7) == 0
    assert sat_fn(1458) == 1


def test_sat_fn_matches_the_oracle_on_the_corpus():
    assert max(depth(e) for e in CORPUS) == 3
    for e in CORPUS:
        found, row = truth_table_sat(e)
        assert found == sat_oracle(e)
        assert sat_fn(gn(e)) == int(found)
        if found:
            assert python_truth(format_bool(e), row)


def test_variable_guard():
    e = Var(1)
    for i in range(2, 22):
        e = Or(e, Var(i))
    with pytest.raises(TooManyVariables):
        truth_table_sat(e)


def test_expressions_up_to_counts():
    # depth 1: 3 negations and 2 * 9 pairs; depth 2: 21 negations and
    # 2 * (24**2 - 3**2) pairs with at least one depth-1 side
    assert len(expressions_up_to(0, 3)) == 3
    assert len(expressions_up_to(1, 3)) == 3 + 21
    assert len(expressions_up_to(2, 3)) == 3 + 21 + 21 + 2 * (24**2 - 3**2)


# -- graphs -------------------------------------------------------------------


def dfs_oracle(v, edges, s, t):
    adj = [[False] * (v + 1) for _ in range(v + 1)]
    for a, b in edges:
        adj[a][b] = True
    seen = [False] * (v + 1)

    def go(u, count):
        if count == v:
            return u == t
        for w in range(1, v + 1):
            if adj[u][w] and not seen[w]:
                seen[w] = True
                if go(w, count + 1):
                    return True
                seen[w] = False
        return False

    seen[s] = True
    return go(s, 1)


def test_hampath_examples():
    path3 = Digraph.make(3, [(1, 2), (2, 3)], 1, 3)
    assert hampath_brute(path3) == (True, [1, 2, 3])
    assert hampath_brute(Digraph.make(2, [], 1, 2)) == (False, None)
    complete = Digraph.make(4, [(a, b) for a in range(1, 5) for b in range(1, 5) if a != b], 2, 3)
    assert hampath_brute(complete)[0]
    assert hampath_brute(Digraph.make(1, [], 1, 1)) == (True, [1])


def test_hampath_matches_dfs_on_random_graphs():
    graphs = random_digraphs(500, seed=5)
    assert sum(hampath_brute(g)[0] for g in graphs) > 20
    for g in graphs:
        found, path = hampath_brute(g)
        assert found == dfs_oracle(g.v, g.edges, g.s, g.t)
        if found:
            assert sorted(path) == list(range(1, g.v + 1))
            assert path[0] == g.s and path[-1] == g.t
            assert all(edge in g.edges for edge in zip(path, path[1:]))
        assert decode_graph(encode_graph(g)) == g
        assert hampath_fn(encode_graph(g)) == int(found)


def test_graph_code_by_hand():
    g = Digraph.make(3, [(1, 2), (2, 3)], 1, 3)
    # edges (1,2) and (2,3) sit at row-major positions 1 and 5
    product = PRIMES[1] * PRIMES[5]
    assert encode_graph(g) == pair(pair(pair(3, 0), 2), product)
    assert decode_graph(encode_graph(g)) == g


def test_larger_graphs_have_lazy_codes():
    g = Digraph.make(5, [(1, 2), (2, 3), (3, 4), (4, 5)], 5, 5)
    x = encode_graph(g)
    assert not isinstance(x, int)
    assert decode_graph(x) == g


def test_graph_codes_are_distinct():
    codes = set()
    count = 0
    cells = [(a, b) for a in range(1, 4) for b in range(1, 4)]
    for mask in range(1 << 9):
        edges = [c for k, c in enumerate(cells) if mask >> k & 1]
        codes.add(encode_graph(Digraph.make(3, edges, 1, 3)))
        count += 1
    assert len(codes) == count
    single = Digraph.make(1, [], 1, 1)
    assert decode_graph(encode_graph(single)) == single


def test_malformed_graph_codes():
    with pytest.raises(MalformedGraph):
        decode_graph(0)  # no nodes
    with pytest.raises(MalformedGraph):
        decode_graph(pair(pair(pair(2, 0), 0), 2 * 2))  # repeated edge
    with pytest.raises(MalformedGraph):
        decode_graph(pair(pair(pair(2, 0), 0), 11))  # prime(4) lies past the 4 edge slots
    assert hampath_fn(0) == 0
    for x in range(2000):
        assert hampath_fn(x) in (0, 1)


def test_node_guard():
    with pytest.raises(TooManyNodes):
        hampath_brute(Digraph.make(11, [], 1, 2))


def test_graph_file_roundtrip():
    for g in random_digraphs(50, seed=1):
        assert parse_graph(format_graph(g)) == g
    text = "nodes: 3\ns: 1\nt: 3\nedge: 1 2\nedge: 2 3  # last hop\n"
    assert hampath_brute(parse_graph(text)) == (True, [1, 2, 3])
    for bad in ["nodes: 3\ns: 1\n", "nodes: 3\ns: 1\nt: 3\nedge: 1\n", "nodes: x\ns: 1\nt: 1\n", "colour: red\n",
                "nodes: 2\ns: 1\nt: 2\nedge: 1 2\nedge: 1 2\n"]:
        with pytest.raises(ParseError):
            parse_graph(bad)
    with pytest.raises(MalformedGraph):
        parse_graph("nodes: 2\ns: 1\nt: 5\n")
