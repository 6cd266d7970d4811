"""Directed graphs with endpoints, their numbers, and Hamiltonian paths by search.

A graph is numbered ``sigma3(sigma2(v, s - 1), t - 1, E)`` where ``E`` has
one prime factor per edge: edge ``(u, w)`` uses ``prime((u - 1) * v + w - 1)``.
"""

import itertools
import random
from dataclasses import dataclass

from ..arith.codec import sigma2, sigma2_inv, sigma3, sigma3_inv
from ..arith.lazy import LazyNat
from ..arith.primes import prime, strip_prime
from ..errors import MalformedGraph, ParseError, TooManyNodes, Unmaterializable

MAX_NODES = 10
# decoding needs one trial division per possible edge, so cap the node count
MAX_DECODE_NODES = 200


@dataclass(frozen=True)
class Digraph:
    v: int
    edges: frozenset
    s: int
    t: int

    def __post_init__(self):
        if self.v < 1:
            raise MalformedGraph("a graph has at least one node")
        if not (1 <= self.s <= self.v and 1 <= self.t <= self.v):
            raise MalformedGraph("s and t must be nodes")
        for u, w in self.edges:
            if not (1 <= u <= self.v and 1 <= w <= self.v):
                raise MalformedGraph(f"edge ({u}, {w}) leaves the node range")

    @classmethod
    def make(cls, v, edges, s, t):
        return cls(v, frozenset((int(u), int(w)) for u, w in edges), s, t)


def _edge_index(g, u, w):
    return (u - 1) * g.v + (w - 1)


def encode_graph(g):
    product = 1
    for u, w in g.edges:
        product *= prime(_edge_index(g, u, w))
    return sigma3(sigma2(g.v, g.s - 1), g.t - 1, product)


def decode_graph(x):
    # the nested pairing makes codes of even small graphs too wide to hold,
    # so x may arrive lazily; its three components must all be ordinary ints
    try:
        head, t1, product = sigma3_inv(x)
        if any(isinstance(c, LazyNat) for c in (head, t1, product)):
            raise MalformedGraph("a graph code component is too large")
        v, s1 = sigma2_inv(head)
    except (ValueError, Unmaterializable) as exc:
        raise MalformedGraph(str(exc)) from None
    if isinstance(v, LazyNat) or isinstance(s1, LazyNat):
        raise MalformedGraph("node count or start node is too large")
    if v < 1:
        raise MalformedGraph("a graph has at least one node")
    if v > MAX_DECODE_NODES:
        raise MalformedGraph(f"{v} nodes is beyond the decodable range")
    if product < 1:
        raise MalformedGraph("the edge product must be positive")
    edges = []
    for k in range(v * v):
        if product == 1:
            break
        e, product = strip_prime(product, prime(k))
        if e > 1:
            raise MalformedGraph(f"edge {k} is listed {e} times")
        if e:
            edges.append((k // v + 1, k % v + 1))
    if product != 1:
        raise MalformedGraph("the edge product has a factor outside the edge range")
    return Digraph.make(v, edges, s1 + 1, t1 + 1)


def hampath_brute(g):
    """``(True, path)`` for the first Hamiltonian s-t path in node order, else ``(False, None)``."""
    if g.v > MAX_NODES:
        raise TooManyNodes(f"{g.v} nodes, at most {MAX_NODES} allowed")
    if g.v == 1:
        return (True, [g.s]) if g.s == g.t else (False, None)
    if g.s == g.t:
        return False, None
    inner = [u for u in range(1, g.v + 1) if u not in (g.s, g.t)]
    for middle in itertools.permutations(inner):
        path = [g.s, *middle, g.t]
        if all((a, b) in g.edges for a, b in zip(path, path[1:])):
            return True, path
    return False, None


def hampath_fn(x):
    try:
        g = decode_graph(x)
    except MalformedGraph:
        return 0
    return 1 if hampath_brute(g)[0] else 0


def random_digraph(rng, max_nodes=5, p=0.5):
    v = rng.randint(1, max_nodes)
    edges = [(u, w) for u in range(1, v + 1) for w in range(1, v + 1) if u != w and rng.random() < p]
    return Digraph.make(v, edges, rng.randint(1, v), rng.randint(1, v))


def random_digraphs(count, seed=0, max_nodes=5):
    rng = random.Random(seed)
    return [random_digraph(rng, max_nodes, rng.choice((0.3, 0.5, 0.7))) for _ in range(count)]


# -- file format --------------------------------------------------------------


def format_graph(g):
    lines = [f"nodes: {g.v}", f"s: {g.s}", f"t: {g.t}"]
    lines += [f"edge: {u} {w}" for u, w in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_graph(text):
    fields = {}
    edges = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0].strip()
        here = offset
        offset += len(line)
        if not body:
            continue
        key, sep, value = body.partition(":")
        key = key.strip()
        if not sep or key not in ("nodes", "s", "t", "edge"):
            raise ParseError(f"unknown line {body!r}", here)
        try:
            numbers = [int(tok) for tok in value.split()]
        except ValueError:
            raise ParseError(f"expected numbers in {body!r}", here) from None
        if key == "edge":
            if len(numbers) != 2:
                raise ParseError("an edge needs two nodes", here)
            if tuple(numbers) in edges:
                raise ParseError(f"duplicate edge {numbers[0]} {numbers[1]}", here)
            edges.append(tuple(numbers))
        else:
            if len(numbers) != 1 or key in fields:
                raise ParseError(f"expected one {key} line with one number", here)
            fields[key] = numbers[0]
    for key in ("nodes", "s", "t"):
        if key not in fields:
            raise ParseError(f"missing {key!r} line", len(text))
    return Digraph.make(fields["nodes"], edges, fields["s"], fields["t"])
