"""Command-line entry point.

Exit codes: 0 when the command ran (a verdict of 0 is still success),
1 for usage errors, 2 for runtime failures such as exhausted budgets or
malformed input.
"""

import argparse
import itertools
import sys
from concurrent.futures import ThreadPoolExecutor

from .arith.lazy import decimal_digits, format_nat, parse_nat
from .complexity import check_bound, default_sweep, measure_steps, tau_initial
from .errors import PrimTMError
from .kleene import compiler_env, mu_search, step_bound_to_y_bound, theorem1_compile, theorem_b0_eval
from .np import (
    NotWellFormed,
    decode_gn,
    decode_graph,
    encode_graph,
    format_bool,
    gn,
    hampath_brute,
    parse_bool,
    parse_graph,
    random_digraphs,
    truth_table_sat,
)
from .prf import classify, eval_fast, eval_honest, format_term, parse_env, parse_term, stdlib
from .prf.terms import Ref, arity_check
from .tm import (
    builder_machines,
    cell_offset,
    copy_machine_n,
    decode_machine,
    encode_args,
    encode_config,
    format_machine,
    godel_number,
    parse_machine,
    projection_machine,
    run,
    successor_machine,
    zero_machine,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _num(n):
    """Decimal for ints of any size, the compact form for lazy values."""
    return str(n) if isinstance(n, int) else format_nat(n)


def _read(path):
    with open(path) as fh:
        return fh.read()


def _emit(args, text):
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(text)
        print(f"wrote {args.emit}")
    else:
        sys.stdout.write(text)


# -- shared loaders -----------------------------------------------------------


def _env(args, base=None):
    """The library (or ``base``) plus the definitions in ``--def``, if any."""
    env = base if base is not None else stdlib()
    if args.def_ and args.def_ != "stdlib":
        env = parse_env(_read(args.def_), env)
    return env


def _machine(args):
    """``(spec, arity)`` from ``--machine`` or ``--kind``; arity may be None."""
    if getattr(args, "machine", None):
        return parse_machine(_read(args.machine)), getattr(args, "arity", None)
    kind = getattr(args, "kind", None)
    if kind == "zero":
        return zero_machine(), 1
    if kind == "succ":
        return successor_machine(), 1
    if kind == "proj":
        return projection_machine(args.n, args.i), args.n
    if kind == "copy":
        return copy_machine_n(args.k), None
    raise UsageError("give --machine <path> or --kind")


def _machine_flags(p, required_kind=False):
    p.add_argument("--machine", help="machine file")
    p.add_argument("--kind", choices=["zero", "succ", "proj", "copy"], help="use a built-in machine")
    p.add_argument("--n", type=int, default=1, help="projection arity")
    p.add_argument("--i", type=int, default=1, help="projection index")
    p.add_argument("--k", type=int, default=1, help="which word the copier copies")


def _arg_tuples(args, arity):
    if args.args:
        return [tuple(args.args)]
    if arity is None:
        raise UsageError("give --args or --arity")
    return [xs for xs in itertools.product(range(args.max_arg + 1), repeat=arity)]


def _bound_term(args, env):
    if not args.bound:
        raise UsageError("give --bound <term>")
    return parse_term(args.bound, env)


def _nat(text):
    try:
        return parse_nat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- prf ----------------------------------------------------------------------


def cmd_prf_eval(args):
    env = _env(args)
    t = parse_term(args.term, env)
    if args.honest:
        value = eval_honest(t, args.args, env, budget=args.budget)
    else:
        value = eval_fast(t, args.args, env)
    print(_num(value))


def cmd_prf_check(args):
    env = _env(args)
    if args.term:
        t = parse_term(args.term, env)
        print(f"arity {arity_check(t, env)}")
        return
    library = stdlib()
    names = [name for name in env if name not in library] or list(library)
    for name in names:
        print(f"{name} {env.arity(name)} {classify(Ref(name), env)}")


def cmd_prf_classify(args):
    env = _env(args)
    print(classify(parse_term(args.term, env), env))


# -- tm -----------------------------------------------------------------------


def _render(cfg):
    cells = {cell_offset(j): s for j, s in cfg.beta}
    head = cell_offset(cfg.a)
    lo = min([head] + list(cells))
    hi = max([head] + list(cells))
    tape = "".join(str(cells.get(d, 0)) if cells.get(d, 0) else "_" for d in range(lo, hi + 1))
    return f"state {cfg.c} head {head} tape[{lo}..{hi}] {tape}"


def cmd_tm_run(args):
    spec, _ = _machine(args)
    r = run(spec, args.args, max_steps=args.budget, keep_trace=args.trace)
    if args.trace:
        for k, cfg in enumerate(r.trace):
            print(f"{k} {_render(cfg)}")
    print(f"value {r.value}")
    print(f"steps {r.steps}")


def cmd_tm_trace(args):
    args.trace = True
    cmd_tm_run(args)


def cmd_tm_encode(args):
    spec, _ = _machine(args)
    print(f"machine {_num(godel_number(spec))}")
    if args.args:
        print(f"config {_num(encode_config(encode_args(args.args)))}")


def cmd_tm_decode(args):
    _emit(args, format_machine(decode_machine(args.gn)))


def cmd_tm_build(args):
    if not args.kind:
        raise UsageError("tm build needs --kind")
    spec, _ = _machine(args)
    _emit(args, format_machine(spec))


# -- kleene -------------------------------------------------------------------


def _pool_map(fn, items, jobs):
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_kleene_verify(args):
    spec, arity = _machine(args)
    arity = args.arity or arity
    t = godel_number(spec)

    def check(xs):
        got = theorem_b0_eval(t, list(xs), samples=args.samples, seed=args.seed, max_steps=args.budget)
        want = run(spec, list(xs), max_steps=args.budget).value
        return xs, got, want

    bad = 0
    rows = _pool_map(check, _arg_tuples(args, arity), args.jobs)
    for xs, got, want in rows:
        ok = got == want
        bad += not ok
        print(f"{' '.join(map(str, xs))}  {got}  {want}  {'OK' if ok else 'MISMATCH'}")
    print(f"mismatches: {bad} of {len(rows)}")


def cmd_kleene_witness(args):
    spec, _ = _machine(args)
    wit = mu_search(godel_number(spec), args.args, samples=args.samples, seed=args.seed, max_steps=args.budget)
    print(f"r {wit.r}")
    print(f"s_digits {decimal_digits(wit.s)}")
    print(f"y_digits {decimal_digits(wit.y)}")


def cmd_kleene_compile(args):
    spec, _ = _machine(args)
    env = _env(args, compiler_env())
    compiled = theorem1_compile(spec, _bound_term(args, env), env)
    text = compiled.text()
    _emit(args, text)
    print(f"# arity {compiled.arity} {classify(compiled.term, compiled.env)}", file=sys.stderr)


def cmd_kleene_bound(args):
    spec, _ = _machine(args)
    env = _env(args, compiler_env())
    yb = step_bound_to_y_bound(_bound_term(args, env), spec, env)
    lines = [f"DEF y_{name} = {format_term(term)}" for name, term in yb.parts.items()]
    _emit(args, "\n".join(lines) + "\n")


# -- tau ----------------------------------------------------------------------


def cmd_tau_measure(args):
    spec, arity = _machine(args)
    for xs in _arg_tuples(args, args.arity or arity):
        print(f"{' '.join(map(str, xs))}  {measure_steps(spec, xs, args.budget)}")


def cmd_tau_fit(args):
    tb = tau_initial(args.which)
    print(f"provenance {tb.provenance.value}")
    if tb.slope:
        print(f"slope {tb.slope}")
    print(f"intercept {tb.intercept}")
    _emit(args, f"DEF tau = {format_term(tb.term)}\n")


def cmd_tau_check(args):
    spec, arity = _machine(args)
    env = _env(args)
    B = _bound_term(args, env)
    n = arity_check(B, env)
    samples = [tuple(args.args)] if args.args else default_sweep(n, args.max_arg)
    report = check_bound(spec, B, samples, env, jobs=args.jobs, max_steps=args.budget)
    sys.stdout.write(report.text())


# -- sat and hampath ----------------------------------------------------------


def _expr_from(args):
    if args.expr:
        return parse_bool(args.expr)
    if args.gn is not None:
        return decode_gn(args.gn)
    raise UsageError("give --expr or --gn")


def cmd_sat_decide(args):
    if args.file:
        for line in _read(args.file).splitlines():
            if line.strip():
                found, row = truth_table_sat(parse_bool(line))
                print(f"{int(found)}  {line.strip()}")
        return
    e = _expr_from(args)
    if isinstance(e, NotWellFormed):
        print(0)
        if args.witness:
            print(f"not well-formed: {e.reason}")
        return
    found, row = truth_table_sat(e)
    print(int(found))
    if args.witness and found:
        print(" ".join(f"e{i}={'T' if v else 'F'}" for i, v in sorted(row.items())))


def cmd_sat_encode(args):
    print(gn(parse_bool(args.expr)))


def cmd_sat_decode(args):
    e = decode_gn(args.gn)
    print(f"not well-formed: {e.reason}" if isinstance(e, NotWellFormed) else format_bool(e))


def _graph_from(args):
    if args.graph:
        return parse_graph(_read(args.graph))
    if args.gn is not None:
        return decode_graph(args.gn)
    raise UsageError("give --graph, --gn or --random")


def cmd_hampath_decide(args):
    if args.random:
        graphs = random_digraphs(args.random, seed=args.seed, max_nodes=args.nodes)
        for k, g in enumerate(graphs):
            found, path = hampath_brute(g)
            tail = f"  {' '.join(map(str, path))}" if args.witness and found else ""
            print(f"{k}  v={g.v} s={g.s} t={g.t} edges={len(g.edges)}  {int(found)}{tail}")
        return
    found, path = hampath_brute(_graph_from(args))
    print(int(found))
    if args.witness and found:
        print(" ".join(map(str, path)))


def cmd_hampath_encode(args):
    print(_num(encode_graph(_graph_from(args))))


# -- parser -------------------------------------------------------------------


def build_parser():
    root = _Parser(prog="primtm", description="Primitive recursion, Turing machines and their numbering.")
    top = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--args", type=int, nargs="+", default=[], help="natural-number arguments")
        p.add_argument("--budget", type=int, default=10**7, help="step or evaluation budget")
        p.add_argument("--seed", type=int, default=0, help="seed for all sampling")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for independent samples")
        p.add_argument("--emit", help="write generated text to this file")
        p.add_argument("--def", dest="def_", help="definitions file, or 'stdlib'")

    def add(group, name, handler, help_text):
        p = group.add_parser(name, help=help_text)
        common(p)
        p.set_defaults(handler=handler)
        return p

    prf = top.add_parser("prf", help="primitive recursive terms").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = add(prf, "eval", cmd_prf_eval, "evaluate a term")
    p.add_argument("--term", required=True)
    p.add_argument("--honest", action="store_true", help="use only the schemata, no shortcuts")
    p = add(prf, "check", cmd_prf_check, "arity-check a term or every definition")
    p.add_argument("--term")
    p = add(prf, "classify", cmd_prf_classify, "primitive recursive or not")
    p.add_argument("--term", required=True)

    tm = top.add_parser("tm", help="Turing machines").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, text in [
        ("run", cmd_tm_run, "run a machine"),
        ("trace", cmd_tm_trace, "run and print every configuration"),
        ("encode", cmd_tm_encode, "number a machine"),
        ("build", cmd_tm_build, "write a built-in machine"),
    ]:
        p = add(tm, name, handler, text)
        _machine_flags(p)
        if name == "run":
            p.add_argument("--trace", action="store_true")
    p = add(tm, "decode", cmd_tm_decode, "machine file from its number")
    p.add_argument("--gn", type=_nat, required=True)

    kl = top.add_parser("kleene", help="normal form").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, text in [
        ("verify", cmd_kleene_verify, "compare U(mu y T) with the simulator"),
        ("witness", cmd_kleene_witness, "print the least witness"),
        ("compile", cmd_kleene_compile, "emit the primitive recursive term"),
        ("bound", cmd_kleene_bound, "emit the bound on y"),
    ]:
        p = add(kl, name, handler, text)
        _machine_flags(p)
        p.add_argument("--arity", type=int)
        p.add_argument("--max-arg", type=int, default=3)
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--bound", help="step bound as a term")

    tau = top.add_parser("tau", help="step counts and bounds").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, text in [("measure", cmd_tau_measure, "count steps"), ("check", cmd_tau_check, "compare steps with a bound")]:
        p = add(tau, name, handler, text)
        _machine_flags(p)
        p.add_argument("--arity", type=int)
        p.add_argument("--max-arg", type=int, default=5)
        p.add_argument("--bound")
    p = add(tau, "fit", cmd_tau_fit, "bound for Z, S or Pn,i")
    p.add_argument("--which", required=True, help="Z, S or Pn,i such as P3,1")

    sat = top.add_parser("sat", help="satisfiability").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, text in [("decide", cmd_sat_decide, "0 or 1"), ("encode", cmd_sat_encode, "number an expression"), ("decode", cmd_sat_decode, "expression from its number")]:
        p = add(sat, name, handler, text)
        p.add_argument("--expr")
        p.add_argument("--gn", type=_nat)
        if name == "decide":
            p.add_argument("--file", help="one expression per line")
            p.add_argument("--witness", action="store_true")
    hp = top.add_parser("hampath", help="Hamiltonian paths").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, handler, text in [("decide", cmd_hampath_decide, "0 or 1"), ("encode", cmd_hampath_encode, "number a graph")]:
        p = add(hp, name, handler, text)
        p.add_argument("--graph", help="graph file")
        p.add_argument("--gn", type=_nat)
        if name == "decide":
            p.add_argument("--witness", action="store_true")
            p.add_argument("--random", type=int, help="decide this many seeded random graphs")
            p.add_argument("--nodes", type=int, default=5, help="largest random graph")
    return root


def main(argv=None):
    sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"primtm: error: {exc}", file=sys.stderr)
        return 1
    except (PrimTMError, OSError, ValueError) as exc:
        print(f"primtm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
