import pytest

from primtm.cli import main


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_zero_machine(capsys):
    code, out, _ = cli(capsys, "tm", "run", "--kind", "zero", "--args", "7")
    assert code == 0
    assert out.splitlines() == ["value 0", "steps 3"]


def test_build_then_run_from_file(capsys, tmp_path):
    path = tmp_path / "p32.tm"
    assert cli(capsys, "tm", "build", "--kind", "proj", "--n", "3", "--i", "2", "--emit", str(path))[0] == 0
    code, out, _ = cli(capsys, "tm", "run", "--machine", str(path), "--args", "4", "5", "6")
    assert code == 0 and out.splitlines()[0] == "value 5"


def test_trace_lists_every_configuration(capsys):
    code, out, _ = cli(capsys, "tm", "trace", "--kind", "zero", "--args", "1")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4 + 2
    assert lines[0].startswith("0 state 1")


def test_machine_number_roundtrip(capsys, tmp_path):
    code, out, _ = cli(capsys, "tm", "encode", "--kind", "succ")
    number = out.split()[1]
    path = tmp_path / "succ.tm"
    assert cli(capsys, "tm", "decode", "--gn", number, "--emit", str(path))[0] == 0
    code, out, _ = cli(capsys, "tm", "run", "--machine", str(path), "--args", "3")
    assert out.splitlines()[0] == "value 4"


def test_prf_eval(capsys):
    code, out, _ = cli(capsys, "prf", "eval", "--def", "stdlib", "--term", "C[add; P[2,1], P[2,2]]", "--args", "2", "3")
    assert (code, out) == (0, "5\n")
    code, out, _ = cli(capsys, "prf", "eval", "--term", "mul", "--args", "4", "6", "--honest")
    assert (code, out) == (0, "24\n")


def test_prf_check_and_classify(capsys, tmp_path):
    path = tmp_path / "d.prf"
    path.write_text("DEF dbl = C[add; P[1,1], P[1,1]]\nDEF first = MU[C[eq; P[2,1], P[2,2]]]\n")
    code, out, _ = cli(capsys, "prf", "check", "--def", str(path))
    assert code == 0
    assert out.splitlines() == ["dbl 1 PrimitiveRecursive", "first 1 MuRecursive"]
    assert cli(capsys, "prf", "classify", "--term", "C[S; P[1,1]]")[1] == "PrimitiveRecursive\n"


def test_sat_commands(capsys):
    assert cli(capsys, "sat", "decide", "--gn", "64")[1] == "1\n"
    assert cli(capsys, "sat", "decide", "--gn", "7")[1] == "0\n"
    assert cli(capsys, "sat", "encode", "--expr", "!e1")[1] == "1458\n"
    assert cli(capsys, "sat", "decode", "--gn", "1458")[1] == "!e1\n"
    code, out, _ = cli(capsys, "sat", "decide", "--expr", "(e1&!e2)", "--witness")
    assert out.splitlines() == ["1", "e1=T e2=F"]


def test_hampath_commands(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("nodes: 3\ns: 1\nt: 3\nedge: 1 2\nedge: 2 3\n")
    code, out, _ = cli(capsys, "hampath", "decide", "--graph", str(path), "--witness")
    assert out.splitlines() == ["1", "1 2 3"]
    number = cli(capsys, "hampath", "encode", "--graph", str(path))[1].strip()
    assert cli(capsys, "hampath", "decide", "--gn", number)[1] == "1\n"


def test_kleene_and_tau(capsys, tmp_path):
    code, out, _ = cli(capsys, "kleene", "verify", "--kind", "succ", "--max-arg", "2", "--samples", "20")
    assert code == 0 and out.splitlines()[-1] == "mismatches: 0 of 3"
    code, out, _ = cli(capsys, "kleene", "witness", "--kind", "zero", "--args", "0", "--samples", "10")
    assert out.splitlines()[0] == "r 3"
    path = tmp_path / "zero.prf"
    code, _, err = cli(capsys, "kleene", "compile", "--kind", "zero", "--bound", "C[S; P[1,1]]", "--emit", str(path))
    assert code == 0 and "PrimitiveRecursive" in err
    assert "DEF F = " in path.read_text()
    code, out, _ = cli(capsys, "tau", "check", "--kind", "zero", "--bound", "C[S; C[S; C[S; C[Z; P[1,1]]]]]")
    assert code == 0 and out.splitlines()[-1] == "violations: 0 of 6"
    code, out, _ = cli(capsys, "tau", "fit", "--which", "Z")
    assert out.splitlines()[0] == "provenance Constant"


def test_same_seed_same_output(capsys):
    a = cli(capsys, "hampath", "decide", "--random", "20", "--seed", "4", "--witness")
    b = cli(capsys, "hampath", "decide", "--random", "20", "--seed", "4", "--witness")
    c = cli(capsys, "hampath", "decide", "--random", "20", "--seed", "5", "--witness")
    assert a == b and a != c


def test_usage_errors_exit_1(capsys):
    assert cli(capsys, "tm", "run")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["tm", "fly"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["tm", "run", "--args", "x"])
    assert info.value.code == 1


def test_runtime_errors_exit_2(capsys, tmp_path):
    code, _, err = cli(capsys, "tm", "run", "--kind", "zero", "--args", "1", "--budget", "0")
    assert code == 2 and "NonTermination" in err
    assert cli(capsys, "prf", "eval", "--term", "nosuch", "--args", "1")[0] == 2
    assert cli(capsys, "tm", "run", "--machine", str(tmp_path / "missing.tm"), "--args", "1")[0] == 2
    assert cli(capsys, "sat", "encode", "--expr", "(e1")[0] == 2
