import io
from fractions import Fraction

import pytest

from envalg import cli
from envalg.errors import ExpressionError
from envalg.freealg import FreePoly
from envalg.lie import bad_example, dump_spec, gl, heisenberg
from envalg.parsing import parse_expression, parse_poly
from envalg.reduce import parse_trace_line


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def specs(tmp_path):
    paths = {}
    for name, t in (("heisenberg", heisenberg(1)), ("gl2", gl(2)), ("bad", bad_example())):
        p = tmp_path / f"{name}.spec"
        p.write_text(dump_spec(t))
        paths[name] = str(p)
    return paths


def test_parse_basics():
    assert parse_poly("(X1+X2)^3") == (FreePoly.gen(2, 1) + FreePoly.gen(2, 2)) ** 3
    assert parse_poly("-1/2*X1*X2 + 3", n=3) == FreePoly(3, {(1, 2): Fraction(-1, 2), (): 3})
    assert parse_poly("[P, Q]", heisenberg(1)) == FreePoly(3, {(3,): -1})
    assert parse_poly("X2^0") == FreePoly.one(2)
    assert parse_expression("Q*X1", heisenberg(1)).names == {"Q": 2, "X1": 1}


@pytest.mark.parametrize("text, pos", [
    ("X1 +", 4),
    ("X1 ? X2", 3),
    ("1/0", 2),
    ("(X1", 3),
    ("X1 X2", 3),
    ("Y", 0),
])
def test_parse_errors(text, pos):
    with pytest.raises(ExpressionError) as exc:
        parse_poly(text)
    assert exc.value.pos == pos


def test_bracket_errors():
    with pytest.raises(ExpressionError):
        parse_poly("[X1, X2]")
    with pytest.raises(ExpressionError):
        parse_poly("[P*Q, R]", heisenberg(1))
    with pytest.raises(ExpressionError):
        parse_poly("X4", heisenberg(1))


def test_golden_normalize(specs):
    assert run(["normalize", "--basis", "ordered", specs["heisenberg"], "Q*P"]) == (0, "P*Q + R\n", "")
    assert run(["normalize", "--basis", "ordered", specs["gl2"], "E21*E12"])[1] == "E12*E21 - E11 + E22\n"
    code, out, _ = run(["normalize", "--basis", "regular", specs["heisenberg"], "P*Q"])
    assert (code, out) == (0, "1/2*P*Q + 1/2*Q*P - 1/2*R\n")
    assert run(["normalize", specs["heisenberg"], "-"], stdin="Q*P\n")[1] == "P*Q + R\n"


def test_normalize_trace_replays(specs, tmp_path):
    t = heisenberg(1)
    expr = tmp_path / "e.txt"
    expr.write_text("Q*P*Q - 2*R*P")
    code, out, _ = run(["normalize", "--trace", "--basis", "regular", specs["heisenberg"], f"@{expr}"])
    assert code == 0
    result, *lines = out.splitlines()
    src = parse_poly("Q*P*Q - 2*R*P", t)
    for line in lines:
        src = src + parse_trace_line(line, t.generator_names()).delta(t)
    assert src == parse_poly(result, t)


def test_normalize_non_lie(specs):
    code, _, err = run(["normalize", specs["bad"], "X2*X1"])
    assert code == 1 and "Jacobi" in err
    code, out, err = run(["normalize", "--force", specs["bad"], "X2*X1"])
    assert code == 0 and "not canonical" in err and out


def test_check_exit_codes(specs, tmp_path):
    assert run(["check", specs["heisenberg"]])[0] == 0
    assert run(["check", specs["bad"]])[0] == 1
    assert run(["check", "-"], stdin="dim 2\nbracket 1 2 : 1\n")[0] == 2
    assert run(["check", str(tmp_path / "nope")])[0] == 2
    assert run(["check", "gl:2"])[0] == 0
    assert run(["frobnicate"])[0] == 2


def test_residue_and_witness(specs):
    assert run(["residue", specs["bad"], "1", "2", "3"]) == (0, "X3\n", "")
    code, out, _ = run(["witness", specs["bad"], "1", "2", "3"])
    assert code == 0
    value, *lines = out.splitlines()
    t = bad_example()
    total = FreePoly.zero(3)
    for line in lines:
        total = total + parse_trace_line(line).delta(t)
    assert value == "X3" and total == FreePoly.gen(3, 3)
    assert run(["witness", specs["heisenberg"], "1", "2", "3"])[0] == 1
    assert run(["residue", specs["bad"], "1", "2", "9"])[0] == 2


def test_symmetrize_and_decompose():
    assert run(["symmetrize", "X1*X2*X2"])[1] == "1/3*X1*X2*X2 + 1/3*X2*X1*X2 + 1/3*X2*X2*X1\n"
    code, out, _ = run(["decompose", "2", "1/2*X1*X2 + 1/2*X2*X1"])
    assert code == 0 and out.strip()
    assert run(["decompose", "2", "X1*X2"])[0] == 1
    assert run(["decompose", "3", "X1*X1*X2*X3 + X1*X2*X1*X3"])[0] == 1
    sym4 = run(["symmetrize", "X1*X2*X3*X3"])[1].strip()
    assert run(["decompose", "3", sym4])[0] == 3


def test_oracle_and_matrix(specs):
    code, out, _ = run(["oracle", "--max-degree", "3", specs["gl2"]])
    assert code == 0 and out.endswith("PASS\n")
    assert run(["oracle", "--max-degree", "3", specs["bad"]])[0] == 1
    assert run(["oracle", "--max-degree", "9", "gl:3"])[0] == 3
    code, out, _ = run(["basis-matrix", "--max-degree", "2", specs["heisenberg"]])
    assert code == 0 and out.startswith("basis: (0,0,0) (1,0,0)")


def test_builtin_round_trip(tmp_path):
    code, out, _ = run(["builtin", "heisenberg", "2"])
    assert code == 0
    p = tmp_path / "h2.spec"
    p.write_text(out)
    assert run(["check", str(p)])[0] == 0
