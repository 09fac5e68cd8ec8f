import itertools
from fractions import Fraction

import pytest

from envalg.errors import NotALieAlgebra, SpecFormatError
from envalg.freealg import FreePoly
from envalg.lie import (
    BracketTable, JacobiReport, ValidatedLie, abelian, bad_example, bracket, builtin,
    dump_spec, gl, gl_index, heisenberg, jacobi_residue, load_spec, parse_spec,
    require_lie, validate,
)


def g(t, i):
    return FreePoly.gen(t.n, i)


def matrix_bracket(n, a, b):
    """[E_a, E_b] of matrix units computed by multiplying 0/1 matrices."""
    def unit(i, j):
        return [[int((r, c) == (i, j)) for c in range(1, n + 1)] for r in range(1, n + 1)]

    def mm(x, y):
        return [[sum(x[r][s] * y[s][c] for s in range(n)) for c in range(n)] for r in range(n)]

    x, y = unit(*a), unit(*b)
    xy, yx = mm(x, y), mm(y, x)
    return {(r + 1, c + 1): xy[r][c] - yx[r][c] for r in range(n) for c in range(n) if xy[r][c] != yx[r][c]}


def test_antisymmetry_is_implied():
    t = BracketTable(2, {(2, 1): {1: 3}})
    assert t.structure(1, 2) == {1: -3}
    assert t.structure(2, 1) == {1: 3}
    assert t.structure(1, 1) == {}


def test_table_rejects_inconsistency():
    with pytest.raises(ValueError):
        BracketTable(2, {(1, 2): {1: 1}, (2, 1): {1: 1}})
    with pytest.raises(ValueError):
        BracketTable(2, {(1, 1): {2: 1}})
    with pytest.raises(ValueError):
        BracketTable(2, {(1, 3): {1: 1}})
    BracketTable(2, {(1, 2): {1: 1}, (2, 1): {1: -1}})


def test_heisenberg_relation():
    t = heisenberg(1)
    assert t.generator_names() == ("P", "Q", "R")
    assert bracket(t, g(t, 1), g(t, 2)) == -g(t, 3)
    assert heisenberg(2).generator_names() == ("P1", "P2", "Q1", "Q2", "R")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gl_matches_matrix_commutators(n):
    t = gl(n)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for a, b in itertools.product(pairs, repeat=2):
        expected = FreePoly(t.n, {(gl_index(n, *rc),): c for rc, c in matrix_bracket(n, a, b).items()})
        assert bracket(t, g(t, gl_index(n, *a)), g(t, gl_index(n, *b))) == expected


@pytest.mark.parametrize("t", [abelian(4), heisenberg(1), heisenberg(2), gl(2), gl(3)])
def test_builtins_are_lie(t):
    v = validate(t)
    assert isinstance(v, ValidatedLie)
    for triple in itertools.combinations(range(1, t.n + 1), 3):
        assert not jacobi_residue(t, *triple)
    assert require_lie(t) == (t, True)


def test_bad_example_fails_jacobi():
    t = bad_example()
    report = validate(t)
    assert isinstance(report, JacobiReport)
    assert report.failures[0][0] == (1, 2, 3)
    assert report.failures[0][1] == FreePoly.gen(3, 3)
    assert report.render().splitlines()[0] == "not a Lie algebra: Jacobi identity fails"
    with pytest.raises(NotALieAlgebra):
        require_lie(t)
    assert require_lie(t, force=True) == (t, False)


def test_residue_is_alternating():
    t = bad_example()
    r = jacobi_residue(t, 1, 2, 3)
    for perm in itertools.permutations((1, 2, 3)):
        sign = 1 if perm in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1
        assert jacobi_residue(t, *perm) == r.scale(sign)
    assert not jacobi_residue(t, 1, 1, 2)
    with pytest.raises(IndexError):
        jacobi_residue(t, 1, 2, 4)


def test_bracket_needs_degree_one():
    t = heisenberg(1)
    with pytest.raises(ValueError):
        bracket(t, g(t, 1) * g(t, 2), g(t, 1))
    assert bracket(t, FreePoly.zero(3), g(t, 1)) == FreePoly.zero(3)


def test_spec_round_trip(tmp_path):
    for t in (heisenberg(2), gl(2), bad_example(), abelian(1)):
        assert parse_spec(dump_spec(t, "x")) == t
    path = tmp_path / "t.spec"
    path.write_text(dump_spec(gl(2)))
    assert load_spec(path) == gl(2)
    assert builtin("gl", 2) == gl(2)
    with pytest.raises(ValueError):
        builtin("sl", 2)


def test_spec_parsing_details():
    t = parse_spec("# comment\ndim 2\nname 1 A\nbracket 2 1 : 1/2 1   # trailing\n")
    assert t.generator_names() == ("A", "X2")
    assert t.structure(1, 2) == {1: Fraction(-1, 2)}


@pytest.mark.parametrize("text, line", [
    ("bracket 1 2 : 1 1\n", 1),
    ("dim 2\nbracket 1 2 : 1 5\n", 2),
    ("dim 2\nbracket 1 2 : x 1\n", 2),
    ("dim 2\nbracket 1 2 : 1 1\nbracket 2 1 : 1 1\n", 3),
    ("dim 2\nbracket 1 1 : 1 2\n", 2),
    ("dim 2\nfoo\n", 2),
    ("dim 2\nname 1 A\nname 2 A\n", None),
    ("dim 0\n", 1),
    ("", None),
])
def test_spec_errors(text, line):
    with pytest.raises(SpecFormatError) as exc:
        parse_spec(text)
    if line is not None:
        assert exc.value.lineno == line
        assert str(exc.value).startswith(f"line {line}: ")
