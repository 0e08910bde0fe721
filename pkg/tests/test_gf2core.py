from __future__ import annotations


import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lsgame.gf2core import (
    BinaryLinearSystem, brute_force_solve, dumps_lsys, gf2_solve, loads_lsys,
    magic_square_system, read_lsys, row_support, satisfying_assignments, write_lsys,
)


@st.composite
def systems(draw, max_n=7, max_m=6):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    rows = [draw(st.integers(1, (1 << n) - 1)) for _ in range(m)]
    b = [draw(st.integers(0, 1)) for _ in range(m)]
    return BinaryLinearSystem(n, tuple(rows), tuple(b))


def test_from_matrix_roundtrip():
    A = np.array([[1, 1, 0], [0, 1, 1]])
    sys = BinaryLinearSystem.from_matrix(A, [1, 0])
    assert np.array_equal(sys.A, A)
    assert sys.m == 2 and sys.n == 3
    assert sys.names == ("x1", "x2", "x3")
    assert sys.index("x2") == 1


def test_rows_wider_than_n_rejected():
    with pytest.raises(ValueError):
        BinaryLinearSystem(2, (0b100,), (0,))


def test_satisfying_assignments_parity_and_order():
    sys = BinaryLinearSystem.from_supports(4, [[0, 1, 3]], [1])
    outs = satisfying_assignments(sys, 0)
    assert len(outs) == 4
    assert outs == sorted(outs)
    assert all(sum(a) % 2 == 1 for a in outs)
    assert row_support(sys, 0) == [0, 1, 3]


@settings(max_examples=200, deadline=None)
@given(systems())
def test_elimination_agrees_with_brute_force(sys):
    x = gf2_solve(sys)
    y = brute_force_solve(sys)
    assert (x is None) == (y is None)
    if x is not None:
        assert sys.is_solution(x)


def test_magic_square_is_inconsistent():
    sys = magic_square_system()
    assert (sys.n, sys.m) == (9, 6)
    assert sum(sys.b) == 1
    assert gf2_solve(sys) is None
    assert brute_force_solve(sys) is None
    # every variable appears in exactly two equations
    assert all(c == 2 for c in sys.A.sum(axis=0))


def test_solvable_small_system():
    sys = BinaryLinearSystem.from_supports(2, [[0, 1], [0]], [1, 1])
    assert gf2_solve(sys) == [1, 0]


@settings(max_examples=100, deadline=None)
@given(systems())
def test_lsys_roundtrip(sys):
    back = loads_lsys(dumps_lsys(sys))
    assert back.rows == sys.rows and back.b == sys.b and back.n == sys.n


def test_lsys_file_roundtrip(tmp_path):
    p = tmp_path / "ms.lsys"
    write_lsys(magic_square_system(), p)
    assert p.read_text().splitlines()[0] == "6 9"
    assert read_lsys(p).rows == magic_square_system().rows


@pytest.mark.parametrize("text", ["", "2 3\n110\n", "1 3\n11\n1\n", "1 2\n1x\n0\n", "x y\n"])
def test_malformed_lsys(text):
    with pytest.raises(ValueError):
        loads_lsys(text)


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_solve(BinaryLinearSystem(25, (1,), (0,)))
