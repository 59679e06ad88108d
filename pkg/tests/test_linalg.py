import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bocskit.linalg import (Coordinates, Mat, Quotient, Subspace, _backend, backend_name, invert,
                            kernel_basis, nullspace, rank, rat, rat_str, row_basis, rref,
                            solve_linear, vecmat)
from bocskit.linalg import _pykernel

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
            .map(lambda rows: Mat([[rat(x) for x in row] for row in rows], c))))


def test_rat_canonical():
    assert rat(Fraction(4, 2)) == 2 and type(rat(Fraction(4, 2))) is int
    assert rat_str(Fraction(-3, 6)) == "-1/2"
    assert rat_str(0) == "0/1"
    assert rat("6/4") == Fraction(3, 2)


@pytest.mark.parametrize("m,r", [
    (Mat.identity(2), 2),
    (Mat.zeros(3, 4), 0),
    (Mat([[1, 2], [2, 4]], 2), 1),
])
def test_rank_examples(m, r):
    assert rank(m) == r


def test_nullspace_examples():
    assert nullspace(Mat.identity(3)).nrows == 0
    assert nullspace(Mat.zeros(2, 3)).nrows == 3
    assert kernel_basis(Mat.zeros(2, 3)).nrows == 2
    k = kernel_basis(Mat([[1, 0], [1, 0]], 2))
    assert k.nrows == 1
    v = k.rows[0]
    assert v[0] == -v[1] != 0


def test_solve_examples():
    rhs = Mat([[3, 4]], 2)
    assert solve_linear(Mat.identity(2), rhs) == rhs
    assert solve_linear(Mat([[1, 1], [1, 1]], 2), Mat([[1, 2]], 2)) is None
    S = Mat([[2, 1], [1, 3]], 2)
    b = Mat([[5, 7]], 2)
    x = solve_linear(S, b)
    assert x @ S == b


def test_invert_examples():
    assert invert(Mat.identity(3)) == Mat.identity(3)
    P = Mat([[0, 1], [1, 0]], 2)
    assert invert(P) == P
    assert invert(Mat([[1, 2], [2, 4]], 2)) is None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).nrows == m.nrows
    k = kernel_basis(m)
    if k.nrows:
        assert (k @ m).is_zero()
    n = nullspace(m)
    if n.nrows:
        assert (m @ n.T()).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4))
def test_invert_roundtrip(m):
    if m.nrows != m.ncols:
        return
    inv = invert(m)
    if rank(m) == m.nrows:
        assert m @ inv == Mat.identity(m.nrows) == inv @ m
    else:
        assert inv is None


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_subspace_quotient_coordinates(m):
    S = Subspace(m)
    assert S.dim == rank(m)
    assert S.contains_all(m)
    Q = Quotient(m)
    assert Q.dim == m.ncols - rank(m)
    if m.nrows and Q.dim:
        assert (m @ Q.proj).is_zero()
    if Q.dim:
        assert Q.section @ Q.proj == Mat.identity(Q.dim)
    B = row_basis(m)
    if B.nrows:
        C = Coordinates(B)
        for r in m.rows:
            assert vecmat(C.of(r), B) == list(r)


@settings(max_examples=40, deadline=None)
@given(matrices(6, 6))
def test_kernels_agree(m):
    """The compiled and pure-Python kernels return identical echelon forms."""
    if backend_name() != "gmp":
        pytest.skip("compiled kernel not built")
    from bocskit.linalg import _ckernel

    assert _ckernel.rref(m.rows, m.ncols) == _pykernel.rref(m.rows, m.ncols)
    assert _ckernel.rank(m.rows, m.ncols) == _pykernel.rank(m.rows, m.ncols)
    assert (_ckernel.matmul(m.rows, m.T().rows, m.ncols, m.nrows)
            == _pykernel.matmul(m.rows, m.T().rows, m.ncols, m.nrows))


def test_runtime_switch():
    before = _backend.name
    try:
        _backend.use("python")
        R, piv = rref(Mat([[2, 4], [1, 3]], 2))
        assert R == Mat.identity(2) and piv == [0, 1]
    finally:
        _backend.use(before)
    with pytest.raises(ValueError):
        _backend.use("fortran")


def test_env_forces_fallback():
    env = dict(os.environ, BOCSKIT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from bocskit.linalg import backend_name; print(backend_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_large_entries_exact():
    big = 10 ** 40
    m = Mat([[big, 1], [1, Fraction(1, big)]], 2)
    assert rank(m) == 1
    m2 = Mat([[big, 1], [1, big]], 2)
    assert invert(m2) @ m2 == Mat.identity(2)
