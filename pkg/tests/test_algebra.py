import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bocskit.algebra import (Algebra, ZeroQuotientError, center, check_presentation,
                             enveloping_algebra, idempotent_subalgebra, ideal_closure,
                             quotient_by_ideal, tensor_algebras, two_sided_ideal_of_idempotent,
                             validate_idempotents)
from bocskit.corpus import CORPUS, by_name, matrix_algebra
from bocskit.linalg import Mat, rank, vecmat

NAMES = [n for n, _ in CORPUS]


def k_times_k_unit_only():
    consts = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    return Algebra.from_dense(consts, [1, 1], [[1, 1]], name="KxK")


@pytest.mark.parametrize("name", NAMES)
def test_corpus_presentations_valid(name):
    A = by_name(name)
    assert check_presentation(A).ok
    assert validate_idempotents(A).ok


def test_ground_field_and_A2(K, A2):
    assert K.dim == 1 and check_presentation(K).ok
    assert A2.dim == 2 and A2.mul([0, 1], [0, 1]) == [0, 0]


def test_corrupted_constant_is_located(B5):
    t = copy.deepcopy(B5.table)
    t[1][3] = [(4, 2)]  # a0 * a1 := 2 a1a0
    bad = Algebra(B5.dim, t, B5.unit, B5.idempotents, B5.labels)
    rep = check_presentation(bad)
    assert not rep.ok
    assert any("(0,1,3,4)" in f for f in rep.failures)


def test_unit_and_products(B5):
    for i in range(B5.dim):
        b = B5.basis_vector(i)
        assert B5.mul(list(B5.unit), b) == b == B5.mul(b, list(B5.unit))
    a0, a1, path = (B5.basis_vector(B5.labels.index(x)) for x in ("a0", "a1", "a1a0"))
    assert B5.mul(a1, a0) == path
    assert B5.mul(a0, a1) == [0] * 5


def test_opposite(B5, A2):
    assert A2.opposite.table == A2.table
    assert B5.opposite.opposite is B5
    assert check_presentation(B5.opposite).ok and B5.opposite.dim == 5


def test_enveloping(K, A2, B5):
    assert enveloping_algebra(K).dim == 1
    E = enveloping_algebra(A2)
    assert E.dim == 4 and E.is_commutative()
    E5 = enveloping_algebra(B5)
    assert E5.dim == 25 and check_presentation(E5).ok


def test_tensor_products(K, A2, B5):
    AK = tensor_algebras(A2, K)
    assert AK.table == A2.table
    AA = tensor_algebras(A2, A2)
    assert AA.dim == 4 and AA.is_commutative() and len(AA.idempotents) == 1
    BA = tensor_algebras(B5, A2)
    assert BA.dim == 10 and len(BA.idempotents) == 2 and check_presentation(BA).ok


def test_radical(K, A2, B5):
    assert B5.radical.nrows == 3
    assert A2.radical.nrows == 1 and A2.radical.rows[0][0] == 0
    assert K.radical.nrows == 0


def test_center(A2, B5):
    assert center(A2).nrows == 2
    Z = center(B5)
    assert Z.nrows == 2
    for z in Z.rows:
        for i in range(B5.dim):
            b = B5.basis_vector(i)
            assert B5.mul(list(z), b) == B5.mul(b, list(z))
    # cross-check against the corner e1 B5 e1, a local algebra of dim 2
    corner = idempotent_subalgebra(B5, B5.idempotents[1])
    assert center(corner.algebra).nrows == Z.nrows
    Mz = center(matrix_algebra(2))
    assert Mz.nrows == 1 and rank(Mat([list(Mz.rows[0]), [1, 0, 0, 1]], 4)) == 1


def test_corners(B5):
    unit = idempotent_subalgebra(B5, B5.unit)
    assert unit.algebra.dim == B5.dim
    c1 = idempotent_subalgebra(B5, B5.idempotents[1]).algebra
    assert c1.dim == 2 and check_presentation(c1).ok
    nonunit = [i for i in range(2) if c1.basis_vector(i) != list(c1.unit)]
    assert len(nonunit) == 1
    x = c1.basis_vector(nonunit[0])
    assert c1.mul(x, x) == [0, 0]  # so e1 B5 e1 ~= K[x]/(x^2)
    # Cartan entries: e_i B5 e_j has dimension [P_i : S_j]
    dims = [[idempotent_subalgebra(B5, B5.idempotents[i]).algebra.dim for i in range(2)]]
    assert dims == [[1, 2]]


def test_ideals_and_quotients(A2, B5):
    assert ideal_closure(B5, [[0] * 5]).dim == 0
    e1 = B5.idempotents[1]
    assert two_sided_ideal_of_idempotent(B5, e1).dim == 4
    Q = quotient_by_ideal(B5, [e1])
    assert Q.algebra.dim == 1 and check_presentation(Q.algebra).ok
    with pytest.raises(ZeroQuotientError):
        quotient_by_ideal(A2, [list(A2.unit)])


def test_idempotent_primitivity():
    rep = validate_idempotents(k_times_k_unit_only())
    assert not rep.ok
    assert validate_idempotents(by_name("kx:2")).ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(NAMES), st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.data())
def test_associativity_on_random_elements(name, coeffs, data):
    A = by_name(name)
    vecs = [data.draw(st.lists(st.integers(-3, 3), min_size=A.dim, max_size=A.dim)) for _ in coeffs]
    x, y, z = vecs
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    # left/right multiplication matrices realize the product
    assert vecmat(y, A.left_mult(x)) == A.mul(x, y) == vecmat(x, A.right_mult(y))
