import random

import pytest
from hypothesis import given, settings, strategies as st

from ciu.errors import PfaffianError
from ciu.pfaffian import (
    AlternatingMatrix,
    MinorCache,
    PolyMatrix,
    bordered_sides,
    check_bordered,
    check_cayley,
    check_heymans,
    determinant,
    heymans_sides,
    identity_suite,
    pfaffian,
    random_alternating,
    random_entry,
    sgn,
    sub_pfaffians,
)

from strategies import R3

x, y, z = R3.gens()
O = R3.zero
I1 = R3.one
u, v, w = x, y, z


def alt3():
    return AlternatingMatrix(R3, [[O, u, v], [-u, O, w], [-v, -w, O]])


def test_delete_and_principal():
    A = alt3()
    assert A.delete() == A
    assert A.delete({1}, {2}).rows == [[-u, w], [-v, O]]
    assert A.principal(1).rows == [[O, w], [-w, O]]


def test_sgn():
    assert sgn((1, 2, 3)) == 1
    assert sgn((2, 1, 3)) == -1
    assert sgn((3, 1, 2)) == 1


def test_det_basics():
    Id = PolyMatrix(R3, [[I1, O, O], [O, I1, O], [O, O, I1]])
    assert determinant(Id) == I1
    M = PolyMatrix(R3, [[x, y, z], [x, y, z], [y, z, x]])
    assert determinant(M) == O
    assert determinant(PolyMatrix(R3, [])) == I1


def test_pfaffian_small():
    a = x * y + z
    assert pfaffian(AlternatingMatrix(R3, [[O, a], [-a, O]])) == a
    assert pfaffian(AlternatingMatrix(R3, [])) == I1
    rng = random.Random(3)
    A = random_alternating(R3, 4, 1, rng)
    e = lambda i, j: A.rows[i - 1][j - 1]
    assert pfaffian(A) == e(1, 2) * e(3, 4) - e(1, 3) * e(2, 4) + e(1, 4) * e(2, 3)


def test_pfaffian_rejects():
    with pytest.raises(PfaffianError):
        pfaffian(PolyMatrix(R3, [[O, x, y], [-x, O, z], [-y, -z, O]]))
    with pytest.raises(PfaffianError):
        pfaffian(PolyMatrix(R3, [[O, x], [x, O]]))


def test_sub_pfaffians_size_three():
    sp = sub_pfaffians(alt3())
    assert sp.p == (-w, v, -u)


def test_annihilation():
    rng = random.Random(5)
    for n in (3, 5):
        A = random_alternating(R3, n, 1, rng)
        p = sub_pfaffians(A).p
        assert all(not c for c in A.apply(list(p)))


def test_cayley_diagonal_case():
    rng = random.Random(7)
    A = random_alternating(R3, 5, 1, rng)
    for i in range(1, 6):
        assert determinant(A.principal(i)) == pfaffian(A.principal(i)) ** 2
        assert check_cayley(A, i, i)


def test_heymans_repeated_indices():
    rng = random.Random(8)
    A = random_alternating(R3, 5, 1, rng)
    # {i,j} = {h,k}: both sides vanish (odd alternating determinant)
    lhs, first, second = heymans_sides(A, 1, 2, 1, 2)
    assert lhs == O and first == O and second == O
    assert check_heymans(A, 2, 4, 4, 5)


def test_bordered_sign():
    # n = 3, a = b = e1: det B = -w^2 (the unsquared-sign form gives w^2)
    A = alt3()
    a = [I1, O, O]
    det, prod = bordered_sides(A, a, a)
    assert prod == w * w
    assert det == -(w * w)
    assert check_bordered(A, a, a)


def test_one_hot_borders():
    rng = random.Random(9)
    A = random_alternating(R3, 5, 1, rng)
    p = sub_pfaffians(A).p
    for i in range(5):
        e = [I1 if k == i else O for k in range(5)]
        det, _ = bordered_sides(A, e, e)
        assert det == -(p[i] * p[i])


def test_methods_agree():
    rng = random.Random(11)
    M = PolyMatrix(R3, [[random_entry(R3, 2, rng) for _ in range(4)] for _ in range(4)])
    d = determinant(M, "sparse")
    assert determinant(M, "cofactor") == d
    assert determinant(M, "bareiss") == d


def test_cache_matches_direct():
    rng = random.Random(12)
    A = random_alternating(R3, 5, 2, rng)
    for dense in (True, False):
        c = MinorCache(A, dense=dense, slack=4)
        for i in range(1, 6):
            for j in range(1, 6):
                assert c.det_deleted({i}, {j}) == determinant(A.delete({i}, {j}), "sparse")
            assert c.pf_deleted((i,)) == pfaffian(A.principal(i))
        a = [random_entry(R3, 2, rng) for _ in range(5)]
        b = [random_entry(R3, 2, rng) for _ in range(5)]
        assert bordered_sides(A, a, b, c) == bordered_sides(A, a, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 4, 6]))
def test_dense_and_sparse_pfaffian_agree(seed, n):
    from ciu.pfaffian import _pf_sparse

    A = random_alternating(R3, n, 2, random.Random(seed))
    assert pfaffian(A) == _pf_sparse(A.rows, R3)
    assert determinant(A) == pfaffian(A) ** 2


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_identities_random_size_five(seed):
    rng = random.Random(seed)
    A = random_alternating(R3, 5, 2, rng)
    i, j = rng.randint(1, 5), rng.randint(1, 5)
    assert check_cayley(A, i, j)
    i, j = rng.sample(range(1, 6), 2)
    h, k = rng.sample(range(1, 6), 2)
    assert check_heymans(A, i, j, h, k)
    a = [random_entry(R3, 2, rng) for _ in range(5)]
    b = [random_entry(R3, 2, rng) for _ in range(5)]
    assert check_bordered(A, a, b)


def test_suite_small_run():
    res = identity_suite(3, 10, seed=1)
    assert res.all_passed()
    assert res.bordered_plus_holds == 0
