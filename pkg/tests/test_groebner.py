import random

import pytest
from hypothesis import given, settings, strategies as st

from ciu.errors import ResourceLimitExceeded, ZeroPolynomialError
from ciu.groebner import (
    Ideal,
    Limits,
    buchberger,
    codimension,
    colon,
    degree_of,
    eliminate,
    intersect,
    is_regular_sequence,
    member_with_witness,
    minimal_generators,
    minimal_syzygies,
    syzygies,
)
from ciu.ring import Ring, random_form

import oracle
from strategies import R3, polys

x, y, z = R3.gens()


def I(*gens):
    return Ideal(R3, list(gens))


def test_monomial_ideal_is_own_basis():
    assert sorted(g.leading_monomial() for g in I(x * x, y * y).groebner()) == [(0, 2, 0), (2, 0, 0)]


def test_basis_of_small_fixture_sum():
    # leading term of x+y is x, so x^2 reduces to y^2
    G = I(x + y, z, x * x, y * y).groebner()
    assert set(G.elements) == {z, x + y, y * y}
    assert I(*G.elements).equals(I(x + y, z, x * x))


def test_self_reduction():
    G = I(x * x, y * z + x * x).groebner()
    for g in G.elements:
        rem, quot = G.reduce(g)
        assert not rem
    rem, quot = I(x).groebner().reduce(x * x)
    assert not rem and quot == [x]


def test_membership_and_witness():
    J = I(x * x, y * y)
    ok, w = member_with_witness(x * x * z + 3 * y * y * x, J)
    assert ok
    assert w[0] * x * x + w[1] * y * y == x * x * z + 3 * y * y * x
    assert not J.contains(x * y)
    assert J.contains(R3.zero)
    assert J.witness(R3.zero) == [R3.zero, R3.zero]


def test_transform_rows():
    J = I(x * y - z * z, y * y - x * z, x * x - y * z)
    G = J.groebner(transform=True)
    for g, row in zip(G.elements, G.transform):
        assert sum((c * h for c, h in zip(row, J.generators)), R3.zero) == g


def test_intersections():
    J = I(x * x, y * y)
    assert intersect(J, J).equals(J)
    assert intersect(I(x), I(y)).equals(I(x * y))
    K = intersect(J, I(z, x + y))
    assert degree_of(K) == 5


def test_colon_examples():
    J = I(x * x, y * y, z)
    assert colon(J, I(R3.one)).equals(J)
    assert colon(J, I(x * x)).is_unit()
    G = colon(J, I(x + y, z, x * x, y * y))
    assert G.equals(I(x - y, x * x, z))


def test_eliminate():
    S = Ring(("t", "x", "y"))
    t, a, b = S.gens()
    E = eliminate(Ideal(S, [t * a, (S.one - t) * b]), 1)
    assert E.equals(Ideal(S, [a * b]))
    J = Ideal(S, [a * b, t])
    assert eliminate(J, 0).equals(J)


def test_codimension_and_regularity():
    S = Ring(("x", "y", "z"))
    assert codimension(I(x, y)) == 2
    assert codimension(I(x * x, y * y, z, x + y)) == 3
    assert is_regular_sequence([x, y, z])
    assert not is_regular_sequence([x, x * y])
    assert is_regular_sequence([x * x, y * y, z])


def test_degree_of_complete_intersections():
    assert degree_of(I(x * x, y * y)) == 4
    assert degree_of(I(x ** 3, y * y + x * z)) == 6


def test_minimal_generators():
    assert minimal_generators([x, x * x, x * y], R3) == [x]
    gens = minimal_generators([x - y, x * y, z], R3)
    assert sorted(g.degree() for g in gens) == [1, 1, 2]


def test_koszul_syzygy():
    S = syzygies([x * x, y * y])
    assert S.check()
    M = minimal_syzygies(S)
    assert len(M) == 1
    row = M.rows[0]
    # the single minimal syzygy is (-y^2, x^2) up to a scalar
    c = row[1].leading_coefficient()
    assert row[0].scale(pow(c, -1, R3.p)) == -(y * y) and row[1].scale(pow(c, -1, R3.p)) == x * x


def test_syzygy_zero_generator():
    with pytest.raises(ZeroPolynomialError):
        syzygies([x, R3.zero])


def test_resource_limit():
    J = Ideal(R3, [x ** 3 + y ** 2 * z, y ** 3 + x * z * z, z ** 3 + x * y * y + x * x * y], Limits(max_pairs=2, max_basis=4))
    with pytest.raises(ResourceLimitExceeded):
        J.groebner()


def test_determinism():
    gens = [x * y - z * z, y * y - x * z, x * x - y * z, x ** 3 + y ** 3]
    a = [str(g) for g in Ideal(R3, gens).groebner()]
    b = [str(g) for g in Ideal(R3, gens).groebner()]
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.lists(polys(max_deg=3, max_terms=4), min_size=1, max_size=3), polys(max_deg=3, max_terms=4))
def test_reduction_confluence(gens, f):
    """Normal forms do not depend on the generator order."""
    gens = [g for g in gens if g]
    if not gens:
        return
    G1 = Ideal(R3, gens).groebner()
    G2 = Ideal(R3, list(reversed(gens))).groebner()
    assert G1.normal_form(f) == G2.normal_form(f)
    rem, quot = G1.reduce(f)
    assert rem + sum((q * g for q, g in zip(quot, G1.elements)), R3.zero) == f


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_intersection_colon_duality(seed):
    """(I meet J) is inside I and J, and (I meet J) : J contains I."""
    rng = random.Random(seed)
    f1, g1 = random_form(R3, 1, rng), random_form(R3, 2, rng)
    f2 = random_form(R3, 1, rng)
    A, B = I(f1, g1), I(f2)
    K = intersect(A, B)
    assert A.contains_ideal(K) and B.contains_ideal(K)
    assert colon(K, B).contains_ideal(A)
    for t in range(5):
        assert oracle.hf(K.generators, R3, t) == K.hilbert_function(t)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_membership_against_oracle(seed):
    rng = random.Random(seed)
    gens = [random_form(R3, rng.randint(1, 3), rng, density=0.5) for _ in range(3)]
    gens = [g for g in gens if g]
    J = Ideal(R3, gens)
    for d in range(1, 5):
        f = random_form(R3, d, rng, density=0.4)
        g = sum((random_form(R3, d - h.degree(), rng) * h for h in gens if h.degree() <= d), R3.zero)
        for cand in (f, g):
            assert J.contains(cand) == oracle.member(cand, gens, R3)
        assert J.hilbert_function(d) == oracle.hf(gens, R3, d)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_syzygy_rows_vanish(seed):
    rng = random.Random(seed)
    gens = [random_form(R3, rng.randint(1, 2), rng) for _ in range(3)]
    S = syzygies(gens)
    assert S.check()
    M = minimal_syzygies(S)
    assert M.check()
