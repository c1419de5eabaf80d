import pytest
from hypothesis import given, settings

from ciu.errors import CIUError, RingMismatch
from ciu.ring import Ring, exact_divide, format_poly, inverse_mod

from strategies import R3, polys

x, y, z = R3.gens()


def test_char_two_rejected():
    with pytest.raises(CIUError):
        Ring(("x", "y", "z"), p=2)


def test_non_prime_rejected():
    with pytest.raises(CIUError):
        Ring(("x", "y", "z"), p=15)


def test_ring_mismatch():
    S = Ring(("a", "b", "c"))
    with pytest.raises(RingMismatch):
        x + S.var("a")


def test_identities_trivial():
    f = x * y + 3 * z
    assert f + 0 == f
    assert f * 1 == f
    assert f - f == R3.zero
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y


def test_coefficients_reduced():
    f = R3.const(-1) * x
    assert f.leading_coefficient() == R3.p - 1
    assert format_poly(f) == f"{R3.p - 1}*x"


def test_inverse_mod():
    assert inverse_mod(2, 7) == 4
    with pytest.raises(Exception):
        inverse_mod(0, 7)


def test_grevlex_leading_term():
    # x*z^2 vs y^3 in grevlex with x>y>z: y^3 is larger
    f = x * z * z + y ** 3
    assert f.leading_monomial() == (0, 3, 0)
    L = Ring(("x", "y", "z"), order="lex")
    assert L.parse("x*z^2 + y^3").leading_monomial() == (1, 0, 2)


def test_exact_divide():
    assert exact_divide(x * x - y * y, x - y) == x + y
    assert exact_divide(x * x + y, x) is None


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f + (-f) == R3.zero


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_product_degree_and_division(f, g):
    if f and g:
        assert (f * g).degree() == f.degree() + g.degree()
        assert exact_divide(f * g, g) == f


@settings(max_examples=60, deadline=None)
@given(polys())
def test_parse_render_roundtrip(f):
    assert R3.parse(format_poly(f)) == f
