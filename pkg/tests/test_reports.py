import pytest

from ciu.errors import HypothesisError, TheoremContradiction
from ciu.groebner import Ideal
from ciu.liaison import run_pipeline
from ciu.reports import (
    BettiData,
    ResolutionData,
    betti_numerator,
    cancellation_analysis,
    corollary_check,
    decreasing_type,
    degree_equation,
    degree_from_resolution,
    flat_segments,
    generator_degree_facts,
    hf_closed_form,
    hf_closed_form_table,
    initial_degree,
    minimal_betti,
    product_generator_check,
    prop_gen_pipeline,
    regularity_bound,
    resolution_degrees,
    socle_degree_bound,
    table,
    twists,
)

import fixtures
import oracle
from fixtures import R3, R4

EX = (7, 7, 7, 6)
EX_PI = [6] * 5
SMALL = (2, 2, 1, 1)
SMALL_PI = [1, 1, 2]


@pytest.fixture(scope="module")
def small_run():
    return run_pipeline(*fixtures.small())


def test_hf_low_degrees():
    d1, e1, d2, e2 = EX
    for t in range(e2 + min(EX_PI) - 1):
        assert hf_closed_form(d1, e1, d2, e2, EX_PI, t) == t + 1


def test_hf_tables_agree(small_run):
    K = small_run.intersection()
    assert hf_closed_form_table(*SMALL, SMALL_PI).values == (1, 2, 2)
    assert table(K.artinian_hf()).values == (1, 2, 2)
    H = hf_closed_form_table(*EX, EX_PI)
    assert H.values == tuple(range(1, 13)) + (8, 5)
    assert H.socle == 13
    assert H.total() == 91


def test_table_rejects_negative():
    with pytest.raises(ValueError):
        table([1, -1])


def test_generator_degrees():
    assert generator_degree_facts(*EX, EX_PI) == (12, 12)
    assert generator_degree_facts(*SMALL, SMALL_PI) == (2, 2)
    with pytest.raises(HypothesisError):
        generator_degree_facts(1, 2, 1, 1, [1, 1, 1])


def test_socle_bounds():
    sb = socle_degree_bound(*EX, EX_PI)
    assert (sb.bound, sb.case, sb.sharp) == (13, "e1>pi1", True)
    sb = socle_degree_bound(*SMALL, SMALL_PI)
    assert sb.bound == 2 and sb.sharp
    assert hf_closed_form_table(*SMALL, SMALL_PI).socle <= 2


def test_socle_third_case():
    X1, X2 = fixtures.third_socle_case(0)
    rep = run_pipeline(X1, X2)
    d, pi = rep.degrees, rep.pi
    sb = socle_degree_bound(*d, pi)
    assert sb.case == "e1=pi1,d1=pi2" and sb.sharp and not sb.tie
    assert table(rep.intersection().artinian_hf()).socle == sb.bound


def test_resolution_example():
    rd = resolution_degrees(*EX, EX_PI)
    assert rd.generators == (12,) * 5 + (14, 14)
    assert rd.syzygies == (13,) + (15,) * 5
    assert rd.render() == "gens: 12^5 14^2 / syz: 13 15^5"
    assert regularity_bound(rd) == 14
    assert initial_degree(rd) == 12
    assert degree_from_resolution(rd) == 91


def test_resolution_small():
    rd = resolution_degrees(*SMALL, SMALL_PI)
    assert sorted(rd.generators) == [2, 2, 3, 3, 3]
    assert sorted(rd.syzygies) == [2, 3, 4, 4]


def test_twists():
    assert twists([3, 1, 3]) == "1 3^2"
    with pytest.raises(ValueError):
        ResolutionData((1, 2), (3, 4))


def test_degree_equation():
    assert degree_equation(*EX, EX_PI) == (182, 182)
    assert degree_equation(*SMALL, SMALL_PI) == (10, 10)


def test_betti_numerator():
    assert betti_numerator(BettiData((2, 2), (4,))) == [1, 0, -2, 0, 1]


def test_cancellations_small(small_run):
    rd = resolution_degrees(*SMALL, SMALL_PI)
    rep = cancellation_analysis(rd, small_run.intersection(), *SMALL)
    assert rep.ok
    assert rep.cancellations == [2, 3]
    assert rep.actual.generators == (2, 3, 3)
    assert rep.actual.syzygies == (4, 4)


def test_cancellations_example():
    rep = run_pipeline(*fixtures.example())
    rd = resolution_degrees(*rep.degrees, rep.pi)
    ca = cancellation_analysis(rd, rep.intersection(), *rep.degrees)
    assert ca.ok and ca.cancellations == []


def test_cancellation_strict_raises(small_run):
    # a made-up prediction that the actual resolution cannot match
    rd = ResolutionData((5, 5, 5), (6, 6))
    with pytest.raises(TheoremContradiction):
        cancellation_analysis(rd, small_run.intersection(), *SMALL)


def test_products_small(small_run):
    N = small_run.normalized
    rep = product_generator_check(N.f1, N.g1, N.f2, N.g2, small_run.intersection())
    assert rep.ok and sum(rep.minimal.values()) >= 2
    assert rep.chosen == ("f1f2", "f1g2")


def test_products_example():
    rep = run_pipeline(*fixtures.example())
    N = rep.normalized
    pr = product_generator_check(N.f1, N.g1, N.f2, N.g2, rep.intersection())
    assert pr.minimal["f1f2"] and pr.minimal["g1f2"]
    assert pr.chosen == ("f1f2", "g1f2")


def test_propgen_fixture():
    f1, g1, f2, g2 = fixtures.propgen()
    x, y, z, w = R4.gens()
    data = prop_gen_pipeline(f1, g1, f2, g2)
    assert data.witness == (R4.one, R4.one, z)
    assert data.generators == (x * x + y * y, y * y * z, x * x * z)
    assert data.minors_match and data.equals_intersection and data.additivity
    assert data.hf.values == (1, 2, 2, 1)
    # g1 g2 and f1 g2 are two of the generators
    assert g1 * g2 in data.generators and f1 * g2 in data.generators


def test_propgen_not_applicable():
    x, y, z, w = R4.gens()
    assert prop_gen_pipeline(x * x, y * y, z * z + w * w, z * w + x * y) is None


def test_propgen_resolution_minimal_without_units():
    """With no unit entry in the Hilbert-Burch matrix its twists are the Betti numbers."""
    x, y, F5, z = fixtures.corollary(d2=5)
    data = prop_gen_pipeline(x, y, F5, z)
    b = minimal_betti(Ideal(R4, list(data.generators)))
    assert b.generators == data.resolution.generators
    assert b.syzygies == data.resolution.syzygies


def test_propgen_fixture_cancels_in_degree_three():
    # the witness has a1 = 1, so x^2 z = (x^2 + y^2) z - y^2 z is redundant
    f1, g1, f2, g2 = fixtures.propgen()
    data = prop_gen_pipeline(f1, g1, f2, g2)
    assert data.resolution.generators == (2, 3, 3) and data.resolution.syzygies == (3, 5)
    b = minimal_betti(Ideal(R4, list(data.generators)))
    assert b.generators == (2, 3) and b.syzygies == (5,)


def test_hf_against_oracle_propgen():
    f1, g1, f2, g2 = fixtures.propgen()
    K = Ideal(R4, list(prop_gen_pipeline(f1, g1, f2, g2).generators))
    for t in range(6):
        assert K.hilbert_function(t) == oracle.hf(K.generators, R4, t)


def test_corollary_small_degree():
    x, y, z, w = R4.gens()
    F3 = fixtures.corollary(d2=3)[2]
    rep = corollary_check(x, y, F3, z)
    assert rep.gate and rep.member


def test_corollary_flat_segment():
    x, y, F5, z = fixtures.corollary(d2=5)
    rep = corollary_check(x, y, F5, z)
    assert rep.gate and rep.member
    assert not rep.decreasing
    assert rep.flats
    assert rep.data.hf.values == (1, 2, 1, 1, 1)


def test_corollary_gate_not_met():
    x, y, z, w = R4.gens()
    rep = corollary_check(x * x, y * y, z, w)
    assert not rep.gate and "gate not met" in rep.reason


def test_decreasing_type():
    assert decreasing_type([1, 2, 3, 2, 1])
    assert decreasing_type([1, 2, 2, 2, 1])
    assert not decreasing_type([1, 2, 1, 1])
    assert flat_segments(table([1, 2, 1, 1, 1])) == [3, 4]
