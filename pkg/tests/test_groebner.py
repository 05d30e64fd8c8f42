import pytest

from conftest import ring
from linkage.groebner import (
    DegenerateQuotient,
    Ideal,
    NotHomogeneous,
    contains,
    degree,
    groebner_basis,
    hilbert_series,
    ideal_intersection,
    ideal_quotient,
    ideals_equal,
    krull_dimension,
    normal_form,
    quotient_by_element,
    saturate_irrelevant,
    unit_ideal,
)
from linkage.hilbert import HilbertFunction
from linkage.oracle import oracle_ideal_hf, oracle_membership


def gens(I):
    return {str(g) for g in groebner_basis(I).elements}


def test_principal_basis(r4):
    assert gens(Ideal.of(r4, ["x0"])) == {"x0"}


def test_hand_buchberger_example():
    r = ring(2)
    I = Ideal.of(r, ["x0^2", "x0*x1 + x1^2"])
    assert gens(I) == {"x0^2", "x0*x1 + x1^2", "x1^3"}


def test_twisted_cubic_basis_is_the_three_quadrics(twisted_cubic):
    G = groebner_basis(twisted_cubic)
    assert len(G.elements) == 3
    assert ideals_equal(twisted_cubic, Ideal(twisted_cubic.ring, G.elements))


def test_zero_ideal_has_empty_basis(r4):
    assert groebner_basis(Ideal(r4, ())).elements == ()


def test_normal_forms(r4, twisted_cubic):
    x0 = r4.gen(0)
    assert normal_form(x0, groebner_basis(Ideal.of(r4, ["x0"]))).is_zero()
    G = groebner_basis(twisted_cubic)
    # x1^2 is a leading term, so it reduces to x0*x2
    assert normal_form(r4.parse("x1^2"), G) == r4.parse("x0*x2")
    f = r4.parse("x0*x2*x3")
    nf = normal_form(f, G)
    assert nf == f
    assert oracle_membership(f - nf, twisted_cubic)


def test_membership_agrees_with_oracle(twisted_cubic, plane_pair, r4, r5):
    samples4 = ["x0*x2 - x1^2", "x1^2", "x0*x3^2 - x1*x2*x3", "x0^3", "x1*x3 - x2^2 + x0*x3 - x1*x2"]
    for s in samples4:
        f = r4.parse(s)
        assert contains(twisted_cubic, f) == oracle_membership(f, twisted_cubic)
    assert oracle_membership(r5.parse("x0*x2"), plane_pair)
    assert not oracle_membership(r5.parse("x0*x1"), plane_pair)
    assert oracle_membership(r5.zero(), plane_pair)


def test_quotients(r4, r5, plane_pair, residual_pair, ci22):
    I = Ideal.of(r4, ["x0^2", "x1*x2"])
    assert ideals_equal(ideal_quotient(I, unit_ideal(r4)), I)
    assert gens(ideal_quotient(Ideal.of(r4, ["x0^2"]), Ideal.of(r4, ["x0"]))) == {"x0"}
    assert ideals_equal(ideal_quotient(ci22, plane_pair), residual_pair)
    with pytest.raises(DegenerateQuotient):
        quotient_by_element(I, r4.zero())
    with pytest.raises(DegenerateQuotient):
        ideal_quotient(I, Ideal(r4, ()))


def test_intersections(r4, plane_pair):
    assert gens(ideal_intersection(Ideal.of(r4, ["x0"]), Ideal.of(r4, ["x1"]))) == {"x0*x1"}
    r5 = plane_pair.ring
    meet = ideal_intersection(Ideal.of(r5, ["x0", "x1"]), Ideal.of(r5, ["x2", "x3"]))
    assert ideals_equal(meet, plane_pair)
    assert ideals_equal(ideal_intersection(plane_pair, plane_pair), plane_pair)


def test_saturation(r4, twisted_cubic):
    assert ideals_equal(saturate_irrelevant(twisted_cubic), twisted_cubic)
    emb = Ideal.of(r4, ["x0^2", "x0*x1", "x0*x2", "x0*x3"])
    assert gens(saturate_irrelevant(emb)) == {"x0"}
    assert groebner_basis(saturate_irrelevant(unit_ideal(r4))).is_unit()


def test_hilbert_series_examples(r4, plane_pair):
    assert hilbert_series(Ideal(r4, ())) == HilbertFunction.from_series({0: 1}, 4)
    cubic = Ideal.of(r4, ["x0^3 + x1*x2*x3"])
    assert hilbert_series(cubic) == HilbertFunction.from_series({0: 1, 3: -1}, 4)
    # 2/(1-t)^3 - 1/(1-t)
    assert hilbert_series(plane_pair) == HilbertFunction.from_series({0: 1, 1: 2, 2: -1}, 3)


def test_dimension_and_degree(r4, twisted_cubic, plane_pair):
    assert krull_dimension(Ideal(r4, ())) == 4
    assert krull_dimension(twisted_cubic) == 2
    assert krull_dimension(plane_pair) == 3
    assert krull_dimension(unit_ideal(r4)) == -1
    assert degree(twisted_cubic) == 3 and degree(plane_pair) == 2
    hf = hilbert_series(twisted_cubic)
    assert [hf(mu) for mu in range(5, 9)] == [3 * mu + 1 for mu in range(5, 9)]


def test_inhomogeneous_generators_rejected(r4):
    with pytest.raises(NotHomogeneous):
        Ideal.of(r4, ["x0^2 + x1"])


@pytest.mark.parametrize("name", ["twisted_cubic", "plane_pair", "residual_pair", "cone_pair", "non_star"])
def test_hilbert_function_agrees_with_oracle(name, request):
    I = request.getfixturevalue(name)
    hf = hilbert_series(I)
    oracle = oracle_ideal_hf(I, -3, 10, limit=10**7)
    assert {mu: hf(mu) for mu in oracle} == oracle
