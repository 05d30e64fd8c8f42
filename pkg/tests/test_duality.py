import pytest

from conftest import quotient
from linkage.checks import overall
from linkage.duality import (
    DeficiencySuite,
    NotEquidimensional,
    canonical_module,
    check_biduality_euler,
    check_duality_d3,
    check_duality_d4,
    check_generalized_serre_duality,
    check_s_ell_duality,
    deficiency_diagram,
    deficiency_module,
    finite_length_lower_deficiencies,
    gamma_hilbert,
    is_unmixed_s1,
    iterated_deficiency,
    local_cohomology_hilbert,
    word,
)
from linkage.groebner import Ideal
from linkage.oracle import oracle_ext_hf

BIG = 10**7


def test_plane_pair_deficiencies_frozen(plane_pair):
    E = quotient(plane_pair)
    values = {i: deficiency_module(E, i).hilbert.values(-4, 4) for i in range(6)}
    assert values[2] == [0, 0, 0, 0, 0, 1, 1, 1, 1]
    assert values[3] == [0, 0, 0, 0, 0, 0, 0, 2, 6]
    for i in (0, 1, 4, 5):
        assert values[i] == [0] * 9


def test_twisted_cubic_canonical_series(twisted_cubic):
    D2 = deficiency_module(quotient(twisted_cubic), 2)
    assert D2.hilbert.series() == ({1: 2, 2: 1}, 2)


@pytest.mark.parametrize("name", ["twisted_cubic", "plane_pair", "residual_pair"])
def test_deficiencies_agree_with_oracle(name, request):
    M = quotient(request.getfixturevalue(name))
    for i in range(M.ring.n + 1):
        ours = deficiency_module(M, i).hilbert
        assert oracle_ext_hf(M, i, -6, 6, limit=BIG) == {mu: ours(mu) for mu in range(-6, 7)}


def test_local_cohomology_reflects(plane_pair):
    E = quotient(plane_pair)
    h2 = local_cohomology_hilbert(E, 2)
    assert [h2(mu) for mu in (-1, -2, 0, 1)] == [1, 1, 0, 0]


def test_gamma_of_saturated_ring_is_the_ring(twisted_cubic, plane_pair):
    for I in (twisted_cubic, plane_pair):
        M = quotient(I)
        g = gamma_hilbert(M)
        assert all(g(mu) == M.hilbert(mu) for mu in range(-4, 9))


def test_word_order_and_iteration(plane_pair):
    assert word("112") == (1, 1, 2)
    E = quotient(plane_pair)
    outer = deficiency_module(deficiency_module(E, 2), 1)
    assert iterated_deficiency(E, "12").hilbert == outer.hilbert
    assert DeficiencySuite.of(E).hf("12") == outer.hilbert


def test_canonical_module_is_top_deficiency(twisted_cubic):
    M = quotient(twisted_cubic)
    assert canonical_module(M).hilbert == deficiency_module(M, 2).hilbert


def test_unmixed_detection(r4, plane_pair, twisted_cubic):
    assert is_unmixed_s1(quotient(plane_pair))
    assert is_unmixed_s1(quotient(twisted_cubic))
    mixed = Ideal.of(r4, ["x0*x3", "x0*x2", "x0*x1"])
    assert not is_unmixed_s1(quotient(mixed))
    with pytest.raises(NotEquidimensional):
        deficiency_diagram(quotient(mixed))


def test_plane_pair_diagram(plane_pair):
    diag = deficiency_diagram(quotient(plane_pair))
    assert diag.d == 3
    assert diag.nonzero() == [(1, 2)]
    assert diag.entries[(1, 2)].values(-3, 1) == [1, 1, 1, 1, 0]
    cls = diag.classification
    assert cls.depth_class == 2 and cls.s_ell == 1


def test_twisted_cubic_diagram_is_empty(twisted_cubic):
    assert deficiency_diagram(quotient(twisted_cubic)).nonzero() == []


@pytest.mark.parametrize("name", ["twisted_cubic", "plane_pair", "cone_pair"])
def test_biduality_euler(name, request):
    assert overall(check_biduality_euler(quotient(request.getfixturevalue(name)))) == "pass"


def test_duality_by_dimension(plane_pair, cone_pair, twisted_cubic):
    assert overall(check_duality_d3(quotient(plane_pair))) == "pass"
    assert overall(check_duality_d4(quotient(cone_pair))) == "pass"
    assert overall(check_duality_d3(quotient(twisted_cubic))) == "precondition_failed"


def test_serre_duality_on_cone(cone_pair):
    reports = check_generalized_serre_duality(quotient(cone_pair))
    assert overall(reports) == "pass"
    assert finite_length_lower_deficiencies(quotient(cone_pair))


def test_s_ell_duality_on_cm_curve(twisted_cubic):
    # arithmetically CM so every lower deficiency vanishes
    assert overall(check_s_ell_duality(quotient(twisted_cubic), 2)) == "pass"


def test_s_ell_precondition_for_mixed_ideal(r4):
    mixed = quotient(Ideal.of(r4, ["x0*x1^2", "x0*x1*x2", "x0*x2^2"]))
    reports = check_s_ell_duality(mixed, 2)
    assert [r.status for r in reports] == ["precondition_failed"]
