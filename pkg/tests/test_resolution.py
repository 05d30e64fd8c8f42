import pytest

from conftest import quotient, ring
from linkage.groebner import Ideal, unit_ideal
from linkage.oracle import oracle_betti, oracle_resolution_exact
from linkage.resolution import (
    EmptyScheme,
    ModulePresentation,
    ZeroModule,
    free_resolution,
    homological_invariants,
    is_gorenstein,
)


def test_twisted_cubic_betti(twisted_cubic):
    res = quotient(twisted_cubic).resolution
    assert res.betti() == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert res.ranks() == [1, 3, 2]
    assert res.regularity() == 1


def test_plane_pair_and_cone_betti(plane_pair, cone_pair):
    expected = {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}
    assert quotient(plane_pair).resolution.betti() == expected
    assert quotient(cone_pair).resolution.betti() == expected


def test_differentials_compose_to_zero(plane_pair, twisted_cubic):
    for I in (plane_pair, twisted_cubic):
        mats = quotient(I).resolution.differentials
        for f, g in zip(mats, mats[1:]):
            assert f.compose(g).is_zero()


def test_resolution_is_exact_by_oracle(twisted_cubic, plane_pair):
    for I in (twisted_cubic, plane_pair):
        assert oracle_resolution_exact(quotient(I), 0, 6, limit=10**7)


def test_betti_agrees_with_koszul_oracle(twisted_cubic, residual_pair):
    for I in (twisted_cubic, residual_pair):
        res = quotient(I).resolution
        assert oracle_betti(quotient(I), 6, limit=10**7) == res.betti()


def test_invariants(twisted_cubic, plane_pair):
    tc = homological_invariants(quotient(twisted_cubic))
    assert (tc.pd, tc.depth, tc.dim, tc.is_cm) == (2, 2, 2, True)
    pp = homological_invariants(quotient(plane_pair))
    assert (pp.pd, pp.depth, pp.dim, pp.is_cm) == (3, 2, 3, False)


def test_zero_module_has_no_invariants(r4):
    with pytest.raises(ZeroModule):
        homological_invariants(quotient(unit_ideal(r4)))


def test_free_module_resolves_trivially(r4):
    res = free_resolution(ModulePresentation.free(r4, (0, 2)))
    assert res.betti() == {(0, 0): 1, (0, 2): 1}


@pytest.mark.parametrize("degrees", [(2, 2), (2, 3), (1, 3, 2)])
def test_complete_intersection_a_invariant(degrees):
    r = ring(5)
    gens = [r.gen(i) ** d for i, d in enumerate(degrees)]
    test = is_gorenstein(Ideal(r, tuple(gens)))
    assert test.gorenstein
    assert test.a_invariant == sum(degrees) - r.n


def test_gorenstein_rejections(r5, plane_pair, r4):
    test = is_gorenstein(plane_pair)
    assert not test.gorenstein and not test.cohen_macaulay
    tc = is_gorenstein(Ideal.of(r4, ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]))
    assert tc.cohen_macaulay and not tc.gorenstein and tc.last_betti == 2
    with pytest.raises(EmptyScheme):
        is_gorenstein(unit_ideal(r5))


def test_pentagon_pfaffians_are_gorenstein():
    r = ring(5)
    I = Ideal.of(r, ["x0*x1", "x1*x2", "x2*x3", "x3*x4", "x4*x0"])
    test = is_gorenstein(I)
    assert test.gorenstein and test.a_invariant == 0
