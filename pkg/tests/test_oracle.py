import pytest

from conftest import quotient, ring
from linkage.groebner import Ideal
from linkage.oracle import (
    CostLimit,
    Echelon,
    oracle_ext_hf,
    oracle_ideal_hf,
    oracle_membership,
    oracle_module_hf,
    sparse_rank,
)


def test_zero_ideal_counts_monomials():
    assert oracle_ideal_hf(Ideal(ring(2), ()), 3, 3) == {3: 4}


def test_small_values(twisted_cubic, plane_pair):
    assert oracle_ideal_hf(twisted_cubic, 2, 2)[2] == 7
    assert oracle_ideal_hf(plane_pair, 0, 6) == {0: 1, 1: 5, 2: 11, 3: 19, 4: 29, 5: 41, 6: 55}
    assert oracle_ideal_hf(twisted_cubic, -3, -1) == {-3: 0, -2: 0, -1: 0}


def test_module_and_ring_agree(twisted_cubic):
    assert oracle_module_hf(quotient(twisted_cubic), 0, 5) == oracle_ideal_hf(twisted_cubic, 0, 5)


def test_membership(twisted_cubic, r4):
    assert oracle_membership(r4.parse("x0*x2*x3 - x1^2*x3"), twisted_cubic)
    assert not oracle_membership(r4.parse("x0*x2*x3"), twisted_cubic)
    # inhomogeneous input is split into graded pieces
    assert not oracle_membership(r4.parse("x0*x2 - x1^2 + x3"), twisted_cubic)


def test_plane_pair_has_no_first_deficiency_in_degree_zero(plane_pair):
    assert oracle_ext_hf(quotient(plane_pair), 1, 0, 0) == {0: 0}


def test_cost_guard(plane_pair):
    with pytest.raises(CostLimit):
        oracle_ideal_hf(plane_pair, 0, 12, limit=1000)


def test_echelon_rank():
    ech = Echelon(7, 10_000)
    assert ech.add({0: 1, 1: 2})
    assert not ech.add({0: 3, 1: 6})
    assert ech.add({1: 1})
    assert ech.rank == 2
    assert sparse_rank([{0: 1}, {1: 1}, {0: 1, 1: 1}], 7) == 2
