from hypothesis import given, strategies as st

from linkage.checks import CheckReport, compare, compare_ge, overall
from linkage.hilbert import DEFAULT_WINDOW, HilbertFunction, exact_window, monomial_ideal_numerator


def test_polynomial_ring_counts_monomials():
    hf = HilbertFunction.from_series({0: 1}, 3)
    assert hf.values(-2, 4) == [0, 0, 1, 3, 6, 10, 15]
    assert hf.dimension == 3 and hf.multiplicity == 1


def test_series_is_reduced_to_lowest_terms():
    # (1 - t^2)/(1-t)^2 = (1 + t)/(1 - t)
    hf = HilbertFunction.from_series({0: 1, 2: -1}, 2)
    assert hf.poles == 1 and hf.num == {0: 1, 1: 1}
    assert HilbertFunction.from_series({0: 1, 1: -1}, 1) == HilbertFunction.finite({0: 1})


def test_shift_and_dual():
    hf = HilbertFunction.from_series({0: 1}, 2)
    assert hf.shift(2)(0) == hf(2) == 3
    assert hf.dual()(-3) == hf(3)
    assert hf.dual().shift(1)(-4) == hf(3)
    assert hf.shift(-1).series() == ({1: 1}, 2)


def test_monomial_ideal_numerator_of_two_lines():
    # <x0 x1> in three variables
    assert monomial_ideal_numerator([(1, 1, 0)], 3) == {0: 1, 2: -1}


def test_exact_window_extends_past_irregularity():
    finite = HilbertFunction.finite({-20: 2})
    lo, hi = exact_window([finite], DEFAULT_WINDOW)
    assert lo <= -21 and hi >= 12


def test_compare_detects_witness():
    a = HilbertFunction.from_series({0: 1}, 2)
    b = a + HilbertFunction.finite({5: 1})
    rep = compare("x", a, b)
    assert rep.status == "fail" and rep.witness_degree == 5


def test_compare_narrow_window_is_inconclusive():
    a = HilbertFunction.from_series({0: 1}, 2)
    assert compare("x", a, a, window=(0, 1)).status == "inconclusive"
    assert compare("x", a, a).status == "pass"


def test_compare_ge_certifies_tails():
    big = HilbertFunction.from_series({0: 1}, 3)
    small = HilbertFunction.from_series({0: 1}, 2)
    assert compare_ge("g", big, small).status == "pass"
    assert compare_ge("g", small, big).status == "fail"


def test_overall_precedence():
    r = lambda s: CheckReport("c", s)
    assert overall([r("pass"), r("inconclusive")]) == "inconclusive"
    assert overall([r("inconclusive"), r("precondition_failed")]) == "precondition_failed"
    assert overall([r("precondition_failed"), r("fail"), r("pass")]) == "fail"
    assert overall([r("pass")]) == "pass"


coeffs = st.dictionaries(st.integers(-4, 6), st.integers(-3, 3), max_size=4)


@given(coeffs, st.integers(0, 3), st.integers(-5, 5), st.integers(-8, 8))
def test_shift_matches_pointwise(num, poles, s, mu):
    hf = HilbertFunction.from_series(num, poles)
    assert hf.shift(s)(mu) == hf(mu + s)
    assert hf.dual()(mu) == hf(-mu)


@given(coeffs, coeffs, st.integers(0, 3), st.integers(-8, 8))
def test_sum_is_pointwise(a, b, poles, mu):
    f = HilbertFunction.from_series(a, poles)
    g = HilbertFunction.from_series(b, poles)
    assert (f + g)(mu) == f(mu) + g(mu)
    assert (f - g)(mu) == f(mu) - g(mu)
