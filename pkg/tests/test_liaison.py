import pytest

from linkage.checks import PreconditionFailed, overall
from linkage.groebner import Ideal, ideals_equal
from linkage.homs import certify_graded_iso
from linkage.liaison import (
    DimensionMismatch,
    LinkedPair,
    NotContained,
    NotGorenstein,
    SelfLinkDegenerate,
    WrongDimension,
    check_degree_additivity,
    check_involution,
    check_liaison_lambda,
    check_liaison_sequence,
    check_s2_equivalences,
    check_split_convention,
    check_surface_liaison,
    check_threefold_liaison,
    gorenstein_link,
    make_link,
    surface_suite,
    threefold_suite,
)
from linkage.resolution import GradedFreeModule, GradedMatrix, ModulePresentation


def names(reports):
    return {r.check_id: r.status for r in reports}


def test_twisted_cubic_links_to_a_line(twisted_cubic, r4):
    b = Ideal.of(r4, ["x0*x2 - x1^2", "x1*x3 - x2^2"])
    pair = make_link(twisted_cubic, b)
    assert pair.a == 0 and pair.double_link_ok
    assert ideals_equal(pair.J, Ideal.of(r4, ["x1", "x2"]))


def test_plane_pair_links_to_residual_pair(plane_pair, residual_pair, ci22):
    pair = make_link(plane_pair, ci22)
    assert pair.a == -1 and pair.d == 3
    assert ideals_equal(pair.J, residual_pair)


def test_link_in_complete_intersection_of_type_two_three(plane_pair, r5):
    pair = make_link(plane_pair, Ideal.of(r5, ["x0*x2", "x1*x3*x4"]))
    assert pair.a == 0
    assert ideals_equal(pair.J, Ideal.of(r5, ["x0*x2", "x2*x3*x4", "x1*x3*x4", "x0*x1*x4"]))


def test_cone_and_non_star_links(cone_pair, cone_ci22, non_star, non_star_ci):
    assert make_link(cone_pair, cone_ci22).a == -2
    pair = make_link(non_star, non_star_ci)
    assert pair.a == -1
    r = non_star.ring
    expected = Ideal.of(r, ["x2*x5", "x1*x4", "x0*x3", "x3*x4*x5", "x0*x1*x2"])
    assert ideals_equal(pair.J, expected)


def test_link_errors(r4, twisted_cubic, plane_pair, r5):
    with pytest.raises(NotContained):
        make_link(twisted_cubic, Ideal.of(r4, ["x0*x1", "x2*x3"]))
    with pytest.raises(NotGorenstein):
        gorenstein_link(twisted_cubic)
    with pytest.raises(DimensionMismatch):
        make_link(Ideal.of(r4, ["x0", "x1", "x2"]), Ideal.of(r4, ["x0^2", "x1^2"]))
    ci = Ideal.of(r4, ["x0*x2 - x1^2", "x1*x3 - x2^2"])
    with pytest.raises(SelfLinkDegenerate):
        make_link(ci, ci)
    mixed = Ideal.of(r4, ["x0*x3", "x0*x2", "x0*x1"])
    with pytest.raises((PreconditionFailed, DimensionMismatch)):
        make_link(mixed, Ideal.of(r4, ["x0*x1"]))
    unsaturated = Ideal.of(r5, ["x0*x2", "x1*x3", "x0^2*x1", "x0*x1^2"])
    with pytest.raises(PreconditionFailed):
        make_link(unsaturated, Ideal.of(r5, ["x0*x2", "x1*x3"]))


def test_split_convention_pins_shift_sign():
    assert check_split_convention().status == "pass"


@pytest.mark.parametrize("which", ["tc", "planes", "cone", "non_star"])
def test_liaison_sequence_and_lambda(which, request, r4):
    if which == "tc":
        pair = make_link(request.getfixturevalue("twisted_cubic"),
                         Ideal.of(r4, ["x0*x2 - x1^2", "x1*x3 - x2^2"]))
    elif which == "planes":
        pair = make_link(request.getfixturevalue("plane_pair"), request.getfixturevalue("ci22"))
    elif which == "cone":
        pair = make_link(request.getfixturevalue("cone_pair"), request.getfixturevalue("cone_ci22"))
    else:
        pair = make_link(request.getfixturevalue("non_star"), request.getfixturevalue("non_star_ci"))
    for p in (pair, pair.swapped()):
        assert overall(check_liaison_sequence(p)) == "pass"
        assert overall(check_liaison_lambda(p)) == "pass"
        assert check_involution(p).status == "pass"
        assert check_degree_additivity(p).status == "pass"


def test_liaison_sequence_certificate(plane_pair, ci22):
    reports = check_liaison_sequence(make_link(plane_pair, ci22), certify=True)
    assert names(reports)["liaison_sequence.certificate"] == "pass"


def test_surface_liaison(plane_pair, ci22):
    pair = make_link(plane_pair, ci22)
    report = check_surface_liaison(pair, certify=True)
    assert report.status == "pass"
    suite = surface_suite(plane_pair)
    assert overall(suite.checks) == "pass"
    assert suite.delta == 1


def test_surface_liaison_needs_surfaces(twisted_cubic, r4):
    pair = make_link(twisted_cubic, Ideal.of(r4, ["x0*x2 - x1^2", "x1*x3 - x2^2"]))
    with pytest.raises(WrongDimension):
        check_surface_liaison(pair)


def test_mutated_residual_is_caught(plane_pair, ci22, r5):
    link = gorenstein_link(ci22)
    mutant = Ideal.of(r5, ["x0*x1", "x0*x2", "x1*x3", "x2*x4"])
    pair = LinkedPair.unchecked(link, plane_pair, mutant)
    assert check_surface_liaison(pair).status == "fail"
    assert overall(check_liaison_sequence(pair)) == "fail"
    assert check_involution(pair).status == "fail"


def test_threefold_liaison(cone_pair, cone_ci22):
    pair = make_link(cone_pair, cone_ci22)
    assert check_threefold_liaison(pair, certify=True).status == "pass"
    table = threefold_suite(cone_pair).table
    assert set(table) == {"1", "02", "12", "03", "013", "113", "23"}
    assert table["1"]["zero"]


def test_s2_equivalences_hold_jointly(cone_pair, cone_ci22, non_star, non_star_ci):
    cone = check_s2_equivalences(make_link(cone_pair, cone_ci22))
    assert overall(cone) == "pass"
    assert cone[0].lhs_value == [1, 1, 1, 1]
    ns = check_s2_equivalences(make_link(non_star, non_star_ci))
    assert overall(ns) == "pass"
    assert ns[0].lhs_value == [0, 0, 0, 0]


def test_certificate_distinguishes_split_twists(r4):
    # k + k against k[1] + k[-1]: same total dimension, different grading
    def residue_sum(twists):
        cols = []
        for c, _ in enumerate(twists):
            for i in range(4):
                cols.append({c: r4.gen(i)})
        rels = GradedMatrix(r4, GradedFreeModule(tuple(twists)),
                            GradedFreeModule(tuple(t + 1 for t in twists for _ in range(4))), cols)
        return ModulePresentation(r4, GradedFreeModule(tuple(twists)), rels)

    flat = residue_sum((0, 0))
    spread = residue_sum((-1, 1))
    assert flat.hilbert(0) == 2 and spread.hilbert(0) == 0
    assert certify_graded_iso(flat, spread).status == "fail"
    assert certify_graded_iso(flat, residue_sum((0, 0))).status == "pass"
