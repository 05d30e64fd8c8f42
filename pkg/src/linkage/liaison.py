"""Gorenstein links and the comparison of deficiency modules across a link.

Tensoring a B-module with ``omega_B = B[a]`` is the twist ``[a]``; on Hilbert
functions that is ``shift(a)``, i.e. ``mu -> HF(M, mu + a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import CheckReport, PreconditionFailed, compare, overall
from .duality import (
    DeficiencySuite,
    _iso_reports,
    canonical_module,
    deficiency_module,
    finite_length_lower_deficiencies,
    gamma_hilbert,
    is_unmixed_s1,
    iterated_deficiency,
    local_cohomology_hilbert,
)
from .groebner import (
    Ideal,
    degree,
    groebner_basis,
    ideal_quotient,
    ideals_equal,
    is_subset,
    krull_dimension,
    saturate_irrelevant,
)
from .hilbert import HFSum
from .homs import certify_graded_iso
from .resolution import (
    GradedFreeModule,
    GradedMatrix,
    ModulePresentation,
    homological_invariants,
    is_gorenstein,
    prune,
    syzygies,
)


class NotGorenstein(ValueError):
    pass


class NotContained(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class SelfLinkDegenerate(ValueError):
    pass


class WrongDimension(ValueError):
    pass


@dataclass
class GorensteinLink:
    b: Ideal
    a_invariant: int
    B: ModulePresentation
    d: int
    canonical_check: CheckReport


def gorenstein_link(b: Ideal) -> GorensteinLink:
    test = is_gorenstein(b)
    if not test.gorenstein:
        raise NotGorenstein(f"A/b is not Gorenstein (CM={test.cohen_macaulay}, last Betti {test.last_betti})")
    B = ModulePresentation.quotient_ring(b, "B")
    omega = canonical_module(B)
    chk = compare("gorenstein.omega_is_twist", omega.hilbert, B.hilbert.shift(test.a_invariant))
    return GorensteinLink(b, test.a_invariant, B, B.dimension, chk)


@dataclass
class LinkedPair:
    link: GorensteinLink
    I: Ideal
    J: Ideal
    R: ModulePresentation
    S: ModulePresentation
    double_link_ok: bool
    name: str = ""

    @property
    def a(self) -> int:
        return self.link.a_invariant

    @property
    def d(self) -> int:
        return self.link.d

    def swapped(self) -> "LinkedPair":
        return LinkedPair(self.link, self.J, self.I, self.S, self.R, self.double_link_ok, self.name + "'")

    @classmethod
    def unchecked(cls, link: GorensteinLink, I: Ideal, J: Ideal, name: str = "") -> "LinkedPair":
        """Pair from given ideals without validation (used for mutation tests)."""
        return cls(link, I, J, ModulePresentation.quotient_ring(I, "R"),
                   ModulePresentation.quotient_ring(J, "S"), False, name)


def make_link(I: Ideal, b: Ideal, name: str = "") -> LinkedPair:
    """``J = b : I`` together with the double-link check ``b : J = I``."""
    link = gorenstein_link(b)
    if not is_subset(b, I):
        raise NotContained("b is not contained in I")
    if krull_dimension(I) != link.d:
        raise DimensionMismatch(f"dim A/I = {krull_dimension(I)} but dim A/b = {link.d}")
    if not ideals_equal(saturate_irrelevant(I), I):
        raise PreconditionFailed("I is not saturated")
    R = ModulePresentation.quotient_ring(I, "R")
    if not is_unmixed_s1(R):
        raise PreconditionFailed("A/I is not unmixed")
    J = ideal_quotient(b, I)
    if groebner_basis(J).is_unit():
        raise SelfLinkDegenerate("b : I is the unit ideal")
    back = ideal_quotient(b, J)
    ok = ideals_equal(back, I)
    J = Ideal(J.ring, groebner_basis(J).elements)
    return LinkedPair(link, I, J, R, ModulePresentation.quotient_ring(J, "S"), ok, name)


@dataclass
class LinkReport:
    pair: str
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def status(self) -> str:
        return overall(self.checks)

    @property
    def overall(self) -> bool:
        """Conjunction of the checks that reached a verdict."""
        decided = [c for c in self.checks if c.status != "inconclusive"]
        return all(c.status == "pass" for c in decided)

    def to_dict(self) -> dict:
        return {"pair": self.pair, "checks": [c.to_dict() for c in self.checks], "overall": self.status}


# -- submodules of B ---------------------------------------------------------------

def ideal_mod_ideal(J: Ideal, b: Ideal) -> ModulePresentation:
    """``J / b`` for ``b ⊆ J``, presented on the generators of ``J``."""
    ring = J.ring
    gens = groebner_basis(J).elements
    bg = groebner_basis(b).elements
    target = GradedFreeModule((0,))
    jmat = GradedMatrix(ring, target, GradedFreeModule(tuple(g.degree() for g in gens)),
                        [{0: g} for g in gens], check=False)
    bmat = GradedMatrix(ring, target, GradedFreeModule(tuple(g.degree() for g in bg)),
                        [{0: g} for g in bg], check=False)
    syz = syzygies(jmat.hstack(bmat))
    k = len(gens)
    cols = [{i: f for i, f in col.items() if i < k} for col in syz.columns]
    rel = GradedMatrix(ring, jmat.source, syz.source, cols, check=False)
    return prune(ModulePresentation(ring, jmat.source, rel, "J/b"))


# -- checks on a linked pair --------------------------------------------------------------

def check_split_convention() -> CheckReport:
    """Pins the shift direction on ``b = <x0 x1>``, ``I = <x0>``, ``J = <x1>`` in two variables.

    Here ``omega_R = R[-1]`` and ``omega_R[-a] = R[-1 - a] = A/<x0>[-1]``, which
    is the kernel ``<x1>/<x0 x1>`` of ``B -> S``.
    """
    from .ring import Ring

    ring = Ring(32003, 2, ("x0", "x1"))
    pair = make_link(Ideal.of(ring, ["x0"]), Ideal.of(ring, ["x0*x1"]))
    rep = check_liaison_sequence(pair)[0]
    rep.check_id = "convention.split_hypersurface"
    return rep


def check_liaison_sequence(pair: LinkedPair, window=None, certify: bool = False,
                           degree_bound: int = 8) -> list[CheckReport]:
    """``0 -> omega_R[-a] -> B -> S -> 0``: Hilbert functions and the kernel ``J/b``."""
    a = pair.a
    omega_R = canonical_module(pair.R)
    twisted = omega_R.hilbert.shift(-a)
    out = [compare("liaison_sequence", twisted + pair.S.hilbert, pair.link.B.hilbert, window)]
    kernel = ideal_mod_ideal(pair.J, pair.link.b)
    out.append(compare("liaison_sequence.kernel", twisted, kernel.hilbert, window))
    if certify:
        out.append(certify_graded_iso(omega_R.shift(-a), kernel, 0, degree_bound,
                                      check_id="liaison_sequence.certificate"))
    return out


def check_liaison_lambda(pair: LinkedPair, window=None) -> list[CheckReport]:
    """``D_i(S) = D_{i+1}(omega_R)[a]`` for ``i <= d - 2``."""
    omega_R = canonical_module(pair.R)
    out = []
    for i in range(0, pair.d - 1):
        out += _iso_reports(f"liaison_lambda_{i}", deficiency_module(pair.S, i),
                            deficiency_module(omega_R, i + 1), pair.a, window)
    return out


def _is_cm_or_zero(M: ModulePresentation) -> bool:
    return M.is_zero() or homological_invariants(M).is_cm


def check_s2_equivalences(pair: LinkedPair, window=None) -> list[CheckReport]:
    """Four equivalent conditions for the pair ``(R, S)``.

    (i) lower deficiency modules of ``R`` have finite length; (ii) ``omega_S``
    is CM; (iii) ``omega_{omega_S}`` is CM; (iv) cohomology of ``R`` pairs with
    that of ``omega_{omega_S}``: ``HF(D_{i+1}(R), nu) = HF(D_{D-i}(E), -nu - a)``
    for ``0 < i < D - 1`` with ``D = dim R - 1``.
    """
    K = pair.R.dimension
    if K < 3:
        return [CheckReport("s2_equivalences", "precondition_failed", detail=f"dim {K} < 3")]
    D = K - 1
    a = pair.a
    omega_S = canonical_module(pair.S)
    E = canonical_module(omega_S)
    c1 = finite_length_lower_deficiencies(pair.R)
    c2 = _is_cm_or_zero(omega_S)
    c3 = _is_cm_or_zero(E)
    pairings = []
    for i in range(1, D - 1):
        lhs = deficiency_module(pair.R, i + 1).hilbert
        rhs = deficiency_module(E, D - i).hilbert.dual().shift(a)
        pairings.append(compare(f"s2_equivalences.pairing_{i}", lhs, rhs, window))
    c4 = all(r.status == "pass" for r in pairings)
    values = [c1, c2, c3, c4]
    agree = len(set(values)) == 1
    detail = {k: int(v) for k, v in zip(("finite_length", "omega_cm", "s2_cm", "pairings"), values)}
    out = [CheckReport("s2_equivalences.agree", "pass" if agree else "fail",
                       lhs_value=[int(v) for v in values], rhs_value=int(values[0]), extra=detail)]
    if agree and c1:
        # H^0(D_D(R)) = H^2(omega_R) = H^1(S)[a], as Hilbert functions of the duals
        lhs = iterated_deficiency(pair.R, (0, D)).hilbert
        mid = deficiency_module(canonical_module(pair.R), 2).hilbert
        rhs = deficiency_module(pair.S, 1).hilbert.shift(-a)
        out.append(compare("s2_equivalences.top_sections", lhs, mid, window))
        out.append(compare("s2_equivalences.top_sections_link", mid, rhs, window))
    return out


# -- surfaces and three-folds ----------------------------------------------------------------

@dataclass
class SurfaceSuite:
    suite: DeficiencySuite
    delta: int
    checks: list[CheckReport]
    saturated: bool = True


def _quotient(x) -> tuple[ModulePresentation, Ideal | None]:
    if isinstance(x, Ideal):
        return ModulePresentation.quotient_ring(x, "R"), x
    return x, None


def _saturate_if_needed(R: ModulePresentation, I: Ideal | None) -> tuple[ModulePresentation, bool]:
    if deficiency_module(R, 0).is_zero():
        return R, True
    if I is None:
        raise PreconditionFailed("H^0_m(R) != 0 and no ideal to saturate")
    return ModulePresentation.quotient_ring(saturate_irrelevant(I), R.name), False


def surface_suite(R, window=None) -> SurfaceSuite:
    """``D_1``, ``D_02``, ``D_12`` of a surface and the two sequences through ``Gamma``."""
    R, I = _quotient(R)
    if R.dimension != 3:
        raise WrongDimension(f"dim {R.dimension} != 3")
    R, was_saturated = _saturate_if_needed(R, I)
    S = DeficiencySuite.of(R)
    D1, D2 = S["1"], S["2"]
    checks = [compare("surface.gamma_R", gamma_hilbert(R), R.hilbert + local_cohomology_hilbert(R, 1), window)]
    checks.append(compare("surface.gamma_D2", S.hf("02").dual() + gamma_hilbert(D2),
                          D2.hilbert + S.hf("12").dual(), window))
    checks.append(CheckReport("surface.D1_finite_length", "pass" if D1.dimension <= 0 else "fail",
                              lhs_value=D1.dimension))
    checks.append(CheckReport("surface.D02_finite_length", "pass" if S["02"].dimension <= 0 else "fail",
                              lhs_value=S["02"].dimension))
    D12 = S["12"]
    good12 = D12.is_zero() or (D12.dimension == 1 and _is_cm_or_zero(D12))
    checks.append(CheckReport("surface.D12_cm_dim1", "pass" if good12 else "fail", lhs_value=D12.dimension))
    # delta: eventual constant value of HF(Gamma D_2), equal to the degree of D_12
    delta = D2.hilbert.multiplicity if D2.dimension == 1 else 0
    deg12 = D12.hilbert.multiplicity if D12.dimension == 1 else 0
    checks.append(CheckReport("surface.delta", "pass" if delta == deg12 else "fail",
                              lhs_value=delta, rhs_value=deg12))
    return SurfaceSuite(S, delta, checks, was_saturated)


def check_surface_liaison(pair: LinkedPair, window=None, certify: bool = False,
                          degree_bound: int = 8) -> LinkReport:
    if pair.R.dimension != 3 or pair.S.dimension != 3:
        raise WrongDimension("surface liaison needs three-dimensional rings")
    a = pair.a
    report = LinkReport(pair.name)
    for tag, X, Y in (("RS", pair.R, pair.S), ("SR", pair.S, pair.R)):
        sx, sy = DeficiencySuite.of(X), DeficiencySuite.of(Y)
        report.checks += _iso_reports(f"surface.{tag}.D1_vs_D02", sy["1"], sx["02"], a, window)
        report.checks += _iso_reports(f"surface.{tag}.D12_vs_D112", sy["12"], sx["112"], -a, window)
        if certify:
            report.checks.append(certify_graded_iso(sy["1"], sx["02"], a, degree_bound,
                                                    check_id=f"surface.{tag}.D1_certificate"))
    return report


SEVEN = ("1", "02", "12", "03", "013", "113", "23")


@dataclass
class ThreefoldSuite:
    suite: DeficiencySuite
    table: dict[str, dict]


def threefold_suite(R) -> ThreefoldSuite:
    R, I = _quotient(R)
    if R.dimension != 4:
        raise WrongDimension(f"dim {R.dimension} != 4")
    R, _ = _saturate_if_needed(R, I)
    S = DeficiencySuite.of(R)
    table = {}
    for w in SEVEN:
        M = S[w]
        table[w] = {"zero": M.is_zero(), "dim": M.dimension, "cm": _is_cm_or_zero(M), "hilbert": M.hilbert}
    return ThreefoldSuite(S, table)


def check_threefold_liaison(pair: LinkedPair, window=None, certify: bool = False,
                            degree_bound: int = 8) -> LinkReport:
    if pair.R.dimension != 4 or pair.S.dimension != 4:
        raise WrongDimension("three-fold liaison needs four-dimensional rings")
    a = pair.a
    report = LinkReport(pair.name)
    for tag, X, Y in (("RS", pair.R, pair.S), ("SR", pair.S, pair.R)):
        sx, sy = DeficiencySuite.of(X), DeficiencySuite.of(Y)
        report.checks += _iso_reports(f"threefold.{tag}.D1_vs_D03", sy["1"], sx["03"], a, window)
        report.checks += _iso_reports(f"threefold.{tag}.D12_vs_D113", sy["12"], sx["113"], -a, window)
        report.checks += _iso_reports(f"threefold.{tag}.D23_vs_D223", sy["23"], sx["223"], -a, window)
        # 0 -> D_013(X) -> D_02(Y)[a] -> D_002(X) -> D_0013(Y)[a] -> 0
        alt = sx.hf("013") - sy.hf("02").shift(a) + sx.hf("002") - sy.hf("0013").shift(a)
        report.checks.append(compare(f"threefold.{tag}.four_term", alt, HFSum(()), window))
        if certify:
            report.checks.append(certify_graded_iso(sy["1"], sx["03"], a, degree_bound,
                                                    check_id=f"threefold.{tag}.D1_certificate"))
    return report


# -- invariants of a link ---------------------------------------------------------------------

def check_involution(pair: LinkedPair) -> CheckReport:
    back = ideal_quotient(pair.link.b, pair.J)
    ok = ideals_equal(back, pair.I)
    return CheckReport("link.involution", "pass" if ok else "fail")


def check_degree_additivity(pair: LinkedPair) -> CheckReport:
    lhs = degree(pair.I) + degree(pair.J)
    rhs = degree(pair.link.b)
    return CheckReport("link.degree_additivity", "pass" if lhs == rhs else "fail", lhs_value=lhs, rhs_value=rhs)
