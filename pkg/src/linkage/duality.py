"""Deficiency modules, canonical modules and local cohomology at the Hilbert-function level.

``D_i(M) = Ext^{n-i}_A(M, A[-n])`` is computed from the minimal resolution of
``M``: dualize into ``A[-n]`` and take homology.  Over a field the graded dual
of ``D_i(M)`` is ``H^i_m(M)``, so ``HF(H^i_m(M), mu) = HF(D_i(M), -mu)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .checks import CheckReport, compare, compare_ge
from .groebner import Ideal, saturate_irrelevant
from .hilbert import HFSum, HilbertFunction
from .resolution import (
    GradedFreeModule,
    ModulePresentation,
    ZeroModule,
    kernel_mod_image,
    zero_matrix,
)


class NotEquidimensional(ValueError):
    pass


def _memo(M: ModulePresentation) -> dict:
    return M.__dict__.setdefault("_deficiency_memo", {})


def deficiency_module(M: ModulePresentation, i: int) -> ModulePresentation:
    """Presentation of ``D_i(M)``; the zero module when ``i`` is out of range."""
    ring = M.ring
    n = ring.n
    memo = _memo(M)
    if i in memo:
        return memo[i]
    e = n - i
    if i < 0 or i > n or M.is_zero():
        out = ModulePresentation.zero(ring)
    else:
        res = M.resolution
        L = res.length
        if e > L:
            out = ModulePresentation.zero(ring)
        else:
            Fe_dual = res.modules[e].dual(n)
            if e + 1 <= L:
                phi = res.differentials[e].transpose(n)
            else:
                phi = zero_matrix(ring, GradedFreeModule(()), Fe_dual)
            if e >= 1:
                psi = res.differentials[e - 1].transpose(n)
            else:
                psi = zero_matrix(ring, Fe_dual, GradedFreeModule(()))
            out = kernel_mod_image(phi, psi)
    label = f"D{i}({M.name})" if M.name else ""
    out.name = label
    memo[i] = out
    return out


def iterated_deficiency(M: ModulePresentation, indices: str | Sequence[int]) -> ModulePresentation:
    """``D_{w_0}(D_{w_1}(...D_{w_last}(M)))``, applied right to left."""
    indices = word(indices)
    if not indices:
        raise ValueError("empty index word")
    out = M
    for i in reversed(indices):
        out = deficiency_module(out, i)
    return out


def word(text: str | Sequence[int]) -> tuple[int, ...]:
    """``"112"`` -> ``(1, 1, 2)``; indices are single digits."""
    if isinstance(text, str):
        return tuple(int(ch) for ch in text)
    return tuple(text)


def graded_dual_hf(M: ModulePresentation) -> HilbertFunction:
    return M.hilbert.dual()


def local_cohomology_hilbert(M: ModulePresentation, i: int) -> HilbertFunction:
    """``HF(H^i_m(M), mu) = HF(D_i(M), -mu)``."""
    return deficiency_module(M, i).hilbert.dual()


def gamma_hilbert(M: ModulePresentation) -> HFSum:
    """``HF(Gamma M) = HF(M) - HF(H^0_m M) + HF(H^1_m M)``."""
    if M.is_zero() or M.dimension == 0:
        return HFSum(())
    return M.hilbert - local_cohomology_hilbert(M, 0) + local_cohomology_hilbert(M, 1)


@dataclass
class GammaResult:
    saturated: ModulePresentation | None  # A/sat(I) for cyclic inputs
    hilbert: HFSum


def gamma_saturation(M: ModulePresentation, ideal: Ideal | None = None) -> GammaResult:
    """Hilbert function of ``Gamma M``; for ``M = A/I`` also the ring ``A/sat(I)``."""
    sat = None
    if ideal is not None:
        sat = ModulePresentation.quotient_ring(saturate_irrelevant(ideal))
    return GammaResult(sat, gamma_hilbert(M))


def canonical_module(M: ModulePresentation) -> ModulePresentation:
    if M.is_zero():
        raise ZeroModule("canonical module of the zero module")
    return deficiency_module(M, M.dimension)


def is_unmixed_s1(M: ModulePresentation) -> bool:
    """``D_0(M) = 0`` and ``dim D_i(M) < i`` for ``0 < i < dim M``."""
    if M.is_zero():
        raise ZeroModule("unmixedness of the zero module")
    d = M.dimension
    if not deficiency_module(M, 0).is_zero():
        return False
    return all(deficiency_module(M, i).dimension < i for i in range(1, d))


def finite_length_lower_deficiencies(M: ModulePresentation) -> bool:
    """Certificate used for the one-step-from-CM condition: ``dim D_i(M) <= 0`` for ``i < d - 1``."""
    d = M.dimension
    return all(deficiency_module(M, i).dimension <= 0 for i in range(0, d - 1))


# -- deficiency suites and diagrams ------------------------------------------------------

@dataclass
class DeficiencySuite:
    """Lazily populated table ``word -> D_word(base)``."""

    base: ModulePresentation
    d: int
    modules: dict[tuple[int, ...], ModulePresentation] = field(default_factory=dict)

    @classmethod
    def of(cls, M: ModulePresentation) -> "DeficiencySuite":
        return cls(M, M.dimension)

    def __getitem__(self, w) -> ModulePresentation:
        w = word(w)
        if w not in self.modules:
            self.modules[w] = iterated_deficiency(self.base, w)
        return self.modules[w]

    def hf(self, w) -> HilbertFunction:
        return self[w].hilbert

    def omega(self) -> ModulePresentation:
        return self[(self.d,)]


@dataclass
class Classification:
    depth_class: int
    cm_codim: int
    s_ell: int
    sheaf_s_ell: int


@dataclass
class DeficiencyDiagram:
    d: int
    entries: dict[tuple[int, int], HilbertFunction]
    classification: Classification

    def nonzero(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.entries.items() if not v.is_zero())


def deficiency_diagram(M: ModulePresentation) -> DeficiencyDiagram:
    """Hilbert functions of ``H^i_m(D_j(M))`` for ``j != dim M`` plus the vanishing pattern."""
    if M.is_zero():
        raise ZeroModule("diagram of the zero module")
    if not is_unmixed_s1(M):
        raise NotEquidimensional("module fails the unmixed/S1 test")
    d = M.dimension
    entries: dict[tuple[int, int], HilbertFunction] = {}
    for j in range(d):
        Dj = deficiency_module(M, j)
        for i in range(d):
            if i > Dj.dimension:
                entries[(i, j)] = HilbertFunction.zero()
            else:
                entries[(i, j)] = deficiency_module(Dj, i).hilbert.dual()
    nz = {k for k, v in entries.items() if not v.is_zero()}

    def largest(pred) -> int:
        ell = 0
        while ell < d and not any(pred(ell + 1, i, j) for i, j in nz):
            ell += 1
        return ell

    cls = Classification(
        depth_class=largest(lambda k, i, j: j == k - 1),
        cm_codim=largest(lambda k, i, j: i == d - k),
        s_ell=largest(lambda k, i, j: j - i == k - 1),
        sheaf_s_ell=largest(lambda k, i, j: i > 0 and i > j - k),
    )
    return DeficiencyDiagram(d, entries, cls)


# -- checks ---------------------------------------------------------------------------------

def check_biduality_euler(M: ModulePresentation, window=None) -> list[CheckReport]:
    """``sum_{i,j} (-1)^{i-j} HF(D_ij(M)) = HF(M)`` degreewise."""
    lhs = HFSum(())
    for j in range(M.ring.n + 1):
        Dj = deficiency_module(M, j)
        if Dj.is_zero():
            continue
        for i in range(Dj.dimension + 1):
            Dij = deficiency_module(Dj, i)
            if not Dij.is_zero():
                lhs = lhs + HFSum((((-1) ** ((i - j) % 2), Dij.hilbert),))
    return [compare("biduality_euler", lhs, M.hilbert, window)]


def _require(cond: bool, check_id: str, why: str) -> list[CheckReport] | None:
    if cond:
        return None
    return [CheckReport(check_id, "precondition_failed", detail=why)]


def _iso_reports(check_id: str, X: ModulePresentation, Y: ModulePresentation, shift: int = 0,
                 window=None) -> list[CheckReport]:
    """HF equality ``HF(X, mu) = HF(Y, mu + shift)`` plus matching dimension and CM-ness."""
    from .resolution import homological_invariants

    out = [compare(check_id, X.hilbert, Y.hilbert.shift(shift), window)]
    if X.is_zero() and Y.is_zero():
        return out
    same_dim = X.dimension == Y.dimension
    cm_x = X.is_zero() or homological_invariants(X).is_cm
    cm_y = Y.is_zero() or homological_invariants(Y).is_cm
    out.append(CheckReport(check_id + ".invariants", "pass" if same_dim and cm_x == cm_y else "fail",
                           lhs_value=[X.dimension, int(cm_x)], rhs_value=[Y.dimension, int(cm_y)]))
    return out


def check_duality_d3(M: ModulePresentation, window=None) -> list[CheckReport]:
    d = M.dimension
    bad = _require(d == 3, "duality_d3", f"dimension {d} != 3") or \
        _require(is_unmixed_s1(M), "duality_d3", "not unmixed/S1")
    if bad:
        return bad
    S = DeficiencySuite.of(M)
    omega = S.omega()
    out = _iso_reports("duality_d3.h0_top_vs_h2_omega", S["02"], deficiency_module(omega, 2), 0, window)
    # 0 -> H^1(D_2) -> H^3(omega) -> (Gamma M)^* -> 0, in degree mu
    h1d2 = S.hf("12").dual()
    h3w = deficiency_module(omega, 3).hilbert.dual()
    out.append(compare("duality_d3.top_sequence", h3w, h1d2 + gamma_hilbert(M).dual(), window))
    return out


def check_duality_d4(M: ModulePresentation, window=None) -> list[CheckReport]:
    d = M.dimension
    bad = _require(d == 4, "duality_d4", f"dimension {d} != 4") or \
        _require(is_unmixed_s1(M), "duality_d4", "not unmixed/S1")
    if bad:
        return bad
    S = DeficiencySuite.of(M)
    omega = S.omega()
    Dw = lambda i: deficiency_module(omega, i).hilbert.dual()  # H^i(omega)
    H = lambda w: S.hf(w).dual()  # H^i(D_j) for w = "ij"
    out = _iso_reports("duality_d4.h0_top_vs_h2_omega", S["03"], deficiency_module(omega, 2), 0, window)
    # 0 -> H1(D3) -> H3(w) -> H0(D2) -> H2(D3) -> H4(w) -> C -> 0,  C = H1(D2) + (Gamma M)^*
    C = H("12") + gamma_hilbert(M).dual()
    alt = H("13") - Dw(3) + H("02") - H("23") + Dw(4) - C
    out.append(compare("duality_d4.six_term_euler", alt, HFSum(()), window))
    return out


def check_s_ell_duality(M: ModulePresentation, ell: int, window=None) -> list[CheckReport]:
    """Surjections ``H^{d+1-i}(omega) -> D_i(M)`` for ``1 < i <= ell``, ``i < d`` (isos below ``ell``)
    and ``H^d(omega) = (Gamma M)^*`` when ``ell >= 2``.

    The precondition is the vanishing ``H^i(D_j) = 0`` for ``i > max(0, j - ell)``,
    ``j < d``, which is what the sheaf condition S_ell gives.
    """
    if M.is_zero() or not is_unmixed_s1(M):
        return [CheckReport("s_ell.precondition", "precondition_failed", detail="not unmixed/S1")]
    diag = deficiency_diagram(M)
    d = diag.d
    for (i, j) in diag.nonzero():
        if i > max(0, j - ell):
            return [CheckReport("s_ell.precondition", "precondition_failed", witness_degree=None,
                                detail=f"H^{i}(D_{j}) != 0 violates S_{ell}", lhs_value=[i, j])]
    omega = canonical_module(M)
    out = []
    for i in range(2, min(ell, d - 1) + 1):
        top = deficiency_module(omega, d + 1 - i).hilbert.dual()
        Di = deficiency_module(M, i).hilbert
        if i < ell:
            out.append(compare(f"s_ell.iso_{i}", top, Di, window))
        else:
            out.append(compare_ge(f"s_ell.surjection_{i}", top, Di, window))
    if ell >= 2:
        out.append(compare("s_ell.top_gamma", deficiency_module(omega, d).hilbert, gamma_hilbert(M), window))
    return out


def check_generalized_serre_duality(M: ModulePresentation, window=None) -> list[CheckReport]:
    d = M.dimension
    bad = _require(d >= 3, "serre", f"dimension {d} < 3") or \
        _require(is_unmixed_s1(M), "serre", "not unmixed/S1") or \
        _require(finite_length_lower_deficiencies(M), "serre",
                 "criterion: finite-length lower deficiencies fails")
    if bad:
        return bad
    omega = canonical_module(M)
    F = deficiency_module(M, d - 1)
    out = _iso_reports("serre.h0_F_vs_h2_omega", deficiency_module(F, 0), deficiency_module(omega, 2), 0, window)
    HF_ = lambda j: deficiency_module(F, j).hilbert.dual()
    Hw = lambda j: deficiency_module(omega, j).hilbert.dual()
    seq = []
    for j in range(1, d - 2):
        seq += [HF_(j), Hw(j + 2), deficiency_module(M, d - 1 - j).hilbert]
    seq += [HF_(d - 2), Hw(d), gamma_hilbert(M).dual()]
    alt = HFSum(())
    for k, term in enumerate(seq):
        alt = alt + term if k % 2 == 0 else alt - term
    r = compare("serre.long_sequence_euler", alt, HFSum(()), window)
    r.detail = "criterion: finite-length lower deficiencies"
    out.append(r)
    return out
