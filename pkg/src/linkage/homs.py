"""Degree-zero homomorphisms between presented modules by degreewise linear algebra."""

from __future__ import annotations

import random

import numpy as np

from .checks import CheckReport, compare
from .linalg import nullspace, rank
from .modgb import normal_form
from .resolution import ModulePresentation


def standard_basis(P: ModulePresentation, mu: int) -> list[tuple[int, int]]:
    """``(component, monomial)`` pairs spanning ``P_mu`` modulo the relations."""
    ring = P.ring
    fr = P.frame
    leads: dict[int, list[int]] = {}
    for b in P.groebner:
        k = max(b)
        leads.setdefault(fr.comp(k), []).append(fr.mono(k))
    out = []
    for comp, t in enumerate(P.generators.twists):
        if mu - t < 0:
            continue
        lm = leads.get(comp, [])
        for m in ring.monomials(mu - t):
            if not any(ring.divides(l, m) for l in lm):
                out.append((comp, m))
    return out


class _Coordinates:
    """Normal forms in ``P`` expressed in the standard basis, one degree at a time."""

    def __init__(self, P: ModulePresentation):
        self.P = P
        self._index: dict[int, dict[int, int]] = {}

    def index(self, mu: int) -> dict[int, int]:
        if mu not in self._index:
            fr = self.P.frame
            self._index[mu] = {fr.key(c, m): i for i, (c, m) in enumerate(standard_basis(self.P, mu))}
        return self._index[mu]

    def coords(self, vec: dict[int, int], mu: int) -> np.ndarray:
        idx = self.index(mu)
        out = np.zeros(len(idx), dtype=np.int64)
        if vec:
            nf = normal_form(self.P.frame, self.P.groebner, vec)
            for k, c in nf.items():
                out[idx[k]] = c
        return out


def _image_vector(P: ModulePresentation, poly_by_comp: dict[int, object]) -> dict[int, int]:
    return P.frame.vector(poly_by_comp)


def degree_zero_homs(M: ModulePresentation, N: ModulePresentation) -> tuple[list[list[tuple[int, int]]], np.ndarray]:
    """Basis of ``Hom(M, N)_0``.

    Returns per-generator standard bases of ``N`` and a matrix whose rows are
    coordinate vectors of the homomorphisms (images of the generators of ``M``).
    """
    ring = M.ring
    p = ring.p
    coordN = _Coordinates(N)
    gen_bases = [standard_basis(N, t) for t in M.generators.twists]
    offsets = np.cumsum([0] + [len(b) for b in gen_bases])
    nunk = int(offsets[-1])
    blocks = []
    for j, col in enumerate(M.relations.columns):
        s = M.relations.source.twists[j]
        width = len(coordN.index(s))
        if not col or width == 0:
            continue
        block = np.zeros((width, nunk), dtype=np.int64)
        for i, f in col.items():
            for u, (comp, m) in enumerate(gen_bases[i]):
                img = _image_vector(N, {comp: f.mul_term(1, m)})
                block[:, offsets[i] + u] = coordN.coords(img, s)
        blocks.append(block)
    if nunk == 0:
        return gen_bases, np.zeros((0, 0), dtype=np.int64)
    if not blocks:
        return gen_bases, np.eye(nunk, dtype=np.int64)
    return gen_bases, nullspace(np.vstack(blocks) % p, p)


def _graded_piece_matrix(M, N, gen_bases, phi, coordN, mu) -> np.ndarray:
    """Matrix of ``phi: M_mu -> N_mu`` in standard bases."""
    ring = M.ring
    src = standard_basis(M, mu)
    offsets = np.cumsum([0] + [len(b) for b in gen_bases])
    tgt = coordN.index(mu)
    out = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for col, (comp, m) in enumerate(src):
        image: dict[int, object] = {}
        for u, (c2, m2) in enumerate(gen_bases[comp]):
            coef = int(phi[offsets[comp] + u])
            if coef:
                term = ring.monomial(ring.unpack(m2), coef).mul_term(1, m)
                image[c2] = image[c2] + term if c2 in image else term
        out[:, col] = coordN.coords(_image_vector(N, image), mu)
    return out


def certify_graded_iso(M: ModulePresentation, N: ModulePresentation, shift: int = 0,
                       degree_bound: int = 8, seed: int = 0, tries: int = 4,
                       check_id: str = "certify_iso") -> CheckReport:
    """Look for a degree-zero isomorphism ``M -> N[shift]``.

    A random element of ``Hom(M, N[shift])_0`` is tested for bijectivity on
    every graded piece up to ``degree_bound``.  When the Hilbert functions agree
    everywhere and the bound reaches the generator degrees of ``N[shift]``, a
    map bijective on those pieces is surjective, hence an isomorphism.
    Mismatching Hilbert functions fail with a witness degree; a missing
    certificate is reported as inconclusive, never as non-isomorphism.
    """
    Ns = N.shift(shift)
    hf_check = compare(check_id + ".hilbert", M.hilbert, Ns.hilbert)
    if hf_check.status == "fail":
        return CheckReport(check_id, "fail", hf_check.witness_degree, hf_check.lhs_value,
                           hf_check.rhs_value, "Hilbert functions differ")
    p = M.ring.p
    gen_bases, homs = degree_zero_homs(M, Ns)
    twists = list(M.generators.twists) + list(Ns.generators.twists)
    lo = min(twists) if twists else 0
    if homs.shape[0] == 0:
        return CheckReport(check_id, "pass" if M.is_zero() and Ns.is_zero() else "inconclusive",
                           detail="no degree-zero homomorphisms")
    rng = random.Random(seed)
    coordN = _Coordinates(Ns)
    reaches = not Ns.generators.twists or degree_bound >= max(Ns.generators.twists)
    for _ in range(tries):
        coeffs = np.array([rng.randrange(1, p) for _ in range(homs.shape[0])], dtype=np.int64)
        phi = (coeffs @ homs) % p if homs.shape[0] > 1 else (coeffs[0] * homs[0]) % p
        phi = np.asarray(phi).reshape(-1)
        ok = True
        for mu in range(lo, degree_bound + 1):
            mat = _graded_piece_matrix(M, Ns, gen_bases, phi, coordN, mu)
            if mat.shape[0] != mat.shape[1] or (mat.size and rank(mat, p) != mat.shape[0]):
                ok = False
                break
        if ok:
            status = "pass" if reaches else "inconclusive"
            return CheckReport(check_id, status, None, degree_bound, int(homs.shape[0]),
                               "bijective on graded pieces up to the bound",
                               extra={"hom_dimension": int(homs.shape[0])})
    return CheckReport(check_id, "inconclusive", None, degree_bound, int(homs.shape[0]),
                       "no bijective map found within the bound")
