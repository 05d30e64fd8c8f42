"""Homogeneous ideals: Gröbner bases, colon ideals, saturation, Hilbert series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .hilbert import HilbertFunction, monomial_ideal_numerator
from .modgb import Frame, groebner, normal_form as _vec_nf, syzygy_vectors
from .ring import Polynomial, Ring, RingError


class DegenerateQuotient(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        gens = []
        for f in self.generators:
            if f.ring != self.ring:
                raise RingError("generator from a different ring")
            if not f.is_homogeneous():
                raise NotHomogeneous(f"generator {f} is not homogeneous")
            if f:
                gens.append(f)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, ring: Ring, gens: Iterable[Polynomial | str]) -> "Ideal":
        return cls(ring, tuple(ring.parse(g) if isinstance(g, str) else g for g in gens))

    def is_zero(self) -> bool:
        return not self.generators

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    elements: tuple[Polynomial, ...]

    def leading_monomials(self) -> list[int]:
        return [g.leading_monomial() for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)


def _frame(ring: Ring) -> Frame:
    return Frame(ring, [0])


@lru_cache(maxsize=4096)
def groebner_basis(I: Ideal) -> GroebnerBasis:
    """Reduced grevlex Gröbner basis (monic, sorted by increasing leading term)."""
    fr = _frame(I.ring)
    basis = groebner(fr, [fr.vector({0: f}) for f in I.generators])
    elems = tuple(fr.column(b)[0] for b in basis)
    return GroebnerBasis(I, elems)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ideal.ring:
        raise RingError("ring mismatch")
    fr = _frame(f.ring)
    vecs = [fr.vector({0: g}) for g in G.elements]
    out = _vec_nf(fr, vecs, fr.vector({0: f}))
    return fr.column(out).get(0, f.ring.zero()) if out else f.ring.zero()


def contains(I: Ideal, f: Polynomial) -> bool:
    return normal_form(f, groebner_basis(I)).is_zero()


def is_subset(I: Ideal, J: Ideal) -> bool:
    """``I ⊆ J``."""
    G = groebner_basis(J)
    return all(normal_form(f, G).is_zero() for f in I.generators)


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    return groebner_basis(I).elements == groebner_basis(J).elements


def _from_basis(ring: Ring, gens: Iterable[Polynomial]) -> Ideal:
    return Ideal(ring, groebner_basis(Ideal(ring, tuple(gens))).elements)


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, (ring.one(),))


def quotient_by_element(I: Ideal, g: Polynomial) -> Ideal:
    """``I : g`` from the syzygies of ``(g, f_1, ..., f_r)``."""
    ring = I.ring
    if g.is_zero():
        raise DegenerateQuotient("quotient by the zero polynomial is undefined")
    if not g.is_homogeneous():
        raise NotHomogeneous(str(g))
    if I.is_zero():
        return Ideal(ring, ())
    gens = [g] + list(I.generators)
    cols = [{0: f} for f in gens]
    twists = [f.degree() for f in gens]
    syz = syzygy_vectors(ring, [0], cols, twists)
    out = [s[0] for s in syz if 0 in s]
    return _from_basis(ring, out)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``I : J = {f : f J ⊆ I}`` as the intersection of ``I : g`` over generators of J."""
    if J.ring != I.ring:
        raise RingError("ring mismatch")
    if J.is_zero():
        raise DegenerateQuotient("quotient by the zero ideal")
    result: Ideal | None = None
    for g in groebner_basis(J).elements:
        q = quotient_by_element(I, g)
        result = q if result is None else ideal_intersection(result, q)
    return result


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """Intersection via syzygies of ``(f_1..f_r, g_1..g_s)``."""
    ring = I.ring
    if J.ring != ring:
        raise RingError("ring mismatch")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, ())
    fs = list(I.generators)
    gens = fs + list(J.generators)
    cols = [{0: f} for f in gens]
    syz = syzygy_vectors(ring, [0], cols, [f.degree() for f in gens])
    out = []
    for s in syz:
        acc = ring.zero()
        for i, f in enumerate(fs):
            if i in s:
                acc = acc + s[i] * f
        if acc:
            out.append(acc)
    return _from_basis(ring, out)


def irrelevant_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, tuple(ring.gens()))


def saturate_irrelevant(I: Ideal) -> Ideal:
    """``I : m^infinity`` by iterating ``I : m`` until it stabilizes."""
    ring = I.ring
    current = Ideal(ring, groebner_basis(I).elements)
    m = irrelevant_ideal(ring)
    while True:
        if groebner_basis(current).is_unit():
            return unit_ideal(ring)
        nxt = ideal_quotient(current, m)
        if ideals_equal(nxt, current):
            return current
        current = nxt


@lru_cache(maxsize=4096)
def hilbert_series(I: Ideal) -> HilbertFunction:
    """Hilbert function of ``A/I`` from the leading-term ideal."""
    ring = I.ring
    G = groebner_basis(I)
    lms = [ring.unpack(m) for m in G.leading_monomials()]
    return HilbertFunction.from_series(monomial_ideal_numerator(lms, ring.n), ring.n)


def krull_dimension(I: Ideal) -> int:
    """Krull dimension of ``A/I``; -1 (``EMPTY_DIM``) for the unit ideal."""
    return hilbert_series(I).dimension


def degree(I: Ideal) -> int:
    """Multiplicity of ``A/I`` (leading Hilbert coefficient times (dim-1)!)."""
    return hilbert_series(I).multiplicity


def cone(I: Ideal, extra: int = 1) -> Ideal:
    """The same generators in a ring with ``extra`` additional variables."""
    old = I.ring
    new = Ring(old.p, old.n + extra, tuple(old.names) + tuple(f"x{old.n + i}" for i in range(extra)))
    return Ideal(new, tuple(Polynomial(new, dict(f.terms)) for f in I.generators))


def polys_in(ring: Ring, texts: Sequence[str]) -> tuple[Polynomial, ...]:
    return tuple(ring.parse(t) for t in texts)
