"""Graded free modules, presentations and minimal free resolutions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .groebner import Ideal, groebner_basis
from .hilbert import HilbertFunction, lp_add, lp_shift, monomial_ideal_numerator
from .modgb import Frame, groebner, leading_monomials, syzygy_vectors
from .ring import Polynomial, Ring


class ZeroModule(ValueError):
    pass


class EmptyScheme(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    """``sum_i A[-twists[i]]``; ``twists`` are the generator degrees."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def shift(self, s: int) -> "GradedFreeModule":
        """``F[s]``: generator degrees drop by ``s``."""
        return GradedFreeModule(tuple(t - s for t in self.twists))

    def dual(self, n: int = 0) -> "GradedFreeModule":
        """``Hom(F, A[-n])``."""
        return GradedFreeModule(tuple(n - t for t in self.twists))


Column = dict  # row index -> nonzero Polynomial


class GradedMatrix:
    """Homogeneous map ``source -> target`` stored as sparse columns."""

    __slots__ = ("ring", "target", "source", "columns")

    def __init__(self, ring: Ring, target: GradedFreeModule, source: GradedFreeModule,
                 columns: Sequence[Column], check: bool = True):
        self.ring = ring
        self.target = target
        self.source = source
        self.columns = [{i: f for i, f in col.items() if f} for col in columns]
        if len(self.columns) != source.rank:
            raise ValueError("column count does not match source rank")
        if check:
            for j, col in enumerate(self.columns):
                for i, f in col.items():
                    if not 0 <= i < target.rank:
                        raise ValueError("row index out of range")
                    want = source.twists[j] - target.twists[i]
                    if not f.is_homogeneous() or f.degree() != want:
                        raise ValueError(f"entry ({i},{j}) = {f} is not homogeneous of degree {want}")

    @classmethod
    def from_rows(cls, ring: Ring, target: Sequence[int], source: Sequence[int],
                  rows: Sequence[Sequence[Polynomial | str | int]]) -> "GradedMatrix":
        cols: list[dict] = [{} for _ in source]
        for i, row in enumerate(rows):
            for j, f in enumerate(row):
                if isinstance(f, str):
                    f = ring.parse(f)
                elif isinstance(f, int):
                    f = ring.constant(f)
                if f:
                    cols[j][i] = f
        return cls(ring, GradedFreeModule(tuple(target)), GradedFreeModule(tuple(source)), cols)

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j].get(i, self.ring.zero())

    def rows(self) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not any(self.columns)

    def transpose(self, n: int = 0) -> "GradedMatrix":
        """The dual map ``Hom(target, A[-n]) -> Hom(source, A[-n])``."""
        cols: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, f in col.items():
                cols[i][j] = f
        return GradedMatrix(self.ring, self.source.dual(n), self.target.dual(n), cols, check=False)

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """``self ∘ other``."""
        cols = []
        for col in other.columns:
            acc: dict[int, Polynomial] = {}
            for k, g in col.items():
                for i, f in self.columns[k].items():
                    acc[i] = acc[i] + f * g if i in acc else f * g
            cols.append(acc)
        return GradedMatrix(self.ring, self.target, other.source, cols, check=False)

    def hstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.target != other.target:
            raise ValueError("targets differ")
        src = GradedFreeModule(self.source.twists + other.source.twists)
        return GradedMatrix(self.ring, self.target, src, self.columns + other.columns, check=False)

    def select_columns(self, keep: Sequence[int]) -> "GradedMatrix":
        src = GradedFreeModule(tuple(self.source.twists[j] for j in keep))
        return GradedMatrix(self.ring, self.target, src, [self.columns[j] for j in keep], check=False)

    def shift(self, s: int) -> "GradedMatrix":
        return GradedMatrix(self.ring, self.target.shift(s), self.source.shift(s), self.columns, check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedMatrix) and self.target == other.target
                and self.source == other.source and self.columns == other.columns)

    def __repr__(self) -> str:
        return f"GradedMatrix({self.nrows}x{self.ncols}, target={self.target.twists}, source={self.source.twists})"


def zero_matrix(ring: Ring, target: GradedFreeModule, source: GradedFreeModule) -> GradedMatrix:
    return GradedMatrix(ring, target, source, [{} for _ in source.twists], check=False)


def identity_matrix(ring: Ring, module: GradedFreeModule) -> GradedMatrix:
    return GradedMatrix(ring, module, module, [{i: ring.one()} for i in range(module.rank)], check=False)


# -- syzygies ------------------------------------------------------------------

def syzygies(m: GradedMatrix) -> GradedMatrix:
    """Matrix whose columns generate the syzygy module of the columns of ``m``."""
    ring = m.ring
    vecs = syzygy_vectors(ring, m.target.twists, m.columns, m.source.twists)
    twists = []
    for v in vecs:
        j, f = next(iter(v.items()))
        twists.append(f.degree() + m.source.twists[j])
    order = sorted(range(len(vecs)), key=lambda k: twists[k])
    return GradedMatrix(ring, m.source, GradedFreeModule(tuple(twists[k] for k in order)),
                        [vecs[k] for k in order], check=False)


# -- unit cancellation ---------------------------------------------------------------

def _find_unit(m: GradedMatrix) -> tuple[int, int] | None:
    for j, col in enumerate(m.columns):
        tj = m.source.twists[j]
        for i in sorted(col):
            if m.target.twists[i] == tj:
                return i, j
    return None


def _eliminate(m: GradedMatrix, r: int, c: int) -> GradedMatrix:
    """Split off the unit at ``(r, c)``: rank-one update, then drop row r and column c."""
    ring = m.ring
    p = ring.p
    u = m.columns[c][r].constant_value()
    uinv = pow(u, p - 2, p)
    pivot_col = m.columns[c]
    cols = []
    for j, col in enumerate(m.columns):
        if j == c:
            continue
        if r in col:
            factor = col[r].scale(uinv)
            new = dict(col)
            for i, f in pivot_col.items():
                v = new.get(i, ring.zero()) - f * factor
                if v:
                    new[i] = v
                else:
                    new.pop(i, None)
            col = new
        cols.append({(i if i < r else i - 1): f for i, f in col.items() if i != r})
    target = GradedFreeModule(m.target.twists[:r] + m.target.twists[r + 1:])
    source = GradedFreeModule(m.source.twists[:c] + m.source.twists[c + 1:])
    return GradedMatrix(ring, target, source, cols, check=False)


def _drop_column(m: GradedMatrix, c: int) -> GradedMatrix:
    keep = [j for j in range(m.ncols) if j != c]
    return m.select_columns(keep)


def _drop_row(m: GradedMatrix, r: int) -> GradedMatrix:
    cols = [{(i if i < r else i - 1): f for i, f in col.items() if i != r} for col in m.columns]
    target = GradedFreeModule(m.target.twists[:r] + m.target.twists[r + 1:])
    return GradedMatrix(m.ring, target, m.source, cols, check=False)


# -- presentations -----------------------------------------------------------------

class ModulePresentation:
    """``coker(relations: F1 -> F0)`` with ``F0 = generators``."""

    def __init__(self, ring: Ring, generators: GradedFreeModule, relations: GradedMatrix | None = None,
                 name: str = ""):
        if relations is None:
            relations = zero_matrix(ring, generators, GradedFreeModule(()))
        if relations.target != generators:
            raise ValueError("relations must map into the generators")
        self.ring = ring
        self.generators = generators
        self.relations = relations
        self.name = name

    @classmethod
    def free(cls, ring: Ring, twists: Sequence[int] = (0,)) -> "ModulePresentation":
        return cls(ring, GradedFreeModule(tuple(twists)))

    @classmethod
    def quotient_ring(cls, I: Ideal, name: str = "") -> "ModulePresentation":
        ring = I.ring
        gens = [g for g in I.generators]
        rel = GradedMatrix(ring, GradedFreeModule((0,)), GradedFreeModule(tuple(g.degree() for g in gens)),
                           [{0: g} for g in gens], check=False)
        return cls(ring, GradedFreeModule((0,)), rel, name=name)

    @classmethod
    def zero(cls, ring: Ring) -> "ModulePresentation":
        return cls(ring, GradedFreeModule(()))

    def shift(self, s: int) -> "ModulePresentation":
        """``M[s]`` with ``HF(M[s], mu) = HF(M, mu + s)``."""
        return ModulePresentation(self.ring, self.generators.shift(s), self.relations.shift(s), self.name)

    # -- Gröbner data -------------------------------------------------------------
    @cached_property
    def frame(self) -> Frame:
        return Frame(self.ring, self.generators.twists)

    @cached_property
    def groebner(self) -> list[dict[int, int]]:
        fr = self.frame
        return groebner(fr, [fr.vector(col) for col in self.relations.columns])

    @cached_property
    def hilbert(self) -> HilbertFunction:
        fr = self.frame
        lms = leading_monomials(fr, self.groebner)
        num: dict[int, int] = {}
        n = self.ring.n
        for comp, twist in enumerate(self.generators.twists):
            part = monomial_ideal_numerator([self.ring.unpack(m) for m in lms[comp]], n)
            num = lp_add(num, lp_shift(part, twist))
        return HilbertFunction.from_series(num, n)

    def is_zero(self) -> bool:
        return self.hilbert.is_zero()

    @property
    def dimension(self) -> int:
        return self.hilbert.dimension

    @cached_property
    def resolution(self) -> "FreeResolution":
        return free_resolution(self)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<ModulePresentation{label}: gens {self.generators.twists}, {self.relations.ncols} relations>"


def prune(M: ModulePresentation) -> ModulePresentation:
    """Cancel unit relations against generators and drop zero relations."""
    rel = M.relations
    keep = [j for j, col in enumerate(rel.columns) if col]
    rel = rel.select_columns(keep)
    while True:
        hit = _find_unit(rel)
        if hit is None:
            break
        rel = _eliminate(rel, *hit)
    return ModulePresentation(M.ring, rel.target, rel, M.name)


@dataclass
class FreeResolution:
    """``F_0 <- F_1 <- ...``; ``differentials[k]: modules[k+1] -> modules[k]``."""

    modules: list[GradedFreeModule]
    differentials: list[GradedMatrix]
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.differentials)

    def ranks(self) -> list[int]:
        return [F.rank for F in self.modules]

    def betti(self) -> dict[tuple[int, int], int]:
        """``{(i, j): beta_ij}`` with j the internal degree."""
        out: dict[tuple[int, int], int] = {}
        for i, F in enumerate(self.modules):
            for t in F.twists:
                out[(i, t)] = out.get((i, t), 0) + 1
        return out

    def betti_grid(self) -> dict:
        """Integer grid ``rows[i][j - lo]`` over homological degree i and internal degree j."""
        b = self.betti()
        if not b:
            return {"lo": 0, "rows": []}
        lo = min(j for _, j in b)
        hi = max(j for _, j in b)
        rows = [[b.get((i, j), 0) for j in range(lo, hi + 1)] for i in range(len(self.modules))]
        return {"lo": lo, "rows": rows}

    def regularity(self) -> int:
        return max(max(F.twists) - i for i, F in enumerate(self.modules) if F.rank)

    def euler_series(self) -> dict[int, int]:
        """Numerator of ``sum_i (-1)^i sum_j t^{twist_ij} / (1-t)^n``."""
        num: dict[int, int] = {}
        for i, F in enumerate(self.modules):
            for t in F.twists:
                num = lp_add(num, {t: 1}, -1 if i % 2 else 1)
        return num


def minimize(res: FreeResolution) -> FreeResolution:
    """Split off every trivial summand ``A[-d] --unit--> A[-d]``."""
    diffs = list(res.differentials)
    changed = True
    while changed:
        changed = False
        for k, d in enumerate(diffs):
            hit = _find_unit(d)
            if hit is None:
                continue
            r, c = hit
            diffs[k] = _eliminate(d, r, c)
            if k > 0:
                diffs[k - 1] = _drop_column(diffs[k - 1], r)
            if k + 1 < len(diffs):
                diffs[k + 1] = _drop_row(diffs[k + 1], c)
            changed = True
            break
    while diffs and diffs[-1].ncols == 0:
        diffs.pop()
    if diffs:
        modules = [diffs[0].target] + [d.source for d in diffs]
    else:
        modules = [res.modules[0] if not res.differentials else res.differentials[0].target]
    return FreeResolution(modules, diffs, True)


def free_resolution(M: ModulePresentation, max_length: int | None = None) -> FreeResolution:
    """Minimal graded free resolution, built from syzygies and pruned step by step.

    Each new syzygy matrix is cleared of unit entries, which removes redundant
    generators of the previous step; what remains is minimal.
    """
    n = M.ring.n
    M = prune(M)
    diffs: list[GradedMatrix] = []
    if M.relations.ncols:
        diffs.append(M.relations)
    while diffs:
        S = syzygies(diffs[-1])
        while True:
            hit = _find_unit(S)
            if hit is None:
                break
            r, c = hit
            diffs[-1] = _drop_column(diffs[-1], r)
            S = _eliminate(S, r, c)
        if S.ncols == 0:
            break
        diffs.append(S)
        if len(diffs) > n + 1:
            raise RuntimeError("resolution longer than the number of variables")
    modules = [M.generators] + [d.source for d in diffs]
    res = FreeResolution(modules, diffs, True)
    if max_length is not None and max_length < res.length:
        res = FreeResolution(res.modules[: max_length + 1], res.differentials[:max_length], True)
    return res


def kernel_mod_image(phi: GradedMatrix, psi: GradedMatrix) -> ModulePresentation:
    """Presentation of ``ker(phi) / im(psi)`` where ``phi ∘ psi = 0``."""
    ring = phi.ring
    if phi.is_zero():
        Z = identity_matrix(ring, phi.source)
    else:
        Z = syzygies(phi)
        # drop redundant kernel generators
        S = syzygies(Z)
        while True:
            hit = _find_unit(S)
            if hit is None:
                break
            r, c = hit
            Z = _drop_column(Z, r)
            S = _eliminate(S, r, c)
    if Z.ncols == 0:
        return ModulePresentation.zero(ring)
    if psi.ncols == 0 or psi.is_zero():
        rel = zero_matrix(ring, Z.source, GradedFreeModule(()))
        return prune(ModulePresentation(ring, Z.source, rel))
    both = Z.hstack(psi)
    syz = syzygies(both)
    k = Z.ncols
    cols = [{i: f for i, f in col.items() if i < k} for col in syz.columns]
    rel = GradedMatrix(ring, Z.source, syz.source, cols, check=False)
    return prune(ModulePresentation(ring, Z.source, rel))


# -- invariants ------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologicalInvariants:
    pd: int
    depth: int
    dim: int
    regularity: int
    is_cm: bool


def homological_invariants(M: ModulePresentation) -> HomologicalInvariants:
    if M.is_zero():
        raise ZeroModule("invariants of the zero module")
    res = M.resolution
    pd = res.length
    depth = M.ring.n - pd
    dim = M.dimension
    return HomologicalInvariants(pd, depth, dim, res.regularity(), depth == dim)


@dataclass(frozen=True)
class GorensteinTest:
    gorenstein: bool
    a_invariant: int | None
    cohen_macaulay: bool
    last_betti: int


def is_gorenstein(b: Ideal) -> GorensteinTest:
    """CM with last Betti number one; ``a = last twist - n`` so ``omega_B = B[a]``."""
    if groebner_basis(b).is_unit():
        raise EmptyScheme("unit ideal")
    B = ModulePresentation.quotient_ring(b)
    inv = homological_invariants(B)
    last = B.resolution.modules[-1]
    gor = inv.is_cm and last.rank == 1
    a = last.twists[0] - b.ring.n if gor else None
    return GorensteinTest(gor, a, inv.is_cm, last.rank)
