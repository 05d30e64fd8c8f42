"""Brute-force graded pieces by linear algebra over F_p, without Gröbner bases.

Everything works one degree at a time with explicit monomial bases, so it
can be checked by inspection; it is the reference the Gröbner-based code is
tested against.  Slice matrices are kept as sparse rows (dicts) and reduced
by plain Gaussian elimination, which keeps wide slices within memory.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .groebner import Ideal
from .resolution import FreeResolution, GradedMatrix, ModulePresentation
from .ring import Polynomial, Ring

MAX_ENTRIES = 200_000

Row = dict  # column index -> nonzero coefficient mod p


class CostLimit(RuntimeError):
    pass


class ComplexError(RuntimeError):
    pass


class Echelon:
    """Incremental row echelon form; each pivot row is monic at its smallest column."""

    def __init__(self, p: int, limit: int = MAX_ENTRIES):
        self.p = p
        self.limit = limit
        self.pivots: dict[int, Row] = {}
        self.entries = 0

    def _charge(self, k: int) -> None:
        self.entries += k
        if self.entries > self.limit:
            raise CostLimit(f"slice exceeds {self.limit} matrix entries")

    def reduce(self, row: Row) -> Row:
        """Remainder of ``row`` with no entry in a pivot column."""
        p = self.p
        row = {c: v % p for c, v in row.items() if v % p}
        out: Row = {}
        while row:
            c = min(row)
            v = row.pop(c)
            piv = self.pivots.get(c)
            if piv is None:
                out[c] = v
                continue
            for c2, v2 in piv.items():
                if c2 == c:
                    continue
                nv = (row.get(c2, 0) - v * v2) % p
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
        return out

    def add(self, row: Row) -> bool:
        """Insert ``row``; True when it was independent of the rows so far."""
        self._charge(len(row))
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = pow(r[c], self.p - 2, self.p)
        self.pivots[c] = {k: v * inv % self.p for k, v in r.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def sparse_rank(rows: Iterable[Row], p: int, limit: int = MAX_ENTRIES) -> int:
    e = Echelon(p, limit)
    for r in rows:
        e.add(r)
    return e.rank


class _Bases:
    """``(component, monomial) -> index`` for graded pieces of a free module."""

    def __init__(self, ring: Ring, twists: Sequence[int]):
        self.ring = ring
        self.twists = list(twists)
        self._cache: dict[int, tuple[list, dict]] = {}

    def basis(self, mu: int) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
        if mu not in self._cache:
            lst = []
            for c, t in enumerate(self.twists):
                if mu - t >= 0:
                    lst += [(c, m) for m in self.ring.monomials(mu - t)]
            self._cache[mu] = (lst, {x: i for i, x in enumerate(lst)})
        return self._cache[mu]

    def dim(self, mu: int) -> int:
        return len(self.basis(mu)[0])


def _apply(ring: Ring, col: dict[int, Polynomial], m: int, ridx: dict) -> Row:
    """Coordinates of ``m * col`` in the target basis."""
    v: Row = {}
    p = ring.p
    for i, f in col.items():
        for fm, fc in f.terms.items():
            k = ridx[(i, fm + m)]
            v[k] = (v.get(k, 0) + fc) % p
    return {k: c for k, c in v.items() if c}


def _image_rows(ring: Ring, twists: Sequence[int], columns: Sequence[dict[int, Polynomial]],
                col_twists: Sequence[int], mu: int) -> list[Row]:
    """Rows spanning the degree-``mu`` part of the submodule generated by ``columns``."""
    _, ridx = _Bases(ring, twists).basis(mu)
    rows = []
    for col, t in zip(columns, col_twists):
        if mu - t < 0:
            continue
        for m in ring.monomials(mu - t):
            rows.append(_apply(ring, col, m, ridx))
    return rows


def _map_columns(ring: Ring, mat: GradedMatrix, mu: int, tgt: _Bases, src: _Bases) -> list[Row]:
    """Images of the source basis of degree ``mu`` (one sparse row per source element)."""
    _, ridx = tgt.basis(mu)
    cols, _ = src.basis(mu)
    return [_apply(ring, mat.columns[c], m, ridx) for c, m in cols]


def oracle_ideal_hf(I: Ideal, lo: int, hi: int, limit: int = MAX_ENTRIES) -> dict[int, int]:
    """``dim (A/I)_mu`` for ``lo <= mu <= hi``: monomial count minus the rank of the
    multiplication-by-generators map into degree ``mu``."""
    ring = I.ring
    cols = [{0: f} for f in I.generators]
    tw = [f.degree() for f in I.generators]
    out = {}
    for mu in range(lo, hi + 1):
        width = _Bases(ring, [0]).dim(mu)
        out[mu] = width - sparse_rank(_image_rows(ring, [0], cols, tw, mu), ring.p, limit) if width else 0
    return out


def oracle_module_hf(M: ModulePresentation, lo: int, hi: int, limit: int = MAX_ENTRIES) -> dict[int, int]:
    ring = M.ring
    rel = M.relations
    base = _Bases(ring, M.generators.twists)
    out = {}
    for mu in range(lo, hi + 1):
        rows = _image_rows(ring, M.generators.twists, rel.columns, rel.source.twists, mu)
        out[mu] = base.dim(mu) - sparse_rank(rows, ring.p, limit)
    return out


def _homogeneous_parts(f: Polynomial) -> dict[int, Polynomial]:
    parts: dict[int, dict[int, int]] = {}
    for m, c in f.terms.items():
        parts.setdefault(f.ring.mdeg(m), {})[m] = c
    return {d: Polynomial(f.ring, t) for d, t in parts.items()}


def oracle_membership(f: Polynomial, I: Ideal, limit: int = MAX_ENTRIES) -> bool:
    """``f in I``, deciding each homogeneous part by a linear system in its degree."""
    ring = I.ring
    cols = [{0: g} for g in I.generators]
    tw = [g.degree() for g in I.generators]
    for d, part in _homogeneous_parts(f).items():
        e = Echelon(ring.p, limit)
        for r in _image_rows(ring, [0], cols, tw, d):
            e.add(r)
        _, ridx = _Bases(ring, [0]).basis(d)
        if e.reduce({ridx[(0, m)]: c for m, c in part.terms.items()}):
            return False
    return True


# -- Ext through the dualized resolution --------------------------------------------------

def _compose_is_zero(first: list[Row], second: list[Row], p: int) -> bool:
    """``second o first == 0`` where rows are images of basis vectors."""
    for v in first:
        acc: Row = {}
        for k, c in v.items():
            for k2, c2 in second[k].items():
                acc[k2] = (acc.get(k2, 0) + c * c2) % p
        if any(acc.values()):
            return False
    return True


def oracle_ext_hf(M: ModulePresentation, i: int, lo: int, hi: int, limit: int = MAX_ENTRIES,
                  res: FreeResolution | None = None) -> dict[int, int]:
    """``dim D_i(M)_mu = dim Ext^{n-i}(M, A[-n])_mu`` from the dualized resolution.

    The resolution is only trusted to be a complex; ``d o d = 0`` is re-checked
    on every slice used.
    """
    ring = M.ring
    n = ring.n
    p = ring.p
    e = n - i
    res = res if res is not None else M.resolution
    if i < 0 or i > n or e > res.length or M.is_zero():
        return {mu: 0 for mu in range(lo, hi + 1)}
    mods = [F.dual(n) for F in res.modules]
    maps = [d.transpose(n) for d in res.differentials]  # maps[k]: mods[k] -> mods[k+1]
    bases = [_Bases(ring, F.twists) for F in mods]
    out = {}
    for mu in range(lo, hi + 1):
        dim_e = bases[e].dim(mu)
        if dim_e == 0:
            out[mu] = 0
            continue
        leaving = _map_columns(ring, maps[e], mu, bases[e + 1], bases[e]) if e < len(maps) else []
        arriving = _map_columns(ring, maps[e - 1], mu, bases[e], bases[e - 1]) if e >= 1 else []
        if leaving and arriving and not _compose_is_zero(arriving, leaving, p):
            raise ComplexError(f"d o d != 0 in degree {mu}")
        out[mu] = dim_e - sparse_rank(leaving, p, limit) - sparse_rank(arriving, p, limit)
    return out


def oracle_resolution_exact(M: ModulePresentation, lo: int, hi: int, limit: int = MAX_ENTRIES) -> bool:
    """Slicewise exactness of the resolution of ``M`` in positive homological degree."""
    ring = M.ring
    res = M.resolution
    p = ring.p
    bases = [_Bases(ring, F.twists) for F in res.modules]
    for mu in range(lo, hi + 1):
        for k in range(1, len(res.modules)):
            dim_k = bases[k].dim(mu)
            if not dim_k:
                continue
            r_out = sparse_rank(_map_columns(ring, res.differentials[k - 1], mu, bases[k - 1], bases[k]), p, limit)
            r_in = 0
            if k < res.length:
                r_in = sparse_rank(_map_columns(ring, res.differentials[k], mu, bases[k], bases[k + 1]), p, limit)
            if dim_k - r_out - r_in != 0:
                return False
    return True


# -- Betti numbers through Koszul homology ----------------------------------------------------

class _Quotient:
    """Graded pieces of ``M`` as explicit quotients ``F0_mu / image``."""

    def __init__(self, M: ModulePresentation, limit: int):
        self.M = M
        self.limit = limit
        self.ring = M.ring
        self.F0 = _Bases(M.ring, M.generators.twists)
        self._cache: dict[int, tuple[Echelon, dict[int, int]]] = {}

    def piece(self, mu: int) -> tuple[Echelon, dict[int, int]]:
        if mu not in self._cache:
            rel = self.M.relations
            e = Echelon(self.ring.p, self.limit)
            for r in _image_rows(self.ring, self.M.generators.twists, rel.columns, rel.source.twists, mu):
                e.add(r)
            free = [c for c in range(self.F0.dim(mu)) if c not in e.pivots]
            self._cache[mu] = (e, {c: i for i, c in enumerate(free)})
        return self._cache[mu]

    def dim(self, mu: int) -> int:
        return len(self.piece(mu)[1])

    def times_variable(self, k: int, mu: int) -> list[Row]:
        """Images of the basis of ``M_mu`` under ``x_k`` in coordinates of ``M_{mu+1}``."""
        src, _ = self.F0.basis(mu)
        _, tidx = self.F0.basis(mu + 1)
        ech, free_to = self.piece(mu + 1)
        xk = self.ring.var(k)
        out = []
        for col in self.piece(mu)[1]:
            c, m = src[col]
            r = ech.reduce({tidx[(c, m + xk)]: 1})
            out.append({free_to[q]: v for q, v in r.items()})
        return out


def oracle_betti(M: ModulePresentation, max_degree: int, limit: int = MAX_ENTRIES) -> dict[tuple[int, int], int]:
    """``beta_ij = dim H_i(K(x; M))_j`` for internal degrees ``j <= max_degree``."""
    ring = M.ring
    n = ring.n
    p = ring.p
    Q = _Quotient(M, limit)
    lo = min(M.generators.twists) if M.generators.rank else 0
    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    tindex = [{s: k for k, s in enumerate(sub)} for sub in subsets]

    def koszul_rank(i: int, j: int) -> int:
        """Rank of ``wedge^i ⊗ M_{j-i} -> wedge^{i-1} ⊗ M_{j-i+1}``."""
        src_dim, tgt_dim = Q.dim(j - i), Q.dim(j - i + 1)
        if not src_dim or not tgt_dim:
            return 0
        mult = [Q.times_variable(k, j - i) for k in range(n)]
        rows = []
        for s in subsets[i]:
            for b in range(src_dim):
                v: Row = {}
                for pos, k in enumerate(s):
                    sign = 1 if pos % 2 == 0 else -1
                    base = tindex[i - 1][s[:pos] + s[pos + 1:]] * tgt_dim
                    for q, c in mult[k][b].items():
                        v[base + q] = (v.get(base + q, 0) + sign * c) % p
                rows.append(v)
        return sparse_rank(rows, p, limit)

    betti = {}
    for j in range(lo, max_degree + 1):
        for i in range(0, n + 1):
            dim_i = len(subsets[i]) * Q.dim(j - i)
            if dim_i == 0:
                continue
            r_out = koszul_rank(i, j) if i >= 1 else 0
            r_in = koszul_rank(i + 1, j) if i + 1 <= n else 0
            b = dim_i - r_out - r_in
            if b:
                betti[(i, j)] = b
    return betti
