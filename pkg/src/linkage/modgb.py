"""Buchberger's algorithm for homogeneous submodules of graded free modules.

A vector is a dict ``term key -> coefficient``.  Term keys are ints laid out
so that integer comparison is the module order and multiplying by a monomial
is a single addition (see :class:`Frame`).  Ideals are the rank-one case.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .ring import BITS, Polynomial, Ring

_OFF = 1 << 14
_DMASK = (1 << 16) - 1


class Frame:
    """Order and key layout on ``F = sum A[-twists[i]]``.

    Key fields, most significant first: block, total degree, reversed packed
    monomial, reversed component.  Components in a higher block dominate;
    inside a block the order is degree, then grevlex, then lower index first.
    """

    def __init__(self, ring: Ring, twists: Sequence[int], blocks: Sequence[int] | None = None):
        self.ring = ring
        self.twists = list(twists)
        self.rank = len(self.twists)
        self.blocks = list(blocks) if blocks is not None else [0] * self.rank
        self.cbits = max(1, self.rank.bit_length())
        self.cmask = (1 << self.cbits) - 1
        self.mbits = BITS * ring.n
        self.maxm = (1 << self.mbits) - 1
        self.dshift = self.cbits + self.mbits
        self.bshift = self.dshift + 16

    def key(self, comp: int, m: int) -> int:
        tdeg = self.ring.mdeg(m) + self.twists[comp]
        return (
            (self.blocks[comp] << self.bshift)
            | ((tdeg + _OFF) << self.dshift)
            | ((self.maxm - m) << self.cbits)
            | (self.rank - 1 - comp)
        )

    def comp(self, k: int) -> int:
        return self.rank - 1 - (k & self.cmask)

    def mono(self, k: int) -> int:
        return self.maxm - ((k >> self.cbits) & self.maxm)

    def tdeg(self, k: int) -> int:
        return ((k >> self.dshift) & _DMASK) - _OFF

    def shift(self, mono: int, mdeg: int) -> int:
        """Key increment for multiplication by the monomial ``mono``."""
        return (mdeg << self.dshift) - (mono << self.cbits)

    # -- conversion ---------------------------------------------------------
    def vector(self, column: dict[int, Polynomial]) -> dict[int, int]:
        out = {}
        for comp, f in column.items():
            for m, c in f.terms.items():
                out[self.key(comp, m)] = c
        return out

    def column(self, vec: dict[int, int]) -> dict[int, Polynomial]:
        parts: dict[int, dict[int, int]] = {}
        for k, c in vec.items():
            parts.setdefault(self.comp(k), {})[self.mono(k)] = c
        return {comp: Polynomial(self.ring, t) for comp, t in parts.items()}


class GroebnerSystem:
    """State of one Buchberger run; ``basis()`` gives the reduced basis."""

    def __init__(self, frame: Frame):
        self.frame = frame
        self.ring = frame.ring
        self.p = frame.ring.p
        self.elems: list[dict[int, int]] = []
        self.lead: list[int] = []
        self.active: list[bool] = []
        self.by_comp: dict[int, list[int]] = {}
        self.pairs: dict[int, tuple[int, int, int]] = {}
        self.heap: list[tuple] = []
        self._pid = 0

    # -- reduction ----------------------------------------------------------
    def _reducer(self, k: int) -> int:
        fr = self.frame
        comp = fr.comp(k)
        m = fr.mono(k)
        g = self.ring.guard
        for idx in self.by_comp.get(comp, ()):
            lm = fr.mono(self.lead[idx])
            if (((m | g) - lm) & g) == g:
                return idx
        return -1

    def reduce(self, vec: dict[int, int], tail: bool = True) -> dict[int, int]:
        """Normal form of ``vec`` (consumed) w.r.t. the current elements."""
        p = self.p
        result: dict[int, int] = {}
        while vec:
            k = max(vec)
            idx = self._reducer(k)
            if idx < 0:
                if not tail:
                    result.update(vec)
                    return result
                result[k] = vec.pop(k)
                continue
            g = self.elems[idx]
            gk = self.lead[idx]
            c = vec[k]
            # g is monic; same block and component, so keys differ by a monomial shift
            delta = k - gk
            get = vec.get
            for gk2, gc in g.items():
                nk = gk2 + delta
                nv = (get(nk, 0) - c * gc) % p
                if nv:
                    vec[nk] = nv
                else:
                    vec.pop(nk, None)
        return result

    def _monic(self, vec: dict[int, int]) -> dict[int, int]:
        k = max(vec)
        inv = pow(vec[k], self.p - 2, self.p)
        p = self.p
        return {t: c * inv % p for t, c in vec.items()}

    # -- pair bookkeeping -----------------------------------------------------
    def _lcm_key(self, i: int, j: int) -> int:
        fr = self.frame
        ki, kj = self.lead[i], self.lead[j]
        comp = fr.comp(ki)
        return fr.key(comp, self.ring.mlcm(fr.mono(ki), fr.mono(kj)))

    def _push_pair(self, i: int, j: int, lk: int) -> None:
        pid = self._pid
        self._pid += 1
        self.pairs[pid] = (i, j, lk)
        heapq.heappush(self.heap, (self.frame.tdeg(lk), 1, lk, pid))

    def _divides_key(self, a: int, b: int) -> bool:
        """Monomial part of key ``a`` divides that of ``b`` (same component assumed)."""
        fr = self.frame
        g = self.ring.guard
        ma, mb = fr.mono(a), fr.mono(b)
        return (((mb | g) - ma) & g) == g

    def _update(self, h: int) -> None:
        fr = self.frame
        ring = self.ring
        kh = self.lead[h]
        ch = fr.comp(kh)
        ideal = fr.rank == 1
        cands = []
        for g in self.by_comp.get(ch, ()):
            cands.append((g, self._lcm_key(g, h)))
        # Gebauer-Moeller: drop (g,h) whose lcm is a multiple of another new lcm
        kept: list[tuple[int, int]] = []
        for pos, (g, lk) in enumerate(cands):
            coprime = ideal and ring.coprime(fr.mono(self.lead[g]), fr.mono(kh))
            if coprime:
                kept.append((g, lk))
                continue
            redundant = False
            for g2, lk2 in cands[pos + 1:]:
                if self._divides_key(lk2, lk):
                    redundant = True
                    break
            if not redundant:
                for g2, lk2 in kept:
                    if self._divides_key(lk2, lk):
                        redundant = True
                        break
            if not redundant:
                kept.append((g, lk))
        new_pairs = []
        for g, lk in kept:
            if ideal and ring.coprime(fr.mono(self.lead[g]), fr.mono(kh)):
                continue
            new_pairs.append((g, lk))
        # chain criterion on old pairs
        for pid, (i, j, lk) in list(self.pairs.items()):
            if fr.comp(lk) != ch or not self._divides_key(kh, lk):
                continue
            if self._lcm_key(i, h) != lk and self._lcm_key(j, h) != lk:
                del self.pairs[pid]
        for g, lk in new_pairs:
            self._push_pair(g, h, lk)
        # retire elements whose lead is a multiple of the new lead
        lst = self.by_comp.setdefault(ch, [])
        keep = []
        for g in lst:
            if self._divides_key(kh, self.lead[g]):
                self.active[g] = False
            else:
                keep.append(g)
        keep.append(h)
        self.by_comp[ch] = keep

    def _add(self, vec: dict[int, int]) -> None:
        vec = self._monic(vec)
        self.elems.append(vec)
        self.lead.append(max(vec))
        self.active.append(True)
        self._update(len(self.elems) - 1)

    def _spoly(self, i: int, j: int, lk: int) -> dict[int, int]:
        p = self.p
        out: dict[int, int] = {}
        for idx, sign in ((i, 1), (j, -1)):
            k = self.lead[idx]
            d = lk - k  # pure monomial shift, fields do not interact
            for t, c in self.elems[idx].items():
                nt = t + d
                v = (out.get(nt, 0) + sign * c) % p
                if v:
                    out[nt] = v
                else:
                    out.pop(nt, None)
        return out

    # -- driver ---------------------------------------------------------------------
    def run(self, vectors: Iterable[dict[int, int]]) -> None:
        inputs = [v for v in vectors if v]
        for n, v in enumerate(inputs):
            k = max(v)
            heapq.heappush(self.heap, (self.frame.tdeg(k), 0, k, n))
        while self.heap:
            _, kind, _, ident = heapq.heappop(self.heap)
            if kind == 0:
                vec = dict(inputs[ident])
            else:
                pair = self.pairs.pop(ident, None)
                if pair is None:
                    continue
                vec = self._spoly(*pair)
            if not vec:
                continue
            h = self.reduce(vec)
            if h:
                self._add(h)

    def basis(self) -> list[dict[int, int]]:
        """Reduced basis, sorted by increasing leading key."""
        idxs = [i for i, a in enumerate(self.active) if a]
        idxs.sort(key=lambda i: self.lead[i])
        out = []
        for i in idxs:
            others = [j for j in idxs if j != i]
            saved = self.by_comp
            comp_map: dict[int, list[int]] = {}
            for j in others:
                comp_map.setdefault(self.frame.comp(self.lead[j]), []).append(j)
            self.by_comp = comp_map
            k = self.lead[i]
            vec = dict(self.elems[i])
            c = vec.pop(k)
            tail = self.reduce(vec)
            self.by_comp = saved
            tail[k] = c
            out.append(tail)
        return [self._monic(v) for v in out]


def groebner(frame: Frame, vectors: Iterable[dict[int, int]]) -> list[dict[int, int]]:
    system = GroebnerSystem(frame)
    system.run(vectors)
    return system.basis()


def normal_form(frame: Frame, basis: Sequence[dict[int, int]], vec: dict[int, int]) -> dict[int, int]:
    system = GroebnerSystem(frame)
    for b in basis:
        system.elems.append(b)
        system.lead.append(max(b))
        system.active.append(True)
        system.by_comp.setdefault(frame.comp(max(b)), []).append(len(system.elems) - 1)
    return system.reduce(dict(vec))


def leading_monomials(frame: Frame, basis: Sequence[dict[int, int]]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {c: [] for c in range(frame.rank)}
    for b in basis:
        k = max(b)
        out[frame.comp(k)].append(frame.mono(k))
    return out


def syzygy_vectors(
    ring: Ring,
    target_twists: Sequence[int],
    columns: Sequence[dict[int, Polynomial]],
    source_twists: Sequence[int],
) -> list[dict[int, Polynomial]]:
    """Generators of the syzygies of ``columns`` (a GB of the syzygy module).

    Each column j is tagged with the unit vector ``e_j`` in a lower block;
    basis elements whose leading term lies in the tag block are syzygies.
    """
    r = len(target_twists)
    c = len(columns)
    frame = Frame(ring, list(target_twists) + list(source_twists), [1] * r + [0] * c)
    vecs = []
    for j, col in enumerate(columns):
        v = frame.vector(col)
        v[frame.key(r + j, 0)] = 1
        vecs.append(v)
    basis = groebner(frame, vecs)
    out = []
    for b in basis:
        if frame.comp(max(b)) >= r:
            col = frame.column(b)
            out.append({comp - r: f for comp, f in col.items()})
    return out
