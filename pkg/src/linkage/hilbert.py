"""Hilbert series as rational functions and their degreewise values.

Laurent polynomials are dicts ``exponent -> integer coefficient``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

EMPTY_DIM = -1  # dimension reported for the zero module / empty scheme


def lp_add(a: dict[int, int], b: dict[int, int], scale: int = 1) -> dict[int, int]:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def lp_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def lp_shift(a: dict[int, int], s: int) -> dict[int, int]:
    return {e + s: c for e, c in a.items()}


def lp_eval1(a: dict[int, int]) -> int:
    return sum(a.values())


def lp_divide_one_minus_t(a: dict[int, int]) -> dict[int, int]:
    """Exact quotient ``a / (1 - t)``; caller guarantees ``a(1) == 0``."""
    out: dict[int, int] = {}
    if not a:
        return out
    lo, hi = min(a), max(a)
    acc = 0
    for e in range(lo, hi):
        acc += a.get(e, 0)
        if acc:
            out[e] = acc
    return out


def monomial_ideal_numerator(gens: Iterable[Sequence[int]], n: int) -> dict[int, int]:
    """Numerator ``N`` with ``HS(A/I) = N(t) / (1-t)^n`` for a monomial ideal.

    Recursive pivoting on the variable that occurs in the most generators:
    ``N(I) = N(I + x_v) + t * N(I : x_v)``.
    """
    return _numerator(_minimalize([tuple(g) for g in gens]), n)


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _numerator(gens: list[tuple[int, ...]], n: int) -> dict[int, int]:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    support_count = [0] * n
    disjoint = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                support_count[i] += 1
                if support_count[i] > 1:
                    disjoint = False
    if disjoint:
        out = {0: 1}
        for g in gens:
            out = lp_mul(out, {0: 1, sum(g): -1})
        return out
    v = max(range(n), key=lambda i: (support_count[i], -i))
    unit = tuple(1 if i == v else 0 for i in range(n))
    plus = [g for g in gens if g[v] == 0] + [unit]
    colon = _minimalize([g[:v] + (max(g[v] - 1, 0),) + g[v + 1:] for g in gens])
    return lp_add(_numerator(plus, n), lp_shift(_numerator(colon, n), 1))


@dataclass(frozen=True)
class HilbertFunction:
    """``mu -> c(sign * mu + offset)`` where ``sum c(x) t^x = numerator / (1-t)^poles``.

    ``sign = -1`` represents graded duals (reflection), ``offset`` twists.
    The series is kept in lowest terms so ``poles`` is the Krull dimension.
    """

    numerator: tuple[tuple[int, int], ...]
    poles: int
    sign: int = 1
    offset: int = 0
    _num: dict = field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def from_series(cls, numerator: dict[int, int], poles: int) -> "HilbertFunction":
        num = {e: c for e, c in numerator.items() if c}
        while poles > 0 and num and lp_eval1(num) == 0:
            num = lp_divide_one_minus_t(num)
            poles -= 1
        if not num:
            poles = 0
        return cls(tuple(sorted(num.items())), poles)

    @classmethod
    def zero(cls) -> "HilbertFunction":
        return cls((), 0)

    @classmethod
    def finite(cls, values: dict[int, int]) -> "HilbertFunction":
        return cls.from_series(values, 0)

    @property
    def num(self) -> dict[int, int]:
        if self._num is None:
            object.__setattr__(self, "_num", dict(self.numerator))
        return self._num

    # -- invariants ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.numerator

    @property
    def dimension(self) -> int:
        return EMPTY_DIM if self.is_zero() else self.poles

    @property
    def multiplicity(self) -> int:
        return lp_eval1(self.num)

    def coefficient(self, x: int) -> int:
        k = self.poles
        if k == 0:
            return self.num.get(x, 0)
        total = 0
        for e, c in self.numerator:
            if e > x:
                break
            total += c * comb(x - e + k - 1, k - 1)
        return total

    def __call__(self, mu: int) -> int:
        return self.coefficient(self.sign * mu + self.offset)

    value = __call__

    def values(self, lo: int, hi: int) -> list[int]:
        return [self(mu) for mu in range(lo, hi + 1)]

    # -- transformations ---------------------------------------------------------
    def shift(self, s: int) -> "HilbertFunction":
        """Hilbert function of ``M[s]``: ``mu -> HF(M, mu + s)``."""
        return HilbertFunction(self.numerator, self.poles, self.sign, self.offset + self.sign * s)

    def dual(self) -> "HilbertFunction":
        """Hilbert function of the graded dual: ``mu -> HF(M, -mu)``."""
        return HilbertFunction(self.numerator, self.poles, -self.sign, self.offset)

    def series(self) -> tuple[dict[int, int], int]:
        """Numerator/pole order in ``t``; only for unreflected functions."""
        if self.sign != 1:
            raise ValueError("reflected Hilbert function has no series in t")
        return lp_shift(self.num, -self.offset), self.poles

    def irregular_range(self) -> tuple[int, int] | None:
        """Degrees outside of which the function is given by a polynomial.

        Returns None when the function is zero everywhere.
        """
        if self.is_zero():
            return None
        lo_x = self.numerator[0][0]
        hi_x = self.numerator[-1][0] - (self.poles if self.poles else 0)
        hi_x = max(hi_x, lo_x)
        a = self.sign * (lo_x - self.offset)
        b = self.sign * (hi_x - self.offset)
        return (min(a, b), max(a, b))

    def components(self) -> list["HilbertFunction"]:
        return [self]

    def __add__(self, other):
        return HFSum(((1, self),)) + other

    def __sub__(self, other):
        return HFSum(((1, self),)) - other

    def __neg__(self):
        return HFSum(((-1, self),))

    def __str__(self) -> str:
        num = " + ".join(f"{c}*t^{e}" for e, c in self.numerator) or "0"
        body = f"({num})/(1-t)^{self.poles}"
        if self.sign == -1:
            body = f"reflect[{body}]"
        if self.offset:
            body += f" offset {self.offset}"
        return body


@dataclass(frozen=True)
class HFSum:
    """Integer linear combination of Hilbert functions, evaluated degreewise."""

    terms: tuple[tuple[int, HilbertFunction], ...]

    @staticmethod
    def _terms(x) -> tuple[tuple[int, HilbertFunction], ...]:
        if isinstance(x, HFSum):
            return x.terms
        if isinstance(x, HilbertFunction):
            return ((1, x),)
        raise TypeError(f"cannot combine with {type(x).__name__}")

    def __add__(self, other) -> "HFSum":
        return HFSum(self.terms + self._terms(other))

    __radd__ = __add__

    def __sub__(self, other) -> "HFSum":
        return HFSum(self.terms + tuple((-c, h) for c, h in self._terms(other)))

    def __neg__(self) -> "HFSum":
        return HFSum(tuple((-c, h) for c, h in self.terms))

    def __call__(self, mu: int) -> int:
        return sum(c * h(mu) for c, h in self.terms)

    value = __call__

    def values(self, lo: int, hi: int) -> list[int]:
        return [self(mu) for mu in range(lo, hi + 1)]

    def shift(self, s: int) -> "HFSum":
        return HFSum(tuple((c, h.shift(s)) for c, h in self.terms))

    def dual(self) -> "HFSum":
        return HFSum(tuple((c, h.dual()) for c, h in self.terms))

    def components(self) -> list[HilbertFunction]:
        return [h for _, h in self.terms]


DEFAULT_WINDOW = (-12, 12)


def exact_window(hfs: Iterable, base: tuple[int, int] = DEFAULT_WINDOW) -> tuple[int, int]:
    """Window on which degreewise agreement of a signed sum proves it everywhere.

    Outside the union of irregular ranges every term is a polynomial of degree
    below ``max poles``; checking ``max poles + 1`` extra degrees on each side
    pins the difference polynomial to zero.
    """
    lo, hi = base
    k = 0
    flat = [h for x in hfs for h in x.components()]
    for hf in flat:
        r = hf.irregular_range()
        if r is None:
            continue
        k = max(k, hf.poles)
        lo = min(lo, r[0])
        hi = max(hi, r[1])
    return lo - (k + 1), hi + (k + 1)
