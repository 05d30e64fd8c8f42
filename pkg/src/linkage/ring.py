"""Graded polynomial rings over prime fields.

Monomials are packed into a single Python int, one 16-bit digit per
variable (variable ``i`` in digit ``i``).  Exponents stay below ``2**15`` so
the top bit of each digit is free and divisibility is one subtraction.
The grevlex sort key of a monomial is ``(deg << 16n) - packed``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

BITS = 16
MAXEXP = 1 << (BITS - 1)
DEFAULT_CHARACTERISTIC = 32003


class RingError(ValueError):
    pass


class ParseError(ValueError):
    """Syntax error in polynomial text; ``pos`` is the 0-based column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Ring:
    """``k[x_0..x_{n-1}]`` with ``k = F_p``, standard grading, grevlex."""

    p: int = DEFAULT_CHARACTERISTIC
    n: int = 1
    names: tuple[str, ...] = ()
    _deg_cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not _is_prime(self.p) or self.p <= 2:
            raise RingError(f"characteristic must be an odd prime, got {self.p}")
        if self.n < 1:
            raise RingError("need at least one variable")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(self.n)))
        if len(self.names) != self.n or len(set(self.names)) != self.n:
            raise RingError("variable names must be n distinct strings")
        object.__setattr__(self, "_guard", sum(MAXEXP << (BITS * i) for i in range(self.n)))

    # -- packed monomials ---------------------------------------------------
    @property
    def guard(self) -> int:
        return self._guard

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise RingError("exponent vector has wrong length")
        m = 0
        for i, e in enumerate(exps):
            if not 0 <= e < MAXEXP:
                raise RingError(f"exponent {e} out of range")
            m |= e << (BITS * i)
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        mask = (1 << BITS) - 1
        return tuple((m >> (BITS * i)) & mask for i in range(self.n))

    def mdeg(self, m: int) -> int:
        d = self._deg_cache.get(m)
        if d is None:
            d = sum(self.unpack(m))
            self._deg_cache[m] = d
        return d

    def var(self, i: int) -> int:
        return 1 << (BITS * i)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((b | g) - a) & g) == g

    def mlcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.unpack(a), self.unpack(b)))

    def grevlex_key(self, m: int) -> int:
        return (self.mdeg(m) << (BITS * self.n)) - m

    def monomials(self, degree: int) -> list[int]:
        """All monomials of ``degree``, decreasing in grevlex."""
        if degree < 0:
            return []
        out: list[int] = []

        def rec(i: int, left: int, acc: int) -> None:
            if i == self.n - 1:
                out.append(acc | (left << (BITS * i)))
                return
            for e in range(left, -1, -1):
                rec(i + 1, left - e, acc | (e << (BITS * i)))

        rec(0, degree, 0)
        out.sort(key=self.grevlex_key, reverse=True)
        return out

    # -- convenience constructors ----------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def gen(self, i: int) -> "Polynomial":
        return Polynomial(self, {self.var(i): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {0: c % self.p})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {self.pack(exps): coeff % self.p})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __repr__(self) -> str:
        return f"Ring(p={self.p}, n={self.n})"


def monomial_compare(ring: Ring, a: Sequence[int], b: Sequence[int]) -> int:
    """Return 1, 0, -1 as ``a`` is greater, equal, smaller than ``b`` in grevlex."""
    ka, kb = ring.grevlex_key(ring.pack(a)), ring.grevlex_key(ring.pack(b))
    return (ka > kb) - (ka < kb)


class Polynomial:
    """Immutable polynomial; ``terms`` maps packed monomial -> coefficient in [1, p)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict[int, int]):
        p = ring.p
        self.ring = ring
        self.terms = {m: c % p for m, c in terms.items() if c % p}
        self._hash = None

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def sorted_terms(self) -> list[tuple[int, int]]:
        key = self.ring.grevlex_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.grevlex_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.mdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.mdeg(m) for m in self.terms}
        return len(degs) <= 1

    def constant_value(self) -> int:
        return self.terms.get(0, 0)

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise RingError("ring mismatch")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ring.constant(other)
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict[int, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, coeff: int, mono: int) -> "Polynomial":
        return Polynomial(self.ring, {m + mono: v * coeff for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.p, self.ring.n, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: grevlex-decreasing terms, coefficients in (-p/2, p/2]."""
    if not f.terms:
        return "0"
    ring = f.ring
    half = ring.p // 2
    parts: list[str] = []
    for m, c in f.sorted_terms():
        neg = c > half
        a = ring.p - c if neg else c
        factors = []
        for name, e in zip(ring.names, ring.unpack(m)):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(a)] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        if mt.group(1) is not None:
            toks.append(("int", mt.group(1), mt.start(1)))
        elif mt.group(2) is not None:
            toks.append(("name", mt.group(2), mt.start(2)))
        elif mt.group(3) is not None:
            ch = mt.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", mt.start(3))
            toks.append(("op", ch, mt.start(3)))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` (integers, variable names, ``+ - * ^`` and parentheses)."""
    toks = _tokenize(text)
    index = {name: i for i, name in enumerate(ring.names)}
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    def expr() -> Polynomial:
        kind, val, at = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term().scale(sign)
        while True:
            kind, val, at = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term() -> Polynomial:
        acc = factor()
        while True:
            kind, val, at = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * factor()
            else:
                return acc

    def factor() -> Polynomial:
        b = base()
        kind, val, at = peek()
        if kind == "op" and val == "^":
            take()
            kind, val, at = take()
            if kind != "int":
                raise ParseError("expected integer exponent", at)
            return b ** int(val)
        return b

    def base() -> Polynomial:
        kind, val, at = take()
        if kind == "int":
            return ring.constant(int(val))
        if kind == "name":
            if val not in index:
                raise ParseError(f"unknown variable {val!r}", at)
            return ring.gen(index[val])
        if kind == "op" and val == "(":
            inner = expr()
            kind, val2, at2 = take()
            if not (kind == "op" and val2 == ")"):
                raise ParseError("expected ')'", at2)
            return inner
        if kind == "op" and val == "-":
            return -base()
        if kind == "end":
            raise ParseError("unexpected end of input", at)
        raise ParseError(f"unexpected token {val!r}", at)

    result = expr()
    kind, val, at = peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", at)
    return result


def polys(ring: Ring, texts: Iterable[str]) -> list[Polynomial]:
    return [parse_polynomial(t, ring) for t in texts]
