"""Session files: a ring, named ideals, named links and optional check directives.

Grammar, one statement per line, ``#`` starts a comment::

    ring <p> <n>
    ideal <name> = <poly>, <poly>, ...
    link <name> : <ideal> in <ideal>
    check <command> <arg> ...
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from .groebner import Ideal
from .ring import ParseError, Ring, RingError

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RING = re.compile(r"^ring\s+(\d+)\s+(\d+)$")
_IDEAL = re.compile(rf"^ideal\s+({_NAME})\s*=\s*(.*)$")
_LINK = re.compile(rf"^link\s+({_NAME})\s*:\s*({_NAME})\s+in\s+({_NAME})$")
_CHECK = re.compile(r"^check\s+(\S+)((?:\s+\S+)*)$")


class SessionError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class LinkDecl:
    name: str
    ideal: str
    gorenstein: str


@dataclass
class SessionFile:
    ring: Ring
    ideals: dict[str, Ideal]
    links: dict[str, LinkDecl]
    directives: list[tuple[str, ...]] = field(default_factory=list)
    digest: str = ""
    source: str = ""

    def ideal(self, name: str) -> Ideal:
        if name not in self.ideals:
            raise KeyError(f"undefined ideal {name!r}")
        return self.ideals[name]


def _split_polys(text: str, start: int) -> list[tuple[str, int]]:
    out = []
    pos = start
    for piece in text.split(","):
        lead = len(piece) - len(piece.lstrip())
        out.append((piece.strip(), pos + lead))
        pos += len(piece) + 1
    return out


def parse_session_text(text: str, source: str = "<string>") -> SessionFile:
    ring: Ring | None = None
    ideals: dict[str, Ideal] = {}
    links: dict[str, LinkDecl] = {}
    directives: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        indent = len(body) - len(body.lstrip())
        line = body.strip()
        if not line:
            continue
        if m := _RING.match(line):
            if ring is not None:
                raise SessionError("ring declared twice", lineno, indent + 1)
            try:
                n = int(m.group(2))
                ring = Ring(int(m.group(1)), n, tuple(f"x{i}" for i in range(n)))
            except RingError as exc:
                raise SessionError(str(exc), lineno, indent + 1) from None
        elif m := _IDEAL.match(line):
            if ring is None:
                raise SessionError("ideal before ring declaration", lineno, indent + 1)
            name = m.group(1)
            if name in ideals:
                raise SessionError(f"duplicate ideal name {name!r}", lineno, indent + m.start(1) + 1)
            gens = []
            for piece, col in _split_polys(m.group(2), m.start(2)):
                if not piece:
                    raise SessionError("empty polynomial", lineno, indent + col + 1)
                try:
                    gens.append(ring.parse(piece))
                except ParseError as exc:
                    raise SessionError(str(exc), lineno, indent + col + exc.pos + 1) from None
            try:
                ideals[name] = Ideal(ring, tuple(gens))
            except ValueError as exc:
                raise SessionError(str(exc), lineno, indent + 1) from None
        elif m := _LINK.match(line):
            name, ideal, gor = m.groups()
            if name in links or name in ideals:
                raise SessionError(f"duplicate name {name!r}", lineno, indent + m.start(1) + 1)
            for ref, g in ((ideal, 2), (gor, 3)):
                if ref not in ideals:
                    raise SessionError(f"undefined ideal {ref!r}", lineno, indent + m.start(g) + 1)
            links[name] = LinkDecl(name, ideal, gor)
        elif m := _CHECK.match(line):
            directives.append((m.group(1),) + tuple(m.group(2).split()))
        else:
            raise SessionError(f"cannot parse {line.split()[0]!r} statement", lineno, indent + 1)
    if ring is None:
        raise SessionError("missing ring declaration", 1)
    digest = hashlib.sha256(text.encode()).hexdigest()
    return SessionFile(ring, ideals, links, directives, digest, source)


def parse_session(path: str | Path) -> SessionFile:
    path = Path(path)
    return parse_session_text(path.read_text(), path.name)
