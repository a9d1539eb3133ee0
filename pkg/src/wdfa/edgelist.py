"""Edge-list text format.

::

    # wdfa n=<n> m=<m> sigma=<sigma> seed=<seed>
    <source>\\t<label>\\t<dest>
    ...

1-based decimal, one transition per line in ascending ``(label, source)``
order, UTF-8 with LF endings. A stream written with restart framing may
contain ``# restart`` lines (everything since the previous frame is void)
and ends with ``# commit``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .core import Transition, WheelerDfa
from .errors import ParseError

HEADER_RE = re.compile(r"# wdfa n=(\d+) m=(\d+) sigma=(\d+) seed=(\S+)")
RESTART = "# restart"
COMMIT = "# commit"


def header_line(n, m, sigma, seed) -> str:
    return f"# wdfa n={n} m={m} sigma={sigma} seed={seed}\n"


def format_edges(transitions) -> str:
    return "".join(f"{t.source}\t{t.label}\t{t.dest}\n" for t in transitions)


def dumps(d: WheelerDfa, seed="none") -> str:
    return header_line(d.n, d.m, d.sigma, seed) + format_edges(d.transitions)


@dataclass
class EdgeFile:
    n: int
    m: int
    sigma: int
    seed: str
    automaton: WheelerDfa
    framed: bool = False


def loads(text: str) -> EdgeFile:
    """Parse edge-list text. Truncation (fewer edges than the header's ``m``)
    and out-of-range fields raise :class:`ParseError` with a line number;
    surplus edges are kept so the validator can judge them."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty file", 1)
    hm = HEADER_RE.fullmatch(lines[0])
    if not hm:
        raise ParseError(f"bad header {lines[0]!r}", 1)
    n, m, sigma = (int(g) for g in hm.groups()[:3])
    seed = hm.group(4)

    edges = []
    framed = committed = False
    for lineno, line in enumerate(lines[1:], start=2):
        if committed:
            raise ParseError("content after '# commit'", lineno)
        if line == RESTART:
            framed = True
            edges.clear()
            continue
        if line == COMMIT:
            framed = committed = True
            continue
        parts = line.split("\t")
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected '<source>\\t<label>\\t<dest>', got {line!r}", lineno)
        u, j, v = (int(p) for p in parts)
        if not (1 <= u <= n and 1 <= v <= n and 1 <= j <= sigma):
            raise ParseError(f"transition ({u},{j},{v}) out of range for n={n}, sigma={sigma}", lineno)
        edges.append(Transition(u, j, v))
    if framed and not committed:
        raise ParseError("stream ends without '# commit'", len(lines) + 1)
    if len(edges) < m:
        raise ParseError(f"truncated: header says m={m}, found {len(edges)} edge lines", len(lines) + 1)
    return EdgeFile(n, m, sigma, seed, WheelerDfa(n, sigma, edges), framed)


def load(path) -> EdgeFile:
    if str(path) == "-":
        import sys
        return loads(sys.stdin.read())
    with open(path, encoding="utf-8", newline="") as f:
        return loads(f.read())
