"""The explicit (out-matrix, in-vector) representation of a WDFA.

``OutMatrix`` holds bit ``O[u][j]`` (state ``u`` has an out-transition
labeled ``j``) as a flat column-major byte string, so the column-major rank
of a cell is a single prefix count. ``InVector`` has one set bit per
non-source state followed by ``indegree - 1`` zeros, in state order.

Everything here materialises ``n * sigma`` bits; the streaming sampler in
:mod:`wdfa.stream` is the constant-space route.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Params, Transition, WheelerDfa, check_wheeler, validate_params
from .errors import BadInput, BadPair, LengthMismatch, NotWheeler, OutOfRange, TooLarge
from .shuffler import as_factory

MAX_CELLS = 1 << 32
WILDCARD = "#"

__all__ = [
    "OutMatrix",
    "InVector",
    "rank_vec",
    "rank_mat",
    "fill",
    "sample_O",
    "sample_I",
    "sample_D",
    "encode",
    "decode",
]


def _bits(x) -> bytes:
    if isinstance(x, str):
        if set(x) - {"0", "1"}:
            raise ValueError(f"not a bit string: {x!r}")
        return bytes(c == "1" for c in x)
    if isinstance(x, (InVector,)):
        return x.bits
    b = bytes(x)
    if b.translate(None, b"\x00\x01"):
        raise ValueError("bit sequence may only contain 0 and 1")
    return b


def bitstring(bits) -> str:
    return "".join("1" if b else "0" for b in _bits(bits))


@dataclass(frozen=True)
class OutMatrix:
    n: int
    sigma: int
    bits: bytes  # column-major: cell (u, j) lives at (j-1)*n + (u-1)

    def __post_init__(self):
        object.__setattr__(self, "bits", _bits(self.bits))
        if len(self.bits) != self.n * self.sigma:
            raise LengthMismatch(f"{len(self.bits)} bits for a {self.n}x{self.sigma} matrix")

    @classmethod
    def from_rows(cls, rows) -> "OutMatrix":
        rows = [list(r) for r in rows]
        n, sigma = len(rows), len(rows[0])
        return cls(n, sigma, bytes(rows[u][j] for j in range(sigma) for u in range(n)))

    @classmethod
    def from_positions(cls, n, sigma, positions) -> "OutMatrix":
        """Set the cells at 1-based column-major ``positions``."""
        if n * sigma > MAX_CELLS:
            raise TooLarge(f"n*sigma={n * sigma} exceeds {MAX_CELLS} explicit bits")
        buf = bytearray(n * sigma)
        for t in positions:
            buf[t - 1] = 1
        return cls(n, sigma, bytes(buf))

    def __getitem__(self, cell) -> int:
        u, j = cell
        if not (1 <= u <= self.n and 1 <= j <= self.sigma):
            raise OutOfRange(f"cell {cell} outside {self.n}x{self.sigma}")
        return self.bits[(j - 1) * self.n + (u - 1)]

    @property
    def m(self) -> int:
        return self.bits.count(1)

    def column(self, j) -> bytes:
        return self.bits[(j - 1) * self.n: j * self.n]

    def column_norms(self) -> list[int]:
        return [self.column(j).count(1) for j in range(1, self.sigma + 1)]

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(self[u, j] for j in range(1, self.sigma + 1)) for u in range(1, self.n + 1)]

    def is_valid(self) -> bool:
        return all(self.column_norms())


@dataclass(frozen=True)
class InVector:
    bits: bytes

    def __post_init__(self):
        object.__setattr__(self, "bits", _bits(self.bits))

    def __len__(self):
        return len(self.bits)

    def __getitem__(self, i) -> int:
        """1-based access, matching the rank convention."""
        if not 1 <= i <= len(self.bits):
            raise OutOfRange(f"position {i} outside 1..{len(self.bits)}")
        return self.bits[i - 1]

    @property
    def norm(self) -> int:
        return self.bits.count(1)

    def __str__(self):
        return bitstring(self.bits)


def rank_vec(x, i: int) -> int:
    """Number of set bits among the first ``i`` positions of ``x``."""
    b = _bits(x)
    if not 0 <= i <= len(b):
        raise OutOfRange(f"rank position {i} outside 0..{len(b)}")
    return b[:i].count(1)


def rank_mat(A: OutMatrix, cell) -> int:
    """Column-major rank: set bits in columns ``< j`` plus rows ``1..i`` of
    column ``j``. Row ``0`` is allowed and counts nothing in column ``j``."""
    i, j = cell
    if not (0 <= i <= A.n and 1 <= j <= A.sigma):
        raise OutOfRange(f"cell {cell} outside {A.n}x{A.sigma}")
    return A.bits[: (j - 1) * A.n + i].count(1)


def fill(mask, bits) -> bytes:
    """Replace the wildcards of ``mask`` by ``bits`` in order.

    ``mask`` is a sequence over ``1`` and ``'#'`` (a string such as
    ``"1#1###"`` works).
    """
    b = _bits(bits)
    mask = list(mask)
    holes = sum(1 for c in mask if c == WILDCARD)
    if holes != len(b):
        raise LengthMismatch(f"mask has {holes} wildcards but {len(b)} bits were given")
    out = bytearray()
    k = 0
    for c in mask:
        if c == WILDCARD:
            out.append(b[k])
            k += 1
        elif c in (1, "1"):
            out.append(1)
        else:
            raise ValueError(f"mask symbol {c!r} is neither 1 nor {WILDCARD!r}")
    return bytes(out)


def _mask(norms) -> list:
    mask = []
    for c in norms:
        mask.append(1)
        mask.extend(WILDCARD * (c - 1))
    return mask


def sample_O(p: Params, samplers=None) -> OutMatrix:
    """Uniform out-matrix: a uniform ``m``-subset of the ``n*sigma`` cells,
    redrawn until no column is empty."""
    validate_params(p)
    factory = as_factory(samplers)
    n, m, sigma = p.n, p.m, p.sigma
    if n * sigma > MAX_CELLS:
        raise TooLarge(f"n*sigma={n * sigma} exceeds {MAX_CELLS}; use the streaming sampler")
    while True:
        O = OutMatrix.from_positions(n, sigma, list(_drain(factory(n * sigma, m))))
        if O.is_valid():
            return O


def sample_I(O: OutMatrix, samplers=None) -> InVector:
    """Uniform in-vector compatible with ``O``.

    The first transition of each label is forced to open a new state; the
    remaining ``n - sigma - 1`` state openings go to a uniform subset of the
    ``m - sigma`` other positions.
    """
    norms = O.column_norms()
    if not all(norms):
        raise BadInput(f"out-matrix has an empty column (column norms {norms})")
    factory = as_factory(samplers)
    n, m, sigma = O.n, sum(norms), O.sigma
    ones = set(_drain(factory(m - sigma, n - sigma - 1)))
    shuffled = bytes(r in ones for r in range(1, m - sigma + 1))
    return InVector(fill(_mask(norms), shuffled))


def _drain(s):
    while not s.empty():
        yield s.pop()


def encode(d: WheelerDfa) -> tuple[OutMatrix, InVector]:
    verdict = check_wheeler(d)
    if not verdict:
        raise NotWheeler(str(verdict))
    n, sigma = d.n, d.sigma
    O = OutMatrix.from_positions(n, sigma, [(t.label - 1) * n + t.source for t in d.transitions])
    indeg = [0] * (n + 1)
    for t in d.transitions:
        indeg[t.dest] += 1
    bits = bytearray()
    for v in range(2, n + 1):
        bits.append(1)
        bits.extend(bytes(indeg[v] - 1))
    return O, InVector(bytes(bits))


def _forced_positions(norms):
    pos, acc = [], 0
    for c in norms:
        pos.append(acc + 1)
        acc += c
    return pos


def decode(O: OutMatrix, I: InVector) -> WheelerDfa:
    """Rebuild the automaton: the ``i``-th set cell ``(u, j)`` of ``O`` in
    column-major order becomes the transition ``((u, j), rank(I, i) + 1)``."""
    I = I if isinstance(I, InVector) else InVector(I)
    n, sigma = O.n, O.sigma
    norms = O.column_norms()
    m = sum(norms)
    if not all(norms):
        raise BadPair(f"out-matrix has an empty column (column norms {norms})")
    if len(I) != m:
        raise BadPair(f"in-vector length {len(I)} != number of set cells {m}")
    if I.norm != n - 1:
        raise BadPair(f"in-vector has {I.norm} set bits, expected n-1={n - 1}")
    for pos in _forced_positions(norms):
        if not I[pos]:
            raise BadPair(f"in-vector bit {pos} must be set (first transition of a label)")
    ts = []
    i = 0
    v = 1
    bits, ibits = O.bits, I.bits
    for j in range(1, sigma + 1):
        base = (j - 1) * n
        for u in range(1, n + 1):
            if bits[base + u - 1]:
                if ibits[i]:
                    v += 1
                ts.append(Transition(u, j, v))
                i += 1
    return WheelerDfa(n, sigma, ts)


def sample_D(p: Params, samplers=None) -> WheelerDfa:
    """Basic sampler: out-matrix, then in-vector, then decode."""
    factory = as_factory(samplers)
    O = sample_O(p, factory)
    return decode(O, sample_I(O, factory))
