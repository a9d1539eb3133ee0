"""Domain types for Wheeler DFAs and the Wheeler-property validator.

States and labels are 1-based: states are ``1..n`` with ``1`` the source,
labels are ``1..sigma``. The Wheeler order is always the integer order
``1 < 2 < ... < n``; nothing here searches for another order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import EmptyFamily

__all__ = [
    "Params",
    "Transition",
    "WheelerDfa",
    "Verdict",
    "validate_params",
    "check_wheeler",
]


@dataclass(frozen=True)
class Params:
    n: int
    m: int
    sigma: int

    def validate(self) -> "Params":
        validate_params(self)
        return self


def validate_params(p: Params) -> None:
    """Raise :class:`EmptyFamily` unless the family for ``p`` is nonempty.

    The message names the first violated constraint, checked in the order
    ``n >= 2``, ``sigma >= 1``, ``sigma <= n-1``, ``m >= n-1``,
    ``m <= n*sigma``.
    """
    n, m, sigma = p.n, p.m, p.sigma
    for name, value in (("n", n), ("m", m), ("sigma", sigma)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise EmptyFamily(f"{name} must be an integer, got {value!r}")
    if n < 2:
        raise EmptyFamily(f"n >= 2 violated (n={n})")
    if sigma < 1:
        raise EmptyFamily(f"sigma >= 1 violated (sigma={sigma})")
    if sigma > n - 1:
        raise EmptyFamily(f"sigma <= n-1 violated (sigma={sigma}, n={n})")
    if m < n - 1:
        raise EmptyFamily(f"m >= n-1 violated (m={m}, n={n})")
    if m > n * sigma:
        raise EmptyFamily(f"m <= n*sigma violated (m={m}, n*sigma={n * sigma})")


class Transition(NamedTuple):
    source: int
    label: int
    dest: int

    def __str__(self):
        return f"(({self.source},{self.label}),{self.dest})"


def _canonical(transitions: Iterable) -> tuple:
    ts = [t if isinstance(t, Transition) else Transition(*t) for t in transitions]
    ts.sort(key=lambda t: (t.label, t.source, t.dest))
    return tuple(ts)


@dataclass(frozen=True)
class WheelerDfa:
    """An automaton on states ``1..n`` over labels ``1..sigma``.

    Transitions are stored in canonical order, ascending by
    ``(label, source)``, which is also the emission order of the streaming
    sampler. Construction does not check the Wheeler axioms; use
    :func:`check_wheeler` for that.
    """

    n: int
    sigma: int
    transitions: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "transitions", _canonical(self.transitions))

    @property
    def m(self) -> int:
        return len(self.transitions)

    def key(self) -> tuple:
        """Flat integer tuple identifying the automaton."""
        out = [self.n, self.sigma]
        for t in self.transitions:
            out.extend(t)
        return tuple(out)

    def delta(self) -> dict:
        return {(t.source, t.label): t.dest for t in self.transitions}

    def to_dot(self) -> str:
        lines = ["digraph wdfa {", "  rankdir=LR;"]
        lines.extend(f"  {v};" for v in range(1, self.n + 1))
        for t in self.transitions:
            lines.append(f'  {t.source} -> {t.dest} [label="{t.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`check_wheeler`.

    Truthy iff valid. For an invalid automaton ``axiom`` is one of
    ``determinism``, ``in-degree``, ``input-consistency``, ``axiom-i``,
    ``axiom-ii``, ``effective-alphabet``; ``witness`` holds the offending
    transitions or state.
    """

    valid: bool
    axiom: str | None = None
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "VALID" if self.valid else f"INVALID {self.axiom}: {self.reason}"


VALID = Verdict(True)


def _invalid(axiom, reason, *witness):
    return Verdict(False, axiom, reason, tuple(witness))


def check_wheeler(d: WheelerDfa) -> Verdict:
    """Check every WDFA invariant of ``d`` under the order ``1 < ... < n``.

    Runs in O(m log m): after sorting by (label, source), axiom (i) reduces
    to comparing the extreme destinations of consecutive label blocks and
    axiom (ii) to destinations being non-decreasing inside a block.
    """
    n, sigma = d.n, d.sigma
    ts = d.transitions
    for t in ts:
        if not (1 <= t.source <= n and 1 <= t.dest <= n and 1 <= t.label <= sigma):
            raise ValueError(f"transition {t} out of range for n={n}, sigma={sigma}")

    for a, b in zip(ts, ts[1:]):
        if a.label == b.label and a.source == b.source:
            return _invalid(
                "determinism",
                f"state {a.source} has two transitions labeled {a.label}",
                a, b,
            )

    indeg = [0] * (n + 1)
    in_label = [0] * (n + 1)
    in_edge = [None] * (n + 1)
    for t in ts:
        indeg[t.dest] += 1
    if indeg[1] != 0:
        return _invalid("in-degree", "source state 1 has incoming transitions", 1)
    for v in range(2, n + 1):
        if indeg[v] == 0:
            return _invalid("in-degree", f"state {v} has no incoming transition", v)

    for t in ts:
        seen = in_label[t.dest]
        if seen and seen != t.label:
            return _invalid(
                "input-consistency",
                f"state {t.dest} receives labels {seen} and {t.label}",
                in_edge[t.dest], t,
            )
        in_label[t.dest] = t.label
        in_edge[t.dest] = t

    # label blocks: (label, first index, last index) over the sorted list
    blocks = []
    start = 0
    for k in range(1, len(ts) + 1):
        if k == len(ts) or ts[k].label != ts[start].label:
            blocks.append((start, k))
            start = k

    for (s0, e0), (s1, e1) in zip(blocks, blocks[1:]):
        hi = max(ts[s0:e0], key=lambda t: t.dest)
        lo = min(ts[s1:e1], key=lambda t: t.dest)
        if hi.dest >= lo.dest:
            return _invalid(
                "axiom-i",
                f"labels {hi.label}<{lo.label} but destinations {hi.dest}>={lo.dest}",
                hi, lo,
            )

    for s, e in blocks:
        for a, b in zip(ts[s:e - 1], ts[s + 1:e]):
            if a.dest > b.dest:
                return _invalid(
                    "axiom-ii",
                    f"sources {a.source}<{b.source} on label {a.label} "
                    f"but destinations {a.dest}>{b.dest}",
                    a, b,
                )

    present = {ts[s].label for s, _ in blocks}
    for j in range(1, sigma + 1):
        if j not in present:
            return _invalid("effective-alphabet", f"label {j} labels no transition", j)
    return VALID
