"""Ground truth for small instances.

Two independent enumerations of a family (through the bijection, and by
brute force filtered with :func:`~wdfa.core.check_wheeler`), a Pearson
chi-square uniformity check against the enumerated family, and
measurement of the streaming sampler's rejection rate.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable, Iterator

from .codec import InVector, OutMatrix, decode
from .core import Params, WheelerDfa, check_wheeler, validate_params
from .errors import PreconditionViolated, TooLarge, UnknownOutcome
from .shuffler import make_rng
from .stream import ListSink, NullSink, sample_stream

MAX_CELLS_VIA_R = 24
DIRECT_LIMITS = {"n": 4, "sigma": 2, "m": 6}
QUANTILE = 0.999

__all__ = [
    "ChiSquareReport",
    "iter_pairs",
    "iter_via_r",
    "enumerate_via_r",
    "iter_direct",
    "enumerate_direct",
    "chi2_quantile",
    "uniformity_test",
    "stream_generator",
    "basic_generator",
    "rejection_stats",
]


def iter_pairs(n: int, m: int, sigma: int) -> Iterator[tuple[OutMatrix, InVector]]:
    """Every (out-matrix, compatible in-vector) pair of the family."""
    validate_params(Params(n, m, sigma))
    if n * sigma > MAX_CELLS_VIA_R:
        raise TooLarge(f"n*sigma={n * sigma} exceeds {MAX_CELLS_VIA_R}")
    wild = m - sigma
    openings = n - sigma - 1
    for cells in itertools.combinations(range(1, n * sigma + 1), m):
        O = OutMatrix.from_positions(n, sigma, cells)
        if not O.is_valid():
            continue
        forced = set()
        acc = 0
        for c in O.column_norms():
            forced.add(acc)
            acc += c
        free = [k for k in range(m) if k not in forced]
        assert len(free) == wild
        for chosen in itertools.combinations(free, openings):
            bits = bytearray(m)
            for k in forced:
                bits[k] = 1
            for k in chosen:
                bits[k] = 1
            yield O, InVector(bytes(bits))


def iter_via_r(n: int, m: int, sigma: int) -> Iterator[WheelerDfa]:
    for O, I in iter_pairs(n, m, sigma):
        yield decode(O, I)


def enumerate_via_r(n: int, m: int, sigma: int) -> list[WheelerDfa]:
    """Every member of the family, by decoding every valid (O, I) pair."""
    return list(iter_via_r(n, m, sigma))


def iter_direct(n: int, m: int, sigma: int) -> Iterator[WheelerDfa]:
    if n > DIRECT_LIMITS["n"] or sigma > DIRECT_LIMITS["sigma"] or m > DIRECT_LIMITS["m"]:
        raise TooLarge(f"direct enumeration limited to n<=4, sigma<=2, m<=6 (got {n}, {m}, {sigma})")
    if n < 1 or sigma < 1 or m < 0:
        return
    pairs = [(u, j) for u in range(1, n + 1) for j in range(1, sigma + 1)]
    for chosen in itertools.combinations(pairs, m):
        for dests in itertools.product(range(1, n + 1), repeat=m):
            d = WheelerDfa(n, sigma, [(u, j, v) for (u, j), v in zip(chosen, dests)])
            if check_wheeler(d):
                yield d


def enumerate_direct(n: int, m: int, sigma: int) -> list[WheelerDfa]:
    """Every deterministic ``m``-edge automaton on ``[n] x [sigma]`` passing
    :func:`check_wheeler`; brute force, tiny parameters only."""
    return list(iter_direct(n, m, sigma))


def chi2_quantile(dof: int, p: float = QUANTILE) -> float:
    """Wilson-Hilferty approximation of the chi-square ``p``-quantile."""
    z = NormalDist().inv_cdf(p)
    c = 2.0 / (9.0 * dof)
    return dof * (1.0 - c + z * math.sqrt(c)) ** 3


@dataclass(frozen=True)
class ChiSquareReport:
    categories: int
    draws: int
    statistic: float
    dof: int
    threshold: float
    passed: bool

    @property
    def pass_(self):
        return self.passed

    def __str__(self):
        verdict = "pass" if self.passed else "FAIL"
        return (f"chi2={self.statistic:.2f} dof={self.dof} threshold={self.threshold:.2f} "
                f"categories={self.categories} draws={self.draws} -> {verdict}")


def uniformity_test(generator: Callable[[], WheelerDfa], p: Params, draws: int,
                    family: list[WheelerDfa] | None = None) -> ChiSquareReport:
    """Pearson chi-square of ``draws`` calls of ``generator`` against the
    uniform distribution on the enumerated family of ``p``.

    Raises :class:`UnknownOutcome` if a draw is not a family member.
    """
    family = enumerate_via_r(p.n, p.m, p.sigma) if family is None else family
    size = len(family)
    if draws < 100 * size:
        raise PreconditionViolated(f"need at least {100 * size} draws, got {draws}")
    index = {d.key(): k for k, d in enumerate(family)}
    counts = Counter()
    for _ in range(draws):
        d = generator()
        k = index.get(d.key())
        if k is None:
            raise UnknownOutcome(f"sampled automaton not in the family: {d.transitions}")
        counts[k] += 1
    expected = draws / size
    stat = sum((counts[k] - expected) ** 2 for k in range(size)) / expected
    dof = size - 1
    threshold = chi2_quantile(dof) if dof > 0 else 0.0
    return ChiSquareReport(size, draws, stat, dof, threshold, stat <= threshold)


def stream_generator(p: Params, seed=None) -> Callable[[], WheelerDfa]:
    """Zero-argument callable drawing automata with the streaming sampler."""
    rng = make_rng(seed)

    def draw():
        sink = ListSink()
        sample_stream(p, rng, sink)
        return sink.automaton(p.n, p.sigma)
    return draw


def basic_generator(p: Params, seed=None) -> Callable[[], WheelerDfa]:
    """Zero-argument callable drawing automata with the out-matrix /
    in-vector / decode pipeline."""
    from .codec import sample_D
    rng = make_rng(seed)
    return lambda: sample_D(p, rng)


def rejection_stats(p: Params, runs: int, rng=None) -> tuple[float, int]:
    """Mean and max number of attempts over ``runs`` streaming runs."""
    validate_params(p)
    rng = make_rng(rng)
    total = 0
    worst = 0
    sink = NullSink()
    for _ in range(runs):
        a = sample_stream(p, rng, sink).attempts
        total += a
        worst = max(worst, a)
    return total / runs, worst
