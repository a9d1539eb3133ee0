"""Constant-space streaming sampler.

Transitions of a uniform WDFA are produced in ascending ``(label, source)``
order straight into a :class:`Sink`. A run is a sequence of attempts; an
attempt is abandoned as soon as an empty column of the out-matrix is
detected (a skipped column, or the last column never reached), the sink is
told to ``restart()``, and fresh samplers are drawn from the same generator.

Runs driven by a generator go through the selected kernel (compiled or pure
Python). Runs driven by injected samplers, e.g. scripted ones, go through
:func:`run_attempt`, a direct Python rendering of the same loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import _backend
from .core import Params, Transition, WheelerDfa, validate_params
from .errors import AttemptLimitExceeded, OutOfRange
from .shuffler import as_factory, fresh_seed

__all__ = [
    "Sink",
    "NullSink",
    "ListSink",
    "TextSink",
    "StreamStats",
    "map_t",
    "default_max_attempts",
    "restarts_possible",
    "run_attempt",
    "sample_stream",
]


class Sink:
    """Receives transitions. ``restart`` discards the current attempt,
    ``commit`` finalises the accepted one."""

    def emit(self, t: Transition) -> None:
        raise NotImplementedError

    def restart(self) -> None:
        pass

    def commit(self) -> None:
        pass


class NullSink(Sink):
    def emit(self, t):
        pass


class ListSink(Sink):
    def __init__(self):
        self.transitions = []
        self.committed = False
        self.restarts = 0

    def emit(self, t):
        self.transitions.append(t)

    def restart(self):
        self.transitions.clear()
        self.restarts += 1

    def commit(self):
        self.committed = True

    def automaton(self, n, sigma) -> WheelerDfa:
        return WheelerDfa(n, sigma, self.transitions)


class TextSink(Sink):
    """Edge-list text on a binary file object.

    ``mode`` decides what a restart does:

    * ``"truncate"``: seek back to where the sink started writing and
      truncate (the file must be seekable);
    * ``"framed"``: never unwrite; write a ``# restart`` line after a
      rejected attempt and ``# commit`` after the accepted one;
    * ``"plain"``: restarts are not supported and raise, for outputs where
      the parameters rule rejection out.
    """

    RESTART = b"# restart\n"
    COMMIT = b"# commit\n"

    def __init__(self, fileobj, mode="truncate", header: bytes | str | None = None):
        if mode not in ("truncate", "framed", "plain"):
            raise ValueError(f"unknown mode {mode!r}")
        self.f = fileobj
        self.mode = mode
        if header:
            self.write_bytes(header.encode() if isinstance(header, str) else header)
        self.start = fileobj.tell() if mode == "truncate" else None

    def write_bytes(self, data: bytes) -> None:
        self.f.write(data)

    def emit(self, t):
        self.f.write(b"%d\t%d\t%d\n" % (t.source, t.label, t.dest))

    def restart(self):
        if self.mode == "framed":
            self.f.write(self.RESTART)
        elif self.mode == "truncate":
            self.f.seek(self.start)
            self.f.truncate()
        else:
            raise RuntimeError("this output cannot discard a rejected attempt")

    def commit(self):
        if self.mode == "framed":
            self.f.write(self.COMMIT)
        self.f.flush()


@dataclass
class StreamStats:
    attempts: int
    edges_emitted: int
    seed: int | None
    digest: int | None = None
    backend: str = ""


def map_t(t: int, n: int, sigma: int | None = None) -> tuple[int, int]:
    """Column-major cell ``(u, j)`` of the 1-based flat position ``t``."""
    if t < 1 or n < 1 or (sigma is not None and t > n * sigma):
        raise OutOfRange(f"position {t} outside 1..n*sigma")
    return (t - 1) % n + 1, (t - 1) // n + 1


def default_max_attempts(m: int) -> int:
    return int(64 * math.log(m) + 64) if m > 1 else 64


def restarts_possible(p: Params) -> bool:
    """False when every out-matrix draw is acceptable."""
    return p.sigma > 1 and p.m < p.n * p.sigma


def run_attempt(p: Params, s_o, s_i, emit) -> bool:
    """One attempt with the given samplers; True iff accepted.

    ``s_o`` yields the set cells of the out-matrix (positions in
    ``1..n*sigma``), ``s_i`` the wildcard ranks in ``1..m-sigma`` that open a
    new destination state.
    """
    n, m, sigma = p.n, p.m, p.sigma
    sentinel = m - sigma + 1  # stands in for a pop on the exhausted s_i

    def next_opening():
        return sentinel if s_i.empty() else s_i.pop()

    i = 1  # rank of the current wildcard
    v = 1  # current destination state
    ip = next_opening()
    j = prev_j = 0
    while not s_o.empty():
        u, j = map_t(s_o.pop(), n)
        if j > prev_j + 1:
            return False
        if j == prev_j + 1:
            v += 1
            prev_j = j
        else:
            if i == ip:
                v += 1
                ip = next_opening()
            i += 1
        emit(Transition(u, j, v))
    return j == sigma


def sample_stream(p: Params, rng=None, sink: Sink | None = None, *, samplers=None,
                  max_attempts: int | None = None, kernel=None) -> StreamStats:
    """Stream one uniform WDFA from the family ``p`` into ``sink``.

    ``rng`` may be an :class:`~wdfa.shuffler.Rng`, a seed or ``None`` (OS
    entropy). ``samplers`` overrides it with a factory ``(N, k) -> sampler``
    called twice per attempt, out-matrix sampler first.
    """
    validate_params(p)
    sink = NullSink() if sink is None else sink
    limit = default_max_attempts(p.m) if max_attempts is None else max_attempts

    if samplers is not None:
        factory = as_factory(samplers)
        n, m, sigma = p.n, p.m, p.sigma
        for attempt in range(1, limit + 1):
            s_o = factory(n * sigma, m)
            s_i = factory(m - sigma, n - sigma - 1)
            if run_attempt(p, s_o, s_i, sink.emit):
                sink.commit()
                return StreamStats(attempt, m, None, None, "injected")
            sink.restart()
        raise AttemptLimitExceeded(f"no acceptance after {limit} attempts")

    k = kernel or _backend.kernel
    if not isinstance(rng, k.Rng):
        rng = k.Rng(rng if rng is not None else fresh_seed())
    seed = rng.seed
    if isinstance(sink, NullSink):
        attempts, digest = k.run_stream(p.n, p.m, p.sigma, rng, limit)
    elif isinstance(sink, TextSink):
        attempts, digest = k.run_stream(p.n, p.m, p.sigma, rng, limit,
                                        write=sink.write_bytes, restart=sink.restart)
    else:
        emit = sink.emit
        attempts, digest = k.run_stream(
            p.n, p.m, p.sigma, rng, limit,
            emit=lambda u, j, v: emit(Transition(u, j, v)), restart=sink.restart,
        )
    sink.commit()
    return StreamStats(attempts, p.m, seed, digest, k.BACKEND)

