"""Sequential sampling without replacement.

:class:`SubsetSampler` yields a uniform ``k``-subset of ``1..N`` in strictly
ascending order with O(1) working state, using the hidden shuffle: values
below ``N - k`` come from a descending run of uniform order statistics,
the rest from sequential inversion over the top window. The class comes from whichever kernel
``_backend`` selected, as does :class:`Rng`.

Consumers (the codec and streaming samplers) only ever call ``pop()`` and
``empty()``, so a :class:`ScriptedSampler` can stand in for a random one.
"""
from __future__ import annotations

import secrets
from typing import Callable, Iterable

from ._backend import kernel
from .errors import BadRange, Exhausted

Rng = kernel.Rng
SubsetSampler = kernel.SubsetSampler

SamplerFactory = Callable[[int, int], object]

__all__ = [
    "Rng",
    "SubsetSampler",
    "ScriptedSampler",
    "make_rng",
    "fresh_seed",
    "init_sequential_shuffler",
    "pop",
    "empty",
    "rng_factory",
    "scripted_factory",
    "as_factory",
    "reference_subset_sampler",
]


def fresh_seed() -> int:
    return secrets.randbits(64)


def make_rng(seed=None):
    """Return an :class:`Rng`; ``seed=None`` draws one from OS entropy.

    An existing generator is passed through unchanged.
    """
    if isinstance(seed, Rng):
        return seed
    return Rng(fresh_seed() if seed is None else seed)


def init_sequential_shuffler(N: int, k: int, rng) -> SubsetSampler:
    if N < 0 or k < 0 or k > N:
        raise BadRange(f"need 0 <= k <= N, got N={N}, k={k}")
    return SubsetSampler(N, k, rng)


def pop(s) -> int:
    return s.pop()


def empty(s) -> bool:
    return s.empty()


class ScriptedSampler:
    """Replays a fixed ascending sequence through the sampler interface."""

    def __init__(self, values: Iterable[int], N: int | None = None):
        self.values = list(values)
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise BadRange(f"script must be strictly ascending: {self.values}")
        if N is not None and self.values and not (1 <= self.values[0] and self.values[-1] <= N):
            raise BadRange(f"script {self.values} outside 1..{N}")
        self._next = 0

    def empty(self):
        return self._next == len(self.values)

    def pop(self):
        if self.empty():
            raise Exhausted("script exhausted")
        x = self.values[self._next]
        self._next += 1
        return x

    def __iter__(self):
        while not self.empty():
            yield self.pop()


def rng_factory(rng) -> SamplerFactory:
    """Factory drawing every sampler from one shared generator."""
    def make(N, k):
        return init_sequential_shuffler(N, k, rng)
    return make


def scripted_factory(*scripts) -> SamplerFactory:
    """Factory handing out the given scripts in call order.

    Each script's length must match the ``k`` it is requested with.
    """
    queue = [list(s) for s in scripts]

    def make(N, k):
        if not queue:
            raise Exhausted("no scripts left")
        values = queue.pop(0)
        if len(values) != k:
            raise BadRange(f"script {values} has length {len(values)}, expected k={k}")
        return ScriptedSampler(values, N)
    return make


def as_factory(source) -> SamplerFactory:
    """Accept a factory, an :class:`Rng`, a seed, or ``None``."""
    if callable(source) and not isinstance(source, Rng):
        return source
    return rng_factory(make_rng(source))


def reference_subset_sampler(N: int, k: int, rng) -> list[int]:
    """Exact O(N) selection sampling: keep ``i`` with probability
    ``still_needed / still_available`` decided by one integer draw."""
    if N < 0 or k < 0 or k > N:
        raise BadRange(f"need 0 <= k <= N, got N={N}, k={k}")
    out = []
    need = k
    for i in range(1, N + 1):
        if need == 0:
            break
        if rng.randbelow(N - i + 1) < need:
            out.append(i)
            need -= 1
    return out
