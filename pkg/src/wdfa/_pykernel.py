"""Pure-Python kernel: RNG, ascending subset sampler and the streaming loop.

``_ckernel.pyx`` is a line-for-line compiled twin of this module. Both
perform the same floating-point operations in the same order, so a given
seed yields identical output on either backend.
"""
import math

from .errors import AttemptLimitExceeded, BadRange, Exhausted

BACKEND = "python"

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
TWO_POW_M53 = 1.0 / 9007199254740992.0
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
TEXT_CHUNK = 4096


class Rng:
    """SplitMix64 generator. Equal seeds give equal streams."""

    __slots__ = ("seed", "_state")

    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = seed
        self._state = seed

    def next_u64(self):
        s = (self._state + GOLDEN) & MASK64
        self._state = s
        z = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self):
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * TWO_POW_M53

    def randbelow(self, bound):
        """Exactly uniform integer in [0, bound)."""
        if bound < 1:
            raise ValueError("bound must be positive")
        if bound > 1 << 64:
            raise ValueError("bound exceeds 2**64")
        if bound == 1:
            return 0
        shift = 64 - (bound - 1).bit_length()
        while True:
            x = self.next_u64() >> shift
            if x < bound:
                return x

    def getstate(self):
        return self._state

    def setstate(self, state):
        self._state = int(state) & MASK64


def hidden_count(rng, N, k):
    """Number of the ``k`` sampled values that fall below ``N - k``.

    Trial ``i`` (``i < k``) succeeds with probability ``(k - i) / (N - i)``;
    successes are visited by geometric jumps with thinning, so the cost is
    proportional to the number of candidate trials, not to ``k``.
    """
    if N == k:
        return 0
    h = k
    i = 0
    low = float(N - k)
    while i < k:
        r = low / float(N - i)
        if r >= 1.0:
            break
        jump = math.log(1.0 - rng.random()) / math.log(r)
        if jump >= k - i:
            break
        i += int(jump)
        q = 1.0 - r
        p = 1.0 - low / float(N - i)
        if rng.random() < p / q:
            h -= 1
        i += 1
    return h


class SubsetSampler:
    """Uniform ``k``-subset of ``1..N`` produced in ascending order.

    Hidden shuffle: the values below ``N - k`` are drawn first, from the
    largest uniform order statistic down, then the ones in the top window
    of width ``k`` by sequential inversion. State is a handful of numbers
    whatever ``N`` and ``k`` are.
    """

    __slots__ = ("N", "k", "_rng", "_h", "_l", "_a", "_prev", "_w", "_todo")

    def __init__(self, N, k, rng):
        if k < 0 or N < 0 or k > N:
            raise BadRange(f"need 0 <= k <= N, got N={N}, k={k}")
        self.N = N
        self.k = k
        self._rng = rng
        self._todo = k
        self._h = hidden_count(rng, N, k) if k else 0
        self._l = k - self._h
        self._a = 1.0
        self._prev = N
        self._w = k

    def empty(self):
        return self._todo == 0

    def pop(self):
        if self._todo == 0:
            raise Exhausted("sampler exhausted")
        self._todo -= 1
        N = self.N
        k = self.k
        while self._h > 0:
            self._a = self._a * self._rng.random() ** (1.0 / self._h)
            self._h -= 1
            s = int(float(k) + self._a * float(N - k))
            if s < self._prev:
                self._prev = s
                return N - s
            # collided with the previous value: it moves to the top window
            self._l += 1
        u = self._rng.random()
        L = self._l
        w = self._w
        s = 0
        f = float(L) / float(w)
        while f < u and s < w - L:
            f = 1.0 - (1.0 - float(L) / float(w - s - 1)) * (1.0 - f)
            s += 1
        self._l = L - 1
        self._w = w - s - 1
        return N - self._w

    @property
    def remaining(self):
        return self._todo

    def __iter__(self):
        return self

    def __next__(self):
        if self._todo == 0:
            raise StopIteration
        return self.pop()


py_hidden_count = hidden_count


def run_stream(n, m, sigma, rng, max_attempts, write=None, emit=None, restart=None):
    """Run the streaming sampler until an attempt is accepted.

    Exactly one output route is used: ``write(bytes)`` receives edge-list
    text in chunks, ``emit(u, j, v)`` receives single transitions, or, with
    neither, nothing is output and only the digest is kept. ``restart()`` is
    called after every rejected attempt. Returns ``(attempts, digest)``
    where ``digest`` is an FNV-1a style hash of the accepted edge sequence.
    """
    sentinel = m - sigma + 1
    attempts = 0
    while True:
        if attempts >= max_attempts:
            raise AttemptLimitExceeded(
                f"no acceptance after {attempts} attempts (n={n}, m={m}, sigma={sigma})"
            )
        attempts += 1
        s_o = SubsetSampler(n * sigma, m, rng)
        s_i = SubsetSampler(m - sigma, n - sigma - 1, rng)
        i = 1
        v = 1
        ip = s_i.pop() if s_i._todo else sentinel
        j = 0
        prev_j = 0
        h = FNV_OFFSET
        chunk = []
        rejected = False
        while s_o._todo:
            t = s_o.pop() - 1
            u = t % n + 1
            j = t // n + 1
            if j > prev_j + 1:
                rejected = True
                break
            if j == prev_j + 1:
                v += 1
                prev_j = j
            else:
                if i == ip:
                    v += 1
                    ip = s_i.pop() if s_i._todo else sentinel
                i += 1
            h = ((h ^ u) * FNV_PRIME) & MASK64
            h = ((h ^ j) * FNV_PRIME) & MASK64
            h = ((h ^ v) * FNV_PRIME) & MASK64
            if write is not None:
                chunk.append(f"{u}\t{j}\t{v}\n")
                if len(chunk) >= TEXT_CHUNK:
                    write("".join(chunk).encode())
                    chunk.clear()
            elif emit is not None:
                emit(u, j, v)
        if not rejected and j == sigma:
            if chunk:
                write("".join(chunk).encode())
            return attempts, h
        if restart is not None:
            restart()
