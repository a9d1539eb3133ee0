# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernel``.

Keep the floating-point expressions in the same order as the Python module:
the two backends must produce bit-identical samples for equal seeds.
"""
from libc.math cimport log, pow
from libc.stdint cimport int64_t, uint64_t
from cpython.bytes cimport PyBytes_FromStringAndSize

from .errors import AttemptLimitExceeded, BadRange, Exhausted

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil

BACKEND = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t FNV_OFFSET = 0xCBF29CE484222325ULL
cdef uint64_t FNV_PRIME = 0x100000001B3ULL
cdef double TWO_POW_M53 = 1.0 / 9007199254740992.0
DEF BUF_CAP = 65536


cdef inline uint64_t rng_next(uint64_t* st) noexcept nogil:
    cdef uint64_t s = st[0] + GOLDEN
    cdef uint64_t z
    st[0] = s
    z = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double rng_random(uint64_t* st) noexcept nogil:
    return <double>(rng_next(st) >> 11) * TWO_POW_M53


cdef inline uint64_t rng_below(uint64_t* st, uint64_t bound) noexcept nogil:
    cdef int shift
    cdef uint64_t x
    if bound <= 1:
        return 0
    shift = __builtin_clzll(bound - 1)
    while True:
        x = rng_next(st) >> shift
        if x < bound:
            return x


cdef int64_t hidden_count(uint64_t* st, int64_t N, int64_t k) noexcept nogil:
    cdef int64_t h, i
    cdef double low, r, jump, q, p
    if N == k:
        return 0
    h = k
    i = 0
    low = <double>(N - k)
    while i < k:
        r = low / <double>(N - i)
        if r >= 1.0:
            break
        jump = log(1.0 - rng_random(st)) / log(r)
        if jump >= <double>(k - i):
            break
        i += <int64_t>jump
        q = 1.0 - r
        p = 1.0 - low / <double>(N - i)
        if rng_random(st) < p / q:
            h -= 1
        i += 1
    return h


cdef struct sampler_t:
    int64_t N
    int64_t k
    int64_t h
    int64_t l
    double a
    int64_t prev
    int64_t w
    int64_t todo


cdef inline void sampler_init(sampler_t* sp, int64_t N, int64_t k, uint64_t* st) noexcept nogil:
    sp.N = N
    sp.k = k
    sp.todo = k
    sp.h = hidden_count(st, N, k) if k else 0
    sp.l = k - sp.h
    sp.a = 1.0
    sp.prev = N
    sp.w = k


cdef inline int64_t sampler_pop(sampler_t* sp, uint64_t* st) noexcept nogil:
    cdef int64_t s, L, w
    cdef double u, f
    sp.todo -= 1
    while sp.h > 0:
        sp.a = sp.a * pow(rng_random(st), 1.0 / <double>sp.h)
        sp.h -= 1
        s = <int64_t>(<double>sp.k + sp.a * <double>(sp.N - sp.k))
        if s < sp.prev:
            sp.prev = s
            return sp.N - s
        sp.l += 1
    u = rng_random(st)
    L = sp.l
    w = sp.w
    s = 0
    f = <double>L / <double>w
    while f < u and s < w - L:
        f = 1.0 - (1.0 - <double>L / <double>(w - s - 1)) * (1.0 - f)
        s += 1
    sp.l = L - 1
    sp.w = w - s - 1
    return sp.N - sp.w


cdef class Rng:
    """SplitMix64 generator. Equal seeds give equal streams."""

    cdef uint64_t state
    cdef readonly object seed

    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed <= 0xFFFFFFFFFFFFFFFF:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = seed
        self.state = <uint64_t>seed

    def next_u64(self):
        return rng_next(&self.state)

    def random(self):
        return rng_random(&self.state)

    def randbelow(self, bound):
        if bound < 1:
            raise ValueError("bound must be positive")
        if bound > 0x10000000000000000:
            raise ValueError("bound exceeds 2**64")
        if bound == 1:
            return 0
        if bound == 0x10000000000000000:
            return rng_next(&self.state)
        return rng_below(&self.state, <uint64_t>bound)

    def getstate(self):
        return self.state

    def setstate(self, state):
        self.state = <uint64_t>(int(state) & 0xFFFFFFFFFFFFFFFF)


cdef class SubsetSampler:
    """Uniform ``k``-subset of ``1..N`` produced in ascending order."""

    cdef sampler_t sp
    cdef Rng _rng
    cdef readonly int64_t N
    cdef readonly int64_t k

    def __init__(self, N, k, Rng rng):
        if k < 0 or N < 0 or k > N:
            raise BadRange(f"need 0 <= k <= N, got N={N}, k={k}")
        self.N = N
        self.k = k
        self._rng = rng
        sampler_init(&self.sp, N, k, &rng.state)

    def empty(self):
        return self.sp.todo == 0

    def pop(self):
        if self.sp.todo == 0:
            raise Exhausted("sampler exhausted")
        return sampler_pop(&self.sp, &self._rng.state)

    @property
    def remaining(self):
        return self.sp.todo

    def __iter__(self):
        return self

    def __next__(self):
        if self.sp.todo == 0:
            raise StopIteration
        return sampler_pop(&self.sp, &self._rng.state)


def py_hidden_count(Rng rng, int64_t N, int64_t k):
    return hidden_count(&rng.state, N, k)


cdef inline int put_uint(char* buf, int pos, int64_t x) noexcept nogil:
    cdef char tmp[24]
    cdef int k = 0
    if x == 0:
        buf[pos] = 48
        return pos + 1
    while x > 0:
        tmp[k] = <char>(48 + x % 10)
        x //= 10
        k += 1
    while k > 0:
        k -= 1
        buf[pos] = tmp[k]
        pos += 1
    return pos


def run_stream(int64_t n, int64_t m, int64_t sigma, Rng rng, max_attempts,
               write=None, emit=None, restart=None):
    """Compiled version of ``_pykernel.run_stream``; same contract."""
    cdef uint64_t* st = &rng.state
    cdef sampler_t s_o, s_i
    cdef int64_t sentinel = m - sigma + 1
    cdef int64_t attempts = 0, limit = max_attempts
    cdef int64_t i, v, ip, j, prev_j, t, u
    cdef uint64_t h
    cdef bint rejected
    cdef int mode = 1 if write is not None else (2 if emit is not None else 0)
    cdef char buf[BUF_CAP]
    cdef int blen = 0
    while True:
        if attempts >= limit:
            raise AttemptLimitExceeded(
                f"no acceptance after {attempts} attempts (n={n}, m={m}, sigma={sigma})"
            )
        attempts += 1
        sampler_init(&s_o, n * sigma, m, st)
        sampler_init(&s_i, m - sigma, n - sigma - 1, st)
        i = 1
        v = 1
        ip = sampler_pop(&s_i, st) if s_i.todo else sentinel
        j = 0
        prev_j = 0
        h = FNV_OFFSET
        blen = 0
        rejected = False
        while s_o.todo:
            t = sampler_pop(&s_o, st) - 1
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
                    ip = sampler_pop(&s_i, st) if s_i.todo else sentinel
                i += 1
            h = (h ^ <uint64_t>u) * FNV_PRIME
            h = (h ^ <uint64_t>j) * FNV_PRIME
            h = (h ^ <uint64_t>v) * FNV_PRIME
            if mode == 1:
                if blen > BUF_CAP - 64:
                    write(PyBytes_FromStringAndSize(buf, blen))
                    blen = 0
                blen = put_uint(buf, blen, u)
                buf[blen] = 9
                blen = put_uint(buf, blen + 1, j)
                buf[blen] = 9
                blen = put_uint(buf, blen + 1, v)
                buf[blen] = 10
                blen += 1
            elif mode == 2:
                emit(u, j, v)
        if not rejected and j == sigma:
            if mode == 1 and blen:
                write(PyBytes_FromStringAndSize(buf, blen))
            return attempts, h
        if restart is not None:
            restart()
