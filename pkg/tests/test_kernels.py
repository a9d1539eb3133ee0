"""Compiled and pure-Python kernels must agree bit for bit, and the
streaming loop must agree with the out-matrix / in-vector / decode path."""
import io
import itertools

import pytest

from wdfa import _backend, _pykernel
from wdfa.census import count_wdfa
from wdfa.codec import OutMatrix, sample_D
from wdfa.core import Params
from wdfa.shuffler import ScriptedSampler, scripted_factory
from wdfa.stream import ListSink, NullSink, TextSink, run_attempt, sample_stream

BACKENDS = _backend.available()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")


def test_available_lists_python():
    assert "python" in BACKENDS
    assert _backend.get("python") is _pykernel
    with pytest.raises(ValueError):
        _backend.get("fortran")


@needs_both
def test_rng_streams_identical():
    c = _backend.get("cython")
    for seed in (0, 1, 2 ** 63, 2 ** 64 - 1):
        a, b = _pykernel.Rng(seed), c.Rng(seed)
        assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]
        assert [a.random() for _ in range(100)] == [b.random() for _ in range(100)]
        for bound in (1, 3, 1000, 2 ** 40 + 7, 2 ** 64):
            assert a.randbelow(bound) == b.randbelow(bound)


@needs_both
@pytest.mark.parametrize("N,k", [(10, 6), (1000, 3), (10 ** 6, 50), (2 ** 40, 20), (100, 99), (13, 1)])
def test_samplers_identical(N, k):
    c = _backend.get("cython")
    for seed in range(20):
        assert list(_pykernel.SubsetSampler(N, k, _pykernel.Rng(seed))) == \
            list(c.SubsetSampler(N, k, c.Rng(seed)))


@needs_both
@pytest.mark.parametrize("p", [Params(5, 6, 2), Params(9, 10, 5), Params(32, 61, 16),
                               Params(2000, 16000, 128), Params(40, 39, 3)])
def test_streams_identical(p):
    c = _backend.get("cython")
    for seed in range(25):
        a = sample_stream(p, seed, NullSink(), kernel=_pykernel)
        b = sample_stream(p, seed, NullSink(), kernel=c)
        assert (a.attempts, a.digest) == (b.attempts, b.digest)


@needs_both
def test_text_identical():
    c = _backend.get("cython")
    p = Params(700, 5000, 30)
    outs = []
    for k in (_pykernel, c):
        buf = io.BytesIO()
        sample_stream(p, 17, TextSink(buf, "framed"), kernel=k)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("name", BACKENDS)
def test_kernel_matches_generic_loop(name):
    k = _backend.get(name)
    for p in [Params(5, 6, 2), Params(9, 10, 5), Params(60, 400, 9)]:
        for seed in range(30):
            a, b = ListSink(), ListSink()
            sa = sample_stream(p, seed, a, kernel=k)
            rng = k.Rng(seed)
            sb = sample_stream(p, sink=b, samplers=lambda N, kk: k.SubsetSampler(N, kk, rng))
            assert a.transitions == b.transitions
            assert sa.attempts == sb.attempts


def _all_params(max_n=4, max_sigma=2, max_m=6):
    for n in range(2, max_n + 1):
        for sigma in range(1, min(max_sigma, n - 1) + 1):
            for m in range(n - 1, min(max_m, n * sigma) + 1):
                yield Params(n, m, sigma)


def test_stream_equals_decode_all_scripts():
    checked = expected = 0
    for p in _all_params():
        expected += count_wdfa(p.n, p.m, p.sigma)
        n, m, sigma = p.n, p.m, p.sigma
        for so in itertools.combinations(range(1, n * sigma + 1), m):
            O = OutMatrix.from_positions(n, sigma, so)
            for si in itertools.combinations(range(1, m - sigma + 1), n - sigma - 1):
                out = []
                ok = run_attempt(p, ScriptedSampler(so), ScriptedSampler(si), out.append)
                assert ok == O.is_valid()
                if not ok:
                    continue
                d = sample_D(p, scripted_factory(so, si))
                assert tuple(out) == d.transitions
                assert out[-1].dest == n
                checked += 1
    # every accepted script pair is a distinct family member
    assert checked == expected


@pytest.mark.parametrize("name", BACKENDS)
def test_run_stream_rejects_bad_limit(name):
    k = _backend.get(name)
    with pytest.raises(Exception):
        k.run_stream(5, 6, 2, k.Rng(0), 0)
