import io

import pytest

from wdfa.core import Params, Transition, check_wheeler
from wdfa.edgelist import header_line, loads
from wdfa.errors import AttemptLimitExceeded, OutOfRange
from wdfa.shuffler import ScriptedSampler, scripted_factory
from wdfa.stream import (
    ListSink,
    NullSink,
    TextSink,
    default_max_attempts,
    map_t,
    restarts_possible,
    run_attempt,
    sample_stream,
)

from conftest import FIG1_EDGES, SCRIPT_I, SCRIPT_O, SEED_FIG1_STREAM


@pytest.mark.parametrize("t,n,want", [(2, 5, (2, 1)), (6, 5, (1, 2)), (1, 7, (1, 1)), (10, 5, (5, 2))])
def test_map_t(t, n, want):
    assert map_t(t, n) == want


@pytest.mark.parametrize("t", [0, 11])
def test_map_t_out_of_range(t):
    with pytest.raises(OutOfRange):
        map_t(t, 5, 2)


def test_running_example_injected():
    sink = ListSink()
    stats = sample_stream(Params(5, 6, 2), sink=sink, samplers=scripted_factory(SCRIPT_O, SCRIPT_I))
    assert [tuple(t) for t in sink.transitions] == FIG1_EDGES
    assert stats.attempts == 1 and stats.edges_emitted == 6
    assert sink.committed and sink.restarts == 0


def test_restart_then_accept():
    sink = ListSink()
    stats = sample_stream(Params(3, 2, 2), sink=sink,
                          samplers=scripted_factory([1, 2], [], [1, 4], []))
    assert stats.attempts == 2
    assert sink.restarts == 1
    assert sink.transitions == [Transition(1, 1, 2), Transition(1, 2, 3)]


def test_skipped_column_rejected():
    # cells 7..9 are column 3; column 2 was never visited
    emitted = []
    ok = run_attempt(Params(3, 2, 3), ScriptedSampler([1, 7]), ScriptedSampler([]), emitted.append)
    assert not ok and emitted == [Transition(1, 1, 2)]


def test_full_matrix_never_rejects():
    p = Params(6, 18, 3)
    assert not restarts_possible(p)
    for seed in range(20):
        sink = ListSink()
        stats = sample_stream(p, seed, sink)
        assert stats.attempts == 1 and len(sink.transitions) == 18


def test_sentinel_single_label():
    # n - sigma - 1 = 0 from the start: only column changes open states
    sink = ListSink()
    sample_stream(Params(4, 5, 3), 3, sink)
    d = sink.automaton(4, 3)
    assert check_wheeler(d)
    assert max(t.dest for t in d.transitions) == 4


def test_last_dest_is_n():
    for p in [Params(5, 6, 2), Params(30, 100, 7), Params(12, 11, 3)]:
        for seed in range(30):
            sink = ListSink()
            sample_stream(p, seed, sink)
            assert sink.transitions[-1].dest == p.n


def test_emission_strictly_increasing():
    sink = ListSink()
    sample_stream(Params(200, 1500, 12), 5, sink)
    keys = [(t.label, t.source) for t in sink.transitions]
    assert all(a < b for a, b in zip(keys, keys[1:]))


def test_seed_reproduces_fig1():
    sink = ListSink()
    stats = sample_stream(Params(5, 6, 2), SEED_FIG1_STREAM, sink)
    assert [tuple(t) for t in sink.transitions] == FIG1_EDGES
    assert stats.seed == SEED_FIG1_STREAM


def test_attempt_limit():
    f = scripted_factory([1, 2], [], [1, 2], [])
    with pytest.raises(AttemptLimitExceeded):
        sample_stream(Params(3, 2, 2), sink=ListSink(), samplers=f, max_attempts=2)


def test_attempt_limit_kernel():
    # sigma = m: each attempt accepts with probability 4**4 / C(16, 4)
    with pytest.raises(AttemptLimitExceeded, match="n=5"):
        for seed in range(200):
            sample_stream(Params(5, 4, 4), seed, NullSink(), max_attempts=1)


def test_default_max_attempts():
    assert default_max_attempts(61) == int(64 * 4.110873864173311 + 64)
    assert default_max_attempts(1) == 64


def _text(p, seed, mode):
    buf = io.BytesIO()
    sample_stream(p, seed, TextSink(buf, mode, header_line(p.n, p.m, p.sigma, seed)))
    return buf.getvalue().decode()


def test_text_sink_truncate_matches_list():
    p = Params(9, 10, 5)  # rejections are common here
    restarted = 0
    for seed in range(40):
        text = _text(p, seed, "truncate")
        sink = ListSink()
        stats = sample_stream(p, seed, sink)
        restarted += stats.attempts > 1
        ef = loads(text)
        assert list(ef.automaton.transitions) == sink.transitions
        assert text.count("\n") == p.m + 1
    assert restarted > 0


def test_text_sink_framed():
    p = Params(9, 10, 5)
    for seed in range(40):
        text = _text(p, seed, "framed")
        sink = ListSink()
        stats = sample_stream(p, seed, sink)
        assert text.endswith("# commit\n")
        assert text.count("# restart\n") == stats.attempts - 1
        assert list(loads(text).automaton.transitions) == sink.transitions


def test_text_sink_plain_refuses_restart():
    with pytest.raises(RuntimeError):
        TextSink(io.BytesIO(), "plain").restart()
    with pytest.raises(ValueError):
        TextSink(io.BytesIO(), "bogus")


def test_text_sink_large_chunks():
    # longer than one write chunk, with restarts
    p = Params(3000, 9000, 40)
    text = _text(p, 2, "truncate")
    ef = loads(text)
    assert ef.automaton.m == p.m and check_wheeler(ef.automaton)


def test_stats_digest_matches_between_sinks():
    p = Params(50, 300, 6)
    a = sample_stream(p, 9, NullSink())
    b = sample_stream(p, 9, ListSink())
    assert a.digest == b.digest and a.attempts == b.attempts


def test_restarts_possible():
    assert restarts_possible(Params(5, 6, 2))
    assert not restarts_possible(Params(5, 6, 1))
    assert not restarts_possible(Params(3, 6, 2))
