import pytest

from wdfa.census import count_wdfa
from wdfa.codec import decode, encode
from wdfa.core import Params, WheelerDfa, check_wheeler
from wdfa.errors import PreconditionViolated, TooLarge, UnknownOutcome
from wdfa.oracle import (
    basic_generator,
    chi2_quantile,
    enumerate_direct,
    enumerate_via_r,
    rejection_stats,
    stream_generator,
    uniformity_test,
)

from conftest import FIG1_EDGES


def keys(family):
    return {d.key() for d in family}


def test_enumerate_smallest():
    fam = enumerate_via_r(2, 1, 1)
    assert keys(fam) == {WheelerDfa(2, 1, [(1, 1, 2)]).key(), WheelerDfa(2, 1, [(2, 1, 2)]).key()}
    assert keys(enumerate_direct(2, 1, 1)) == keys(fam)


def test_enumerate_running_example():
    fam = enumerate_via_r(5, 6, 2)
    assert len(fam) == len(keys(fam)) == 1260
    assert WheelerDfa(5, 2, FIG1_EDGES).key() in keys(fam)


def test_enumerate_442():
    fam = enumerate_via_r(4, 4, 2)
    assert len(keys(fam)) == 136
    assert keys(enumerate_direct(4, 4, 2)) == keys(fam)


def test_direct_equals_r_321():
    assert keys(enumerate_direct(3, 2, 1)) == keys(enumerate_via_r(3, 2, 1))


def test_family_members_valid_and_roundtrip():
    for d in enumerate_via_r(4, 5, 2):
        assert check_wheeler(d)
        assert decode(*encode(d)) == d


def test_guards():
    with pytest.raises(TooLarge):
        enumerate_via_r(9, 10, 3)
    with pytest.raises(TooLarge):
        enumerate_direct(5, 4, 1)
    with pytest.raises(TooLarge):
        enumerate_direct(4, 7, 2)


@pytest.mark.parametrize("dof,table", [(1, 10.828), (2, 13.816), (10, 29.588), (100, 149.449), (135, 191.520)])
def test_chi2_quantile(dof, table):
    # standard 0.999 table values; the approximation is loose only at dof 1
    tol = 0.04 if dof < 10 else 0.01 if dof < 100 else 0.001
    assert abs(chi2_quantile(dof) - table) / table < tol


def test_uniformity_stream_211():
    rep = uniformity_test(stream_generator(Params(2, 1, 1), 3), Params(2, 1, 1), 10000)
    assert rep.passed and rep.dof == 1 and rep.categories == 2
    assert rep.statistic < 11


def test_uniformity_degenerate_fails():
    p = Params(4, 4, 2)
    fam = enumerate_via_r(4, 4, 2)
    rep = uniformity_test(lambda: fam[0], p, 13600, family=fam)
    assert not rep.passed
    assert rep.statistic == pytest.approx(13600 * 135)


def test_uniformity_unknown_outcome():
    p = Params(2, 1, 1)
    bad = WheelerDfa(2, 1, [(1, 1, 1)])
    with pytest.raises(UnknownOutcome):
        uniformity_test(lambda: bad, p, 200)


def test_uniformity_needs_draws():
    with pytest.raises(PreconditionViolated):
        uniformity_test(stream_generator(Params(2, 1, 1), 0), Params(2, 1, 1), 199)


def test_basic_generator_members():
    fam = keys(enumerate_via_r(5, 6, 2))
    g = basic_generator(Params(5, 6, 2), 4)
    for _ in range(300):
        assert g().key() in fam


def test_rejection_stats_full():
    assert rejection_stats(Params(5, 10, 2), 200, 1) == (1.0, 1)


def test_rejection_stats_counts_restarts():
    mean, worst = rejection_stats(Params(9, 10, 5), 500, 2)
    assert mean > 1 and worst >= 2


def test_count_matches_small_grid():
    for n, m, s in [(3, 2, 2), (3, 4, 2), (4, 6, 3), (5, 4, 1)]:
        assert len(enumerate_via_r(n, m, s)) == count_wdfa(n, m, s)
