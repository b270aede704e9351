import math

import numpy as np
import pytest

from zeroexp.construct import sample_point
from zeroexp.measure import cylinder_measure
from zeroexp.ruler import skeleton_array, skeleton_prefix, z0
from zeroexp.stats.returns import (
    EmpiricalCdf,
    exp1_cdf,
    hitting_cdf,
    ks_to_exponential,
    occurrences,
    return_cdf,
    return_gaps,
    sup_distance,
)


def brute_occurrences(u, text):
    return [i for i in range(len(text) - len(u) + 1) if text[i:i + len(u)] == u]


def test_occurrence_examples():
    # "11" sits at 0 and at 3 in 1101100
    assert list(occurrences("11", "1101100")) == brute_occurrences("11", "1101100") == [0, 3]
    assert list(occurrences("1", skeleton_prefix(16))) == [0, 1, 3, 4, 7, 8, 10, 11, 15]
    assert occurrences("1111", "11").size == 0


def test_occurrences_overlapping():
    assert list(occurrences("00", "0000")) == [0, 1, 2]


def test_occurrences_match_brute_force(ladder):
    x = sample_point(ladder, 3000, 1).prefix
    for u in ["1", "2", "0", "10", "201", "1202", "00"]:
        assert list(occurrences(u, x)) == brute_occurrences(u, x)


def test_return_cdf_needs_two_occurrences():
    with pytest.raises(ValueError):
        return_cdf("1", "0001000", 0.25)


def test_returns_of_one_are_multiples_of_mu(ladder):
    x = sample_point(ladder, 10**6, 4).array()
    cdf = return_cdf("1", x, 0.25)
    assert cdf.times.min() == 1
    assert np.allclose(cdf.values / 0.25, np.round(cdf.values / 0.25))


def test_kac_for_short_words(ladder):
    x = sample_point(ladder, 10**6, 4).array()
    for u in ["1", "12", "2101"]:
        mu = float(cylinder_measure(u, ladder).mu)
        gaps = return_gaps(u, x)
        assert gaps.size >= 10**4
        assert 0.95 <= mu * gaps.mean() <= 1.05


def test_gaps_at_least_z0_g(ladder):
    x = sample_point(ladder, 10**6, 6).array()
    for u in ["11", "1202", "2101120", "10221"]:
        cm = cylinder_measure(u, ladder)
        if not cm.in_language or cm.progression.m0:
            continue
        gaps = return_gaps(u, x)
        if gaps.size:
            assert gaps.min() >= z0(cm.g)


def test_hitting_cdf_reaches_one(ladder):
    x = sample_point(ladder, 10**5, 7).array()
    F = hitting_cdf("12", x, 1 / 16)
    assert F(1e9) == 1.0


def test_hitting_time_of_skeleton_one():
    """On w itself, tau <= 1 means the next coordinate carries a 1: density 1/2."""
    w = skeleton_array(10**6)
    F = hitting_cdf("1", w, 0.5)
    assert F(0.5 * 1) == pytest.approx(0.5, abs=0.002)


def test_hitting_time_of_symbol_one(ladder):
    x = sample_point(ladder, 10**6, 8).array()
    F = hitting_cdf("1", x, 0.25)
    assert F(0.25) == pytest.approx(0.25, abs=0.005)


def test_hitting_matches_brute_force():
    text = "0120012100210120000112"
    F = hitting_cdf("12", text, 1.0)
    occ = brute_occurrences("12", text)
    waits = []
    for j in range(occ[-1]):
        waits.append(min(o for o in occ if o > j) - j)
    oracle = EmpiricalCdf.from_samples(waits)
    assert np.array_equal(F.times, oracle.times) and np.array_equal(F.counts, oracle.counts)


def test_censored_estimators_match_brute_force():
    rng = np.random.default_rng(0)
    text = "".join(rng.choice(list("0012"), size=400))
    u, S = "12", 15
    occ = brute_occurrences(u, text)
    last = len(text) - len(u) - S
    waits, cens = [], 0
    for j in range(last + 1):
        nxt = [o for o in occ if o > j]
        t = nxt[0] - j if nxt else math.inf
        if t <= S:
            waits.append(t)
        else:
            cens += 1
    F = hitting_cdf(u, text, 1.0, max_steps=S)
    assert F.censored == cens and F.total == last + 1
    assert np.array_equal(np.repeat(F.times, F.counts), np.sort(waits))
    rets, rc = [], 0
    for a, o in enumerate(occ):
        if o > last:
            continue
        t = occ[a + 1] - o if a + 1 < len(occ) else math.inf
        if t <= S:
            rets.append(t)
        else:
            rc += 1
    Ft = return_cdf(u, text, 1.0, max_steps=S)
    assert Ft.censored == rc
    assert np.array_equal(np.repeat(Ft.times, Ft.counts), np.sort(rets))
    assert Ft.limit == S
    with pytest.raises(ValueError):
        Ft.mean()


def test_cdf_basics():
    c = EmpiricalCdf.from_samples([1, 2, 2, 4], scale=0.5)
    assert c(0.4) == 0 and c(0.5) == 0.25 and c(1.0) == 0.75 and c(2.0) == 1
    assert c.left_limit(1.0) == 0.25
    assert c.mean() == pytest.approx(0.5 * 9 / 4)
    assert c.standard_error(1.0) == pytest.approx(math.sqrt(0.75 * 0.25 / 4))


def test_tail_integral_against_quadrature():
    c = EmpiricalCdf.from_samples([1, 3, 3, 7, 8], scale=0.3)
    for t in [0.1, 0.3, 0.95, 2.0, 5.0]:
        s = np.linspace(0, t, 200_001)
        q = np.trapezoid(1 - c(s), s)
        assert c.tail_integral(t) == pytest.approx(q, abs=1e-4)


def test_ks_quantile_grid():
    n = 10_000
    q = -np.log1p(-(np.arange(1, n + 1) - 0.5) / n)
    c = EmpiricalCdf(q, np.ones(n, dtype=np.int64), 1.0, n)
    assert ks_to_exponential(c) <= 1e-4


def test_ks_single_sample():
    c = EmpiricalCdf.from_samples([1])
    assert ks_to_exponential(c) == pytest.approx(max(1 - math.exp(-1), math.exp(-1)))
    assert ks_to_exponential(c) == pytest.approx(1 - math.exp(-1))


def test_ks_respects_t_max():
    c = EmpiricalCdf.from_samples([100])
    assert ks_to_exponential(c, t_max=1.0) == pytest.approx(1 - math.exp(-1))


def test_sup_distance():
    a = EmpiricalCdf.from_samples([1, 2])
    b = EmpiricalCdf.from_samples([2, 3])
    assert sup_distance(a, b) == 0.5
    assert exp1_cdf(0.0) == 0.0
