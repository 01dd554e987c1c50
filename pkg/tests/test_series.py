from fractions import Fraction
from math import exp, log

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primecurtains import primes, series
from primecurtains.errors import DomainError


@pytest.fixture(scope="module")
def small_table():
    return primes.build_prime_table(200_000)


def exact_diff(p_n, p_next, s_n):
    """a_{n+1} - a_n straight from the definition, in exact rationals."""
    return Fraction(s_n + p_next, p_next) - Fraction(s_n, p_n)


def test_point_n4(small_table):
    pt = series.build_series(small_table, 10).at(4)
    assert pt.a_n == pytest.approx(17 / 7, rel=1e-15)
    assert pt.diff == float(Fraction(9, 77))
    assert pt.gap == 4
    assert pt.scaled_ratio == pytest.approx(log(4) * 17 / 77, rel=1e-15)
    assert pt.scaled_ratio == pytest.approx(0.30606499, abs=1e-8)
    assert pt.sign == "positive"
    assert pt.loglog_y == pytest.approx(log(9 / 77))


def test_point_n2_gap(small_table):
    assert series.build_series(small_table, 10).at(2).gap == 2


def test_a5(small_table):
    assert series.build_series(small_table, 10).at(5).a_n == pytest.approx(28 / 11, rel=1e-15)


def test_series_range_and_errors(small_table):
    s = series.build_series(small_table, 100)
    assert s.n[0] == 2 and s.n[-1] == 100 and len(s) == 99
    with pytest.raises(IndexError):
        series.build_series(small_table, len(small_table))
    with pytest.raises(ValueError):
        series.build_series(small_table, 1)
    with pytest.raises(IndexError):
        s.at(101)


def test_diff_matches_exact_definition(small_table):
    s = series.build_series(small_table, 5000)
    p = small_table.primes.tolist()
    sums = small_table.prefix_sums.tolist()
    for i, n in enumerate(s.n.tolist()):
        assert s.diff[i] == float(exact_diff(p[n - 1], p[n], sums[n - 1]))


def test_gap_identity_and_bounds(big_series, big_table):
    s = big_series
    p = big_table.primes
    s_n = big_table.prefix_sums[1 : 10**6]
    rhs = 1 - s.gap * (s_n / (p[1 : 10**6] * p[2 : 10**6 + 1]))
    np.testing.assert_allclose(s.diff, rhs, rtol=1e-12, atol=1e-15)
    assert s.diff.max() < 1
    assert np.array_equal(s.sign, np.sign(s.diff))
    assert np.all(np.isnan(s.loglog_y) == (s.diff == 0))


def test_gap_two_diffs_in_band(big_series):
    s = big_series
    d = s.diff[(s.gap == 2) & (s.n >= 1000)]
    assert d.min() > 0.8 and d.max() < 1


def test_wide_integer_path_agrees(small_table):
    wide = primes.PrimeTable(
        limit=small_table.limit,
        primes=small_table.primes.astype(object),
        gaps=small_table.gaps,
        prefix_sums=small_table.prefix_sums.astype(object),
    )
    a = series.build_series(small_table, 3000)
    b = series.build_series(wide, 3000)
    assert np.array_equal(a.diff, b.diff)
    assert np.array_equal(a.scaled_ratio, b.scaled_ratio)
    assert np.array_equal(a.sign, b.sign)


def test_key_ratio(small_table, big_table):
    assert series.key_ratio(small_table, 4) == pytest.approx(0.30606499, abs=1e-8)
    n = 10**4
    assert abs(series.key_ratio(big_table, n) - series.expansion_value(n)) <= 0.75 / log(n)
    with pytest.raises(IndexError):
        series.key_ratio(small_table, 1)
    with pytest.raises(IndexError):
        series.key_ratio(small_table, len(small_table))


def test_key_ratio_matches_series_column(big_table, big_series):
    for n in (2, 10, 12345, 10**6):
        assert series.key_ratio(big_table, n) == big_series.at(n).scaled_ratio


def test_key_ratio_band_scan(big_series):
    r = big_series.scaled_ratio[big_series.n >= 1000]
    assert 0.25 < r.min() and r.max() < 0.5


def test_expansion_value():
    assert series.expansion_value(15) == pytest.approx(0.40837893, abs=1e-8)
    assert series.expansion_value(10**6) == pytest.approx(0.42306, abs=1e-5)
    assert series.expansion_value(1e300) == pytest.approx(0.5, abs=0.01)
    with pytest.raises(DomainError):
        series.expansion_value(2)


def test_scaled_gap_series(small_table, big_table, big_series):
    n, v = series.scaled_gap_series(small_table, 10)
    assert n[2] == 4
    assert v[2] == pytest.approx(log(4) * float(Fraction(17, 11) - Fraction(17, 7)), rel=1e-15)
    assert v[2] == pytest.approx(-1.22425996, abs=1e-8)
    n, v = series.scaled_gap_series(big_table, 10**6)
    np.testing.assert_allclose(v / -big_series.gap, big_series.scaled_ratio, rtol=1e-14)
    near = (big_series.gap == 2) & (n >= 9 * 10**4) & (n <= 11 * 10**4)
    assert np.all(np.abs(v[near] + 1) <= 0.25)


def test_uncorrected_diff(small_table):
    n, u = series.uncorrected_diff(small_table, 10)
    assert u[2] == float(Fraction(17, 11) - Fraction(17, 7))


def test_group_curtains_partition(big_series):
    groups = series.group_curtains(big_series)
    assert sum(len(g.points) for g in groups) == len(big_series)
    gaps = [g.gap for g in groups]
    assert len(gaps) == len(set(gaps))
    for g in groups:
        assert np.all(g.points.gap == g.gap)
        assert g.predicted_trough_log_n == g.gap / 2
    by_gap = {g.gap: g for g in groups}
    assert by_gap[14].predicted_trough_log_n == 7.0
    assert by_gap[2].predicted_trough_log_n == 1.0


def test_group_curtains_two_gaps(small_table):
    s = series.build_series(small_table, 6)  # gaps 2, 2, 4, 2, 4
    groups = series.group_curtains(s)
    assert [g.gap for g in groups] == [2, 4]
    with pytest.raises(ValueError):
        series.group_curtains(s.subset(slice(0, 0)))


def test_detect_trough_scan_oracle(big_series):
    groups = {g.gap: g for g in series.group_curtains(big_series)}
    # only five gap-6 points lie below log n = 3, so ten per side is unmet
    assert series.detect_trough(groups[6], 10) is None
    assert exp(series.detect_trough(groups[6], 3)) == pytest.approx(9)
    assert exp(series.detect_trough(groups[12], 10)) == pytest.approx(121)
    assert groups[12].detected_trough_log_n == series.detect_trough(groups[12], 10)


def test_detect_trough_single_point(small_table):
    s = series.build_series(small_table, 10)
    group = series.CurtainGroup(gap=2, points=s.subset(slice(0, 1)), predicted_trough_log_n=1.0,
                                detected_trough_log_n=None)
    assert series.detect_trough(group, 10) is None


def test_extreme_stats(big_series):
    first = big_series.subset(slice(0, 10**4))
    stats = series.extreme_stats(first)
    assert stats.max_diff < 1
    k = int(np.argmax(first.gap / first.log_n))
    assert stats.min_diff == first.diff[k]
    assert stats.max_scaled_negative == pytest.approx(first.gap[k] / (2 * first.log_n[k]))
    one = series.extreme_stats(first.subset(slice(5, 6)))
    assert one.max_diff == one.min_diff


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 15_000))
def test_identity_property(n):
    t = primes.table_with_count(15_002)
    s = series.build_series(t, 15_001)
    p_n, p_next, s_n = int(t.primes[n - 1]), int(t.primes[n]), int(t.prefix_sums[n - 1])
    expected = 1 - Fraction((p_next - p_n) * s_n, p_n * p_next)
    assert s.at(n).diff == float(expected)
    assert s.at(n).diff < 1


def test_iteration_yields_points(small_table):
    s = series.build_series(small_table, 5)
    pts = list(s)
    assert [p.n for p in pts] == [2, 3, 4, 5]
    assert isinstance(s[0], series.SeriesPoint)
