import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primecurtains import primes
from primecurtains.primes import build_prime_table, nth_prime, prefix_sum

from conftest import trial_division_primes


def test_limit_10():
    t = build_prime_table(10)
    assert t.primes.tolist() == [2, 3, 5, 7]
    assert t.prefix_sums.tolist() == [2, 5, 10, 17]
    assert t.gaps.tolist() == [1, 2, 2]


def test_limit_2():
    assert build_prime_table(2).primes.tolist() == [2]


@pytest.mark.parametrize("bad", [1, 0, -5])
def test_limit_too_small(bad):
    with pytest.raises(ValueError):
        build_prime_table(bad)


def test_count_1e6_against_second_sieve(table_1e6):
    # plain (unsegmented) sieve as independent route
    flags = np.ones(10**6 + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, 1001):
        if flags[p]:
            flags[p * p :: p] = False
    assert len(table_1e6) == int(flags.sum()) == 78498
    assert np.array_equal(table_1e6.primes, np.flatnonzero(flags))


def test_matches_trial_division():
    assert build_prime_table(20_000).primes.tolist() == trial_division_primes(20_000)


def test_nth_prime(table_1e6):
    assert nth_prime(table_1e6, 1) == 2
    assert nth_prime(table_1e6, 4) == 7
    assert nth_prime(table_1e6, 78498) == 999983
    for bad in (0, 78499):
        with pytest.raises(IndexError):
            nth_prime(table_1e6, bad)


def test_prefix_sum(table_1e6):
    assert prefix_sum(table_1e6, 4) == 17
    assert prefix_sum(table_1e6, 5) == 28
    assert prefix_sum(table_1e6, 1000) == sum(trial_division_primes(7919)) == 3682913
    with pytest.raises(IndexError):
        prefix_sum(table_1e6, 0)


def test_invariants(table_1e6):
    p = table_1e6.primes
    assert np.all(np.diff(p) > 0)
    g = table_1e6.gaps
    assert g[0] == 1 and np.all(g[1:] % 2 == 0)
    assert np.array_equal(g, p[1:] - p[:-1])
    s = table_1e6.prefix_sums
    assert np.array_equal(np.diff(s), p[1:])
    assert s.dtype == np.int64


def test_prefix_recurrence_via_accessors(table_1e6):
    for n in range(2, 2000):
        assert prefix_sum(table_1e6, n) == prefix_sum(table_1e6, n - 1) + nth_prime(table_1e6, n)


@settings(max_examples=25, deadline=None)
@given(limit=st.integers(2, 200_000), seg=st.integers(1, 50_000))
def test_segment_size_does_not_change_output(limit, seg):
    a = build_prime_table(limit, segment_size=seg)
    b = build_prime_table(limit)
    assert np.array_equal(a.primes, b.primes)
    assert np.array_equal(a.prefix_sums, b.prefix_sums)


@settings(max_examples=25, deadline=None)
@given(l1=st.integers(2, 100_000), extra=st.integers(0, 100_000))
def test_prefix_property_across_limits(l1, extra):
    a = build_prime_table(l1)
    b = build_prime_table(l1 + extra)
    assert np.array_equal(b.primes[: len(a)], a.primes)


def test_wide_prefix_sums_switch_to_python_ints():
    values = np.array([2**40, 2**40 + 1, 2**62], dtype=np.int64)
    sums = primes.exact_cumsum(values)
    assert sums.dtype == object
    assert sums[-1] == 2**40 + 2**40 + 1 + 2**62


def test_table_is_immutable(table_1e6):
    with pytest.raises(ValueError):
        table_1e6.primes[0] = 4


def test_table_with_count():
    t = primes.table_with_count(1000)
    assert len(t) >= 1000
    assert primes.upper_bound_nth_prime(1000) >= 7919


def test_prime_count(table_1e6):
    assert primes.prime_count(table_1e6, 10) == 4
    assert primes.prime_count(table_1e6, 10**6) == 78498
    with pytest.raises(IndexError):
        primes.prime_count(table_1e6, 10**6 + 1)
