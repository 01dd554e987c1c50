import sys

import pytest

from primecurtains import gaussian, primes, series, verify


def trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        if all(n % p for p in out if p * p <= n):
            out.append(n)
    return out


@pytest.fixture(scope="session")
def table_1e6():
    return primes.build_prime_table(10**6)


@pytest.fixture(scope="session")
def big_table():
    """At least 10^6 + 1 primes."""
    return primes.table_with_count(10**6 + 1)


@pytest.fixture(scope="session")
def big_series(big_table):
    return series.build_series(big_table, 10**6)


@pytest.fixture(scope="session")
def gauss_1e6():
    return gaussian.enumerate_primes(10**6)


@pytest.fixture(scope="session")
def gauss_small():
    return gaussian.enumerate_primes(10**4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    results = [mod.RESULTS[k] for k in sorted(mod.RESULTS)]
    terminalreporter.section("acceptance criteria")
    for line in verify.format_report(results).splitlines():
        terminalreporter.write_line(line)
