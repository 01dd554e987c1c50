"""Rational primes, gaps and exact prefix sums.

Indexing is 1-based in the public accessors (``nth_prime(table, 1) == 2``);
the arrays on :class:`PrimeTable` are ordinary 0-based numpy arrays.
"""

from dataclasses import dataclass
from math import isqrt, log

import numpy as np

from . import _core

DEFAULT_SEGMENT = 1 << 20
_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit`` with gaps and prefix sums.

    ``prefix_sums`` is int64 while the running total fits, otherwise an object
    array of Python ints, so the sums are always exact.
    """

    limit: int
    primes: np.ndarray
    gaps: np.ndarray
    prefix_sums: np.ndarray

    def __len__(self):
        return len(self.primes)

    @property
    def count(self) -> int:
        return len(self.primes)


def _small_primes(n):
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve(limit: int, segment_size: int = DEFAULT_SEGMENT) -> np.ndarray:
    """Primes <= limit by a segmented sieve of Eratosthenes."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    base = _small_primes(isqrt(limit))
    chunks = []
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        flags = _core.sieve_segment(base, lo, hi)
        chunks.append(np.flatnonzero(flags).astype(np.int64) + lo)
    return np.concatenate(chunks)


def exact_cumsum(values):
    # total <= count * max value bounds every partial sum
    if len(values) and int(values[-1]) * len(values) > _INT64_MAX:
        return np.cumsum(values.astype(object))
    return np.cumsum(values, dtype=np.int64)


def build_prime_table(limit: int, segment_size: int = DEFAULT_SEGMENT) -> PrimeTable:
    """Sieve the primes up to ``limit`` and tabulate gaps and prefix sums."""
    limit = int(limit)
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    primes = sieve(limit, segment_size)
    gaps = np.diff(primes)
    sums = exact_cumsum(primes)
    for arr in (primes, gaps, sums):
        arr.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, gaps=gaps, prefix_sums=sums)


def upper_bound_nth_prime(n: int) -> int:
    """An integer >= p_n (Rosser's bound for n >= 6)."""
    if n < 6:
        return 13
    return int(n * (log(n) + log(log(n)))) + 1


def table_with_count(count: int) -> PrimeTable:
    """Smallest convenient table holding at least ``count`` primes."""
    return build_prime_table(upper_bound_nth_prime(count))


def _check_index(table, n):
    if not 1 <= n <= len(table.primes):
        raise IndexError(f"prime index {n} outside 1..{len(table.primes)}")


def nth_prime(table: PrimeTable, n: int) -> int:
    _check_index(table, n)
    return int(table.primes[n - 1])


def prefix_sum(table: PrimeTable, n: int) -> int:
    """Exact sum of the first ``n`` primes."""
    _check_index(table, n)
    return int(table.prefix_sums[n - 1])


def prime_count(table: PrimeTable, x: float) -> int:
    """Number of primes <= x (x must not exceed the table limit)."""
    if x > table.limit:
        raise IndexError(f"x={x} beyond table limit {table.limit}")
    return int(np.searchsorted(table.primes, np.floor(x), side="right"))
