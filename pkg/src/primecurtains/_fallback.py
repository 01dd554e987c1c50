"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""

from math import isqrt

import numpy as np


def sieve_segment(base_primes, lo, hi):
    """Primality flags (uint8) for the integers in ``[lo, hi)``."""
    size = max(hi - lo, 0)
    out = np.ones(size, dtype=np.uint8)
    if size == 0:
        return out
    out[: max(0, min(hi, 2) - lo)] = 0
    for p in base_primes.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        out[start - lo :: p] = 0
    return out


def _two_squares_one(p):
    if p % 4 != 1:
        raise ValueError(f"{p} is not 1 mod 4")
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    x, y = p, pow(c, (p - 1) // 4, p)
    r = isqrt(p)
    while y > r:
        x, y = y, x % y
    rest = p - y * y
    d = isqrt(rest)
    if d * d != rest:
        raise ValueError(f"{p} is not prime")
    return (y, d) if y > d else (d, y)


def two_squares_batch(primes):
    """(a, b) with a*a + b*b == p and a > b > 0, for primes p = 1 mod 4."""
    pairs = [_two_squares_one(p) for p in np.asarray(primes).tolist()]
    a = np.fromiter((ab[0] for ab in pairs), dtype=np.int64, count=len(pairs))
    b = np.fromiter((ab[1] for ab in pairs), dtype=np.int64, count=len(pairs))
    return a, b


def neumaier_cumsum(values):
    """Running compensated sums; element i is the Neumaier sum of values[:i+1]."""
    out = np.empty(len(values), dtype=np.float64)
    s = c = 0.0
    for i, v in enumerate(np.asarray(values, dtype=np.float64).tolist()):
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out
