# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Must stay bit-for-bit equivalent to ``_fallback``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64
ctypedef long long i64


def sieve_segment(const i64[::1] base_primes, i64 lo, i64 hi):
    """Primality flags (uint8) for the integers in ``[lo, hi)``."""
    cdef i64 size = hi - lo
    out_arr = np.ones(size if size > 0 else 0, dtype=np.uint8)
    if size <= 0:
        return out_arr
    cdef unsigned char[::1] out = out_arr
    cdef i64 i, p, start, m, step
    cdef Py_ssize_t k, nbase = base_primes.shape[0]
    cdef bint evens_cleared = False
    for i in range(lo, min(hi, 2)):
        out[i - lo] = 0
    for k in range(nbase):
        p = base_primes[k]
        if p * p >= hi:
            break
        start = ((lo + p - 1) // p) * p
        if start < p * p:
            start = p * p
        step = p
        if evens_cleared and p % 2 == 1:
            # even multiples were cleared by p = 2
            if start % 2 == 0:
                start += p
            step = 2 * p
        m = start
        while m < hi:
            out[m - lo] = 0
            m += step
        if p == 2:
            evens_cleared = True
    return out_arr


cdef inline u64 _mulmod(u64 a, u64 b, u64 m) nogil:
    return <u64>((<u128>a * b) % m)


cdef inline u64 _powmod(u64 base, u64 exp, u64 m) nogil:
    cdef u64 result = 1
    base %= m
    while exp:
        if exp & 1:
            result = _mulmod(result, base, m)
        base = _mulmod(base, base, m)
        exp >>= 1
    return result


cdef inline u64 _isqrt(u64 n) nogil:
    cdef u64 r = <u64>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def two_squares_batch(const i64[::1] primes):
    """(a, b) with a*a + b*b == p and a > b > 0, for primes p = 1 mod 4."""
    cdef Py_ssize_t n = primes.shape[0], k
    a_arr = np.empty(n, dtype=np.int64)
    b_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] a_out = a_arr
    cdef i64[::1] b_out = b_arr
    cdef u64 p, c, z, x, y, t, r, rest, d
    for k in range(n):
        p = <u64>primes[k]
        if p % 4 != 1:
            raise ValueError(f"{p} is not 1 mod 4")
        c = 2
        while _powmod(c, (p - 1) // 2, p) != p - 1:
            c += 1
        z = _powmod(c, (p - 1) // 4, p)
        x = p
        y = z
        r = _isqrt(p)
        while y > r:
            t = x % y
            x = y
            y = t
        rest = p - y * y
        d = _isqrt(rest)
        if d * d != rest:
            raise ValueError(f"{p} is not prime")
        if y > d:
            a_out[k] = <i64>y
            b_out[k] = <i64>d
        else:
            a_out[k] = <i64>d
            b_out[k] = <i64>y
    return a_arr, b_arr


def neumaier_cumsum(const double[::1] values):
    """Running compensated sums; element i is the Neumaier sum of values[:i+1]."""
    cdef Py_ssize_t n = values.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double s = 0.0, c = 0.0, t, v
    for i in range(n):
        v = values[i]
        t = s + v
        if fabs(s) >= fabs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out_arr
