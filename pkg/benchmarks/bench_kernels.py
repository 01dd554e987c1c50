"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on identical inputs under both backends; outputs are
compared before timing so a speedup never hides a mismatch.
"""

import argparse
import timeit

import numpy as np

from primecurtains import _core, primes


def cases():
    base = primes.sieve(1000)
    split = primes.sieve(2 * 10**6)
    split = split[split % 4 == 1]
    rng = np.random.default_rng(0)
    values = rng.standard_normal(2 * 10**6) * 1e6
    return {
        "sieve_segment [1e6, 2e6)": ("sieve_segment", (base, 10**6, 2 * 10**6)),
        f"two_squares_batch ({len(split)} primes)": ("two_squares_batch", (split,)),
        "neumaier_cumsum (2e6 doubles)": ("neumaier_cumsum", (values,)),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats, best is reported (default: 5)")
    args = parser.parse_args(argv)

    names = sorted(_core.BACKENDS)
    if "cython" not in names:
        print("compiled extension not available; timing the fallback only")
    print(f"{'kernel':<36}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, (fn, fargs) in cases().items():
        outputs = {n: getattr(_core.BACKENDS[n], fn)(*fargs) for n in names}
        if len(names) > 1 and not _same(outputs["cython"], outputs["python"]):
            raise SystemExit(f"{label}: backends disagree")
        best = {}
        for n in names:
            f = getattr(_core.BACKENDS[n], fn)
            best[n] = min(timeit.repeat(lambda f=f, a=fargs: f(*a), number=1, repeat=args.repeat))
        row = f"{label:<36}" + "".join(f"{best[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
