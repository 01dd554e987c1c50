"""Programmatic acceptance checks.

Each check returns a :class:`CriterionResult`; :func:`run_suite` runs a named
group of them and :func:`format_report` renders one line per criterion.
Expensive inputs (the prime table, Gaussian enumeration, seeded model runs)
are built once per :class:`VerifyContext` and shared between checks.
"""

import tempfile
import time
from itertools import accumulate
from dataclasses import dataclass, field
from functools import cached_property
from math import log, pi
from pathlib import Path

import numpy as np

from . import cramer, gaussian, numerics, primes, series

SEEDS = tuple(range(20))
SERIES_MAX_N = 10**6
GAUSS_MAX_NORM = 10**6
CRAMER_X = 10**5
MODEL_KEY_N = 10**4
MIN_PASSING_SEEDS = 18


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: str
    threshold: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (
            f"[{tag}] {self.number:2d}. {self.name}: measured {self.measured}; "
            f"required {self.threshold} ({self.seconds:.1f}s)"
        )


@dataclass
class VerifyContext:
    """Shared, lazily built inputs. Pass ``table`` to check a specific prime table."""

    table: primes.PrimeTable | None = None
    workdir: Path | None = None
    timings: dict = field(default_factory=dict)

    def _timed(self, key, fn):
        start = time.perf_counter()
        value = fn()
        self.timings[key] = time.perf_counter() - start
        return value

    @cached_property
    def prime_table(self) -> primes.PrimeTable:
        if self.table is not None:
            return self.table
        return self._timed("prime_table", lambda: primes.table_with_count(SERIES_MAX_N + 1))

    @cached_property
    def series(self) -> series.Series:
        return self._timed("series", lambda: series.build_series(self.prime_table, SERIES_MAX_N))

    @cached_property
    def gaussian_primes(self) -> gaussian.GaussianPrimes:
        return self._timed("gaussian", lambda: gaussian.enumerate_primes(GAUSS_MAX_NORM))

    @cached_property
    def classic_runs(self) -> list[cramer.CramerSequence]:
        return [cramer.generate(cramer.CramerConfig(CRAMER_X, s, "classic")) for s in SEEDS]

    @cached_property
    def modified_runs(self) -> list[cramer.CramerSequence]:
        # li^{-1}(10^4) is about 1.2e5; 2e5 leaves room for downward fluctuations
        return [cramer.generate(cramer.CramerConfig(2 * 10**5, s, "modified_odd")) for s in SEEDS]


def _fmt(v):
    return f"{v:.6g}"


# series -------------------------------------------------------------------


def check_expansion(ctx: VerifyContext) -> CriterionResult:
    start = time.perf_counter()
    table = ctx.prime_table
    worst = []
    ok = True
    for n in (10**4, 10**5, 10**6):
        dev = abs(series.key_ratio(table, n) - series.expansion_value(n))
        tol = 0.75 / log(n)
        ok &= dev <= tol
        worst.append(f"n=1e{round(log(n, 10))}: {_fmt(dev)} (tol {_fmt(tol)})")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    return CriterionResult(
        1, "key-ratio expansion", bool(ok), "; ".join(worst) + f"; runtime {elapsed:.1f}s",
        "|r_n - expansion| <= 0.75/log n, runtime < 60 s",
    )


def check_band(ctx: VerifyContext) -> CriterionResult:
    s = ctx.series
    r = s.scaled_ratio[s.n >= 10**3]
    lo, hi = float(r.min()), float(r.max())
    return CriterionResult(
        2, "key-ratio band", bool(lo >= 0.35 and hi <= 0.505), f"range [{_fmt(lo)}, {_fmt(hi)}]",
        "[0.35, 0.505] for 1e3 <= n <= 1e6",
    )


def check_gap_identity(ctx: VerifyContext, samples: int = 10**6, seed: int = 12345) -> CriterionResult:
    s = ctx.series
    table = ctx.prime_table
    rng = np.random.Generator(np.random.Philox(key=seed))
    idx = rng.integers(2, SERIES_MAX_N + 1, size=samples)
    p = table.primes.tolist()
    # rebuild S_n from the primes so a corrupted prefix-sum column is caught
    sums = list(accumulate(p[: SERIES_MAX_N]))
    worst = 0.0
    diff = s.diff
    for n in idx.tolist():
        p_n, p_next, s_n = p[n - 1], p[n], sums[n - 1]
        den = p_n * p_next
        expected = (den - (p_next - p_n) * s_n) / den
        got = float(diff[n - 2])
        if expected == 0:
            rel = 0.0 if got == 0 else float("inf")
        else:
            rel = abs(got - expected) / abs(expected)
        worst = max(worst, rel)
    return CriterionResult(
        3, "gap identity", worst <= 1e-12, f"max relative deviation {worst:.3g} over {samples} indices",
        "<= 1e-12 relative",
    )


def check_troughs(ctx: VerifyContext) -> CriterionResult:
    groups = {g.gap: g for g in series.group_curtains(ctx.series)}
    parts = []
    ok = True
    for g in (6, 8, 10, 12, 14):
        group = groups.get(g)
        found = series.detect_trough(group, 10) if group is not None else None
        hit = found is not None and abs(found - g / 2) <= 1.0
        ok &= hit
        parts.append(f"g={g}: {'none' if found is None else _fmt(found)}")
    return CriterionResult(4, "trough locations", bool(ok), ", ".join(parts), "within +-1.0 of g/2")


def check_max_diff(ctx: VerifyContext) -> CriterionResult:
    stats = series.extreme_stats(ctx.series)
    ok = stats.max_diff < 1 and stats.max_diff > 0.95
    return CriterionResult(
        5, "max diff", bool(ok), f"max diff {stats.max_diff:.10g}", "0.95 < max diff < 1 for n <= 1e6"
    )


# cramer -------------------------------------------------------------------


def check_count_error(ctx: VerifyContext) -> CriterionResult:
    start = time.perf_counter()
    runs = ctx.classic_runs
    x = CRAMER_X
    errors = [cramer.count_error(seq, x) for seq in runs]
    good = sum(abs(e) <= x**0.6 for e in errors)
    elapsed = time.perf_counter() - start
    ok = good >= MIN_PASSING_SEEDS and elapsed < 30
    return CriterionResult(
        6, "Cramér count error", ok,
        f"{good}/20 seeds within bound, max |error| {_fmt(max(map(abs, errors)))}, runtime {elapsed:.1f}s",
        f"|count - li(x)| <= x^0.6 = {_fmt(x**0.6)} for >= 18 seeds, runtime < 30 s",
    )


CRAMER_CHECKPOINTS = (10**3, 10**4, 10**5)


def check_power_sum_error(ctx: VerifyContext) -> CriterionResult:
    x = CRAMER_X
    sweeps = [cramer.error_sweep(seq, 1.0, CRAMER_CHECKPOINTS) for seq in ctx.classic_runs]
    good = sum(abs(sw[-1]) <= x**1.6 for sw in sweeps)
    pooled = [(c, abs(e)) for sw in sweeps for c, e in zip(CRAMER_CHECKPOINTS, sw)]
    slope = numerics.fit_exponent(pooled).slope
    ok = good >= MIN_PASSING_SEEDS and slope <= 1.75
    return CriterionResult(
        7, "Cramér power-sum error", ok, f"{good}/20 seeds within bound, pooled exponent {_fmt(slope)}",
        "|sum p - int t/log t| <= x^1.6 for >= 18 seeds; exponent <= 1.75",
    )


def check_model_key_ratio(ctx: VerifyContext) -> CriterionResult:
    n = MODEL_KEY_N
    main = cramer.ratio_main_term(n)
    devs = [abs(cramer.model_key_ratio(seq, n) - main) for seq in ctx.modified_runs]
    tol = n**-0.4
    good = sum(d <= tol for d in devs)
    return CriterionResult(
        8, "model key ratio", good >= MIN_PASSING_SEEDS,
        f"{good}/20 seeds within bound, main term {_fmt(main)}, max deviation {_fmt(max(devs))}",
        f"|ratio - main term| <= n^-0.4 = {_fmt(tol)} for >= 18 seeds",
    )


# gaussian -----------------------------------------------------------------


def check_enumeration(ctx: VerifyContext) -> CriterionResult:
    start = time.perf_counter()
    small = len(gaussian.enumerate_primes(10))
    big = len(ctx.gaussian_primes)
    expected = gaussian.expected_count(GAUSS_MAX_NORM)
    elapsed = time.perf_counter() - start
    ok = small == 16 and big == expected and elapsed < 60
    return CriterionResult(
        9, "Gaussian enumeration", ok,
        f"count(10)={small}, count(1e6)={big} vs class identity {expected}, runtime {elapsed:.1f}s",
        "16 exactly; identity exact; runtime < 60 s",
    )


GAUSS_CHECKPOINTS = (10**3, 10**4, 10**5, 10**6)


def check_exp_sum(ctx: VerifyContext) -> CriterionResult:
    pts = gaussian.walk(ctx.gaussian_primes, 4, GAUSS_CHECKPOINTS)
    imag_zero = all(cp.sum_imag == 0 for cp in pts)
    last = pts[-1]
    ratio = abs(last.sum_real) / last.count
    slope = numerics.fit_exponent([(cp.x, abs(cp.sum_real)) for cp in pts]).slope
    ok = imag_zero and ratio <= 0.05 and slope <= 0.75
    return CriterionResult(
        10, "exponential-sum cancellation", ok,
        f"imag zero: {imag_zero}, |S|/count at 1e6 = {_fmt(ratio)}, exponent {_fmt(slope)}",
        "imag == 0; ratio <= 0.05; exponent <= 0.75",
    )


def check_fourth_power(ctx: VerifyContext) -> CriterionResult:
    small = gaussian.enumerate_primes(10)
    got = [gaussian.fourth_power_sum(small, x) for x in (2, 5, 9)]
    direct = gaussian.fourth_power_sum(ctx.gaussian_primes, 10**4)
    regrouped = gaussian.fourth_power_sum_by_norm(ctx.gaussian_primes, 10**4)
    ok = got == [-16, -72, 252] and direct == regrouped
    return CriterionResult(
        11, "fourth-power sums", ok, f"values {got}; at 1e4 direct {direct}, regrouped {regrouped}",
        "[-16, -72, 252]; direct == regrouped",
    )


def check_sectors(ctx: VerifyContext) -> CriterionResult:
    gp = ctx.gaussian_primes
    off = gaussian.octant_counts(gp, GAUSS_MAX_NORM, include_boundary=False)
    width = (pi / 4) / 16
    subs = np.array([gaussian.sector_count(gp, GAUSS_MAX_NORM, j * width, (j + 1) * width) for j in range(16)])
    spread = float(np.max(np.abs(subs / subs.mean() - 1)))
    ok = bool(np.all(off == off[0])) and spread <= 0.05
    return CriterionResult(
        12, "sector equidistribution", ok,
        f"off-boundary octants {off.tolist()}, max sub-sector deviation {spread:.4f}",
        "octants equal; sub-sectors within 5% of mean",
    )


def check_model_walk(ctx: VerifyContext) -> CriterionResult:
    x = 10**5
    samples = [gaussian.generate_model(s, x) for s in SEEDS]
    walks = [gaussian.model_walk(sm, x) for sm in samples]
    good = sum(abs(w) <= 8 * x**0.6 for w in walks)
    at_two = all(gaussian.model_walk(sm, 2) == -8 for sm in samples)
    return CriterionResult(
        13, "random Gaussian walk", good >= MIN_PASSING_SEEDS and at_two,
        f"{good}/20 seeds within bound, max |X| {_fmt(max(map(abs, walks)))}, X(2) = -8 for all: {at_two}",
        f"|X| <= 8 x^0.6 = {_fmt(8 * x**0.6)} for >= 18 seeds; X(2) = -8",
    )


# numerics -----------------------------------------------------------------


def round_trip_grid():
    return [0.0, *np.geomspace(1e-2, 1e5, 36).tolist()]


def check_numerics(ctx: VerifyContext) -> CriterionResult:
    worst_rt = 0.0
    for y in round_trip_grid():
        x = numerics.li_inverse(y)
        worst_rt = max(worst_rt, abs(numerics.li(x) - y) / max(1.0, y))
    worst_fit = 0.0
    for k in (0.25, 0.5, 1.0, 1.5, 2.0):
        for c in (1.0, 3.7):
            fit = numerics.fit_exponent([(x, c * x**k) for x in (10.0, 100.0, 1000.0, 1e4)])
            worst_fit = max(worst_fit, abs(fit.slope - k))
    ratios = []
    bound_ok = True
    for x in (10**3, 10**4, 10**5):
        err = abs(numerics.sum_vs_integral(1.0, x).error)
        bound = 2 * x / log(x)
        bound_ok &= err <= bound
        ratios.append(f"{_fmt(err / bound)}")
    ok = worst_rt <= 1e-9 and worst_fit <= 1e-9 and bound_ok
    return CriterionResult(
        14, "numerics", bool(ok),
        f"round trip {worst_rt:.3g}, fit error {worst_fit:.3g}, sum-vs-integral |err|/bound {', '.join(ratios)}",
        "round trip <= 1e-9; fit <= 1e-9; |sum - integral| <= 2x/log x",
    )


def _determinism(workdir: Path) -> tuple[bool, str]:
    from .cli import main

    outputs = []
    for run in (1, 2):
        a = workdir / f"simulate{run}.csv"
        b = workdir / f"walk{run}.csv"
        codes = (
            main(["cramer", "simulate", "--limit", "100000", "--seed", "7", "--out", str(a)]),
            main(["gaussian", "model-walk", "--max-norm", "100000", "--seed", "7", "--seeds", "3", "--out", str(b)]),
        )
        if any(codes):
            return False, f"CLI exit codes {codes}"
        outputs.append((a.read_bytes(), b.read_bytes()))
    same = outputs[0] == outputs[1]
    return same, "byte-identical" if same else "outputs differ"


def check_determinism(ctx: VerifyContext, earlier: list[CriterionResult], started: float) -> CriterionResult:
    if ctx.workdir is not None:
        same, detail = _determinism(ctx.workdir)
    else:
        with tempfile.TemporaryDirectory() as tmp:
            same, detail = _determinism(Path(tmp))
    total = time.perf_counter() - started
    failing = [r.number for r in earlier if not r.passed]
    ok = same and total < 600 and not failing
    return CriterionResult(
        15, "determinism and full run", ok,
        f"CLI reruns {detail}; total runtime {total:.1f}s; other failing criteria: {failing or 'none'}",
        "byte-identical reruns; verify all passes in < 600 s",
    )


SUITES = {
    "series": (check_expansion, check_band, check_gap_identity, check_troughs, check_max_diff),
    "cramer": (check_count_error, check_power_sum_error, check_model_key_ratio),
    "gaussian": (check_enumeration, check_exp_sum, check_fourth_power, check_sectors, check_model_walk),
    "numerics": (check_numerics,),
}


def run_suite(suite: str = "all", ctx: VerifyContext | None = None, progress=None) -> list[CriterionResult]:
    """Run the named suite; ``all`` runs every criterion including the determinism check."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    ctx = ctx or VerifyContext()
    started = time.perf_counter()
    checks = [c for name in SUITES for c in SUITES[name]] if suite == "all" else list(SUITES[suite])
    results = []
    for check in checks:
        t0 = time.perf_counter()
        res = check(ctx)
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if progress:
            progress(res)
    if suite == "all":
        t0 = time.perf_counter()
        res = check_determinism(ctx, results, started)
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if progress:
            progress(res)
    return results


def format_report(results: list[CriterionResult]) -> str:
    passed = sum(r.passed for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
