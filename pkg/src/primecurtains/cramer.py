"""Cramér-type random models of the primes.

Two variants are supported:

``modified_odd``
    ``p_1 = 3``; each odd ``k >= 5`` is kept with probability
    ``min(1, 2 / log k)``. All values are odd, so every gap is even.
``classic``
    2 is always present; each ``n >= 3`` is kept with probability ``1 / log n``.

Random draws come from a Philox counter-based generator keyed by the seed.
Candidate ``i`` (in increasing order) consumes exactly draw ``i`` of that
stream, so a realization depends only on ``(seed, variant, limit)`` and any
candidate's fate is independent of how the others were decided.
"""

from dataclasses import dataclass, field
from math import log

import numpy as np

from . import _core
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig, li, li_inverse, weighted_integral
from .primes import PrimeTable, exact_cumsum

VARIANTS = ("modified_odd", "classic")
_CHUNK = 1 << 20


@dataclass(frozen=True)
class CramerConfig:
    limit: int
    seed: int = 0
    variant: str = "modified_odd"

    def __post_init__(self):
        if self.limit < 5:
            raise ValueError(f"limit must be >= 5, got {self.limit}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


@dataclass(frozen=True)
class CramerSequence:
    config: CramerConfig
    values: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.values)

    def indicator(self) -> np.ndarray:
        """Boolean array ``ind`` of length limit+1 with ``ind[k]`` true iff k is in the set."""
        ind = np.zeros(self.config.limit + 1, dtype=bool)
        ind[self.values] = True
        return ind


def _stream(seed):
    return np.random.Generator(np.random.Philox(key=seed))


def _candidates(config):
    if config.variant == "modified_odd":
        return np.arange(5, config.limit + 1, 2, dtype=np.int64), np.array([3], dtype=np.int64), 2.0
    return np.arange(3, config.limit + 1, dtype=np.int64), np.array([2], dtype=np.int64), 1.0


def generate(config: CramerConfig) -> CramerSequence:
    candidates, fixed, weight = _candidates(config)
    rng = _stream(config.seed)
    kept = [fixed]
    for start in range(0, len(candidates), _CHUNK):
        k = candidates[start : start + _CHUNK]
        u = rng.random(len(k))
        # 2/log k exceeds 1 for k = 5, 7: those are always kept
        prob = np.minimum(1.0, weight / np.log(k))
        kept.append(k[u < prob])
    values = np.concatenate(kept)
    values.setflags(write=False)
    return CramerSequence(config=config, values=values)


def _check_cutoff(seq, x):
    if x > seq.config.limit:
        raise IndexError(f"x={x} beyond realization limit {seq.config.limit}")


def count_upto(seq: CramerSequence, x: float) -> int:
    _check_cutoff(seq, x)
    return int(np.searchsorted(seq.values, np.floor(x), side="right"))


def count_error(seq: CramerSequence, x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """#{p <= x} - li(x)."""
    return count_upto(seq, x) - li(x, cfg)


def power_sum(seq: CramerSequence, alpha: float, x: float) -> float:
    """Compensated sum of p**alpha over realized p <= x, in increasing order."""
    m = count_upto(seq, x)
    if m == 0:
        return 0.0
    return float(_core.neumaier_cumsum(seq.values[:m].astype(np.float64) ** alpha)[-1])


def power_sum_error(
    seq: CramerSequence, alpha: float, x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """sum_{p <= x} p**alpha - integral_2^x t**alpha / log t dt."""
    return power_sum(seq, alpha, x) - weighted_integral(alpha, x, cfg)


def error_sweep(
    seq: CramerSequence, alpha: float, checkpoints, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> list[float]:
    """power_sum_error at each checkpoint from one running compensated sum.

    Agrees exactly with calling :func:`power_sum_error` per checkpoint.
    """
    checkpoints = [float(x) for x in checkpoints]
    for x in checkpoints:
        _check_cutoff(seq, x)
    top = count_upto(seq, max(checkpoints)) if checkpoints else 0
    running = _core.neumaier_cumsum(seq.values[:top].astype(np.float64) ** alpha)
    out = []
    for x in checkpoints:
        m = count_upto(seq, x)
        total = float(running[m - 1]) if m else 0.0
        out.append(total - weighted_integral(alpha, x, cfg))
    return out


def ratio_main_term(n: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """log(n) / L**2 * integral_2^L t / log t dt with L = li^{-1}(n)."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    L = li_inverse(n, cfg)
    return log(n) / (L * L) * weighted_integral(1.0, L, cfg)


def model_key_ratio(seq: CramerSequence, n: int) -> float:
    """log(n) * (p_1 + ... + p_n) / (p_n p_{n+1}) over the realization."""
    if n < 1:
        raise IndexError(f"n must be >= 1, got {n}")
    if len(seq.values) < n + 1:
        raise IndexError(f"realization has {len(seq.values)} values, need {n + 1}")
    head = seq.values[:n].tolist()
    return log(n) * (sum(head) / (head[-1] * int(seq.values[n])))


def as_prime_table(seq: CramerSequence) -> PrimeTable:
    """View a realization as a :class:`PrimeTable` so the series tools apply to it."""
    values = seq.values
    gaps = np.diff(values)
    sums = exact_cumsum(values)
    gaps.setflags(write=False)
    sums.setflags(write=False)
    return PrimeTable(limit=seq.config.limit, primes=values, gaps=gaps, prefix_sums=sums)
