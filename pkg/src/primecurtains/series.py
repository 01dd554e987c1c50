"""The prime-sum ratio series, its differences and the curtain structure.

With ``S_n = p_1 + ... + p_n`` and ``a_n = S_n / p_n`` the main objects are

* ``diff_n  = a_{n+1} - a_n``, equal to ``1 - g_n S_n / (p_n p_{n+1})``
* ``r_n     = log(n) S_n / (p_n p_{n+1})``, tending to 1/2
* the uncorrected difference ``S_n/p_{n+1} - S_n/p_n = -g_n S_n / (p_n p_{n+1})``

Ratios are formed from exact integer numerators and denominators and rounded
once at the final division.
"""

from dataclasses import dataclass
from math import log

import numpy as np

from .errors import DomainError
from .primes import PrimeTable

_EXACT_FLOAT = 1 << 53
_INT64_MAX = (1 << 63) - 1


def _absmax(a):
    return int(np.max(np.abs(a))) if len(a) else 0


def _as_wide(a):
    return a if a.dtype == object else a.astype(object)


def _mul(a, b):
    """Exact elementwise product of integer arrays."""
    if a.dtype != object and b.dtype != object and _absmax(a) * _absmax(b) <= _INT64_MAX:
        return a * b
    return _as_wide(a) * _as_wide(b)


def _sub(a, b):
    if a.dtype != object and b.dtype != object and _absmax(a) + _absmax(b) <= _INT64_MAX:
        return a - b
    return _as_wide(a) - _as_wide(b)


def _quotient(num, den):
    """Correctly rounded num/den for exact integer arrays."""
    if num.dtype != object and den.dtype != object and max(_absmax(num), _absmax(den)) <= _EXACT_FLOAT:
        return num.astype(np.float64) / den.astype(np.float64)
    # Python int true division rounds correctly at any size
    return np.array([a / b for a, b in zip(num.tolist(), den.tolist())], dtype=np.float64)


@dataclass(frozen=True)
class SeriesPoint:
    n: int
    log_n: float
    a_n: float
    diff: float
    gap: int
    scaled_ratio: float
    loglog_y: float | None
    sign: str


_SIGN_NAMES = {1: "positive", -1: "negative", 0: "zero"}


@dataclass(frozen=True)
class Series:
    """Columnar store of series points; indexing yields :class:`SeriesPoint`."""

    n: np.ndarray
    log_n: np.ndarray
    a_n: np.ndarray
    diff: np.ndarray
    gap: np.ndarray
    scaled_ratio: np.ndarray
    sign: np.ndarray  # int8 in {-1, 0, 1}

    def __len__(self):
        return len(self.n)

    @property
    def loglog_y(self) -> np.ndarray:
        """log|diff|, NaN where diff == 0."""
        with np.errstate(divide="ignore"):
            out = np.log(np.abs(self.diff))
        out[self.diff == 0] = np.nan
        return out

    def point(self, i: int) -> SeriesPoint:
        d = float(self.diff[i])
        return SeriesPoint(
            n=int(self.n[i]),
            log_n=float(self.log_n[i]),
            a_n=float(self.a_n[i]),
            diff=d,
            gap=int(self.gap[i]),
            scaled_ratio=float(self.scaled_ratio[i]),
            loglog_y=None if d == 0 else log(abs(d)),
            sign=_SIGN_NAMES[int(self.sign[i])],
        )

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)):
            return self.point(int(i))
        return self.subset(i)

    def __iter__(self):
        for i in range(len(self)):
            yield self.point(i)

    def subset(self, index) -> "Series":
        return Series(**{name: getattr(self, name)[index] for name in self.__dataclass_fields__})

    def at(self, n: int) -> SeriesPoint:
        """Point with index ``n`` (the series starts at n = 2)."""
        i = int(n - self.n[0]) if len(self) else -1
        if not 0 <= i < len(self) or self.n[i] != n:
            raise IndexError(f"n={n} not in series")
        return self.point(i)


def _columns(table, max_n):
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    if len(table.primes) < max_n + 1:
        raise IndexError(f"table holds {len(table.primes)} primes, need {max_n + 1}")
    p = table.primes[: max_n + 1]
    s = table.prefix_sums[: max_n + 1]
    # 0-based slices: index i <-> n = i + 1; keep n = 2..max_n
    p_n, p_next = p[1:max_n], p[2 : max_n + 1]
    s_n, s_next = s[1:max_n], s[2 : max_n + 1]
    return p_n, p_next, s_n, s_next


def build_series(table: PrimeTable, max_n: int) -> Series:
    """Series points for n = 2..max_n."""
    p_n, p_next, s_n, s_next = _columns(table, max_n)
    n = np.arange(2, max_n + 1, dtype=np.int64)
    log_n = np.log(n)
    gap = p_next - p_n
    den = _mul(p_n, p_next)
    # a_{n+1} - a_n = (p_n (S_{n+1} - S_n) - g S_n) / (p_n p_{n+1}), exact numerator
    num = _sub(_mul(p_n, _sub(s_next, s_n)), _mul(gap, s_n))
    diff = _quotient(num, den)
    a_n = _quotient(s_n, p_n)
    ratio = log_n * _quotient(s_n, den)
    if num.dtype == object:
        sign = np.array([(v > 0) - (v < 0) for v in num.tolist()], dtype=np.int8)
    else:
        sign = np.sign(num).astype(np.int8)
    return Series(n=n, log_n=log_n, a_n=a_n, diff=diff, gap=gap, scaled_ratio=ratio, sign=sign)


def uncorrected_diff(table: PrimeTable, max_n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(n, S_n/p_{n+1} - S_n/p_n)`` for n = 2..max_n."""
    p_n, p_next, s_n, _ = _columns(table, max_n)
    num = _mul(-(p_next - p_n), s_n)
    return np.arange(2, max_n + 1, dtype=np.int64), _quotient(num, _mul(p_n, p_next))


def key_ratio(table: PrimeTable, n: int) -> float:
    """log(n) * S_n / (p_n p_{n+1})."""
    if n < 2:
        raise IndexError(f"n must be >= 2, got {n}")
    if n + 1 > len(table.primes):
        raise IndexError(f"table holds {len(table.primes)} primes, need {n + 1}")
    p_n, p_next = int(table.primes[n - 1]), int(table.primes[n])
    s_n = int(table.prefix_sums[n - 1])
    return log(n) * (s_n / (p_n * p_next))


def expansion_value(n: float) -> float:
    """1/2 - log log n / (2 log n) + 1 / (4 log n)."""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    L = log(n)
    return 0.5 - log(L) / (2 * L) + 1 / (4 * L)


def scaled_gap_series(table: PrimeTable, max_n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(n, log(n) * (S_n/p_{n+1} - S_n/p_n))`` for n = 2..max_n.

    Each value is close to ``(p_n - p_{n+1}) / 2`` and equals
    ``-(p_{n+1} - p_n) * key_ratio(n)`` up to rounding.
    """
    n, unc = uncorrected_diff(table, max_n)
    return n, np.log(n) * unc


@dataclass(frozen=True)
class CurtainGroup:
    gap: int
    points: Series
    predicted_trough_log_n: float
    detected_trough_log_n: float | None


def detect_trough(group: CurtainGroup, min_side_points: int = 10) -> float | None:
    """log n at the member with smallest |diff|.

    Returns None unless at least ``min_side_points`` members lie on each side
    of the predicted trough ``log n = gap / 2``.
    """
    pts = group.points
    if len(pts) == 0:
        return None
    centre = group.gap / 2
    below = int(np.count_nonzero(pts.log_n < centre))
    above = int(np.count_nonzero(pts.log_n > centre))
    if below < min_side_points or above < min_side_points:
        return None
    return float(pts.log_n[int(np.argmin(np.abs(pts.diff)))])


def group_curtains(points: Series, min_side_points: int = 10) -> list[CurtainGroup]:
    """Partition points by prime gap, one group per distinct gap, ascending."""
    if len(points) == 0:
        raise ValueError("points must be non-empty")
    groups = []
    for g in np.unique(points.gap).tolist():
        sub = points.subset(points.gap == g)
        group = CurtainGroup(gap=g, points=sub, predicted_trough_log_n=g / 2, detected_trough_log_n=None)
        detected = detect_trough(group, min_side_points)
        groups.append(
            CurtainGroup(gap=g, points=sub, predicted_trough_log_n=g / 2, detected_trough_log_n=detected)
        )
    return groups


@dataclass(frozen=True)
class ExtremeStats:
    max_diff: float
    min_diff: float
    max_scaled_negative: float


def extreme_stats(points: Series) -> ExtremeStats:
    if len(points) == 0:
        raise ValueError("points must be non-empty")
    return ExtremeStats(
        max_diff=float(points.diff.max()),
        min_diff=float(points.diff.min()),
        max_scaled_negative=float(np.max(points.gap / (2 * points.log_n))),
    )
