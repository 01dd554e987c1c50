"""Gaussian primes, their angles, exponential sums, and a random Gaussian model.

Every associate and conjugate is enumerated, so a rational prime p = 1 mod 4
contributes eight elements, the prime above 2 contributes four (the
associates of 1+i), and each p = 3 mod 4 contributes {p, ip, -p, -ip}.

Angles lie in [0, 2 pi). Elements whose angle is an exact multiple of pi/4
(associates of 1+i and of rational primes) get the float ``k * (pi/4)``
directly, and octant membership is decided with integer comparisons rather
than through floating ``atan2``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, log, pi

import numpy as np

from . import _core
from .primes import sieve

QUARTER_PI = pi / 4
TWO_PI = 2 * pi
_SIGN_SWAPS = [(sx, sy, swap) for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)) for swap in (0, 1)]


@dataclass(frozen=True)
class GaussianPrime:
    re: int
    im: int
    norm: int
    angle: float


@dataclass(frozen=True)
class GaussianPrimes:
    """Columnar Gaussian primes sorted by (norm, angle); iterates as :class:`GaussianPrime`."""

    max_norm: int
    re: np.ndarray = field(repr=False)
    im: np.ndarray = field(repr=False)
    norm: np.ndarray = field(repr=False)
    angle: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.re)

    def __getitem__(self, i):
        return GaussianPrime(int(self.re[i]), int(self.im[i]), int(self.norm[i]), float(self.angle[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def upto(self, x: float) -> "GaussianPrimes":
        """Primes with norm <= x."""
        if x > self.max_norm:
            raise IndexError(f"x={x} beyond enumerated norm bound {self.max_norm}")
        m = int(np.searchsorted(self.norm, np.floor(x), side="right"))
        return GaussianPrimes(int(np.floor(x)), self.re[:m], self.im[:m], self.norm[:m], self.angle[:m])


@dataclass(frozen=True)
class WalkCheckpoint:
    x: float
    sum_real: float
    sum_imag: float
    count: int


@dataclass(frozen=True)
class GaussianModelSample:
    seed: int
    max_norm: int
    norms: np.ndarray = field(repr=False)
    angles: np.ndarray = field(repr=False)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def two_squares(p: int) -> tuple[int, int]:
    """(a, b) with a*a + b*b == p and a > b > 0, for a prime p = 1 mod 4.

    Hermite-Serret descent: Euclid on (p, z) with z*z = -1 mod p, stopped at
    the first remainder below sqrt(p).
    """
    p = int(p)
    if p % 4 != 1 or not _is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    a, b = _core.two_squares_batch(np.array([p], dtype=np.int64))
    return int(a[0]), int(b[0])


def octant(re, im):
    """Index k of the half-open sector [k pi/4, (k+1) pi/4) holding each angle.

    Pure integer logic, exact on the sector boundaries.
    """
    re = np.asarray(re, dtype=np.int64)
    im = np.asarray(im, dtype=np.int64)
    # quadrant q: rotate by -q*pi/2 into x > 0, y >= 0
    q = np.select([(re > 0) & (im >= 0), (re <= 0) & (im > 0), (re < 0) & (im <= 0)], [0, 1, 2], 3)
    x = np.choose(q, [re, im, -re, -im])
    y = np.choose(q, [im, -re, -im, re])
    return 2 * q + (y >= x)


def angles(re, im):
    """theta in [0, 2 pi) with exact k * pi/4 values on the octant boundaries."""
    re = np.asarray(re, dtype=np.int64)
    im = np.asarray(im, dtype=np.int64)
    theta = np.arctan2(im.astype(np.float64), re.astype(np.float64))
    theta = np.where(theta < 0, theta + TWO_PI, theta)
    boundary = (re == 0) | (im == 0) | (np.abs(re) == np.abs(im))
    theta = np.where(boundary, octant(re, im) * QUARTER_PI, theta)
    # guard the rounding case theta + 2 pi == 2 pi
    return np.where(theta >= TWO_PI, 0.0, theta)


def enumerate_primes(max_norm: int) -> GaussianPrimes:
    """All Gaussian primes with norm <= max_norm."""
    max_norm = int(max_norm)
    if max_norm < 2:
        raise ValueError(f"max_norm must be >= 2, got {max_norm}")
    rational = sieve(max_norm)
    split = rational[rational % 4 == 1]
    inert = rational[(rational % 4 == 3) & (rational <= isqrt(max_norm))]
    a, b = _core.two_squares_batch(split)

    res, ims, norms = [], [], []
    # 1+i and associates
    res.append(np.array([1, -1, -1, 1]))
    ims.append(np.array([1, 1, -1, -1]))
    norms.append(np.full(4, 2))
    # a+bi, b+ai and their conjugates/associates
    for sx, sy, swap in _SIGN_SWAPS:
        u, v = (b, a) if swap else (a, b)
        res.append(sx * u)
        ims.append(sy * v)
        norms.append(split)
    zero = np.zeros_like(inert)
    for r, i in [(inert, zero), (zero, inert), (-inert, zero), (zero, -inert)]:
        res.append(r)
        ims.append(i)
        norms.append(inert * inert)

    re = np.concatenate(res).astype(np.int64)
    im = np.concatenate(ims).astype(np.int64)
    norm = np.concatenate(norms).astype(np.int64)
    theta = angles(re, im)
    order = np.lexsort((theta, norm))
    out = [arr[order] for arr in (re, im, norm, theta)]
    for arr in out:
        arr.setflags(write=False)
    return GaussianPrimes(max_norm, *out)


def exp_sum(primes: GaussianPrimes, n: float, x: float) -> WalkCheckpoint:
    """Sum of exp(i n theta) over primes with norm <= x.

    For integer n each element with im > 0 is paired with its conjugate, so the
    imaginary part is exactly zero and the real part is
    sum_{im>0} 2 cos(n theta) + sum_{im=0} cos(n theta). For non-integer n the
    conjugate does not cancel, and both parts are summed directly.
    """
    if n == 0:
        raise ValueError("exponent must be nonzero")
    sub = primes.upto(x)
    if float(n).is_integer():
        upper = sub.im > 0
        axis = sub.im == 0
        total = 2.0 * np.cos(n * sub.angle[upper]).sum() + np.cos(n * sub.angle[axis]).sum()
        return WalkCheckpoint(x=float(x), sum_real=float(total), sum_imag=0.0, count=len(sub))
    return WalkCheckpoint(
        x=float(x),
        sum_real=float(np.cos(n * sub.angle).sum()),
        sum_imag=float(np.sin(n * sub.angle).sum()),
        count=len(sub),
    )


def exp_sum_unpaired(primes: GaussianPrimes, n: float, x: float) -> complex:
    """Direct sum of exp(i n theta) without conjugate pairing."""
    sub = primes.upto(x)
    return complex(np.exp(1j * n * sub.angle).sum())


def walk(primes: GaussianPrimes, n: float, checkpoints) -> list[WalkCheckpoint]:
    return [exp_sum(primes, n, x) for x in checkpoints]


def _fourth_power_real(re, im):
    return re**4 - 6 * re * re * im * im + im**4


def fourth_power_sum(primes: GaussianPrimes, x: float) -> int:
    """Exact sum of pi**4 over primes with norm <= x (the imaginary part cancels)."""
    sub = primes.upto(x)
    re = sub.re.tolist()
    im = sub.im.tolist()
    imag = sum(4 * a**3 * b - 4 * a * b**3 for a, b in zip(re, im))
    if imag != 0:
        raise ArithmeticError("imaginary part of the fourth-power sum did not cancel")
    return sum(_fourth_power_real(a, b) for a, b in zip(re, im))


def fourth_power_sum_by_norm(primes: GaussianPrimes, x: float) -> int:
    """The same sum regrouped as sum_k k**2 * sum_{N(pi)=k} pi**4 / N(pi)**2, exactly."""
    sub = primes.upto(x)
    inner: dict[int, list[Fraction]] = {}
    for a, b, k in zip(sub.re.tolist(), sub.im.tolist(), sub.norm.tolist()):
        acc = inner.setdefault(k, [Fraction(0), Fraction(0)])
        acc[0] += Fraction(_fourth_power_real(a, b), k * k)
        acc[1] += Fraction(4 * a**3 * b - 4 * a * b**3, k * k)
    real = sum(k * k * acc[0] for k, acc in inner.items())
    imag = sum(k * k * acc[1] for k, acc in inner.items())
    if imag != 0 or real.denominator != 1:
        raise ArithmeticError("regrouped fourth-power sum is not a rational integer")
    return int(real)


def sector_count(primes: GaussianPrimes, x: float, lo: float, hi: float) -> int:
    """Number of primes with norm <= x and angle in [lo, hi)."""
    if not 0 <= lo < hi <= TWO_PI:
        raise ValueError(f"need 0 <= lo < hi <= 2 pi, got [{lo}, {hi})")
    sub = primes.upto(x)
    return int(np.count_nonzero((sub.angle >= lo) & (sub.angle < hi)))


def octant_counts(primes: GaussianPrimes, x: float, include_boundary: bool = True) -> np.ndarray:
    """Counts in the eight sectors [k pi/4, (k+1) pi/4).

    A boundary element (angle an exact multiple of pi/4) belongs to the sector
    it opens: angle k pi/4 is counted in sector k.
    """
    sub = primes.upto(x)
    k = octant(sub.re, sub.im)
    if not include_boundary:
        boundary = (sub.re == 0) | (sub.im == 0) | (np.abs(sub.re) == np.abs(sub.im))
        k = k[~boundary]
    return np.bincount(k, minlength=8)


def expected_count(max_norm: int) -> int:
    """4 + 8 #{p <= x, p = 1 mod 4} + 4 #{p <= sqrt x, p = 3 mod 4}, from rational primes."""
    rational = sieve(max_norm)
    split = int(np.count_nonzero(rational % 4 == 1))
    inert = int(np.count_nonzero((rational % 4 == 3) & (rational <= isqrt(max_norm))))
    return 4 + 8 * split + 4 * inert


# random model -------------------------------------------------------------

# fixed norm-2 elements +-1+-i carry their true angle pi/4, outside [0, pi/4)
FIXED_ANGLE = QUARTER_PI


def generate_model(seed: int, max_norm: int) -> GaussianModelSample:
    """Random set of norms and angles.

    Norm 2 is always present. Each integer n in (2, max_norm] is included with
    probability 1/(2 log n) using draw n-3 of the seed's inclusion stream; its
    angle is draw n-3 of a second, independent stream, scaled to [0, pi/4).
    """
    max_norm = int(max_norm)
    if max_norm < 2:
        raise ValueError(f"max_norm must be >= 2, got {max_norm}")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    candidates = np.arange(3, max_norm + 1, dtype=np.int64)
    include = np.random.Generator(np.random.Philox(key=seed)).random(len(candidates))
    theta = np.random.Generator(np.random.Philox(key=seed | (1 << 64))).random(len(candidates))
    keep = include < 1.0 / (2.0 * np.log(candidates))
    norms = np.concatenate([[2], candidates[keep]]).astype(np.int64)
    angles_ = np.concatenate([[FIXED_ANGLE], QUARTER_PI * theta[keep]])
    # u < 1 so u * pi/4 < pi/4 in exact arithmetic; rounding could reach pi/4
    angles_[1:] = np.minimum(angles_[1:], np.nextafter(QUARTER_PI, 0.0))
    norms.setflags(write=False)
    angles_.setflags(write=False)
    return GaussianModelSample(seed=seed, max_norm=max_norm, norms=norms, angles=angles_)


def model_walk(sample: GaussianModelSample, x: float) -> float:
    """sum over model norms n <= x of 8 cos(4 theta_n); norm 2 contributes -8."""
    if x > sample.max_norm:
        raise IndexError(f"x={x} beyond sample norm bound {sample.max_norm}")
    m = int(np.searchsorted(sample.norms, np.floor(x), side="right"))
    return float(8.0 * np.cos(4.0 * sample.angles[:m]).sum())


def expected_model_count(max_norm: int) -> float:
    """Expected number of model norms <= max_norm: 1 + sum_{3<=n<=x} 1/(2 log n)."""
    n = np.arange(3, int(max_norm) + 1, dtype=np.float64)
    return 1.0 + float((0.5 / np.log(n)).sum())


def count_bound_columns(x: float) -> tuple[float, float]:
    """Comparison scales x**0.6 and x / log x for a checkpoint."""
    return x**0.6, x / log(x)

