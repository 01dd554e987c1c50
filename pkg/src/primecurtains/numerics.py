"""Logarithmic integral, its inverse, and related calibration helpers.

``li`` uses the offset convention ``li(x) = integral_2^x dt / log t``
throughout, so ``li(2) == 0``.
"""

from dataclasses import dataclass
from math import exp, floor, fsum, isfinite, log

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 10**6

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    points_used: int


@dataclass(frozen=True)
class SumComparison:
    sum: float
    integral: float
    error: float


def weighted_integral(alpha: float, x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Adaptive Gauss-Kronrod value of integral_2^x t**alpha / log t dt."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    if not x >= 2:
        raise DomainError(f"x must be >= 2, got {x}")
    if x == 2:
        return 0.0
    # substitute t = e^u: the integrand e^{(alpha+1)u}/u is smooth on [log 2, log x]
    k = alpha + 1.0
    value, abserr, info, *msg = quad(
        lambda u: exp(k * u) / u,
        log(2.0),
        log(x),
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    if abserr > max(cfg.abs_tol, cfg.rel_tol * abs(value)) or not isfinite(value):
        detail = f": {msg[0]}" if msg else ""
        raise ConvergenceError(
            f"quadrature for x={x}, alpha={alpha} reached error {abserr:.3g}{detail}",
            achieved=abserr,
        )
    return value


def li(x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Offset logarithmic integral from 2 to x."""
    return weighted_integral(0.0, x, cfg)


def li_inverse(y: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE, max_iter: int = 100) -> float:
    """Solve ``li(x) == y`` for x >= 2.

    Newton steps with derivative ``1/log x`` inside a maintained bracket;
    any step that leaves the bracket is replaced by bisection.
    """
    if not y >= 0:
        raise DomainError(f"y must be >= 0, got {y}")
    tol = 1e-9 * max(1.0, y)
    lo, hi = 2.0, None
    x = max(2.0, y * log(max(y, 3.0)))
    best = None
    for _ in range(max_iter):
        f = li(x, cfg) - y
        if best is None or abs(f) < abs(best[1]):
            best = (x, f)
        if abs(f) <= tol:
            # a few extra steps buy headroom below the contract tolerance
            refine = 0
            while abs(best[1]) > 1e-3 * tol and refine < 3:
                x = x - f * log(x)
                f = li(x, cfg) - y
                if abs(f) < abs(best[1]):
                    best = (x, f)
                refine += 1
            return best[0]
        if f < 0:
            lo = x
        else:
            hi = x
        step = x - f * log(x)
        if hi is None:
            # no upper bracket yet: Newton overshoots low only when f > 0
            x = step if step > lo else 2.0 * lo
        elif lo < step < hi:
            x = step
        else:
            x = 0.5 * (lo + hi)
    raise ConvergenceError(f"li_inverse({y}) did not converge in {max_iter} iterations", achieved=abs(f))


def sum_vs_integral(alpha: float, x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> SumComparison:
    """Compare sum_{3<=n<=x} n**alpha / log n with integral_2^x t**alpha / log t dt."""
    if not x >= 3:
        raise DomainError(f"x must be >= 3, got {x}")
    n = np.arange(3, floor(x) + 1, dtype=np.float64)
    total = fsum((n**alpha / np.log(n)).tolist())
    integral = weighted_integral(alpha, x, cfg)
    return SumComparison(sum=total, integral=integral, error=total - integral)


def fit_exponent(points) -> ExponentFit:
    """Least-squares slope of log y against log x; points with y == 0 are dropped."""
    pts = [(float(x), float(y)) for x, y in points]
    if any(x <= 0 for x, _ in pts):
        raise ValueError("x values must be positive")
    if any(y < 0 for _, y in pts):
        raise ValueError("y values must be non-negative")
    pts = [(x, y) for x, y in pts if y > 0]
    if len(pts) < 2:
        raise ValueError("need at least two points with y > 0")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    if np.ptp(lx) == 0:
        raise ValueError("x values must not all coincide")
    slope, intercept = np.polyfit(lx, ly, 1)
    return ExponentFit(slope=float(slope), intercept=float(intercept), points_used=len(pts))
