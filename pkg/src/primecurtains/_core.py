"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
fallback is used. Both expose the same three functions with identical results.
"""

from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"
_impl = BACKENDS[BACKEND]


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _impl
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None


def sieve_segment(base_primes, lo, hi):
    return _impl.sieve_segment(base_primes, lo, hi)


def two_squares_batch(primes):
    return _impl.two_squares_batch(primes)


def neumaier_cumsum(values):
    return _impl.neumaier_cumsum(values)
