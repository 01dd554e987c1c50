"""Numerical experiments on prime-sum ratios, Cramér-type random models and
Gaussian-prime angle statistics."""

__version__ = "0.1.0"

from ._core import BACKEND  # noqa: E402

__all__ = ["BACKEND", "__version__"]
