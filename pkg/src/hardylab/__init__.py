"""Numerical laboratory for generalized integration operators on Hardy spaces."""

__version__ = "0.1.0"

from .series import PowerSeries  # noqa: E402

__all__ = ["PowerSeries", "__version__"]
