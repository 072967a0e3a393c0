"""Normalized reproducing-kernel powers ``f_{lam,gamma}``.

    f_{lam,gamma}(z) = (1 - |lam|^2)^{gamma - 1/p} / (1 - conj(lam) z)^gamma

For gamma > 1/p these have H^p norm bounded independently of lam, while
their k-th derivative at z = lam grows like ``(1-|lam|^2)^{-k-1/p}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadParams
from .series import PowerSeries
from .spaces import hardy_norm
from .sepalg import pochhammer

TRUNCATION_FACTOR = 50.0
TRUNCATION_CAP = 200_000


@dataclass(frozen=True)
class TestParams:
    __test__ = False  # keep pytest from collecting this class

    lam: complex
    gamma: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if abs(self.lam) >= 1:
            raise BadParams("lambda must lie in the open disc")
        if self.p <= 0:
            raise BadParams("p must be positive")
        if self.gamma <= 1.0 / self.p:
            raise BadParams(f"need gamma > 1/p, got gamma={self.gamma}, p={self.p}")


def scaled_degree(lam: complex, factor: float = TRUNCATION_FACTOR, cap: int = TRUNCATION_CAP) -> int:
    """Truncation ``ceil(factor / (1 - |lam|))`` capped at ``cap``."""
    return int(min(cap, math.ceil(factor / (1 - abs(lam)))))


def test_function(tp: TestParams, N: int | None = None) -> PowerSeries:
    """Taylor coefficients ``(1-|lam|^2)^{gamma-1/p} (gamma)_k / k! conj(lam)^k``."""
    N = scaled_degree(tp.lam) if N is None else N
    lb = np.conj(tp.lam)
    k = np.arange(1, N + 1, dtype=float)
    ratios = (tp.gamma + k - 1) / k * lb
    c = np.empty(N + 1, dtype=np.complex128)
    c[0] = (1 - abs(tp.lam) ** 2) ** (tp.gamma - 1 / tp.p)
    c[1:] = c[0] * np.cumprod(ratios)
    return PowerSeries(c)


test_function.__test__ = False


def tail_magnitude(f: PowerSeries) -> float:
    """Modulus of the last retained coefficient relative to the largest one."""
    top = f.max_abs()
    return float(abs(f.coeffs[-1]) / top) if top else 0.0


def vertex_derivative(tp: TestParams, k: int) -> complex:
    """``f_{lam,gamma}^{(k)}(lam) = (gamma)_k conj(lam)^k / (1-|lam|^2)^{k+1/p}``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    lam = tp.lam
    return pochhammer(tp.gamma, k) * np.conj(lam) ** k / (1 - abs(lam) ** 2) ** (k + 1 / tp.p)


def lambda_grid(radii: Iterable[float], n_angles: int = 16) -> np.ndarray:
    """Radius ladder crossed with equispaced phases (r = 0 contributes one point)."""
    t = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    pts = []
    for r in radii:
        pts.extend([0j] if r == 0 else list(r * t))
    return np.asarray(pts, dtype=complex)


def family_norm_bound(gamma: float, p: float, lam_grid, N: int | None = None,
                      M: int | None = None) -> float:
    """Empirical ``C_gamma = max_lam ||f_{lam,gamma}||_p``.

    ``N=None`` scales the truncation with each lambda.
    """
    best = 0.0
    for lam in np.asarray(lam_grid, dtype=complex).ravel():
        f = test_function(TestParams(lam, gamma, p), N)
        best = max(best, hardy_norm(f, p, M, check=False).value)
    return best

