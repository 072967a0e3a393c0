"""Pochhammer matrices and the separation of bounded combinations.

If ``|sum_k f_k(z) (gamma)_k| <= C_gamma`` for n distinct values of gamma,
the rows ``((gamma_i)_0, .., (gamma_i)_{n-1})`` form a basis, and each f_k
is bounded by ``sum_i |r_i| C_{gamma_i}`` where r solves
``sum_i r_i (gamma_i)_j = delta_{jk}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import SingularSystem

COINCIDE_TOL = 1e-12


def pochhammer(gamma: float, k: int) -> float:
    """Rising factorial ``gamma (gamma+1) ... (gamma+k-1)``; ``(gamma)_0 = 1``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1.0
    for j in range(k):
        out *= gamma + j
    return out


@dataclass(frozen=True)
class GammaSet:
    gammas: tuple

    def __post_init__(self):
        g = tuple(float(x) for x in self.gammas)
        if len(g) < 1:
            raise ValueError("need at least one gamma")
        if any(b <= a for a, b in zip(g, g[1:])):
            raise ValueError("gammas must be distinct and ascending")
        if any(x <= 1 for x in g):
            raise ValueError("gammas must exceed 1")
        object.__setattr__(self, "gammas", g)

    @classmethod
    def default(cls, n: int, p: float = 1.0) -> "GammaSet":
        """``gamma_i = gamma_min + i`` with ``gamma_min = max(2, 1/p + 1)``."""
        g0 = max(2.0, 1.0 / p + 1.0)
        return cls(tuple(g0 + i for i in range(n)))

    def __len__(self) -> int:
        return len(self.gammas)

    def __iter__(self):
        return iter(self.gammas)


def _gammas(G) -> np.ndarray:
    return np.asarray(G.gammas if isinstance(G, GammaSet) else G, dtype=float)


def poch_matrix(G) -> np.ndarray:
    """Row i is ``((gamma_i)_0, (gamma_i)_1, .., (gamma_i)_{n-1})``."""
    g = _gammas(G)
    n = g.size
    P = np.ones((n, n))
    for j in range(1, n):
        P[:, j] = P[:, j - 1] * (g + j - 1)
    return P


def vandermonde_det(G) -> float:
    """``prod_{i<j} (gamma_j - gamma_i)``, the determinant of :func:`poch_matrix`."""
    g = _gammas(G)
    out = 1.0
    for i, j in combinations(range(g.size), 2):
        out *= g[j] - g[i]
    return out


class Separation(NamedTuple):
    r: np.ndarray
    cond: float
    residual: float
    backward_error: float = 0.0


def _residual_ext(A: np.ndarray, r: np.ndarray, e: np.ndarray) -> np.ndarray:
    # extended precision so the residual measures r, not the evaluation
    A = A.astype(np.longdouble)
    return A @ r.astype(np.longdouble) - e.astype(np.longdouble)


def separation_coeffs(G, k: int) -> Separation:
    """Coefficients r with ``sum_i r_i Gamma_i = e_k``.

    Partial-pivot LU followed by one refinement step with the residual in
    extended precision.  ``residual`` is ``max |P^T r - e_k|``;
    ``backward_error`` divides each row by ``sum_i |r_i| (gamma_i)_j``,
    the size of the cancellation a double-precision r cannot beat.
    """
    g = _gammas(G)
    n = g.size
    if not 0 <= k < n:
        raise ValueError(f"target index {k} out of range for n={n}")
    gs = np.sort(g)
    if n > 1 and np.min(np.diff(gs)) <= COINCIDE_TOL * max(1.0, np.max(np.abs(gs))):
        raise SingularSystem("two gammas coincide")
    A = poch_matrix(g).T
    e = np.zeros(n)
    e[k] = 1.0
    lu, piv = scipy.linalg.lu_factor(A)
    r = scipy.linalg.lu_solve((lu, piv), e)
    r = r - scipy.linalg.lu_solve((lu, piv), _residual_ext(A, r, e).astype(float))
    res = np.abs(_residual_ext(A, r, e)).astype(float)
    scale = np.abs(A) @ np.abs(r) + np.abs(e)
    return Separation(r, float(np.linalg.cond(A)), float(np.max(res)), float(np.max(res / scale)))


def separated_bound(C: Sequence[float], r: Sequence[float]) -> float:
    """``sum_i |r_i| C_{gamma_i}``."""
    C = np.asarray(C, dtype=float)
    r = np.asarray(r, dtype=float)
    if C.shape != r.shape:
        raise ValueError("bounds and coefficients must have equal length")
    return float(np.sum(np.abs(r) * C))
