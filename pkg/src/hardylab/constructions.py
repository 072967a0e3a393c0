"""Constructive procedures: outer-type weights, derivative factorization, ODE solver.

* :func:`outer_positive` builds ``F = H(|f|^{p/2})^{2/p}``, where H is the
  Herglotz transform; ``|F| >= |f|`` on the circle and ``H`` has positive
  real part in the disc.
* :func:`cohn_factor` produces ``G_n`` with ``f^{(n)} = F G_n^{(n)}`` through
  ``G_k = T^{k,k-1}_{log F} G_{k-1} + G_{k-1}``, ``G_0 = f / F``.
* :func:`ode_solve` solves ``G^{(n)} f + sum_i g_i^{(n-i)} f^{(i)} + f^{(n)} = f_0^{(n)}``
  by forward coefficient recursion.
* :func:`lemma4_weight` builds ``H((|g|/(1+eps|g|))^alpha)^beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .boundary import BoundaryFunction, circle_mean_p, herglotz, sample
from .errors import ZeroFunction
from .operators import apply_Tnk, vanishing_order
from .series import PowerSeries, ps_diff, ps_div, ps_eval_k, ps_log, ps_mul, ps_pow


def _check_grid(N: int, M: int) -> None:
    if N > M // 2 - 1:
        raise ValueError(f"output degree {N} needs M >= {2 * N + 2} boundary samples, got {M}")


def reporting_grid(radius: float = 0.9, n_radii: int = 10, n_angles: int = 64) -> np.ndarray:
    rs = np.linspace(0, radius, n_radii)
    t = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    return np.concatenate([[0j], (rs[1:, None] * t[None, :]).ravel()])


def herglotz_of_modulus(f: PowerSeries, power: float, M: int, N: int) -> PowerSeries:
    """Herglotz transform of ``|f|^power`` sampled on the unit circle."""
    _check_grid(N, M)
    u = sample(f, 1.0, M).map(lambda v: np.abs(v) ** power)
    if np.max(u.samples.real) == 0:
        raise ZeroFunction("boundary data vanishes identically")
    return herglotz(u, N)


def outer_positive(f: PowerSeries, p: float, M: int, N: int) -> PowerSeries:
    """``F = (Herglotz of |f|^{p/2})^{2/p}`` to degree N."""
    if p <= 0:
        raise ValueError("p must be positive")
    if not np.any(f.coeffs):
        raise ZeroFunction("outer_positive of the zero function")
    H = herglotz_of_modulus(f, p / 2, M, N)
    return ps_pow(H, 2 / p, N)


@dataclass
class FactorizationResult:
    F: PowerSeries
    G_n: PowerSeries
    residual_sup: float
    n: int = 0
    p: float = 2.0
    scale: float = 1.0
    G_chain: list = field(default_factory=list, repr=False)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.residual_sup >= 0:
            raise ValueError("residual_sup must be nonnegative")

    @property
    def relative_residual(self) -> float:
        return self.residual_sup / self.scale if self.scale > 0 else self.residual_sup

    def to_dict(self) -> dict:
        return {
            "F": self.F.to_dict(),
            "G_n": self.G_n.to_dict(),
            "residual_sup": self.residual_sup,
            "relative_residual": self.relative_residual,
            "n": self.n,
            "p": self.p,
            "scale": self.scale,
            "metadata": dict(self.metadata),
        }


def factorization_residual(f: PowerSeries, F: PowerSeries, G: PowerSeries, n: int,
                           pts: np.ndarray) -> tuple[float, float]:
    """``(max |f^{(n)} - F G^{(n)}|, max |f^{(n)}|)`` over ``pts``."""
    fn = ps_eval_k(f, n, pts)
    rhs = ps_eval_k(F, 0, pts) * ps_eval_k(G, n, pts)
    return float(np.max(np.abs(fn - rhs))), float(np.max(np.abs(fn)))


def cohn_factor(f: PowerSeries, p: float, n: int, M: int, N: int,
                pts: np.ndarray | None = None) -> FactorizationResult:
    """Factor ``f^{(n)} = F G_n^{(n)}`` with F from :func:`outer_positive`.

    A zero of order m at the origin is split off first, ``f = z^m h``; F only
    sees ``|f| = |h|`` on the circle and ``G_0 = z^m h / F``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not np.any(f.coeffs):
        raise ZeroFunction("cannot factor the zero function")
    m = vanishing_order(f)
    h = PowerSeries(f.coeffs[m:])
    H = herglotz_of_modulus(h, p / 2, M, N)
    F = ps_pow(H, 2 / p, N)
    logF = ps_log(H) * (2 / p)
    G0 = ps_div(h.truncate(N), F)
    if m:
        G0 = PowerSeries(np.concatenate([np.zeros(m), G0.coeffs])).truncate(N)
    chain = [G0]
    for k in range(1, n + 1):
        prev = chain[-1]
        chain.append((apply_Tnk(logF, k, k - 1, prev) + prev).truncate(N))
    pts = reporting_grid() if pts is None else pts
    resid, scale = factorization_residual(f, F, chain[-1], n, pts)
    meta = {
        "vanishing_order": m,
        "M": M,
        "N": N,
        "herglotz_min_real_on_grid": float(np.min(ps_eval_k(H, 0, pts).real)),
        "log_branch": "principal, via series log of the Herglotz transform",
    }
    return FactorizationResult(F, chain[-1], resid, n, p, scale, chain, meta)


def boundary_ratio(f: PowerSeries, F: PowerSeries, M: int) -> np.ndarray:
    """``|f| / |F|`` at the M boundary sample points."""
    a = np.abs(sample(f, 1.0, M).samples)
    b = np.abs(sample(F, 1.0, M).samples)
    return a / b


# --------------------------------------------------------------------------
# linear ODE

@dataclass(frozen=True, eq=False)
class OdeProblem:
    """``G^{(n)} f + g_1^{(n-1)} f' + .. + g_{n-1}' f^{(n-1)} + f^{(n)} = f_0^{(n)}``."""

    n: int
    G: PowerSeries
    g: tuple
    f0: PowerSeries
    init: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order n must be >= 1")
        if len(self.g) != self.n - 1:
            raise ValueError(f"need {self.n - 1} coefficient functions g_i, got {len(self.g)}")
        if len(self.init) != self.n:
            raise ValueError(f"need {self.n} initial values, got {len(self.init)}")
        object.__setattr__(self, "g", tuple(self.g))
        object.__setattr__(self, "init", tuple(complex(x) for x in self.init))

    def lower_coefficients(self) -> list[PowerSeries]:
        """``h_i`` multiplying ``f^{(i)}``: ``h_0 = G^{(n)}``, ``h_i = g_i^{(n-i)}``."""
        n = self.n
        return [ps_diff(self.G, n)] + [ps_diff(gi, n - i) for i, gi in enumerate(self.g, start=1)]

    def scale(self) -> float:
        parts = [self.G.max_abs(), self.f0.max_abs(), *(gi.max_abs() for gi in self.g)]
        parts += [abs(x) for x in self.init]
        return max(1.0, *parts)


def ode_solve(prob: OdeProblem, N: int) -> PowerSeries:
    """Series solution of degree N matching the initial data.

    Coefficient m of ``f^{(n)}`` is ``(m+1)..(m+n) c_{m+n}``; every other term
    at order m involves only ``c_j`` with ``j < m + n``.
    """
    n = prob.n
    if N < n:
        raise ValueError("N must be >= n")
    h = [hi.padded(N) for hi in prob.lower_coefficients()]
    rhs = ps_diff(prob.f0, n).padded(N)
    c = np.zeros(N + 1, dtype=np.complex128)
    for i, v in enumerate(prob.init):
        c[i] = v / factorial(i)
    # d[i][j] = coefficient j of f^{(i)} = (j+1)..(j+i) c_{j+i}
    d = [np.zeros(N + 1, dtype=np.complex128) for _ in range(n)]

    def fill(idx: int) -> None:
        for i in range(n):
            j = idx - i
            if 0 <= j <= N:
                d[i][j] = c[idx] * float(np.prod(np.arange(j + 1, j + i + 1)))

    for idx in range(n):
        fill(idx)
    for m in range(0, N - n + 1):
        acc = rhs[m]
        for i in range(n):
            acc -= np.dot(h[i][m::-1], d[i][: m + 1])
        c[m + n] = acc / float(np.prod(np.arange(m + 1, m + n + 1)))
        fill(m + n)
    return PowerSeries(c)


def ode_residual(prob: OdeProblem, f: PowerSeries) -> PowerSeries:
    """Left side minus right side of the ODE, kept through degree ``N - n``."""
    n = prob.n
    N = f.degree - n
    terms = ps_diff(f, n).padded(N) - ps_diff(prob.f0, n).padded(N)
    for i, hi in enumerate(prob.lower_coefficients()):
        terms += ps_mul(hi, ps_diff(f, i), N).padded(N)
    return PowerSeries(terms)


# --------------------------------------------------------------------------
# Herglotz weight for the H^s necessity argument

def lemma4_data(g: PowerSeries, alpha: float, eps: float, M: int) -> BoundaryFunction:
    """Boundary samples of ``(|g| / (1 + eps |g|))^alpha``."""
    return sample(g, 1.0, M).map(lambda v: (np.abs(v) / (1 + eps * np.abs(v))) ** alpha)


def lemma4_weight(g: PowerSeries, alpha: float, beta: float, eps: float, M: int, N: int) -> PowerSeries:
    """``G = H((|g|/(1+eps|g|))^alpha)^beta`` to degree N."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if not np.any(g.coeffs):
        raise ZeroFunction("lemma4_weight of the zero function")
    _check_grid(N, M)
    H = herglotz(lemma4_data(g, alpha, eps, M), N)
    return ps_pow(H, beta, N)


def lemma4_estimates(g: PowerSeries, alpha: float, beta: float, eps: float, p: float,
                     M: int, N: int) -> dict:
    """Quantities behind the two boundary estimates for the weight G.

    ``norm_ratio`` = ``||G||_p^p / int (|g|/(1+eps|g|))^{alpha beta p} dm``
    (finite when ``beta p > 1``); ``pointwise_min`` =
    ``min_j |G(zeta_j)| / (|g|/(1+eps|g|))^{alpha beta}`` (should be >= 1).
    """
    G = lemma4_weight(g, alpha, beta, eps, M, N)
    w = lemma4_data(g, 1.0, eps, M).samples.real
    Gb = np.abs(sample(G, 1.0, M).samples)
    denom = np.mean(w ** (alpha * beta * p))
    lower = w ** (alpha * beta)
    mask = lower > 0
    return {
        "norm_ratio": float(circle_mean_p(BoundaryFunction(1.0, Gb), p) ** p / denom),
        "pointwise_min": float(np.min(Gb[mask] / lower[mask])) if mask.any() else float("inf"),
        "sup_G": float(np.max(Gb)),
    }

