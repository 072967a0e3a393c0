"""Littlewood-Paley square functions, Stolz angles and the Lusin area function.

Area integrals use the normalized measure ``dA = dx dy / pi``, under which
``int_D |f'|^2 dA = sum k |c_k|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import ZeroFunction
from .series import PowerSeries, ps_diff, ps_eval_k
from .spaces import hardy_norm

DEFAULT_APERTURE = 0.5


@lru_cache(maxsize=64)
def _gauss01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    return (x + 1) / 2, w / 2


@dataclass(frozen=True, eq=False)
class RadialQuad:
    """Quadrature nodes/weights on (0, 1) for the radial square-function integrals."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.nodes) <= 0) or np.any(self.weights <= 0):
            raise ValueError("nodes must increase strictly and weights be positive")

    @classmethod
    def gauss(cls, n: int) -> "RadialQuad":
        x, w = _gauss01(n)
        return cls(x, w)

    @classmethod
    def for_degree(cls, degree: int) -> "RadialQuad":
        """Exact for ``(1-r)^{2k-1}`` times any polynomial of degree ``2*degree``."""
        return cls.gauss(degree + 1)

    def moment_error(self, m: int) -> float:
        """Relative error of ``sum w (1-r)^m`` against ``1/(m+1)``."""
        got = float(np.sum(self.weights * (1 - self.nodes) ** m))
        return abs(got * (m + 1) - 1)

    @property
    def descriptor(self) -> str:
        return f"gauss-legendre n={self.nodes.size}"


@dataclass(frozen=True)
class AreaQuad:
    """Polar product rule: Gauss-Legendre radially, trapezoid in angle."""

    n_radial: int = 64
    n_angular: int = 256

    def angular_for(self, degree: int) -> int:
        # |f'|^2 on a circle has frequencies below `degree`; keep them all
        need = max(self.n_angular, 2 * degree + 2)
        return 1 << (need - 1).bit_length()

    @property
    def descriptor(self) -> str:
        return f"polar gauss r={self.n_radial} x trapezoid >={self.n_angular}"


@dataclass(frozen=True)
class StolzAngle:
    """Interior of the convex hull of ``e^{i theta}`` and the disc ``D(0, sigma)``."""

    theta: float
    sigma: float = DEFAULT_APERTURE

    def __post_init__(self):
        if not 0 < self.sigma < 1:
            raise ValueError("aperture must lie in (0, 1)")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))


# --------------------------------------------------------------------------
# radial square functions

def _radial_values(f: PowerSeries, k: int, theta, quad: RadialQuad) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    z = quad.nodes[:, None] * np.exp(1j * theta)[None, :]
    return ps_eval_k(f, k, z)


def gk_function(f: PowerSeries, k: int, theta, quad: RadialQuad):
    """``(int_0^1 |f^{(k)}(r e^{i theta})|^2 (1-r)^{2k-1} dr)^{1/2}``."""
    if k < 1:
        raise ValueError("order k must be >= 1")
    vals = _radial_values(f, k, theta, quad)
    w = quad.weights * (1 - quad.nodes) ** (2 * k - 1)
    out = np.sqrt(w @ np.abs(vals) ** 2)
    return float(out[0]) if np.ndim(theta) == 0 else out


def g_function(f: PowerSeries, theta, quad: RadialQuad):
    """Littlewood-Paley G-function, the order-one case of :func:`gk_function`."""
    return gk_function(f, 1, theta, quad)


def _circle_samples(c: np.ndarray, radii: np.ndarray, M: int) -> np.ndarray:
    """Rows: values of ``sum c_m z^m`` at ``r_i e^{2 pi i j/M}``."""
    powers = radii[:, None] ** np.arange(c.size)[None, :]
    a = powers * c[None, :]
    pad = (-c.size) % M
    if pad:
        a = np.concatenate([a, np.zeros((radii.size, pad), dtype=complex)], axis=1)
    folded = a.reshape(radii.size, -1, M).sum(axis=1)
    return np.fft.ifft(folded, axis=1) * M


def gk_profile(f: PowerSeries, k: int, M: int, quad: RadialQuad) -> np.ndarray:
    """``G_k(f)`` at the M equispaced angles ``2 pi j / M``."""
    if k < 1:
        raise ValueError("order k must be >= 1")
    vals = _circle_samples(ps_diff(f, k).coeffs, quad.nodes, M)
    w = quad.weights * (1 - quad.nodes) ** (2 * k - 1)
    return np.sqrt(w @ np.abs(vals) ** 2)


def gk_lp_norm(f: PowerSeries, k: int, p: float, M: int, quad: RadialQuad) -> float:
    """``((1/M) sum_j G_k(f)(2 pi j/M)^p)^{1/p}``."""
    if p <= 0:
        raise ValueError("p must be positive")
    g = gk_profile(f, k, M, quad)
    return float(np.mean(g**p) ** (1 / p))


# --------------------------------------------------------------------------
# Stolz angles

def stolz_distance(theta: float, z) -> np.ndarray:
    """``min_{t in (0,1]} |z - (1-t) e^{i theta}| / t``.

    Writing ``u = 1/t`` this is the distance from 0 to the ray
    ``e^{i theta} + u (z - e^{i theta})``, u >= 1.
    """
    z = np.asarray(z, dtype=complex)
    v = np.exp(1j * theta)
    d = z - v
    dd = np.abs(d) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.where(dd > 0, -np.real(np.conj(d) * v) / dd, 1.0)
    u = np.maximum(u, 1.0)
    return np.abs(v + u * d)


def stolz_contains(G: StolzAngle, z):
    """Membership of ``z`` in the closed Stolz region (vectorized)."""
    out = stolz_distance(G.theta, z) <= G.sigma
    return bool(out) if np.ndim(out) == 0 else out


def arc_halfwidth(sigma: float, r) -> np.ndarray:
    """Half-angle of the arc ``{|z| = r}`` inside a Stolz angle with vertex at 1.

    pi for ``r <= sigma``; for ``sigma < r < 1`` the arc ends on a tangent
    line from 1 to the circle ``|z| = sigma``.
    """
    r = np.asarray(r, dtype=float)
    ca = math.sqrt(1 - sigma * sigma)
    rr = np.clip(r, sigma, 1.0)
    s = ca - np.sqrt(rr * rr - sigma * sigma)
    phi = np.arctan2(s * sigma, 1 - s * ca)
    phi = np.where(r <= sigma, math.pi, phi)
    return np.where(r >= 1, 0.0, phi)


def _kernel(d: np.ndarray, phi: float) -> np.ndarray:
    """``int_{-phi}^{phi} e^{i d t} dt``."""
    out = np.empty(d.shape)
    nz = d != 0
    out[nz] = 2 * np.sin(d[nz] * phi) / d[nz]
    out[~nz] = 2 * phi
    return out


def _area_coefficients(f: PowerSeries, sigma: float, quad2d: AreaQuad):
    """Angular Fourier data for ``S_f(theta)^2 = const + sum_d B_d e^{i d theta}``."""
    b = ps_diff(f, 1).coeffs
    m = np.arange(b.size)
    inner = float(np.sum(np.abs(b) ** 2 * sigma ** (2 * m + 2) / (m + 1)))
    t, wt = _gauss01(quad2d.n_radial)
    r = sigma + (1 - sigma) * t * t
    w = wt * 2 * (1 - sigma) * t * r / math.pi
    L = quad2d.angular_for(f.degree)
    vals = _circle_samples(b, r, L)
    A = np.fft.fft(np.abs(vals) ** 2, axis=1) / L
    d = np.fft.fftfreq(L, 1.0 / L)
    phis = arc_halfwidth(sigma, r)
    K = np.stack([_kernel(d, ph) for ph in phis])
    B = np.sum((w[:, None] * K) * A, axis=0)
    return inner, d.astype(int), B


def lusin_area_profile(f: PowerSeries, sigma: float, M: int, quad2d: AreaQuad) -> np.ndarray:
    """``S_f`` at the M angles ``2 pi j / M`` for aperture ``sigma``."""
    inner, d, B = _area_coefficients(f, sigma, quad2d)
    folded = np.zeros(M, dtype=complex)
    np.add.at(folded, d % M, B)
    s2 = inner + (np.fft.ifft(folded) * M).real
    return np.sqrt(np.maximum(s2, 0.0))


def lusin_area(f: PowerSeries, G: StolzAngle, quad2d: AreaQuad | None = None) -> float:
    """``(int_{Gamma_sigma(e^{i theta})} |f'|^2 dA)^{1/2}``.

    Radially: Gauss-Legendre on [0, sigma] folded into a closed form, and on
    [sigma, 1] in ``t`` with ``r = sigma + (1-sigma) t^2`` (removes the
    square-root kink of the arc width at ``r = sigma``).  Angularly: the arc
    integral of ``|f'|^2`` is taken exactly from its Fourier coefficients.
    """
    quad2d = AreaQuad() if quad2d is None else quad2d
    inner, d, B = _area_coefficients(f, G.sigma, quad2d)
    s2 = inner + float(np.real(np.sum(B * np.exp(1j * d * G.theta))))
    return math.sqrt(max(s2, 0.0))


def fs_ratio(f: PowerSeries, p: float, sigma: float = DEFAULT_APERTURE, M: int = 256,
             quad2d: AreaQuad | None = None, hardy_M: int | None = None) -> float:
    """``(|f(0)|^p + mean_j S_f(theta_j)^p) / ||f||_p^p``."""
    quad2d = AreaQuad() if quad2d is None else quad2d
    h = hardy_norm(f, p, hardy_M, check=False).value
    if h == 0:
        raise ZeroFunction("Fefferman-Stein ratio of the zero function")
    S = lusin_area_profile(f, sigma, M, quad2d)
    return float((abs(f.coeffs[0]) ** p + np.mean(S**p)) / h**p)


# --------------------------------------------------------------------------
# pointwise derivative estimate

def disc_area_integral(fn, center: complex, radius: float, quad2d: AreaQuad) -> float:
    """Normalized-area integral of ``fn`` over ``D(center, radius)``.

    Gauss-Legendre in ``s = rho^2`` on ``[0, radius^2]``, trapezoid in angle.
    """
    s, ws = _gauss01(quad2d.n_radial)
    rho = radius * np.sqrt(s)
    t = 2 * np.pi * np.arange(quad2d.n_angular) / quad2d.n_angular
    z = center + rho[:, None] * np.exp(1j * t)[None, :]
    vals = fn(z)
    return float(radius * radius * np.sum(ws * np.mean(vals, axis=1)))


def lemma1_constant(n: int) -> float:
    return math.factorial(n) * math.factorial(n - 1) * 4.0**n


def lemma1_check(f: PowerSeries, z: complex, n: int, quad2d: AreaQuad | None = None):
    """``(|f^{(n)}(z)|^2, C_n (1-|z|)^{-2n} int_{D(z,(1-|z|)/2)} |f'|^2 dA)``.

    ``C_n = n! (n-1)! 4^n``; the first entry never exceeds the second.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if abs(z) >= 1:
        raise ValueError("z must lie in the open disc")
    if quad2d is None:
        quad2d = AreaQuad(n_radial=max(8, f.degree // 2 + 2), n_angular=max(32, 2 * f.degree + 2))
    lhs = float(abs(ps_eval_k(f, n, z)) ** 2)
    rad = (1 - abs(z)) / 2
    fp = ps_diff(f, 1)
    area = disc_area_integral(lambda w: np.abs(ps_eval_k(fp, 0, w)) ** 2, z, rad, quad2d)
    rhs = lemma1_constant(n) / (1 - abs(z)) ** (2 * n) * area
    return lhs, rhs


def angle_table(f: PowerSeries, k: int, M: int, quad: RadialQuad,
                sigma: float = DEFAULT_APERTURE, quad2d: AreaQuad | None = None) -> list[dict]:
    """One row per angle with G, G_k and S values (plot-ready)."""
    quad2d = AreaQuad() if quad2d is None else quad2d
    G1 = gk_profile(f, 1, M, quad)
    Gk = gk_profile(f, k, M, quad)
    S = lusin_area_profile(f, sigma, M, quad2d)
    theta = 2 * np.pi * np.arange(M) / M
    return [
        {"theta": float(t), "G": float(a), f"G{k}": float(b), "S": float(c)}
        for t, a, b, c in zip(theta, G1, Gk, S)
    ]
