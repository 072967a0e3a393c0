"""Circle sampling, discrete Fourier analysis and the Herglotz/Poisson transforms.

All circle integrals use the uniform trapezoid rule at the angles
``2 pi j / M``, which is exact for trigonometric polynomials of degree < M.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ComplexData
from .series import PowerSeries


def default_samples(degree: int) -> int:
    """Oversampled count used when callers do not choose M."""
    return 8 * (degree + 1)


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    radius: float
    samples: np.ndarray

    def __post_init__(self):
        v = np.array(self.samples, dtype=np.complex128, copy=True).reshape(-1)
        if v.size < 1:
            raise ValueError("a boundary function needs at least one sample")
        if not np.all(np.isfinite(v)):
            raise ValueError("boundary samples must be finite")
        if not 0 < self.radius <= 1:
            raise ValueError("radius must lie in (0, 1]")
        v.flags.writeable = False
        object.__setattr__(self, "samples", v)

    @property
    def M(self) -> int:
        return self.samples.size

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def points(self) -> np.ndarray:
        return self.radius * np.exp(1j * self.angles)

    def map(self, fn) -> "BoundaryFunction":
        return BoundaryFunction(self.radius, fn(self.samples))

    def to_dict(self) -> dict:
        return {
            "radius": float(self.radius),
            "re": [float(x) for x in self.samples.real],
            "im": [float(x) for x in self.samples.imag],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundaryFunction":
        return cls(float(d["radius"]), np.asarray(d["re"]) + 1j * np.asarray(d["im"]))


def sample(f: PowerSeries, r: float, M: int) -> BoundaryFunction:
    """Values of ``f`` at ``r e^{2 pi i j / M}``, j = 0..M-1.

    Coefficients are folded modulo M and pushed through one inverse FFT;
    this is exact polynomial evaluation on the circle (no aliasing error).
    """
    if M < 1:
        raise ValueError("M must be positive")
    if not 0 < r <= 1:
        raise ValueError("radius must lie in (0, 1]")
    c = f.coeffs * r ** np.arange(f.degree + 1)
    pad = (-c.size) % M
    folded = np.concatenate([c, np.zeros(pad, dtype=complex)]).reshape(-1, M).sum(axis=0)
    return BoundaryFunction(r, np.fft.ifft(folded) * M)


def fourier_coeffs(u: BoundaryFunction) -> tuple[np.ndarray, np.ndarray]:
    """Discrete Fourier coefficients ``(1/M) sum_j v_j e^{-2 pi i k j/M}``.

    Returns ``(k, uhat)`` with k ascending over one full period
    (``-M//2 .. M//2`` for odd M, ``-M/2 .. M/2 - 1`` for even M).
    """
    M = u.M
    uhat = np.fft.fftshift(np.fft.fft(u.samples) / M)
    k = np.fft.fftshift(np.fft.fftfreq(M, d=1.0 / M)).astype(int)
    return k, uhat


def _real_samples(u: BoundaryFunction, tol: float = 1e-12) -> np.ndarray:
    v = u.samples
    scale = max(1.0, float(np.max(np.abs(v))))
    if np.max(np.abs(v.imag)) > tol * scale:
        raise ComplexData("Herglotz/Poisson transforms need real boundary data")
    return v.real


def herglotz(u: BoundaryFunction, N: int) -> PowerSeries:
    """Herglotz transform ``int u(zeta) (zeta + z)/(zeta - z) dm(zeta)`` to degree N.

    The result is ``uhat_0 + 2 sum_{k=1}^N uhat_k z^k``; its real part is the
    Poisson extension of ``u``.
    """
    if u.radius != 1:
        raise ValueError("herglotz expects samples on the unit circle")
    v = _real_samples(u)
    M = u.M
    if N > M // 2 - 1:
        raise ValueError(f"degree {N} exceeds M/2 - 1 = {M // 2 - 1}")
    uhat = np.fft.fft(v)[: N + 1] / M
    c = 2 * uhat
    c[0] = uhat[0].real
    return PowerSeries(c)


def poisson_real(u: BoundaryFunction, z):
    """Poisson integral ``(1/M) sum_j v_j (1-|z|^2)/|zeta_j - z|^2`` at ``z``."""
    if u.radius != 1:
        raise ValueError("poisson_real expects samples on the unit circle")
    v = _real_samples(u)
    zz = np.asarray(z, dtype=complex)
    zeta = u.points
    kern = (1 - np.abs(zz[..., None]) ** 2) / np.abs(zeta - zz[..., None]) ** 2
    out = kern @ v / u.M
    return out[()] if out.ndim == 0 else out


def circle_mean_p(u: BoundaryFunction, p: float) -> float:
    """``((1/M) sum_j |v_j|^p)^{1/p}``."""
    if p <= 0:
        raise ValueError("p must be positive")
    a = np.abs(u.samples)
    if p == 2:
        return float(np.sqrt(np.mean(a * a)))
    return float(np.mean(a**p) ** (1.0 / p))
