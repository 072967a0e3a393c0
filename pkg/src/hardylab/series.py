"""Truncated power series on the unit disc.

A :class:`PowerSeries` holds the Taylor coefficients ``c_0 .. c_N`` of an
analytic function.  The truncation degree ``N`` is part of the value: every
operation states the degree of its result, and callers truncate explicitly
with :meth:`PowerSeries.truncate`.

Coefficients are stored as read-only ``complex128`` arrays, so series can be
shared freely.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from scipy.signal import fftconvolve, lfilter

from .errors import ZeroConstantTerm

# direct convolution below this many multiply-adds, FFT above
_FFT_WORK = 4_000_000
_FFT_MIN_LEN = 64


def _freeze(c) -> np.ndarray:
    a = np.array(c, dtype=np.complex128, copy=True).reshape(-1)
    if a.size == 0:
        a = np.zeros(1, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ValueError("power series coefficients must be finite")
    a.flags.writeable = False
    return a


class PowerSeries:
    """Immutable truncated Taylor series ``sum_k c_k z^k`` for ``k <= degree``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex]):
        self._c = _freeze(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs)

    # -- construction -------------------------------------------------------
    @classmethod
    def zero(cls, degree: int = 0) -> "PowerSeries":
        return cls(np.zeros(degree + 1))

    @classmethod
    def const(cls, c: complex, degree: int = 0) -> "PowerSeries":
        a = np.zeros(degree + 1, dtype=complex)
        a[0] = c
        return cls(a)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "PowerSeries":
        a = np.zeros(k + 1, dtype=complex)
        a[k] = c
        return cls(a)

    # -- basic protocol -----------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self._c[:6])
        tail = ", ..." if self._c.size > 6 else ""
        return f"PowerSeries(degree={self.degree}, [{head}{tail}])"

    def padded(self, degree: int) -> np.ndarray:
        """Coefficients zero-padded (or cut) to ``degree``; a writable copy."""
        out = np.zeros(degree + 1, dtype=np.complex128)
        m = min(degree, self.degree) + 1
        out[:m] = self._c[:m]
        return out

    def truncate(self, degree: int) -> "PowerSeries":
        return PowerSeries(self.padded(degree))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        d = max(self.degree, other.degree)
        return bool(np.array_equal(self.padded(d), other.padded(d)))

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            d = max(self.degree, other.degree)
            return PowerSeries(self.padded(d) + other.padded(d))
        if np.isscalar(other):
            a = self._c.copy()
            a[0] += other
            return PowerSeries(a)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(-self._c)

    def __sub__(self, other) -> "PowerSeries":
        return self + (-other)

    def __rsub__(self, other) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return ps_mul(self, other, self.degree + other.degree)
        if np.isscalar(other):
            return PowerSeries(self._c * other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, z):
        return ps_eval_k(self, 0, z)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c)))

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "re": [float(x) for x in self._c.real],
            "im": [float(x) for x in self._c.imag],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PowerSeries":
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
        if re.size != d["degree"] + 1 or im.size != re.size:
            raise ValueError("series record: re/im length must equal degree + 1")
        return cls(re + 1j * im)


def _convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if min(a.size, b.size) > _FFT_MIN_LEN and a.size * b.size > _FFT_WORK:
        return fftconvolve(a, b)
    return np.convolve(a, b)


def ps_mul(f: PowerSeries, g: PowerSeries, N_out: int) -> PowerSeries:
    """Cauchy product of ``f`` and ``g`` kept through degree ``N_out``."""
    if N_out < 0:
        raise ValueError("N_out must be nonnegative")
    a = f.coeffs[: N_out + 1]
    b = g.coeffs[: N_out + 1]
    c = _convolve(a, b)[: N_out + 1]
    out = np.zeros(N_out + 1, dtype=np.complex128)
    out[: c.size] = c
    return PowerSeries(out)


def _rising(m: np.ndarray, k: int) -> np.ndarray:
    """(m+1)(m+2)...(m+k) elementwise, as floats."""
    out = np.ones(m.shape, dtype=float)
    for j in range(1, k + 1):
        out *= m + j
    return out


def ps_diff(f: PowerSeries, k: int = 1) -> PowerSeries:
    """k-th derivative; degree drops to ``N - k`` (zero series if ``k > N``)."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k == 0:
        return f
    if k > f.degree:
        return PowerSeries.zero(0)
    m = np.arange(f.degree - k + 1, dtype=float)
    return PowerSeries(f.coeffs[k:] * _rising(m, k))


def ps_int(f: PowerSeries, n: int = 1) -> PowerSeries:
    """``I^n f``: n-fold integration from 0; degree grows to ``N + n``."""
    if n < 0:
        raise ValueError("integration order must be nonnegative")
    if n == 0:
        return f
    m = np.arange(f.degree + 1, dtype=float)
    out = np.zeros(f.degree + n + 1, dtype=np.complex128)
    out[n:] = f.coeffs / _rising(m, n)
    return PowerSeries(out)


def ps_eval_k(f: PowerSeries, k: int, z):
    """Value of ``f^{(k)}`` at ``z`` (scalar or array) by Horner's rule."""
    c = ps_diff(f, k).coeffs
    zz = np.asarray(z, dtype=np.complex128)
    acc = np.full(zz.shape, c[-1], dtype=np.complex128)
    for ck in c[-2::-1]:
        acc = acc * zz + ck
    return acc[()] if acc.ndim == 0 else acc


def ps_pow(f: PowerSeries, s: complex, N: int | None = None) -> PowerSeries:
    """Principal power ``f**s`` through degree ``N`` (default: degree of f).

    Solves ``f h' = s f' h`` order by order, starting from
    ``h_0 = exp(s Log c_0)``.
    """
    c = f.coeffs
    if c[0] == 0:
        raise ZeroConstantTerm("ps_pow needs a nonzero constant term")
    N = f.degree if N is None else N
    d = min(f.degree, N)
    h = np.zeros(N + 1, dtype=np.complex128)
    h[0] = np.exp(s * np.log(c[0]))
    if N == 0:
        return PowerSeries(h)
    js = np.arange(1, d + 1, dtype=float)
    fj = c[1 : d + 1]
    for m in range(1, N + 1):
        top = min(m, d)
        w = ((s + 1) * js[:top] - m) * fj[:top]
        h[m] = np.dot(w, h[m - 1 :: -1][:top]) / (m * c[0])
    return PowerSeries(h)


def ps_div(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Series quotient ``f / g`` through degree ``min(N_f, N_g)``."""
    if g.coeffs[0] == 0:
        raise ZeroConstantTerm("ps_div needs g(0) != 0")
    N = min(f.degree, g.degree)
    impulse = np.zeros(N + 1, dtype=np.complex128)
    impulse[0] = 1.0
    return PowerSeries(lfilter(f.coeffs[: N + 1], g.coeffs[: N + 1], impulse))


def ps_log(f: PowerSeries) -> PowerSeries:
    """Principal logarithm: ``Log c_0 + I(f'/f)``, same degree as f."""
    if f.coeffs[0] == 0:
        raise ZeroConstantTerm("ps_log needs f(0) != 0")
    if f.degree == 0:
        return PowerSeries([np.log(f.coeffs[0])])
    q = ps_div(ps_diff(f, 1), f.truncate(f.degree - 1))
    out = ps_int(q, 1).padded(f.degree)
    out[0] = np.log(f.coeffs[0])
    return PowerSeries(out)


def ps_dilate(f: PowerSeries, rho: float) -> PowerSeries:
    """``f(rho z)``."""
    if not 0 < rho <= 1:
        raise ValueError("dilation radius must lie in (0, 1]")
    return PowerSeries(f.coeffs * rho ** np.arange(f.degree + 1))


def ps_rotate(f: PowerSeries, phi: float) -> PowerSeries:
    """``f(e^{i phi} z)``."""
    return PowerSeries(f.coeffs * np.exp(1j * phi * np.arange(f.degree + 1)))


def remove_jets(f: PowerSeries, k: int) -> PowerSeries:
    """Zero the coefficients ``c_0 .. c_{k-1}`` (so ``f^{(i)}(0) = 0`` for i < k)."""
    a = f.coeffs.copy()
    a[:k] = 0
    return PowerSeries(a)


def linear_combination(terms: Sequence[tuple[complex, PowerSeries]]) -> PowerSeries:
    d = max(s.degree for _, s in terms)
    acc = np.zeros(d + 1, dtype=np.complex128)
    for w, s in terms:
        acc[: s.degree + 1] += w * s.coeffs
    return PowerSeries(acc)

