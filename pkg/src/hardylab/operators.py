"""Integration operators acting on power series.

``T_g f = I(f g')`` is the classical integration operator with symbol g.
Its generalization of order n is

    T_{g,a} f = I^n( sum_{k=0}^{n-1} a_k f^{(k)} g^{(n-k)} ),   a_0 = 1,

built from the pieces ``T^{n,k}_g f = I^n(f^{(k)} g^{(n-k)})``.  The
``*_residual`` functions return the difference between both sides of an
exact identity as a series, leaving the tolerance to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from .errors import BadOrders, SymbolNotVanishing
from .series import PowerSeries, linear_combination, ps_diff, ps_int, ps_mul


@dataclass(frozen=True, eq=False)
class OperatorSpec:
    """Order ``n``, symbol ``g`` and lower-order weights ``a_1 .. a_{n-1}``."""

    n: int
    g: PowerSeries
    a: tuple = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise BadOrders("operator order n must be >= 1")
        a = tuple(complex(x) for x in self.a)
        if len(a) != self.n - 1:
            raise BadOrders(f"order {self.n} needs {self.n - 1} weights, got {len(a)}")
        object.__setattr__(self, "a", a)

    @property
    def weights(self) -> tuple:
        """``(a_0, a_1, .., a_{n-1})`` with ``a_0 = 1``."""
        return (1 + 0j,) + self.a

    @property
    def top_index(self) -> int:
        """``max{l : a_l != 0}``, or 0 when every ``a_l`` vanishes."""
        nz = [l for l, x in enumerate(self.a, start=1) if x != 0]
        return max(nz) if nz else 0

    def with_symbol(self, g: PowerSeries) -> "OperatorSpec":
        return OperatorSpec(self.n, g, self.a)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "symbol": self.g.to_dict(),
            "a_re": [x.real for x in self.a],
            "a_im": [x.imag for x in self.a],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OperatorSpec":
        a = [complex(r, i) for r, i in zip(d.get("a_re", []), d.get("a_im", []))]
        return cls(int(d["n"]), PowerSeries.from_dict(d["symbol"]), tuple(a))


def _product(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    return ps_mul(f, g, f.degree + g.degree)


def apply_mult(phi: PowerSeries, f: PowerSeries) -> PowerSeries:
    """Multiplication operator ``M_phi f = phi f``."""
    return _product(phi, f)


def apply_Tg(g: PowerSeries, f: PowerSeries) -> PowerSeries:
    return ps_int(_product(f, ps_diff(g, 1)), 1)


def apply_Tnk(g: PowerSeries, n: int, k: int, f: PowerSeries) -> PowerSeries:
    """``T^{n,k}_g f = I^n(f^{(k)} g^{(n-k)})`` for ``0 <= k < n``."""
    if not 0 <= k < n:
        raise BadOrders(f"need 0 <= k < n, got n={n}, k={k}")
    return ps_int(_product(ps_diff(f, k), ps_diff(g, n - k)), n)


def apply_Tga(spec: OperatorSpec, f: PowerSeries) -> PowerSeries:
    n, g = spec.n, spec.g
    terms = [
        (a_k, _product(ps_diff(f, k), ps_diff(g, n - k)))
        for k, a_k in enumerate(spec.weights)
        if a_k != 0
    ]
    return ps_int(linear_combination(terms), n)


def leading_derivative(spec: OperatorSpec, f: PowerSeries) -> PowerSeries:
    """``(T_{g,a} f)^{(n)}`` without the final integration."""
    n, g = spec.n, spec.g
    return linear_combination([
        (a_k, _product(ps_diff(f, k), ps_diff(g, n - k))) for k, a_k in enumerate(spec.weights)
    ])


def ibp_residual(g: PowerSeries, n: int, k: int, f: PowerSeries) -> PowerSeries:
    """``T^{n,k} f - T^{n+1,k} f - T^{n+1,k+1} f``.

    Integration by parts leaves exactly the monomial
    ``f^{(k)}(0) g^{(n-k)}(0) z^n / n!`` (see :func:`ibp_correction`).
    """
    if not 0 <= k < n:
        raise BadOrders(f"need 0 <= k < n, got n={n}, k={k}")
    return linear_combination([
        (1, apply_Tnk(g, n, k, f)),
        (-1, apply_Tnk(g, n + 1, k, f)),
        (-1, apply_Tnk(g, n + 1, k + 1, f)),
    ])


def ibp_correction(g: PowerSeries, n: int, k: int, f: PowerSeries) -> PowerSeries:
    fk0 = f.coeffs[k] * factorial(k) if k <= f.degree else 0
    gk0 = g.coeffs[n - k] * factorial(n - k) if n - k <= g.degree else 0
    return PowerSeries.monomial(n, fk0 * gk0 / factorial(n))


def binom_decomp_residual(g: PowerSeries, n: int, f: PowerSeries) -> PowerSeries:
    """``T_g f - sum_{k=0}^{n-1} C(n-1, k) T^{n,k}_g f``; a polynomial of degree < n."""
    if n < 1:
        raise BadOrders("n must be >= 1")
    terms = [(1, apply_Tg(g, f))]
    terms += [(-comb(n - 1, k), apply_Tnk(g, n, k, f)) for k in range(n)]
    return linear_combination(terms)


def n2_decomp_residual(g: PowerSeries, a: complex, f: PowerSeries, tol: float = 0.0) -> PowerSeries:
    """Second-order rewrite ``T_{g,a} f = fg + (1-a) II f''g + (a-2) I f'g``.

    Valid when ``g(0) = g'(0) = 0``; returns left side minus right side.
    """
    scale = max(1.0, g.max_abs())
    if abs(g.coeffs[0]) > tol * scale or (g.degree >= 1 and abs(g.coeffs[1]) > tol * scale):
        raise SymbolNotVanishing("the rewrite needs g(0) = g'(0) = 0")
    lhs = apply_Tga(OperatorSpec(2, g, (a,)), f)
    return linear_combination([
        (1, lhs),
        (-1, _product(f, g)),
        (-(1 - a), ps_int(_product(ps_diff(f, 2), g), 2)),
        (-(a - 2), ps_int(_product(ps_diff(f, 1), g), 1)),
    ])


def vanishing_order(f: PowerSeries, tol: float = 0.0) -> int:
    """Index of the first coefficient with modulus above ``tol`` (degree+1 if none)."""
    nz = np.nonzero(np.abs(f.coeffs) > tol)[0]
    return int(nz[0]) if nz.size else f.degree + 1
