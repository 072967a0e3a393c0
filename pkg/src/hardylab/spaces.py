"""Norm estimators for the function spaces that classify symbols.

Every estimator works on a truncated series, so a single number says little
about membership: a polynomial belongs to every space here.  Membership is
read off trends across truncation degrees (:func:`stabilized`), and the
little-oh classes (VMOA, little Bloch) from :func:`decay_profile`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .boundary import circle_mean_p, default_samples, herglotz, sample
from .errors import BadExponent
from .series import PowerSeries, ps_eval_k

STABLE_CHANGE = 0.10


@dataclass(frozen=True)
class NormEstimate:
    value: float
    truncation_degree: int
    grid_descriptor: str
    converged: bool = False
    estimator: str = ""

    def __post_init__(self):
        if not (np.isfinite(self.value) and self.value >= 0):
            raise ValueError(f"norm estimate must be finite and >= 0, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DecayProfile:
    radii: tuple
    values: tuple
    kind: str = ""

    def __post_init__(self):
        if len(self.radii) != len(self.values) or len(self.radii) < 2:
            raise ValueError("profile needs equal-length radii/values, at least 2 entries")

    def to_dict(self) -> dict:
        return {"radii": list(self.radii), "values": list(self.values), "kind": self.kind}

    def csv_rows(self) -> list[dict]:
        return [{"radius": r, "value": v, "kind": self.kind} for r, v in zip(self.radii, self.values)]

    def ratio_last_to_max(self) -> float:
        top = max(self.values)
        return self.values[-1] / top if top > 0 else 0.0


@dataclass(frozen=True)
class DiscGrid:
    """Polar grid: radii (0 allowed) crossed with ``n_angles`` equispaced angles."""

    radii: tuple = field(default_factory=lambda: boundary_ladder())
    n_angles: int = 32

    def points(self) -> np.ndarray:
        t = 2 * np.pi * np.arange(self.n_angles) / self.n_angles
        r = np.asarray(self.radii, dtype=float)
        pts = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
        if np.any(r == 0):
            pts = np.concatenate([[0j], pts[np.abs(pts) > 0]])
        return pts

    @property
    def descriptor(self) -> str:
        r = self.radii
        return f"polar radii={len(r)} [{min(r):.6g}..{max(r):.6g}] x angles={self.n_angles}"


def boundary_ladder(depth: int = 12, include_zero: bool = True) -> tuple:
    """Radii ``1 - 2^{-i}``, i = 1..depth, optionally preceded by 0."""
    rs = [1 - 2.0**-i for i in range(1, depth + 1)]
    return tuple(([0.0] if include_zero else []) + rs)


def stabilized(values: Sequence[float], threshold: float = STABLE_CHANGE) -> bool:
    """True when the last step of a doubling ladder changes the value by < threshold."""
    if len(values) < 2:
        return False
    a, b = values[-2], values[-1]
    if a == b:
        return True
    return abs(b - a) < threshold * max(abs(a), abs(b))


def _grid_sup(f: PowerSeries, k: int, weight, pts: np.ndarray) -> float:
    vals = np.abs(ps_eval_k(f, k, pts)) * weight(np.abs(pts))
    return float(np.max(vals)) if vals.size else 0.0


def hardy_norm(f: PowerSeries, p: float, M: int | None = None, check: bool = True) -> NormEstimate:
    """``||f||_p`` of a polynomial: the circle mean at r = 1.

    Integral means increase with r, so for a polynomial the supremum over
    radii is the boundary value.  With ``check`` the mean is recomputed on
    a doubled grid and ``converged`` records a change below 1%.
    """
    if p <= 0:
        raise BadExponent("p must be positive")
    M = default_samples(f.degree) if M is None else M
    val = circle_mean_p(sample(f, 1.0, M), p)
    converged = False
    if check:
        val2 = circle_mean_p(sample(f, 1.0, 2 * M), p)
        converged = abs(val2 - val) <= 0.01 * max(val, val2) or val == val2
    return NormEstimate(val, f.degree, f"circle r=1 M={M}", converged, f"hardy p={p:g}")


def weighted_deriv_sup(f: PowerSeries, k: int, w: float, grid: DiscGrid) -> NormEstimate:
    """``max |f^{(k)}(z)| (1-|z|^2)^w`` over the grid."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    val = _grid_sup(f, k, lambda r: (1 - r * r) ** w, grid.points())
    return NormEstimate(val, f.degree, grid.descriptor, False, f"weighted_deriv k={k} w={w:g}")


def bloch_norm(f: PowerSeries, grid: DiscGrid | None = None) -> NormEstimate:
    """Bloch seminorm ``sup (1-|z|^2)|f'(z)|`` over the grid."""
    grid = DiscGrid() if grid is None else grid
    est = weighted_deriv_sup(f, 1, 1.0, grid)
    return NormEstimate(est.value, f.degree, grid.descriptor, False, "bloch")


def garsia_local(f: PowerSeries, lam, M: int | None = None, method: str = "poisson") -> np.ndarray:
    """``||f o phi_lam - f(lam)||_{H^2}`` for each lam.

    ``phi_lam(z) = (lam - z)/(1 - conj(lam) z)`` is an automorphism of the
    disc, and the norm equals ``P[|f|^2](lam) - |f(lam)|^2`` under the root.

    ``method="poisson"`` evaluates that identity exactly: ``|f|^2`` is a
    trigonometric polynomial, and its Poisson extension is the real part of
    its Herglotz transform.  ``method="mobius"`` composes with ``phi_lam``
    on M circle points; the composition is not a polynomial, so M must grow
    like ``deg f / (1 - |lam|)`` for accuracy near the boundary.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if method == "poisson":
        Ms = max(M or 0, 2 * f.degree + 2)
        u = sample(f, 1.0, Ms).map(lambda v: np.abs(v) ** 2)
        P = ps_eval_k(herglotz(u, f.degree), 0, lam).real
        return np.sqrt(np.maximum(P - np.abs(ps_eval_k(f, 0, lam)) ** 2, 0.0))
    if method != "mobius":
        raise ValueError(f"unknown method {method!r}")
    M = default_samples(f.degree) if M is None else M
    zeta = np.exp(2j * np.pi * np.arange(M) / M)
    out = np.empty(lam.size)
    for i, l in enumerate(lam):
        w = (l - zeta) / (1 - np.conj(l) * zeta)
        vals = ps_eval_k(f, 0, w) - ps_eval_k(f, 0, l)
        out[i] = np.sqrt(np.mean(np.abs(vals) ** 2))
    return out


def garsia_norm(f: PowerSeries, lam_grid, M: int | None = None,
                method: str = "poisson") -> NormEstimate:
    """BMOA estimate: Garsia norm ``sup_lam ||f o phi_lam - f(lam)||_2``."""
    lam_grid = np.asarray(lam_grid, dtype=complex).ravel()
    if np.any(np.abs(lam_grid) >= 1):
        raise ValueError("lambda grid must lie in the open disc")
    vals = garsia_local(f, lam_grid, M, method)
    desc = (f"lambda points={lam_grid.size} max|lam|={np.max(np.abs(lam_grid)):.6g} "
            f"{method} M={M or 'auto'}")
    return NormEstimate(float(np.max(vals)), f.degree, desc, False, f"garsia {method}")


def decay_profile(f: PowerSeries, kind: str, radii: Sequence[float],
                  n_angles: int = 32, M: int | None = None) -> DecayProfile:
    """Sup of the local Bloch or Garsia quantity on each circle ``|z| = r``."""
    radii = tuple(float(r) for r in radii)
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0 or radii[-1] >= 1:
        raise ValueError("radii must be ascending inside (0, 1)")
    t = np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    vals = []
    for r in radii:
        pts = r * t
        if kind == "bloch":
            vals.append(float(np.max(np.abs(ps_eval_k(f, 1, pts))) * (1 - r * r)))
        elif kind == "garsia":
            vals.append(float(np.max(garsia_local(f, pts, M))))
        else:
            raise ValueError(f"unknown profile kind {kind!r}")
    return DecayProfile(radii, tuple(vals), kind)


def lipschitz_norm(f: PowerSeries, beta: float, grid: DiscGrid | None = None) -> NormEstimate:
    """Lambda_beta estimate ``sup (1-|z|)^{2-beta} |f''(z)|`` (covers beta = 1)."""
    if not 0 < beta <= 1:
        raise BadExponent(f"Lipschitz exponent must lie in (0, 1], got {beta}")
    grid = DiscGrid() if grid is None else grid
    val = _grid_sup(f, 2, lambda r: (1 - r) ** (2 - beta), grid.points())
    return NormEstimate(val, f.degree, grid.descriptor, False, f"lipschitz beta={beta:g}")


def dirichlet_integral(f: PowerSeries) -> float:
    """``int_D |f'|^2 dA = sum k |c_k|^2`` with normalized area measure."""
    k = np.arange(f.degree + 1)
    return float(np.sum(k * np.abs(f.coeffs) ** 2))


def hs_profile(f: PowerSeries, s: float, degrees: Sequence[int]) -> DecayProfile:
    """``hardy_norm(truncate(f, N), s)`` along ascending truncation degrees."""
    if s <= 0:
        raise BadExponent("s must be positive")
    degrees = [int(d) for d in degrees]
    vals = [hardy_norm(f.truncate(d), s, check=False).value for d in degrees]
    return DecayProfile(tuple(float(d) for d in degrees), tuple(vals), f"hs s={s:g}")


def coefficient_l2(f: PowerSeries) -> float:
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))
