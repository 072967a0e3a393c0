"""Verification suites: each checks a family of identities or inequalities
against an independent computation and reports the worst deviation."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from .constructions import OdeProblem, cohn_factor, ode_residual, ode_solve, reporting_grid
from .boundary import sample
from .operators import binom_decomp_residual, ibp_correction, ibp_residual, n2_decomp_residual
from .paley import AreaQuad, RadialQuad, fs_ratio, gk_lp_norm, lemma1_check, lemma1_constant
from .sepalg import poch_matrix, separated_bound, separation_coeffs, vandermonde_det
from .series import PowerSeries, ps_eval_k, remove_jets
from .spaces import coefficient_l2, dirichlet_integral, hardy_norm
from .testfam import (TestParams, family_norm_bound, lambda_grid, test_function,
                      vertex_derivative)

DEFAULT_SEED = 20240229


@dataclass
class SuiteResult:
    name: str
    passed: bool
    metrics: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={_short(v)}" for k, v in self.metrics.items()
                          if isinstance(v, (int, float, bool)))
        return f"{self.name}: {status} ({shown}) [{self.elapsed:.2f}s]"

    def to_dict(self) -> dict:
        # timing stays out so that reports are reproducible byte for byte
        return {"name": self.name, "passed": self.passed, "metrics": self.metrics}


def _short(v) -> str:
    return f"{v:.3g}" if isinstance(v, float) else str(v)


def random_series(rng: np.random.Generator, degree: int, scale: float = 1.0) -> PowerSeries:
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return PowerSeries(scale * c / math.sqrt(2))


# --------------------------------------------------------------------------

def identities(seed: int = DEFAULT_SEED, tol: float = 1e-12, pairs: int = 100,
               max_degree: int = 16) -> dict:
    """Integration-by-parts, binomial and second-order rewrite residuals."""
    rng = np.random.default_rng(seed)
    ibp = binom = n2 = 0.0
    for _ in range(pairs):
        f = random_series(rng, int(rng.integers(0, max_degree + 1)))
        g = random_series(rng, int(rng.integers(0, max_degree + 1)))
        for n in range(1, 6):
            for k in range(n):
                d = ibp_residual(g, n, k, f) - ibp_correction(g, n, k, f)
                ibp = max(ibp, d.max_abs())
            tail = binom_decomp_residual(g, n, f).coeffs[n:]
            binom = max(binom, float(np.max(np.abs(tail), initial=0.0)))
        g0 = PowerSeries(np.concatenate([[0, 0], g.coeffs]))
        a = complex(*rng.standard_normal(2))
        n2 = max(n2, n2_decomp_residual(g0, a, f).max_abs())
    worst = max(ibp, binom, n2)
    return {"ibp_max": ibp, "binom_tail_max": binom, "n2_max": n2, "passed": worst <= tol}


def _polar_dirichlet_oracle(f: PowerSeries, n_r: int, n_t: int) -> float:
    """``(1/pi) int_D |f'|^2 dx dy`` by Gauss-Legendre in r and direct angular sums."""
    x, w = roots_legendre(n_r)
    r, w = (x + 1) / 2, w / 2
    t = 2 * np.pi * np.arange(n_t) / n_t
    z = r[:, None] * np.exp(1j * t)[None, :]
    vals = np.abs(ps_eval_k(f, 1, z)) ** 2
    return float(np.sum(w * r * vals.mean(axis=1)) * 2)


def parseval(seed: int = DEFAULT_SEED, tol: float = 1e-12, count: int = 20,
             degree: int = 32) -> dict:
    """H^2 norm against coefficient l2, Dirichlet integral against polar quadrature."""
    rng = np.random.default_rng(seed)
    h2 = dirich = 0.0
    for _ in range(count):
        f = random_series(rng, degree)
        h2 = max(h2, abs(hardy_norm(f, 2).value - coefficient_l2(f)) / coefficient_l2(f))
        ref = _polar_dirichlet_oracle(f, degree + 2, 4 * degree + 4)
        dirich = max(dirich, abs(dirichlet_integral(f) - ref) / ref)
    return {"hardy2_rel": h2, "dirichlet_rel": dirich,
            "passed": h2 <= tol and dirich <= 1e-8}


def lemma1(seed: int = DEFAULT_SEED, count: int = 20, degree: int = 16) -> dict:
    """Pointwise derivative bound by a local Dirichlet integral."""
    rng = np.random.default_rng(seed)
    radii = (0.0, 0.5, 0.75, 0.875, 0.9)
    pts = lambda_grid(radii, 16)
    worst = 0.0
    coeff_ok = True
    violations = 0
    for _ in range(count):
        f = random_series(rng, degree)
        dsum = dirichlet_integral(f)
        for n in range(1, 5):
            fn0 = math.factorial(n) * abs(f.coeffs[n])
            coeff_ok &= fn0**2 <= math.factorial(n) * math.factorial(n - 1) * dsum
            for z in pts:
                lhs, rhs = lemma1_check(f, z, n)
                worst = max(worst, lhs / rhs)
                violations += lhs > rhs
    return {"max_lhs_over_rhs": worst, "violations": violations, "coefficient_ok": coeff_ok,
            "constant_n4": lemma1_constant(4), "passed": violations == 0 and coeff_ok}


def drift_grid() -> np.ndarray:
    return lambda_grid((0.0, 0.5, 0.75, 0.9, 0.95, 0.99), 8)


def testfam(seed: int = DEFAULT_SEED, tol: float = 1e-8) -> dict:
    """Vertex derivatives against series evaluation; stability of the family bound."""
    lam = lambda_grid((0.0, 0.3, 0.6, 0.9), 8)
    vd = 0.0
    for p in (1.0, 2.0):
        for gamma in (2.0, 3.0, 4.0):
            for l in lam:
                tp = TestParams(l, gamma, p)
                f = test_function(tp)
                for k in range(5):
                    exact = vertex_derivative(tp, k)
                    got = complex(ps_eval_k(f, k, l))
                    vd = max(vd, abs(got - exact) / max(abs(exact), 1e-300))
    grid = drift_grid()
    inner = grid[np.abs(grid) <= 0.9 + 1e-12]
    drift = {}
    for p in (1.0, 2.0):
        c_in = family_norm_bound(2.0, p, inner)
        c_all = family_norm_bound(2.0, p, grid)
        drift[f"p={p:g}"] = abs(c_all - c_in) / c_in
    worst_drift = max(drift.values())
    return {"vertex_rel": vd, "drift_gamma2": drift, "drift_max": worst_drift,
            "passed": vd <= tol and worst_drift < 0.05}


def sepalg(seed: int = DEFAULT_SEED, tol: float = 1e-10) -> dict:
    """Pochhammer determinant, separation residual, and dominance of separated bounds.

    The absolute residual is checked on the default sets ``2, 3, .., n+1``
    with n <= 6; past that, rounding r to double alone leaves residuals above
    1e-10, so larger systems are held to the normalized (backward) residual.
    """
    rng = np.random.default_rng(seed)
    det_rel = resid = backward = resid_all = 0.0
    dominated = True
    for n in range(1, 9):
        for g0 in (1.5, 2.0, 3.0):
            gam = g0 + np.arange(n)
            P = poch_matrix(gam)
            direct = np.linalg.det(P)
            det_rel = max(det_rel, abs(vandermonde_det(gam) - direct) / abs(direct))
            F = rng.standard_normal((n, 64)) + 1j * rng.standard_normal((n, 64))
            C = np.max(np.abs(P @ F), axis=1)
            for k in range(n):
                sep = separation_coeffs(gam, k)
                resid_all = max(resid_all, sep.residual)
                backward = max(backward, sep.backward_error)
                if g0 == 2.0 and n <= 6:
                    resid = max(resid, sep.residual)
                bound = separated_bound(C, sep.r)
                dominated &= bool(np.all(np.abs(F[k]) <= bound * (1 + 1e-12)))
    return {"det_rel": det_rel, "separation_residual": resid, "separation_backward": backward,
            "separation_residual_n8": resid_all, "dominated": dominated,
            "passed": det_rel <= tol and resid <= tol and backward <= tol and dominated}


def littlewood(seed: int = DEFAULT_SEED, degrees=(128, 256, 512), orders=(1, 2, 3),
               exponents=(0.5, 1.0, 2.0, 4.0), gamma: float = 3.0, sigma: float = 0.5) -> dict:
    """Ratio bands of square-function norms to Hardy norms across truncation degrees."""
    # lam = 0 gives a constant, which jet removal annihilates
    lam = lambda_grid((0.25, 0.5, 0.75, 0.9), 4)
    bands: dict[str, list] = {}
    for N in degrees:
        quad = RadialQuad.for_degree(N)
        quad2d = AreaQuad(n_radial=max(64, N // 2))
        M = 2 * N + 2
        for p in exponents:
            for k in orders:
                vals = []
                for l in lam:
                    f = remove_jets(test_function(TestParams(l, gamma, p), N), k)
                    vals.append(gk_lp_norm(f, k, p, M, quad) / hardy_norm(f, p, check=False).value)
                bands.setdefault(f"G{k} p={p:g}", []).append((min(vals), max(vals)))
            vals = []
            for l in lam:
                f = remove_jets(test_function(TestParams(l, gamma, p), N), 1)
                vals.append(fs_ratio(f, p, sigma, M, quad2d))
            bands.setdefault(f"S p={p:g}", []).append((min(vals), max(vals)))
    moves = {}
    for key, seq in bands.items():
        lo = [b[0] for b in seq]
        hi = [b[1] for b in seq]
        moves[key] = max(max(lo) / min(lo), max(hi) / min(hi))
    worst = max(moves.values())
    return {"bands": bands, "endpoint_factor": moves, "worst_factor": worst,
            "passed": worst < 2.0}


def cohn_polynomials(rng: np.random.Generator, count: int, max_degree: int = 12,
                     min_root_gap: float = 0.1) -> list[PowerSeries]:
    """Random polynomials with ``|c_0| >= 1`` whose roots stay off the unit circle."""
    out = []
    while len(out) < count:
        d = int(rng.integers(1, max_degree + 1))
        c = (rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1)) / 2
        c[0] = (1 + abs(rng.standard_normal())) * np.exp(2j * np.pi * rng.random())
        roots = np.roots(c[::-1])
        if roots.size and np.min(np.abs(np.abs(roots) - 1)) < min_root_gap:
            continue
        out.append(PowerSeries(c))
    return out


def factorization(seed: int = DEFAULT_SEED, tol: float = 1e-6, count: int = 20,
                  M: int = 4096, N: int = 512) -> dict:
    """Factorization residual on ``|z| <= 0.9`` and ``|G_0| <= 1`` on the circle."""
    rng = np.random.default_rng(seed)
    pts = reporting_grid()
    rel = g0max = 0.0
    for f in cohn_polynomials(rng, count):
        for p in (1.0, 2.0):
            for n in range(0, 4):
                res = cohn_factor(f, p, n, M, N, pts)
                if res.scale > 0:
                    rel = max(rel, res.relative_residual)
            g0 = np.abs(sample(res.G_chain[0], 1.0, 4 * N).samples)
            g0max = max(g0max, float(np.max(g0)))
    return {"relative_residual_max": rel, "G0_boundary_max": g0max,
            "passed": rel <= tol and g0max <= 1 + tol}


def ode(seed: int = DEFAULT_SEED, tol: float = 1e-11, count: int = 10, N: int = 40) -> dict:
    """Residual of the recursion, the exponential case, and superposition."""
    rng = np.random.default_rng(seed)
    resid = sup = 0.0
    for _ in range(count):
        for n in (1, 2, 3):
            G, f0 = random_series(rng, 8), random_series(rng, 8)
            g = tuple(random_series(rng, 8) for _ in range(n - 1))
            init = tuple(complex(*rng.standard_normal(2)) for _ in range(n))
            prob = OdeProblem(n, G, g, f0, init)
            f = ode_solve(prob, N)
            scale = max(1.0, prob.scale())
            resid = max(resid, ode_residual(prob, f).max_abs() / scale)
            f1b = random_series(rng, 8)
            init2 = tuple(complex(*rng.standard_normal(2)) for _ in range(n))
            p2 = OdeProblem(n, G, g, f1b, init2)
            both = OdeProblem(n, G, g, f0 + f1b, tuple(a + b for a, b in zip(init, init2)))
            diff = ode_solve(both, N) - (f + ode_solve(p2, N))
            sup = max(sup, diff.max_abs())
    # f' + f = 0 is the case n = 1 with G = z (so G' = 1) and f0 = 0
    expo = ode_solve(OdeProblem(1, PowerSeries([0, 1]), (), PowerSeries.zero(), (1,)), 30)
    ref = np.array([(-1) ** k / math.factorial(k) for k in range(31)])
    exp_err = float(np.max(np.abs(expo.coeffs - ref)))
    return {"residual_max": resid, "exp_err": exp_err, "superposition": sup,
            "passed": resid <= tol and exp_err <= 1e-12 and sup <= 1e-12}


SUITES = {
    "identities": identities,
    "parseval": parseval,
    "lemma1": lemma1,
    "testfam": testfam,
    "sepalg": sepalg,
    "littlewood": littlewood,
    "factorization": factorization,
    "ode": ode,
}

ORACLES = {
    "identities": "closed-form monomial corrections",
    "parseval": "coefficient l2 norm; polar Gauss-Legendre area quadrature",
    "lemma1": "local area integral bound, coefficient inequality",
    "testfam": "closed-form vertex derivatives; family bound drift on |lam| <= 0.99",
    "sepalg": "numpy determinant; extended-precision residual",
    "littlewood": "ratio bands across truncation doubling",
    "factorization": "pointwise residual on |z| <= 0.9",
    "ode": "coefficient residual, exponential closed form, superposition",
}

# the identity group also carries the Parseval/Dirichlet checks
GROUPS = {
    "identities": ("identities", "parseval"),
    "quick": ("identities", "parseval", "sepalg", "ode"),
    "all": tuple(SUITES),
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    t0 = time.perf_counter()
    out = SUITES[name](**kwargs)
    passed = bool(out.pop("passed"))
    return SuiteResult(name, passed, out, time.perf_counter() - t0)


def resolve(name: str) -> tuple[str, ...]:
    if name in GROUPS:
        return GROUPS[name]
    if name in SUITES:
        return (name,)
    raise KeyError(name)
