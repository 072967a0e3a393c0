"""Numerical experiments on boundedness and compactness of ``T_{g,a}``.

A truncated operator is always bounded, so verdicts here are trends: a probe
supremum that settles under doubling of the truncation degree is reported
as ``stabilizing``, one that keeps moving as ``growing``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import spaces
from .errors import BadExponent
from .operators import OperatorSpec, apply_Tga
from .report import jsonable
from .sepalg import GammaSet, separated_bound, separation_coeffs
from .series import PowerSeries, ps_diff, ps_eval_k
from .spaces import STABLE_CHANGE, DiscGrid, boundary_ladder, stabilized
from .symbols import make_symbol
from .testfam import TestParams, lambda_grid, scaled_degree, test_function, vertex_derivative

DEFAULT_SEED = 29055526  # int("hardy", 36)
ZERO_RATIO = 1e-12
COMPACT_DECAY = 0.10
VMOA_DECAY = 0.75
EDGE_SCALE = 4.0
N_RANDOM = 32


@dataclass
class ProbeReport:
    spec: OperatorSpec
    p: float
    q: float
    family: str
    sup_ratio: float
    per_point: list
    degrees: list
    verdict: str
    degree_sups: list = field(default_factory=list)

    def __post_init__(self):
        if not self.per_point:
            raise ValueError("a probe report needs at least one point")

    def to_dict(self, include_symbol: bool = False) -> dict:
        spec = self.spec.to_dict()
        if not include_symbol:
            spec = {k: v for k, v in spec.items() if k != "symbol"}
            spec["symbol_degree"] = self.spec.g.degree
        return {
            "spec": spec,
            "p": self.p,
            "q": self.q,
            "family": self.family,
            "sup_ratio": self.sup_ratio,
            "per_point": [[d, r] for d, r in self.per_point],
            "degrees": list(self.degrees),
            "degree_sups": list(self.degree_sups),
            "verdict": self.verdict,
        }


def random_polynomials(N: int, count: int, seed: int) -> list[PowerSeries]:
    """``count`` complex Gaussian polynomials of degree N, seeded by (seed, N)."""
    rng = np.random.default_rng([seed, N])
    out = []
    for _ in range(count):
        c = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
        out.append(PowerSeries(c / math.sqrt(2)))
    return out


def probe_family(p: float, lam_grid, gammas: Sequence[float], N: int, n_random: int,
                 seed: int) -> list[tuple[str, PowerSeries]]:
    fam = [("const", PowerSeries.const(1.0, N))]
    for gamma in gammas:
        for lam in np.asarray(lam_grid, dtype=complex).ravel():
            tp = TestParams(lam, gamma, p)
            fam.append((f"lam={lam.real:.6g}{lam.imag:+.6g}j gamma={gamma:g}", test_function(tp, N)))
    for i, f in enumerate(random_polynomials(N, n_random, seed)):
        fam.append((f"random#{i}", f))
    return fam


def operator_ratio(spec: OperatorSpec, f: PowerSeries, p: float, q: float) -> float:
    """``||T_{g,a} f||_q / ||f||_p``."""
    num = spaces.hardy_norm(apply_Tga(spec, f), q, check=False).value
    den = spaces.hardy_norm(f, p, check=False).value
    return num / den


def _verdict(sups: list[float], ratios: list[float]) -> str:
    if max(ratios) < ZERO_RATIO:
        return "zero"
    return "stabilizing" if stabilized(sups, STABLE_CHANGE) else "growing"


def default_gammas(p: float, count: int = 2) -> tuple:
    return GammaSet.default(count, p).gammas


def boundedness_probe(spec: OperatorSpec, p: float, q: float, lam_grid, gamma_set,
                      degrees: Sequence[int], n_random: int = N_RANDOM,
                      seed: int = DEFAULT_SEED) -> ProbeReport:
    """Sup of ``||T f||_q / ||f||_p`` over test functions and random polynomials.

    At each degree N both the symbol and the probes are truncated at N.  The
    reported sup at degree N runs over the union of all families up to N, so
    it is nondecreasing along ``degrees``.
    """
    if p <= 0 or q <= 0:
        raise BadExponent("p and q must be positive")
    gammas = tuple(gamma_set) if gamma_set is not None else default_gammas(p)
    per_point: list[tuple[str, float]] = []
    sups: list[float] = []
    best = 0.0
    for N in degrees:
        specN = spec.with_symbol(spec.g.truncate(N))
        for desc, f in probe_family(p, lam_grid, gammas, N, n_random, seed):
            r = operator_ratio(specN, f, p, q)
            per_point.append((f"N={N} {desc}", r))
            best = max(best, r)
        sups.append(best)
    ratios = [r for _, r in per_point]
    family = f"test functions gamma={list(gammas)} x {len(np.ravel(lam_grid))} lambdas + const + {n_random} random"
    return ProbeReport(spec, p, q, family, max(ratios), per_point, list(degrees),
                       _verdict(sups, ratios), sups)


def necessity_extract(spec: OperatorSpec, p: float, q: float, gammas: GammaSet | None,
                      lam_grid) -> dict:
    """Separate the test-function estimate into bounds on each weighted derivative.

    For each gamma the input is ``|(T f_{lam,gamma})^{(n)}(lam)| (1-|lam|^2)^{n+1/q}``,
    a combination ``sum_k F_k(lam) (gamma)_k`` with
    ``F_k = a_k conj(lam)^k (1-|lam|^2)^{n-k+1/q-1/p} g^{(n-k)}(lam)``.
    ``C_gamma`` is its sup over the grid; separation bounds each ``|F_k|``,
    and dividing by ``|a_k| |lam|^k`` bounds the weighted derivative.
    Only ``|lam| >= 1/2`` is used, where ``conj(lam)^k`` is safely invertible.
    """
    n = spec.n
    gammas = GammaSet.default(n, p) if gammas is None else gammas
    if len(gammas) != n:
        raise ValueError(f"separation needs exactly n={n} gammas")
    lam = np.asarray(lam_grid, dtype=complex).ravel()
    lam = lam[np.abs(lam) >= 0.5]
    if lam.size == 0:
        raise ValueError("necessity extraction needs grid points with |lam| >= 1/2")
    w = 1 - np.abs(lam) ** 2
    weights = spec.weights
    gder = {k: ps_eval_k(spec.g, n - k, lam) for k in range(n)}

    inputs = np.zeros((len(gammas), lam.size))
    for i, gamma in enumerate(gammas):
        total = np.zeros(lam.size, dtype=complex)
        for k, a_k in enumerate(weights):
            if a_k == 0:
                continue
            vd = np.array([vertex_derivative(TestParams(l, gamma, p), k) for l in lam])
            total += a_k * vd * gder[k]
        inputs[i] = np.abs(total) * w ** (n + 1 / q)
    C = inputs.max(axis=1)

    rows = []
    sup_bound, sup_true, conds = {}, {}, {}
    for k, a_k in enumerate(weights):
        if a_k == 0:
            continue
        sep = separation_coeffs(gammas, k)
        conds[k] = sep.cond
        uniform = separated_bound(C, sep.r)
        true = np.abs(gder[k]) * w ** (n - k + 1 / q - 1 / p)
        bound = uniform / (abs(a_k) * np.abs(lam) ** k)
        sup_bound[k] = float(np.max(bound))
        sup_true[k] = float(np.max(true))
        for l, t, b in zip(lam, true, bound):
            rows.append({"lam_re": float(l.real), "lam_im": float(l.imag), "k": k,
                         "weighted_derivative": float(t), "bound": float(b)})
    return {
        "gammas": list(gammas.gammas),
        "C_gamma": [float(c) for c in C],
        "combination": inputs,
        "rows": rows,
        "sup_bound": sup_bound,
        "sup_true": sup_true,
        "cond": conds,
    }


def compactness_probe(spec: OperatorSpec, p: float, gamma: float, lam_ladder,
                      degrees: Sequence[int] | None = None, cap: int | None = None) -> dict:
    """``||T_{g,a} f_{lam,gamma}||_p`` along a ladder with ``|lam| -> 1``.

    Truncation defaults to :func:`scaled_degree` per lambda (optionally capped).
    """
    lam_ladder = np.asarray(lam_ladder, dtype=complex).ravel()
    if degrees is None:
        degrees = [scaled_degree(l) if cap is None else min(cap, scaled_degree(l)) for l in lam_ladder]
    norms = []
    for lam, N in zip(lam_ladder, degrees):
        f = test_function(TestParams(lam, gamma, p), int(N))
        norms.append(spaces.hardy_norm(apply_Tga(spec, f), p, check=False).value)
    if max(norms) == 0:
        verdict = "zero"
    elif norms[-1] < COMPACT_DECAY * norms[0]:
        verdict = "compact-consistent"
    else:
        verdict = "not-compact-consistent"
    return {
        "lambdas": [[float(l.real), float(l.imag)] for l in lam_ladder],
        "degrees": [int(d) for d in degrees],
        "norms": norms,
        "verdict": verdict,
    }


def _truncation_ladder(g: PowerSeries, degrees: Sequence[int] | None) -> list[int]:
    if degrees is not None:
        return [int(d) for d in degrees]
    top = max(g.degree, 64)
    return sorted({max(4, top // 4), max(4, top // 2), top})


def _resolvable_depth(N: int) -> int:
    return max(2, int(math.log2(max(N, 4))) - 1)


def classify_symbol(g: PowerSeries, n: int, a: Sequence[complex], p: float, q: float,
                    degrees: Sequence[int] | None = None, n_angles: int = 8) -> dict:
    """Predict boundedness/compactness of ``T_{g,a}: H^p -> H^q`` from symbol estimates.

    p = q: Garsia (BMOA) trend and Bloch/Garsia decay (VMOA).
    p < q: with ``alpha = 1/p - 1/q`` and ``l < alpha <= l+1``, Lipschitz
    evidence for ``g^{(l)}`` with exponent ``alpha - l``; if ``alpha > n - k``
    only ``g^{(n-k)} = 0`` is admissible.
    p > q: ``H^s`` trend with ``1/s = 1/q - 1/p``.
    """
    if p <= 0 or q <= 0:
        raise BadExponent("p and q must be positive")
    spec = OperatorSpec(n, g, tuple(a))
    k = spec.top_index
    alpha = 1 / p - 1 / q
    ladder = _truncation_ladder(g, degrees)
    out: dict = {"p": p, "q": q, "n": n, "k": k, "alpha": alpha, "degrees": ladder,
                 "estimates": {}, "predicted": {}, "notes": []}
    if math.isclose(p, q):
        out["case"] = "p=q"
        out["estimator"] = "garsia"
        gars = []
        for d in ladder:
            gd = g.truncate(d)
            radii = boundary_ladder(_resolvable_depth(d))
            gars.append(spaces.garsia_norm(gd, lambda_grid(radii, n_angles)).value)
        top = g.truncate(ladder[-1])
        radii = boundary_ladder(_resolvable_depth(ladder[-1]), include_zero=False)
        bloch = spaces.decay_profile(top, "bloch", radii, n_angles=4 * n_angles)
        garsia_decay = spaces.decay_profile(top, "garsia", radii, n_angles=n_angles)
        bounded = stabilized(gars)
        # VMOA trend: local Garsia sup at the edge of each truncation's
        # resolvable disc, 1 - |lam| = 4/N; it decays only for VMOA symbols
        t = np.exp(2j * np.pi * np.arange(2 * n_angles) / (2 * n_angles))
        edge = [float(np.max(spaces.garsia_local(g.truncate(d), (1 - EDGE_SCALE / d) * t)))
                for d in ladder]
        decays = edge[-1] <= VMOA_DECAY * edge[0] if edge[0] > 0 else True
        out["estimates"] = {"garsia": gars, "garsia_edge": edge, "bloch_profile": bloch.to_dict(),
                            "garsia_profile": garsia_decay.to_dict()}
        out["predicted"] = {"bounded": bounded, "compact": bounded and decays}
        out["necessity"] = "proved"
    elif p < q:
        out["case"] = "p<q"
        l = math.ceil(alpha) - 1
        out["l"] = l
        if alpha > n - k:
            tail = np.abs(g.coeffs[n - k:]) if g.degree >= n - k else np.zeros(1)
            vanishes = bool(np.all(tail <= 1e-14 * max(1.0, g.max_abs())))
            out["estimates"] = {"max_coeff_from_index_n_minus_k": float(np.max(tail))}
            out["predicted"] = {"bounded": vanishes, "zero_operator": True,
                                "compact": vanishes}
            out["notes"].append("alpha > n-k: bounded only as the zero operator")
        else:
            beta = alpha - l
            out["beta"] = beta
            vals = []
            for d in ladder:
                gl = ps_diff(g.truncate(d), l)
                grid = DiscGrid(boundary_ladder(_resolvable_depth(d) + 2), 4 * n_angles)
                vals.append(spaces.lipschitz_norm(gl, beta, grid).value)
            out["estimates"] = {"lipschitz": vals, "derivative_order": l, "exponent": beta}
            out["predicted"] = {"bounded": stabilized(vals), "zero_operator": False}
        out["necessity"] = "proved"
    else:
        out["case"] = "p>q"
        s = 1 / (1 / q - 1 / p)
        out["s"] = s
        prof = spaces.hs_profile(g, s, ladder)
        out["estimates"] = {"hs_profile": prof.to_dict()}
        out["predicted"] = {"bounded": stabilized(prof.values)}
        proved = n == 2 and k == 0
        out["necessity"] = "proved" if proved else "conjectural"
        if not proved:
            out["notes"].append("necessity of H^s open for this (n, a); evidence only")
    out["verdict"] = _predicted_verdict(out["predicted"])
    return out


def _predicted_verdict(pred: dict) -> str:
    if not pred["bounded"]:
        return "unbounded"
    if pred.get("zero_operator"):
        return "zero-operator"
    return "compact" if pred.get("compact") else "bounded"


def battery_report(config: dict) -> dict:
    """Run classify + boundedness + compactness probes over symbols x scenarios.

    Cell failures are recorded in the cell and do not stop the run.
    """
    symbols = list(config.get("symbols", []))
    scenarios = list(config.get("scenarios", []))
    degrees = [int(d) for d in config.get("degrees", [32, 64])]
    seed = int(config.get("seed", DEFAULT_SEED))
    n_random = int(config.get("n_random", 8))
    radii = config.get("lambda_radii", [0.5, 0.75, 0.875])
    n_angles = int(config.get("lambda_angles", 4))
    ladder_depth = int(config.get("compactness_depth", 6))
    lam = lambda_grid(radii, n_angles)
    cells = []
    for sym in symbols:
        name = sym if isinstance(sym, str) else sym.get("name", "custom")
        for sc in scenarios:
            p, q, n = float(sc["p"]), float(sc["q"]), int(sc["n"])
            a = _scenario_weights(sc, n)
            cell = {"symbol": name, "scenario": {"p": p, "q": q, "n": n,
                                                 "a_re": [x.real for x in a], "a_im": [x.imag for x in a]}}
            try:
                g = make_symbol(sym, max(degrees))
                spec = OperatorSpec(n, g, a)
                gammas = default_gammas(p)
                cls = classify_symbol(g, n, a, p, q, degrees)
                cls["estimates"] = jsonable(cls["estimates"])
                probe = boundedness_probe(spec, p, q, lam, gammas, degrees, n_random, seed)
                cell["classify"] = cls
                cell["probe"] = {k: v for k, v in probe.to_dict().items() if k != "per_point"}
                if math.isclose(p, q):
                    ladder = [1 - 2.0**-i for i in range(1, ladder_depth + 1)]
                    cell["compactness"] = compactness_probe(spec, p, gammas[0], ladder,
                                                            cap=8 * max(degrees))
                cell["verdict"] = probe.verdict
            except Exception as exc:  # noqa: BLE001 - cells report, never abort
                cell["error"] = f"{type(exc).__name__}: {exc}"
                cell["verdict"] = "error"
            cells.append(cell)
    return {
        "config": jsonable(config),
        "degrees": degrees,
        "seed": seed,
        "grid": {"lambda_radii": list(radii), "lambda_angles": n_angles},
        "estimators": {"bmoa": "garsia", "lipschitz": "second-derivative", "hardy": "trapezoid r=1"},
        "cells": cells,
    }


def _scenario_weights(sc: dict, n: int) -> tuple:
    if "a_re" in sc:
        im = sc.get("a_im", [0.0] * len(sc["a_re"]))
        return tuple(complex(r, i) for r, i in zip(sc["a_re"], im))
    return tuple(complex(x) for x in sc.get("a", [0.0] * (n - 1)))


def battery_csv_rows(report: dict) -> list[dict]:
    """One row per (symbol, scenario, degree)."""
    rows = []
    for cell in report.get("cells", []):
        sc = cell["scenario"]
        probe = cell.get("probe", {})
        sups = probe.get("degree_sups", [])
        degs = probe.get("degrees", report.get("degrees", []))
        pred = cell.get("classify", {}).get("predicted", {}).get("bounded", "")
        for i, d in enumerate(degs):
            rows.append({
                "symbol": cell["symbol"], "p": sc["p"], "q": sc["q"], "n": sc["n"],
                "a": " ".join(repr(complex(re, im)) for re, im in zip(sc["a_re"], sc["a_im"])),
                "degree": d,
                "sup_ratio": sups[i] if i < len(sups) else "",
                "verdict": cell["verdict"], "predicted_bounded": pred,
            })
    return rows

