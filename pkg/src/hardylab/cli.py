"""Command-line runner: ``hardylab {verify,probe,classify,factorize,ode,battery}``.

Exit status is 0 on success, 1 when a verification contract fails and 2 on
usage errors.  Every input is resolved before any computation starts, and a
report is written only once the whole run has finished.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from pathlib import Path

from . import __version__, suites
from .constructions import OdeProblem, cohn_factor, ode_residual, ode_solve
from .errors import HardyLabError
from .operators import OperatorSpec
from .probelab import (DEFAULT_SEED, battery_csv_rows, battery_report, boundedness_probe,
                       classify_symbol, default_gammas)
from .report import ReportError, dumps_csv, dumps_json, emit_report, jsonable
from .series import PowerSeries
from .symbols import DEFAULT_BATTERY, GENERATORS, make_symbol
from .testfam import lambda_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument parsing

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="JSON file with option values")
    p.add_argument("--out", metavar="PATH", help="report file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), help="report format (default json)")
    p.add_argument("--seed", type=int, help=f"random seed (default {DEFAULT_SEED})")
    p.add_argument("--degree", type=int, help="top truncation degree")
    p.add_argument("--tol", type=float, help="verification tolerance")
    return p


def _symbol_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--symbol", help=f"named symbol ({', '.join(GENERATORS)}) or series JSON path")
    p.add_argument("--p", type=float, dest="p")
    p.add_argument("--q", type=float, dest="q")
    p.add_argument("--n", type=int, dest="n", help="operator order (default 2)")
    p.add_argument("--a", nargs="*", help="weights a_1..a_{n-1}, complex literals allowed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardylab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hardylab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common()

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", help=f"one of {', '.join([*suites.GROUPS, *suites.SUITES])}")

    pr = sub.add_parser("probe", parents=[common], help="boundedness probe of T_{g,a}")
    _symbol_args(pr)
    pr.add_argument("--n-random", type=int, dest="n_random")

    c = sub.add_parser("classify", parents=[common], help="predict a verdict from the symbol")
    _symbol_args(c)

    f = sub.add_parser("factorize", parents=[common], help="derivative factorization of f")
    f.add_argument("--series", help="named generator or series JSON path")
    f.add_argument("--p", type=float, dest="p")
    f.add_argument("--n", type=int, dest="n")
    f.add_argument("--samples", type=int, help="boundary samples M")

    o = sub.add_parser("ode", parents=[common], help="series solution of the linear ODE")
    o.add_argument("--n", type=int, dest="n")
    o.add_argument("--G", dest="G", help="series for G")
    o.add_argument("--g", dest="g", nargs="*", help="series g_1..g_{n-1}")
    o.add_argument("--f0", dest="f0", help="series for f_0")
    o.add_argument("--init", nargs="*", help="f(0), f'(0), .., f^{(n-1)}(0)")

    sub.add_parser("battery", parents=[common], help="symbol x scenario experiment grid")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return data


def effective_config(args: argparse.Namespace) -> dict:
    """Config-file values overridden by every flag given on the command line."""
    cfg = _load_config(args.config)
    for key, val in vars(args).items():
        if key == "config" or val is None:
            continue
        cfg[key] = val
    cfg.setdefault("format", "json")
    cfg.setdefault("seed", DEFAULT_SEED)
    if "tol" in cfg and not cfg["tol"] > 0:
        raise UsageError("--tol must be positive")
    if "degree" in cfg and int(cfg["degree"]) < 1:
        raise UsageError("--degree must be >= 1")
    return cfg


def _require(cfg: dict, *keys: str) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise UsageError(f"{cfg['command']} needs " + ", ".join(f"--{k}" for k in missing))


def _series(spec, degree: int) -> PowerSeries:
    try:
        return make_symbol(spec, degree)
    except (KeyError, OSError, ValueError) as exc:
        raise UsageError(f"bad series {spec!r}: {exc}") from exc


def _complex_list(vals) -> tuple:
    try:
        return tuple(complex(str(v).replace(" ", "")) if not isinstance(v, (int, float))
                     else complex(v) for v in (vals or ()))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex value: {exc}") from exc


def _ladder(top: int) -> list[int]:
    return sorted({max(4, top // 4), max(4, top // 2), top})


def _envelope(cfg: dict, result, **extra) -> dict:
    # the output location is not part of the experiment, keep reports path-free
    echo = {k: v for k, v in cfg.items() if k != "out"}
    return {"tool": "hardylab", "version": __version__, "command": cfg["command"],
            "config": echo, **extra, "result": result}


# --------------------------------------------------------------------------
# commands: each returns (exit code, summary lines, report data, csv rows)

def cmd_verify(cfg: dict):
    name = cfg.get("suite", "identities")
    try:
        names = suites.resolve(name)
    except KeyError:
        raise UsageError(f"unknown suite {name!r}") from None
    kwargs = {"seed": int(cfg["seed"])}
    results = []
    for nm in names:
        extra = dict(kwargs)
        if "tol" in cfg and "tol" in inspect.signature(suites.SUITES[nm]).parameters:
            extra["tol"] = float(cfg["tol"])
        results.append(suites.run_suite(nm, **extra))
    ok = all(r.passed for r in results)
    lines = [r.summary() for r in results]
    data = _envelope(cfg, [r.to_dict() for r in results], passed=ok,
                     estimators={nm: suites.ORACLES[nm] for nm in names})
    rows = []
    for r in results:
        for k, v in r.metrics.items():
            if isinstance(v, (int, float, bool)):
                rows.append({"suite": r.name, "passed": r.passed, "metric": k, "value": v})
    return (EXIT_OK if ok else EXIT_FAIL), lines, data, rows


def _operator_inputs(cfg: dict):
    _require(cfg, "symbol", "p", "q")
    n = int(cfg.get("n", 2))
    if n < 1:
        raise UsageError("--n must be >= 1")
    a = _complex_list(cfg.get("a", [0] * (n - 1)))
    if len(a) != n - 1:
        raise UsageError(f"--a needs {n - 1} values for n={n}")
    p, q = float(cfg["p"]), float(cfg["q"])
    if p <= 0 or q <= 0:
        raise UsageError("--p and --q must be positive")
    top = int(cfg.get("degree", 256))
    g = _series(cfg["symbol"], top)
    return n, a, p, q, top, g


def cmd_probe(cfg: dict):
    n, a, p, q, top, g = _operator_inputs(cfg)
    degrees = [int(d) for d in cfg.get("degrees", _ladder(top))]
    radii = cfg.get("lambda_radii", [0.5, 0.75, 0.875])
    angles = int(cfg.get("lambda_angles", 8))
    n_random = int(cfg.get("n_random", 8))
    rep = boundedness_probe(OperatorSpec(n, g, a), p, q, lambda_grid(radii, angles),
                            default_gammas(p), degrees, n_random, int(cfg["seed"]))
    line = f"probe {cfg['symbol']} p={p:g} q={q:g} n={n}: {rep.verdict} (sup={rep.sup_ratio:.6g})"
    data = _envelope(cfg, rep.to_dict(), degrees=degrees,
                     grids={"lambda_radii": radii, "lambda_angles": angles},
                     estimators={"hardy": "trapezoid r=1", "family": rep.family})
    rows = [{"degree": d, "sup_ratio": s} for d, s in zip(rep.degrees, rep.degree_sups)]
    return EXIT_OK, [line], data, rows


def cmd_classify(cfg: dict):
    n, a, p, q, top, g = _operator_inputs(cfg)
    degrees = [int(d) for d in cfg.get("degrees", _ladder(top))]
    out = classify_symbol(g, n, a, p, q, degrees)
    line = f"classify {cfg['symbol']} p={p:g} q={q:g} n={n}: {out['verdict']} ({out['case']})"
    data = _envelope(cfg, jsonable(out), degrees=degrees,
                     estimators={"p=q": "garsia + bloch/garsia decay",
                                 "p<q": "lipschitz (second derivative)", "p>q": "hardy H^s"})
    rows = []
    for key, val in out["estimates"].items():
        if isinstance(val, list):
            rows += [{"estimate": key, "degree": d, "value": v} for d, v in zip(degrees, val)]
        elif isinstance(val, dict) and "values" in val:
            rows += [{"estimate": key, "radius": r, "value": v}
                     for r, v in zip(val["radii"], val["values"])]
    return EXIT_OK, [line], data, rows


def cmd_factorize(cfg: dict):
    _require(cfg, "series")
    N = int(cfg.get("degree", 128))
    f = _series(cfg["series"], N)
    p, n = float(cfg.get("p", 2.0)), int(cfg.get("n", 1))
    if p <= 0 or n < 0:
        raise UsageError("need p > 0 and n >= 0")
    M = int(cfg.get("samples", 8 * (N + 1)))
    if M < 2 * N + 2:
        raise UsageError(f"--samples must be >= {2 * N + 2} for degree {N}")
    tol = float(cfg.get("tol", 1e-6))
    try:
        res = cohn_factor(f, p, n, M, N)
    except HardyLabError as exc:
        raise UsageError(str(exc)) from exc
    ok = res.relative_residual <= tol
    line = (f"factorize n={n} p={p:g}: {'PASS' if ok else 'FAIL'} "
            f"(relative residual {res.relative_residual:.3g}, tol {tol:g})")
    data = _envelope(cfg, res.to_dict(), passed=ok, degrees=[N],
                     grids={"boundary_samples": M, "reporting": "|z|<=0.9, 10 radii x 64 angles"},
                     estimators={"outer": "herglotz of |f|^{p/2}"})
    F, G = res.F.padded(N), res.G_n.padded(N)
    rows = [{"k": k, "F_re": F[k].real, "F_im": F[k].imag, "G_re": G[k].real, "G_im": G[k].imag}
            for k in range(N + 1)]
    return (EXIT_OK if ok else EXIT_FAIL), [line], data, rows


def cmd_ode(cfg: dict):
    n = int(cfg.get("n", 1))
    if n < 1:
        raise UsageError("--n must be >= 1")
    N = int(cfg.get("degree", 32))
    if N < n:
        raise UsageError("--degree must be >= n")
    G = _series(cfg.get("G", "zero"), N)
    g = tuple(_series(s, N) for s in (cfg.get("g") or ["zero"] * (n - 1)))
    f0 = _series(cfg.get("f0", "zero"), N)
    init = _complex_list(cfg.get("init", [1] + [0] * (n - 1)))
    try:
        prob = OdeProblem(n, G, g, f0, init)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    f = ode_solve(prob, N)
    resid = ode_residual(prob, f).max_abs() / prob.scale()
    tol = float(cfg.get("tol", 1e-11))
    ok = resid <= tol
    line = f"ode n={n} N={N}: {'PASS' if ok else 'FAIL'} (residual {resid:.3g}, tol {tol:g})"
    data = _envelope(cfg, {"solution": f.to_dict(), "relative_residual": resid}, passed=ok,
                     degrees=[N], estimators={"solver": "forward coefficient recursion"})
    rows = [{"k": k, "re": c.real, "im": c.imag} for k, c in enumerate(f.coeffs)]
    return (EXIT_OK if ok else EXIT_FAIL), [line], data, rows


def default_battery_config() -> dict:
    return {
        "symbols": list(DEFAULT_BATTERY),
        "scenarios": [{"p": 2, "q": 2, "n": 2, "a": [1]},
                      {"p": 1, "q": 2, "n": 2, "a": [0]},
                      {"p": 2, "q": 1, "n": 2, "a": [0]}],
        "degrees": [32, 64],
    }


def cmd_battery(cfg: dict):
    bcfg = {**default_battery_config(), **{k: v for k, v in cfg.items()
                                          if k not in ("command", "out", "format", "config", "tol")}}
    if "degree" in cfg:
        bcfg["degrees"] = _ladder(int(cfg["degree"]))
    for sym in bcfg["symbols"]:
        if isinstance(sym, str) and sym not in GENERATORS and not Path(sym).exists():
            raise UsageError(f"unknown symbol {sym!r}")
    rep = battery_report(bcfg)
    verdicts = [c["verdict"] for c in rep["cells"]]
    errors = verdicts.count("error")
    line = f"battery: {len(verdicts)} cells, {errors} errors"
    data = _envelope(cfg, rep, degrees=rep["degrees"], grids=rep["grid"],
                     estimators=rep["estimators"])
    return EXIT_OK, [line], data, battery_csv_rows(rep)


# fixed CSV schemas, so an empty report still carries its header row
CSV_COLUMNS = {
    "verify": ["suite", "passed", "metric", "value"],
    "probe": ["degree", "sup_ratio"],
    "classify": ["estimate", "degree", "radius", "value"],
    "factorize": ["k", "F_re", "F_im", "G_re", "G_im"],
    "ode": ["k", "re", "im"],
    "battery": ["symbol", "p", "q", "n", "a", "degree", "sup_ratio", "verdict", "predicted_bounded"],
}

COMMANDS = {
    "verify": cmd_verify,
    "probe": cmd_probe,
    "classify": cmd_classify,
    "factorize": cmd_factorize,
    "ode": cmd_ode,
    "battery": cmd_battery,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = effective_config(args)
        code, lines, data, rows = COMMANDS[cfg["command"]](cfg)
    except UsageError as exc:
        print(f"hardylab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for line in lines:
        print(line)
    fmt, cmd = cfg["format"], cfg["command"]
    if cfg.get("out"):
        try:
            emit_report(data if fmt == "json" else rows, fmt, cfg["out"], CSV_COLUMNS[cmd])
        except ReportError as exc:
            print(f"hardylab: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    elif cmd != "verify":
        sys.stdout.write(dumps_json(data) if fmt == "json" else dumps_csv(rows, CSV_COLUMNS[cmd]))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
