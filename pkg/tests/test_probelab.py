import numpy as np
import pytest

from hardylab.errors import BadExponent
from hardylab.operators import OperatorSpec
from hardylab.probelab import (ProbeReport, battery_csv_rows, battery_report, boundedness_probe,
                               classify_symbol, compactness_probe, necessity_extract,
                               operator_ratio, probe_family, random_polynomials)
from hardylab.series import PowerSeries
from hardylab.symbols import DEFAULT_BATTERY, GENERATORS, lacunary, log1m, make_symbol, power1m
from hardylab.testfam import lambda_grid

GRID = lambda_grid((0.5, 0.75), 4)
LADDER = [1 - 2.0**-i for i in range(1, 7)]


def test_random_polynomials_are_seeded():
    a = random_polynomials(8, 3, 5)
    b = random_polynomials(8, 3, 5)
    assert all(x == y for x, y in zip(a, b))
    assert random_polynomials(8, 1, 6)[0] != a[0]


def test_family_contents():
    fam = probe_family(1.0, GRID, (2.0,), 16, 2, 1)
    assert fam[0][0] == "const" and len(fam) == 1 + GRID.size + 2


def test_integration_operator_ratio():
    # g = z, n = 1: T f is the antiderivative; on H^2 the norm is 1, attained at constants
    spec = OperatorSpec(1, PowerSeries([0, 1]))
    assert operator_ratio(spec, PowerSeries([1.0]), 2, 2) == pytest.approx(1.0)
    rep = boundedness_probe(spec, 2, 2, GRID, None, [16, 32], n_random=4, seed=3)
    assert 0.99 <= rep.sup_ratio <= 1 + 1e-12
    assert rep.verdict == "stabilizing"


def test_probe_scaling_and_monotone():
    g = PowerSeries([0, 1, 0.5])
    a = boundedness_probe(OperatorSpec(2, g, (1,)), 2, 2, GRID, None, [8, 16, 32], 4, 1)
    b = boundedness_probe(OperatorSpec(2, 3 * g, (1,)), 2, 2, GRID, None, [8, 16, 32], 4, 1)
    assert b.sup_ratio == pytest.approx(3 * a.sup_ratio, rel=1e-12)
    assert all(x <= y for x, y in zip(a.degree_sups, a.degree_sups[1:]))


def test_zero_operator():
    rep = boundedness_probe(OperatorSpec(2, PowerSeries([4.0, 1.0]), (0,)), 2, 2, GRID, None,
                            [16], 2, 1)
    assert rep.verdict == "zero" and rep.sup_ratio < 1e-10


def test_growing_symbol():
    g = power1m(-0.5, 512)
    rep = boundedness_probe(OperatorSpec(1, g), 2, 2, lambda_grid((0.5, 0.9, 0.99), 4), None,
                            [64, 256], 2, 1)
    assert rep.verdict == "growing"


def test_probe_validation_and_record():
    spec = OperatorSpec(1, PowerSeries([0, 1]))
    with pytest.raises(BadExponent):
        boundedness_probe(spec, 0, 2, GRID, None, [8])
    with pytest.raises(ValueError):
        ProbeReport(spec, 2, 2, "", 0.0, [], [], "zero")
    rep = boundedness_probe(spec, 2, 2, GRID, None, [8], 1, 1)
    d = rep.to_dict()
    assert "symbol" not in d["spec"] and d["spec"]["symbol_degree"] == 1
    assert "symbol" in rep.to_dict(include_symbol=True)["spec"]


def test_necessity_bounds_dominate():
    g = PowerSeries.monomial(5)
    spec = OperatorSpec(3, g, (0.7, -0.4j))
    out = necessity_extract(spec, 2, 2, None, lambda_grid((0.5, 0.75, 0.9), 8))
    assert set(out["sup_bound"]) == {0, 1, 2}
    for row in out["rows"]:
        assert row["weighted_derivative"] <= row["bound"] * (1 + 1e-9)
    with pytest.raises(ValueError):
        necessity_extract(spec, 2, 2, None, lambda_grid((0.2,), 4))


def test_compactness():
    z = compactness_probe(OperatorSpec(1, PowerSeries([0, 1])), 2, 2.0, LADDER)
    assert z["verdict"] == "compact-consistent"
    lac = compactness_probe(OperatorSpec(1, lacunary(2048)), 2, 2.0, LADDER, cap=2048)
    assert lac["verdict"] == "not-compact-consistent"
    assert min(lac["norms"]) > 0.1
    zero = compactness_probe(OperatorSpec(1, PowerSeries([1.0])), 2, 2.0, LADDER[:2])
    assert zero["verdict"] == "zero"


@pytest.mark.parametrize("name,verdict", [
    ("z", "compact"), ("sqrt1m", "compact"), ("log1m", "bounded"),
    ("lacunary", "bounded"), ("invquart1m", "unbounded"),
])
def test_classify_p_equals_q(name, verdict):
    g = make_symbol(name, 1024)
    out = classify_symbol(g, 2, (1,), 2, 2, [128, 256, 512, 1024])
    assert out["case"] == "p=q"
    assert out["verdict"] == verdict


def test_classify_small_and_large_gap():
    g = PowerSeries([0, 1, 0.5])
    near = classify_symbol(g, 2, (0,), 1, 2)
    assert near["case"] == "p<q" and near["predicted"]["bounded"]
    far = classify_symbol(g, 1, (), 0.25, 2)
    assert far["verdict"] == "unbounded" and far["predicted"]["zero_operator"]
    const = classify_symbol(PowerSeries([3.0]), 1, (), 0.25, 2)
    assert const["verdict"] == "zero-operator"


def test_classify_p_greater_q():
    out = classify_symbol(log1m(256), 2, (0,), 4, 2)
    assert out["case"] == "p>q" and out["necessity"] == "proved"
    assert out["s"] == pytest.approx(4.0)
    assert out["predicted"]["bounded"]
    other = classify_symbol(log1m(256), 2, (1,), 4, 2)
    assert other["necessity"] == "conjectural"
    with pytest.raises(BadExponent):
        classify_symbol(log1m(16), 1, (), -1, 2)


def test_symbols():
    assert set(DEFAULT_BATTERY) <= set(GENERATORS)
    assert np.allclose(log1m(3).coeffs, [0, 1, 0.5, 1 / 3])
    assert np.flatnonzero(lacunary(10).coeffs).tolist() == [1, 2, 4, 8]
    with pytest.raises(KeyError):
        make_symbol("nope", 4)
    rec = PowerSeries([1, 2]).to_dict()
    assert make_symbol(rec, 4) == PowerSeries([1, 2])


def test_symbol_from_file(tmp_path):
    import json
    path = tmp_path / "g.json"
    path.write_text(json.dumps(PowerSeries([0, 1j]).to_dict()))
    assert make_symbol(str(path), 4) == PowerSeries([0, 1j])


def test_battery():
    assert battery_report({})["cells"] == []
    cfg = {"symbols": ["z", "bogus"], "scenarios": [{"p": 2, "q": 2, "n": 1}],
           "degrees": [16, 32], "n_random": 2}
    rep = battery_report(cfg)
    ok, bad = rep["cells"]
    assert ok["verdict"] == "stabilizing" and "compactness" in ok
    assert bad["verdict"] == "error" and "KeyError" in bad["error"]
    assert battery_report(cfg) == rep
    rows = battery_csv_rows(rep)
    assert [r["symbol"] for r in rows] == ["z", "z", "bogus", "bogus"]
    assert rows[-1]["verdict"] == "error" and rows[-1]["sup_ratio"] == ""
