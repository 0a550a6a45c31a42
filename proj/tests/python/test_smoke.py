"""Smoke tests for the Python module and the CLI's JSON reports."""

import json
import os
import pathlib
import subprocess
from fractions import Fraction

import jsonschema
import pytest
from referencing import Registry, Resource

import ncdisco

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "tests" / "fixtures"
SCHEMAS = ROOT / "schemas"
CLI = os.environ.get("NCDISCO_CLI")


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(report, schema):
    doc = json.loads((SCHEMAS / f"{schema}.json").read_text())
    jsonschema.Draft202012Validator(doc, registry=REGISTRY).validate(report)


def test_expect_exact_values():
    r = ncdisco.expect(8, 7, d=5, metrics=["precision", "recall"])
    validate(r, "expect")
    prec, rec = r["metrics"]
    assert prec["expected"]["exact"] == "4/5"
    assert prec["median"]["exact"] == "6/7"
    assert rec["ci_low"]["exact"] == "5/8"
    assert Fraction(rec["expected"]["exact"]) == Fraction(7, 10)


def test_expect_sweep_and_implicit_metrics():
    r = ncdisco.expect(5, 0, m_max=10, sweep=True)
    validate(r, "expect")
    assert len(r["sweep"]) == 11
    f1 = {row["m_est"]: row["f1"] for row in r["sweep"]}
    assert f1[5] == pytest.approx(0.5)
    assert f1[10] == pytest.approx(2 / 3)


def test_expect_rejects_bad_margins():
    with pytest.raises(ncdisco.InputError):
        ncdisco.expect(11, 3, d=5)
    with pytest.raises(ValueError):
        ncdisco.expect(3, 3)


def test_fit_test_from_paths():
    r = ncdisco.fit_test(FIXTURES / "metropolit_truth.csv", FIXTURES / "metropolit_estimate.csv")
    validate(r, "fit-test")
    assert r["params"] == {"m_max": 231, "m_true": 30, "m_est": 30}
    assert round(r["p_value"], 3) == 0.002


def test_compare_and_determinism():
    kw = dict(metrics=["shd", "adjacency_precision"], nc_reps=100, seed=7)
    a = ncdisco.compare(FIXTURES / "five_node_truth.csv", FIXTURES / "five_node_estimate.csv", **kw)
    b = ncdisco.compare(FIXTURES / "five_node_truth.csv", FIXTURES / "five_node_estimate.csv", **kw)
    validate(a, "compare")
    assert a == b
    assert a["metrics"][0]["observed"] == 5


def test_sample_round_trips_through_fit_test():
    g = ncdisco.sample(6, 7, seed=3)
    assert g == ncdisco.sample(6, 7, seed=3)
    r = ncdisco.fit_test(g, g)
    assert r["tp_obs"] == 7


def test_graph_errors_map_to_input_error():
    with pytest.raises(ncdisco.InputError, match="self-loop"):
        ncdisco.fit_test("a,a,directed\n", "a,a,directed\n")


def test_pipeline_small_study():
    summary, csv = ncdisco.pipeline({"b": 3, "d": 5, "m_true": 5, "seed": 4, "sem": {"n": 150},
                                     "metrics": ["shd", "adjacency_recall"]})
    validate(summary, "pipeline")
    assert summary["replications"] == 3
    assert csv.splitlines()[0].startswith("replication,m_true,m_est,nc_edges")
    assert len(csv.splitlines()) == 4
    with pytest.raises(ncdisco.InputError, match="sem.n"):
        ncdisco.pipeline({"b": 1, "d": 5, "m_true": 5, "sem": {"n": "many"}})


@pytest.mark.skipif(not CLI, reason="NCDISCO_CLI not set")
@pytest.mark.parametrize("schema,args", [
    ("expect", ["expect", "--d", "5", "--m-true", "8", "--m-est", "7", "--sweep"]),
    ("fit-test", ["fit-test", "--truth", str(FIXTURES / "five_node_truth.csv"),
                  "--estimate", str(FIXTURES / "five_node_estimate.csv")]),
    ("compare", ["compare", "--truth", str(FIXTURES / "sachs_truth.csv"),
                 "--estimate", str(FIXTURES / "sachs_pc24.csv"), "--nc-reps", "50"]),
])
def test_cli_json_matches_schema(schema, args):
    out = subprocess.run([CLI, *args, "--json"], check=True, capture_output=True, text=True).stdout
    validate(json.loads(out), schema)


@pytest.mark.skipif(not CLI, reason="NCDISCO_CLI not set")
def test_cli_pipeline_writes_outputs(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"b": 2, "d": 5, "m_true": 4, "sem": {"n": 100}}))
    subprocess.run([CLI, "pipeline", "--config", str(cfg), "--out-dir", str(tmp_path / "out")],
                   check=True, capture_output=True)
    validate(json.loads((tmp_path / "out" / "summary.json").read_text()), "pipeline")
    assert (tmp_path / "out" / "replications.csv").exists()
