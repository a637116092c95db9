import json

import jsonschema
import pytest

from brgenus import cache
from brgenus.arith import factor
from brgenus.bounds import AuditFailure, BoundConfig, run_pipeline
from brgenus.curves import EllipticCurve, paladino_curve
from brgenus.numfield import NumberField, split_prime
from brgenus.report import dumps, envelope, fact_from_json, fact_to_json, loads, report_from_json, report_to_json


@pytest.fixture
def paladino_report():
    return run_pipeline(BoundConfig(curve=paladino_curve(1, 1), n=3, S_override=[2, 3]))


def test_factorization_json_round_trip():
    for n in (1, 2, 19683, -1512, 2**80 * 3 + 1):
        f = factor(n)
        data = fact_to_json(f)
        assert data["value"] == str(n)
        assert fact_from_json(data) == f


def test_factorization_sidecar_must_match():
    data = fact_to_json(factor(12))
    data["value"] = "13"
    with pytest.raises(ValueError):
        fact_from_json(data)


def test_report_round_trip(paladino_report):
    text = dumps(envelope(paladino_report, 0, 0.5))
    rep, doc = loads(text)
    assert doc["format"] == "brgenus-report/1"
    assert rep.values == paladino_report.values
    assert rep.S == paladino_report.S and rep.S_ell == paladino_report.S_ell
    assert str(rep.genus) == str(paladino_report.genus)
    assert report_to_json(rep) == report_to_json(paladino_report)


def test_report_integers_are_strings(paladino_report):
    doc = json.loads(dumps(envelope(paladino_report, 0, 0.0)))
    bound = doc["report"]["values"]["brauer_bound"]
    assert bound["value"] == "19683" and bound["factors"] == [["3", 9]]
    assert doc["report"]["h_ell"] == "1"


def test_report_deterministic_apart_from_timing(paladino_report):
    a = json.loads(dumps(envelope(paladino_report, 0, 0.1)))
    other = run_pipeline(BoundConfig(curve=paladino_curve(1, 1), n=3, S_override=[2, 3]))
    b = json.loads(dumps(envelope(other, 0, 7.0)))
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_schema_rejects_unknown_keys(paladino_report):
    doc = envelope(paladino_report, 0, 0.0)
    doc["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        dumps(doc)


def test_tampered_report_fails_audit(paladino_report):
    data = report_to_json(paladino_report)
    data["claims"][0]["lhs"] = fact_to_json(factor(5))
    with pytest.raises(AuditFailure):
        report_from_json(data)


# ------------------------------------------------------------------ cache


def test_cache_records_and_reuses(tmp_path):
    path = tmp_path / "cache.jsonl"
    store = cache.activate(path)
    try:
        # values no other test touches, so in-process memoization cannot answer first
        n = 1000003 * 1000037
        assert factor(n).value == n
        assert split_prime(NumberField.quadratic(-431), 10007) in ([(1, 1, 2)], [(1, 2, 1)])
    finally:
        cache.deactivate()
    lines = [json.loads(l) for l in path.read_text().splitlines()]
    assert {l["kind"] for l in lines} >= {"factor", "split"}
    again = cache.Cache(path)
    assert again.lookup(n) == factor(n) and again.rejected == 0
    assert store.lookup(n) == again.lookup(n)


def test_cache_ignores_corrupt_and_wrong_lines(tmp_path):
    path = tmp_path / "cache.jsonl"
    from brgenus import __version__

    good = {"version": __version__, "kind": "factor", "n": "15", "factors": [["3", 1], ["5", 1]]}
    wrong = {"version": __version__, "kind": "factor", "n": "16", "factors": [["3", 1], ["5", 1]]}
    composite = {"version": __version__, "kind": "factor", "n": "16", "factors": [["4", 2]]}
    old = {"version": "0.0.0", "kind": "factor", "n": "21", "factors": [["3", 1], ["7", 1]]}
    path.write_text("\n".join([json.dumps(good), "{not json", json.dumps(wrong), json.dumps(composite), json.dumps(old)]) + "\n")
    store = cache.Cache(path)
    assert store.lookup(15) == factor(15)
    assert store.lookup(16) is None and store.lookup(21) is None
    assert store.rejected == 3


def test_cache_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv(cache.ENV_VAR, str(path))
    try:
        assert cache.activate() is not None
        factor(2**61 - 1)
        factor((2**61 - 1) * (2**31 - 1))
    finally:
        cache.deactivate()
    assert path.exists()


def test_no_cache_without_path(monkeypatch):
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    assert cache.activate() is None


def test_cached_results_do_not_change_bounds(tmp_path):
    E = EllipticCurve(89, 0)
    plain = run_pipeline(BoundConfig(curve=E, n=2)).values
    cache.activate(tmp_path / "c.jsonl")
    try:
        first = run_pipeline(BoundConfig(curve=E, n=2)).values
    finally:
        cache.deactivate()
    cache.activate(tmp_path / "c.jsonl")
    try:
        second = run_pipeline(BoundConfig(curve=E, n=2)).values
    finally:
        cache.deactivate()
    assert plain == first == second
