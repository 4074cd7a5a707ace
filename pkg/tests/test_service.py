import json
import shutil

import pytest

fastapi = pytest.importorskip("fastapi")
from fastapi.testclient import TestClient  # noqa: E402

from riskchain import (
    SimulationConfig,
    load_project,
    simulate,
)
from riskchain.report import DISCLAIMER_LINE
from riskchain.service import ConflictError, ProjectStore, create_app

from .conftest import DEMO_PROJECT_PATH


@pytest.fixture()
def project_file(tmp_path):
    path = tmp_path / "proj.json"
    shutil.copyfile(DEMO_PROJECT_PATH, path)
    return path


@pytest.fixture()
def store(project_file):
    return ProjectStore(project_file)


@pytest.fixture()
def client(store):
    return TestClient(create_app(store))


def test_health(client):
    doc = client.get("/api/health").json()
    assert doc == {"status": "ok", "schema_version": 1, "revision": 1}


def test_get_project_matches_file(client, project_file):
    res = client.get("/api/project")
    assert res.status_code == 200
    doc = res.json()
    assert doc["revision"] == 1
    on_disk = json.loads(project_file.read_text(encoding="utf-8"))
    assert doc["project"] == on_disk


def test_get_pair_and_unknown(client):
    res = client.get("/api/pairs/chatbot")
    assert res.status_code == 200
    assert res.json()["pair"]["id"] == "chatbot"
    missing = client.get("/api/pairs/ghost")
    assert missing.status_code == 404
    assert "ghost" in missing.json()["detail"]


def test_put_pair_bumps_revision_and_persists(client, store, project_file):
    pair_doc = client.get("/api/pairs/chatbot").json()["pair"]
    pair_doc["equal_consequence"] = False
    res = client.put("/api/pairs/chatbot", json={"revision": 1, "pair": pair_doc})
    assert res.status_code == 200
    assert res.json() == {"revision": 2}
    assert client.get("/api/health").json()["revision"] == 2
    # persisted: a brand new store reads the change back
    fresh = ProjectStore(project_file)
    pair = fresh.snapshot()[0].find_pair("chatbot")
    assert pair.equal_consequence is False


def test_put_pair_stale_revision_conflicts(client):
    pair_doc = client.get("/api/pairs/chatbot").json()["pair"]
    assert client.put("/api/pairs/chatbot",
                      json={"revision": 1, "pair": pair_doc}).status_code == 200
    stale = client.put("/api/pairs/chatbot", json={"revision": 1, "pair": pair_doc})
    assert stale.status_code == 409
    assert "stale" in stale.json()["detail"]
    # the current revision still works
    assert client.put("/api/pairs/chatbot",
                      json={"revision": 2, "pair": pair_doc}).status_code == 200


def test_put_pair_error_cases(client):
    pair_doc = client.get("/api/pairs/chatbot").json()["pair"]
    assert client.put("/api/pairs/ghost",
                      json={"revision": 1, "pair": pair_doc}).status_code == 404
    renamed = dict(pair_doc, id="other")
    mismatch = client.put("/api/pairs/chatbot", json={"revision": 1, "pair": renamed})
    assert mismatch.status_code == 422
    missing_field = client.put("/api/pairs/chatbot", json={"pair": pair_doc})
    assert missing_field.status_code == 400
    not_json = client.put("/api/pairs/chatbot",
                          content=b"{nope",
                          headers={"content-type": "application/json"})
    assert not_json.status_code == 400


def test_qualitative_get_put_roundtrip(client):
    res = client.get("/api/qualitative/baseline")
    assert res.status_code == 200
    table = res.json()["table"]
    assert table["ideation"]["relative_p"] == "high"
    table["acquisition"]["relative_p"] = "med"
    put = client.put("/api/qualitative/baseline",
                     json={"revision": 1, "table": table})
    assert put.status_code == 200
    again = client.get("/api/qualitative/baseline").json()
    assert again["revision"] == 2
    assert again["table"]["acquisition"]["relative_p"] == "med"
    assert client.get("/api/qualitative/ghost").status_code == 404
    bad_cell = dict(table)
    bad_cell["ideation"] = dict(table["ideation"], time="gigantic")
    res = client.put("/api/qualitative/baseline",
                     json={"revision": 2, "table": bad_cell})
    assert res.status_code == 422
    assert "gigantic" in res.json()["detail"]


def test_simulate_endpoint_matches_library(client, project_file):
    body = {"scenario_id": "chatbot_ai", "seed": 99, "n_trials": 400}
    doc = client.post("/api/simulate", json=body).json()
    project = load_project(project_file)
    scenario = project.find_scenario("chatbot_ai")
    trials = simulate(scenario, SimulationConfig(master_seed=99, n_trials=400))
    assert doc["mean_overall"] == trials.mean_overall()
    assert doc["risk"]["risk"] == trials.mean_overall() * 100000.0
    assert doc["disclaimer"] == DISCLAIMER_LINE
    assert doc["box_summaries"]["overall"]["n"] == 400
    assert doc["risk"]["independence_disclaimer"].startswith("Overall probability")


def test_simulate_endpoint_is_deterministic(client):
    body = {"scenario_id": "chatbot_baseline", "seed": 5, "n_trials": 300,
            "parallelism_hint": None}
    first = client.post("/api/simulate", json=body)
    second = client.post("/api/simulate", json=body)
    assert first.content == second.content
    chunked = client.post("/api/simulate", json=dict(body, parallelism_hint=4))
    assert json.loads(chunked.content)["mean_overall"] == first.json()["mean_overall"]


def test_simulate_endpoint_errors(client):
    assert client.post("/api/simulate",
                       json={"scenario_id": "ghost", "seed": 1}).status_code == 404
    missing_seed = client.post("/api/simulate", json={"scenario_id": "chatbot_ai"})
    assert missing_seed.status_code == 400
    detail = missing_seed.json()["detail"]
    assert any("seed" in str(item.get("loc", "")) for item in detail)
    domain = client.post("/api/simulate",
                         json={"scenario_id": "chatbot_ai", "seed": 1, "n_trials": 0})
    assert domain.status_code == 422


def test_whatif_noop_is_deterministic_and_consistent(client):
    body = {"pair_id": "chatbot", "seed": 42, "n_trials": 500, "overrides": []}
    first = client.post("/api/whatif", json=body)
    second = client.post("/api/whatif", json=body)
    assert first.status_code == 200
    assert first.content == second.content
    doc = first.json()
    assert doc["delta"] == doc["ai"]["risk"] - doc["baseline"]["risk"]
    assert doc["classification"] == "increased"
    assert doc["qualitative_flags"] == []
    assert set(doc["box_summaries"]) == {"baseline", "ai_augmented"}


def test_whatif_does_not_touch_the_stored_project(client, project_file):
    before = project_file.read_bytes()
    bodies = [
        {"pair_id": "chatbot", "seed": 1, "n_trials": 100},
        {"pair_id": "chatbot", "seed": 2, "n_trials": 100,
         "overrides": [{"variant": "ai_augmented", "step": "ideation",
                        "fixed_value": 0.0}]},
        {"pair_id": "chatbot", "seed": 3, "n_trials": 100,
         "consequence_override": 5.0},
    ]
    for body in bodies:
        assert client.post("/api/whatif", json=body).status_code == 200
    assert project_file.read_bytes() == before
    assert client.get("/api/health").json()["revision"] == 1


def test_whatif_fixed_value_annihilates_ai_side(client):
    noop = client.post("/api/whatif",
                       json={"pair_id": "chatbot", "seed": 7, "n_trials": 200}).json()
    body = {"pair_id": "chatbot", "seed": 7, "n_trials": 200,
            "overrides": [{"variant": "ai_augmented", "step": "production",
                           "fixed_value": 0.0}]}
    doc = client.post("/api/whatif", json=body).json()
    assert doc["ai"]["risk"] == 0.0
    assert doc["delta"] == -doc["baseline"]["risk"]
    assert doc["baseline"] == noop["baseline"]
    assert doc["classification"] == "decreased"


def test_whatif_dataset_override_swaps_cohort(client):
    noop = client.post("/api/whatif",
                       json={"pair_id": "chatbot", "seed": 7, "n_trials": 300}).json()
    body = {"pair_id": "chatbot", "seed": 7, "n_trials": 300,
            "overrides": [{"variant": "baseline", "step": "ideation",
                           "dataset": "synthetic_scores", "cohort": "internet_llm"}]}
    doc = client.post("/api/whatif", json=body).json()
    assert doc["baseline"]["risk"] != noop["baseline"]["risk"]
    assert doc["ai"] == noop["ai"]


def test_whatif_relative_p_override_flags_transition(client):
    body = {"pair_id": "chatbot", "seed": 7, "n_trials": 100,
            "overrides": [{"variant": "ai_augmented", "step": "acquisition",
                           "relative_p": "med"}]}
    doc = client.post("/api/whatif", json=body).json()
    assert doc["qualitative_flags"] == [{
        "step": "acquisition",
        "field": "relative_p",
        "baseline": "low",
        "ai": "med",
        "flag": "concerning",
    }]
    # same level on both sides produces no flag
    same = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 7, "n_trials": 100,
        "overrides": [{"variant": "ai_augmented", "step": "acquisition",
                       "relative_p": "low"}]})
    assert same.json()["qualitative_flags"] == []


def test_whatif_consequence_override_scales_risk(client):
    noop = client.post("/api/whatif",
                       json={"pair_id": "chatbot", "seed": 9, "n_trials": 200}).json()
    doubled = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 9, "n_trials": 200,
        "consequence_override": 200000.0}).json()
    assert doubled["baseline"]["risk"] == 2.0 * noop["baseline"]["risk"]
    assert doubled["ai"]["risk"] == 2.0 * noop["ai"]["risk"]


def test_whatif_error_cases(client):
    assert client.post("/api/whatif",
                       json={"pair_id": "ghost", "seed": 1}).status_code == 404
    twokinds = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1,
        "overrides": [{"variant": "baseline", "step": "ideation",
                       "fixed_value": 0.5, "relative_p": "med"}]})
    assert twokinds.status_code == 422
    assert "exactly one" in twokinds.json()["detail"]
    nokind = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1,
        "overrides": [{"variant": "baseline", "step": "ideation"}]})
    assert nokind.status_code == 422
    no_cohort = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1,
        "overrides": [{"variant": "baseline", "step": "ideation",
                       "dataset": "synthetic_scores"}]})
    assert no_cohort.status_code == 422
    unknown_ds = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1,
        "overrides": [{"variant": "baseline", "step": "ideation",
                       "dataset": "nope", "cohort": "internet"}]})
    assert unknown_ds.status_code == 422
    bad_value = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1,
        "overrides": [{"variant": "baseline", "step": "ideation",
                       "fixed_value": 1.3}]})
    assert bad_value.status_code == 422
    assert "outside [0, 1]" in bad_value.json()["detail"]
    neg_consequence = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1, "consequence_override": -5})
    assert neg_consequence.status_code == 422
    bad_step = client.post("/api/whatif", json={
        "pair_id": "chatbot", "seed": 1,
        "overrides": [{"variant": "baseline", "step": "launch",
                       "fixed_value": 0.5}]})
    assert bad_step.status_code == 422


def test_revision_is_monotonic_across_resources(client):
    pair_doc = client.get("/api/pairs/chatbot").json()["pair"]
    table = client.get("/api/qualitative/ai").json()["table"]
    assert client.put("/api/pairs/chatbot",
                      json={"revision": 1, "pair": pair_doc}).json() == {"revision": 2}
    assert client.put("/api/qualitative/ai",
                      json={"revision": 2, "table": table}).json() == {"revision": 3}
    assert client.get("/api/health").json()["revision"] == 3


def test_store_conflict_error_directly(store):
    pair_doc = {"id": "chatbot", "baseline": "chatbot_baseline",
                "ai": "chatbot_ai", "equal_consequence": True}
    with pytest.raises(ConflictError, match="stale"):
        store.replace_pair("chatbot", pair_doc, expected_revision=99)
    with pytest.raises(LookupError, match="unknown pair"):
        store.replace_pair("ghost", pair_doc, expected_revision=1)


def test_static_dir_serves_explorer_when_present(store, tmp_path):
    no_ui = TestClient(create_app(store))
    assert no_ui.get("/").status_code == 404

    ui_dir = tmp_path / "ui"
    ui_dir.mkdir()
    (ui_dir / "index.html").write_text("<!doctype html><title>x</title>",
                                       encoding="utf-8")
    with_ui = TestClient(create_app(store, static_dir=ui_dir))
    res = with_ui.get("/")
    assert res.status_code == 200
    assert "doctype" in res.text
    # the API keeps working alongside the static mount
    assert with_ui.get("/api/health").status_code == 200
