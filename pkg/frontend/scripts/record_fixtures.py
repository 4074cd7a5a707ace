"""Record what-if response fixtures for the explorer test suite.

Builds a small project whose chains are all fixed values, runs the real
HTTP service against it, and writes the literal response bodies to
frontend/tests/fixtures/. Run from the repository root:

    python3 frontend/scripts/record_fixtures.py

Regenerate only when the service response schema changes; the explorer
tests pin these bytes.
"""

from __future__ import annotations

import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from riskchain import (
    ConsequenceModel,
    Project,
    Scenario,
    ScenarioPair,
    ScenarioVariant,
    StepModel,
    default_profile_table,
    dumps_canonical,
    save_project,
)
from riskchain.chain import CHAIN_ORDER
from riskchain.service import ProjectStore, create_app

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# Fixed per-step values chosen so the overall products are exactly 0.005
# and 0.017; with consequence 100000 the risks land on 500 and 1700.
BASELINE_STEPS = [1.0, 1.0, 1.0, 1.0, 0.005]
AI_STEPS = [1.0, 1.0, 1.0, 1.0, 0.017]

# Trial count where the mean of a constant sample is exact for both
# products (numpy pairwise summation rounds at most counts).
N_TRIALS = 2200


def fixed_scenario(scenario_id: str, variant: ScenarioVariant, values) -> Scenario:
    return Scenario(
        id=scenario_id,
        variant=variant,
        steps=dict(zip(CHAIN_ORDER, (StepModel(fixed_value=v) for v in values))),
        consequence=ConsequenceModel(value=100000.0, units="deaths"),
    )


def main() -> None:
    baseline = fixed_scenario("manual_baseline", ScenarioVariant.BASELINE, BASELINE_STEPS)
    ai = fixed_scenario("manual_ai", ScenarioVariant.AI_AUGMENTED, AI_STEPS)
    project = Project(
        name="fixture",
        scenarios=(baseline, ai),
        pairs=(ScenarioPair(id="manual", baseline=baseline, ai=ai),),
        profiles={"baseline": default_profile_table(), "ai": default_profile_table()},
    )
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "project.json"
        save_project(project, path)
        client = TestClient(create_app(ProjectStore(path)))

        plain = {"pair_id": "manual", "seed": 7, "n_trials": N_TRIALS, "overrides": []}
        resp = client.post("/api/whatif", json=plain)
        resp.raise_for_status()
        doc = resp.json()
        assert doc["baseline"]["risk"] == 500.0, doc["baseline"]["risk"]
        assert doc["ai"]["risk"] == 1700.0000000000002, doc["ai"]["risk"]
        (FIXTURE_DIR / "whatif_500_1700.json").write_text(
            dumps_canonical(doc), encoding="utf-8"
        )

        flagged = dict(plain)
        flagged["overrides"] = [
            {"variant": "ai_augmented", "step": "acquisition", "relative_p": "med"}
        ]
        resp = client.post("/api/whatif", json=flagged)
        resp.raise_for_status()
        doc = resp.json()
        assert doc["qualitative_flags"], "expected a concerning flag"
        (FIXTURE_DIR / "whatif_flagged.json").write_text(
            dumps_canonical(doc), encoding="utf-8"
        )
    print(f"wrote fixtures to {FIXTURE_DIR}")


if __name__ == "__main__":
    main()
