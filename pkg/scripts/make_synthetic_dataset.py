"""Regenerate the bundled synthetic fixture under data/.

Writes three files:

* ``synthetic_scores.csv``   -- 100 synthetic participants (50 per cohort)
  scored 0-10 on each of the five chain steps.
* ``synthetic_scores_manifest.json`` -- how the scores were generated and
  what the realized per-cell means are.
* ``demo_project.json``      -- a complete project wired to the dataset:
  one scenario pair, both qualitative tables, one assessment workflow.

Everything is synthetic. Scores are binomial(10, rate) draws from a fixed
seed; the per-step rates are notional values chosen so the two cohorts'
overall probability products land near 0.005 and 0.018, giving the demo a
visible risk delta at consequence 100,000. No real study data is used or
implied.

Run from the repository root:  python3 scripts/make_synthetic_dataset.py
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from riskchain.chain import CHAIN_ORDER
from riskchain.distfit import Cohort, from_scores
from riskchain.ingest import (
    Project,
    ScoreDataset,
    dumps_canonical,
    parse_score_csv,
    resolve_scenario,
    save_project,
)
from riskchain.qualitative import (
    AI_TABLE_NAME,
    BASELINE_TABLE_NAME,
    AssessmentWorkflow,
    ConcernAssessment,
    Level,
    ToolRecord,
    default_profile_table,
    update_concern,
)
from riskchain.riskmodel import (
    ConsequenceModel,
    DistributionRef,
    Scenario,
    ScenarioPair,
    ScenarioVariant,
    StepModel,
)

SEED = 20240817

N_PER_COHORT = 50

SCALE_MAX = 10

# Mean success rate per step; the cohort with the assistant scores higher
# on every step. Products: 0.45*0.35*0.30*0.30*0.35 ~= 0.0050 and
# 0.55*0.45*0.40*0.40*0.45 ~= 0.0178.
STEP_RATES = {
    Cohort.INTERNET: (0.45, 0.35, 0.30, 0.30, 0.35),
    Cohort.INTERNET_LLM: (0.55, 0.45, 0.40, 0.40, 0.45),
}

DATASET_NAME = "synthetic_scores"

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def generate_csv() -> str:
    rng = np.random.default_rng(SEED)
    lines = ["participant_id,cohort,step,score"]
    for cohort, prefix in ((Cohort.INTERNET, "n"), (Cohort.INTERNET_LLM, "l")):
        for step, rate in zip(CHAIN_ORDER, STEP_RATES[cohort]):
            scores = rng.binomial(SCALE_MAX, rate, size=N_PER_COHORT)
            for i, score in enumerate(scores, start=1):
                lines.append(f"{prefix}{i:03d},{cohort.token},{step.token},{int(score)}")
    return "\n".join(lines) + "\n"


def build_manifest(dataset: ScoreDataset) -> dict:
    cells = []
    for cohort in Cohort:
        for step, rate in zip(CHAIN_ORDER, STEP_RATES[cohort]):
            rows = dataset.select(cohort, step)
            dist = from_scores(rows, scale_max=SCALE_MAX)
            cells.append(
                {
                    "cohort": cohort.token,
                    "step": step.token,
                    "n": len(rows),
                    "target_rate": rate,
                    "realized_mean_probability": dist.mean(),
                }
            )
    products = {}
    for cohort in Cohort:
        product = 1.0
        for step in CHAIN_ORDER:
            rows = dataset.select(cohort, step)
            product *= from_scores(rows, scale_max=SCALE_MAX).mean()
        products[cohort.token] = product
    return {
        "dataset": DATASET_NAME,
        "synthetic": True,
        "generator": "numpy default_rng binomial(10, rate) per cohort and step",
        "seed": SEED,
        "participants_per_cohort": N_PER_COHORT,
        "scale_max": SCALE_MAX,
        "cells": cells,
        "overall_probability_products": products,
        "note": (
            "Synthetic fixture for demos and tests. Rates are notional and "
            "the participants do not exist."
        ),
    }


def build_project(dataset: ScoreDataset) -> Project:
    consequence = ConsequenceModel(
        value=100000.0,
        units="deaths",
        uncertainty_note="notional magnitude for a mass-casualty outcome",
    )
    datasets = {dataset.name: dataset}
    baseline = resolve_scenario(
        Scenario(
            id="chatbot_baseline",
            variant=ScenarioVariant.BASELINE,
            steps={
                step: StepModel(
                    distribution=DistributionRef(DATASET_NAME, Cohort.INTERNET)
                )
                for step in CHAIN_ORDER
            },
            consequence=consequence,
            description="actor with internet access only",
        ),
        datasets,
    )
    ai = resolve_scenario(
        Scenario(
            id="chatbot_ai",
            variant=ScenarioVariant.AI_AUGMENTED,
            steps={
                step: StepModel(
                    distribution=DistributionRef(DATASET_NAME, Cohort.INTERNET_LLM)
                )
                for step in CHAIN_ORDER
            },
            consequence=consequence,
            description="actor with internet access plus a chat assistant",
        ),
        datasets,
    )
    pair = ScenarioPair(id="chatbot", baseline=baseline, ai=ai, equal_consequence=True)
    workflow = AssessmentWorkflow(
        id="demo_assessment",
        organisms=("organism-alpha",),
        tools=(
            ToolRecord(name="chat-assistant", source="public release notes"),
            ToolRecord(name="design-tool-beta", source="vendor documentation"),
        ),
    )
    evaluations = (
        ConcernAssessment(
            organism="organism-alpha",
            ai_tool="chat-assistant",
            usability_of_technology=Level.MED,
            usability_as_weapon=Level.LOW,
            requirements_of_actors=Level.HIGH,
            potential_for_mitigation=Level.MED,
            subcomponent_notes={"interface": "conversational, no lab integration"},
            overall_concern=Level.LOW,
            rationale="answers stay at textbook depth in the scored tasks",
            timestamp="2024-08-17T00:00:00.000000+00:00",
        ),
        ConcernAssessment(
            organism="organism-alpha",
            ai_tool="design-tool-beta",
            usability_of_technology=Level.LOW,
            usability_as_weapon=Level.MED,
            requirements_of_actors=Level.HIGH,
            potential_for_mitigation=Level.MED,
            subcomponent_notes={"interface": "requires domain file formats"},
            overall_concern=Level.LOW,
            rationale="steep skill floor keeps unskilled actors out for now",
            timestamp="2024-08-17T00:00:01.000000+00:00",
        ),
    )
    workflow = AssessmentWorkflow(
        id=workflow.id,
        organisms=workflow.organisms,
        tools=workflow.tools,
        evaluations=evaluations,
    )
    workflow = update_concern(
        workflow,
        capability="step-by-step troubleshooting",
        new_level=Level.MED,
        rationale="newer assistant version explains failure modes in more detail",
        old_level=Level.LOW,
    )
    return Project(
        name="synthetic-demo",
        datasets=(dataset,),
        scenarios=(baseline, ai),
        pairs=(pair,),
        profiles={
            BASELINE_TABLE_NAME: default_profile_table(),
            AI_TABLE_NAME: default_profile_table(),
        },
        workflows=(workflow,),
    )


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    csv_text = generate_csv()
    (DATA_DIR / "synthetic_scores.csv").write_text(csv_text, encoding="utf-8", newline="\n")
    samples = parse_score_csv(csv_text)
    dataset = ScoreDataset(
        name=DATASET_NAME,
        samples=tuple(samples),
        description="synthetic 0-10 step scores, 50 participants per cohort",
    )
    manifest = build_manifest(dataset)
    (DATA_DIR / "synthetic_scores_manifest.json").write_text(
        dumps_canonical(manifest), encoding="utf-8", newline="\n"
    )
    save_project(build_project(dataset), DATA_DIR / "demo_project.json")
    for cell in manifest["cells"]:
        print(
            f"{cell['cohort']:13s} {cell['step']:13s} n={cell['n']} "
            f"target={cell['target_rate']:.2f} realized={cell['realized_mean_probability']:.3f}"
        )
    print("products:", manifest["overall_probability_products"])
    print(f"wrote {DATA_DIR / 'synthetic_scores.csv'}")
    print(f"wrote {DATA_DIR / 'synthetic_scores_manifest.json'}")
    print(f"wrote {DATA_DIR / 'demo_project.json'}")


if __name__ == "__main__":
    main()
