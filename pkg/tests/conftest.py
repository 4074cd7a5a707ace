from __future__ import annotations

from pathlib import Path

import pytest

from riskchain import (
    CHAIN_ORDER,
    ConsequenceModel,
    Scenario,
    ScenarioPair,
    ScenarioVariant,
    StepModel,
    load_project,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

DEMO_PROJECT_PATH = DATA_DIR / "demo_project.json"


def make_scenario(
    scenario_id: str,
    variant: ScenarioVariant,
    step_models,
    consequence_value: float = 100000.0,
    units: str = "deaths",
) -> Scenario:
    """Scenario from five StepModels (or one model applied to all steps)."""
    if isinstance(step_models, StepModel):
        step_models = [step_models] * len(CHAIN_ORDER)
    return Scenario(
        id=scenario_id,
        variant=variant,
        steps=dict(zip(CHAIN_ORDER, step_models)),
        consequence=ConsequenceModel(value=consequence_value, units=units),
    )


def fixed_scenario(
    scenario_id: str,
    variant: ScenarioVariant,
    values,
    consequence_value: float = 100000.0,
) -> Scenario:
    models = [StepModel(fixed_value=v) for v in values]
    return make_scenario(scenario_id, variant, models, consequence_value)


def make_pair(baseline: Scenario, ai: Scenario, pair_id: str = "pair") -> ScenarioPair:
    return ScenarioPair(id=pair_id, baseline=baseline, ai=ai)


@pytest.fixture(scope="session")
def demo_project():
    return load_project(DEMO_PROJECT_PATH)


@pytest.fixture()
def demo_project_path() -> Path:
    return DEMO_PROJECT_PATH
