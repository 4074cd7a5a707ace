"""HTTP API over a project store.

The service binds to loopback by default and exposes the project for
reading, pairs and qualitative tables for revisioned editing, and two
computation endpoints. Status codes: 400 for malformed bodies, 404 for
unknown ids, 409 for stale revisions, 422 for well-formed bodies that
violate domain rules. What-if runs never touch the stored project, so
identical requests return identical bodies.
"""

from __future__ import annotations

import threading
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .chain import CHAIN_ORDER, ChainStep
from .errors import RiskChainError, ValidationError
from .ingest import (
    SCHEMA_VERSION,
    Project,
    fit_from_dataset,
    load_project,
    pair_from_dict,
    pair_to_dict,
    profile_table_from_dict,
    profile_table_to_dict,
    project_to_dict,
    save_project,
)
from .qualitative import (
    AI_TABLE_NAME,
    BASELINE_TABLE_NAME,
    Level,
    flag_transition,
)
from .report import DISCLAIMER_LINE, box_summaries_for
from .riskmodel import (
    ConsequenceModel,
    DistributionRef,
    RiskResult,
    Scenario,
    ScenarioVariant,
    StepModel,
    classify_risk_change,
)
from .simengine import DEFAULT_N_TRIALS, SimulationConfig, analytic_mean, simulate, simulate_pair


class ConflictError(RiskChainError):
    """A write carried a stale revision number."""


class ProjectStore:
    """Single-writer store: one project file, a revision counter, a lock.

    Reads hand out immutable snapshots; writes re-validate, persist, and
    bump the revision, so a stale client's PUT can be rejected with 409.
    """

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._project = load_project(self._path)
        self._revision = 1
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self._path

    def snapshot(self) -> tuple[Project, int]:
        with self._lock:
            return self._project, self._revision

    def _check_revision(self, expected: int) -> None:
        if expected != self._revision:
            raise ConflictError(
                f"revision {expected} is stale; current revision is {self._revision}"
            )

    def replace_pair(self, pair_id: str, pair_doc: dict, expected_revision: int) -> int:
        with self._lock:
            self._check_revision(expected_revision)
            project = self._project
            if project.find_pair(pair_id) is None:
                raise LookupError(f"unknown pair {pair_id!r}")
            scenarios_by_id = {s.id: s for s in project.scenarios}
            new_pair = pair_from_dict(pair_doc, "pair", scenarios_by_id)
            if new_pair.id != pair_id:
                raise ValidationError(
                    f"pair id {new_pair.id!r} in body does not match URL id {pair_id!r}"
                )
            pairs = tuple(new_pair if p.id == pair_id else p for p in project.pairs)
            self._project = replace(project, pairs=pairs)
            save_project(self._project, self._path)
            self._revision += 1
            return self._revision

    def replace_profile(self, table_id: str, table_doc: dict, expected_revision: int) -> int:
        with self._lock:
            self._check_revision(expected_revision)
            project = self._project
            if table_id not in project.profiles:
                raise LookupError(f"unknown profile table {table_id!r}")
            table = profile_table_from_dict(table_doc, f"profiles.{table_id}")
            profiles = dict(project.profiles)
            profiles[table_id] = table
            self._project = replace(project, profiles=profiles)
            save_project(self._project, self._path)
            self._revision += 1
            return self._revision


class PairPut(BaseModel):
    revision: int
    pair: dict


class ProfilePut(BaseModel):
    revision: int
    table: dict


class SimulateBody(BaseModel):
    scenario_id: str
    seed: int
    n_trials: int = DEFAULT_N_TRIALS
    parallelism_hint: int | None = None


class OverrideBody(BaseModel):
    variant: str
    step: str
    fixed_value: float | None = None
    dataset: str | None = None
    cohort: str | None = None
    relative_p: str | None = None


class WhatIfBody(BaseModel):
    pair_id: str
    seed: int
    n_trials: int = DEFAULT_N_TRIALS
    parallelism_hint: int | None = None
    overrides: list[OverrideBody] = []
    consequence_override: float | None = None


def _relative_p_levels(project: Project, table_name: str) -> dict[ChainStep, Level]:
    table = project.profiles.get(table_name)
    if table is None:
        return {}
    return {step: table[step].relative_p for step in CHAIN_ORDER}


def _apply_override(
    override: OverrideBody,
    steps_by_variant: dict[ScenarioVariant, dict],
    levels_by_variant: dict[ScenarioVariant, dict],
    project: Project,
) -> None:
    variant = ScenarioVariant.from_token(override.variant)
    step = ChainStep.from_token(override.step)
    from .distfit import Cohort

    kinds = [
        override.fixed_value is not None,
        override.dataset is not None or override.cohort is not None,
        override.relative_p is not None,
    ]
    if sum(kinds) != 1:
        raise ValidationError(
            "override needs exactly one of fixed_value, dataset+cohort, or relative_p"
        )
    if override.fixed_value is not None:
        steps_by_variant[variant][step] = StepModel(fixed_value=override.fixed_value)
    elif override.relative_p is not None:
        levels_by_variant[variant][step] = Level.from_token(override.relative_p)
    else:
        if override.dataset is None or override.cohort is None:
            raise ValidationError("distribution override needs both dataset and cohort")
        dataset = project.find_dataset(override.dataset)
        if dataset is None:
            raise ValidationError(f"unknown dataset {override.dataset!r}")
        cohort = Cohort.from_token(override.cohort)
        fitted = fit_from_dataset(dataset, cohort, step)
        steps_by_variant[variant][step] = StepModel(
            distribution=fitted, source=DistributionRef(dataset.name, cohort)
        )


def _scenario_with(scenario: Scenario, steps: dict, consequence_value: float | None) -> Scenario:
    consequence = scenario.consequence
    if consequence_value is not None:
        consequence = ConsequenceModel(
            value=consequence_value,
            units=consequence.units,
            uncertainty_note=consequence.uncertainty_note,
        )
    return replace(scenario, steps=steps, consequence=consequence)


def create_app(store: ProjectStore, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="riskchain service", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def _malformed_body(request: Request, exc: RequestValidationError):
        detail = [
            {
                "loc": [str(part) for part in err.get("loc", ())],
                "msg": err.get("msg", ""),
                "type": err.get("type", ""),
            }
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.exception_handler(ValidationError)
    async def _domain_violation(request: Request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(RiskChainError)
    async def _domain_error(request: Request, exc: RiskChainError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/api/health")
    def health():
        _, revision = store.snapshot()
        return {"status": "ok", "schema_version": SCHEMA_VERSION, "revision": revision}

    @app.get("/api/project")
    def get_project():
        project, revision = store.snapshot()
        return {"revision": revision, "project": project_to_dict(project)}

    @app.get("/api/pairs/{pair_id}")
    def get_pair(pair_id: str):
        project, revision = store.snapshot()
        pair = project.find_pair(pair_id)
        if pair is None:
            raise HTTPException(status_code=404, detail=f"unknown pair {pair_id!r}")
        return {"revision": revision, "pair": pair_to_dict(pair)}

    @app.put("/api/pairs/{pair_id}")
    def put_pair(pair_id: str, body: PairPut):
        try:
            revision = store.replace_pair(pair_id, body.pair, body.revision)
        except ConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        except LookupError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return {"revision": revision}

    @app.get("/api/qualitative/{table_id}")
    def get_qualitative(table_id: str):
        project, revision = store.snapshot()
        table = project.profiles.get(table_id)
        if table is None:
            raise HTTPException(
                status_code=404, detail=f"unknown profile table {table_id!r}"
            )
        return {"revision": revision, "table": profile_table_to_dict(table)}

    @app.put("/api/qualitative/{table_id}")
    def put_qualitative(table_id: str, body: ProfilePut):
        try:
            revision = store.replace_profile(table_id, body.table, body.revision)
        except ConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        except LookupError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return {"revision": revision}

    @app.post("/api/simulate")
    def post_simulate(body: SimulateBody):
        project, revision = store.snapshot()
        scenario = project.find_scenario(body.scenario_id)
        if scenario is None:
            raise HTTPException(
                status_code=404, detail=f"unknown scenario {body.scenario_id!r}"
            )
        config = SimulationConfig(
            master_seed=body.seed,
            n_trials=body.n_trials,
            parallelism_hint=body.parallelism_hint,
        )
        trials = simulate(scenario, config)
        risk = RiskResult.from_probability(
            trials.mean_overall(), scenario.consequence, scenario.variant
        )
        boxes = box_summaries_for(trials)
        return {
            "disclaimer": DISCLAIMER_LINE,
            "revision": revision,
            "scenario_id": scenario.id,
            "seed": body.seed,
            "n_trials": body.n_trials,
            "mean_overall": trials.mean_overall(),
            "analytic_mean": analytic_mean(scenario),
            "risk": risk.to_dict(),
            "box_summaries": {key: box.to_dict() for key, box in boxes.items()},
        }

    @app.post("/api/whatif")
    def post_whatif(body: WhatIfBody):
        project, revision = store.snapshot()
        pair = project.find_pair(body.pair_id)
        if pair is None:
            raise HTTPException(status_code=404, detail=f"unknown pair {body.pair_id!r}")
        config = SimulationConfig(
            master_seed=body.seed,
            n_trials=body.n_trials,
            parallelism_hint=body.parallelism_hint,
        )
        if body.consequence_override is not None and body.consequence_override < 0:
            raise ValidationError(
                f"consequence_override {body.consequence_override!r} must be >= 0"
            )
        steps_by_variant = {
            ScenarioVariant.BASELINE: dict(pair.baseline.steps),
            ScenarioVariant.AI_AUGMENTED: dict(pair.ai.steps),
        }
        levels_by_variant = {
            ScenarioVariant.BASELINE: _relative_p_levels(project, BASELINE_TABLE_NAME),
            ScenarioVariant.AI_AUGMENTED: _relative_p_levels(project, AI_TABLE_NAME),
        }
        for override in body.overrides:
            _apply_override(override, steps_by_variant, levels_by_variant, project)
        baseline = _scenario_with(
            pair.baseline,
            steps_by_variant[ScenarioVariant.BASELINE],
            body.consequence_override,
        )
        ai = _scenario_with(
            pair.ai,
            steps_by_variant[ScenarioVariant.AI_AUGMENTED],
            body.consequence_override,
        )
        sim = simulate_pair(replace(pair, baseline=baseline, ai=ai), config)
        flags = []
        for step in CHAIN_ORDER:
            before = levels_by_variant[ScenarioVariant.BASELINE].get(step)
            after = levels_by_variant[ScenarioVariant.AI_AUGMENTED].get(step)
            if before is None or after is None or before is after:
                continue
            flags.append(
                {
                    "step": step.token,
                    "field": "relative_p",
                    "baseline": before.token,
                    "ai": after.token,
                    "flag": flag_transition(before, after).token,
                }
            )
        return {
            "disclaimer": DISCLAIMER_LINE,
            "revision": revision,
            "pair_id": pair.id,
            "seed": body.seed,
            "n_trials": body.n_trials,
            "baseline": sim.baseline_risk.to_dict(),
            "ai": sim.ai_risk.to_dict(),
            "delta": sim.delta,
            "classification": classify_risk_change(sim.delta).value,
            "box_summaries": {
                sim.baseline.variant.token: {
                    key: box.to_dict() for key, box in box_summaries_for(sim.baseline).items()
                },
                sim.ai.variant.token: {
                    key: box.to_dict() for key, box in box_summaries_for(sim.ai).items()
                },
            },
            "qualitative_flags": flags,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="explorer")

    return app
