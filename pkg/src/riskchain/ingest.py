"""Score CSV parsing and the JSON project store.

The CSV contract: header ``participant_id,cohort,step,score``, one graded
attempt per row, tokens lowercase (cohorts ``internet`` /
``internet_llm``; steps ``ideation`` / ``acquisition`` / ``production`` /
``weaponization`` / ``deploy``), scores real numbers in [0, 10]. Errors
cite 1-based line numbers with the header as line 1.

A project file is a single JSON document holding datasets, scenarios,
scenario pairs, qualitative profile tables, and assessment workflows.
Serialization is canonical: sorted keys, two-space indent, UTF-8, LF line
endings, one trailing newline. Loading then saving a file reproduces it
byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path

from .chain import CHAIN_ORDER, ChainStep
from .distfit import Cohort, EmpiricalDistribution, ScoreSample, from_scores
from .errors import InsufficientDataError, SchemaError, ValidationError
from .qualitative import (
    PROFILE_FIELDS,
    AssessmentWorkflow,
    ConcernAssessment,
    ConcernUpdate,
    Level,
    StepRequirementProfile,
    ToolRecord,
)
from .riskmodel import (
    ConsequenceModel,
    DistributionRef,
    Scenario,
    ScenarioPair,
    ScenarioVariant,
    StepModel,
)

SCHEMA_VERSION = 1

CSV_COLUMNS = ("participant_id", "cohort", "step", "score")


def parse_score_csv(data: bytes | str) -> list[ScoreSample]:
    """Parse score rows, reporting the first problem with its line number."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"score CSV is not valid UTF-8: {exc}") from None
    else:
        text = data
    rows = csv.reader(io.StringIO(text))
    try:
        header = next(rows)
    except StopIteration:
        raise SchemaError("score CSV is empty (expected a header), line 1") from None
    if tuple(header) != CSV_COLUMNS:
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"missing column(s) {', '.join(missing)}, line 1")
        extra = [c for c in header if c not in CSV_COLUMNS]
        if extra:
            raise SchemaError(f"unexpected column(s) {', '.join(extra)}, line 1")
        raise SchemaError(
            f"columns must be ordered {','.join(CSV_COLUMNS)}, line 1"
        )
    samples = []
    for lineno, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise ValidationError(f"expected {len(CSV_COLUMNS)} fields, got {len(row)}, line {lineno}")
        participant_id, cohort_token, step_token, score_token = row
        if not participant_id:
            raise ValidationError(f"empty participant_id, line {lineno}")
        try:
            cohort = Cohort.from_token(cohort_token)
        except ValidationError:
            raise ValidationError(f"unknown cohort {cohort_token!r}, line {lineno}") from None
        try:
            step = ChainStep.from_token(step_token)
        except ValidationError:
            raise ValidationError(f"unknown step {step_token!r}, line {lineno}") from None
        try:
            score = float(score_token)
        except ValueError:
            raise ValidationError(f"invalid score {score_token!r}, line {lineno}") from None
        if not 0.0 <= score <= 10.0:
            raise ValidationError(f"score out of range, line {lineno}")
        samples.append(ScoreSample(participant_id, cohort, step, score))
    return samples


def _sample_sort_key(s: ScoreSample):
    return (s.cohort.token, s.step.index, s.participant_id, s.score)


@dataclass(frozen=True)
class ScoreDataset:
    """A named collection of score samples, held in canonical order."""

    name: str
    samples: tuple[ScoreSample, ...]
    description: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("dataset name must be non-empty")
        ordered = tuple(sorted(self.samples, key=_sample_sort_key))
        object.__setattr__(self, "samples", ordered)

    def select(self, cohort: Cohort, step: ChainStep) -> list[ScoreSample]:
        return [s for s in self.samples if s.cohort is cohort and s.step is step]


def fit_from_dataset(
    dataset: ScoreDataset, cohort: Cohort, step: ChainStep, scale_max: float = 10.0
) -> EmpiricalDistribution:
    """Fit one (cohort, step) cell of a dataset."""
    rows = dataset.select(cohort, step)
    if not rows:
        raise InsufficientDataError(
            f"insufficient data: dataset {dataset.name!r} has no scores for "
            f"cohort {cohort.token!r} step {step.token!r}"
        )
    provenance = (
        f"dataset={dataset.name} cohort={cohort.token} step={step.token} n={len(rows)}"
    )
    return from_scores(rows, scale_max=scale_max, provenance=provenance)


def resolve_scenario(scenario: Scenario, datasets: dict[str, ScoreDataset]) -> Scenario:
    """Replace every unresolved distribution reference by a fitted distribution."""
    steps = {}
    changed = False
    for step, model in scenario.steps.items():
        if isinstance(model.distribution, DistributionRef):
            ref = model.distribution
            if ref.dataset not in datasets:
                raise ValidationError(
                    f"scenario {scenario.id!r} step {step.token}: unknown dataset {ref.dataset!r}"
                )
            fitted = fit_from_dataset(datasets[ref.dataset], ref.cohort, step)
            model = StepModel(distribution=fitted, source=ref)
            changed = True
        steps[step] = model
    if not changed:
        return scenario
    return replace(scenario, steps=steps)


@dataclass(frozen=True)
class Project:
    """Everything one analysis carries: data, scenarios, pairs, judgments."""

    name: str
    datasets: tuple[ScoreDataset, ...] = ()
    scenarios: tuple[Scenario, ...] = ()
    pairs: tuple[ScenarioPair, ...] = ()
    profiles: dict[str, dict[ChainStep, StepRequirementProfile]] = None
    workflows: tuple[AssessmentWorkflow, ...] = ()
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("project name must be non-empty")
        if self.schema_version != SCHEMA_VERSION:
            raise SchemaError(
                f"unsupported schema_version {self.schema_version!r} "
                f"(this build supports {SCHEMA_VERSION})"
            )
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        object.__setattr__(self, "pairs", tuple(self.pairs))
        object.__setattr__(self, "workflows", tuple(self.workflows))
        object.__setattr__(self, "profiles", dict(self.profiles or {}))
        for label, ids in (
            ("dataset", [d.name for d in self.datasets]),
            ("scenario", [s.id for s in self.scenarios]),
            ("pair", [p.id for p in self.pairs]),
            ("workflow", [w.id for w in self.workflows]),
        ):
            dupes = {i for i in ids if ids.count(i) > 1}
            if dupes:
                raise ValidationError(f"duplicate {label} id(s): {', '.join(sorted(dupes))}")
        dataset_names = {d.name for d in self.datasets}
        scenario_by_id = {s.id: s for s in self.scenarios}
        for scenario in self.scenarios:
            for step, model in scenario.steps.items():
                ref = model.source
                if ref is None and isinstance(model.distribution, DistributionRef):
                    ref = model.distribution
                if ref is not None and ref.dataset not in dataset_names:
                    raise ValidationError(
                        f"scenario {scenario.id!r} step {step.token}: "
                        f"unknown dataset {ref.dataset!r}"
                    )
        for pair in self.pairs:
            for side, scenario in (("baseline", pair.baseline), ("ai", pair.ai)):
                known = scenario_by_id.get(scenario.id)
                if known is None:
                    raise ValidationError(
                        f"pair {pair.id!r} {side}: unknown scenario id {scenario.id!r}"
                    )
                if known != scenario:
                    raise ValidationError(
                        f"pair {pair.id!r} {side}: scenario {scenario.id!r} does not "
                        f"match the project's scenario of that id"
                    )
        for name, table in self.profiles.items():
            if not name:
                raise ValidationError("profile table name must be non-empty")
            missing = [s.token for s in CHAIN_ORDER if s not in table]
            if missing:
                raise ValidationError(
                    f"profile table {name!r} missing steps: {', '.join(missing)}"
                )

    def find_dataset(self, name: str) -> ScoreDataset | None:
        return next((d for d in self.datasets if d.name == name), None)

    def find_scenario(self, scenario_id: str) -> Scenario | None:
        return next((s for s in self.scenarios if s.id == scenario_id), None)

    def find_pair(self, pair_id: str) -> ScenarioPair | None:
        return next((p for p in self.pairs if p.id == pair_id), None)


@contextmanager
def _at(where: str):
    """Prefix validation errors with the element path that raised them."""
    try:
        yield
    except ValidationError as exc:
        message = str(exc)
        if not message.startswith(where):
            exc = type(exc)(f"{where}: {message}")
        raise exc from None


def _as_dict(doc, where: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object, got {type(doc).__name__}")
    return doc


def _as_list(doc, where: str) -> list:
    if not isinstance(doc, list):
        raise SchemaError(f"{where}: expected an array, got {type(doc).__name__}")
    return doc


def _get(doc: dict, key: str, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing key {key!r}")
    return doc[key]


def _get_str(doc: dict, key: str, where: str) -> str:
    value = _get(doc, key, where)
    if not isinstance(value, str):
        raise SchemaError(f"{where}.{key}: expected a string, got {type(value).__name__}")
    return value


def _get_number(doc: dict, key: str, where: str) -> float:
    value = _get(doc, key, where)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}.{key}: expected a number, got {type(value).__name__}")
    return float(value)


# -- per-element serialization ------------------------------------------------

def _sample_to_dict(sample: ScoreSample) -> dict:
    return {
        "participant_id": sample.participant_id,
        "cohort": sample.cohort.token,
        "step": sample.step.token,
        "score": sample.score,
    }


def _dataset_to_dict(dataset: ScoreDataset) -> dict:
    return {
        "name": dataset.name,
        "description": dataset.description,
        "samples": [_sample_to_dict(s) for s in dataset.samples],
    }


def _dataset_from_dict(doc, where: str) -> ScoreDataset:
    doc = _as_dict(doc, where)
    name = _get_str(doc, "name", where)
    description = _get_str(doc, "description", where)
    samples = []
    for i, sdoc in enumerate(_as_list(_get(doc, "samples", where), f"{where}.samples")):
        sw = f"{where}.samples[{i}]"
        sdoc = _as_dict(sdoc, sw)
        with _at(sw):
            samples.append(
                ScoreSample(
                    participant_id=_get_str(sdoc, "participant_id", sw),
                    cohort=Cohort.from_token(_get_str(sdoc, "cohort", sw)),
                    step=ChainStep.from_token(_get_str(sdoc, "step", sw)),
                    score=_get_number(sdoc, "score", sw),
                )
            )
    with _at(where):
        return ScoreDataset(name=name, samples=tuple(samples), description=description)


def _step_model_to_dict(model: StepModel) -> dict:
    if model.fixed_value is not None:
        return {"fixed_value": model.fixed_value}
    ref = model.source
    if ref is None and isinstance(model.distribution, DistributionRef):
        ref = model.distribution
    if ref is not None:
        return {"dataset": ref.dataset, "cohort": ref.cohort.token}
    dist = model.distribution
    return {
        "support": [[v, w] for v, w in dist.support],
        "provenance": dist.provenance,
    }


def _step_model_from_dict(doc, where: str) -> StepModel:
    doc = _as_dict(doc, where)
    with _at(where):
        if "fixed_value" in doc:
            return StepModel(fixed_value=_get_number(doc, "fixed_value", where))
        if "dataset" in doc or "cohort" in doc:
            ref = DistributionRef(
                dataset=_get_str(doc, "dataset", where),
                cohort=Cohort.from_token(_get_str(doc, "cohort", where)),
            )
            return StepModel(distribution=ref)
        if "support" in doc:
            support = _as_list(doc["support"], f"{where}.support")
            values, weights = [], []
            for i, pair in enumerate(support):
                pair = _as_list(pair, f"{where}.support[{i}]")
                if len(pair) != 2:
                    raise SchemaError(
                        f"{where}.support[{i}]: expected [value, weight]"
                    )
                values.append(pair[0])
                weights.append(pair[1])
            provenance = _get_str(doc, "provenance", where)
            return StepModel(
                distribution=EmpiricalDistribution(
                    tuple(values), tuple(weights), provenance
                )
            )
        raise SchemaError(
            f"{where}: step model needs fixed_value, dataset+cohort, or support"
        )


def _consequence_to_dict(consequence: ConsequenceModel) -> dict:
    return {
        "value": consequence.value,
        "units": consequence.units,
        "uncertainty_note": consequence.uncertainty_note,
    }


def _consequence_from_dict(doc, where: str) -> ConsequenceModel:
    doc = _as_dict(doc, where)
    note = _get(doc, "uncertainty_note", where)
    if note is not None and not isinstance(note, str):
        raise SchemaError(f"{where}.uncertainty_note: expected a string or null")
    with _at(where):
        return ConsequenceModel(
            value=_get_number(doc, "value", where),
            units=_get_str(doc, "units", where),
            uncertainty_note=note,
        )


def _scenario_to_dict(scenario: Scenario) -> dict:
    return {
        "id": scenario.id,
        "variant": scenario.variant.token,
        "description": scenario.description,
        "consequence": _consequence_to_dict(scenario.consequence),
        "steps": {
            step.token: _step_model_to_dict(model)
            for step, model in scenario.steps.items()
        },
    }


def _scenario_from_dict(doc, where: str) -> Scenario:
    doc = _as_dict(doc, where)
    steps_doc = _as_dict(_get(doc, "steps", where), f"{where}.steps")
    steps = {}
    for token, model_doc in steps_doc.items():
        sw = f"{where}.steps.{token}"
        with _at(sw):
            step = ChainStep.from_token(token)
        steps[step] = _step_model_from_dict(model_doc, sw)
    with _at(where):
        return Scenario(
            id=_get_str(doc, "id", where),
            variant=ScenarioVariant.from_token(_get_str(doc, "variant", where)),
            steps=steps,
            consequence=_consequence_from_dict(
                _get(doc, "consequence", where), f"{where}.consequence"
            ),
            description=_get_str(doc, "description", where),
        )


def pair_to_dict(pair: ScenarioPair) -> dict:
    return {
        "id": pair.id,
        "baseline": pair.baseline.id,
        "ai": pair.ai.id,
        "equal_consequence": pair.equal_consequence,
    }


def pair_from_dict(doc, where: str, scenarios: dict[str, Scenario]) -> ScenarioPair:
    doc = _as_dict(doc, where)
    pair_id = _get_str(doc, "id", where)
    sides = {}
    for side in ("baseline", "ai"):
        scenario_id = _get_str(doc, side, where)
        if scenario_id not in scenarios:
            raise ValidationError(f"{where}.{side}: unknown scenario id {scenario_id!r}")
        sides[side] = scenarios[scenario_id]
    equal = _get(doc, "equal_consequence", where)
    if not isinstance(equal, bool):
        raise SchemaError(f"{where}.equal_consequence: expected a boolean")
    with _at(where):
        return ScenarioPair(
            id=pair_id, baseline=sides["baseline"], ai=sides["ai"], equal_consequence=equal
        )


def _profile_to_dict(profile: StepRequirementProfile) -> dict:
    doc = {name: profile.level(name).token for name in PROFILE_FIELDS}
    doc["rationale"] = profile.rationale
    doc["assessor"] = profile.assessor
    return doc


def profile_table_to_dict(table: dict[ChainStep, StepRequirementProfile]) -> dict:
    return {step.token: _profile_to_dict(table[step]) for step in CHAIN_ORDER}


def profile_table_from_dict(doc, where: str) -> dict[ChainStep, StepRequirementProfile]:
    doc = _as_dict(doc, where)
    table = {}
    for token, pdoc in doc.items():
        pw = f"{where}.{token}"
        with _at(pw):
            step = ChainStep.from_token(token)
        pdoc = _as_dict(pdoc, pw)
        with _at(pw):
            levels = {
                name: Level.from_token(_get_str(pdoc, name, pw))
                for name in PROFILE_FIELDS
            }
            table[step] = StepRequirementProfile(
                step=step,
                rationale=_get_str(pdoc, "rationale", pw),
                assessor=_get_str(pdoc, "assessor", pw),
                **levels,
            )
    return table


def _level_or_none_to_token(level: Level | None):
    return None if level is None else level.token


def _level_or_none(doc: dict, key: str, where: str) -> Level | None:
    value = _get(doc, key, where)
    if value is None:
        return None
    if not isinstance(value, str):
        raise SchemaError(f"{where}.{key}: expected a level token or null")
    with _at(f"{where}.{key}"):
        return Level.from_token(value)


def _evaluation_to_dict(ev: ConcernAssessment) -> dict:
    return {
        "organism": ev.organism,
        "ai_tool": ev.ai_tool,
        "usability_of_technology": _level_or_none_to_token(ev.usability_of_technology),
        "usability_as_weapon": _level_or_none_to_token(ev.usability_as_weapon),
        "requirements_of_actors": _level_or_none_to_token(ev.requirements_of_actors),
        "potential_for_mitigation": _level_or_none_to_token(ev.potential_for_mitigation),
        "subcomponent_notes": dict(sorted(ev.subcomponent_notes.items())),
        "overall_concern": _level_or_none_to_token(ev.overall_concern),
        "rationale": ev.rationale,
        "timestamp": ev.timestamp,
    }


def _evaluation_from_dict(doc, where: str) -> ConcernAssessment:
    doc = _as_dict(doc, where)
    notes_doc = _as_dict(_get(doc, "subcomponent_notes", where), f"{where}.subcomponent_notes")
    for key, value in notes_doc.items():
        if not isinstance(value, str):
            raise SchemaError(f"{where}.subcomponent_notes.{key}: expected a string")
    timestamp = _get(doc, "timestamp", where)
    if timestamp is not None and not isinstance(timestamp, str):
        raise SchemaError(f"{where}.timestamp: expected a string or null")
    with _at(where):
        return ConcernAssessment(
            organism=_get_str(doc, "organism", where),
            ai_tool=_get_str(doc, "ai_tool", where),
            usability_of_technology=_level_or_none(doc, "usability_of_technology", where),
            usability_as_weapon=_level_or_none(doc, "usability_as_weapon", where),
            requirements_of_actors=_level_or_none(doc, "requirements_of_actors", where),
            potential_for_mitigation=_level_or_none(doc, "potential_for_mitigation", where),
            subcomponent_notes=notes_doc,
            overall_concern=_level_or_none(doc, "overall_concern", where),
            rationale=_get_str(doc, "rationale", where),
            timestamp=timestamp,
        )


def _update_to_dict(update: ConcernUpdate) -> dict:
    return {
        "capability": update.capability,
        "old_level": update.old_level.token,
        "new_level": update.new_level.token,
        "rationale": update.rationale,
        "no_change": update.no_change,
    }


def _update_from_dict(doc, where: str) -> ConcernUpdate:
    doc = _as_dict(doc, where)
    no_change = _get(doc, "no_change", where)
    if not isinstance(no_change, bool):
        raise SchemaError(f"{where}.no_change: expected a boolean")
    with _at(where):
        return ConcernUpdate(
            capability=_get_str(doc, "capability", where),
            old_level=Level.from_token(_get_str(doc, "old_level", where)),
            new_level=Level.from_token(_get_str(doc, "new_level", where)),
            rationale=_get_str(doc, "rationale", where),
            no_change=no_change,
        )


def _workflow_to_dict(workflow: AssessmentWorkflow) -> dict:
    return {
        "id": workflow.id,
        "organisms": list(workflow.organisms),
        "tools": [{"name": t.name, "source": t.source} for t in workflow.tools],
        "evaluations": [_evaluation_to_dict(ev) for ev in workflow.evaluations],
        "concern_updates": [_update_to_dict(u) for u in workflow.concern_updates],
    }


def _workflow_from_dict(doc, where: str) -> AssessmentWorkflow:
    doc = _as_dict(doc, where)
    organisms = []
    for i, org in enumerate(_as_list(_get(doc, "organisms", where), f"{where}.organisms")):
        if not isinstance(org, str):
            raise SchemaError(f"{where}.organisms[{i}]: expected a string")
        organisms.append(org)
    tools = []
    for i, tdoc in enumerate(_as_list(_get(doc, "tools", where), f"{where}.tools")):
        tw = f"{where}.tools[{i}]"
        tdoc = _as_dict(tdoc, tw)
        with _at(tw):
            tools.append(ToolRecord(name=_get_str(tdoc, "name", tw), source=_get_str(tdoc, "source", tw)))
    evaluations = [
        _evaluation_from_dict(edoc, f"{where}.evaluations[{i}]")
        for i, edoc in enumerate(
            _as_list(_get(doc, "evaluations", where), f"{where}.evaluations")
        )
    ]
    updates = [
        _update_from_dict(udoc, f"{where}.concern_updates[{i}]")
        for i, udoc in enumerate(
            _as_list(_get(doc, "concern_updates", where), f"{where}.concern_updates")
        )
    ]
    with _at(where):
        return AssessmentWorkflow(
            id=_get_str(doc, "id", where),
            organisms=tuple(organisms),
            tools=tuple(tools),
            evaluations=tuple(evaluations),
            concern_updates=tuple(updates),
        )


# -- whole-project serialization ----------------------------------------------

def project_to_dict(project: Project) -> dict:
    return {
        "schema_version": project.schema_version,
        "name": project.name,
        "datasets": [_dataset_to_dict(d) for d in project.datasets],
        "scenarios": [_scenario_to_dict(s) for s in project.scenarios],
        "pairs": [pair_to_dict(p) for p in project.pairs],
        "profiles": {
            name: profile_table_to_dict(table)
            for name, table in sorted(project.profiles.items())
        },
        "workflows": [_workflow_to_dict(w) for w in project.workflows],
    }


def project_from_dict(doc) -> Project:
    doc = _as_dict(doc, "project")
    if "schema_version" in doc:
        version = doc["schema_version"]
    else:
        raise SchemaError("project: missing key 'schema_version'")
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema_version {version!r} (this build supports {SCHEMA_VERSION})"
        )
    datasets = [
        _dataset_from_dict(ddoc, f"datasets[{i}]")
        for i, ddoc in enumerate(_as_list(_get(doc, "datasets", "project"), "datasets"))
    ]
    datasets_by_name = {d.name: d for d in datasets}
    scenarios = []
    for i, sdoc in enumerate(_as_list(_get(doc, "scenarios", "project"), "scenarios")):
        where = f"scenarios[{i}]"
        scenario = _scenario_from_dict(sdoc, where)
        with _at(where):
            scenarios.append(resolve_scenario(scenario, datasets_by_name))
    scenarios_by_id = {s.id: s for s in scenarios}
    pairs = [
        pair_from_dict(pdoc, f"pairs[{i}]", scenarios_by_id)
        for i, pdoc in enumerate(_as_list(_get(doc, "pairs", "project"), "pairs"))
    ]
    profiles = {
        name: profile_table_from_dict(tdoc, f"profiles.{name}")
        for name, tdoc in _as_dict(_get(doc, "profiles", "project"), "profiles").items()
    }
    workflows = [
        _workflow_from_dict(wdoc, f"workflows[{i}]")
        for i, wdoc in enumerate(_as_list(_get(doc, "workflows", "project"), "workflows"))
    ]
    with _at("project"):
        return Project(
            name=_get_str(doc, "name", "project"),
            datasets=tuple(datasets),
            scenarios=tuple(scenarios),
            pairs=tuple(pairs),
            profiles=profiles,
            workflows=tuple(workflows),
            schema_version=SCHEMA_VERSION,
        )


def dumps_canonical(doc) -> str:
    """The one JSON shape this toolkit ever writes."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_project(project: Project, path: str | Path) -> None:
    Path(path).write_text(
        dumps_canonical(project_to_dict(project)), encoding="utf-8", newline="\n"
    )


def loads_project(text: str) -> Project:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed project JSON: {exc}") from None
    return project_from_dict(doc)


def load_project(path: str | Path) -> Project:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise SchemaError(f"project file not found: {path}") from None
    return loads_project(text)


def validate_project_dict(doc) -> list[str]:
    """Best-effort list of problems, for the validate command.

    Parses section by section so one bad element does not mask the rest;
    returns an empty list when the document loads cleanly.
    """
    problems: list[str] = []
    try:
        doc = _as_dict(doc, "project")
    except SchemaError as exc:
        return [str(exc)]
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        return [
            f"unsupported schema_version {version!r} (this build supports {SCHEMA_VERSION})"
        ]

    def section(key: str, parser) -> list:
        parsed = []
        if key not in doc:
            problems.append(f"project: missing key {key!r}")
            return parsed
        try:
            items = _as_list(doc[key], key)
        except SchemaError as exc:
            problems.append(str(exc))
            return parsed
        for i, item in enumerate(items):
            try:
                parsed.append(parser(item, f"{key}[{i}]"))
            except ValidationError as exc:
                problems.append(str(exc))
        return parsed

    datasets = section("datasets", _dataset_from_dict)
    datasets_by_name = {d.name: d for d in datasets}

    def scenario_parser(item, where):
        scenario = _scenario_from_dict(item, where)
        with _at(where):
            return resolve_scenario(scenario, datasets_by_name)

    scenarios = section("scenarios", scenario_parser)
    scenarios_by_id = {s.id: s for s in scenarios}
    pairs = section("pairs", lambda item, where: pair_from_dict(item, where, scenarios_by_id))
    profiles = {}
    if "profiles" not in doc:
        problems.append("project: missing key 'profiles'")
    else:
        try:
            profile_docs = _as_dict(doc["profiles"], "profiles")
        except SchemaError as exc:
            problems.append(str(exc))
            profile_docs = {}
        for name, tdoc in profile_docs.items():
            try:
                profiles[name] = profile_table_from_dict(tdoc, f"profiles.{name}")
            except ValidationError as exc:
                problems.append(str(exc))
    workflows = section("workflows", _workflow_from_dict)
    if not problems:
        try:
            with _at("project"):
                Project(
                    name=_get_str(doc, "name", "project"),
                    datasets=tuple(datasets),
                    scenarios=tuple(scenarios),
                    pairs=tuple(pairs),
                    profiles=profiles,
                    workflows=tuple(workflows),
                    schema_version=SCHEMA_VERSION,
                )
        except ValidationError as exc:
            problems.append(str(exc))
    return problems


def validate_project_file(path: str | Path) -> list[str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        return [f"project file not found: {path}"]
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return [f"malformed project JSON: {exc}"]
    return validate_project_dict(doc)
