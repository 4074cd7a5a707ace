"""Qualitative concern assessment on ordinal Low / Med / High levels.

Levels order as Low < Med < High and support nothing else: there is no
arithmetic on them anywhere in the toolkit, only comparisons. A step
transition is flagged Concerning exactly when the AI-assisted level is
strictly higher than the baseline level.

Assessment workflows follow a four-part structure: identify organisms of
concern, identify AI tools, evaluate each tool against the four concern
categories (usability of the technology, usability as a weapon,
requirements of actors, potential for mitigation), and record concern
updates over time. Workflow values are append-only; updates return new
objects and never rewrite history.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from types import MappingProxyType
from typing import Mapping

from .chain import CHAIN_ORDER, ChainStep
from .errors import ValidationError


@functools.total_ordering
class Level(Enum):
    """Ordinal concern level. Comparable, never summed or averaged."""

    LOW = "low"
    MED = "med"
    HIGH = "high"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> Level:
        try:
            return cls(token)
        except ValueError:
            known = ", ".join(l.value for l in cls)
            raise ValidationError(f"unknown level {token!r} (expected one of: {known})") from None

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Level):
            return NotImplemented
        return _LEVEL_RANK[self] < _LEVEL_RANK[other]

    def __hash__(self) -> int:
        return super().__hash__()


_LEVEL_RANK = {Level.LOW: 0, Level.MED: 1, Level.HIGH: 2}


class TransitionFlag(Enum):
    CONCERNING = "concerning"
    NOT_CONCERNING = "not_concerning"

    @property
    def token(self) -> str:
        return self.value


def flag_transition(baseline: Level, ai: Level) -> TransitionFlag:
    """Concerning exactly when the AI-assisted level strictly exceeds baseline."""
    if not isinstance(baseline, Level) or not isinstance(ai, Level):
        raise ValidationError("flag_transition expects two Levels")
    return TransitionFlag.CONCERNING if ai > baseline else TransitionFlag.NOT_CONCERNING


# Project profile tables compared by reports and what-if runs: the table
# named "baseline" describes the unaided actor, "ai" the AI-assisted one.
BASELINE_TABLE_NAME = "baseline"
AI_TABLE_NAME = "ai"

# Access-requirement fields of a step profile, in reporting order.
REQUIREMENT_FIELDS = ("time", "cost", "knowledge", "resources", "safeguard")

PROFILE_FIELDS = REQUIREMENT_FIELDS + ("relative_p",)


@dataclass(frozen=True)
class StepRequirementProfile:
    """What one chain step demands of an actor, plus its relative probability.

    The five requirement fields grade access barriers (time, cost,
    knowledge, resources, and the safeguards standing in the way);
    ``relative_p`` grades how probable success at this step is relative to
    the other steps.
    """

    step: ChainStep
    time: Level
    cost: Level
    knowledge: Level
    resources: Level
    safeguard: Level
    relative_p: Level
    rationale: str = ""
    assessor: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.step, ChainStep):
            raise ValidationError(f"step must be a ChainStep, got {self.step!r}")
        for name in PROFILE_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, Level):
                raise ValidationError(f"profile field {name} must be a Level, got {value!r}")

    def level(self, field_name: str) -> Level:
        if field_name not in PROFILE_FIELDS:
            raise ValidationError(f"unknown profile field {field_name!r}")
        return getattr(self, field_name)


_DEFAULT_CELLS: dict[ChainStep, tuple[str, str, str, str, str, str]] = {
    ChainStep.IDEATION: ("low", "low", "low", "low", "low", "high"),
    ChainStep.ACQUISITION: ("low", "low", "low", "low", "med", "low"),
    ChainStep.PRODUCTION: ("high", "high", "high", "high", "high", "low"),
    ChainStep.WEAPONIZATION: ("high", "high", "high", "high", "high", "low"),
    ChainStep.DEPLOY_DELIVERY: ("low", "high", "high", "med", "high", "med"),
}

_DEFAULT_RATIONALE = (
    "Notional default for an unskilled actor working alone; replace with "
    "your own panel's judgments."
)

_DEFAULT_ASSESSOR = "toolkit defaults"


def default_profile_table() -> dict[ChainStep, StepRequirementProfile]:
    """Editable starting profile for all five steps.

    Encodes the notional reading that early steps are cheap (ideation
    being the most probable), the middle wet-lab steps are hard on every
    axis, and delivery is cheap on time but hard on most else.
    """
    table = {}
    for step in CHAIN_ORDER:
        time, cost, knowledge, resources, safeguard, rel_p = (
            Level.from_token(t) for t in _DEFAULT_CELLS[step]
        )
        table[step] = StepRequirementProfile(
            step=step,
            time=time,
            cost=cost,
            knowledge=knowledge,
            resources=resources,
            safeguard=safeguard,
            relative_p=rel_p,
            rationale=_DEFAULT_RATIONALE,
            assessor=_DEFAULT_ASSESSOR,
        )
    return table


@dataclass(frozen=True)
class ProfileDiffRow:
    """One changed cell between a baseline and an AI-assisted profile.

    ``flag`` applies the concern rule to the relative-probability field;
    ``barrier_reduction`` marks a requirement field that got easier.
    """

    step: ChainStep
    field: str
    baseline: Level
    ai: Level
    flag: TransitionFlag
    barrier_reduction: bool


def diff_profiles(
    baseline: Mapping[ChainStep, StepRequirementProfile],
    ai: Mapping[ChainStep, StepRequirementProfile],
) -> list[ProfileDiffRow]:
    """Changed cells between two full profile tables, in chain order.

    Relative-probability changes carry the transition flag; requirement
    changes are flagged NotConcerning but note when the barrier dropped.
    """
    for name, table in (("baseline", baseline), ("ai", ai)):
        missing = [s.token for s in CHAIN_ORDER if s not in table]
        if missing:
            raise ValidationError(f"{name} table missing steps: {', '.join(missing)}")
    rows = []
    for step in CHAIN_ORDER:
        before, after = baseline[step], ai[step]
        for field_name in PROFILE_FIELDS:
            b, a = before.level(field_name), after.level(field_name)
            if b is a:
                continue
            if field_name == "relative_p":
                flag = flag_transition(b, a)
                reduction = False
            else:
                flag = TransitionFlag.NOT_CONCERNING
                reduction = a < b
            rows.append(
                ProfileDiffRow(
                    step=step, field=field_name, baseline=b, ai=a,
                    flag=flag, barrier_reduction=reduction,
                )
            )
    return rows


# The four concern categories every tool evaluation covers.
CONCERN_CATEGORIES = (
    "usability_of_technology",
    "usability_as_weapon",
    "requirements_of_actors",
    "potential_for_mitigation",
)


@dataclass(frozen=True)
class ToolRecord:
    """An AI tool under assessment and where it was identified."""

    name: str
    source: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("tool name must be non-empty")


@dataclass(frozen=True)
class ConcernAssessment:
    """One tool evaluated against one organism across the four categories.

    ``overall_concern`` is the assessor's recorded judgment; the toolkit
    never computes it from the category levels.
    """

    organism: str
    ai_tool: str
    usability_of_technology: Level | None = None
    usability_as_weapon: Level | None = None
    requirements_of_actors: Level | None = None
    potential_for_mitigation: Level | None = None
    subcomponent_notes: Mapping[str, str] = field(default_factory=dict)
    overall_concern: Level | None = None
    rationale: str = ""
    timestamp: str | None = None

    def __post_init__(self) -> None:
        if not self.organism:
            raise ValidationError("assessment organism must be non-empty")
        if not self.ai_tool:
            raise ValidationError("assessment ai_tool must be non-empty")
        for name in CONCERN_CATEGORIES:
            value = getattr(self, name)
            if value is not None and not isinstance(value, Level):
                raise ValidationError(f"category {name} must be a Level or None, got {value!r}")
        if self.overall_concern is not None:
            if not isinstance(self.overall_concern, Level):
                raise ValidationError("overall_concern must be a Level or None")
            unset = [n for n in CONCERN_CATEGORIES if getattr(self, n) is None]
            if unset:
                raise ValidationError(
                    "overall_concern requires all four categories to be set; "
                    "missing: " + ", ".join(unset)
                )
        object.__setattr__(
            self, "subcomponent_notes", MappingProxyType(dict(self.subcomponent_notes))
        )


@dataclass(frozen=True)
class ConcernUpdate:
    """A recorded change (or explicit non-change) of concern for a capability."""

    capability: str
    old_level: Level
    new_level: Level
    rationale: str
    no_change: bool

    def __post_init__(self) -> None:
        if not self.capability:
            raise ValidationError("update capability must be non-empty")
        if not isinstance(self.old_level, Level) or not isinstance(self.new_level, Level):
            raise ValidationError("update levels must be Levels")
        if not self.rationale:
            raise ValidationError("update rationale must be non-empty")
        if self.no_change != (self.old_level is self.new_level):
            raise ValidationError("no_change flag contradicts the recorded levels")


@dataclass(frozen=True)
class AssessmentWorkflow:
    """Append-only record of one assessment effort."""

    id: str
    organisms: tuple[str, ...] = ()
    tools: tuple[ToolRecord, ...] = ()
    evaluations: tuple[ConcernAssessment, ...] = ()
    concern_updates: tuple[ConcernUpdate, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("workflow id must be non-empty")
        object.__setattr__(self, "organisms", tuple(self.organisms))
        object.__setattr__(self, "tools", tuple(self.tools))
        object.__setattr__(self, "evaluations", tuple(self.evaluations))
        object.__setattr__(self, "concern_updates", tuple(self.concern_updates))
        if len(set(self.organisms)) != len(self.organisms):
            raise ValidationError("workflow organisms must be unique")
        tool_names = [t.name for t in self.tools]
        if len(set(tool_names)) != len(tool_names):
            raise ValidationError("workflow tool names must be unique")
        known_tools = set(tool_names)
        known_organisms = set(self.organisms)
        for ev in self.evaluations:
            if ev.organism not in known_organisms:
                raise ValidationError(
                    f"evaluation references unknown organism {ev.organism!r}"
                )
            if ev.ai_tool not in known_tools:
                raise ValidationError(f"evaluation references unknown tool {ev.ai_tool!r}")
        if self.concern_updates and not self.evaluations:
            raise ValidationError("concern updates require at least one evaluation")


_TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%S.%f+00:00"


def _next_timestamp(existing: tuple[str, ...]) -> str:
    """Current UTC time, nudged forward so stamps strictly increase."""
    stamp = datetime.now(timezone.utc).strftime(_TIMESTAMP_FORMAT)
    prior = [t for t in existing if t]
    if prior:
        latest = max(prior)
        while stamp <= latest:
            bumped = datetime.strptime(latest, _TIMESTAMP_FORMAT).replace(
                tzinfo=timezone.utc
            )
            stamp = datetime.fromtimestamp(
                bumped.timestamp() + 1e-6, tz=timezone.utc
            ).strftime(_TIMESTAMP_FORMAT)
    return stamp


def record_assessment(
    workflow: AssessmentWorkflow, evaluation: ConcernAssessment
) -> AssessmentWorkflow:
    """Append an evaluation, stamping a strictly increasing timestamp.

    The evaluation's organism and tool must already be registered in the
    workflow. The input workflow is untouched.
    """
    if evaluation.timestamp is None:
        existing = tuple(ev.timestamp or "" for ev in workflow.evaluations)
        evaluation = replace(evaluation, timestamp=_next_timestamp(existing))
    return replace(workflow, evaluations=workflow.evaluations + (evaluation,))


def update_concern(
    workflow: AssessmentWorkflow,
    capability: str,
    new_level: Level,
    rationale: str,
    old_level: Level | None = None,
) -> AssessmentWorkflow:
    """Append a concern update for a capability.

    The previous level defaults to the capability's latest recorded
    update; the first update for a capability must state ``old_level``
    explicitly. Rationale is mandatory, and updating requires at least one
    evaluation on file. Recording the same level again is allowed and
    flagged ``no_change``.
    """
    if not capability:
        raise ValidationError("update capability must be non-empty")
    if not isinstance(new_level, Level):
        raise ValidationError(f"new_level must be a Level, got {new_level!r}")
    if not rationale:
        raise ValidationError("update rationale must be non-empty")
    if not workflow.evaluations:
        raise ValidationError(
            "cannot update concern before any evaluation is recorded"
        )
    if old_level is None:
        for update in reversed(workflow.concern_updates):
            if update.capability == capability:
                old_level = update.new_level
                break
        else:
            raise ValidationError(
                f"no prior update for capability {capability!r}; pass old_level"
            )
    update = ConcernUpdate(
        capability=capability,
        old_level=old_level,
        new_level=new_level,
        rationale=rationale,
        no_change=old_level is new_level,
    )
    return replace(workflow, concern_updates=workflow.concern_updates + (update,))
