"""Scenario / probability / consequence risk triplets over the five-step chain.

A scenario binds every chain step to a probability model (an empirical
distribution or a fixed value) and carries one consequence magnitude. Risk
is expected harm: overall probability times consequence, where the overall
probability of a chain is the product of its five step probabilities.

Multiplying step probabilities treats the steps as independent, and a
point consequence ignores its own uncertainty. Neither assumption holds in
the real world, so every serialized risk number carries a disclaimer field
and the toolkit frames outputs as notional comparisons, not estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Mapping

from .chain import CHAIN_ORDER, ChainStep
from .distfit import Cohort, EmpiricalDistribution
from .errors import ValidationError

INDEPENDENCE_DISCLAIMER = (
    "Overall probability multiplies the five step probabilities as if steps "
    "were independent, and consequence enters as a fixed point value; real "
    "chains violate both assumptions. Treat risk numbers as notional "
    "comparisons between scenarios, not as validated estimates."
)


class ScenarioVariant(Enum):
    """Whether a scenario models the baseline actor or the AI-assisted one."""

    BASELINE = "baseline"
    AI_AUGMENTED = "ai_augmented"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> ScenarioVariant:
        try:
            return cls(token)
        except ValueError:
            known = ", ".join(v.value for v in cls)
            raise ValidationError(f"unknown variant {token!r} (expected one of: {known})") from None


class RiskChange(Enum):
    """Direction of a risk delta relative to a tolerance band."""

    INCREASED = "increased"
    DECREASED = "decreased"
    UNCHANGED = "unchanged"


@dataclass(frozen=True)
class DistributionRef:
    """Reference to a fitted distribution: a dataset name plus a cohort.

    Scenarios loaded from project files resolve these against the bundled
    datasets; a scenario built by hand may carry one unresolved, in which
    case the engine refuses to run it.
    """

    dataset: str
    cohort: Cohort

    def __post_init__(self) -> None:
        if not self.dataset:
            raise ValidationError("distribution reference needs a dataset name")
        if not isinstance(self.cohort, Cohort):
            raise ValidationError(f"cohort must be a Cohort, got {self.cohort!r}")

    def __str__(self) -> str:
        return f"{self.dataset}:{self.cohort.token}"


@dataclass(frozen=True)
class ConsequenceModel:
    """Single consequence magnitude with explicit units."""

    value: float
    units: str = "deaths"
    uncertainty_note: str | None = None

    def __post_init__(self) -> None:
        value = float(self.value)
        if not math.isfinite(value) or value < 0.0:
            raise ValidationError(f"consequence {self.value!r} must be finite and >= 0")
        if not self.units:
            raise ValidationError("consequence units must be non-empty")
        object.__setattr__(self, "value", value)


@dataclass(frozen=True)
class StepModel:
    """Probability model for one chain step.

    Exactly one of ``distribution`` (an EmpiricalDistribution, or a
    DistributionRef awaiting resolution) and ``fixed_value`` is set.
    ``source`` records where a resolved distribution was fitted from, so a
    project file can round-trip the reference instead of inlining numbers.
    """

    distribution: EmpiricalDistribution | DistributionRef | None = None
    fixed_value: float | None = None
    source: DistributionRef | None = None

    def __post_init__(self) -> None:
        if (self.distribution is None) == (self.fixed_value is None):
            raise ValidationError(
                "exactly one of distribution and fixed_value must be set"
            )
        if self.fixed_value is not None:
            fixed = float(self.fixed_value)
            if not math.isfinite(fixed) or not 0.0 <= fixed <= 1.0:
                raise ValidationError(f"fixed_value {self.fixed_value!r} outside [0, 1]")
            object.__setattr__(self, "fixed_value", fixed)
        elif not isinstance(self.distribution, (EmpiricalDistribution, DistributionRef)):
            raise ValidationError(
                f"distribution must be an EmpiricalDistribution or a "
                f"DistributionRef, got {self.distribution!r}"
            )
        if self.source is not None:
            if not isinstance(self.source, DistributionRef):
                raise ValidationError(f"source must be a DistributionRef, got {self.source!r}")
            if not isinstance(self.distribution, EmpiricalDistribution):
                raise ValidationError("source is only valid on a resolved distribution")

    @property
    def is_resolved(self) -> bool:
        """True when the engine can sample this step directly."""
        return self.fixed_value is not None or isinstance(
            self.distribution, EmpiricalDistribution
        )


@dataclass(frozen=True)
class Scenario:
    """A named chain configuration: five step models plus a consequence."""

    id: str
    variant: ScenarioVariant
    steps: Mapping[ChainStep, StepModel]
    consequence: ConsequenceModel
    description: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("scenario id must be non-empty")
        if not isinstance(self.variant, ScenarioVariant):
            raise ValidationError(f"variant must be a ScenarioVariant, got {self.variant!r}")
        if not isinstance(self.consequence, ConsequenceModel):
            raise ValidationError("consequence must be a ConsequenceModel")
        steps = dict(self.steps)
        missing = [s.token for s in CHAIN_ORDER if s not in steps]
        if missing:
            raise ValidationError(f"scenario {self.id!r} missing steps: {', '.join(missing)}")
        extra = [k for k in steps if k not in CHAIN_ORDER]
        if extra:
            raise ValidationError(f"scenario {self.id!r} has unknown steps: {extra!r}")
        for step in CHAIN_ORDER:
            if not isinstance(steps[step], StepModel):
                raise ValidationError(
                    f"scenario {self.id!r} step {step.token}: not a StepModel"
                )
        ordered = {step: steps[step] for step in CHAIN_ORDER}
        object.__setattr__(self, "steps", MappingProxyType(ordered))

    @property
    def is_resolved(self) -> bool:
        return all(model.is_resolved for model in self.steps.values())


@dataclass(frozen=True)
class ScenarioPair:
    """Baseline scenario paired with its AI-augmented counterpart."""

    id: str
    baseline: Scenario
    ai: Scenario
    equal_consequence: bool = True

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("pair id must be non-empty")
        if self.baseline.variant is not ScenarioVariant.BASELINE:
            raise ValidationError(
                f"pair {self.id!r}: scenario {self.baseline.id!r} is not tagged baseline"
            )
        if self.ai.variant is not ScenarioVariant.AI_AUGMENTED:
            raise ValidationError(
                f"pair {self.id!r}: scenario {self.ai.id!r} is not tagged ai_augmented"
            )
        if self.equal_consequence:
            b, a = self.baseline.consequence, self.ai.consequence
            if b.value != a.value or b.units != a.units:
                raise ValidationError(
                    f"pair {self.id!r} declares equal_consequence but consequences "
                    f"differ ({b.value!r} {b.units} vs {a.value!r} {a.units})"
                )


@dataclass(frozen=True)
class RiskResult:
    """Overall probability, consequence, and their product for one scenario.

    ``risk`` is always the machine-precision product of the other two
    fields; construction re-checks the identity bit-exactly.
    """

    overall_probability: float
    consequence: float
    risk: float
    variant: ScenarioVariant
    units: str = "deaths"

    def __post_init__(self) -> None:
        p = float(self.overall_probability)
        c = float(self.consequence)
        if not math.isfinite(p) or not 0.0 <= p <= 1.0:
            raise ValidationError(f"overall probability {p!r} outside [0, 1]")
        if not math.isfinite(c) or c < 0.0:
            raise ValidationError(f"consequence {c!r} must be finite and >= 0")
        if float(self.risk) != p * c:
            raise ValidationError(
                f"risk {self.risk!r} is not the product of probability {p!r} "
                f"and consequence {c!r}"
            )
        if not isinstance(self.variant, ScenarioVariant):
            raise ValidationError(f"variant must be a ScenarioVariant, got {self.variant!r}")
        if not self.units:
            raise ValidationError("units must be non-empty")

    @classmethod
    def from_probability(
        cls, overall_probability: float, consequence: ConsequenceModel, variant: ScenarioVariant
    ) -> RiskResult:
        p = float(overall_probability)
        return cls(
            overall_probability=p,
            consequence=consequence.value,
            risk=expected_risk(p, consequence.value),
            variant=variant,
            units=consequence.units,
        )

    def to_dict(self) -> dict:
        """Serializable form; always carries the independence disclaimer."""
        return {
            "overall_probability": self.overall_probability,
            "consequence": self.consequence,
            "risk": self.risk,
            "variant": self.variant.token,
            "units": self.units,
            "independence_disclaimer": INDEPENDENCE_DISCLAIMER,
        }


def overall_probability(step_probabilities) -> float:
    """Product of the five step probabilities, in chain order."""
    probs = [float(p) for p in step_probabilities]
    if len(probs) != len(CHAIN_ORDER):
        raise ValidationError(
            f"expected {len(CHAIN_ORDER)} step probabilities, got {len(probs)}"
        )
    for step, p in zip(CHAIN_ORDER, probs):
        if not math.isfinite(p) or not 0.0 <= p <= 1.0:
            raise ValidationError(f"step {step.token}: probability {p!r} outside [0, 1]")
    return math.prod(probs)


def expected_risk(overall_p: float, consequence: float) -> float:
    """Expected harm: overall probability times consequence magnitude."""
    p = float(overall_p)
    c = float(consequence)
    if not math.isfinite(p) or not 0.0 <= p <= 1.0:
        raise ValidationError(f"overall probability {overall_p!r} outside [0, 1]")
    if not math.isfinite(c) or c < 0.0:
        raise ValidationError(f"consequence {consequence!r} must be finite and >= 0")
    return p * c


def risk_delta(baseline: RiskResult, ai: RiskResult) -> float:
    """Signed change in risk when moving from baseline to AI-augmented."""
    if baseline.units != ai.units:
        raise ValidationError(
            f"cannot difference risks with mismatched units "
            f"({baseline.units!r} vs {ai.units!r})"
        )
    return ai.risk - baseline.risk


def classify_risk_change(delta: float, tolerance: float = 0.0) -> RiskChange:
    """Direction of a delta, with |delta| <= tolerance counting as unchanged."""
    d = float(delta)
    tol = float(tolerance)
    if not math.isfinite(d):
        raise ValidationError(f"delta {delta!r} must be finite")
    if not math.isfinite(tol) or tol < 0.0:
        raise ValidationError(f"tolerance {tolerance!r} must be finite and >= 0")
    if d > tol:
        return RiskChange.INCREASED
    if d < -tol:
        return RiskChange.DECREASED
    return RiskChange.UNCHANGED
