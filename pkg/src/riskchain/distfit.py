"""Empirical step-probability distributions fitted from 0-10 scores.

A distribution is a discrete probability mass on [0, 1]. Fitting maps each
score s to the probability value s / scale_max, merges ties, and weights
each distinct value by its relative frequency, so the distribution is the
plug-in empirical law of the scored cohort. Sampling inverts the CDF: a
uniform draw u returns the smallest support value whose cumulative weight
reaches u.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .chain import ChainStep
from .errors import InsufficientDataError, ValidationError

# Scores sit on a 0-10 accuracy scale unless a caller says otherwise.
DEFAULT_SCALE_MAX = 10.0

WEIGHT_SUM_TOLERANCE = 1e-12


class Cohort(Enum):
    """Which resources the scored participants had access to."""

    INTERNET = "internet"
    INTERNET_LLM = "internet_llm"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> Cohort:
        try:
            return cls(token)
        except ValueError:
            known = ", ".join(c.value for c in cls)
            raise ValidationError(f"unknown cohort {token!r} (expected one of: {known})") from None


@dataclass(frozen=True)
class ScoreSample:
    """One participant's graded attempt at one chain step."""

    participant_id: str
    cohort: Cohort
    step: ChainStep
    score: float

    def __post_init__(self) -> None:
        if not self.participant_id:
            raise ValidationError("participant_id must be non-empty")
        if not isinstance(self.cohort, Cohort):
            raise ValidationError(f"cohort must be a Cohort, got {self.cohort!r}")
        if not isinstance(self.step, ChainStep):
            raise ValidationError(f"step must be a ChainStep, got {self.step!r}")
        score = float(self.score)
        if not np.isfinite(score) or not 0.0 <= score <= 10.0:
            raise ValidationError(f"score {self.score!r} outside [0, 10]")
        object.__setattr__(self, "score", score)


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Discrete distribution over probability values in [0, 1].

    ``values`` are strictly increasing, ``weights[i]`` is the mass on
    ``values[i]``, and the weights sum to 1 within 1e-12. Equal support
    means equal distribution, so equality is structural.
    """

    values: tuple[float, ...]
    weights: tuple[float, ...]
    provenance: str = ""
    # Cumulative weights, cached for inverse-CDF sampling. Derived, not
    # part of the value: excluded from comparison and repr.
    _cum: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        weights = tuple(float(w) for w in self.weights)
        if not values:
            raise ValidationError("distribution needs at least one support point")
        if len(values) != len(weights):
            raise ValidationError(
                f"{len(values)} support values but {len(weights)} weights"
            )
        for v in values:
            if not np.isfinite(v) or not 0.0 <= v <= 1.0:
                raise ValidationError(f"support value {v!r} outside [0, 1]")
        for w in weights:
            if not np.isfinite(w) or w <= 0.0:
                raise ValidationError(f"weight {w!r} is not positive")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValidationError("support values must be strictly increasing")
        total = float(np.sum(weights))
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise ValidationError(f"weights sum to {total!r}, expected 1 within 1e-12")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        cum = np.cumsum(np.asarray(weights, dtype=np.float64))
        # Uniform draws live in [0, 1); pinning the last cumulative weight
        # to 1 keeps every draw inside the support.
        cum[-1] = 1.0
        cum.setflags(write=False)
        object.__setattr__(self, "_cum", cum)

    @property
    def support(self) -> tuple[tuple[float, float], ...]:
        """(value, weight) pairs in increasing value order."""
        return tuple(zip(self.values, self.weights))

    @property
    def cumulative_weights(self) -> tuple[float, ...]:
        return tuple(self._cum)

    def mean(self) -> float:
        """Expected probability value under the fitted weights."""
        return float(np.dot(self.values, self.weights))

    def sample_with_uniform(self, u: float) -> float:
        """Smallest support value whose cumulative weight is >= u."""
        if not 0.0 <= u < 1.0:
            raise ValidationError(f"uniform draw {u!r} outside [0, 1)")
        return self.values[int(np.searchsorted(self._cum, u, side="left"))]

    def sample_array(self, uniforms: np.ndarray) -> np.ndarray:
        """Vectorized inverse CDF over an array of uniform draws."""
        u = np.asarray(uniforms, dtype=np.float64)
        idx = np.searchsorted(self._cum, u, side="left")
        return np.asarray(self.values, dtype=np.float64)[idx]

    def sample(self, rng: np.random.Generator) -> float:
        """Draw one value, consuming exactly one uniform from ``rng``."""
        return self.sample_with_uniform(rng.random())


def from_scores(
    samples: list[ScoreSample],
    scale_max: float = DEFAULT_SCALE_MAX,
    provenance: str | None = None,
) -> EmpiricalDistribution:
    """Fit the empirical distribution of one cohort's scores on one step.

    All samples must share a cohort and a step; mixing cohorts or steps in
    one fit is a validation error rather than a silent pool.
    """
    if not samples:
        raise InsufficientDataError("insufficient data: no score samples to fit")
    scale = float(scale_max)
    if not np.isfinite(scale) or scale <= 0.0:
        raise ValidationError(f"scale_max {scale_max!r} must be positive")
    cohorts = {s.cohort for s in samples}
    steps = {s.step for s in samples}
    if len(cohorts) != 1:
        raise ValidationError(
            "samples mix cohorts: " + ", ".join(sorted(c.token for c in cohorts))
        )
    if len(steps) != 1:
        raise ValidationError(
            "samples mix steps: " + ", ".join(s.token for s in sorted(steps))
        )
    for s in samples:
        if s.score > scale:
            raise ValidationError(
                f"score {s.score!r} exceeds scale_max {scale!r} "
                f"(participant {s.participant_id!r})"
            )
    counts = Counter(s.score / scale for s in samples)
    n = len(samples)
    values = sorted(counts)
    weights = [counts[v] / n for v in values]
    if provenance is None:
        cohort = next(iter(cohorts))
        step = next(iter(steps))
        provenance = f"cohort={cohort.token} step={step.token} n={n}"
    return EmpiricalDistribution(tuple(values), tuple(weights), provenance)
