"""Seeded Monte Carlo simulation of five-step scenarios.

Stream derivation is a fixed contract of this implementation:

* A scenario's uniform stream comes from Philox4x64 keyed with the first
  16 bytes of ``SHA-256(master_seed as 8 big-endian bytes || b":" ||
  scenario_id as UTF-8)``, read as two little-endian uint64 words.
* The stream is the sequence of float64 draws from that generator; trial
  ``t`` owns the five draws at positions ``[5*t, 5*t + 5)``.
* Within a trial, steps consume draws in chain order. A fixed-value step
  consumes nothing, so later steps shift forward in the trial's window.

Keying on (master_seed, scenario_id) makes paired scenarios draw from
independent streams while identical inputs reproduce bit-identical trial
matrices, regardless of worker count or call history. ``parallelism_hint``
only splits the inverse-CDF transform of a pre-generated uniform block
across threads, so it cannot change a single sampled bit.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .chain import CHAIN_ORDER
from .errors import ConfigurationError, ValidationError
from .riskmodel import (
    RiskResult,
    Scenario,
    ScenarioPair,
    ScenarioVariant,
    risk_delta,
)

DEFAULT_N_TRIALS = 10_000

_PRODUCT_RTOL = 1e-15

# Chunks below this size are not worth a thread hop.
_MIN_CHUNK = 1024


@dataclass(frozen=True)
class SimulationConfig:
    """Reproducibility contract for one simulation run."""

    master_seed: int
    n_trials: int = DEFAULT_N_TRIALS
    parallelism_hint: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.master_seed, int) or isinstance(self.master_seed, bool):
            raise ValidationError(f"master_seed {self.master_seed!r} must be an integer")
        if not 0 <= self.master_seed < 2**64:
            raise ValidationError(
                f"master_seed {self.master_seed!r} outside unsigned 64-bit range"
            )
        if not isinstance(self.n_trials, int) or isinstance(self.n_trials, bool):
            raise ValidationError(f"n_trials {self.n_trials!r} must be an integer")
        if self.n_trials < 1:
            raise ValidationError(f"n_trials {self.n_trials!r} must be >= 1")
        if self.parallelism_hint is not None and (
            not isinstance(self.parallelism_hint, int) or self.parallelism_hint < 1
        ):
            raise ValidationError(
                f"parallelism_hint {self.parallelism_hint!r} must be None or >= 1"
            )


@dataclass(frozen=True, eq=False)
class TrialResults:
    """Per-trial step samples plus their per-trial products.

    ``per_step_samples`` has shape (n_trials, 5) with columns in chain
    order; ``overall[t]`` is the product of row ``t``. Arrays are
    read-only.
    """

    scenario_id: str
    variant: ScenarioVariant
    per_step_samples: np.ndarray
    overall: np.ndarray
    config: SimulationConfig

    def __post_init__(self) -> None:
        samples = np.asarray(self.per_step_samples, dtype=np.float64)
        overall = np.asarray(self.overall, dtype=np.float64)
        n = self.config.n_trials
        if samples.shape != (n, len(CHAIN_ORDER)):
            raise ValidationError(
                f"per_step_samples shape {samples.shape} != ({n}, {len(CHAIN_ORDER)})"
            )
        if overall.shape != (n,):
            raise ValidationError(f"overall shape {overall.shape} != ({n},)")
        if samples.size and (samples.min() < 0.0 or samples.max() > 1.0):
            raise ValidationError("per-step samples outside [0, 1]")
        products = np.multiply.reduce(samples, axis=1)
        if not np.allclose(overall, products, rtol=_PRODUCT_RTOL, atol=0.0):
            raise ValidationError("overall is not the per-trial product of step samples")
        samples = samples.copy()
        overall = overall.copy()
        samples.setflags(write=False)
        overall.setflags(write=False)
        object.__setattr__(self, "per_step_samples", samples)
        object.__setattr__(self, "overall", overall)

    def mean_overall(self) -> float:
        return float(np.mean(self.overall))

    def step_samples(self, step) -> np.ndarray:
        return self.per_step_samples[:, step.index]


class PairSimulation(NamedTuple):
    """Everything a paired run produces, baseline first."""

    baseline: TrialResults
    ai: TrialResults
    baseline_risk: RiskResult
    ai_risk: RiskResult
    delta: float


def stream_key(master_seed: int, scenario_id: str) -> np.ndarray:
    """Two uint64 Philox key words for a (master seed, scenario) pair."""
    digest = hashlib.sha256(
        int(master_seed).to_bytes(8, "big") + b":" + scenario_id.encode("utf-8")
    ).digest()
    return np.frombuffer(digest[:16], dtype="<u8").copy()


def trial_uniforms(master_seed: int, scenario_id: str, n_trials: int) -> np.ndarray:
    """The scenario's uniform stream, reshaped to one row per trial.

    Row-major order of the (n_trials, 5) block equals the flat draw
    sequence, so position ``5*t + k`` of the stream is ``[t, k]`` here.
    """
    key = stream_key(master_seed, scenario_id)
    gen = np.random.Generator(np.random.Philox(key=key))
    return gen.random((n_trials, len(CHAIN_ORDER)))


def _require_resolved(scenario: Scenario) -> None:
    for step in CHAIN_ORDER:
        model = scenario.steps[step]
        if not model.is_resolved:
            raise ConfigurationError(
                f"scenario {scenario.id!r} step {step.token}: distribution "
                f"reference {model.distribution} is unresolved"
            )


def _transform_chunked(dist, uniforms: np.ndarray, hint: int | None) -> np.ndarray:
    """Inverse-CDF transform, optionally split across threads.

    Each chunk is transformed independently with the same pure function,
    so the result is bit-identical for every hint value.
    """
    n = uniforms.shape[0]
    if hint is None or hint <= 1 or n < 2 * _MIN_CHUNK:
        return dist.sample_array(uniforms)
    out = np.empty(n, dtype=np.float64)
    chunk = max(_MIN_CHUNK, -(-n // hint))
    bounds = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]

    def work(span):
        lo, hi = span
        out[lo:hi] = dist.sample_array(uniforms[lo:hi])

    with ThreadPoolExecutor(max_workers=hint) as pool:
        list(pool.map(work, bounds))
    return out


def simulate(scenario: Scenario, config: SimulationConfig) -> TrialResults:
    """Run the scenario for config.n_trials trials."""
    _require_resolved(scenario)
    uniforms = trial_uniforms(config.master_seed, scenario.id, config.n_trials)
    per_step = np.empty((config.n_trials, len(CHAIN_ORDER)), dtype=np.float64)
    draw_column = 0
    for j, step in enumerate(CHAIN_ORDER):
        model = scenario.steps[step]
        if model.fixed_value is not None:
            per_step[:, j] = model.fixed_value
        else:
            per_step[:, j] = _transform_chunked(
                model.distribution, uniforms[:, draw_column], config.parallelism_hint
            )
            draw_column += 1
    overall = np.multiply.reduce(per_step, axis=1)
    return TrialResults(
        scenario_id=scenario.id,
        variant=scenario.variant,
        per_step_samples=per_step,
        overall=overall,
        config=config,
    )


def analytic_mean(scenario: Scenario) -> float:
    """Product of per-step means: the exact mean of the simulated product.

    Steps are sampled independently, so the expectation of the product
    factorizes. Useful as a convergence oracle for ``simulate``.
    """
    _require_resolved(scenario)
    result = 1.0
    for step in CHAIN_ORDER:
        model = scenario.steps[step]
        if model.fixed_value is not None:
            result *= model.fixed_value
        else:
            result *= model.distribution.mean()
    return result


def simulate_pair(pair: ScenarioPair, config: SimulationConfig) -> PairSimulation:
    """Simulate both sides of a pair under one master seed.

    Streams are keyed by scenario id, so the two sides are independent,
    and a pair whose sides share an id (hence a scenario) yields a delta
    of exactly zero.
    """
    baseline = simulate(pair.baseline, config)
    ai = simulate(pair.ai, config)
    baseline_risk = RiskResult.from_probability(
        baseline.mean_overall(), pair.baseline.consequence, pair.baseline.variant
    )
    ai_risk = RiskResult.from_probability(
        ai.mean_overall(), pair.ai.consequence, pair.ai.variant
    )
    return PairSimulation(
        baseline=baseline,
        ai=ai,
        baseline_risk=baseline_risk,
        ai_risk=ai_risk,
        delta=risk_delta(baseline_risk, ai_risk),
    )
