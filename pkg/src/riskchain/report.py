"""Report bundles: one pair's quantitative and qualitative comparison.

A bundle is everything a reviewer needs in one document: the risk table
(mean overall probability, consequence, risk per scenario), the delta and
its classification, per-step box summaries for both variants, rank-sum
test results, and the qualitative profile diff. Bundles are plain data;
rendering to JSON, text, or SVG happens at the edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import CHAIN_ORDER
from .errors import ValidationError
from .ingest import Project
from .qualitative import (
    AI_TABLE_NAME,
    BASELINE_TABLE_NAME,
    ProfileDiffRow,
    diff_profiles,
)
from .riskmodel import RiskChange, RiskResult, classify_risk_change
from .simengine import SimulationConfig, TrialResults, simulate_pair
from .stats import QUANTILE_CONVENTION, WHISKER_RULE, BoxSummary, rank_sum_test, summarize

# Printed on every risk report the toolkit emits.
DISCLAIMER_LINE = "notional scenario; illustrative only"


def box_summaries_for(trials: TrialResults) -> dict[str, BoxSummary]:
    """Box summaries keyed by step token, plus the per-trial product."""
    result = {
        step.token: summarize(trials.step_samples(step)) for step in CHAIN_ORDER
    }
    result["overall"] = summarize(trials.overall)
    return result


@dataclass(frozen=True)
class ReportBundle:
    """Complete comparison of one scenario pair at one seed."""

    project_name: str
    pair_id: str
    master_seed: int
    n_trials: int
    baseline_risk: RiskResult
    ai_risk: RiskResult
    delta: float
    classification: RiskChange
    baseline_scenario: str
    ai_scenario: str
    box_summaries: dict[str, dict[str, BoxSummary]]
    test_results: dict[str, dict[str, float]]
    qualitative_diffs: tuple[ProfileDiffRow, ...]

    def __post_init__(self) -> None:
        if self.delta != self.ai_risk.risk - self.baseline_risk.risk:
            raise ValidationError("bundle delta does not match its risk rows")

    def to_dict(self) -> dict:
        return {
            "disclaimer": DISCLAIMER_LINE,
            "project": self.project_name,
            "pair": self.pair_id,
            "master_seed": self.master_seed,
            "n_trials": self.n_trials,
            "quantile_convention": QUANTILE_CONVENTION,
            "whisker_rule": WHISKER_RULE,
            "risk_table": [
                {"scenario": self.baseline_scenario, **self.baseline_risk.to_dict()},
                {"scenario": self.ai_scenario, **self.ai_risk.to_dict()},
            ],
            "delta": self.delta,
            "classification": self.classification.value,
            "box_summaries": {
                variant: {key: box.to_dict() for key, box in boxes.items()}
                for variant, boxes in self.box_summaries.items()
            },
            "test_results": {
                "comparison": "ai_vs_baseline",
                "by_step": self.test_results,
            },
            "qualitative_diffs": [
                {
                    "step": row.step.token,
                    "field": row.field,
                    "baseline": row.baseline.token,
                    "ai": row.ai.token,
                    "flag": row.flag.token,
                    "barrier_reduction": row.barrier_reduction,
                }
                for row in self.qualitative_diffs
            ],
        }


def build_report_bundle(
    project: Project, pair_id: str, config: SimulationConfig
) -> ReportBundle:
    """Simulate a pair and assemble its full comparison bundle."""
    pair = project.find_pair(pair_id)
    if pair is None:
        raise ValidationError(f"unknown pair {pair_id!r}")
    sim = simulate_pair(pair, config)
    boxes = {
        sim.baseline.variant.token: box_summaries_for(sim.baseline),
        sim.ai.variant.token: box_summaries_for(sim.ai),
    }
    tests = {}
    for step in CHAIN_ORDER:
        u, p = rank_sum_test(sim.ai.step_samples(step), sim.baseline.step_samples(step))
        tests[step.token] = {"u_statistic": u, "p_value": p}
    u, p = rank_sum_test(sim.ai.overall, sim.baseline.overall)
    tests["overall"] = {"u_statistic": u, "p_value": p}
    baseline_table = project.profiles.get(BASELINE_TABLE_NAME)
    ai_table = project.profiles.get(AI_TABLE_NAME)
    diffs = ()
    if baseline_table is not None and ai_table is not None:
        diffs = tuple(diff_profiles(baseline_table, ai_table))
    return ReportBundle(
        project_name=project.name,
        pair_id=pair_id,
        master_seed=config.master_seed,
        n_trials=config.n_trials,
        baseline_risk=sim.baseline_risk,
        ai_risk=sim.ai_risk,
        delta=sim.delta,
        classification=classify_risk_change(sim.delta),
        baseline_scenario=pair.baseline.id,
        ai_scenario=pair.ai.id,
        box_summaries=boxes,
        test_results=tests,
        qualitative_diffs=diffs,
    )


# -- SVG rendering -------------------------------------------------------------

_SVG_COLORS = {"baseline": "#4c72b0", "ai_augmented": "#dd8452"}

_PANEL_WIDTH = 104
_PANEL_GAP = 14
_PLOT_TOP = 48
_PLOT_HEIGHT = 300
_MARGIN_LEFT = 52
_BOX_WIDTH = 30


def _y(value: float) -> float:
    """Map a probability in [0, 1] to SVG y-coordinates (1.0 at top)."""
    return _PLOT_TOP + (1.0 - value) * _PLOT_HEIGHT


def _draw_box(parts: list[str], x_center: float, box: BoxSummary, color: str) -> None:
    half = _BOX_WIDTH / 2
    lo, hi = _y(box.whisker_low), _y(box.whisker_high)
    q1, q3 = _y(box.q1), _y(box.q3)
    med = _y(box.median)
    parts.append(
        f'<line x1="{x_center:.2f}" y1="{hi:.2f}" x2="{x_center:.2f}" y2="{lo:.2f}" '
        f'stroke="{color}" stroke-width="1"/>'
    )
    for y in (lo, hi):
        parts.append(
            f'<line x1="{x_center - half / 2:.2f}" y1="{y:.2f}" '
            f'x2="{x_center + half / 2:.2f}" y2="{y:.2f}" stroke="{color}" stroke-width="1"/>'
        )
    parts.append(
        f'<rect x="{x_center - half:.2f}" y="{q3:.2f}" width="{_BOX_WIDTH:.2f}" '
        f'height="{abs(q1 - q3):.2f}" fill="{color}" fill-opacity="0.35" stroke="{color}"/>'
    )
    parts.append(
        f'<line x1="{x_center - half:.2f}" y1="{med:.2f}" x2="{x_center + half:.2f}" '
        f'y2="{med:.2f}" stroke="{color}" stroke-width="2"/>'
    )
    for value in box.outliers:
        parts.append(
            f'<circle cx="{x_center:.2f}" cy="{_y(value):.2f}" r="2" '
            f'fill="none" stroke="{color}"/>'
        )


def render_box_svg(bundle: ReportBundle) -> str:
    """Deterministic SVG of per-step box pairs on a shared [0, 1] axis."""
    keys = [step.token for step in CHAIN_ORDER] + ["overall"]
    width = _MARGIN_LEFT + len(keys) * (_PANEL_WIDTH + _PANEL_GAP) + 20
    height = _PLOT_TOP + _PLOT_HEIGHT + 60
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<text x="{_MARGIN_LEFT}" y="18" font-size="14">'
        f"Step probabilities: {bundle.pair_id} (seed {bundle.master_seed}, "
        f"{bundle.n_trials} trials)</text>",
        f'<text x="{_MARGIN_LEFT}" y="34" fill="#666">{DISCLAIMER_LINE}</text>',
    ]
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _y(tick)
        parts.append(
            f'<line x1="{_MARGIN_LEFT - 6}" y1="{y:.2f}" x2="{width - 20}" y2="{y:.2f}" '
            f'stroke="#ddd" stroke-width="1"/>'
        )
        parts.append(f'<text x="8" y="{y + 4:.2f}" fill="#666">{tick:.2f}</text>')
    variant_tokens = list(bundle.box_summaries)
    for i, key in enumerate(keys):
        panel_x = _MARGIN_LEFT + i * (_PANEL_WIDTH + _PANEL_GAP)
        for j, variant in enumerate(variant_tokens):
            box = bundle.box_summaries[variant].get(key)
            if box is None:
                continue
            x_center = panel_x + (j + 1) * _PANEL_WIDTH / (len(variant_tokens) + 1)
            _draw_box(parts, x_center, box, _SVG_COLORS.get(variant, "#444"))
        parts.append(
            f'<text x="{panel_x + _PANEL_WIDTH / 2:.2f}" '
            f'y="{_PLOT_TOP + _PLOT_HEIGHT + 18}" text-anchor="middle">{key}</text>'
        )
    legend_y = _PLOT_TOP + _PLOT_HEIGHT + 40
    x = _MARGIN_LEFT
    for variant in variant_tokens:
        color = _SVG_COLORS.get(variant, "#444")
        parts.append(
            f'<rect x="{x}" y="{legend_y - 9}" width="12" height="12" fill="{color}" '
            f'fill-opacity="0.35" stroke="{color}"/>'
        )
        parts.append(f'<text x="{x + 18}" y="{legend_y + 1}">{variant}</text>')
        x += 150
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
