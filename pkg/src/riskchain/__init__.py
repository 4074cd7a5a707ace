"""Risk-chain toolkit.

Quantifies misuse risk as (scenario, probability, consequence) triplets
over a fixed five-step chain, fits step probabilities from 0-10 scores,
runs seeded Monte Carlo comparisons of baseline versus AI-assisted
scenarios, and tracks qualitative concern assessments alongside.
"""

from .chain import CHAIN_ORDER, ChainStep
from .distfit import Cohort, EmpiricalDistribution, ScoreSample, from_scores
from .errors import (
    ConfigurationError,
    InsufficientDataError,
    RiskChainError,
    SchemaError,
    ValidationError,
)
from .ingest import (
    SCHEMA_VERSION,
    Project,
    ScoreDataset,
    dumps_canonical,
    fit_from_dataset,
    load_project,
    loads_project,
    parse_score_csv,
    project_from_dict,
    project_to_dict,
    resolve_scenario,
    save_project,
    validate_project_dict,
    validate_project_file,
)
from .qualitative import (
    AI_TABLE_NAME,
    BASELINE_TABLE_NAME,
    CONCERN_CATEGORIES,
    PROFILE_FIELDS,
    REQUIREMENT_FIELDS,
    AssessmentWorkflow,
    ConcernAssessment,
    ConcernUpdate,
    Level,
    ProfileDiffRow,
    StepRequirementProfile,
    ToolRecord,
    TransitionFlag,
    default_profile_table,
    diff_profiles,
    flag_transition,
    record_assessment,
    update_concern,
)
from .report import ReportBundle, build_report_bundle, render_box_svg
from .riskmodel import (
    INDEPENDENCE_DISCLAIMER,
    ConsequenceModel,
    DistributionRef,
    RiskChange,
    RiskResult,
    Scenario,
    ScenarioPair,
    ScenarioVariant,
    StepModel,
    classify_risk_change,
    expected_risk,
    overall_probability,
    risk_delta,
)
from .simengine import (
    PairSimulation,
    SimulationConfig,
    TrialResults,
    analytic_mean,
    simulate,
    simulate_pair,
)
from .stats import BoxSummary, rank_sum_test, summarize

__version__ = "0.1.0"

__all__ = [
    "CHAIN_ORDER",
    "ChainStep",
    "Cohort",
    "EmpiricalDistribution",
    "ScoreSample",
    "from_scores",
    "ConfigurationError",
    "InsufficientDataError",
    "RiskChainError",
    "SchemaError",
    "ValidationError",
    "SCHEMA_VERSION",
    "Project",
    "ScoreDataset",
    "dumps_canonical",
    "fit_from_dataset",
    "load_project",
    "loads_project",
    "parse_score_csv",
    "project_from_dict",
    "project_to_dict",
    "resolve_scenario",
    "save_project",
    "validate_project_dict",
    "validate_project_file",
    "AI_TABLE_NAME",
    "BASELINE_TABLE_NAME",
    "CONCERN_CATEGORIES",
    "PROFILE_FIELDS",
    "REQUIREMENT_FIELDS",
    "AssessmentWorkflow",
    "ConcernAssessment",
    "ConcernUpdate",
    "Level",
    "ProfileDiffRow",
    "StepRequirementProfile",
    "ToolRecord",
    "TransitionFlag",
    "default_profile_table",
    "diff_profiles",
    "flag_transition",
    "record_assessment",
    "update_concern",
    "ReportBundle",
    "build_report_bundle",
    "render_box_svg",
    "INDEPENDENCE_DISCLAIMER",
    "ConsequenceModel",
    "DistributionRef",
    "RiskChange",
    "RiskResult",
    "Scenario",
    "ScenarioPair",
    "ScenarioVariant",
    "StepModel",
    "classify_risk_change",
    "expected_risk",
    "overall_probability",
    "risk_delta",
    "PairSimulation",
    "SimulationConfig",
    "TrialResults",
    "analytic_mean",
    "simulate",
    "simulate_pair",
    "BoxSummary",
    "rank_sum_test",
    "summarize",
    "__version__",
]
