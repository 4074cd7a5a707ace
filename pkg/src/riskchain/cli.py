"""Command-line interface.

Exit codes: 0 on success, 1 on validation or domain failures, 2 on usage
errors. The project file comes from --project or the RISKCHAIN_PROJECT
environment variable. Text and JSON output print every number with the
same shortest round-trip representation, so the two formats never
disagree.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .chain import CHAIN_ORDER, ChainStep
from .distfit import Cohort, from_scores
from .errors import RiskChainError, ValidationError
from .ingest import (
    Project,
    dumps_canonical,
    fit_from_dataset,
    load_project,
    validate_project_file,
)
from .qualitative import default_profile_table, diff_profiles
from .report import DISCLAIMER_LINE, build_report_bundle, render_box_svg
from .riskmodel import INDEPENDENCE_DISCLAIMER, RiskResult, classify_risk_change
from .simengine import DEFAULT_N_TRIALS, SimulationConfig, analytic_mean, simulate

PROJECT_ENV_VAR = "RISKCHAIN_PROJECT"


def _fmt(value) -> str:
    """One spelling per number: floats as their shortest round-trip repr."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, text_lines: list[str], doc: dict) -> None:
    output = (
        dumps_canonical(doc) if args.format == "json" else "\n".join(text_lines) + "\n"
    )
    if getattr(args, "out", None):
        Path(args.out).write_text(output, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(output)


def _project_path(args) -> str:
    if args.project:
        return args.project
    from_env = os.environ.get(PROJECT_ENV_VAR)
    if from_env:
        return from_env
    raise ValidationError(
        f"no project file given (use --project or set {PROJECT_ENV_VAR})"
    )


def _load(args) -> Project:
    return load_project(_project_path(args))


def _config(args) -> SimulationConfig:
    return SimulationConfig(
        master_seed=args.seed,
        n_trials=args.trials,
        parallelism_hint=args.parallelism,
    )


def _profile_rows_text(table) -> list[str]:
    lines = []
    for step in CHAIN_ORDER:
        p = table[step]
        cells = " ".join(
            f"{name}={p.level(name).token}"
            for name in ("time", "cost", "knowledge", "resources", "safeguard", "relative_p")
        )
        lines.append(f"  {step.token}: {cells}")
    return lines


def _table_doc(table) -> dict:
    from .ingest import profile_table_to_dict

    return profile_table_to_dict(table)


def _cmd_validate(args) -> int:
    path = _project_path(args)
    problems = validate_project_file(path)
    if problems:
        doc = {"ok": False, "path": str(path), "problems": problems}
        lines = [f"project {path} has {len(problems)} problem(s):"]
        lines += [f"  violation: {p}" for p in problems]
        _emit(args, lines, doc)
        return 1
    project = load_project(path)
    doc = {
        "ok": True,
        "path": str(path),
        "name": project.name,
        "datasets": len(project.datasets),
        "scenarios": len(project.scenarios),
        "pairs": len(project.pairs),
        "profiles": len(project.profiles),
        "workflows": len(project.workflows),
    }
    lines = [
        f"ok: project {project.name!r} is valid "
        f"({len(project.datasets)} dataset(s), {len(project.scenarios)} scenario(s), "
        f"{len(project.pairs)} pair(s), {len(project.profiles)} profile table(s), "
        f"{len(project.workflows)} workflow(s))"
    ]
    _emit(args, lines, doc)
    return 0


def _cmd_fit(args) -> int:
    project = _load(args)
    dataset = project.find_dataset(args.dataset)
    if dataset is None:
        raise ValidationError(f"unknown dataset {args.dataset!r}")
    cohorts = [Cohort.from_token(args.cohort)] if args.cohort else list(Cohort)
    steps = [ChainStep.from_token(args.step)] if args.step else list(CHAIN_ORDER)
    cells = []
    for cohort in cohorts:
        for step in steps:
            rows = dataset.select(cohort, step)
            if not rows:
                continue
            dist = from_scores(rows, scale_max=args.scale_max)
            cells.append(
                {
                    "cohort": cohort.token,
                    "step": step.token,
                    "n": len(rows),
                    "mean": dist.mean(),
                    "support": [[v, w] for v, w in dist.support],
                }
            )
    if not cells:
        raise ValidationError(
            f"dataset {args.dataset!r} has no scores for the requested cells"
        )
    doc = {
        "project": project.name,
        "dataset": dataset.name,
        "scale_max": float(args.scale_max),
        "cells": cells,
    }
    lines = [f"dataset {dataset.name} (scale_max {_fmt(float(args.scale_max))})"]
    for cell in cells:
        lines.append(
            f"  {cell['cohort']} {cell['step']}: n={cell['n']} mean={_fmt(cell['mean'])}"
        )
        lines.append(
            "    support: "
            + " ".join(f"{_fmt(v)}:{_fmt(w)}" for v, w in cell["support"])
        )
    _emit(args, lines, doc)
    return 0


def _cmd_simulate(args) -> int:
    project = _load(args)
    scenario = project.find_scenario(args.scenario)
    if scenario is None:
        raise ValidationError(f"unknown scenario {args.scenario!r}")
    config = _config(args)
    trials = simulate(scenario, config)
    risk = RiskResult.from_probability(
        trials.mean_overall(), scenario.consequence, scenario.variant
    )
    from .report import box_summaries_for

    box = box_summaries_for(trials)["overall"]
    doc = {
        "disclaimer": DISCLAIMER_LINE,
        "project": project.name,
        "scenario": scenario.id,
        "variant": scenario.variant.token,
        "master_seed": config.master_seed,
        "n_trials": config.n_trials,
        "mean_overall": trials.mean_overall(),
        "analytic_mean": analytic_mean(scenario),
        "risk": risk.to_dict(),
        "overall_box": box.to_dict(),
    }
    lines = [
        DISCLAIMER_LINE,
        f"project: {project.name}",
        f"scenario: {scenario.id} ({scenario.variant.token})",
        f"seed: {config.master_seed}  trials: {config.n_trials}",
        f"mean_overall: {_fmt(trials.mean_overall())}",
        f"analytic_mean: {_fmt(analytic_mean(scenario))}",
        f"risk: {_fmt(risk.risk)} {risk.units}",
        f"overall box: median={_fmt(box.median)} q1={_fmt(box.q1)} q3={_fmt(box.q3)} "
        f"whiskers=[{_fmt(box.whisker_low)}, {_fmt(box.whisker_high)}] "
        f"outliers={len(box.outliers)}",
        f"note: {INDEPENDENCE_DISCLAIMER}",
    ]
    _emit(args, lines, doc)
    return 0


def _cmd_compare(args) -> int:
    project = _load(args)
    pair = project.find_pair(args.pair)
    if pair is None:
        raise ValidationError(f"unknown pair {args.pair!r}")
    config = _config(args)
    from .simengine import simulate_pair

    sim = simulate_pair(pair, config)
    classification = classify_risk_change(sim.delta, args.tolerance)
    doc = {
        "disclaimer": DISCLAIMER_LINE,
        "project": project.name,
        "pair": pair.id,
        "master_seed": config.master_seed,
        "n_trials": config.n_trials,
        "results": [
            {"scenario": pair.baseline.id, **sim.baseline_risk.to_dict()},
            {"scenario": pair.ai.id, **sim.ai_risk.to_dict()},
        ],
        "delta": sim.delta,
        "tolerance": float(args.tolerance),
        "classification": classification.value,
    }
    rows = [
        ("scenario", "variant", "mean_overall_p", "consequence", "risk"),
        (
            pair.baseline.id,
            sim.baseline_risk.variant.token,
            _fmt(sim.baseline_risk.overall_probability),
            _fmt(sim.baseline_risk.consequence),
            _fmt(sim.baseline_risk.risk),
        ),
        (
            pair.ai.id,
            sim.ai_risk.variant.token,
            _fmt(sim.ai_risk.overall_probability),
            _fmt(sim.ai_risk.consequence),
            _fmt(sim.ai_risk.risk),
        ),
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    table = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    sign = "+" if sim.delta > 0 else ""
    lines = [
        DISCLAIMER_LINE,
        f"project: {project.name}",
        f"pair: {pair.id}  seed: {config.master_seed}  trials: {config.n_trials}",
        *table,
        f"delta: {sign}{_fmt(sim.delta)} {sim.baseline_risk.units} ({classification.value})",
        f"note: {INDEPENDENCE_DISCLAIMER}",
    ]
    _emit(args, lines, doc)
    return 0


def _cmd_qual(args) -> int:
    if args.defaults:
        table = default_profile_table()
        doc = {"table": "defaults", "rows": _table_doc(table)}
        lines = ["table: defaults", *_profile_rows_text(table)]
        _emit(args, lines, doc)
        return 0
    project = _load(args)
    if args.diff:
        base_name, ai_name = args.diff
        for name in (base_name, ai_name):
            if name not in project.profiles:
                raise ValidationError(f"unknown profile table {name!r}")
        rows = diff_profiles(project.profiles[base_name], project.profiles[ai_name])
        doc = {
            "project": project.name,
            "baseline": base_name,
            "ai": ai_name,
            "rows": [
                {
                    "step": r.step.token,
                    "field": r.field,
                    "baseline": r.baseline.token,
                    "ai": r.ai.token,
                    "flag": r.flag.token,
                    "barrier_reduction": r.barrier_reduction,
                }
                for r in rows
            ],
        }
        lines = [f"profile diff: {base_name} -> {ai_name} ({len(rows)} change(s))"]
        for r in rows:
            note = " (barrier reduction)" if r.barrier_reduction else ""
            lines.append(
                f"  {r.step.token} {r.field}: {r.baseline.token} -> {r.ai.token} "
                f"[{r.flag.token}]{note}"
            )
        _emit(args, lines, doc)
        return 0
    if args.table:
        if args.table not in project.profiles:
            raise ValidationError(f"unknown profile table {args.table!r}")
        table = project.profiles[args.table]
        doc = {"project": project.name, "table": args.table, "rows": _table_doc(table)}
        lines = [f"table: {args.table}", *_profile_rows_text(table)]
        _emit(args, lines, doc)
        return 0
    names = sorted(project.profiles)
    doc = {"project": project.name, "tables": names}
    lines = [f"project: {project.name}", "profile tables: " + (", ".join(names) if names else "(none)")]
    _emit(args, lines, doc)
    return 0


def _cmd_report(args) -> int:
    project = _load(args)
    bundle = build_report_bundle(project, args.pair, _config(args))
    if args.svg:
        Path(args.svg).write_text(render_box_svg(bundle), encoding="utf-8", newline="\n")
    doc = bundle.to_dict()
    lines = [
        DISCLAIMER_LINE,
        f"project: {bundle.project_name}",
        f"pair: {bundle.pair_id}  seed: {bundle.master_seed}  trials: {bundle.n_trials}",
        "risk table:",
    ]
    for row in doc["risk_table"]:
        lines.append(
            f"  {row['scenario']} ({row['variant']}): mean_p={_fmt(row['overall_probability'])} "
            f"consequence={_fmt(row['consequence'])} risk={_fmt(row['risk'])} {row['units']}"
        )
    sign = "+" if bundle.delta > 0 else ""
    lines.append(
        f"delta: {sign}{_fmt(bundle.delta)} {bundle.baseline_risk.units} "
        f"({bundle.classification.value})"
    )
    lines.append("rank-sum tests (ai vs baseline):")
    for key, result in bundle.test_results.items():
        lines.append(
            f"  {key}: U={_fmt(result['u_statistic'])} p={_fmt(result['p_value'])}"
        )
    lines.append(f"box summaries use {doc['quantile_convention']}; {doc['whisker_rule']}")
    if bundle.qualitative_diffs:
        lines.append("qualitative changes:")
        for r in bundle.qualitative_diffs:
            note = " (barrier reduction)" if r.barrier_reduction else ""
            lines.append(
                f"  {r.step.token} {r.field}: {r.baseline.token} -> {r.ai.token} "
                f"[{r.flag.token}]{note}"
            )
    else:
        lines.append("qualitative changes: (none)")
    lines.append(f"note: {INDEPENDENCE_DISCLAIMER}")
    _emit(args, lines, doc)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ProjectStore, create_app

    store = ProjectStore(_project_path(args))
    static_dir = Path(args.ui) if args.ui else None
    app = create_app(store, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskchain",
        description="Risk-chain toolkit: fit score distributions, simulate "
        "five-step scenarios, and compare paired risks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seeded: bool) -> None:
        p.add_argument("--project", help=f"project JSON path (or ${PROJECT_ENV_VAR})")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")
        if seeded:
            p.add_argument("--seed", type=int, required=True, help="master seed")
            p.add_argument("--trials", type=int, default=DEFAULT_N_TRIALS)
            p.add_argument("--parallelism", type=int, default=None)

    p = sub.add_parser("validate", help="check a project file and list violations")
    add_common(p, seeded=False)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("fit", help="fit empirical distributions from a dataset")
    add_common(p, seeded=False)
    p.add_argument("--dataset", required=True)
    p.add_argument("--cohort", help="restrict to one cohort token")
    p.add_argument("--step", help="restrict to one step token")
    p.add_argument("--scale-max", type=float, default=10.0, dest="scale_max")
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("simulate", help="simulate one scenario")
    add_common(p, seeded=True)
    p.add_argument("--scenario", required=True)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("compare", help="simulate a pair and report the risk delta")
    add_common(p, seeded=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--tolerance", type=float, default=0.0)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("qual", help="inspect qualitative profile tables")
    add_common(p, seeded=False)
    p.add_argument("--table", help="print one table")
    p.add_argument("--diff", nargs=2, metavar=("BASELINE", "AI"))
    p.add_argument("--defaults", action="store_true", help="print the built-in default table")
    p.set_defaults(handler=_cmd_qual)

    p = sub.add_parser("report", help="full comparison bundle for a pair")
    add_common(p, seeded=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--svg", help="also write a box-plot SVG to this path")
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("serve", help="serve the HTTP API for a project")
    p.add_argument("--project", help=f"project JSON path (or ${PROJECT_ENV_VAR})")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", help="serve this directory of static explorer files")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.handler(args)
    except RiskChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
