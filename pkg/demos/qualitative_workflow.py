"""Qualitative side: requirement profiles, transition flags, and a
running concern-assessment workflow.

Run with: python3 demos/qualitative_workflow.py
"""

from riskchain import (
    CHAIN_ORDER,
    AssessmentWorkflow,
    ChainStep,
    ConcernAssessment,
    Level,
    StepRequirementProfile,
    ToolRecord,
    default_profile_table,
    diff_profiles,
    record_assessment,
    update_concern,
)


def main() -> None:
    baseline = default_profile_table()
    print("default per-step requirement profile (baseline):")
    for step in CHAIN_ORDER:
        row = baseline[step]
        print(f"  {step.token}: time={row.time.value} cost={row.cost.value}"
              f" knowledge={row.knowledge.value} resources={row.resources.value}"
              f" safeguard={row.safeguard.value} relative_p={row.relative_p.value}")

    ai = default_profile_table()
    row = ai[ChainStep.IDEATION]
    ai[ChainStep.IDEATION] = StepRequirementProfile(
        step=ChainStep.IDEATION,
        time=row.time,
        cost=row.cost,
        knowledge=row.knowledge,
        resources=row.resources,
        safeguard=Level.MED,
        relative_p=row.relative_p,
        rationale="assistant lowers the safeguard hurdle at the ideation step",
        assessor="demo",
    )
    ai[ChainStep.ACQUISITION] = StepRequirementProfile(
        step=ChainStep.ACQUISITION,
        time=Level.LOW, cost=Level.LOW, knowledge=Level.LOW,
        resources=Level.LOW, safeguard=Level.MED,
        relative_p=Level.MED,
        rationale="assistant suggests suppliers, raising step likelihood",
        assessor="demo",
    )

    print("\ncell-by-cell diff (baseline vs ai):")
    for diff in diff_profiles(baseline, ai):
        marker = " [concerning]" if diff.flag.value == "concerning" else ""
        reduced = " [barrier reduced]" if diff.barrier_reduction else ""
        print(f"  {diff.step.token} {diff.field}:"
              f" {diff.baseline.value} -> {diff.ai.value}{marker}{reduced}")

    workflow = AssessmentWorkflow(
        id="demo",
        organisms=("organism-alpha",),
        tools=(ToolRecord("chat-assistant", source="public release"),),
    )
    workflow = record_assessment(workflow, ConcernAssessment(
        organism="organism-alpha",
        ai_tool="chat-assistant",
        usability_of_technology=Level.MED,
        usability_as_weapon=Level.LOW,
        requirements_of_actors=Level.HIGH,
        potential_for_mitigation=Level.MED,
        subcomponent_notes={"acquisition": "supplier suggestions are vague"},
        overall_concern=Level.MED,
        rationale="initial review of the assistant against organism-alpha",
    ))
    workflow = update_concern(
        workflow,
        "step-by-step troubleshooting",
        Level.MED,
        "newer assistant version explains failure modes in detail",
        old_level=Level.LOW,
    )
    workflow = update_concern(
        workflow,
        "step-by-step troubleshooting",
        Level.MED,
        "re-checked after vendor mitigation; unchanged",
    )

    print(f"\nworkflow {workflow.id!r}: {len(workflow.evaluations)} evaluation(s),"
          f" {len(workflow.concern_updates)} update(s)")
    for upd in workflow.concern_updates:
        status = "no change" if upd.no_change else f"{upd.old_level.value} -> {upd.new_level.value}"
        print(f"  {upd.capability}: {status} ({upd.rationale})")
    stamps = [e.timestamp for e in workflow.evaluations]
    print(f"  evaluation timestamps are fixed-width and strictly increasing: {stamps}")


if __name__ == "__main__":
    main()
