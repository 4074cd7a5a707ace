"""Walk through the core risk arithmetic on a hand-built scenario pair.

Run with: python3 demos/risk_arithmetic.py
"""

from riskchain import (
    ConsequenceModel,
    RiskResult,
    ScenarioVariant,
    classify_risk_change,
    expected_risk,
    overall_probability,
    risk_delta,
)


def main() -> None:
    print("A risk is a (scenario, probability, consequence) triplet;")
    print("its magnitude is probability times consequence.\n")

    consequence = ConsequenceModel(
        value=100000.0,
        units="deaths",
        uncertainty_note="notional magnitude for a mass-casualty outcome",
    )

    steps = [0.5, 0.4, 0.25, 0.5, 0.2]
    p = overall_probability(steps)
    print(f"five step probabilities {steps}")
    print(f"overall chain probability = {p} (product of the steps)")
    print(f"expected risk = {expected_risk(p, consequence.value)} deaths\n")

    baseline = RiskResult.from_probability(0.005, consequence, ScenarioVariant.BASELINE)
    ai = RiskResult.from_probability(0.017, consequence, ScenarioVariant.AI_AUGMENTED)
    delta = risk_delta(baseline, ai)
    change = classify_risk_change(delta)

    print("paired comparison, same consequence on both sides:")
    print(f"  baseline      p={baseline.overall_probability}  risk={baseline.risk}")
    print(f"  ai_augmented  p={ai.overall_probability}  risk={ai.risk}")
    print(f"  delta = {delta:+} {baseline.units} ({change.value})")
    print(f"  rounded for reporting: {round(delta, 9):+} {baseline.units}\n")

    print("note: " + baseline.to_dict()["independence_disclaimer"])


if __name__ == "__main__":
    main()
