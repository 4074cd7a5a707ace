"""Pinned end-to-end output for the bundled demo project.

The golden file freezes the full JSON report for one seed. Any change to
the RNG scheme, the inverse CDF, the statistics, or the serialization
shows up here as a byte diff. Regenerate deliberately with:

    riskchain report --project data/demo_project.json --pair chatbot \
        --seed 42 --trials 2000 --format json --out tests/golden/demo_report.json
"""

from pathlib import Path

from riskchain.cli import main

GOLDEN = Path(__file__).resolve().parent / "golden" / "demo_report.json"

from .conftest import DEMO_PROJECT_PATH


def test_demo_report_matches_golden_bytes(tmp_path):
    out = tmp_path / "report.json"
    code = main([
        "report", "--project", str(DEMO_PROJECT_PATH), "--pair", "chatbot",
        "--seed", "42", "--trials", "2000", "--format", "json",
        "--out", str(out),
    ])
    assert code == 0
    assert out.read_bytes() == GOLDEN.read_bytes()
