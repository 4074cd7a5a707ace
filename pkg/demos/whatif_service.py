"""Drive the HTTP what-if endpoint in process and show it never writes.

Run with: python3 demos/whatif_service.py
"""

import shutil
import tempfile
from pathlib import Path

try:
    from fastapi.testclient import TestClient
except ImportError:
    raise SystemExit("this demo needs fastapi installed (pip install -e .)")

from riskchain.service import ProjectStore, create_app

PROJECT = Path(__file__).resolve().parent.parent / "data" / "demo_project.json"


def main() -> None:
    with tempfile.TemporaryDirectory() as scratch:
        path = Path(scratch) / "project.json"
        shutil.copyfile(PROJECT, path)
        before = path.read_bytes()

        client = TestClient(create_app(ProjectStore(path)))
        health = client.get("/api/health").json()
        print(f"service up: revision {health['revision']},"
              f" schema {health['schema_version']}")

        base = client.post("/api/whatif", json={
            "pair_id": "chatbot", "seed": 42, "n_trials": 2000,
        }).json()
        print("\nstored pair, no overrides:")
        print(f"  baseline risk {base['baseline']['risk']}"
              f" / ai risk {base['ai']['risk']}")
        print(f"  delta {base['delta']:+} ({base['classification']})")

        tweaked = client.post("/api/whatif", json={
            "pair_id": "chatbot", "seed": 42, "n_trials": 2000,
            "overrides": [
                {"variant": "ai_augmented", "step": "production",
                 "fixed_value": 0.05},
                {"variant": "ai_augmented", "step": "acquisition",
                 "relative_p": "med"},
            ],
        }).json()
        print("\nwhat if production were pinned to 0.05 on the ai side?")
        print(f"  ai risk {tweaked['ai']['risk']}"
              f" -> delta {tweaked['delta']:+} ({tweaked['classification']})")
        print(f"  qualitative flags: {tweaked['qualitative_flags']}")

        after = path.read_bytes()
        print(f"\nstored project unchanged by what-if traffic: {before == after}")
        print(f"disclaimer on every response: {tweaked['disclaimer']!r}")


if __name__ == "__main__":
    main()
