#!/usr/bin/env python3
"""Regenerate the golden files under tests/golden/ from the default pipeline.

Run after any intentional change to the simulation, logger formatting, or
report rendering, then review the diff before committing.
"""

from pathlib import Path

from asid import groundstation, wxindices
from asid.config import default_run_config
from asid.pipeline import run_simulation

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    result = run_simulation(default_run_config())
    result.sd.to_dir(GOLDEN_DIR)

    profile = wxindices.build_profile(result.sd.read("air.csv"), result.sd.read("ground.csv"))
    report = wxindices.build_report(profile)
    bundle = groundstation.build_bundle(report, profile, sources=("air.csv", "ground.csv"),
                                        generated_at=report.collection_time)
    groundstation.write_bundle(bundle, GOLDEN_DIR)
    for path in sorted(GOLDEN_DIR.rglob("*")):
        if path.is_file():
            print(f"{path.relative_to(GOLDEN_DIR)}: {path.stat().st_size} bytes")


if __name__ == "__main__":
    main()
