"""Rewrite the golden report files from the shipped fixture corpus.

Run after an intentional change to the pipeline output, then review the diff:

    python3 scripts/regen_golden.py
"""

from __future__ import annotations

import sys
from datetime import date
from pathlib import Path

from docmine.pipeline import RunConfig, run
from docmine.reporting import emit_reports

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
GOLDEN = ROOT / "golden"


def golden_config(out: Path = GOLDEN, jobs: int = 1) -> RunConfig:
    """The reference run: pinned K, default sampler settings, seed 0."""
    return RunConfig(repos=ROOT / "corpus" / "repos.txt", anchor_date=date(2021, 1, 1), seed=0, out=out, jobs=jobs)


def main() -> int:
    result = run(golden_config())
    for path in emit_reports(result.report, GOLDEN):
        print(path.relative_to(ROOT.parent.parent))
    return 0


if __name__ == "__main__":
    sys.exit(main())
