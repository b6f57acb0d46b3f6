"""Reference batch for the committed statistics report.

Run ``python3 tests/golden_stats.py`` to rewrite ``tests/golden/stats_reference.json``
after an intentional generator change.
"""

from __future__ import annotations

import json
from pathlib import Path

from aspforge.evaluator import dataset_stats
from aspforge.samplegen import SampleConfig, generate_batch

GOLDEN = Path(__file__).parent / "golden" / "stats_reference.json"
SEED = 2024
PER_TASK = 60


def reference_report() -> str:
    cfg = SampleConfig()
    recs = [r for task in ("ASE", "ASV", "ASC") for r in generate_batch(task, PER_TASK, SEED, cfg)]
    return json.dumps(dataset_stats(recs), indent=2, sort_keys=True) + "\n"


if __name__ == "__main__":
    GOLDEN.parent.mkdir(exist_ok=True)
    GOLDEN.write_text(reference_report())
    print(f"wrote {GOLDEN}")
