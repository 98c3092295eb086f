"""
Result persistence: one JSON record per line plus a flat CSV for plotting.
"""
import logging
from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from modules.harness.models.harness import CSV_COLUMNS, ResultRecord, ResultRow

logger = logging.getLogger(__name__)


def rows_to_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    """Flat table with the CSV columns; best rows carry restart = "best"."""
    data = [
        {
            "model": row.model,
            "n": row.n,
            "D": row.D,
            "beta": row.beta,
            "noisy": row.noisy,
            "seed": row.seed,
            "restart": "best" if row.best else str(row.restart),
            "fidelity": row.fidelity,
            "steps": row.steps,
            "termination": row.termination,
            "wall_seconds": row.wall_seconds,
        }
        for row in rows
    ]
    return pd.DataFrame(data, columns=CSV_COLUMNS)


def write_results_csv(rows: Sequence[ResultRow], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows_to_frame(rows).to_csv(path, index=False)
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def read_results_csv(path: Union[str, Path]) -> pd.DataFrame:
    """Load a results CSV, keeping restart as text."""
    frame = pd.read_csv(path, dtype={"restart": str, "model": str, "termination": str})
    missing = [c for c in CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"results file {path} lacks columns {missing}")
    return frame


def write_records_jsonl(records: Sequence[ResultRecord], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(record.model_dump_json() + "\n")
    logger.info(f"Wrote {len(records)} records to {path}")
    return path


def read_records_jsonl(path: Union[str, Path]) -> List[ResultRecord]:
    with open(path, "r", encoding="utf-8") as f:
        return [ResultRecord.model_validate_json(line) for line in f if line.strip()]
