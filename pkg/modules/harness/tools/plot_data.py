"""
Aggregation of result rows into plot-ready tables.
"""
from typing import Literal, Sequence, Union

import pandas as pd

from modules.harness.models.harness import ResultRow
from modules.harness.tools.result_store import rows_to_frame

Stat = Literal["best", "median", "std"]


def emit_plot_data(
    rows: Union[pd.DataFrame, Sequence[ResultRow]],
    group_by: Sequence[str],
    stat: Stat = "median",
    best_only: bool = True,
) -> pd.DataFrame:
    """
    Aggregate fidelities per group.

    Args:
        rows: ResultRows or a frame with the CSV columns
        group_by: Grouping column names, e.g. ["beta"] or ["D", "beta"]
        stat: "best" (maximum), "median" or "std" (population)
        best_only: Keep only rows marked best before aggregating

    Returns:
        Frame with the group columns, `fidelity_<stat>` and `count`, sorted by group
    """
    frame = rows if isinstance(rows, pd.DataFrame) else rows_to_frame(rows)
    if frame.empty:
        raise ValueError("no rows to aggregate")
    group_by = list(group_by)
    unknown = [c for c in group_by if c not in frame.columns]
    if unknown:
        raise ValueError(f"unknown group_by columns {unknown}")
    if best_only:
        frame = frame[frame["restart"].astype(str) == "best"]
        if frame.empty:
            raise ValueError("no best-marked rows to aggregate")

    grouped = frame.groupby(group_by, sort=True)["fidelity"]
    if stat == "best":
        values = grouped.max()
    elif stat == "median":
        values = grouped.median()
    elif stat == "std":
        values = grouped.std(ddof=0)
    else:
        raise ValueError(f"unknown stat {stat!r}")
    out = values.rename(f"fidelity_{stat}").to_frame()
    out["count"] = grouped.size()
    return out.reset_index()
