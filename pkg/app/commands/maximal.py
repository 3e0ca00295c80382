"""
Maximality score table: rows m, one column per horizon, scores in 10^3 utiles
"""

from pathlib import Path
from typing import List

from . import resolve_horizons
from ..export import format_ranges, rounded, write_csv
from ..imprecise import maximality_table
from ..schemas import RunConfig


def run(run_config: RunConfig, out_dir: Path) -> List[Path]:
    grids = run_config.grids
    horizons = resolve_horizons(run_config, run_config.maximality_horizons)
    table = maximality_table(
        horizons,
        run_config.problem,
        grids.m_max,
        h_max=grids.h_max,
        grid_points=grids.r_grid_points,
    )

    header = ["m"] + [f"h={h!r}" for h in horizons] + [f"h={h!r}_rounded" for h in horizons]
    rows = []
    for m, scores in zip(table.m_values, table.scores):
        scaled = [score / 1e3 for score in scores]
        rows.append([m] + scaled + [rounded(score, 1) for score in scaled])
    summaries = [format_ranges(maximal) for maximal in table.maximal_sets]
    rows.append(["maximal"] + summaries + summaries)

    return [write_csv(out_dir / "maximality.csv", header, rows)]
