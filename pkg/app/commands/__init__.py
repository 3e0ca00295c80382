# Commands package: one module per CLI subcommand, each exposing run(run_config, out_dir)

from typing import List, Optional

from ..infogap import matched_horizons
from ..schemas import RunConfig


def resolve_horizons(run_config: RunConfig, horizons: Optional[List[float]]) -> List[float]:
    """Explicit horizons, else the robustness of the info-gap solution at each critical cost"""
    if horizons is not None:
        return list(horizons)
    grids = run_config.grids
    return matched_horizons(
        run_config.infogap_costs,
        run_config.problem,
        grids.m_max,
        h_max=grids.h_max,
        tol=grids.bisection_tol,
        grid_points=grids.reference_grid_points,
    )
