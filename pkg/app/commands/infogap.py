"""
Info-gap tables: most robust decision per critical cost and robustness curves
"""

import logging
from pathlib import Path
from typing import List

from ..exceptions import NoSolutionError
from ..export import format_ranges, rounded, write_csv
from ..infogap import infogap_optimal, robustness_curve
from ..schemas import RunConfig

logger = logging.getLogger(__name__)


def run(run_config: RunConfig, out_dir: Path) -> List[Path]:
    problem = run_config.problem
    grids = run_config.grids

    table_rows = []
    for critical_cost in run_config.infogap_costs:
        try:
            solution = infogap_optimal(
                critical_cost,
                problem,
                grids.m_max,
                h_max=grids.h_max,
                tol=grids.bisection_tol,
                grid_points=grids.reference_grid_points,
            )
        except NoSolutionError as e:
            logger.warning(f"⚠️ {e}")
            table_rows.append([critical_cost, None, None, None, "", False, False])
            continue
        h_hat_e3 = None if solution.h_hat is None else solution.h_hat * 1e3
        logger.info(
            f"L_c={critical_cost:.6g}: m*={solution.m_star}, "
            f"h_hat={'saturated' if solution.saturated else f'{solution.h_hat:.6g}'}"
        )
        table_rows.append([
            critical_cost,
            solution.m_star,
            solution.h_hat,
            rounded(h_hat_e3, 3),
            format_ranges(solution.argmax),
            True,
            solution.saturated,
        ])

    curve_rows = []
    if run_config.curve_costs:
        for m in run_config.curve_decisions:
            for result in robustness_curve(
                m,
                run_config.curve_costs,
                problem,
                h_max=grids.h_max,
                tol=grids.bisection_tol,
                grid_points=grids.reference_grid_points,
            ):
                curve_rows.append([m, result.critical_cost, result.h_hat, result.feasible, result.saturated])

    return [
        write_csv(
            out_dir / "infogap_table.csv",
            ["L_c", "m_star", "h_hat", "h_hat_e3_rounded", "argmax_set", "feasible", "saturated"],
            table_rows,
        ),
        write_csv(
            out_dir / "robustness_curves.csv",
            ["m", "L_c", "h_hat", "feasible", "saturated"],
            curve_rows,
        ),
    ]
