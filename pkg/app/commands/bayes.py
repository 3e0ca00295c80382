"""
Bayesian analysis tables: optimal m per prior, expected loss curves,
loss exceedance and its sensitivity to the prior
"""

import logging
from pathlib import Path
from typing import List

from .. import config as defaults
from ..bayes import (
    bayes_loss_curve,
    exceedance_curve,
    loss_atoms,
    optimal_m_bayes,
    prior_from_moments,
    prob_any_diseased,
    sensitivity_grid,
)
from ..export import rounded, write_csv
from ..schemas import RunConfig

logger = logging.getLogger(__name__)


def default_thresholds(m: int, run_config: RunConfig) -> List[float]:
    """0..EXCEEDANCE_LIMIT in fixed steps, plus the loss atoms of m"""
    steps = int(defaults.EXCEEDANCE_LIMIT // defaults.EXCEEDANCE_STEP)
    thresholds = {k * defaults.EXCEEDANCE_STEP for k in range(steps + 1)}
    thresholds.update(loss_atoms(m, run_config.problem))
    return sorted(thresholds)


def run(run_config: RunConfig, out_dir: Path) -> List[Path]:
    problem = run_config.problem
    m_max = run_config.grids.m_max

    table_rows = []
    curve_rows = []
    for t, sigma in run_config.bayes_priors:
        prior = prior_from_moments(t, sigma)
        m_star, loss = optimal_m_bayes(prior, problem, m_max)
        logger.info(f"t={t}, sigma={sigma}: m*={m_star}, E(L)={loss / 1e6:.3f}e6")
        table_rows.append([
            t, prior.s, sigma, prior.alpha, prior.beta, m_star,
            loss / 1e6, rounded(loss / 1e6, 3), prob_any_diseased(prior, problem),
        ])
        curve_rows.extend([t, m, value] for m, value in bayes_loss_curve(prior, problem, m_max))

    settings = run_config.exceedance
    prior = prior_from_moments(settings.t, settings.sigma)
    thresholds = settings.thresholds
    if thresholds is None:
        thresholds = default_thresholds(settings.m, run_config)
    curve = exceedance_curve(settings.m, prior, thresholds, problem)

    grid_settings = run_config.sensitivity
    grid = sensitivity_grid(
        grid_settings.t_values,
        grid_settings.s_values,
        grid_settings.m,
        grid_settings.critical_cost,
        problem,
    )

    return [
        write_csv(
            out_dir / "bayes_table.csv",
            ["t", "s", "sigma", "alpha", "beta", "m_star",
             "expected_loss_e6", "expected_loss_e6_rounded", "prob_diseased"],
            table_rows,
        ),
        write_csv(out_dir / "bayes_loss_curves.csv", ["t", "m", "expected_loss"], curve_rows),
        write_csv(
            out_dir / "exceedance.csv",
            ["L_c", "probability"],
            zip(curve.thresholds, curve.probabilities),
        ),
        write_csv(
            out_dir / "sensitivity.csv",
            ["s"] + [f"t={t!r}" for t in grid.t_values],
            ([s] + row for s, row in zip(grid.s_values, grid.probabilities)),
        ),
    ]
