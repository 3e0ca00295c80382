"""
Loss tables: conditional loss against the number of diseased animals, and
expected loss against m for fixed infection probabilities
"""

from pathlib import Path
from typing import List

from ..export import write_csv
from ..loss_core import expected_loss_grid, loss_profile
from ..schemas import RunConfig


def run(run_config: RunConfig, out_dir: Path) -> List[Path]:
    problem = run_config.problem
    profile = run_config.loss_profile
    rates = run_config.expected_loss_rates

    by_d = []
    for m in profile.m_values:
        for row in loss_profile(m, range(profile.d_max + 1), problem):
            by_d.append([row.m, row.d, row.expected_loss, row.prob_termination, row.prob_pass])

    by_m = []
    if rates:
        decisions = range(run_config.grids.m_max + 1)
        losses = {m: expected_loss_grid(m, rates, problem) for m in decisions}
        for i, r in enumerate(rates):
            by_m.extend([r, m, float(losses[m][i])] for m in decisions)

    return [
        write_csv(
            out_dir / "loss_by_d.csv",
            ["m", "d", "expected_loss", "prob_termination", "prob_pass"],
            by_d,
        ),
        write_csv(out_dir / "expected_loss_by_m.csv", ["r", "m", "expected_loss"], by_m),
    ]
