"""
Equivalence report: info-gap against Gamma-minimax and against maximality for
the herd model at each horizon, and the two counterexample families
"""

import logging
from pathlib import Path
from typing import List

from . import resolve_horizons
from ..bridge import (
    make_counterexample,
    model_curves,
    model_difference_oracle,
    theorem1_check,
    theorem2_check,
)
from ..export import write_json
from ..schemas import ModelReport, RunConfig, TheoremReport

logger = logging.getLogger(__name__)

# first counterexample: L_c = 3 is not attained by L* at h = 1
COUNTEREXAMPLE_1 = {'horizon': 1.0, 'critical_cost': 3.0}
COUNTEREXAMPLE_2 = {'horizon': 1.0, 'critical_cost': None}


def concrete_report(run_config: RunConfig) -> ModelReport:
    grids = run_config.grids
    settings = run_config.bridge
    problem = run_config.problem
    curves = model_curves(
        problem,
        grids.m_max,
        h_max=grids.h_max,
        tol=grids.bisection_tol,
        grid_points=grids.reference_grid_points,
    )
    oracle = model_difference_oracle(problem, h_max=grids.h_max, grid_points=grids.r_grid_points)

    report = ModelReport()
    for h in resolve_horizons(run_config, run_config.bridge_horizons):
        verdict1 = theorem1_check(curves, h, derivative_steps=settings.derivative_steps, floor=settings.derivative_floor)
        verdict2 = theorem2_check(
            curves,
            oracle,
            h,
            h_prime_points=settings.h_prime_points,
            derivative_steps=settings.derivative_steps,
            floor=settings.derivative_floor,
        )
        logger.info(
            f"h={h:.6g}: Gamma-minimax {verdict1.sets.gamma_minimax}, info-gap {verdict1.sets.infogap}, "
            f"maximal {verdict2.sets.maximal}, union {verdict2.sets.infogap_union}"
        )
        report.theorem1.append(verdict1)
        report.theorem2.append(verdict2)
    return report


def counterexample_report(which: int, horizon: float, critical_cost, settings) -> ModelReport:
    curves = make_counterexample(which)
    verdict = theorem1_check(
        curves,
        horizon,
        critical_cost,
        derivative_steps=settings.derivative_steps,
        floor=settings.derivative_floor,
    )
    return ModelReport(theorem1=[verdict])


def run(run_config: RunConfig, out_dir: Path) -> List[Path]:
    settings = run_config.bridge
    report = TheoremReport(
        concrete=concrete_report(run_config),
        counterexample_1=counterexample_report(1, settings=settings, **COUNTEREXAMPLE_1),
        counterexample_2=counterexample_report(2, settings=settings, **COUNTEREXAMPLE_2),
    )
    return [write_json(out_dir / "theorem_report.json", report)]
