"""
Info-gap robust satisficing over the nested family [0, h] of infection
probabilities.

M(m, h) is the worst expected loss over r in [0, h]; the robustness
h_hat(m, L_c) is the largest h with M(m, h) <= L_c.
"""

import logging
import math
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from . import config as defaults
from .exceptions import DomainError, NoSolutionError
from .loss_core import _check_count, expected_loss_given_r, expected_loss_grid
from .schemas import InfoGapSolution, ProblemConfig, RobustnessResult, WorstCaseLoss

logger = logging.getLogger(__name__)

# relative excess over L(m|h) that counts as an interior worst case
INTERIOR_TOLERANCE = 1e-9
# absolute h_hat difference below which decisions tie
TIE_TOLERANCE = 1e-9


@lru_cache(maxsize=256)
def _reference_curve(m: int, config: ProblemConfig, h_max: float, points: int) -> Tuple[np.ndarray, np.ndarray]:
    """L(m|r) on a fixed uniform grid over [0, h_max]"""
    grid = np.linspace(0.0, h_max, points)
    values = expected_loss_grid(m, grid, config)
    grid.setflags(write=False)
    values.setflags(write=False)
    return grid, values


def _refine_peak(m: int, config: ProblemConfig, lower: float, upper: float) -> Tuple[float, float]:
    result = minimize_scalar(
        lambda r: -expected_loss_given_r(m, r, config),
        bounds=(lower, upper),
        method="bounded",
        options={"xatol": max(upper * 1e-9, 1e-15)},
    )
    return -float(result.fun), float(result.x)


def _worst_case(m: int, h: float, config: ProblemConfig, h_max: float, grid_points: int) -> Tuple[float, float]:
    """(M(m, h), maximising r), without validation or logging"""
    endpoint = expected_loss_given_r(m, h, config)
    grid, values = _reference_curve(m, config, h_max, grid_points)
    inside = int(np.searchsorted(grid, h, side="left"))
    if inside == 0:
        return endpoint, h

    i = int(np.argmax(values[:inside]))
    best, best_r = float(values[i]), float(grid[i])
    if best <= endpoint:
        return endpoint, h

    lower = float(grid[i - 1]) if i > 0 else 0.0
    upper = min(float(grid[i + 1]), h)
    refined, refined_r = _refine_peak(m, config, lower, upper)
    if refined > best:
        best, best_r = refined, refined_r
    return best, best_r


def _check_horizon(h: float, h_max: float) -> None:
    if not 0.0 <= h <= h_max:
        raise DomainError(f"horizon h={h} outside [0, {h_max}]")


def worst_case_value(
    m: int,
    h: float,
    config: ProblemConfig,
    *,
    h_max: float = defaults.H_MAX,
    grid_points: int = defaults.REFERENCE_GRID_POINTS,
) -> float:
    """M(m, h) alone, without the interior diagnostic"""
    _check_count("m", m, config.n)
    _check_horizon(h, h_max)
    return _worst_case(m, h, config, h_max, grid_points)[0]


def worst_case_loss(
    m: int,
    h: float,
    config: ProblemConfig,
    *,
    h_max: float = defaults.H_MAX,
    grid_points: int = defaults.REFERENCE_GRID_POINTS,
) -> WorstCaseLoss:
    """
    Worst-case expected loss M(m, h) = max of L(m|r) over r in [0, h].

    The endpoint r = h is evaluated exactly; a fixed reference grid on
    [0, h_max] is scanned below h and a grid peak above the endpoint value is
    refined with a bounded scalar search.

    Args:
        m: number of animals tested
        h: horizon of uncertainty, 0 <= h <= h_max
        config: problem parameters
        h_max: largest horizon the grid covers
        grid_points: size of the reference grid

    Returns:
        WorstCaseLoss: value, maximising r, and whether the worst case lies
        strictly inside (0, h)

    Raises:
        DomainError: h outside [0, h_max]
    """
    _check_count("m", m, config.n)
    _check_horizon(h, h_max)

    value, argmax_r = _worst_case(m, h, config, h_max, grid_points)
    endpoint = expected_loss_given_r(m, h, config)
    interior = 0.0 < argmax_r < h and value > endpoint * (1.0 + INTERIOR_TOLERANCE)
    if interior:
        logger.warning(
            f"⚠️ Worst case for m={m} at h={h:.6g} is interior: "
            f"L(m|{argmax_r:.6g})={value:.6g} > L(m|h)={endpoint:.6g}"
        )
    return WorstCaseLoss(m=m, horizon=h, value=value, argmax_r=argmax_r, interior_max=interior)


@lru_cache(maxsize=8192)
def robustness(
    m: int,
    critical_cost: float,
    config: ProblemConfig,
    *,
    h_max: float = defaults.H_MAX,
    tol: float = defaults.BISECTION_TOL,
    grid_points: int = defaults.REFERENCE_GRID_POINTS,
) -> RobustnessResult:
    """
    Robustness h_hat(m, L_c) = max{h : M(m, h) <= L_c}.

    Bisection on the non-decreasing map h -> M(m, h) over [0, h_max].

    Returns:
        RobustnessResult: infeasible when M(m, 0) > L_c, saturated when
        M(m, h_max) <= L_c, otherwise feasible with h_hat
    """
    _check_count("m", m, config.n)
    if not math.isfinite(critical_cost):
        raise DomainError(f"critical cost L_c={critical_cost} must be finite")

    def excess(h: float) -> float:
        return _worst_case(m, h, config, h_max, grid_points)[0] - critical_cost

    if excess(0.0) > 0.0:
        return RobustnessResult(m=m, critical_cost=critical_cost, status="infeasible")
    if excess(h_max) <= 0.0:
        logger.debug(f"Robustness of m={m} at L_c={critical_cost:.6g} saturates at h_max={h_max}")
        return RobustnessResult(m=m, critical_cost=critical_cost, status="saturated")

    h_hat = bisect(excess, 0.0, h_max, xtol=tol)
    logger.debug(f"h_hat(m={m}, L_c={critical_cost:.6g}) = {h_hat:.9g}")
    return RobustnessResult(m=m, critical_cost=critical_cost, status="feasible", h_hat=float(h_hat))


def infogap_optimal(
    critical_cost: float,
    config: ProblemConfig,
    m_max: int = defaults.DECISION_POOL,
    *,
    h_max: float = defaults.H_MAX,
    tol: float = defaults.BISECTION_TOL,
    grid_points: int = defaults.REFERENCE_GRID_POINTS,
) -> InfoGapSolution:
    """
    Most robust decision at critical cost L_c.

    Infeasible decisions are excluded; decisions whose robustness lies within
    1e-9 of the best are all reported in argmax, and m_star is the smallest.

    Raises:
        NoSolutionError: every m = 0..m_max is infeasible
    """
    _check_count("m_max", m_max, config.n)
    results = [
        robustness(m, critical_cost, config, h_max=h_max, tol=tol, grid_points=grid_points)
        for m in range(m_max + 1)
    ]
    feasible = [result for result in results if result.feasible]
    if not feasible:
        raise NoSolutionError(f"every decision m=0..{m_max} is infeasible at L_c={critical_cost}")

    best = max(result.rank for result in feasible)
    if math.isinf(best):
        argmax = tuple(result.m for result in feasible if result.saturated)
    else:
        argmax = tuple(result.m for result in feasible if best - result.rank <= TIE_TOLERANCE)
    winner = results[argmax[0]]
    return InfoGapSolution(
        critical_cost=critical_cost,
        m_star=winner.m,
        h_hat=winner.h_hat,
        saturated=winner.saturated,
        argmax=argmax,
    )


def robustness_curve(
    m: int,
    critical_costs: Sequence[float],
    config: ProblemConfig,
    *,
    h_max: float = defaults.H_MAX,
    tol: float = defaults.BISECTION_TOL,
    grid_points: int = defaults.REFERENCE_GRID_POINTS,
) -> List[RobustnessResult]:
    """Robustness of decision m along an ascending list of critical costs"""
    if not critical_costs:
        raise DomainError("robustness curve needs at least one critical cost")
    if any(b < a for a, b in zip(critical_costs, critical_costs[1:])):
        raise DomainError("critical costs must be ascending")
    return [
        robustness(m, cost, config, h_max=h_max, tol=tol, grid_points=grid_points)
        for cost in critical_costs
    ]


def matched_horizons(
    critical_costs: Sequence[float],
    config: ProblemConfig,
    m_max: int = defaults.DECISION_POOL,
    **kwargs,
) -> List[float]:
    """
    Robustness of the most robust decision at each critical cost.

    Costs with no feasible decision or a saturated solution are skipped.
    """
    horizons = []
    for critical_cost in critical_costs:
        try:
            solution = infogap_optimal(critical_cost, config, m_max, **kwargs)
        except NoSolutionError:
            logger.warning(f"⚠️ No horizon for L_c={critical_cost}: every decision is infeasible")
            continue
        if solution.h_hat is not None:
            horizons.append(solution.h_hat)
    return horizons
