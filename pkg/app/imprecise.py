"""
Decision rules under the vacuous credal set on [0, h]: every distribution of
the infection probability supported on [0, h]. Upper expectations reduce to a
maximum over r in [0, h].
"""

import logging
import math
from functools import lru_cache
from typing import FrozenSet, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from . import config as defaults
from .infogap import _check_horizon, worst_case_value
from .loss_core import _check_count, binomial_weights, expected_loss_grid, loss_vector
from .schemas import MaximalityTable, ProblemConfig

logger = logging.getLogger(__name__)

GAMMA_MINIMAX_TOLERANCE = 1e-9


@lru_cache(maxsize=64)
def _horizon_weights(n: int, h: float, points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Uniform grid on [0, h] and the binomial weights of each grid point"""
    grid = np.linspace(0.0, h, points)
    weights = binomial_weights(n, grid)
    grid.setflags(write=False)
    weights.setflags(write=False)
    return grid, weights


def _difference_at(m: int, m_prime: int, r: float, config: ProblemConfig) -> float:
    weights = binomial_weights(config.n, [r])[0]
    return math.fsum(weights * (loss_vector(m_prime, config) - loss_vector(m, config)))


def upper_difference(
    m: int,
    m_prime: int,
    h: float,
    config: ProblemConfig,
    *,
    h_max: float = defaults.H_MAX,
    grid_points: int = defaults.INNER_GRID_POINTS,
) -> float:
    """
    Upper expectation of L(m', .) - L(m, .) over the credal set on [0, h].

    Maximum of L(m'|r) - L(m|r) over a uniform grid on [0, h] (both endpoints
    included), refined with a bounded scalar search when the grid maximum is
    interior.
    """
    _check_count("m", m, config.n)
    _check_count("m_prime", m_prime, config.n)
    _check_horizon(h, h_max)
    if m == m_prime:
        return 0.0

    grid, weights = _horizon_weights(config.n, h, grid_points)
    differences = weights @ (loss_vector(m_prime, config) - loss_vector(m, config))
    i = int(np.argmax(differences))
    best = float(differences[i])
    if 0 < i < len(grid) - 1:
        result = minimize_scalar(
            lambda r: -_difference_at(m, m_prime, r, config),
            bounds=(float(grid[i - 1]), float(grid[i + 1])),
            method="bounded",
            options={"xatol": max(h * 1e-6, 1e-15)},
        )
        best = max(best, -float(result.fun))
    return best


def dominance_margin(m: int, m_prime: int, h: float, config: ProblemConfig, **kwargs) -> float:
    """
    Minimum of L(m'|r) - L(m|r) over r in [0, h].

    m dominates m' under the credal set exactly when the margin is positive.
    """
    return -upper_difference(m_prime, m, h, config, **kwargs)


def maximality_score(
    m: int,
    h: float,
    config: ProblemConfig,
    m_max: int = defaults.DECISION_POOL,
    **kwargs,
) -> float:
    """
    Smallest upper expected gain of switching from any other m' to m.

    min over m' != m in 0..m_max of max over r in [0, h] of
    L(m'|r) - L(m|r). A non-negative score means no m' dominates m; a
    single-candidate pool scores +inf.
    """
    _check_count("m_max", m_max, config.n)
    _check_count("m", m, m_max)
    scores = [upper_difference(m, other, h, config, **kwargs) for other in range(m_max + 1) if other != m]
    return min(scores, default=math.inf)


def maximal_set(h: float, config: ProblemConfig, m_max: int = defaults.DECISION_POOL, **kwargs) -> FrozenSet[int]:
    """Decisions that no other decision in 0..m_max dominates at horizon h"""
    return frozenset(m for m in range(m_max + 1) if maximality_score(m, h, config, m_max, **kwargs) >= 0.0)


def gamma_minimax(h: float, config: ProblemConfig, m_max: int = defaults.DECISION_POOL, **kwargs) -> FrozenSet[int]:
    """Decisions minimising the worst-case expected loss M(m, h)"""
    _check_count("m_max", m_max, config.n)
    values = [worst_case_value(m, h, config, **kwargs) for m in range(m_max + 1)]
    best = min(values)
    slack = GAMMA_MINIMAX_TOLERANCE * abs(best)
    return frozenset(m for m, value in enumerate(values) if value - best <= slack)


def maximality_table(
    h_values: Sequence[float],
    config: ProblemConfig,
    m_max: int = defaults.DECISION_POOL,
    **kwargs,
) -> MaximalityTable:
    """Maximality scores for m = 0..m_max at every horizon, with the maximal sets"""
    m_values = list(range(m_max + 1))
    scores = [[maximality_score(m, h, config, m_max, **kwargs) for h in h_values] for m in m_values]
    maximal_sets = [
        tuple(m for m in m_values if scores[m][j] >= 0.0)
        for j in range(len(h_values))
    ]
    for h, maximal in zip(h_values, maximal_sets):
        logger.debug(f"Maximal set at h={h:.6g}: {maximal}")
    return MaximalityTable(
        h_values=list(h_values),
        m_values=m_values,
        scores=scores,
        maximal_sets=maximal_sets,
    )


def brute_force_maximal_set(
    h: float,
    config: ProblemConfig,
    m_max: int = defaults.DECISION_POOL,
    grid_points: int = 1000,
) -> FrozenSet[int]:
    """
    Maximal set by direct pairwise dominance on a dense grid.

    m' dominates m when L(m'|r) < L(m|r) at every grid point.
    """
    _check_count("m_max", m_max, config.n)
    _check_horizon(h, defaults.H_MAX)
    grid = np.linspace(0.0, h, grid_points)
    losses = np.vstack([expected_loss_grid(m, grid, config) for m in range(m_max + 1)])
    maximal = set()
    for m in range(m_max + 1):
        dominated = any(
            np.min(losses[m] - losses[other]) > 0.0
            for other in range(m_max + 1)
            if other != m
        )
        if not dominated:
            maximal.add(m)
    return frozenset(maximal)
