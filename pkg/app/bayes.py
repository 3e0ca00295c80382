"""
Bayesian analysis: Beta prior over the infection probability r,
Beta-binomial prior predictive over the number of diseased animals d,
expected-loss minimisation over m, and loss exceedance probabilities.
"""

import logging
import math
from collections import defaultdict
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.special import betaln

from . import config as defaults
from .exceptions import DomainError, InfeasibleMomentsError
from .loss_core import (
    _check_count,
    log_binom,
    loss_vector,
    outbreak_cost,
    termination_cost,
    prob_pass,
    test_cost,
)
from .schemas import BetaPrior, ExceedanceCurve, ProblemConfig, SensitivityGrid

logger = logging.getLogger(__name__)


# Priors
def prior_from_moments(t: float, sigma: float) -> BetaPrior:
    """
    Beta prior with mean t and standard deviation sigma.

    Args:
        t: prior mean of r, strictly between 0 and 1
        sigma: prior standard deviation, 0 < sigma^2 < t(1-t)

    Returns:
        BetaPrior: alpha = s t, beta = s (1-t) with s = t(1-t)/sigma^2 - 1

    Raises:
        InfeasibleMomentsError: no Beta distribution has these moments
    """
    if not 0.0 < t < 1.0:
        raise InfeasibleMomentsError(f"prior mean t={t} must lie strictly between 0 and 1")
    variance = sigma * sigma
    if sigma <= 0.0 or variance >= t * (1.0 - t):
        raise InfeasibleMomentsError(
            f"sigma={sigma} infeasible for t={t}: need 0 < sigma^2 < t(1-t) = {t * (1.0 - t)}"
        )
    s = t * (1.0 - t) / variance - 1.0
    return BetaPrior(alpha=s * t, beta=s * (1.0 - t))


def prior_from_strength(t: float, s: float) -> BetaPrior:
    """Beta prior with mean t and strength s = alpha + beta"""
    if not 0.0 < t < 1.0:
        raise DomainError(f"prior mean t={t} must lie strictly between 0 and 1")
    if s <= 0.0:
        raise DomainError(f"prior strength s={s} must be positive")
    return BetaPrior(alpha=s * t, beta=s * (1.0 - t))


# Prior predictive
@lru_cache(maxsize=256)
def _beta_binomial_vector(n: int, prior: BetaPrior) -> np.ndarray:
    d = np.arange(n + 1, dtype=float)
    log_pmf = log_binom(n, d) + betaln(prior.alpha + d, prior.beta + n - d) - betaln(prior.alpha, prior.beta)
    pmf = np.exp(log_pmf)
    # betaln differences leave the total off 1 by up to ~1e-12
    pmf /= math.fsum(pmf)
    pmf.setflags(write=False)
    return pmf


def beta_binomial_pmf(d: int, prior: BetaPrior, config: ProblemConfig) -> float:
    """Pr(d | alpha, beta) = C(n, d) B(alpha + d, beta + n - d) / B(alpha, beta)"""
    _check_count("d", d, config.n)
    return float(_beta_binomial_vector(config.n, prior)[d])


def prob_any_diseased(prior: BetaPrior, config: ProblemConfig) -> float:
    """Prior predictive probability that at least one animal is diseased"""
    return math.fsum(_beta_binomial_vector(config.n, prior)[1:])


# Expected loss
def bayes_expected_loss(m: int, prior: BetaPrior, config: ProblemConfig) -> float:
    """E(L | alpha, beta): conditional loss averaged over the prior predictive"""
    pmf = _beta_binomial_vector(config.n, prior)
    return math.fsum(pmf * loss_vector(m, config))


def bayes_loss_curve(prior: BetaPrior, config: ProblemConfig, m_max: int = defaults.DECISION_POOL) -> List[Tuple[int, float]]:
    """Expected loss for every m = 0..m_max"""
    _check_count("m_max", m_max, config.n)
    return [(m, bayes_expected_loss(m, prior, config)) for m in range(m_max + 1)]


def optimal_m_bayes(prior: BetaPrior, config: ProblemConfig, m_max: int = defaults.DECISION_POOL) -> Tuple[int, float]:
    """
    Test-group size minimising expected loss.

    Scans m = 0..m_max exhaustively; ties go to the smallest m.
    """
    best_m, best_loss = 0, math.inf
    for m, loss in bayes_loss_curve(prior, config, m_max):
        if loss < best_loss:
            best_m, best_loss = m, loss
    logger.debug(f"Bayes optimum for t={prior.t:.6g}, s={prior.s:.6g}: m*={best_m}, E(L)={best_loss:.6g}")
    return best_m, best_loss


# Realised loss distribution
def loss_distribution(m: int, prior: BetaPrior, config: ProblemConfig) -> Dict[float, float]:
    """
    Probability of each realised loss value for decision m.

    The support is c(m) + t(n) (terminated) and c(m) + a(d) (passed), the
    latter being c(m) itself for a healthy herd.
    """
    cost = test_cost(m, config)
    terminated = cost + termination_cost(config)
    pmf = _beta_binomial_vector(config.n, prior)
    masses = defaultdict(list)
    for d in range(config.n + 1):
        passing = prob_pass(m, d, config)
        masses[terminated].append(pmf[d] * (1.0 - passing))
        masses[cost + outbreak_cost(d, config)].append(pmf[d] * passing)
    return {atom: math.fsum(parts) for atom, parts in sorted(masses.items())}


def loss_atoms(m: int, config: ProblemConfig) -> List[float]:
    """Loss values at which the exceedance probability can jump"""
    cost = test_cost(m, config)
    atoms = {cost + termination_cost(config)}
    atoms.update(cost + outbreak_cost(d, config) for d in range(config.n + 1))
    return sorted(atoms)


def _exceedance(distribution: Dict[float, float], threshold: float) -> float:
    mass = math.fsum(prob for atom, prob in distribution.items() if atom >= threshold)
    return min(1.0, max(0.0, mass))


def loss_exceedance(m: int, prior: BetaPrior, critical_cost: float, config: ProblemConfig) -> float:
    """Pr(L >= L_c) for decision m under the prior predictive"""
    return _exceedance(loss_distribution(m, prior, config), critical_cost)


def exceedance_curve(m: int, prior: BetaPrior, thresholds: Sequence[float], config: ProblemConfig) -> ExceedanceCurve:
    """Pr(L >= L_c) on an ascending threshold list"""
    distribution = loss_distribution(m, prior, config)
    probabilities = [_exceedance(distribution, threshold) for threshold in thresholds]
    return ExceedanceCurve(m=m, thresholds=list(thresholds), probabilities=probabilities)


def sensitivity_grid(
    t_values: Sequence[float],
    s_values: Sequence[float],
    m: int,
    critical_cost: float,
    config: ProblemConfig,
) -> SensitivityGrid:
    """
    Exceedance probability over a grid of prior means t and strengths s.

    Rows are indexed by s and columns by t. A cell whose (t, s) pair does not
    define a Beta prior is left missing.
    """
    _check_count("m", m, config.n)
    distribution_rows = []
    for s in s_values:
        row = []
        for t in t_values:
            try:
                prior = prior_from_strength(t, s)
            except DomainError as e:
                logger.warning(f"Sensitivity cell s={s}, t={t} skipped: {e}")
                row.append(None)
                continue
            row.append(loss_exceedance(m, prior, critical_cost, config))
        distribution_rows.append(row)
    return SensitivityGrid(
        m=m,
        critical_cost=critical_cost,
        t_values=list(t_values),
        s_values=list(s_values),
        probabilities=distribution_rows,
    )
