"""
Probability kernels and losses for the herd inspection model

A herd of n animals, m of them tested without replacement by a test with
sensitivity p and specificity q. Any positive result terminates the herd at
cost t(n); an undetected infection costs a(d). Every combinatorial term is the
exponential of a log-gamma difference, so n = 250 is handled in plain double
precision.
"""

import logging
import math
from functools import lru_cache
from typing import Iterable, List, Sequence

import numpy as np
from scipy.special import gammaln, xlog1py, xlogy

from .exceptions import DomainError
from .schemas import LossBreakdown, ProblemConfig

logger = logging.getLogger(__name__)


def _check_count(name: str, value: int, upper: int) -> None:
    if value < 0 or value > upper:
        raise DomainError(f"{name}={value} outside 0..{upper}")


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name}={value} is not a probability")


def log_binom(n, k):
    """
    log C(n, k) via log-gamma, elementwise.

    Returns -inf wherever k lies outside 0..n, so that exponentiating gives
    the conventional zero for impossible configurations.
    """
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    valid = (k >= 0) & (k <= n)
    with np.errstate(invalid="ignore", divide="ignore"):
        values = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
    return np.where(valid, values, -np.inf)


# Cost functions
def test_cost(m: int, config: ProblemConfig) -> float:
    """c(m) = c0 + c1 m + c2 m^2"""
    _check_count("m", m, config.n)
    c0, c1, c2 = config.cost_coeffs
    return c0 + c1 * m + c2 * m * m


def termination_cost(config: ProblemConfig) -> float:
    """t(n) = t_per_animal * n"""
    return config.termination_cost


def outbreak_cost(d: int, config: ProblemConfig) -> float:
    """a(d): 0 for a healthy herd, a otherwise, unless a schedule overrides it"""
    _check_count("d", d, config.n)
    if config.outbreak_schedule is not None:
        return config.outbreak_schedule[d]
    return 0.0 if d == 0 else config.a


def adjusted_outbreak_cost(d: int, config: ProblemConfig) -> float:
    """a'(n, d) = a(d) - t(n), the termination adjusted outbreak cost"""
    return outbreak_cost(d, config) - termination_cost(config)


def _outbreak_vector(config: ProblemConfig) -> np.ndarray:
    if config.outbreak_schedule is not None:
        return np.asarray(config.outbreak_schedule, dtype=float)
    costs = np.full(config.n + 1, config.a, dtype=float)
    costs[0] = 0.0
    return costs


# Sampling and detection
def hypergeometric_pmf(n: int, m: int, d: int, z: int) -> float:
    """
    Probability that a random sample of m out of n animals holds exactly z
    of the d diseased ones.

    Args:
        n: herd size
        m: sample size, at most n
        d: diseased animals in the herd, at most n
        z: diseased animals in the sample, at most min(m, d)

    Returns:
        float: C(d, z) C(n-d, m-z) / C(n, m), or 0 when m - z > n - d
    """
    if n < 1:
        raise DomainError(f"n={n} must be positive")
    _check_count("m", m, n)
    _check_count("d", d, n)
    _check_count("z", z, min(m, d))
    if m - z > n - d:
        return 0.0
    log_pmf = log_binom(d, z) + log_binom(n - d, m - z) - log_binom(n, m)
    return float(np.exp(log_pmf))


@lru_cache(maxsize=256)
def _pass_vector(n: int, m: int, p: float, q: float) -> np.ndarray:
    """Pr(pass | d) for d = 0..n"""
    d = np.arange(n + 1, dtype=float)[:, None]
    z = np.arange(m + 1, dtype=float)[None, :]
    log_sample = log_binom(d, z) + log_binom(n - d, m - z) - log_binom(n, m)
    sample = np.exp(log_sample)
    # xlogy keeps (1-p)^0 = 1 and q^0 = 1 at p = 1 or q = 0
    z_row = np.arange(m + 1, dtype=float)
    negatives = np.exp(xlogy(z_row, 1.0 - p) + xlogy(m - z_row, q))
    probabilities = np.clip(sample @ negatives, 0.0, 1.0)
    probabilities.setflags(write=False)
    return probabilities


def prob_pass(m: int, d: int, config: ProblemConfig) -> float:
    """
    Pr(herd passes | d): every sampled animal tests negative.

    Sums (1-p)^z q^(m-z) over the hypergeometric law of z. For d = 0 this
    is q^m.
    """
    _check_count("m", m, config.n)
    _check_count("d", d, config.n)
    return float(_pass_vector(config.n, m, config.p, config.q)[d])


def conditional_loss(m: int, d: int, config: ProblemConfig) -> LossBreakdown:
    """
    Expected loss of testing m animals when exactly d are diseased.

    L(m, d) = c(m) + t(n) + a'(n, d) Pr(pass | d)
    """
    passing = prob_pass(m, d, config)
    loss = test_cost(m, config) + termination_cost(config) + adjusted_outbreak_cost(d, config) * passing
    return LossBreakdown(
        m=m,
        d=d,
        expected_loss=loss,
        prob_termination=1.0 - passing,
        prob_pass=passing,
    )


def loss_profile(m: int, d_values: Iterable[int], config: ProblemConfig) -> List[LossBreakdown]:
    """Conditional loss of decision m for each number of diseased animals"""
    return [conditional_loss(m, d, config) for d in d_values]


@lru_cache(maxsize=1024)
def loss_vector(m: int, config: ProblemConfig) -> np.ndarray:
    """L(m, d) for d = 0..n as a read-only array"""
    _check_count("m", m, config.n)
    passing = _pass_vector(config.n, m, config.p, config.q)
    t = termination_cost(config)
    losses = test_cost(m, config) + t + (_outbreak_vector(config) - t) * passing
    losses.setflags(write=False)
    return losses


# Binomial infection model
@lru_cache(maxsize=32)
def _log_binom_row(n: int) -> np.ndarray:
    row = log_binom(n, np.arange(n + 1))
    row.setflags(write=False)
    return row


def binomial_pmf(n: int, d: int, r: float) -> float:
    """C(n, d) r^d (1-r)^(n-d), with 0^0 = 1 at r = 0 and r = 1"""
    _check_probability("r", r)
    _check_count("d", d, n)
    return float(np.exp(_log_binom_row(n)[d] + xlogy(d, r) + xlog1py(n - d, -r)))


def binomial_weights(n: int, r_values: Sequence[float]) -> np.ndarray:
    """Pr(d | r) with rows r and columns d = 0..n"""
    r = np.asarray(r_values, dtype=float)
    if r.size and (r.min() < 0.0 or r.max() > 1.0):
        raise DomainError(f"infection probabilities must lie in [0, 1], got {r.min()}..{r.max()}")
    d = np.arange(n + 1, dtype=float)
    log_weights = _log_binom_row(n)[None, :] + xlogy(d[None, :], r[:, None]) + xlog1py(n - d[None, :], -r[:, None])
    return np.exp(log_weights)


def expected_loss_given_r(m: int, r: float, config: ProblemConfig) -> float:
    """
    L(m|r): expected loss when each animal is infected independently with
    probability r.

    Terms span about ten orders of magnitude, so they are accumulated in
    ascending d with compensated summation.
    """
    _check_probability("r", r)
    losses = loss_vector(m, config)
    weights = binomial_weights(config.n, [r])[0]
    return math.fsum(weights * losses)


def expected_loss_grid(m: int, r_values: Sequence[float], config: ProblemConfig) -> np.ndarray:
    """L(m|r) for every r of a grid"""
    return binomial_weights(config.n, r_values) @ loss_vector(m, config)
