"""
Property-based checks of the probability kernels and monotonicity claims
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app import bayes, infogap, loss_core
from app.schemas import ProblemConfig

pytestmark = pytest.mark.property

PROBLEM = ProblemConfig()

means = st.floats(min_value=1e-4, max_value=0.5)
strengths = st.floats(min_value=1.0, max_value=1e4)
rates = st.floats(min_value=0.0, max_value=1.0)
accuracies = st.floats(min_value=0.5, max_value=1.0)


@settings(max_examples=50, deadline=None)
@given(t=means, s=strengths)
def test_beta_binomial_sums_to_one(t, s):
    prior = bayes.prior_from_strength(t, s)
    total = math.fsum(bayes.beta_binomial_pmf(d, prior, PROBLEM) for d in range(PROBLEM.n + 1))
    assert total == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_hypergeometric_sums_to_one(data):
    n = data.draw(st.integers(min_value=1, max_value=300))
    m = data.draw(st.integers(min_value=0, max_value=n))
    d = data.draw(st.integers(min_value=0, max_value=n))
    lowest = max(0, m + d - n)
    total = math.fsum(loss_core.hypergeometric_pmf(n, m, d, z) for z in range(lowest, min(m, d) + 1))
    assert total == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(r=rates)
def test_binomial_sums_to_one(r):
    total = math.fsum(loss_core.binomial_pmf(PROBLEM.n, d, r) for d in range(PROBLEM.n + 1))
    assert total == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(p=accuracies, q=accuracies, m=st.integers(min_value=1, max_value=30))
def test_pass_probability_falls_with_disease(p, q, m):
    config = ProblemConfig(n=60, p=p, q=q)
    passing = [loss_core.prob_pass(m, d, config) for d in range(config.n + 1)]
    assert all(b <= a + 1e-12 for a, b in zip(passing, passing[1:]))


@settings(max_examples=30, deadline=None)
@given(
    m=st.integers(min_value=0, max_value=30),
    low=st.floats(min_value=1e4, max_value=5e6),
    gap=st.floats(min_value=0.0, max_value=5e6),
)
def test_robustness_grows_with_critical_cost(m, low, gap):
    assert infogap.robustness(m, low, PROBLEM).rank <= infogap.robustness(m, low + gap, PROBLEM).rank


@settings(max_examples=30, deadline=None)
@given(
    t=st.floats(min_value=1e-4, max_value=0.01),
    s=st.floats(min_value=100.0, max_value=5000.0),
    m=st.integers(min_value=0, max_value=30),
    first=st.floats(min_value=0.0, max_value=2e7),
    second=st.floats(min_value=0.0, max_value=2e7),
)
def test_exceedance_non_increasing(t, s, m, first, second):
    prior = bayes.prior_from_strength(t, s)
    low, high = sorted((first, second))
    assert bayes.loss_exceedance(m, prior, high, PROBLEM) <= bayes.loss_exceedance(m, prior, low, PROBLEM) + 1e-12
