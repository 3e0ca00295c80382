"""
Shared fixtures for the herd testing test suite
"""

import os

# keep test runs from writing logs/herdtest.log into the working tree
os.environ.setdefault("HERDTEST_LOG_TO_FILE", "false")

import pytest

from app.infogap import infogap_optimal
from app.schemas import ProblemConfig
from tests.reference_tables import INFOGAP_OPTIMA


@pytest.fixture(scope="session")
def problem():
    """The default herd: n=250, p=0.9999, q=0.999"""
    return ProblemConfig()


@pytest.fixture(scope="session")
def matched_horizons(problem):
    """Unrounded robustness of the info-gap solution at each reference critical cost"""
    return [infogap_optimal(cost, problem).h_hat for cost, _, _ in INFOGAP_OPTIMA]


@pytest.fixture(scope="session")
def expected_maximal_sets():
    """{1..m*} for each reference critical cost"""
    return [frozenset(range(1, m_star + 1)) for _, m_star, _ in INFOGAP_OPTIMA]

