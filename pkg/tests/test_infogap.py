"""
Tests for worst-case loss, robustness and the info-gap decision
"""

import logging
import math

import numpy as np
import pytest

from app import infogap
from app.exceptions import DomainError, NoSolutionError
from app.loss_core import expected_loss_given_r
from tests.reference_tables import INFOGAP_OPTIMA


class TestWorstCaseLoss:
    def test_zero_horizon(self, problem):
        result = infogap.worst_case_loss(10, 0.0, problem)
        assert result.value == expected_loss_given_r(10, 0.0, problem)
        assert result.argmax_r == 0.0

    def test_reference_value(self, problem):
        assert infogap.worst_case_loss(10, 0.001479, problem).value == pytest.approx(3.0e6, rel=0.005)

    def test_endpoint_is_worst_case_at_small_horizons(self, problem):
        for m in range(31):
            for h in np.linspace(0.0, 0.0025, 11):
                result = infogap.worst_case_loss(m, float(h), problem)
                assert not result.interior_max
                assert result.value == pytest.approx(expected_loss_given_r(m, float(h), problem), rel=1e-12)

    def test_interior_worst_case_is_flagged(self, problem, caplog):
        with caplog.at_level(logging.WARNING):
            result = infogap.worst_case_loss(30, 0.03, problem)
        assert result.interior_max
        assert 0.0 < result.argmax_r < 0.03
        assert result.value > expected_loss_given_r(30, 0.03, problem)
        assert "interior" in caplog.text

    def test_non_decreasing_in_horizon(self, problem):
        values = [infogap.worst_case_value(30, float(h), problem) for h in np.linspace(0.0, 0.05, 101)]
        assert all(b >= a * (1 - 1e-9) for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("h", [-1e-6, 0.0500001, 0.2])
    def test_horizon_outside_domain(self, problem, h):
        with pytest.raises(DomainError):
            infogap.worst_case_loss(10, h, problem)


class TestRobustness:
    def test_reference_robustness(self, problem):
        assert infogap.robustness(10, 3.0e6, problem).h_hat == pytest.approx(1.479e-3, abs=1e-6)
        assert infogap.robustness(2, 0.5e6, problem).h_hat == pytest.approx(0.207e-3, abs=1e-6)

    def test_infeasible(self, problem):
        result = infogap.robustness(0, 500.0, problem)
        assert result.status == "infeasible"
        assert not result.feasible
        assert result.h_hat is None
        assert result.rank == -math.inf

    def test_saturated(self, problem):
        result = infogap.robustness(5, 1e9, problem)
        assert result.status == "saturated"
        assert result.feasible and result.saturated
        assert result.rank == math.inf

    def test_exact_boundary_is_feasible(self, problem):
        # L(1|0) = t(n)(1 - q) = 100 exactly at the critical cost
        result = infogap.robustness(1, expected_loss_given_r(1, 0.0, problem), problem)
        assert result.feasible
        assert result.h_hat == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("m,critical_cost", [(1, 1e6), (10, 3e6), (13, 4e6), (30, 2.5e6)])
    def test_round_trip(self, problem, m, critical_cost):
        result = infogap.robustness(m, critical_cost, problem, tol=1e-13)
        assert infogap.worst_case_value(m, result.h_hat, problem) == pytest.approx(critical_cost, rel=1e-6)

    def test_non_finite_cost(self, problem):
        with pytest.raises(DomainError):
            infogap.robustness(10, math.inf, problem)


class TestInfoGapDecision:
    @pytest.mark.parametrize("critical_cost,m_star,h_hat_e3", INFOGAP_OPTIMA)
    def test_reference_optima(self, problem, critical_cost, m_star, h_hat_e3):
        solution = infogap.infogap_optimal(critical_cost, problem)
        assert solution.m_star == m_star
        assert solution.argmax == (m_star,)
        assert solution.h_hat * 1e3 == pytest.approx(h_hat_e3, abs=0.002)

    def test_agrees_with_bayes_at_matched_scale(self, problem):
        assert infogap.infogap_optimal(3.0e6, problem).m_star == 10

    def test_all_infeasible(self, problem):
        with pytest.raises(NoSolutionError):
            infogap.infogap_optimal(50.0, problem)

    def test_saturated_decisions_rank_first(self, problem):
        solution = infogap.infogap_optimal(1e9, problem, m_max=3)
        assert solution.saturated
        assert solution.h_hat is None
        assert solution.argmax == (0, 1, 2, 3)
        assert solution.m_star == 0

    def test_matched_horizons(self, problem):
        horizons = infogap.matched_horizons([0.5e6, 3.0e6, 50.0], problem)
        assert len(horizons) == 2
        assert horizons[1] == pytest.approx(1.479e-3, abs=1e-6)


class TestRobustnessCurve:
    def test_non_decreasing(self, problem):
        costs = [k * 0.25e6 for k in range(1, 21)]
        for m in (1, 15, 30):
            ranks = [result.rank for result in infogap.robustness_curve(m, costs, problem)]
            assert all(b >= a for a, b in zip(ranks, ranks[1:]))

    def test_curves_cross(self, problem):
        low = {m: infogap.robustness(m, 1.0e6, problem).rank for m in (1, 15)}
        high = {m: infogap.robustness(m, 5.0e6, problem).rank for m in (1, 15)}
        assert low[15] < low[1]
        assert high[15] > high[1]

    def test_infeasible_points_are_marked(self, problem):
        results = infogap.robustness_curve(15, [0.1e6, 1.0e6], problem)
        assert [result.status for result in results] == ["infeasible", "feasible"]

    def test_passes_through_reference_point(self, problem):
        results = infogap.robustness_curve(10, [2.5e6, 3.0e6, 3.5e6], problem)
        assert results[1].h_hat == infogap.robustness(10, 3.0e6, problem).h_hat

    def test_rejects_bad_grids(self, problem):
        with pytest.raises(DomainError):
            infogap.robustness_curve(10, [], problem)
        with pytest.raises(DomainError):
            infogap.robustness_curve(10, [2e6, 1e6], problem)

    def test_grid_resolution_is_passed_through(self, problem):
        costs = [2.5e6, 3.0e6]
        results = infogap.robustness_curve(10, costs, problem, grid_points=401)
        for cost, result in zip(costs, results):
            assert result.h_hat == infogap.robustness(10, cost, problem, grid_points=401).h_hat
