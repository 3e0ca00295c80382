"""Independent reference computations: closed forms and seeded simulation"""

import numpy as np

MONTE_CARLO_SAMPLES = 1_000_000


def closed_form_loss(m, r, problem):
    """L(m|r) for the step outbreak cost, summed over d analytically"""
    c0, c1, c2 = problem.cost_coeffs
    cost = c0 + c1 * m + c2 * m * m
    t = problem.termination_cost
    negative = r * (1.0 - problem.p) + (1.0 - r) * problem.q
    healthy_pass = problem.q ** m * (1.0 - r) ** problem.n
    return cost + t - t * negative ** m + problem.a * (negative ** m - healthy_pass)


def simulate_losses(m, diseased, problem, rng):
    """Realised loss of testing m animals in herds with the given diseased counts"""
    n = problem.n
    sampled = rng.hypergeometric(diseased, n - diseased, m)
    diseased_all_negative = rng.binomial(sampled, problem.p) == 0
    no_false_positives = rng.binomial(m - sampled, 1.0 - problem.q) == 0
    passed = diseased_all_negative & no_false_positives
    c0, c1, c2 = problem.cost_coeffs
    cost = c0 + c1 * m + c2 * m * m
    outbreak = np.where(diseased > 0, problem.a, 0.0)
    return cost + np.where(passed, outbreak, problem.termination_cost)
