"""
Harness for the relation between info-gap, Gamma-minimax and maximality.

Each decision d is represented by its upper-prevision curve
h -> P_h(L(d, .)), the upper expected loss over a nested family of credal
sets indexed by the horizon h. The state space, the states and the
uncertainty sets U_h stay implicit: a curve only exposes the upper expected
loss they induce. Maximality needs upper previsions of loss differences,
which per-decision curves cannot express, so it goes through a separate
DifferencePrevisionOracle.

L*(h) = min_d P_h(L(d, .)) is the Gamma-minimax loss. When L*(h) = L_c and
L* has positive right derivative at h, the info-gap solution at L_c and the
Gamma-minimax solution at h coincide; every info-gap solution at L*(h') for
h' <= h is maximal at h.
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import config as defaults
from .exceptions import CurveValidationError, DomainError, NoSolutionError
from .imprecise import upper_difference
from .infogap import TIE_TOLERANCE, robustness, worst_case_value
from .schemas import (
    DecisionLabel,
    DerivativeEstimate,
    ProblemConfig,
    RightDerivativeReport,
    Theorem1Conditions,
    Theorem1Diagnostics,
    Theorem1Sets,
    Theorem1Verdict,
    Theorem2Conditions,
    Theorem2Diagnostics,
    Theorem2Sets,
    Theorem2Verdict,
)

logger = logging.getLogger(__name__)

MAXIMALITY_TOLERANCE = 1e-6
# smallest h' interval, as a fraction of h, the switch locator splits
LOCATOR_RESOLUTION = 1.0 / 2048


# Curves
class PrevisionCurve(ABC):
    """
    Upper expected loss of one decision as a function of the horizon.

    Subclasses must be non-decreasing in h; this is checked on construction
    by sampling the curve.
    """

    # relative slack when comparing curve values, 0 for exact curves
    value_tolerance: float = 0.0
    # absolute slack when comparing robustness values
    horizon_tolerance: float = 0.0

    def __init__(self, decision_id: DecisionLabel, domain_max: float = math.inf):
        self.decision_id = decision_id
        self.domain_max = domain_max

    @abstractmethod
    def evaluate(self, h: float) -> float:
        """Upper expected loss at horizon h"""

    @abstractmethod
    def horizon(self, critical_cost: float) -> Optional[float]:
        """
        Robustness max{h : evaluate(h) <= L_c}.

        Returns None when the curve exceeds L_c already at h = 0 and
        math.inf when it never does.
        """

    def _check_domain(self, h: float) -> None:
        if h < 0.0 or h > self.domain_max:
            raise DomainError(f"horizon h={h} outside the domain [0, {self.domain_max}] of curve {self.decision_id}")

    def validate(self, sample_points: Sequence[float]) -> None:
        """Raise CurveValidationError if the sampled curve ever decreases"""
        values = [self.evaluate(h) for h in sample_points]
        for (h0, v0), (h1, v1) in zip(zip(sample_points, values), zip(sample_points[1:], values[1:])):
            if v1 < v0 - self.value_tolerance * abs(v0):
                raise CurveValidationError(
                    f"curve {self.decision_id} decreases from {v0} at h={h0} to {v1} at h={h1}"
                )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.decision_id!r})"


class PiecewiseLinearCurve(PrevisionCurve):
    """
    Curve made of linear pieces (upper, intercept, slope).

    Piece k covers (upper_{k-1}, upper_k] with value intercept + slope * h;
    the first piece also covers h = 0. Each piece holds its right endpoint,
    so jumps happen just after a breakpoint.
    """

    def __init__(self, decision_id: DecisionLabel, segments: Sequence[Tuple[float, float, float]]):
        if not segments:
            raise CurveValidationError(f"curve {decision_id} has no pieces")
        uppers = [upper for upper, _, _ in segments]
        if uppers[0] < 0 or any(b <= a for a, b in zip(uppers, uppers[1:])):
            raise CurveValidationError(f"curve {decision_id} breakpoints must be positive and increasing")
        super().__init__(decision_id, domain_max=uppers[-1])
        self.segments = tuple((float(u), float(b), float(s)) for u, b, s in segments)
        self._check_shape()

    def _check_shape(self) -> None:
        lower = 0.0
        previous_end = None
        for upper, intercept, slope in self.segments:
            if slope < 0:
                raise CurveValidationError(f"curve {self.decision_id} has a decreasing piece on ({lower}, {upper}]")
            start = intercept + slope * lower
            if previous_end is not None and start < previous_end:
                raise CurveValidationError(
                    f"curve {self.decision_id} drops from {previous_end} to {start} after h={lower}"
                )
            previous_end = intercept + slope * upper if math.isfinite(upper) else None
            lower = upper
        finite = [u for u, _, _ in self.segments if math.isfinite(u)]
        span = 2.0 * finite[-1] if finite else 1.0
        self.validate(list(np.linspace(0.0, min(span, self.domain_max), 101)))

    def evaluate(self, h: float) -> float:
        self._check_domain(h)
        for upper, intercept, slope in self.segments:
            if h <= upper:
                return intercept + slope * h
        raise DomainError(f"horizon h={h} beyond curve {self.decision_id}")

    def horizon(self, critical_cost: float) -> Optional[float]:
        if self.evaluate(0.0) > critical_cost:
            return None
        lower = 0.0
        for upper, intercept, slope in self.segments:
            if intercept + slope * lower > critical_cost:
                return lower
            if slope > 0:
                crossing = (critical_cost - intercept) / slope
                if crossing < upper:
                    return crossing
            lower = upper
        return lower


class ModelCurve(PrevisionCurve):
    """Worst-case expected loss M(m, h) of the herd model as a curve"""

    value_tolerance = 1e-9

    def __init__(
        self,
        m: int,
        config: ProblemConfig,
        *,
        h_max: float = defaults.H_MAX,
        tol: float = defaults.BISECTION_TOL,
        grid_points: int = defaults.REFERENCE_GRID_POINTS,
        validation_points: int = 33,
    ):
        super().__init__(m, domain_max=h_max)
        self.config = config
        self.tol = tol
        self.grid_points = grid_points
        self.horizon_tolerance = max(2.0 * tol, TIE_TOLERANCE)
        self.validate(list(np.linspace(0.0, h_max, validation_points)))

    def evaluate(self, h: float) -> float:
        self._check_domain(h)
        return worst_case_value(
            self.decision_id, h, self.config, h_max=self.domain_max, grid_points=self.grid_points
        )

    def horizon(self, critical_cost: float) -> Optional[float]:
        result = robustness(
            self.decision_id,
            critical_cost,
            self.config,
            h_max=self.domain_max,
            tol=self.tol,
            grid_points=self.grid_points,
        )
        if not result.feasible:
            return None
        if result.saturated:
            return math.inf
        return result.h_hat


def model_curves(config: ProblemConfig, m_max: int = defaults.DECISION_POOL, **kwargs) -> List[ModelCurve]:
    """One curve per decision m = 0..m_max"""
    return [ModelCurve(m, config, **kwargs) for m in range(m_max + 1)]


class DifferencePrevisionOracle:
    """Upper prevision P_h(L(d', .) - L(d, .)) of a loss difference"""

    def __init__(self, upper_difference_fn: Callable[[DecisionLabel, DecisionLabel, float], float]):
        self._fn = upper_difference_fn

    def evaluate(self, d: DecisionLabel, d_prime: DecisionLabel, h: float) -> float:
        if d == d_prime:
            return 0.0
        return self._fn(d, d_prime, h)

    __call__ = evaluate


def model_difference_oracle(config: ProblemConfig, **kwargs) -> DifferencePrevisionOracle:
    return DifferencePrevisionOracle(lambda m, m_prime, h: upper_difference(m, m_prime, h, config, **kwargs))


def make_counterexample(which: int) -> List[PiecewiseLinearCurve]:
    """
    Two-decision curve families on which info-gap and Gamma-minimax differ.

    1: d1 = h then 3 + h after h = 1; d2 = 1 + h then 4 + h after h = 1.
       L* jumps at h = 1, so L_c = 3 is never attained.
    2: d1 = 0 then h - 1 after h = 1; d2 = 0 then h - 2 after h = 2.
       L* is continuous but flat on [1, 2].
    """
    if which == 1:
        return [
            PiecewiseLinearCurve("d1", [(1.0, 0.0, 1.0), (math.inf, 3.0, 1.0)]),
            PiecewiseLinearCurve("d2", [(1.0, 1.0, 1.0), (math.inf, 4.0, 1.0)]),
        ]
    if which == 2:
        return [
            PiecewiseLinearCurve("d1", [(1.0, 0.0, 0.0), (math.inf, -1.0, 1.0)]),
            PiecewiseLinearCurve("d2", [(2.0, 0.0, 0.0), (math.inf, -2.0, 1.0)]),
        ]
    raise DomainError(f"no counterexample {which}; choose 1 or 2")


# L* and its solution sets
def _require_curves(curves: Sequence[PrevisionCurve]) -> None:
    if not curves:
        raise DomainError("need at least one curve")


def lstar(curves: Sequence[PrevisionCurve], h: float) -> float:
    """Gamma-minimax loss L*(h) = min over decisions of the curve value"""
    _require_curves(curves)
    return min(curve.evaluate(h) for curve in curves)


def lstar_range(curves: Sequence[PrevisionCurve], h: float) -> Tuple[float, float]:
    """(L*(0), L*(h)); the range of L* over [0, h] when L* is continuous"""
    return lstar(curves, 0.0), lstar(curves, h)


def _value_slack(curves: Sequence[PrevisionCurve], value: float) -> float:
    return max(curve.value_tolerance for curve in curves) * abs(value)


def gamma_minimax_set(curves: Sequence[PrevisionCurve], h: float) -> List[DecisionLabel]:
    """Decisions attaining L*(h), in curve order"""
    _require_curves(curves)
    values = [curve.evaluate(h) for curve in curves]
    best = min(values)
    slack = _value_slack(curves, best)
    return [curve.decision_id for curve, value in zip(curves, values) if value - best <= slack]


def infogap_solution_abstract(curves: Sequence[PrevisionCurve], critical_cost: float) -> List[DecisionLabel]:
    """
    Decisions with the largest robustness at L_c, in curve order.

    Raises:
        NoSolutionError: every curve exceeds L_c at h = 0
    """
    _require_curves(curves)
    horizons = [curve.horizon(critical_cost) for curve in curves]
    feasible = [h for h in horizons if h is not None]
    if not feasible:
        raise NoSolutionError(f"every decision is infeasible at L_c={critical_cost}")
    best = max(feasible)
    slack = max(curve.horizon_tolerance for curve in curves)
    return [
        curve.decision_id
        for curve, h in zip(curves, horizons)
        if h is not None and (h == best or best - h <= slack)
    ]


def _trend(values: Sequence[float]) -> str:
    steps = [b - a for a, b in zip(values, values[1:])]
    if all(step == 0 for step in steps):
        return "flat"
    if all(step >= 0 for step in steps):
        return "increasing"
    if all(step <= 0 for step in steps):
        return "decreasing"
    return "mixed"


def right_derivative_positive(
    curves: Sequence[PrevisionCurve],
    h: float,
    derivative_steps: Sequence[float] = defaults.DERIVATIVE_STEPS,
    floor: float = defaults.DERIVATIVE_FLOOR,
) -> RightDerivativeReport:
    """
    Finite-difference estimates (L*(h + delta) - L*(h)) / delta of the right
    derivative of L* at h.

    The derivative counts as positive when every estimate exceeds the floor.
    The trend records how the estimates move as delta shrinks.

    Raises:
        DomainError: h + delta leaves the domain of some curve
    """
    _require_curves(curves)
    if not derivative_steps or any(step <= 0 for step in derivative_steps):
        raise DomainError(f"derivative steps must be positive, got {list(derivative_steps)}")
    domain_max = min(curve.domain_max for curve in curves)
    reach = h + max(derivative_steps)
    if reach > domain_max:
        raise DomainError(f"h + delta = {reach} exceeds the curve domain {domain_max}")

    base = lstar(curves, h)
    estimates = [
        DerivativeEstimate(step=step, value=(lstar(curves, h + step) - base) / step)
        for step in derivative_steps
    ]
    above = [estimate.value > floor for estimate in estimates]
    return RightDerivativeReport(
        horizon=h,
        floor=floor,
        estimates=estimates,
        positive=all(above),
        consistent=all(above) or not any(above),
        trend=_trend([estimate.value for estimate in estimates]),
    )


# Theorem checks
def theorem1_check(
    curves: Sequence[PrevisionCurve],
    h: float,
    critical_cost: Optional[float] = None,
    *,
    derivative_steps: Sequence[float] = defaults.DERIVATIVE_STEPS,
    floor: float = defaults.DERIVATIVE_FLOOR,
) -> Theorem1Verdict:
    """
    Compare the info-gap solution at L_c with the Gamma-minimax solution at h.

    Args:
        curves: one prevision curve per decision
        h: horizon of the Gamma-minimax problem
        critical_cost: satisficing level; defaults to L*(h)
        derivative_steps: finite-difference steps for the right derivative
        floor: derivative estimates must exceed this to count as positive

    Returns:
        Theorem1Verdict: both conditions, both solution sets and whether they
        agree. When both conditions hold the sets must agree.
    """
    loss_star = lstar(curves, h)
    lc = loss_star if critical_cost is None else critical_cost
    lc_matches = abs(lc - loss_star) <= _value_slack(curves, loss_star)
    derivative = right_derivative_positive(curves, h, derivative_steps, floor)

    try:
        infogap = infogap_solution_abstract(curves, lc)
    except NoSolutionError:
        infogap = []
    minimax = gamma_minimax_set(curves, h)
    sets_equal = set(infogap) == set(minimax)
    hold = derivative.positive and lc_matches

    if hold and not sets_equal:
        logger.error(f"❌ Conditions hold at h={h} but info-gap {infogap} differs from Gamma-minimax {minimax}")
    elif not hold:
        logger.info(
            f"Conditions fail at h={h} (L*(h)={loss_star}, L_c={lc}, "
            f"derivative positive={derivative.positive}): info-gap {infogap}, Gamma-minimax {minimax}"
        )

    right_jump = lstar(curves, h + min(derivative_steps)) - loss_star
    return Theorem1Verdict(
        horizon=h,
        critical_cost=lc,
        conditions=Theorem1Conditions(
            right_derivative_positive=derivative.positive,
            lc_equals_lstar=lc_matches,
            hold=hold,
        ),
        sets=Theorem1Sets(infogap=infogap, gamma_minimax=minimax),
        sets_equal=sets_equal,
        diagnostics=Theorem1Diagnostics(lstar=loss_star, right_jump=right_jump, derivative=derivative),
    )


def _locate_switches(curves: Sequence[PrevisionCurve], h: float, grid: Sequence[float]) -> List[float]:
    """
    Add horizons where the Gamma-minimax set changes between grid points.

    Each interval whose endpoints disagree is split until the pieces agree or
    become narrower than h * LOCATOR_RESOLUTION, and every midpoint visited
    joins the grid.
    """
    min_width = h * LOCATOR_RESOLUTION
    found = set(grid)
    sets = {point: tuple(gamma_minimax_set(curves, point)) for point in grid}

    def split(lower: float, upper: float) -> None:
        if sets[lower] == sets[upper] or upper - lower <= min_width:
            return
        middle = 0.5 * (lower + upper)
        sets[middle] = tuple(gamma_minimax_set(curves, middle))
        found.add(middle)
        split(lower, middle)
        split(middle, upper)

    for lower, upper in zip(grid, grid[1:]):
        split(lower, upper)
    return sorted(found)


def theorem2_check(
    curves: Sequence[PrevisionCurve],
    oracle: DifferencePrevisionOracle,
    h: float,
    h_prime_grid: Optional[Sequence[float]] = None,
    *,
    h_prime_points: int = defaults.H_PRIME_POINTS,
    locate_switches: bool = True,
    derivative_steps: Sequence[float] = defaults.DERIVATIVE_STEPS,
    floor: float = defaults.DERIVATIVE_FLOOR,
    tolerance: float = MAXIMALITY_TOLERANCE,
) -> Theorem2Verdict:
    """
    Check that info-gap solutions at L*(h') for h' in [0, h] are maximal at h.

    Args:
        curves: one prevision curve per decision
        oracle: upper previsions of loss differences
        h: horizon at which maximality is judged
        h_prime_grid: horizons h' to test; defaults to h_prime_points
            uniform interior points plus both endpoints
        h_prime_points: interior points of the default grid
        locate_switches: refine the grid where the Gamma-minimax set changes
        derivative_steps: finite-difference steps for the right derivative
        floor: derivative estimates must exceed this to count as positive
        tolerance: d is maximal when oracle(d, d', h) >= -tolerance for all d'

    Returns:
        Theorem2Verdict: the union of info-gap solutions, the maximal set,
        whether the union is included in it and whether they are equal.
        Horizons where the derivative hypothesis fails are listed and left
        out of the union.
    """
    _require_curves(curves)
    if h_prime_grid is None:
        grid = [float(x) for x in np.linspace(0.0, h, h_prime_points + 2)]
    else:
        grid = sorted(float(x) for x in h_prime_grid)
        if any(x < 0.0 or x > h for x in grid):
            raise DomainError(f"every h' must lie in [0, {h}]")
    if locate_switches and h > 0.0 and len(grid) > 1:
        grid = _locate_switches(curves, h, grid)

    union = set()
    failed = []
    for h_prime in grid:
        report = right_derivative_positive(curves, h_prime, derivative_steps, floor)
        if not report.positive:
            logger.warning(f"⚠️ Right derivative of L* not positive at h'={h_prime:.6g}; skipped")
            failed.append(h_prime)
            continue
        try:
            union.update(infogap_solution_abstract(curves, lstar(curves, h_prime)))
        except NoSolutionError:
            failed.append(h_prime)

    labels = [curve.decision_id for curve in curves]
    maximal = [
        d for d in labels
        if all(oracle(d, other, h) >= -tolerance for other in labels)
    ]
    union_ordered = [d for d in labels if d in union]
    inclusion = union.issubset(maximal)
    if not inclusion:
        logger.error(f"❌ Info-gap solutions {union_ordered} not all maximal at h={h}: {maximal}")

    return Theorem2Verdict(
        horizon=h,
        conditions=Theorem2Conditions(hypothesis_holds=not failed, failed_horizons=failed),
        sets=Theorem2Sets(infogap_union=union_ordered, maximal=maximal),
        inclusion=inclusion,
        equality=union == set(maximal),
        diagnostics=Theorem2Diagnostics(h_prime_grid=grid, lstar_range=lstar_range(curves, h)),
    )
