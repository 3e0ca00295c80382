"""
Pydantic schemas for the domain types, run configuration and report records
"""

import math
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from . import config as defaults

# Decision labels: test-group sizes for the herd model, names for abstract examples
DecisionLabel = Union[int, str]


# Problem schemas
class ProblemConfig(BaseModel):
    """Fixed parameters of the herd inspection model"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(defaults.HERD_SIZE, ge=1)
    p: float = Field(defaults.SENSITIVITY, ge=0.0, le=1.0)
    q: float = Field(defaults.SPECIFICITY, ge=0.0, le=1.0)
    cost_coeffs: Tuple[float, float, float] = defaults.COST_COEFFS
    a: float = Field(defaults.OUTBREAK_COST, ge=0.0)
    t_per_animal: float = Field(defaults.TERMINATION_COST_PER_ANIMAL, ge=0.0)
    # explicit a(d) for d = 0..n; None means the step function 0 / a
    outbreak_schedule: Optional[Tuple[float, ...]] = None

    @model_validator(mode="after")
    def check_costs(self) -> "ProblemConfig":
        c0, c1, c2 = self.cost_coeffs
        for m in range(self.n + 1):
            if c0 + c1 * m + c2 * m * m < 0:
                raise ValueError(
                    f"testing cost c(m) = {c0} + {c1}m + {c2}m^2 is negative at m={m}"
                )
        if self.outbreak_schedule is not None:
            if len(self.outbreak_schedule) != self.n + 1:
                raise ValueError(
                    f"outbreak_schedule needs {self.n + 1} entries (d = 0..n), "
                    f"got {len(self.outbreak_schedule)}"
                )
            if any(cost < 0 for cost in self.outbreak_schedule):
                raise ValueError("outbreak_schedule entries must be non-negative")
        return self

    @property
    def termination_cost(self) -> float:
        """t(n): cost of destroying the whole herd"""
        return self.t_per_animal * self.n

    def scaled(self, factor: float) -> "ProblemConfig":
        """Same model with every cost multiplied by a positive factor"""
        if factor <= 0:
            raise ValueError(f"scale factor must be positive, got {factor}")
        schedule = None
        if self.outbreak_schedule is not None:
            schedule = tuple(factor * cost for cost in self.outbreak_schedule)
        return ProblemConfig(
            n=self.n,
            p=self.p,
            q=self.q,
            cost_coeffs=tuple(factor * c for c in self.cost_coeffs),
            a=factor * self.a,
            t_per_animal=factor * self.t_per_animal,
            outbreak_schedule=schedule,
        )


class LossBreakdown(BaseModel):
    """Expected loss of testing m animals when d are diseased"""

    model_config = ConfigDict(frozen=True)

    m: int
    d: int
    expected_loss: float
    prob_termination: float
    prob_pass: float


# Bayesian schemas
class BetaPrior(BaseModel):
    """Beta(alpha, beta) prior over the infection probability r"""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0.0)
    beta: float = Field(gt=0.0)

    @property
    def s(self) -> float:
        """Prior strength alpha + beta"""
        return self.alpha + self.beta

    @property
    def t(self) -> float:
        """Prior mean alpha / (alpha + beta)"""
        return self.alpha / self.s

    @property
    def sigma(self) -> float:
        """Prior standard deviation"""
        return math.sqrt(self.t * (1.0 - self.t) / (self.s + 1.0))


class ExceedanceCurve(BaseModel):
    """Pr(L >= L_c) on an ascending list of thresholds"""

    model_config = ConfigDict(frozen=True)

    m: int
    thresholds: List[float]
    probabilities: List[float]

    @model_validator(mode="after")
    def check_shape(self) -> "ExceedanceCurve":
        if len(self.thresholds) != len(self.probabilities):
            raise ValueError("thresholds and probabilities differ in length")
        if any(b < a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("thresholds must be ascending")
        if any(not 0.0 <= prob <= 1.0 for prob in self.probabilities):
            raise ValueError("probabilities must lie in [0, 1]")
        if any(b > a + 1e-12 for a, b in zip(self.probabilities, self.probabilities[1:])):
            raise ValueError("probabilities must be non-increasing in the threshold")
        return self


class SensitivityGrid(BaseModel):
    """Exceedance probabilities over a (s, t) grid; rows s, columns t"""

    model_config = ConfigDict(frozen=True)

    m: int
    critical_cost: float
    t_values: List[float]
    s_values: List[float]
    probabilities: List[List[Optional[float]]]


# Info-gap schemas
class WorstCaseLoss(BaseModel):
    """M(m, h): largest L(m|r) over r in [0, h]"""

    model_config = ConfigDict(frozen=True)

    m: int
    horizon: float
    value: float
    argmax_r: float
    # worst case found strictly inside (0, h) rather than at r = h
    interior_max: bool = False


class RobustnessResult(BaseModel):
    """Robustness h_hat(m, L_c) of one decision at one critical cost"""

    model_config = ConfigDict(frozen=True)

    m: int
    critical_cost: float
    status: Literal["feasible", "infeasible", "saturated"]
    h_hat: Optional[float] = None

    @model_validator(mode="after")
    def check_status(self) -> "RobustnessResult":
        if (self.status == "feasible") != (self.h_hat is not None):
            raise ValueError("h_hat is set exactly when the result is feasible")
        return self

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"

    @property
    def saturated(self) -> bool:
        return self.status == "saturated"

    @property
    def rank(self) -> float:
        """Ordering key: infeasible below everything, saturated above every finite h_hat"""
        if self.status == "infeasible":
            return -math.inf
        if self.status == "saturated":
            return math.inf
        return self.h_hat


class InfoGapSolution(BaseModel):
    """Robustness-maximising decision at one critical cost"""

    model_config = ConfigDict(frozen=True)

    critical_cost: float
    m_star: int
    h_hat: Optional[float]
    saturated: bool = False
    argmax: Tuple[int, ...]


# Imprecise probability schemas
class MaximalityTable(BaseModel):
    """Maximality scores, rows m and columns h, with the maximal set per column"""

    model_config = ConfigDict(frozen=True)

    h_values: List[float]
    m_values: List[int]
    scores: List[List[float]]
    maximal_sets: List[Tuple[int, ...]]

    @model_validator(mode="after")
    def check_sets(self) -> "MaximalityTable":
        for j, maximal in enumerate(self.maximal_sets):
            if not maximal:
                raise ValueError(f"empty maximal set at h={self.h_values[j]}")
            expected = tuple(
                m for i, m in enumerate(self.m_values) if self.scores[i][j] >= 0.0
            )
            if tuple(maximal) != expected:
                raise ValueError(f"maximal set at h={self.h_values[j]} disagrees with scores")
        return self

    def score(self, m: int, h: float) -> float:
        return self.scores[self.m_values.index(m)][self.h_values.index(h)]


# Theorem harness schemas
class DerivativeEstimate(BaseModel):
    step: float
    value: float


class RightDerivativeReport(BaseModel):
    """Finite-difference estimates of the right derivative of L*"""

    horizon: float
    floor: float
    estimates: List[DerivativeEstimate]
    positive: bool
    # every estimate on the same side of the floor
    consistent: bool
    trend: Literal["increasing", "decreasing", "flat", "mixed"]


class Theorem1Conditions(BaseModel):
    right_derivative_positive: bool
    lc_equals_lstar: bool
    hold: bool


class Theorem1Sets(BaseModel):
    infogap: List[DecisionLabel]
    gamma_minimax: List[DecisionLabel]


class Theorem1Diagnostics(BaseModel):
    lstar: float
    right_jump: float
    derivative: RightDerivativeReport


class Theorem1Verdict(BaseModel):
    """Info-gap solution versus Gamma-minimax solution at one horizon"""

    horizon: float
    critical_cost: float
    conditions: Theorem1Conditions
    sets: Theorem1Sets
    sets_equal: bool
    diagnostics: Theorem1Diagnostics


class Theorem2Conditions(BaseModel):
    hypothesis_holds: bool
    failed_horizons: List[float]


class Theorem2Sets(BaseModel):
    infogap_union: List[DecisionLabel]
    maximal: List[DecisionLabel]


class Theorem2Diagnostics(BaseModel):
    h_prime_grid: List[float]
    lstar_range: Tuple[float, float]


class Theorem2Verdict(BaseModel):
    """Union of info-gap solutions over [0, h] versus the maximal set at h"""

    horizon: float
    conditions: Theorem2Conditions
    sets: Theorem2Sets
    inclusion: bool
    equality: bool
    diagnostics: Theorem2Diagnostics


class ModelReport(BaseModel):
    theorem1: List[Theorem1Verdict] = []
    theorem2: List[Theorem2Verdict] = []


class TheoremReport(BaseModel):
    """Everything the bridge subcommand writes to theorem_report.json"""

    concrete: ModelReport
    counterexample_1: ModelReport
    counterexample_2: ModelReport


# Run configuration schemas
class GridSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    m_max: int = Field(defaults.DECISION_POOL, ge=0)
    h_max: float = Field(defaults.H_MAX, gt=0.0, le=1.0)
    r_grid_points: int = Field(defaults.INNER_GRID_POINTS, ge=2)
    reference_grid_points: int = Field(defaults.REFERENCE_GRID_POINTS, ge=2)
    bisection_tol: float = Field(defaults.BISECTION_TOL, gt=0.0)


class ExceedanceSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: int = Field(defaults.EXCEEDANCE_DECISION, ge=0)
    t: float = defaults.EXCEEDANCE_MEAN
    sigma: float = defaults.PRIOR_SIGMA
    # None: 0..limit in fixed steps plus the loss atoms of m
    thresholds: Optional[List[float]] = None


class SensitivitySettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: int = Field(defaults.EXCEEDANCE_DECISION, ge=0)
    critical_cost: float = defaults.SENSITIVITY_THRESHOLD
    t_values: List[float] = list(defaults.SENSITIVITY_MEANS)
    s_values: List[float] = list(defaults.SENSITIVITY_STRENGTHS)


class LossProfileSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m_values: List[int] = list(defaults.LOSS_PROFILE_DECISIONS)
    d_max: int = Field(defaults.LOSS_PROFILE_MAX_DISEASED, ge=0)


class BridgeSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    # None: same as maximality_horizons
    horizons: Optional[List[float]] = None
    h_prime_points: int = Field(defaults.H_PRIME_POINTS, ge=0)
    derivative_steps: List[float] = list(defaults.DERIVATIVE_STEPS)
    derivative_floor: float = defaults.DERIVATIVE_FLOOR


class RunConfig(BaseModel):
    """One JSON document driving every subcommand"""

    model_config = ConfigDict(extra="forbid")

    problem: ProblemConfig = ProblemConfig()
    bayes_priors: List[Tuple[float, float]] = [(t, defaults.PRIOR_SIGMA) for t in defaults.PRIOR_MEANS]
    infogap_costs: List[float] = list(defaults.CRITICAL_COSTS)
    # None: robustness of the info-gap solution at each of infogap_costs
    maximality_horizons: Optional[List[float]] = None
    grids: GridSettings = GridSettings()
    output_dir: Optional[Path] = None
    exceedance: ExceedanceSettings = ExceedanceSettings()
    sensitivity: SensitivitySettings = SensitivitySettings()
    curve_decisions: List[int] = list(defaults.CURVE_DECISIONS)
    curve_costs: List[float] = list(defaults.CURVE_COSTS)
    loss_profile: LossProfileSettings = LossProfileSettings()
    expected_loss_rates: List[float] = list(defaults.EXPECTED_LOSS_RATES)
    bridge: BridgeSettings = BridgeSettings()

    @field_validator("curve_costs", "infogap_costs")
    @classmethod
    def check_ascending(cls, values: List[float]) -> List[float]:
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("critical costs must be ascending")
        return values

    @model_validator(mode="after")
    def check_decisions(self) -> "RunConfig":
        n = self.problem.n
        if self.grids.m_max > n:
            raise ValueError(f"grids.m_max={self.grids.m_max} exceeds herd size n={n}")
        decisions = (
            self.curve_decisions
            + self.loss_profile.m_values
            + [self.exceedance.m, self.sensitivity.m]
        )
        for m in decisions:
            if not 0 <= m <= n:
                raise ValueError(f"decision m={m} outside 0..{n}")
        if self.loss_profile.d_max > n:
            raise ValueError(f"loss_profile.d_max exceeds herd size n={n}")
        return self

    @property
    def bridge_horizons(self) -> Optional[List[float]]:
        if self.bridge.horizons is None:
            return self.maximality_horizons
        return list(self.bridge.horizons)

    def summary(self) -> Dict[str, object]:
        """Compact view for the startup banner"""
        return {
            'herd': f"n={self.problem.n} p={self.problem.p} q={self.problem.q}",
            'priors': len(self.bayes_priors),
            'critical_costs': len(self.infogap_costs),
            'horizons': 'matched' if self.maximality_horizons is None else len(self.maximality_horizons),
            'm_max': self.grids.m_max,
        }
