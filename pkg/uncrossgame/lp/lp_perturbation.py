"""Local improvement of a nonoptimal laminar dual that stays laminar and close.

Starting from a laminar feasible λ that is not optimal, step a distance of at
most ε′ toward an optimal dual, then uncross the result with Red's strategy.
When every uncrossing moves weight only off the support of λ, the laminar
result λ* is within 2^N·ε′ of λ and has a larger objective.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from ..errors import InvalidConfig, NothingToImprove
from ..ground import GroundSet
from ..rational_utils import format_rational, to_rational
from ..uncross import DualSolution, UncrossRecord, objective, uncross_strategic
from .lp_instance import CutCoveringInstance, dual_feasible
from .lp_simplex import solve_dual_exact


__all__ = ['PerturbationConfig', 'StepCheck', 'PerturbationReport', 'linf_distance',
           'estimate_uncrossing_bound', 'perturbation_experiment']


logger = logging.getLogger(__name__)


def linf_distance(a: DualSolution, b: DualSolution) -> Fraction:
    weights = dict(a.items())
    for X, value in b.items():
        weights[X] = weights.get(X, Fraction(0)) - value
    return max((abs(value) for value in weights.values()), default=Fraction(0))


@dataclass(frozen=True)
class PerturbationConfig:
    epsilon: Fraction
    N: int
    epsilon_prime: Fraction
    measured_N: bool = False

    @classmethod
    def build(cls, lam: DualSolution, epsilon, N: int, measured_N: bool = False) -> 'PerturbationConfig':
        """ε′ = 2^-N · min(ε, smallest weight of λ)."""
        epsilon = to_rational(epsilon)
        smallest = min((value for _, value in lam.items()), default=epsilon)
        return cls(epsilon=epsilon, N=N, epsilon_prime=Fraction(1, 2 ** N) * min(epsilon, smallest),
                   measured_N=measured_N)

    def validate(self, lam: DualSolution):
        if self.epsilon <= 0 or self.N <= 0 or self.epsilon_prime <= 0:
            raise InvalidConfig(f'epsilon={self.epsilon}, N={self.N}, '
                                f'epsilon_prime={self.epsilon_prime}')
        smallest = min((value for _, value in lam.items()), default=self.epsilon)
        limit = Fraction(1, 2 ** self.N) * min(self.epsilon, smallest)
        if self.epsilon_prime > limit:
            raise InvalidConfig(f'epsilon_prime={self.epsilon_prime} > {limit}')


@dataclass(frozen=True)
class StepCheck:
    """Weights of λ^k around the k-th uncrossing, split by membership in F(λ)."""
    k: int
    alpha: Fraction
    alpha_off_laminar: bool
    min_on: Fraction
    max_off: Fraction
    lower: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return (self.alpha_off_laminar and self.alpha <= self.bound
                and self.min_on >= self.lower >= self.bound >= self.max_off)

    def to_dict(self) -> dict:
        return {key: format_rational(value) if isinstance(value, Fraction) else value
                for key, value in [('k', self.k), ('alpha', self.alpha),
                                   ('alpha_off_laminar', self.alpha_off_laminar),
                                   ('min_on', self.min_on), ('max_off', self.max_off),
                                   ('lower', self.lower), ('bound', self.bound),
                                   ('holds', self.holds)]}


@dataclass
class PerturbationReport:
    config: PerturbationConfig
    optimum: Fraction
    lam: DualSolution
    lam_prime: DualSolution
    lam_star: DualSolution
    objective_lam: Fraction
    objective_prime: Fraction
    objective_star: Fraction
    distance: Fraction
    steps: int
    laminar: bool
    feasible: bool
    checks: List[StepCheck] = field(default_factory=list)

    @property
    def within_N(self) -> bool:
        return self.steps <= self.config.N

    @property
    def passed(self) -> bool:
        return (self.laminar and self.feasible
                and self.objective_star >= self.objective_prime > self.objective_lam
                and self.distance <= self.config.epsilon
                and self.distance <= 2 ** self.config.N * self.config.epsilon_prime
                and all(check.holds for check in self.checks))

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            'epsilon': format_rational(cfg.epsilon),
            'N': cfg.N,
            'N_measured': cfg.measured_N,
            'epsilon_prime': format_rational(cfg.epsilon_prime),
            'optimum': format_rational(self.optimum),
            'objective': {'lambda': format_rational(self.objective_lam),
                          'lambda_prime': format_rational(self.objective_prime),
                          'lambda_star': format_rational(self.objective_star)},
            'distance': format_rational(self.distance),
            'steps': self.steps,
            'laminar': self.laminar,
            'feasible': self.feasible,
            'within_N': self.within_N,
            'passed': self.passed,
            'lambda_star': self.lam_star.to_records(),
            'checks': [check.to_dict() for check in self.checks],
        }


def _random_dual(ground: GroundSet, support_size: int, rng, max_weight: int) -> DualSolution:
    bipartitions = list(ground.bipartitions())
    size = min(support_size, len(bipartitions))
    chosen = rng.choice(len(bipartitions), size=size, replace=False)
    weights = rng.integers(1, max_weight + 1, size=size)
    return DualSolution({bipartitions[int(index)]: int(weight)
                         for index, weight in zip(chosen, weights)}, ground)


def estimate_uncrossing_bound(f, ground: GroundSet, support_size: int, trials: int = 20,
                              rng=None, max_weight: int = 1000, safety: int = 2) -> int:
    """Measured N: `safety` times the most strategic uncrossings seen on random
    duals with the given support size."""
    if rng is None:
        rng = np.random.default_rng(0)
    worst = 0
    for _ in range(trials):
        lam = _random_dual(ground, support_size, rng, max_weight)
        worst = max(worst, uncross_strategic(lam, f).steps)
    logger.debug('measured uncrossing bound %d over %d trials (|F|=%d)', worst, trials, support_size)
    return safety * max(worst, 1)


def _step_check(k: int, lam_k: DualSolution, record: UncrossRecord, laminar_support,
                base_min: Fraction, epsilon_prime: Fraction) -> StepCheck:
    weights = dict(lam_k.items())
    min_on = min((weights.get(X, Fraction(0)) for X in laminar_support), default=Fraction(0))
    max_off = max((value for X, value in weights.items() if X not in laminar_support),
                  default=Fraction(0))
    bound = 2 ** k * epsilon_prime
    x, y = weights[record.X.canon()], weights[record.Y.canon()]
    attained = [X for X, value in ((record.X.canon(), x), (record.Y.canon(), y))
                if value == record.alpha]
    return StepCheck(k=k, alpha=record.alpha,
                     alpha_off_laminar=any(X not in laminar_support for X in attained),
                     min_on=min_on, max_off=max_off, lower=base_min - bound, bound=bound)


def perturbation_experiment(inst: CutCoveringInstance, lam: DualSolution,
                            cfg: PerturbationConfig) -> PerturbationReport:
    """Moves λ by at most ε′ toward an optimum and uncrosses the result.

    Raises:
        InvalidConfig: λ is not laminar or not feasible, or ε′ is too large.
        NothingToImprove: λ is already optimal.
    """
    if not lam.is_laminar():
        raise InvalidConfig('lambda must be laminar')
    if not dual_feasible(inst, lam):
        raise InvalidConfig('lambda must be feasible')
    cfg.validate(lam)
    solution = solve_dual_exact(inst)
    base = objective(lam, inst.f)
    if base >= solution.value:
        raise NothingToImprove(f'objective {base} equals the optimum')

    distance = linf_distance(solution.dual, lam)
    t = min(Fraction(1), cfg.epsilon_prime / distance)
    deltas = {X: -t * value for X, value in lam.items()}
    for X, value in solution.dual.items():
        deltas[X] = deltas.get(X, Fraction(0)) + t * value
    lam_prime = lam.updated(deltas)

    laminar_support = frozenset(X for X, _ in lam.items())
    base_min = min((value for _, value in lam.items()), default=Fraction(0))
    checks: List[StepCheck] = []

    def check(before, after, record):
        k = len(checks)
        if k < cfg.N:
            checks.append(_step_check(k, before, record, laminar_support, base_min,
                                      cfg.epsilon_prime))

    result = uncross_strategic(lam_prime, inst.f, check=check)
    lam_star = result.dual
    report = PerturbationReport(
        config=cfg, optimum=solution.value, lam=lam, lam_prime=lam_prime, lam_star=lam_star,
        objective_lam=base, objective_prime=objective(lam_prime, inst.f),
        objective_star=objective(lam_star, inst.f), distance=linf_distance(lam, lam_star),
        steps=result.steps, laminar=lam_star.is_laminar(),
        feasible=bool(dual_feasible(inst, lam_star)), checks=checks)
    logger.info('perturbation: %d steps, distance %s, passed=%s', report.steps,
                format_rational(report.distance), report.passed)
    return report
