"""Uncrossing a dual solution until its support is laminar.

`uncross_naive` always takes the first crossing pair and is bounded only by
the weighted potential. `uncross_strategic` lets Red's winning strategy pick
the pairs while the weights decide what Blue returns, so the number of steps
depends on |V| and the support size but not on the weights.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple

from ..errors import (InternalError, NonIntegerWeights, NoValidPair, NotSkewSupermodular,
                      StrategyError)
from ..functions import Violation, corner_sums
from ..game import GameState, RedMove, step, valid_pair_choices
from ..ground import Family, crossing_pairs, remove_trivial
from ..rational_utils import is_integral, lcm_of_denominators
from ..redstrategy import paper_red_strategy
from .uncross_dual import DualSolution, weighted_potential
from .uncross_step import UncrossRecord, blue_from_lambda, uncross_step


__all__ = ['ALPHA_RULES', 'UncrossResult', 'uncross_naive', 'uncross_strategic']


logger = logging.getLogger(__name__)

ALPHA_RULES = ('min', 'unit')


@dataclass(frozen=True)
class UncrossResult:
    dual: DualSolution
    records: Tuple[UncrossRecord, ...]
    supports: Tuple[Family, ...]

    @property
    def steps(self) -> int:
        return len(self.records)

    def support_trace(self):
        return tuple(support.key() for support in self.supports)


def _violation(f, X, Y) -> Violation:
    meet, diff = corner_sums(f, X, Y)
    return Violation(X=X, Y=Y, lhs=f(X) + f(Y), rhs=max(meet, diff))


def _naive_step(lam: DualSolution, X, Y, f, alpha=None) -> Tuple[DualSolution, UncrossRecord]:
    try:
        choices = valid_pair_choices(f, X, Y)
    except NoValidPair:
        raise NotSkewSupermodular(_violation(f, X, Y))
    best = None
    for choice in choices:
        after, record = uncross_step(lam, X, Y, choice, f, alpha=alpha)
        potential = weighted_potential(after)
        if best is None or potential < best[0]:
            best = (potential, after, record)
    return best[1], best[2]


def uncross_naive(lam: DualSolution, f, alpha_rule: str = 'min', prescale: bool = False,
                  max_steps: Optional[int] = None) -> UncrossResult:
    """Uncrosses the first crossing pair of the support until it is laminar.

    When both corner pairs are valid the one giving the smaller weighted
    potential is used, meet/join on ties. With alpha_rule='unit' one unit of
    weight moves per step. Weights must be integers unless `prescale` is set,
    in which case they are multiplied by the lcm of their denominators for the
    run and divided back at the end.

    Raises:
        NonIntegerWeights: fractional weights without `prescale`.
        NotSkewSupermodular: some crossing pair has no valid corner pair.
    """
    assert alpha_rule in ALPHA_RULES, f'unknown alpha rule {alpha_rule!r}'
    scale = 1
    if not all(is_integral(value) for _, value in lam.items()):
        if not prescale:
            raise NonIntegerWeights(repr(lam))
        scale = lcm_of_denominators(value for _, value in lam.items())
        lam = lam.scaled(scale)
    if max_steps is None:
        max_steps = int(weighted_potential(lam)) + 1

    records, supports = [], [lam.support()]
    while True:
        support = supports[-1]
        pair = next(crossing_pairs(support), None)
        if pair is None:
            break
        if len(records) >= max_steps:
            raise InternalError(f'naive uncrossing exceeded {max_steps} steps')
        X, Y = support[pair[0]], support[pair[1]]
        alpha = Fraction(1) if alpha_rule == 'unit' else None
        lam, record = _naive_step(lam, X, Y, f, alpha=alpha)
        records.append(record)
        supports.append(lam.support())
    logger.debug('naive uncrossing: %d steps', len(records))
    if scale != 1:
        lam = lam.scaled(Fraction(1, scale))
    return UncrossResult(dual=lam, records=tuple(records), supports=tuple(supports))


def uncross_strategic(lam: DualSolution, f, cap: Optional[int] = None,
                      check=None) -> UncrossResult:
    """Uncrossing driven by Red's winning strategy.

    The game family is the non-trivial part of the support; Blue "returns"
    whichever of X, Y keeps positive weight. After every step the family the
    game would produce is compared with the new support.

    `check(before, after, record)` is called after each step when given.

    Raises:
        StrategyError: the strategy aborted or the family and support diverged.
    """
    ground = lam.ground
    if cap is None:
        cap = 8 * ground.size ** 3 * max(len(lam), 1) + 8
    red = paper_red_strategy(f)
    records, supports = [], [lam.support()]
    state = GameState(family=remove_trivial(lam.support()), ground=ground)
    while not state.is_laminar():
        if state.iteration >= cap:
            raise StrategyError(f'support still crossing after {cap} steps', trace=state.trace)
        move: RedMove = red.next_move(state)
        choice = blue_from_lambda(lam, move.X, move.Y)
        before = lam
        lam, record = uncross_step(lam, move.X, move.Y, move.pair_choice, f)
        if check is not None:
            check(before, lam, record)
        expected = step(state, f, move, choice, allow_none=True)
        family = remove_trivial(lam.support())
        if set(expected.family) != set(family):
            raise StrategyError(f'game family {expected.family!r} differs from support '
                                f'{family!r}', trace=expected.trace)
        red.observe(move, choice)
        state = replace(expected, family=family)
        records.append(record)
        supports.append(lam.support())
    logger.debug('strategic uncrossing: %d steps, subgames %s', len(records), red.subgame_log)
    return UncrossResult(dual=lam, records=tuple(records), supports=tuple(supports))
