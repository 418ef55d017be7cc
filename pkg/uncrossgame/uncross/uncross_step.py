import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..errors import InvalidMove, NotCrossing
from ..game import PAIR_CHOICES, BlueChoice
from ..ground import Bipartition, corner_pairs, is_crossing
from ..rational_utils import format_rational
from .uncross_dual import DualSolution


__all__ = ['UncrossRecord', 'uncross_step', 'blue_from_lambda']


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UncrossRecord:
    X: Bipartition
    Y: Bipartition
    pair_choice: str
    alpha: Fraction
    blue_equivalent: BlueChoice

    def to_dict(self) -> dict:
        return {
            'X': sorted(self.X.representative),
            'Y': sorted(self.Y.representative),
            'pair_choice': self.pair_choice,
            'alpha': format_rational(self.alpha),
            'returned': self.blue_equivalent.value,
        }


def blue_from_lambda(lam_before: DualSolution, X: Bipartition, Y: Bipartition) -> BlueChoice:
    """The member keeping positive weight after shifting min(λ(X), λ(Y)); none on a tie."""
    x, y = lam_before.require(X), lam_before.require(Y)
    if x > y:
        return BlueChoice.X
    elif y > x:
        return BlueChoice.Y
    return BlueChoice.NONE


def uncross_step(lam: DualSolution, X: Bipartition, Y: Bipartition, pair_choice: str, f,
                 alpha: Optional[Fraction] = None) -> Tuple[DualSolution, UncrossRecord]:
    """Moves weight α from X and Y onto the chosen corner pair.

    α defaults to min(λ(X), λ(Y)); a smaller positive α may be given (the
    unit-shift procedure uses α = 1). Corner pairs are taken on the given
    sides of X and Y.

    Raises:
        NotInSupport: X or Y has zero weight.
        NotCrossing: X and Y do not cross.
        InvalidMove: f(X) + f(Y) exceeds the chosen corner pair's sum.
    """
    if pair_choice not in PAIR_CHOICES:
        raise InvalidMove(f'unknown pair choice {pair_choice!r}')
    x, y = lam.require(X), lam.require(Y)
    if not is_crossing(X, Y):
        raise NotCrossing(f'{X!r}, {Y!r}')
    first, second = corner_pairs(X, Y).get(pair_choice)
    lhs = f(X) + f(Y)
    rhs = f(first) + f(second)
    if lhs > rhs:
        raise InvalidMove(f'{pair_choice}: f(X)+f(Y)={lhs} > {rhs}')
    full_alpha = min(x, y)
    if alpha is None:
        alpha = full_alpha
    assert 0 < alpha <= full_alpha, f'alpha {alpha} outside (0, {full_alpha}]'

    deltas = {X.canon(): -alpha}
    deltas[Y.canon()] = deltas.get(Y.canon(), Fraction(0)) - alpha
    for member in (first, second):
        deltas[member] = deltas.get(member, Fraction(0)) + alpha
    after = lam.updated(deltas)
    record = UncrossRecord(X=X, Y=Y, pair_choice=pair_choice, alpha=alpha,
                           blue_equivalent=blue_from_lambda(lam, X, Y))
    logger.debug('uncross %s %s by %s via %s', list(X.key()), list(Y.key()),
                 format_rational(alpha), pair_choice)
    return after, record
