from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import TooLarge
from ..ground import Bipartition, GroundSet, corner_pairs, is_crossing


__all__ = ['MAX_VERIFY_GROUND', 'Violation', 'verify_skew_supermodular',
           'corner_sums']


MAX_VERIFY_GROUND = 16


@dataclass(frozen=True)
class Violation:
    """A crossing pair with f(X) + f(Y) above both corner-pair sums."""
    X: Bipartition
    Y: Bipartition
    lhs: Fraction
    rhs: Fraction

    def __str__(self):
        return (f'X={list(self.X.key())} Y={list(self.Y.key())} '
                f'lhs={self.lhs} rhs={self.rhs}')


def corner_sums(f, X: Bipartition, Y: Bipartition):
    """(f(X∩Y) + f(X∪Y), f(X\\Y) + f(Y\\X)) on the given sides."""
    pairs = corner_pairs(X, Y)
    return (f(pairs.meet_join[0]) + f(pairs.meet_join[1]),
            f(pairs.diff_pair[0]) + f(pairs.diff_pair[1]))


def verify_skew_supermodular(f, ground: GroundSet) -> Optional[Violation]:
    """Checks the skew-supermodular inequality on every crossing pair.

    Pairs are scanned in lexicographic order of canonical representatives.
    The reported certificate is the violation with the largest gap lhs - rhs,
    the first one in scan order on ties; None means the function passed.

    Raises:
        TooLarge: if the ground set has more than MAX_VERIFY_GROUND elements.
    """
    if ground.size > MAX_VERIFY_GROUND:
        raise TooLarge(f'n={ground.size} > {MAX_VERIFY_GROUND}')
    bipartitions = list(ground.bipartitions())
    values = {X.canonical: f(X) for X in bipartitions}
    full = ground.full

    def value_of(mask):
        return values[mask if mask & 1 else full ^ mask]

    worst = None
    for a in range(len(bipartitions)):
        X = bipartitions[a]
        x = X.side
        for b in range(a + 1, len(bipartitions)):
            Y = bipartitions[b]
            if not is_crossing(X, Y):
                continue
            y = Y.side
            lhs = values[x] + values[y]
            rhs = max(value_of(x & y) + value_of(x | y),
                      value_of(x & ~y) + value_of(y & ~x))
            if lhs > rhs and (worst is None or lhs - rhs > worst.lhs - worst.rhs):
                worst = Violation(X=X, Y=Y, lhs=lhs, rhs=rhs)
    return worst
