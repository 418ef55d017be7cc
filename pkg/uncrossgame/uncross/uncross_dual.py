from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from ..errors import InvalidValue, NotInSupport
from ..ground import Bipartition, Family, GroundSet, canonicalize, is_laminar
from ..rational_utils import format_rational, to_rational


__all__ = ['DualSolution', 'objective', 'weighted_potential', 'separation_mass']


class DualSolution:
    """Positive exact weights on canonical bipartitions; zero weights are absent.

    Instances are immutable; every update returns a new solution.
    """
    __slots__ = ('ground', '_weights')

    def __init__(self, weights: Mapping, ground: GroundSet):
        merged: Dict[Bipartition, Fraction] = {}
        for subset, value in dict(weights).items():
            X = subset.canon() if isinstance(subset, Bipartition) else canonicalize(subset, ground)
            value = to_rational(value)
            if value < 0:
                raise InvalidValue(f'lambda({list(X.key())}) = {value}')
            merged[X] = merged.get(X, Fraction(0)) + value
        object.__setattr__(self, 'ground', ground)
        object.__setattr__(self, '_weights', tuple(sorted(
            ((X, value) for X, value in merged.items() if value > 0),
            key=lambda item: item[0].key())))

    def __setattr__(self, name, value):
        raise AttributeError('DualSolution is immutable')

    @classmethod
    def from_records(cls, records: Iterable[Mapping], ground: GroundSet) -> 'DualSolution':
        """Reads [{set: [ids], weight: "p/q"}, ...]; repeated sets add up."""
        weights: Dict[Bipartition, Fraction] = {}
        for record in records:
            X = canonicalize(record['set'], ground)
            weight = to_rational(record['weight'])
            weights[X] = weights.get(X, Fraction(0)) + weight
        return cls(weights, ground)

    def to_records(self) -> List[dict]:
        return [{'set': list(X.key()), 'weight': format_rational(value)}
                for X, value in self._weights]

    def items(self) -> Iterator[Tuple[Bipartition, Fraction]]:
        return iter(self._weights)

    def weight(self, X: Bipartition) -> Fraction:
        X = X.canon()
        for member, value in self._weights:
            if member == X:
                return value
        return Fraction(0)

    def require(self, X: Bipartition) -> Fraction:
        value = self.weight(X)
        if value == 0:
            raise NotInSupport(f'{list(X.key())}')
        return value

    def support(self) -> Family:
        return Family((X for X, _ in self._weights), self.ground)

    def is_laminar(self) -> bool:
        return is_laminar(self.support())

    def scaled(self, factor) -> 'DualSolution':
        factor = to_rational(factor)
        assert factor > 0, 'scale factor must be positive'
        return DualSolution({X: value * factor for X, value in self._weights}, self.ground)

    def updated(self, deltas: Mapping[Bipartition, Fraction]) -> 'DualSolution':
        weights = dict(self._weights)
        for X, delta in deltas.items():
            X = X.canon()
            weights[X] = weights.get(X, Fraction(0)) + delta
        return DualSolution(weights, self.ground)

    def norm(self) -> Fraction:
        return max((value for _, value in self._weights), default=Fraction(0))

    def __len__(self):
        return len(self._weights)

    def __eq__(self, other):
        if not isinstance(other, DualSolution):
            return NotImplemented
        return self.ground == other.ground and self._weights == other._weights

    def __hash__(self):
        return hash((self.ground.size, self._weights))

    def __repr__(self):
        body = ', '.join(f'{list(X.key())}: {format_rational(value)}' for X, value in self._weights)
        return f'DualSolution({{{body}}}, n={self.ground.size})'


def objective(lam: DualSolution, f) -> Fraction:
    return sum((value * f(X) for X, value in lam.items()), Fraction(0))


def weighted_potential(lam: DualSolution) -> Fraction:
    """Σ λ(Z)·|Z|·|V\\Z|; strictly decreases in every uncrossing step."""
    return sum((value * X.potential() for X, value in lam.items()), Fraction(0))


def separation_mass(lam: DualSolution, i: int, j: int) -> Fraction:
    """Total weight on members separating elements i and j."""
    return sum((value for X, value in lam.items() if X.separates(i, j)), Fraction(0))
