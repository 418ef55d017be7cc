import numbers
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Tuple, Union

from ..errors import GroundMismatch, InvalidBipartition, NotCrossing


__all__ = ['MAX_GROUND', 'GroundSet', 'Bipartition', 'CornerPairs',
           'canonicalize', 'is_crossing', 'corner_pairs', 'mask_of',
           'ids_of', 'popcount']


MAX_GROUND = 64


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def mask_of(ids: Iterable[int]) -> int:
    """Bit i-1 of the mask stands for element id i."""
    mask = 0
    for i in ids:
        mask |= 1 << (i - 1)
    return mask


def ids_of(mask: int) -> Tuple[int, ...]:
    ids = []
    index = 1
    while mask:
        if mask & 1:
            ids.append(index)
        mask >>= 1
        index += 1
    return tuple(ids)


@dataclass(frozen=True)
class GroundSet:
    """The ground set V = {1, ..., size}."""
    size: int

    def __post_init__(self):
        assert isinstance(self.size, numbers.Integral), 'size must be an integer'
        if not 1 <= self.size <= MAX_GROUND:
            raise ValueError(f'ground size must be in [1, {MAX_GROUND}], got {self.size}')

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def ids(self) -> range:
        return range(1, self.size + 1)

    def bipartitions(self) -> Iterator['Bipartition']:
        """All 2^(n-1)-1 bipartitions, in canonical (lexicographic) order."""
        masks = range(1, self.full, 2)
        for mask in sorted(masks, key=ids_of):
            yield Bipartition(mask, self)

    def num_bipartitions(self) -> int:
        return (1 << (self.size - 1)) - 1


SubsetLike = Union[int, Iterable[int]]


def _to_mask(subset, ground: GroundSet) -> int:
    if isinstance(subset, Bipartition):
        return subset.side
    if isinstance(subset, numbers.Integral):
        return int(subset)
    ids = list(subset)
    for i in ids:
        if not 1 <= i <= ground.size:
            raise InvalidBipartition(f'element {i} outside 1..{ground.size}')
    return mask_of(ids)


class Bipartition:
    """A bipartition {X, V\\X} seen through one of its sides.

    Equality, hashing and ordering use the canonical side (the one containing
    element 1), so an oriented view equals the canonical bipartition. The
    orientation only matters to `corner_pairs`.
    """
    __slots__ = ('side', 'ground', 'canonical')

    def __init__(self, side: int, ground: GroundSet):
        full = ground.full
        if side <= 0 or side & full != side or side == full:
            raise InvalidBipartition(f'side {ids_of(side & full)} on n={ground.size}')
        object.__setattr__(self, 'side', side)
        object.__setattr__(self, 'ground', ground)
        object.__setattr__(self, 'canonical', side if side & 1 else full ^ side)

    def __setattr__(self, name, value):
        raise AttributeError('Bipartition is immutable')

    @classmethod
    def from_side(cls, subset: SubsetLike, ground: GroundSet) -> 'Bipartition':
        return cls(_to_mask(subset, ground), ground)

    @property
    def representative(self) -> frozenset:
        return frozenset(ids_of(self.side))

    @property
    def complement(self) -> int:
        return self.ground.full ^ self.side

    def flip(self) -> 'Bipartition':
        return Bipartition(self.complement, self.ground)

    def canon(self) -> 'Bipartition':
        if self.side == self.canonical:
            return self
        return Bipartition(self.canonical, self.ground)

    def key(self) -> Tuple[int, ...]:
        return ids_of(self.canonical)

    def potential(self) -> int:
        size = popcount(self.side)
        return size * (self.ground.size - size)

    def separates(self, i: int, j: int) -> bool:
        return bool((self.side >> (i - 1)) & 1) != bool((self.side >> (j - 1)) & 1)

    def is_singleton(self) -> bool:
        return popcount(self.side) == 1 or popcount(self.complement) == 1

    def __eq__(self, other):
        if not isinstance(other, Bipartition):
            return NotImplemented
        return self.canonical == other.canonical and self.ground == other.ground

    def __hash__(self):
        return hash((self.canonical, self.ground.size))

    def __lt__(self, other):
        return (self.ground.size, self.key()) < (other.ground.size, other.key())

    def __repr__(self):
        return f'Bipartition({list(ids_of(self.side))}, n={self.ground.size})'

    def __reduce__(self):
        return (Bipartition, (self.side, self.ground))


def canonicalize(subset: SubsetLike, ground: GroundSet) -> Bipartition:
    """Returns the bipartition whose stored side contains element 1.

    Raises:
        InvalidBipartition: if the subset is empty or the whole ground set.
    """
    return Bipartition.from_side(subset, ground).canon()


def _check_same_ground(X: Bipartition, Y: Bipartition):
    if X.ground != Y.ground:
        raise GroundMismatch(f'n={X.ground.size} vs n={Y.ground.size}')


def is_crossing(X: Bipartition, Y: Bipartition) -> bool:
    """Whether X∩Y, X\\Y, Y\\X and V\\(X∪Y) are all nonempty."""
    _check_same_ground(X, Y)
    x, y = X.side, Y.side
    return bool(x & y and x & ~y and y & ~x and X.ground.full & ~(x | y))


class CornerPairs(NamedTuple):
    meet_join: Tuple[Bipartition, Bipartition]
    diff_pair: Tuple[Bipartition, Bipartition]

    def get(self, pair_choice: str) -> Tuple[Bipartition, Bipartition]:
        if pair_choice == 'meet_join':
            return self.meet_join
        elif pair_choice == 'diff_pair':
            return self.diff_pair
        raise ValueError(f'unknown pair_choice: {pair_choice!r}')

    def as_set(self) -> frozenset:
        return frozenset([frozenset(self.meet_join), frozenset(self.diff_pair)])


def corner_pairs(X: Bipartition, Y: Bipartition) -> CornerPairs:
    """Corner pairs computed on the given sides of X and Y.

    meet_join is (X∩Y, X∪Y) and diff_pair is (X\\Y, Y\\X), both canonicalized.
    Flipping the side of one argument exchanges the two pairs.
    """
    if not is_crossing(X, Y):
        raise NotCrossing(f'{X!r}, {Y!r}')
    x, y, ground = X.side, Y.side, X.ground
    return CornerPairs(
        meet_join=(canonicalize(x & y, ground), canonicalize(x | y, ground)),
        diff_pair=(canonicalize(x & ~y, ground), canonicalize(y & ~x, ground)))
