from collections import Counter
from typing import Iterable, Iterator, List, Tuple

from ..errors import GroundMismatch
from .ground_bipartition import Bipartition, GroundSet, canonicalize, is_crossing


__all__ = ['Family', 'is_laminar', 'remove_trivial', 'crossing_pairs',
           'crosses_any']


class Family:
    """An immutable multiset of canonical bipartitions on one ground set.

    Members are kept sorted by canonical key so iteration order is the
    canonical order everywhere.
    """
    __slots__ = ('ground', 'members')

    def __init__(self, members: Iterable[Bipartition], ground: GroundSet):
        canon = []
        for member in members:
            if not isinstance(member, Bipartition):
                member = canonicalize(member, ground)
            if member.ground != ground:
                raise GroundMismatch(f'member {member!r} not on n={ground.size}')
            canon.append(member.canon())
        canon.sort(key=Bipartition.key)
        object.__setattr__(self, 'ground', ground)
        object.__setattr__(self, 'members', tuple(canon))

    def __setattr__(self, name, value):
        raise AttributeError('Family is immutable')

    @classmethod
    def from_subsets(cls, subsets: Iterable[Iterable[int]], ground: GroundSet) -> 'Family':
        return cls((canonicalize(subset, ground) for subset in subsets), ground)

    def __iter__(self) -> Iterator[Bipartition]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self.members

    def __getitem__(self, index):
        return self.members[index]

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.ground == other.ground and self.members == other.members

    def __hash__(self):
        return hash((self.ground.size, self.members))

    def __repr__(self):
        sides = [list(member.key()) for member in self.members]
        return f'Family({sides}, n={self.ground.size})'

    def counts(self) -> Counter:
        return Counter(self.members)

    def distinct(self) -> List[Bipartition]:
        return sorted(set(self.members), key=Bipartition.key)

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(member.key() for member in self.members)

    def add(self, *members: Bipartition) -> 'Family':
        return Family(self.members + tuple(members), self.ground)

    def remove(self, *members: Bipartition) -> 'Family':
        """Removes one copy of each given member."""
        remaining = list(self.members)
        for member in members:
            remaining.remove(member)
        return Family(remaining, self.ground)

    def without_all(self, member: Bipartition) -> 'Family':
        return Family((item for item in self.members if item != member), self.ground)

    def to_lists(self) -> List[List[int]]:
        return [list(member.key()) for member in self.members]


def crossing_pairs(F: Family) -> Iterator[Tuple[int, int]]:
    """Index pairs (i, j), i < j, of crossing members in canonical order."""
    members = F.members
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if is_crossing(members[i], members[j]):
                yield i, j


def crosses_any(X: Bipartition, members: Iterable[Bipartition]) -> bool:
    return any(is_crossing(X, Y) for Y in members)


def is_laminar(F: Family) -> bool:
    for _ in crossing_pairs(F):
        return False
    return True


def remove_trivial(F: Family) -> Family:
    """Drops every member crossing no other member of F.

    Equal members never cross, so all copies of a trivial member go at once.
    """
    distinct = F.distinct()
    nontrivial = set()
    for i in range(len(distinct)):
        for j in range(i + 1, len(distinct)):
            if is_crossing(distinct[i], distinct[j]):
                nontrivial.add(distinct[i])
                nontrivial.add(distinct[j])
    if len(nontrivial) == len(distinct):
        return F
    return Family((member for member in F.members if member in nontrivial), F.ground)
