from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import InternalError, TrivialX
from ..ground import (Bipartition, Family, atoms, crosses_any, ids_of, is_crossing,
                      popcount)
from .red_form_a import FormAView


__all__ = ['FormBView', 'is_2_partitioned', 'select_maximal', 'reduce_form_b', 'split_laminar',
           'maximal_laminar_subfamily']


@dataclass(frozen=True)
class FormBView:
    """Laminar C being inserted one member at a time into laminar D."""
    C: Family
    D: Family
    current_X: Optional[Bipartition] = None

    def dump(self) -> dict:
        return {
            'C': self.C.to_lists(),
            'D': self.D.to_lists(),
            'X': None if self.current_X is None else sorted(self.current_X.representative),
        }


def _atoms_met(side: int, atom_masks: List[int]) -> int:
    return sum(1 for atom in atom_masks if side & atom)


def is_2_partitioned(X: Bipartition, D: Family) -> bool:
    """Whether the side X.side meets at most two atoms of D."""
    return _atoms_met(X.side, atoms(D).masks()) <= 2


def _candidate_side(member: Bipartition, atom_masks: List[int]) -> Optional[int]:
    # the side avoiding element 1 goes first
    for side in (member.ground.full ^ member.canonical, member.canonical):
        if _atoms_met(side, atom_masks) <= 2:
            return side
    return None


def select_maximal(C: Family, D: Family) -> Optional[Bipartition]:
    """A member of C, oriented to a 2-partitioned side for D, whose side is
    contained in no other candidate side.

    Ties between maximal candidates go to the smallest canonical key.
    Returns None when no member of C has a 2-partitioned side.
    """
    atom_masks = atoms(D).masks()
    candidates = []
    for member in C.distinct():
        side = _candidate_side(member, atom_masks)
        if side is not None:
            candidates.append(Bipartition(side, C.ground))
    maximal = [X for X in candidates
               if not any(Y.side != X.side and X.side & Y.side == X.side for Y in candidates)]
    if not maximal:
        return None
    return min(maximal, key=Bipartition.key)


def reduce_form_b(X: Bipartition, D: Family) -> FormAView:
    """Form-A view of the members of D crossing X together with X.

    X's side must meet exactly two atoms of D; the members crossing it then
    form a chain once oriented to contain the same part of X.

    Raises:
        TrivialX: X crosses no member of D.
    """
    ground = X.ground
    full = ground.full
    atom_masks = atoms(D).masks()
    side = X.side
    if _atoms_met(side, atom_masks) > 2:
        side = full ^ side
    crossing = [Y for Y in D if is_crossing(X, Y)]
    if not crossing:
        raise TrivialX(f'X={sorted(X.representative)}')
    parts = [side & atom for atom in atom_masks if side & atom]
    if len(parts) != 2:
        raise InternalError(f'X={ids_of(side)} meets {len(parts)} atoms of D')
    # Z1 holds the smallest element of the side
    z1, z2 = sorted(parts, key=lambda part: part & -part)

    oriented = []
    for Y in crossing:
        y = Y.canonical
        if y & side == z1:
            y = full ^ y
        if y & side != z2:
            raise InternalError(f'Y={ids_of(y)} splits a part of X={ids_of(side)}')
        oriented.append(y)
    chain = sorted(set(oriented), key=popcount)
    for small, large in zip(chain, chain[1:]):
        if small & large != small:
            raise InternalError(f'{ids_of(small)} and {ids_of(large)} are not nested')

    order = [z1, z2]
    previous = z2
    for y in chain:
        order.append(y & ~previous)
        previous = y
    order.append(full & ~(previous | z1))
    position = {y: index + 3 for index, y in enumerate(chain)}
    return FormAView(atom_order=tuple(order), ground=ground, A_members=(2,),
                     B_members=tuple(sorted(position[y] for y in oriented)))


def maximal_laminar_subfamily(F: Family) -> Family:
    """Greedy pass in canonical order keeping members that cross no kept member."""
    kept: List[Bipartition] = []
    for member in F:
        if not crosses_any(member, kept):
            kept.append(member)
    return Family(kept, F.ground)


def split_laminar(F: Family) -> Tuple[Family, Family]:
    """(maximal laminar subfamily, the remaining members)."""
    C = maximal_laminar_subfamily(F)
    return C, F.remove(*C)
