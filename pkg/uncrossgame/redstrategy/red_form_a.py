"""Form-A subgame: members are prefixes [1,i] or intervals [2,j] of an atom order.

Positions 1..n index atoms of the active subfamily; every interval is lifted
back to a side on the original ground set through `FormAView.atom_order`.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from ..errors import InternalError, NotSkewSupermodular
from ..functions import Violation
from ..game import RedMove
from ..ground import Bipartition, Family, GroundSet, atoms, ids_of


__all__ = ['FormAView', 'detect_form_a', 'find_k', 'form_a_move', 'make_form_a_family']


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormAView:
    atom_order: Tuple[int, ...]
    ground: GroundSet
    A_members: Tuple[int, ...]
    B_members: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.atom_order)

    @property
    def d(self) -> int:
        return min(self.B_members)

    def interval(self, i: int, j: int) -> int:
        assert 1 <= i <= j <= self.n, f'bad interval [{i},{j}] for n={self.n}'
        mask = 0
        for atom in self.atom_order[i - 1:j]:
            mask |= atom
        return mask

    def side(self, i: int, j: int) -> Bipartition:
        return Bipartition(self.interval(i, j), self.ground)

    def anchors(self) -> Tuple[int, int]:
        """Smallest original elements of the atoms at positions 1 and n."""
        return ids_of(self.atom_order[0])[0], ids_of(self.atom_order[-1])[0]

    def potential(self) -> Tuple[int, int]:
        return self.n + len(self.B_members), self.d

    def dump(self) -> dict:
        return {
            'atom_order': [list(ids_of(atom)) for atom in self.atom_order],
            'A': list(self.A_members),
            'B': list(self.B_members),
            'd': self.d,
        }


def _atom_index(atom_masks: Sequence[int], element: int) -> Optional[int]:
    bit = 1 << (element - 1)
    for index, atom in enumerate(atom_masks):
        if atom & bit:
            return index
    return None


def _try_order(sides_by_q, atom_masks, p, q, ground) -> Optional[FormAView]:
    sides = sides_by_q[q]
    a_sides = [side for side in sides if side & atom_masks[p]]
    b_sides = [side for side in sides if not side & atom_masks[p]]
    if not b_sides:
        return None
    m = len(atom_masks)

    def sort_key(t):
        atom = atom_masks[t]
        in_a = sum(1 for side in a_sides if side & atom)
        in_b = sum(1 for side in b_sides if side & atom)
        return -(in_a + in_b), -in_a, t

    order = [p] + sorted((t for t in range(m) if t != p), key=sort_key)
    if order[-1] != q:
        return None
    prefix_to_i = {}
    mask = 0
    for position, t in enumerate(order, start=1):
        mask |= atom_masks[t]
        prefix_to_i[mask] = position
    head = atom_masks[p]
    A, B = [], []
    for side in a_sides:
        i = prefix_to_i.get(side)
        if i is None or not 2 <= i <= m - 2:
            return None
        A.append(i)
    for side in b_sides:
        j = prefix_to_i.get(side | head)
        if j is None or not 3 <= j <= m - 1:
            return None
        B.append(j)
    return FormAView(atom_order=tuple(atom_masks[t] for t in order), ground=ground,
                     A_members=tuple(sorted(A)), B_members=tuple(sorted(B)))


def detect_form_a(F: Family, hint: Optional[Tuple[int, int]] = None) -> Optional[FormAView]:
    """Finds an atom order under which every member is [1,i] or [2,j].

    F must be free of trivial members. `hint` holds original elements to try
    first at positions 1 and n (the anchors of a previous view). Returns None
    when F is not of form A or has no [2,j] member.
    """
    if len(F) == 0:
        return None
    ground = F.ground
    atom_masks = atoms(F).masks()
    m = len(atom_masks)
    if m < 4:
        return None
    full = ground.full
    canonical_sides = [member.canonical for member in F]
    sides_by_q = {}
    for q, atom in enumerate(atom_masks):
        sides_by_q[q] = [full ^ side if side & atom else side for side in canonical_sides]

    candidates = [(p, q) for p in range(m) for q in range(m) if p != q]
    if hint is not None:
        p0, q0 = _atom_index(atom_masks, hint[0]), _atom_index(atom_masks, hint[1])
        if p0 is not None and q0 is not None and p0 != q0:
            candidates.remove((p0, q0))
            candidates.insert(0, (p0, q0))
    for p, q in candidates:
        view = _try_order(sides_by_q, atom_masks, p, q, ground)
        if view is not None:
            return view
    return None


def _violation_at(view: FormAView, f, i: int, j: int) -> Violation:
    X, Y = view.side(1, i), view.side(2, j)
    lhs = f(X) + f(Y)
    meet = f(view.side(2, i)) + f(view.side(1, j))
    diff = f(view.side(1, 1)) + f(view.side(i + 1, j))
    return Violation(X=X, Y=Y, lhs=lhs, rhs=max(meet, diff))


def find_k(view: FormAView, f) -> int:
    """Smallest k in [2, d-1] with f([1,l]) + f([2,l+1]) <= f([2,l]) + f([1,l+1])
    for every l = k, ..., d-1.

    Scans l downward from d-1 and stops at the first failure.

    Raises:
        NotSkewSupermodular: the inequality already fails at l = d-1.
    """
    d = view.d
    k = d
    for l in range(d - 1, 1, -1):
        lhs = f(view.side(1, l)) + f(view.side(2, l + 1))
        rhs = f(view.side(2, l)) + f(view.side(1, l + 1))
        if lhs > rhs:
            break
        k = l
    if k == d:
        raise NotSkewSupermodular(_violation_at(view, f, d - 1, d))
    return k


def _check_leq(lhs: Fraction, rhs: Fraction, what: str):
    if lhs > rhs:
        raise InternalError(f'{what}: {lhs} > {rhs}')


def form_a_move(view: FormAView, f, pending: Optional[Tuple[int, int]] = None) -> RedMove:
    """The Red move prescribed for a form-A position.

    `pending` holds the sides [1,k-1] and [2,k] owed after Blue returned
    [2,d] to a meet/join move with k > 2; they are played as a difference
    move when the current view still presents them as [1,d-1] and [2,d].
    """
    if not view.B_members:
        raise InternalError('form-A view without [2,j] members')
    d = view.d
    X, Y = view.side(1, d - 1), view.side(2, d)
    if pending is not None and (X.side, Y.side) == pending:
        # inequality (1) from the failed chain step at l = k-1
        _check_leq(f(X) + f(Y), f(view.side(1, 1)) + f(view.side(d, d)),
                   'difference inequality after returned [2,d]')
        return RedMove(X=X, Y=Y, pair_choice='diff_pair', branch='iv', k=d)

    crossed = f(X) + f(Y)
    if crossed <= f(view.side(1, 1)) + f(view.side(d, d)):
        return RedMove(X=X, Y=Y, pair_choice='diff_pair', branch='i')
    if d == 3:
        return RedMove(X=view.side(1, 2), Y=view.side(2, 3), pair_choice='meet_join', branch='ii')
    k = find_k(view, f)
    X = view.side(1, k)
    _check_leq(f(X) + f(Y), f(view.side(1, d)) + f(view.side(2, k)),
               f'telescoped chain at k={k}, d={d}')
    logger.debug('form A: n=%d d=%d k=%d', view.n, d, k)
    return RedMove(X=X, Y=Y, pair_choice='meet_join', branch='iii', k=k)


def make_form_a_family(n: int, d: int, rng) -> Family:
    """Random form-A family on the identity order of V = [1, n] with given d.

    Contains [1,i] for i = 2..d-1 and [2,d]; every position i >= d is then
    split from i+1 by [1,i] or [2,i] (coin flip by `rng`), plus a random
    number of extra copies.
    """
    assert n >= 4 and 3 <= d <= n - 1, f'need n >= 4 and 3 <= d <= n-1, got n={n}, d={d}'
    ground = GroundSet(n)
    sides = [list(range(1, i + 1)) for i in range(2, d)]
    sides.append(list(range(2, d + 1)))
    for i in range(d + 1, n):
        if i <= n - 2 and rng.random() < 0.5:
            sides.append(list(range(1, i + 1)))
        else:
            sides.append(list(range(2, i + 1)))
    extra = int(rng.integers(0, len(sides) + 1))
    for index in rng.integers(0, len(sides), size=extra):
        sides.append(sides[int(index)])
    return Family((Bipartition.from_side(side, ground) for side in sides), ground)
