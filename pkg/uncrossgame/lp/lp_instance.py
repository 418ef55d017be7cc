from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple

from ..errors import InvalidValue, TooLarge
from ..functions import MAX_VERIFY_GROUND
from ..ground import Bipartition, GroundSet
from ..rational_utils import format_rational, to_rational
from ..uncross import DualSolution, separation_mass


__all__ = ['MAX_LP_GROUND', 'CutCoveringInstance', 'PrimalSolution', 'FeasibilityCheck',
           'primal_feasible', 'dual_feasible']


MAX_LP_GROUND = 8


class CutCoveringInstance:
    """Graph G = (V, E) with edge costs a(e) and a demand function f.

    Edges are kept in input order as (i, j) with i < j; parallel edges are
    allowed and carry their own cost.
    """

    def __init__(self, ground: GroundSet, edges: Sequence[Tuple[int, int]],
                 costs: Sequence, f):
        assert len(edges) == len(costs), 'one cost per edge'
        normalized = []
        for i, j in edges:
            i, j = int(i), int(j)
            assert 1 <= i <= ground.size and 1 <= j <= ground.size and i != j, \
                f'edge {(i, j)} outside n={ground.size}'
            normalized.append((min(i, j), max(i, j)))
        cost_values = []
        for edge, cost in zip(normalized, costs):
            cost = to_rational(cost)
            if cost < 0:
                raise InvalidValue(f'a{edge} = {cost}')
            cost_values.append(cost)
        self.ground = ground
        self.edges = tuple(normalized)
        self.costs = tuple(cost_values)
        self.f = f

    def crossing_edges(self, X: Bipartition):
        """Indices of edges in δ(X)."""
        return [index for index, (i, j) in enumerate(self.edges) if X.separates(i, j)]

    def __repr__(self):
        return f'CutCoveringInstance(n={self.ground.size}, |E|={len(self.edges)})'


@dataclass(frozen=True)
class PrimalSolution:
    x: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(to_rational(value) for value in self.x)
        if any(value < 0 for value in values):
            raise InvalidValue(f'x = {[format_rational(v) for v in values]}')
        object.__setattr__(self, 'x', values)

    def cost(self, inst: CutCoveringInstance) -> Fraction:
        return sum((a * x for a, x in zip(inst.costs, self.x)), Fraction(0))

    def cover(self, inst: CutCoveringInstance, X: Bipartition) -> Fraction:
        return sum((self.x[index] for index in inst.crossing_edges(X)), Fraction(0))


class FeasibilityCheck(NamedTuple):
    ok: bool
    witness: Optional[object] = None

    def __bool__(self):
        return self.ok


def primal_feasible(inst: CutCoveringInstance, x: PrimalSolution) -> FeasibilityCheck:
    """Checks Σ_{e in δ(X)} x(e) >= f(X) on every bipartition.

    The witness is the first violated bipartition in canonical order.

    Raises:
        TooLarge: beyond MAX_VERIFY_GROUND elements.
    """
    assert len(x.x) == len(inst.edges), 'one value per edge'
    if inst.ground.size > MAX_VERIFY_GROUND:
        raise TooLarge(f'n={inst.ground.size} > {MAX_VERIFY_GROUND}')
    for X in inst.ground.bipartitions():
        if x.cover(inst, X) < inst.f(X):
            return FeasibilityCheck(False, X)
    return FeasibilityCheck(True)


def dual_feasible(inst: CutCoveringInstance, lam: DualSolution) -> FeasibilityCheck:
    """Checks Σ_{X: e in δ(X)} λ(X) <= a(e) on every edge; the witness is an edge index."""
    for index, ((i, j), cost) in enumerate(zip(inst.edges, inst.costs)):
        if separation_mass(lam, i, j) > cost:
            return FeasibilityCheck(False, index)
    return FeasibilityCheck(True)
