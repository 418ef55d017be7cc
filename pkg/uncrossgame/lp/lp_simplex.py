"""Exact dual of the cut-covering LP.

    maximize    Σ_X λ(X) f(X)
    subject to  Σ_{X: e in δ(X)} λ(X) <= a(e)   for every edge e
                λ >= 0

Only bipartitions with f(X) > 0 get a column. The tableau holds Fractions in a
numpy object array and pivots by Bland's rule, so it terminates without
tolerances.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from ..errors import InternalError, TooLarge, Unbounded
from ..ground import Bipartition
from ..uncross import DualSolution, objective
from .lp_instance import (MAX_LP_GROUND, CutCoveringInstance, PrimalSolution,
                          primal_feasible)


__all__ = ['MAX_VERTEX_BASES', 'LPSolution', 'solve_dual_exact', 'enumerate_dual_vertices']


logger = logging.getLogger(__name__)

MAX_VERTEX_BASES = 200000

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPSolution:
    """An optimal dual with the primal read from the final tableau.

    Equal objective values of a feasible pair certify optimality of both.
    """
    dual: DualSolution
    primal: PrimalSolution
    value: Fraction
    pivots: int = 0


def _columns(inst: CutCoveringInstance) -> List[Bipartition]:
    if inst.ground.size > MAX_LP_GROUND:
        raise TooLarge(f'n={inst.ground.size} > {MAX_LP_GROUND}')
    columns = [X for X in inst.ground.bipartitions() if inst.f(X) > 0]
    for X in columns:
        if not inst.crossing_edges(X):
            raise Unbounded(f'f({list(X.key())}) > 0 but no edge leaves it')
    return columns


def _constraint_matrix(inst: CutCoveringInstance, columns: Sequence[Bipartition]) -> np.ndarray:
    A = np.full((len(inst.edges), len(columns)), ZERO, dtype=object)
    for col, X in enumerate(columns):
        for row in inst.crossing_edges(X):
            A[row, col] = ONE
    return A


def _pivot(T: np.ndarray, row: int, col: int):
    T[row] = T[row] / T[row, col]
    for other in range(T.shape[0]):
        if other != row and T[other, col] != 0:
            T[other] = T[other] - T[other, col] * T[row]


def solve_dual_exact(inst: CutCoveringInstance, certify: bool = True) -> LPSolution:
    """Optimal dual by an exact-rational simplex from the slack basis.

    The slack basis is feasible since costs are nonnegative. The primal x(e)
    is the final objective-row entry under edge e's slack.

    Raises:
        TooLarge: beyond MAX_LP_GROUND elements.
        Unbounded: some f(X) > 0 has no edge in δ(X).
    """
    columns = _columns(inst)
    m, k = len(inst.edges), len(columns)
    c = [inst.f(X) for X in columns]
    T = np.full((m + 1, k + m + 1), ZERO, dtype=object)
    if m:
        T[:m, :k] = _constraint_matrix(inst, columns)
    for row in range(m):
        T[row, k + row] = ONE
        T[row, -1] = inst.costs[row]
    for col in range(k):
        T[m, col] = -c[col]
    basis = [k + row for row in range(m)]

    pivots = 0
    while True:
        entering = next((col for col in range(k + m) if T[m, col] < 0), None)
        if entering is None:
            break
        best = None
        for row in range(m):
            if T[row, entering] > 0:
                ratio = T[row, -1] / T[row, entering]
                candidate = (ratio, basis[row], row)
                if best is None or candidate < best:
                    best = candidate
        if best is None:
            raise Unbounded(f'column {list(columns[entering].key())} is unbounded')
        row = best[2]
        _pivot(T, row, entering)
        basis[row] = entering
        pivots += 1

    weights = {}
    for row, var in enumerate(basis):
        if var < k and T[row, -1] != 0:
            weights[columns[var]] = T[row, -1]
    dual = DualSolution(weights, inst.ground)
    primal = PrimalSolution(tuple(T[m, k + row] for row in range(m)))
    value = T[m, -1]
    logger.debug('simplex: %d columns, %d edges, %d pivots, value %s', k, m, pivots, value)

    if certify:
        if objective(dual, inst.f) != value or primal.cost(inst) != value:
            raise InternalError(f'objective {objective(dual, inst.f)} / primal cost '
                                f'{primal.cost(inst)} differ from tableau value {value}')
        if inst.ground.size <= MAX_LP_GROUND and not primal_feasible(inst, primal):
            raise InternalError('primal read from the tableau is infeasible')
    return LPSolution(dual=dual, primal=primal, value=value, pivots=pivots)


def _solve_square(M: np.ndarray, rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Gauss-Jordan elimination over Fractions; None when M is singular."""
    size = M.shape[0]
    A = np.empty((size, size + 1), dtype=object)
    A[:, :size] = M
    A[:, size] = list(rhs)
    for col in range(size):
        pivot_row = next((row for row in range(col, size) if A[row, col] != 0), None)
        if pivot_row is None:
            return None
        if pivot_row != col:
            A[[col, pivot_row]] = A[[pivot_row, col]]
        _pivot(A, col, col)
    return list(A[:, size])


def enumerate_dual_vertices(inst: CutCoveringInstance) -> List[DualSolution]:
    """Every basic feasible solution of the dual, by trying all bases.

    Raises:
        TooLarge: more than MAX_VERTEX_BASES candidate bases.
    """
    columns = _columns(inst)
    m, k = len(inst.edges), len(columns)
    n_bases = 1
    for i in range(m):
        n_bases = n_bases * (k + m - i) // (i + 1)
    if n_bases > MAX_VERTEX_BASES:
        raise TooLarge(f'{n_bases} bases > {MAX_VERTEX_BASES}')
    full = np.full((m, k + m), ZERO, dtype=object)
    if m:
        full[:, :k] = _constraint_matrix(inst, columns)
    for row in range(m):
        full[row, k + row] = ONE

    vertices = []
    seen = set()
    for basis in itertools.combinations(range(k + m), m):
        values = _solve_square(full[:, list(basis)], inst.costs) if m else []
        if values is None or any(value < 0 for value in values):
            continue
        weights = {columns[var]: value for var, value in zip(basis, values)
                   if var < k and value != 0}
        vertex = DualSolution(weights, inst.ground)
        if vertex not in seen:
            seen.add(vertex)
            vertices.append(vertex)
    return vertices
