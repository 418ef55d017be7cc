import logging
import threading
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple

import networkx as nx

from ..errors import InvalidValue, NotSkewSupermodular
from ..ground import Bipartition, Family, GroundSet, canonicalize, ids_of
from ..rational_utils import to_rational


__all__ = ['ORACLE_KINDS', 'FunctionOracle', 'RequirementMatrix', 'make_table',
           'make_requirement', 'make_deficiency', 'make_indicator',
           'values_table']


logger = logging.getLogger(__name__)

ORACLE_KINDS = ('table', 'requirement', 'deficiency', 'indicator')


class FunctionOracle:
    """Evaluation oracle of a nonnegative symmetric function on bipartitions.

    Every call to `evaluate` (or the instance itself) bumps `eval_count`
    under a lock. `payload` keeps the description the oracle was built from,
    so instance files can be written back.
    """

    def __init__(self, func: Callable[[Bipartition], Fraction], kind: str,
                 ground: GroundSet, payload=None):
        assert kind in ORACLE_KINDS, f'unknown oracle kind {kind!r}'
        self._func = func
        self.kind = kind
        self.ground = ground
        self.payload = payload
        self._eval_count = 0
        self._lock = threading.Lock()

    @property
    def eval_count(self) -> int:
        return self._eval_count

    def evaluate(self, X: Bipartition) -> Fraction:
        with self._lock:
            self._eval_count += 1
        return self._func(X.canon())

    __call__ = evaluate

    def clone(self) -> 'FunctionOracle':
        return FunctionOracle(self._func, self.kind, self.ground, self.payload)

    def __repr__(self):
        return f'FunctionOracle(kind={self.kind!r}, n={self.ground.size}, calls={self._eval_count})'


class RequirementMatrix:
    """Symmetric pairwise requirements r(i, j), i != j; absent pairs are 0."""

    def __init__(self, entries: Mapping[Tuple[int, int], object] = None):
        self._entries = {}
        for (i, j), value in (entries or {}).items():
            self.set(i, j, value)

    def set(self, i: int, j: int, value):
        assert i != j, 'diagonal of a requirement matrix is unused'
        value = to_rational(value)
        if value < 0:
            raise InvalidValue(f'r({i},{j}) = {value}')
        key = (min(i, j), max(i, j))
        if value == 0:
            self._entries.pop(key, None)
        else:
            self._entries[key] = value

    def get(self, i: int, j: int) -> Fraction:
        return self._entries.get((min(i, j), max(i, j)), Fraction(0))

    def items(self):
        return sorted(self._entries.items())

    def __eq__(self, other):
        return isinstance(other, RequirementMatrix) and self._entries == other._entries


def _check_value(value, where) -> Fraction:
    value = to_rational(value)
    if value < 0:
        raise InvalidValue(f'{where} = {value}')
    return value


def _maybe_verify(oracle: FunctionOracle, verify: bool) -> FunctionOracle:
    if verify:
        from .functions_verify import verify_skew_supermodular
        violation = verify_skew_supermodular(oracle, oracle.ground)
        if violation is not None:
            raise NotSkewSupermodular(violation)
    return oracle


def make_table(values: Mapping, ground: GroundSet, verify: bool = False) -> FunctionOracle:
    """Oracle backed by explicit values; unspecified bipartitions are 0.

    Keys may be Bipartitions or subsets of ids (either side).
    """
    table: Dict[int, Fraction] = {}
    for subset, value in values.items():
        X = canonicalize(subset, ground)
        table[X.canonical] = _check_value(value, f'f({list(X.key())})')
    zero = Fraction(0)

    def func(X):
        return table.get(X.canonical, zero)

    payload = {ids_of(mask): value for mask, value in sorted(table.items())}
    return _maybe_verify(FunctionOracle(func, 'table', ground, payload), verify)


def make_requirement(r: RequirementMatrix, ground: GroundSet, verify: bool = False) -> FunctionOracle:
    """f(X) = max over i in X, j not in X of r(i, j)."""
    pairs = [((1 << (i - 1)), (1 << (j - 1)), value) for (i, j), value in r.items()]
    zero = Fraction(0)

    def func(X):
        side = X.side
        best = zero
        for bit_i, bit_j, value in pairs:
            if bool(side & bit_i) != bool(side & bit_j) and value > best:
                best = value
        return best

    return _maybe_verify(FunctionOracle(func, 'requirement', ground, r), verify)


def make_deficiency(graph_edges: Iterable[Tuple[int, int]], R: int, ground: GroundSet,
                    verify: bool = False) -> FunctionOracle:
    """f(X) = max(0, R - |δ(X)|) for the multigraph on the given edges.

    Not skew-supermodular for every graph; pass verify=True (or verify later)
    before playing on it.
    """
    assert int(R) == R and R >= 0, 'target R must be a nonnegative integer'
    graph = nx.MultiGraph()
    graph.add_nodes_from(ground.ids())
    edges = [tuple(edge) for edge in graph_edges]
    for i, j in edges:
        assert 1 <= i <= ground.size and 1 <= j <= ground.size, f'edge {(i, j)} outside ground'
    graph.add_edges_from(edges)
    target = Fraction(int(R))
    zero = Fraction(0)

    def func(X):
        degree = nx.cut_size(graph, ids_of(X.side))
        return max(zero, target - degree)

    payload = {'edges': edges, 'R': int(R)}
    return _maybe_verify(FunctionOracle(func, 'deficiency', ground, payload), verify)


def make_indicator(S: Family, ground: GroundSet, verify: bool = False) -> FunctionOracle:
    """f(X) = 1 if X is in S else 0; verification certifies cross-closedness."""
    members = frozenset(member.canonical for member in S)
    one, zero = Fraction(1), Fraction(0)

    def func(X):
        return one if X.canonical in members else zero

    payload = Family(S.distinct(), ground)
    return _maybe_verify(FunctionOracle(func, 'indicator', ground, payload), verify)


def values_table(f: FunctionOracle) -> Dict[Tuple[int, ...], Fraction]:
    """Materializes f over every bipartition (nonzero entries only)."""
    table = {}
    for X in f.ground.bipartitions():
        value = f(X)
        if value != 0:
            table[X.key()] = value
    return table
