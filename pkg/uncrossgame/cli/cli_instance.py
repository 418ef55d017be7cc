"""Instance files: one JSON document with 1-based ids and "p/q" rationals.

    {
      "ground_set_size": 5,
      "function": {"kind": "requirement",
                   "payload": {"entries": [{"pair": [1, 3], "value": "2"}]}},
      "family": [[1, 2], [2, 3]],
      "dual": [{"set": [1, 2], "weight": "3/2"}],
      "lp": {"edges": [[1, 2], [2, 3]], "costs": ["1", "5/2"]}
    }

"dual" and "lp" are optional. Payloads per kind:

    table        {"values": [{"set": [ids], "value": "p/q"}, ...]}
    requirement  {"entries": [{"pair": [i, j], "value": "p/q"}, ...]}
    deficiency   {"edges": [[i, j], ...], "R": int}
    indicator    {"family": [[ids], ...]}
"""
import json
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import GenerationFailed, InstanceParseError, TooLarge, UncrossError
from ..functions import (FunctionOracle, RequirementMatrix, make_deficiency, make_indicator,
                         make_requirement, make_table, verify_skew_supermodular)
from ..ground import MAX_GROUND, Family, GroundSet, canonicalize, ids_of
from ..lp import CutCoveringInstance
from ..rational_utils import format_rational, to_rational
from ..uncross import DualSolution


__all__ = ['Instance', 'GENERATOR_KINDS', 'MAX_GEN_VERIFY', 'parse_instance', 'emit_instance',
           'load_instance', 'generate_instance', 'function_to_dict']


logger = logging.getLogger(__name__)

GENERATOR_KINDS = ('requirement', 'deficiency', 'indicator')
# exhaustive verification above this size takes too long for generation
MAX_GEN_VERIFY = 10
GEN_RETRIES = 50


@dataclass
class Instance:
    ground: GroundSet
    f: FunctionOracle
    family: Family
    dual: Optional[DualSolution] = None
    lp: Optional[CutCoveringInstance] = None

    @property
    def n(self) -> int:
        return self.ground.size


def _fail(where: str, message: str):
    raise InstanceParseError(f'{where}: {message}')


def _ids(value, where: str, ground: GroundSet):
    if not isinstance(value, list) or not all(isinstance(i, int) and not isinstance(i, bool)
                                             for i in value):
        _fail(where, f'expected a list of ids, got {value!r}')
    for i in value:
        if not 1 <= i <= ground.size:
            _fail(where, f'id {i} outside 1..{ground.size}')
    return value


def _subset(value, where: str, ground: GroundSet):
    try:
        return canonicalize(_ids(value, where, ground), ground)
    except UncrossError as err:
        _fail(where, err.message)


def _rational(value, where: str):
    try:
        return to_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as err:
        _fail(where, f'not an exact rational ({err})')


def _function(data, ground: GroundSet) -> FunctionOracle:
    if not isinstance(data, dict) or 'kind' not in data or 'payload' not in data:
        _fail('function', 'expected {"kind": ..., "payload": ...}')
    kind, payload = data['kind'], data['payload']
    try:
        if kind == 'table':
            values = {}
            for index, item in enumerate(payload['values']):
                where = f'function.payload.values[{index}]'
                values[_subset(item['set'], where, ground)] = _rational(item['value'], where)
            return make_table(values, ground)
        elif kind == 'requirement':
            r = RequirementMatrix()
            for index, item in enumerate(payload['entries']):
                where = f'function.payload.entries[{index}]'
                pair = _ids(item['pair'], where, ground)
                if len(pair) != 2 or pair[0] == pair[1]:
                    _fail(where, 'pair must have two distinct ids')
                i, j = pair
                r.set(i, j, _rational(item['value'], where))
            return make_requirement(r, ground)
        elif kind == 'deficiency':
            edges = [tuple(_ids(edge, f'function.payload.edges[{index}]', ground))
                     for index, edge in enumerate(payload['edges'])]
            if any(len(edge) != 2 for edge in edges):
                _fail('function.payload.edges', 'every edge needs two ids')
            R = payload['R']
            if not isinstance(R, int) or isinstance(R, bool) or R < 0:
                _fail('function.payload.R', f'expected a nonnegative integer, got {R!r}')
            return make_deficiency(edges, R, ground)
        elif kind == 'indicator':
            members = [_subset(item, f'function.payload.family[{index}]', ground)
                       for index, item in enumerate(payload['family'])]
            return make_indicator(Family(members, ground), ground)
    except (KeyError, TypeError) as err:
        _fail('function.payload', f'missing or malformed field {err}')
    except InstanceParseError:
        raise
    except UncrossError as err:
        _fail('function.payload', err.message)
    _fail('function.kind', f'unknown kind {kind!r}')


def parse_instance(data) -> Instance:
    """Builds an Instance from decoded JSON; no skew-supermodularity check."""
    if not isinstance(data, dict):
        _fail('<root>', 'expected an object')
    n = data.get('ground_set_size')
    if not isinstance(n, int) or isinstance(n, bool) or not 2 <= n <= MAX_GROUND:
        _fail('ground_set_size', f'expected an integer in 2..{MAX_GROUND}, got {n!r}')
    ground = GroundSet(n)
    f = _function(data.get('function'), ground)
    family_data = data.get('family', [])
    if not isinstance(family_data, list):
        _fail('family', 'expected a list of subsets')
    family = Family([_subset(item, f'family[{index}]', ground)
                     for index, item in enumerate(family_data)], ground)

    dual = None
    if data.get('dual') is not None:
        weights = {}
        for index, item in enumerate(data['dual']):
            where = f'dual[{index}]'
            if not isinstance(item, dict) or 'set' not in item or 'weight' not in item:
                _fail(where, 'expected {"set": [...], "weight": "p/q"}')
            X = _subset(item['set'], where, ground)
            weight = _rational(item['weight'], where)
            if weight < 0:
                _fail(where, f'negative weight {weight}')
            weights[X] = weights.get(X, 0) + weight
        dual = DualSolution(weights, ground)

    lp = None
    if data.get('lp') is not None:
        lp_data = data['lp']
        if not isinstance(lp_data, dict) or 'edges' not in lp_data or 'costs' not in lp_data:
            _fail('lp', 'expected {"edges": [...], "costs": [...]}')
        if len(lp_data['costs']) != len(lp_data['edges']):
            _fail('lp.costs', f'{len(lp_data["costs"])} costs for {len(lp_data["edges"])} edges')
        edges = [tuple(_ids(edge, f'lp.edges[{index}]', ground))
                 for index, edge in enumerate(lp_data['edges'])]
        if any(len(edge) != 2 or edge[0] == edge[1] for edge in edges):
            _fail('lp.edges', 'every edge needs two distinct ids')
        costs = [_rational(cost, f'lp.costs[{index}]') for index, cost in enumerate(lp_data['costs'])]
        if any(cost < 0 for cost in costs):
            _fail('lp.costs', 'costs must be nonnegative')
        lp = CutCoveringInstance(ground, edges, costs, f)
    return Instance(ground=ground, f=f, family=family, dual=dual, lp=lp)


def function_to_dict(f: FunctionOracle) -> dict:
    payload = f.payload
    if f.kind == 'table':
        body = {'values': [{'set': list(ids), 'value': format_rational(value)}
                           for ids, value in sorted(payload.items())]}
    elif f.kind == 'requirement':
        body = {'entries': [{'pair': [i, j], 'value': format_rational(value)}
                            for (i, j), value in payload.items()]}
    elif f.kind == 'deficiency':
        body = {'edges': [list(edge) for edge in payload['edges']], 'R': payload['R']}
    else:
        body = {'family': payload.to_lists()}
    return {'kind': f.kind, 'payload': body}


def emit_instance(instance: Instance) -> dict:
    data = {
        'ground_set_size': instance.n,
        'function': function_to_dict(instance.f),
        'family': instance.family.to_lists(),
    }
    if instance.dual is not None:
        data['dual'] = instance.dual.to_records()
    if instance.lp is not None:
        data['lp'] = {'edges': [list(edge) for edge in instance.lp.edges],
                      'costs': [format_rational(cost) for cost in instance.lp.costs]}
    return data


def load_instance(filename) -> Instance:
    """Reads and parses an instance file.

    Raises:
        InstanceParseError: unreadable JSON (with line and column) or bad fields.
    """
    try:
        with open(filename, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as err:
        raise InstanceParseError(f'{filename}: line {err.lineno} column {err.colno}: {err.msg}')
    except OSError as err:
        raise InstanceParseError(f'{filename}: {err.strerror}')
    return parse_instance(data)


def _random_subset_mask(n: int, rng) -> int:
    return int(rng.integers(1, (1 << n) - 1))


def _random_function(kind: str, ground: GroundSet, rng, max_value: int) -> FunctionOracle:
    n = ground.size
    if kind == 'requirement':
        r = RequirementMatrix()
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if rng.random() < 0.5:
                    r.set(i, j, int(rng.integers(0, max_value + 1)))
        return make_requirement(r, ground)
    elif kind == 'deficiency':
        n_edges = int(rng.integers(n - 1, 2 * n + 1))
        edges = []
        for _ in range(n_edges):
            i, j = rng.choice(n, size=2, replace=False) + 1
            edges.append((int(i), int(j)))
        return make_deficiency(edges, int(rng.integers(0, max_value + 1)), ground)
    members = [canonicalize(ids_of(_random_subset_mask(n, rng)), ground)
               for _ in range(int(rng.integers(1, 4)))]
    return make_indicator(Family(members, ground), ground)


def generate_instance(n: int, family_size: int, kind: str = 'requirement', seed: int = 0,
                      max_value: int = 4, with_dual: bool = True, with_lp: bool = True) -> Instance:
    """Deterministic random instance for `seed`.

    The function is verified skew-supermodular when n <= MAX_GEN_VERIFY;
    requirement functions are skew-supermodular by construction and are
    emitted unverified above that size. Other kinds are retried until they
    verify.

    Raises:
        GenerationFailed: no verified function within the retry budget, or a
            kind that cannot be verified at this size.
    """
    assert kind in GENERATOR_KINDS, f'unknown kind {kind!r}'
    assert 2 <= n <= MAX_GROUND and family_size >= 0
    rng = np.random.default_rng(seed)
    ground = GroundSet(n)
    if n > MAX_GEN_VERIFY and kind != 'requirement':
        raise GenerationFailed(f'{kind} functions cannot be verified at n={n} > {MAX_GEN_VERIFY}')

    f = None
    for attempt in range(GEN_RETRIES):
        candidate = _random_function(kind, ground, rng, max_value)
        if n > MAX_GEN_VERIFY:
            logger.warning('n=%d: requirement function emitted without exhaustive check', n)
            f = candidate
            break
        try:
            violation = verify_skew_supermodular(candidate, ground)
        except TooLarge as err:
            raise GenerationFailed(err.message)
        if violation is None:
            f = candidate
            break
        logger.debug('attempt %d: %s rejected (%s)', attempt, kind, violation)
    if f is None:
        raise GenerationFailed(f'{kind} after {GEN_RETRIES} attempts')

    family = Family([canonicalize(ids_of(_random_subset_mask(n, rng)), ground)
                     for _ in range(family_size)], ground)
    dual = None
    if with_dual:
        dual = DualSolution({X: int(rng.integers(1, 11)) for X in family}, ground)
    lp = None
    if with_lp:
        edges = [(i, i + 1) for i in range(1, n)]
        for _ in range(n):
            i, j = sorted(int(v) for v in rng.choice(n, size=2, replace=False) + 1)
            edges.append((i, j))
        costs = [int(rng.integers(1, 6)) for _ in edges]
        lp = CutCoveringInstance(ground, edges, costs, f)
    return Instance(ground=ground, f=f, family=family, dual=dual, lp=lp)
