import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Protocol, Tuple

from ..errors import InvalidMove, NoValidPair, StrategyError, UncrossError
from ..ground import (Bipartition, Family, GroundSet, corner_pairs, is_crossing,
                      is_laminar, remove_trivial)


__all__ = ['PAIR_CHOICES', 'BlueChoice', 'RedMove', 'TraceRecord', 'GameState',
           'GameOutcome', 'RedStrategy', 'BlueStrategy', 'initial_state',
           'step', 'play', 'replay', 'valid_pair_choices']


logger = logging.getLogger(__name__)

PAIR_CHOICES = ('meet_join', 'diff_pair')


class BlueChoice(Enum):
    X = 'X'
    Y = 'Y'
    NONE = 'none'


@dataclass(frozen=True)
class RedMove:
    """A crossing pair on the sides Red intends plus the corner pair it takes.

    branch and k are bookkeeping of the strategy that issued the move; they
    do not affect the game.
    """
    X: Bipartition
    Y: Bipartition
    pair_choice: str
    branch: str = ''
    k: Optional[int] = None

    def replacement(self) -> Tuple[Bipartition, Bipartition]:
        return corner_pairs(self.X, self.Y).get(self.pair_choice)

    def returned(self, choice: BlueChoice) -> Optional[Bipartition]:
        if choice is BlueChoice.X:
            return self.X.canon()
        elif choice is BlueChoice.Y:
            return self.Y.canon()
        return None


@dataclass(frozen=True)
class TraceRecord:
    move: RedMove
    choice: BlueChoice

    def to_dict(self) -> dict:
        return {
            'X': sorted(self.move.X.representative),
            'Y': sorted(self.move.Y.representative),
            'pair_choice': self.move.pair_choice,
            'returned': self.choice.value,
        }


@dataclass(frozen=True)
class GameState:
    family: Family
    ground: GroundSet
    iteration: int = 0
    trace: Tuple[TraceRecord, ...] = field(default_factory=tuple)

    def is_laminar(self) -> bool:
        return is_laminar(self.family)


@dataclass(frozen=True)
class GameOutcome:
    won: bool
    iterations: int
    final_family: Family
    oracle_calls: int
    trace: Tuple[TraceRecord, ...] = ()


class RedStrategy(Protocol):
    def next_move(self, state: GameState) -> RedMove:
        ...

    def observe(self, move: RedMove, choice: BlueChoice) -> None:
        ...

    def state_key(self):
        ...

    def clone(self) -> 'RedStrategy':
        ...


class BlueStrategy(Protocol):
    def __call__(self, state: GameState, move: RedMove) -> BlueChoice:
        ...


def initial_state(F0: Family) -> GameState:
    return GameState(family=remove_trivial(F0), ground=F0.ground)


def valid_pair_choices(f, X: Bipartition, Y: Bipartition):
    """Corner pair names satisfying f(X) + f(Y) <= f(X') + f(Y'), in order."""
    pairs = corner_pairs(X, Y)
    lhs = f(X) + f(Y)
    choices = []
    for name in PAIR_CHOICES:
        first, second = pairs.get(name)
        if lhs <= f(first) + f(second):
            choices.append(name)
    if not choices:
        raise NoValidPair(f'X={list(X.key())} Y={list(Y.key())}')
    return choices


def step(state: GameState, f, move: RedMove, blue: BlueChoice,
         allow_none: bool = False) -> GameState:
    """Applies Red's replacement and Blue's return, then drops trivial members.

    Raises:
        InvalidMove: not crossing, not members, inequality failing, or an
            unexpected `none` from Blue.
    """
    X, Y = move.X, move.Y
    if move.pair_choice not in PAIR_CHOICES:
        raise InvalidMove(f'unknown pair choice {move.pair_choice!r}')
    if not is_crossing(X, Y):
        raise InvalidMove(f'X={list(X.key())} and Y={list(Y.key())} do not cross')
    counts = state.family.counts()
    if counts[X] < 1 or counts[Y] < 1:
        raise InvalidMove(f'X={list(X.key())} or Y={list(Y.key())} not in the family')
    if blue is BlueChoice.NONE and not allow_none:
        raise InvalidMove('Blue may not return none in this game')
    first, second = move.replacement()
    lhs = f(X) + f(Y)
    rhs = f(first) + f(second)
    if lhs > rhs:
        raise InvalidMove(f'{move.pair_choice}: f(X)+f(Y)={lhs} > {rhs}')

    family = state.family.remove(X.canon(), Y.canon()).add(first, second)
    returned = move.returned(blue)
    if returned is not None:
        family = family.add(returned)
    family = remove_trivial(family)
    logger.debug('iteration %d: X=%s Y=%s %s, Blue returns %s -> %d members',
                 state.iteration + 1, list(X.representative), list(Y.representative),
                 move.pair_choice, blue.value, len(family))
    return replace(state, family=family, iteration=state.iteration + 1,
                   trace=state.trace + (TraceRecord(move, blue),))


def play(F0: Family, f, red: RedStrategy, blue: BlueStrategy, cap: int,
         allow_none: bool = False) -> GameOutcome:
    """Runs the game until the family is laminar or `cap` iterations are used.

    Raises:
        StrategyError: a strategy produced an invalid move or aborted; the
            error carries the trace so far.
    """
    assert cap > 0, 'cap must be positive'
    calls_before = f.eval_count
    state = initial_state(F0)
    while not state.is_laminar():
        if state.iteration >= cap:
            return GameOutcome(won=False, iterations=state.iteration,
                               final_family=state.family,
                               oracle_calls=f.eval_count - calls_before,
                               trace=state.trace)
        try:
            move = red.next_move(state)
            choice = blue(state, move)
            state = step(state, f, move, choice, allow_none=allow_none)
            red.observe(move, choice)
        except StrategyError:
            raise
        except UncrossError as err:
            raise StrategyError(f'iteration {state.iteration + 1}: {err}', trace=state.trace) from err
    return GameOutcome(won=True, iterations=state.iteration, final_family=state.family,
                       oracle_calls=f.eval_count - calls_before, trace=state.trace)


def replay(F0: Family, f, records, allow_none: bool = True) -> GameState:
    """Re-applies serialized trace records {X, Y, pair_choice, returned}."""
    ground = F0.ground
    state = initial_state(F0)
    for record in records:
        move = RedMove(X=Bipartition.from_side(record['X'], ground),
                       Y=Bipartition.from_side(record['Y'], ground),
                       pair_choice=record['pair_choice'])
        state = step(state, f, move, BlueChoice(record['returned']), allow_none=allow_none)
    return state
