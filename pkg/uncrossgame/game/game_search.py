import logging
from typing import Dict, Tuple

from ..errors import RedLoses, TooLarge
from ..ground import Family
from .game_engine import BlueChoice, GameState, RedStrategy, TraceRecord, initial_state, step


__all__ = ['MAX_SEARCH_GROUND', 'MAX_SEARCH_FAMILY', 'worst_case_blue']


logger = logging.getLogger(__name__)

MAX_SEARCH_GROUND = 6
MAX_SEARCH_FAMILY = 5


def worst_case_blue(F0: Family, f, red: RedStrategy, depth_cap: int,
                    allow_none: bool = False) -> Tuple[int, Tuple[TraceRecord, ...]]:
    """Explores every Blue response against a fixed Red strategy.

    Returns the maximum number of iterations over the whole tree together
    with a trace attaining it. Nodes are memoized on the family and the
    strategy's serialized state.

    Raises:
        TooLarge: beyond MAX_SEARCH_GROUND elements or MAX_SEARCH_FAMILY members.
        RedLoses: some branch is still not laminar after depth_cap iterations.
    """
    if F0.ground.size > MAX_SEARCH_GROUND or len(F0) > MAX_SEARCH_FAMILY:
        raise TooLarge(f'n={F0.ground.size}, |F|={len(F0)}')
    choices = [BlueChoice.X, BlueChoice.Y]
    if allow_none:
        choices.append(BlueChoice.NONE)
    memo: Dict[tuple, Tuple[int, Tuple[TraceRecord, ...]]] = {}

    def explore(state: GameState, strategy: RedStrategy):
        if state.is_laminar():
            return 0, ()
        if state.iteration >= depth_cap:
            raise RedLoses(f'not laminar after {depth_cap} iterations', trace=state.trace)
        key = (state.family.key(), strategy.state_key())
        if key in memo:
            return memo[key]
        mover = strategy.clone()
        move = mover.next_move(state)
        best = (-1, ())
        for choice in choices:
            child = mover.clone()
            next_state = step(state, f, move, choice, allow_none=allow_none)
            child.observe(move, choice)
            value, records = explore(next_state, child)
            if value + 1 > best[0]:
                best = (value + 1, (TraceRecord(move, choice),) + records)
        memo[key] = best
        return best

    result = explore(initial_state(F0), red.clone())
    logger.debug('worst case Blue: %d iterations over %d nodes', result[0], len(memo))
    return result
