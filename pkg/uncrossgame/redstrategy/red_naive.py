from ..errors import InternalError
from ..game import BlueChoice, GameState, RedMove, valid_pair_choices
from ..ground import crossing_pairs


__all__ = ['NaiveRedStrategy', 'naive_red_strategy']


class NaiveRedStrategy:
    """First crossing pair in canonical order, meet/join whenever it is valid."""

    def __init__(self, f):
        self.f = f

    def next_move(self, state: GameState) -> RedMove:
        members = state.family.members
        for i, j in crossing_pairs(state.family):
            X, Y = members[i], members[j]
            choice = valid_pair_choices(self.f, X, Y)[0]
            return RedMove(X=X, Y=Y, pair_choice=choice, branch='naive')
        raise InternalError('no crossing pair left', trace=state.trace)

    def observe(self, move: RedMove, choice: BlueChoice) -> None:
        pass

    def state_key(self):
        return ()

    def clone(self) -> 'NaiveRedStrategy':
        return self


def naive_red_strategy(f) -> NaiveRedStrategy:
    return NaiveRedStrategy(f)
