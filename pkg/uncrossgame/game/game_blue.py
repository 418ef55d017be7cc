import numpy as np

from .game_engine import BlueChoice, GameState, RedMove


__all__ = ['blue_random', 'blue_return_larger_potential', 'blue_always_X',
           'blue_always_none', 'make_blue']


class _RandomBlue:
    def __init__(self, seed, allow_none=False):
        self.seed = seed
        self.allow_none = allow_none
        self._rng = np.random.default_rng(seed)

    def __call__(self, state: GameState, move: RedMove) -> BlueChoice:
        choices = [BlueChoice.X, BlueChoice.Y]
        if self.allow_none:
            choices.append(BlueChoice.NONE)
        return choices[int(self._rng.integers(len(choices)))]

    def __repr__(self):
        return f'blue_random(seed={self.seed})'


def blue_random(seed, allow_none: bool = False):
    """Uniform Blue; replays identically for the same seed."""
    return _RandomBlue(seed, allow_none)


def blue_return_larger_potential():
    """Returns whichever of X, Y has the larger |Z||V\\Z|; ties go to X."""
    def choose(state: GameState, move: RedMove) -> BlueChoice:
        if move.Y.potential() > move.X.potential():
            return BlueChoice.Y
        return BlueChoice.X
    return choose


def blue_always_X():
    def choose(state: GameState, move: RedMove) -> BlueChoice:
        return BlueChoice.X
    return choose


def blue_always_none():
    def choose(state: GameState, move: RedMove) -> BlueChoice:
        return BlueChoice.NONE
    return choose


def make_blue(name: str, allow_none: bool = False):
    """Builds a Blue strategy from its CLI name: random:SEED, maxpot, alwaysx, none."""
    if name.startswith('random'):
        _, _, seed = name.partition(':')
        return blue_random(int(seed) if seed else 0, allow_none=allow_none)
    elif name == 'maxpot':
        return blue_return_larger_potential()
    elif name == 'alwaysx':
        return blue_always_X()
    elif name == 'none':
        return blue_always_none()
    raise ValueError(f'unknown Blue strategy {name!r}')
