import numpy as np
import pytest

from uncrossgame import (Family, GroundSet, RequirementMatrix, make_requirement, make_table)


@pytest.fixture
def ground4():
    return GroundSet(4)


@pytest.fixture
def ground5():
    return GroundSet(5)


@pytest.fixture
def zero4(ground4):
    return make_requirement(RequirementMatrix(), ground4)


@pytest.fixture
def bad_table(ground4):
    """f({1,2}) = f({2,3}) = 2, zero elsewhere: both corner sums vanish."""
    return make_table({(1, 2): 2, (2, 3): 2}, ground4)


@pytest.fixture
def crossing4(ground4):
    return Family.from_subsets([[1, 2], [2, 3]], ground4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_requirement(ground, rng, max_value=4, density=0.6):
    r = RequirementMatrix()
    for i in ground.ids():
        for j in range(i + 1, ground.size + 1):
            if rng.random() < density:
                r.set(i, j, int(rng.integers(0, max_value + 1)))
    return make_requirement(r, ground)


def random_family(ground, size, rng):
    masks = rng.integers(1, ground.full, size=size)
    return Family((int(mask) for mask in masks), ground)


@pytest.fixture
def make_random_requirement():
    return random_requirement


@pytest.fixture
def make_random_family():
    return random_family


@pytest.fixture
def zero5(ground5):
    return make_requirement(RequirementMatrix(), ground5)
