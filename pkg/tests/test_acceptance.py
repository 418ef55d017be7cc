"""Desk-scale sweeps over generated instances; run with `pytest -m slow`."""
import logging
from fractions import Fraction

import numpy as np
import pytest

from uncrossgame import (DualSolution, GroundSet, PerturbationConfig, blue_always_X,
                         blue_random, blue_return_larger_potential, make_form_a_family,
                         make_table, objective, paper_red_strategy, perturbation_experiment,
                         play, remove_trivial, solve_dual_exact, uncross_naive, uncross_step,
                         uncross_strategic, verify_skew_supermodular, weighted_potential,
                         worst_case_blue)
from uncrossgame.cli import generate_instance

from conftest import random_family, random_requirement


logger = logging.getLogger(__name__)

pytestmark = pytest.mark.slow


def blue_suite():
    return ([blue_random(seed) for seed in range(25)]
            + [blue_return_larger_potential(), blue_always_X()])


def random_integer_dual(ground, rng, max_support=6, max_weight=50):
    size = int(rng.integers(2, max_support + 1))
    masks = rng.integers(1, ground.full, size=size)
    weights = rng.integers(1, max_weight + 1, size=size)
    return DualSolution({int(m): int(w) for m, w in zip(masks, weights)}, ground)


@pytest.mark.parametrize('seed', [1, 11, 21])
def test_exhaustive_blue_tree(seed):
    rng = np.random.default_rng(seed)
    for _ in range(50):
        n = int(rng.integers(4, 6))
        ground = GroundSet(n)
        f = random_requirement(ground, rng)
        F = random_family(ground, int(rng.integers(2, 5)), rng)
        worst, trace = worst_case_blue(F, f, paper_red_strategy(f),
                                       depth_cap=8 * n ** 3 * len(F), allow_none=True)
        assert len(trace) == worst


@pytest.mark.parametrize('seed', [2, 12, 22])
def test_iteration_bound(seed):
    rng = np.random.default_rng(seed)
    worst_constant = Fraction(0)
    for _ in range(200):
        n = int(rng.integers(4, 11))
        ground = GroundSet(n)
        f = random_requirement(ground, rng)
        F = random_family(ground, int(rng.integers(1, 31)), rng)
        cap = 8 * n ** 3 * len(F)
        for blue in blue_suite():
            outcome = play(F, f, paper_red_strategy(f), blue, cap=cap)
            assert outcome.won
            assert outcome.iterations <= cap
            worst_constant = max(worst_constant, Fraction(outcome.iterations, n ** 3 * len(F)))
    logger.info('largest iterations / (n^3 |F0|): %s', worst_constant)


def test_form_a_subgames_are_quadratic():
    rng = np.random.default_rng(3)
    sizes, counts = [], []
    for n in range(6, 41, 2):
        ground = GroundSet(n)
        f = random_requirement(ground, rng)
        F = remove_trivial(make_form_a_family(n, int(rng.integers(3, n)), rng))
        red = paper_red_strategy(f)
        outcome = play(F, f, red, blue_random(n), cap=8 * n ** 3 * len(F))
        assert outcome.won
        for size, iterations in red.subgame_log:
            assert iterations <= 4 * size ** 2
            sizes.append(size)
            counts.append(iterations)
    assert sizes
    squares = np.array(sizes, dtype=float) ** 2
    c = float(squares @ np.array(counts, dtype=float) / (squares @ squares))
    logger.info('form A subgames: iterations ~ %.3f n^2 over %d subgames', c, len(sizes))
    # a subgame may always take up to n moves; beyond that it stays within twice the fit
    for size, iterations in zip(sizes, counts):
        assert iterations <= max(2 * c * size ** 2, size), (size, iterations, c)


def test_naive_potential_strictly_decreases():
    rng = np.random.default_rng(4)
    for _ in range(100):
        ground = GroundSet(int(rng.integers(4, 9)))
        f = random_requirement(ground, rng)
        lam = random_integer_dual(ground, rng)
        result = uncross_naive(lam, f)
        assert result.steps <= weighted_potential(lam)
        current = lam
        for record in result.records:
            after, _ = uncross_step(current, record.X, record.Y, record.pair_choice, f,
                                    alpha=record.alpha)
            assert weighted_potential(after) < weighted_potential(current)
            assert objective(after, f) >= objective(current, f)
            current = after
        assert current == result.dual
        assert result.dual.is_laminar()


def test_bit_length_independence():
    rng = np.random.default_rng(5)
    unit_small, unit_large = 0, 0
    for _ in range(50):
        ground = GroundSet(int(rng.integers(4, 8)))
        f = random_requirement(ground, rng)
        lam = random_integer_dual(ground, rng, max_weight=10)
        base = uncross_strategic(lam, f)
        assert base.dual.is_laminar()
        for k in (1, 5, 10, 20):
            scaled = uncross_strategic(lam.scaled(2 ** k), f)
            assert scaled.support_trace() == base.support_trace()
        unit_small += uncross_naive(lam.scaled(2), f, alpha_rule='unit').steps
        unit_large += uncross_naive(lam.scaled(2 ** 5), f, alpha_rule='unit').steps
    assert unit_large > unit_small


def test_perturbation_experiment():
    done, seed = 0, 0
    while done < 20:
        seed += 1
        assert seed < 200, 'too few instances with a positive optimum'
        n = 4 + seed % 3
        instance = generate_instance(n, 4, seed=seed)
        lp = instance.lp
        solution = solve_dual_exact(lp)
        if solution.value == 0:
            continue
        laminar_opt = uncross_strategic(solution.dual, lp.f).dual
        lam = laminar_opt.scaled(Fraction(1, 2))
        N = 8 * n ** 3 * (len(lam) + len(solution.dual)) + 8
        report = perturbation_experiment(lp, lam, PerturbationConfig.build(lam, Fraction(1, 4), N))
        assert report.passed, report.to_dict()
        assert report.objective_star > report.objective_lam
        assert report.distance <= Fraction(1, 4)
        done += 1


def test_oracles_verify():
    rng = np.random.default_rng(6)
    for n in range(3, 8):
        ground = GroundSet(n)
        for _ in range(5):
            assert verify_skew_supermodular(random_requirement(ground, rng), ground) is None
        for seed in range(3):
            instance = generate_instance(n, 0, kind='deficiency', seed=seed, with_dual=False,
                                         with_lp=False)
            assert verify_skew_supermodular(instance.f, ground) is None
    ground = GroundSet(4)
    violation = verify_skew_supermodular(make_table({(1, 2): 2, (2, 3): 2}, ground), ground)
    assert (violation.lhs, violation.rhs) == (4, 0)


def test_runs_are_reproducible():
    rng_a, rng_b = np.random.default_rng(7), np.random.default_rng(7)
    for _ in range(10):
        outcomes = []
        for rng in (rng_a, rng_b):
            ground = GroundSet(6)
            f = random_requirement(ground, rng)
            F = random_family(ground, 8, rng)
            outcome = play(F, f, paper_red_strategy(f), blue_random(3), cap=8 * 216 * 8)
            outcomes.append([record.to_dict() for record in outcome.trace])
        assert outcomes[0] == outcomes[1]
