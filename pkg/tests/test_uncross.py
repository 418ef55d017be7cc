import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uncrossgame import (BlueChoice, DualSolution, InvalidMove, InvalidValue,
                         NonIntegerWeights, NotCrossing, NotInSupport, NotSkewSupermodular,
                         blue_from_lambda, canonicalize, make_table, objective, separation_mass,
                         uncross_naive, uncross_step, uncross_strategic, weighted_potential)

from strategies import uncrossing_cases


def dual(weights, ground):
    return DualSolution(weights, ground)


def separation_masses(lam):
    n = lam.ground.size
    return {(i, j): separation_mass(lam, i, j)
            for i, j in itertools.combinations(range(1, n + 1), 2)}


@pytest.fixture
def two_members(ground4):
    return dual({(1, 2): 2, (2, 3): 3}, ground4)


class TestDualSolution:
    def test_zero_weights_dropped(self, ground4):
        lam = dual({(1, 2): 0, (2, 3): '1/2'}, ground4)
        assert len(lam) == 1
        assert lam.weight(canonicalize([1, 2], ground4)) == 0
        assert lam.to_records() == [{'set': [1, 4], 'weight': '1/2'}]

    def test_negative_rejected(self, ground4):
        with pytest.raises(InvalidValue):
            dual({(1, 2): -1}, ground4)

    def test_complements_merge(self, ground4):
        lam = dual({(1, 2): 1, (3, 4): 2}, ground4)
        assert lam.weight(canonicalize([1, 2], ground4)) == 3

    def test_from_records(self, ground4):
        records = [{'set': [1, 2], 'weight': '3/2'}, {'set': [3, 4], 'weight': '1/2'}]
        lam = DualSolution.from_records(records, ground4)
        assert lam.to_records() == [{'set': [1, 2], 'weight': '2'}]

    def test_require(self, ground4, two_members):
        with pytest.raises(NotInSupport):
            two_members.require(canonicalize([1], ground4))

    def test_objective(self, ground4):
        f = make_table({(1, 2): 3}, ground4)
        assert objective(dual({}, ground4), f) == 0
        assert objective(dual({(1, 2): 2}, ground4), f) == 6


class TestUncrossStep:
    def test_meet_join(self, ground4, zero4, two_members):
        X, Y = canonicalize([1, 2], ground4), canonicalize([2, 3], ground4).flip()
        after, record = uncross_step(two_members, X, Y, 'meet_join', zero4)
        assert after == dual({(2, 3): 1, (2,): 2, (1, 2, 3): 2}, ground4)
        assert record.alpha == 2
        assert record.blue_equivalent is BlueChoice.Y
        assert weighted_potential(two_members) == 20
        assert weighted_potential(after) == 16

    def test_equal_weights_vanish(self, ground4, zero4):
        lam = dual({(1, 2): 2, (2, 3): 2}, ground4)
        X, Y = canonicalize([1, 2], ground4), canonicalize([2, 3], ground4).flip()
        after, record = uncross_step(lam, X, Y, 'diff_pair', zero4)
        assert record.blue_equivalent is BlueChoice.NONE
        assert after == dual({(1,): 2, (3,): 2}, ground4)

    def test_partial_alpha(self, ground4, zero4, two_members):
        X, Y = canonicalize([1, 2], ground4), canonicalize([2, 3], ground4).flip()
        after, record = uncross_step(two_members, X, Y, 'meet_join', zero4, alpha=Fraction(1))
        assert after.weight(X) == 1
        assert after.weight(Y) == 2
        assert record.alpha == 1

    def test_errors(self, ground4, zero4, bad_table, two_members):
        X, Y = canonicalize([1, 2], ground4), canonicalize([2, 3], ground4).flip()
        with pytest.raises(NotInSupport):
            uncross_step(two_members, X, canonicalize([1], ground4), 'meet_join', zero4)
        with pytest.raises(InvalidMove):
            uncross_step(two_members, X, Y, 'diff_pair', bad_table)
        lam = dual({(1, 2): 1, (1, 3): 1, (1,): 1}, ground4)
        with pytest.raises(NotCrossing):
            uncross_step(lam, canonicalize([1, 2], ground4), canonicalize([1], ground4),
                         'meet_join', zero4)

    @pytest.mark.parametrize('x, y, expected', [
        (2, 3, BlueChoice.Y),
        (2, 2, BlueChoice.NONE),
        (5, 1, BlueChoice.X),
    ])
    def test_blue_from_lambda(self, ground4, x, y, expected):
        X, Y = canonicalize([1, 2], ground4), canonicalize([2, 3], ground4)
        assert blue_from_lambda(dual({X: x, Y: y}, ground4), X, Y) is expected


class TestNaive:
    def test_laminar_input(self, ground5, zero5):
        lam = dual({(2,): 1, (2, 3): 4, (1, 2, 3): 2}, ground5)
        result = uncross_naive(lam, zero5)
        assert result.steps == 0
        assert result.dual == lam

    def test_two_members(self, zero4, two_members):
        result = uncross_naive(two_members, zero4)
        assert result.dual.is_laminar()
        assert 1 <= result.steps <= weighted_potential(two_members)

    def test_unit_steps_grow_with_weights(self, zero4, two_members):
        assert uncross_naive(two_members, zero4, alpha_rule='unit').steps == 2
        assert uncross_naive(two_members.scaled(10), zero4, alpha_rule='unit').steps == 20

    def test_fractional_weights(self, ground4, zero4):
        lam = dual({(1, 2): '1/2', (2, 3): '1/3'}, ground4)
        with pytest.raises(NonIntegerWeights):
            uncross_naive(lam, zero4)
        result = uncross_naive(lam, zero4, prescale=True)
        assert result.dual.is_laminar()
        assert sum(value for _, value in result.dual.items()) == Fraction(5, 6)

    def test_not_skew_supermodular(self, ground4, bad_table):
        lam = dual({(1, 2): 1, (2, 3): 1}, ground4)
        with pytest.raises(NotSkewSupermodular):
            uncross_naive(lam, bad_table)

    @given(uncrossing_cases(), st.sampled_from(['min', 'unit']))
    @settings(max_examples=30, deadline=None)
    def test_step_invariants(self, case, alpha_rule):
        ground, f, lam = case
        result = uncross_naive(lam, f, alpha_rule=alpha_rule)
        assert result.dual.is_laminar()
        assert result.steps <= weighted_potential(lam)
        assert objective(result.dual, f) >= objective(lam, f)
        masses = separation_masses(lam)
        for pair, mass in separation_masses(result.dual).items():
            assert mass <= masses[pair]


class TestStrategic:
    def test_laminar_input(self, ground5, zero5):
        lam = dual({(2,): 1, (2, 3): 4}, ground5)
        result = uncross_strategic(lam, zero5)
        assert result.steps == 0
        assert result.dual == lam

    def test_two_members(self, zero4, two_members):
        result = uncross_strategic(two_members, zero4)
        assert result.dual.is_laminar()
        assert 1 <= result.steps <= 3

    def test_check_callback(self, zero4, two_members):
        seen = []
        uncross_strategic(two_members, zero4, check=lambda before, after, record: seen.append(
            (before, after, record.alpha)))
        assert seen[0][0] == two_members
        assert all(alpha > 0 for _, _, alpha in seen)

    @given(uncrossing_cases(max_support=6))
    @settings(max_examples=30, deadline=None)
    def test_step_invariants(self, case):
        ground, f, lam = case

        def check(before, after, record):
            assert objective(after, f) >= objective(before, f)
            assert weighted_potential(after) < weighted_potential(before)
            masses = separation_masses(before)
            for pair, mass in separation_masses(after).items():
                assert mass <= masses[pair]

        result = uncross_strategic(lam, f, check=check)
        assert result.dual.is_laminar()
        n = ground.size
        assert result.steps <= 8 * n ** 3 * max(len(lam), 1)

    @given(uncrossing_cases(max_support=5), st.integers(1, 20),
           st.sampled_from([Fraction(1, 3), Fraction(7, 2), Fraction(1)]))
    @settings(max_examples=25, deadline=None)
    def test_scaling_keeps_support_trace(self, case, k, extra):
        _, f, lam = case
        base = uncross_strategic(lam, f)
        scaled = uncross_strategic(lam.scaled(extra * 2 ** k), f)
        assert scaled.steps == base.steps
        assert scaled.support_trace() == base.support_trace()

    def test_rational_weights(self, ground5, make_random_requirement, rng):
        f = make_random_requirement(ground5, rng)
        lam = dual({(1, 2): '1/3', (2, 3): '2/7', (3, 4): '5/2', (1, 3): '1/9'}, ground5)
        result = uncross_strategic(lam, f)
        assert result.dual.is_laminar()
        assert objective(result.dual, f) >= objective(lam, f)
