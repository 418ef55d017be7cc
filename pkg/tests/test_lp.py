from fractions import Fraction

import numpy as np
import pytest

from uncrossgame import (CutCoveringInstance, DualSolution, GroundSet, InvalidConfig, InvalidValue,
                         NothingToImprove, PerturbationConfig, PrimalSolution, RequirementMatrix,
                         TooLarge, Unbounded, canonicalize, dual_feasible,
                         enumerate_dual_vertices, estimate_uncrossing_bound, make_requirement,
                         make_table, objective, perturbation_experiment, primal_feasible,
                         solve_dual_exact, uncross_strategic)


def path_instance(ground, f, rng):
    n = ground.size
    edges = [(i, i + 1) for i in range(1, n)]
    for _ in range(n):
        i, j = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        edges.append((int(i), int(j)))
    costs = [int(c) for c in rng.integers(1, 6, size=len(edges))]
    return CutCoveringInstance(ground, edges, costs, f)


@pytest.fixture
def square():
    ground = GroundSet(4)
    f = make_requirement(RequirementMatrix({(1, 3): 2, (2, 4): 1}), ground)
    return CutCoveringInstance(ground, [(1, 2), (2, 3), (3, 4), (1, 4)], [1, 2, 3, 4], f)


@pytest.fixture
def laminar_optimum(square):
    solution = solve_dual_exact(square)
    return uncross_strategic(solution.dual, square.f).dual


class TestFeasibility:
    def test_zero_demand(self):
        ground = GroundSet(3)
        f = make_table({}, ground)
        inst = CutCoveringInstance(ground, [(1, 2)], [1], f)
        assert primal_feasible(inst, PrimalSolution((0,)))

    def test_triangle(self):
        ground = GroundSet(3)
        f = make_requirement(RequirementMatrix({(1, 3): 1}), ground)
        inst = CutCoveringInstance(ground, [(1, 2), (2, 3), (1, 3)], [1, 1, 1], f)
        check = primal_feasible(inst, PrimalSolution((0, 0, 0)))
        assert not check
        assert check.witness.key() == (1,)
        assert primal_feasible(inst, PrimalSolution((1, 1, 1)))

    def test_negative_primal(self):
        with pytest.raises(InvalidValue):
            PrimalSolution((1, -1))

    def test_dual(self):
        ground = GroundSet(2)
        inst = CutCoveringInstance(ground, [(1, 2)], [5], make_table({}, ground))
        assert dual_feasible(inst, DualSolution({}, ground))
        assert dual_feasible(inst, DualSolution({(1,): 5}, ground))
        check = dual_feasible(inst, DualSolution({(1,): 6}, ground))
        assert not check
        assert check.witness == 0

    def test_dual_matches_edge_sums(self, square, rng):
        for _ in range(10):
            members = list(square.ground.bipartitions())
            weights = {X: int(rng.integers(0, 3)) for X in members}
            lam = DualSolution(weights, square.ground)
            expected = all(sum(w for X, w in weights.items() if X.separates(i, j)) <= cost
                           for (i, j), cost in zip(square.edges, square.costs))
            assert bool(dual_feasible(square, lam)) is expected


class TestSimplex:
    def test_single_edge(self):
        ground = GroundSet(2)
        inst = CutCoveringInstance(ground, [(1, 2)], [5], make_table({(1,): 3}, ground))
        solution = solve_dual_exact(inst)
        assert solution.value == 15
        assert solution.dual.weight(canonicalize([1], ground)) == 5
        assert solution.primal.x == (Fraction(3),)

    def test_zero_demand(self, ground4):
        inst = CutCoveringInstance(ground4, [(1, 2)], [1], make_table({}, ground4))
        solution = solve_dual_exact(inst)
        assert solution.value == 0
        assert len(solution.dual) == 0

    def test_unbounded(self):
        ground = GroundSet(3)
        inst = CutCoveringInstance(ground, [(1, 2)], [1], make_table({(3,): 1}, ground))
        with pytest.raises(Unbounded):
            solve_dual_exact(inst)

    def test_too_large(self):
        ground = GroundSet(9)
        inst = CutCoveringInstance(ground, [(1, 2)], [1], make_table({}, ground))
        with pytest.raises(TooLarge):
            solve_dual_exact(inst)

    def test_certificate(self, square):
        solution = solve_dual_exact(square)
        assert dual_feasible(square, solution.dual)
        assert primal_feasible(square, solution.primal)
        assert objective(solution.dual, square.f) == solution.value
        assert solution.primal.cost(square) == solution.value

    def test_matches_vertex_enumeration(self, make_random_requirement, rng):
        for n in (3, 4):
            ground = GroundSet(n)
            for _ in range(4):
                inst = path_instance(ground, make_random_requirement(ground, rng), rng)
                vertices = enumerate_dual_vertices(inst)
                best = max(objective(vertex, inst.f) for vertex in vertices)
                assert solve_dual_exact(inst).value == best

    def test_weak_duality(self, make_random_requirement, rng):
        ground = GroundSet(5)
        inst = path_instance(ground, make_random_requirement(ground, rng), rng)
        value = solve_dual_exact(inst).value
        top = max((inst.f(X) for X in ground.bipartitions()), default=0)
        x = PrimalSolution(tuple(top for _ in inst.edges))
        assert primal_feasible(inst, x)
        assert value <= x.cost(inst)


class TestPerturbation:
    def test_optimum_is_laminar_and_feasible(self, square, laminar_optimum):
        assert laminar_optimum.is_laminar()
        assert dual_feasible(square, laminar_optimum)
        assert objective(laminar_optimum, square.f) == solve_dual_exact(square).value

    def test_nothing_to_improve(self, square, laminar_optimum):
        cfg = PerturbationConfig.build(laminar_optimum, Fraction(1, 2), 4)
        with pytest.raises(NothingToImprove):
            perturbation_experiment(square, laminar_optimum, cfg)

    def test_half_optimum(self, square, laminar_optimum):
        lam = laminar_optimum.scaled(Fraction(1, 2))
        support = len(lam) + len(solve_dual_exact(square).dual)
        N = 8 * square.ground.size ** 3 * support + 8
        cfg = PerturbationConfig.build(lam, Fraction(1, 2), N)
        report = perturbation_experiment(square, lam, cfg)
        assert report.passed
        assert report.laminar and report.feasible
        assert report.objective_star >= report.objective_prime > report.objective_lam
        assert report.distance <= 2 ** N * cfg.epsilon_prime
        summary = report.to_dict()
        assert summary['N_measured'] is False
        assert summary['passed'] is True

    def test_config_limit(self, square, laminar_optimum):
        lam = laminar_optimum.scaled(Fraction(1, 2))
        cfg = PerturbationConfig.build(lam, Fraction(1, 2), 3)
        assert cfg.epsilon_prime == Fraction(1, 8) * min(Fraction(1, 2), min(v for _, v in lam.items()))
        too_big = PerturbationConfig(epsilon=cfg.epsilon, N=3, epsilon_prime=cfg.epsilon_prime * 2)
        with pytest.raises(InvalidConfig):
            perturbation_experiment(square, lam, too_big)

    def test_rejects_crossing_or_infeasible(self, square):
        ground = square.ground
        crossing = DualSolution({(1, 2): Fraction(1, 10), (2, 3): Fraction(1, 10)}, ground)
        with pytest.raises(InvalidConfig):
            perturbation_experiment(square, crossing, PerturbationConfig.build(crossing, 1, 2))
        heavy = DualSolution({(1,): 100}, ground)
        with pytest.raises(InvalidConfig):
            perturbation_experiment(square, heavy, PerturbationConfig.build(heavy, 1, 2))

    def test_measured_bound(self, square):
        N = estimate_uncrossing_bound(square.f, square.ground, 4, trials=5,
                                      rng=np.random.default_rng(1))
        assert N >= 2 and N % 2 == 0
