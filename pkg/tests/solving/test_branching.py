#!/usr/bin/env python
# encoding: utf-8

import itertools
import math
import random

import pytest
from mock import MagicMock, call

from pwlmip.config import Config
from pwlmip.formulations import MethodTag, incremental_for, separable_sum
from pwlmip.functions import Continuity
from pwlmip.model import (
    INFINITY,
    LinearConstraint,
    LinearExpression,
    Model,
    Relation,
    Sense,
    VariableKind,
    relax,
)
from pwlmip.solving import (
    BranchAndBound,
    LpProblem,
    LpStatus,
    MilpSolution,
    MilpStatus,
    solve_lp,
    solve_milp,
)
from tests.helpers import left_function, random_function, right_function


def knapsack():
    # max 5a + 4b + 3c st 2a + 3b + c <= 5, the optimum being a = b = 1
    model = Model()
    items = [model.add_variable(name, kind=VariableKind.BINARY) for name in u'abc']
    model.add_constraint(LinearConstraint(
        [(2, items[0]), (3, items[1]), (1, items[2])], Relation.LE, 5
    ))
    model.set_objective(
        LinearExpression([(5, items[0]), (4, items[1]), (3, items[2])]), Sense.MAX
    )
    return model


def half_model():
    # max a + b st 2a + 2b <= 3, the root relaxation is fractional
    model = Model()
    a = model.add_variable(u'a', kind=VariableKind.BINARY)
    b = model.add_variable(u'b', kind=VariableKind.BINARY)
    model.add_constraint(LinearConstraint([(2, a), (2, b)], Relation.LE, 3))
    model.set_objective(LinearExpression([(1, a), (1, b)]), Sense.MAX)
    return model


def brute_force(model):
    """
    Solves the model by fixing the binaries to every possible assignment.
    """
    problem = LpProblem.from_model(model)
    binaries = model.binary_indexes
    best = None
    for assignment in itertools.product((0, 1), repeat=len(binaries)):
        lower = problem.lower.copy()
        upper = problem.upper.copy()
        lower[binaries] = assignment
        upper[binaries] = assignment
        solution = problem.solve(lower, upper)
        if solution.status is not LpStatus.OPTIMAL:
            continue
        if best is None or (solution.objective > best if model.sense is Sense.MAX
                            else solution.objective < best):
            best = solution.objective
    return best


class TestSolveMilp(object):

    def test_knapsack(self):
        solution = solve_milp(knapsack())
        assert solution.status is MilpStatus.OPTIMAL
        assert solution.objective == pytest.approx(9)
        assert solution.values == [1, 1, 0]
        assert solution.has_solution

    def test_branching(self):
        solution = solve_milp(half_model())
        assert solution.objective == pytest.approx(1)
        assert solution.nodes > 1
        assert sorted(solution.values) == [0, 1]

    def test_infeasible(self):
        model = Model()
        b = model.add_variable(kind=VariableKind.BINARY)
        model.add_constraint(LinearConstraint([(1, b)], Relation.GE, 0.5))
        model.add_constraint(LinearConstraint([(1, b)], Relation.LE, 0.7))
        solution = solve_milp(model)
        assert solution.status is MilpStatus.INFEASIBLE
        assert solution.objective is None
        assert not solution.has_solution
        assert solution.nodes == 3

    def test_unbounded(self):
        model = Model()
        x = model.add_variable(lower=-INFINITY)
        b = model.add_variable(kind=VariableKind.BINARY)
        model.add_constraint(LinearConstraint([(1, x), (1, b)], Relation.LE, 4))
        model.set_objective(LinearExpression([(1, x)]), Sense.MIN)
        solution = solve_milp(model)
        assert solution.status is MilpStatus.UNBOUNDED
        assert solution.objective == -math.inf

    def test_no_variables(self):
        model = Model()
        model.set_objective(LinearExpression(constant=4), Sense.MAX)
        solution = solve_milp(model)
        assert solution.status is MilpStatus.OPTIMAL
        assert solution.objective == 4
        assert solution.values == []

    def test_node_limit_without_solution(self):
        solution = solve_milp(half_model(), node_limit=1)
        assert solution.status is MilpStatus.NO_SOLUTION
        assert solution.limit_reached
        assert not solution.has_solution

    def test_node_limit_across_components(self):
        # the first component is solved at its root, the second runs out of nodes
        model = separable_sum([right_function()], MethodTag.INCR_RIGHT, Sense.MAX)
        a = model.add_variable(u'a', kind=VariableKind.BINARY)
        b = model.add_variable(u'b', kind=VariableKind.BINARY)
        model.add_constraint(LinearConstraint([(2, a), (2, b)], Relation.LE, 3))
        model.set_objective(model.objective + LinearExpression([(1, a), (1, b)]),
                            Sense.MAX)
        solution = solve_milp(model, Config(decompose=True), node_limit=2)
        assert solution.status is MilpStatus.NO_SOLUTION
        assert solution.limit_reached

    def test_node_limit_in_a_single_tree(self):
        # the same limit is enough to find a solution when the model is one tree
        model = separable_sum([right_function()], MethodTag.INCR_RIGHT, Sense.MAX)
        a = model.add_variable(u'a', kind=VariableKind.BINARY)
        b = model.add_variable(u'b', kind=VariableKind.BINARY)
        model.add_constraint(LinearConstraint([(2, a), (2, b)], Relation.LE, 3))
        model.set_objective(model.objective + LinearExpression([(1, a), (1, b)]),
                            Sense.MAX)
        solution = solve_milp(model, node_limit=2)
        assert solution.status is MilpStatus.FEASIBLE
        assert solution.limit_reached
        assert solution.objective == pytest.approx(11)
        assert solution.stats[u'components'] == 1

    def test_config_is_not_modified(self):
        config = Config()
        solve_milp(half_model(), config=config, node_limit=1, gap_tol=0.5)
        assert config.node_limit is None
        assert config.gap_tolerance == 1e-6

    def test_gap(self):
        # with a huge gap the first integral solution found is kept
        solution = solve_milp(knapsack(), gap_tol=100)
        assert solution.status is MilpStatus.OPTIMAL
        assert solution.objective <= 9

    def test_incremental_is_solved_at_the_root(self):
        model = separable_sum([right_function()], MethodTag.INCR_RIGHT, Sense.MAX)
        solution = solve_milp(model)
        assert solution.objective == pytest.approx(10)
        assert solution.nodes == 1
        assert solution.stats[u'lp_solves'] == 1

    def test_identical_components_are_solved_once(self):
        model = separable_sum([left_function()] * 5, MethodTag.INCR_LEFT, Sense.MIN)
        solution = solve_milp(model, Config(decompose=True))
        assert solution.objective == pytest.approx(12.5)
        assert solution.stats[u'components'] == 5
        assert solution.stats[u'distinct_components'] == 1
        assert solution.stats[u'cache_hits'] == 4
        assert solution.nodes == 1
        # the cached solution is copied into every component
        for fragment in model.fragments:
            assert solution.values[fragment.x.index] == pytest.approx(1)

    def test_single_tree_by_default(self):
        model = separable_sum([left_function()] * 5, MethodTag.INCR_LEFT, Sense.MIN)
        solution = solve_milp(model)
        assert solution.objective == pytest.approx(12.5)
        assert solution.stats[u'components'] == 1
        assert solution.stats[u'distinct_components'] == 1
        assert solution.stats[u'cache_hits'] == 0
        # the relaxation of a sum of incremental fragments is still integral
        assert solution.nodes == 1
        for fragment in model.fragments:
            assert solution.values[fragment.x.index] == pytest.approx(1)

    def test_single_tree_solves_every_copy(self):
        model = separable_sum([right_function()] * 3, MethodTag.CC_DISC, Sense.MAX)
        whole = solve_milp(model)
        split = solve_milp(model, Config(decompose=True))
        assert whole.objective == pytest.approx(split.objective) == pytest.approx(30)
        assert split.stats[u'cache_hits'] == 2
        assert whole.stats[u'cache_hits'] == 0
        assert (whole.stats[u'components'], split.stats[u'components']) == (1, 3)

    def test_stats(self):
        solution = solve_milp(knapsack())
        stats = solution.stats
        assert set(stats) == {u'start', u'end', u'duration', u'nodes', u'lp_solves',
                              u'components', u'distinct_components', u'cache_hits'}
        assert stats[u'duration'] == (stats[u'end'] - stats[u'start']).total_seconds()
        assert stats[u'nodes'] == stats[u'lp_solves']


@pytest.mark.parametrize(u'seed', range(30))
def test_against_brute_force(seed):
    rng = random.Random(seed)
    continuity = rng.choice([Continuity.RIGHT, Continuity.LEFT])
    functions = [random_function(rng, continuity, rng.randint(2, 3)) for _ in range(2)]
    incremental = MethodTag.INCR_RIGHT if continuity is Continuity.RIGHT else \
        MethodTag.INCR_LEFT
    method = rng.choice([MethodTag.CC_DISC, incremental])
    sense = rng.choice([Sense.MIN, Sense.MAX])
    model = separable_sum(functions, method, sense)
    solution = solve_milp(model)
    assert solution.status is MilpStatus.OPTIMAL
    assert solution.objective == pytest.approx(brute_force(model), abs=1e-8)
    assert model.max_violation(solution.values) <= 1e-6

    # the relaxation bounds the optimum from the side the sense favours
    relaxed = solve_lp(relax(model)).objective
    if sense is Sense.MAX:
        assert relaxed >= solution.objective - 1e-8
    else:
        assert relaxed <= solution.objective + 1e-8


@pytest.mark.parametrize(u'seed', range(50))
def test_incremental_root_is_integral(seed):
    # no branching is needed when the relaxation has integral vertices
    rng = random.Random(seed)
    continuity = rng.choice([Continuity.CONTINUOUS, Continuity.RIGHT, Continuity.LEFT])
    f = random_function(rng, continuity, rng.randint(2, 4))
    sense = rng.choice([Sense.MIN, Sense.MAX])
    model = separable_sum([f], incremental_for(f).method_tag, sense)
    solution = solve_milp(model)
    assert solution.status is MilpStatus.OPTIMAL
    assert solution.nodes == 1
    assert solution.objective == pytest.approx(solve_lp(relax(model)).objective)


@pytest.mark.parametrize(u'seed', range(6))
def test_random_knapsacks(seed):
    rng = random.Random(seed)
    model = Model()
    items = [model.add_variable(kind=VariableKind.BINARY) for _ in range(6)]
    for _ in range(2):
        model.add_constraint(LinearConstraint(
            [(rng.randint(1, 9), item) for item in items], Relation.LE, rng.randint(8, 20)
        ))
    model.set_objective(
        LinearExpression([(rng.randint(1, 9), item) for item in items]), Sense.MAX
    )
    solution = solve_milp(model)
    assert solution.objective == pytest.approx(brute_force(model))


class TestSignals(object):

    def test_node_signal(self):
        model = separable_sum([right_function()], MethodTag.INCR_RIGHT, Sense.MAX)
        solver = BranchAndBound(model)
        mock = MagicMock(spec=lambda *args, **kwargs: None)
        solver.node_signal.connect(mock)
        solver.solve()
        assert mock.call_args_list == [
            # the bound excludes the objective constant
            call(solver, node=1, bound=pytest.approx(2.5), status=LpStatus.OPTIMAL)
        ]

    def test_incumbent_signal(self):
        solver = BranchAndBound(knapsack())
        mock = MagicMock(spec=lambda *args, **kwargs: None)
        solver.incumbent_signal.connect(mock)
        solution = solver.solve()
        assert mock.call_count >= 1
        last = mock.call_args_list[-1]
        assert last == call(solver, objective=pytest.approx(9), node=last[1][u'node'],
                            component=0)
        assert last[1][u'node'] <= solution.nodes

    def test_finish_signal(self):
        solver = BranchAndBound(half_model())
        mock = MagicMock(spec=lambda *args, **kwargs: None)
        solver.finish_signal.connect(mock)
        solution = solver.solve()
        assert isinstance(solution, MilpSolution)
        assert mock.call_args_list == [call(solver, solution=solution,
                                            stats=solution.stats)]

    def test_node_count_matches_signals(self):
        solver = BranchAndBound(half_model())
        mock = MagicMock(spec=lambda *args, **kwargs: None)
        solver.node_signal.connect(mock)
        solution = solver.solve()
        assert mock.call_count == solution.nodes
        nodes = [c[1][u'node'] for c in mock.call_args_list]
        assert nodes == list(range(1, solution.nodes + 1))
