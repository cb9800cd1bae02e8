#!/usr/bin/env python
# encoding: utf-8

import copy
import heapq
import math
from datetime import datetime, timedelta
from enum import Enum

import numpy as np
from blinker import Signal

from pwlmip.config import resolve
from pwlmip.exceptions import SolverError
from pwlmip.model import Sense
from pwlmip.solving.components import decompose, whole
from pwlmip.solving.simplex import LpProblem, LpStatus


class MilpStatus(Enum):
    OPTIMAL = u'optimal'
    INFEASIBLE = u'infeasible'
    UNBOUNDED = u'unbounded'
    # a node or time limit was hit after a solution was found
    FEASIBLE = u'feasible'
    # a node or time limit was hit before any solution was found
    NO_SOLUTION = u'no_solution'


class MilpSolution(object):
    """
    The result of a branch-and-bound solve. The objective includes the model's constant
    and is in the model's sense.
    """

    def __init__(self, status, objective=None, values=None, stats=None,
                 limit_reached=False):
        """
        :param status: the MilpStatus
        :param objective: the objective value of the best solution found, if any
        :param values: the variable values of the best solution found, if any
        :param stats: the stats dict of the solve
        :param limit_reached: whether a node or time limit stopped the search
        """
        self.status = status
        self.objective = objective
        self.values = values
        self.stats = stats or {}
        self.limit_reached = limit_reached

    @property
    def nodes(self):
        return self.stats.get(u'nodes', 0)

    @property
    def has_solution(self):
        return self.values is not None

    def __repr__(self):
        return u'MilpSolution({}, objective={})'.format(self.status.value, self.objective)


class _ComponentResult(object):
    def __init__(self, status, objective=None, values=None, limit_reached=False):
        self.status = status
        self.objective = objective
        self.values = values
        self.limit_reached = limit_reached


class BranchAndBound(object):
    """
    A best-bound branch-and-bound solver over the binary variables of a model, run as
    a single search tree. With the config's decompose option the model is first split
    into its independent components, each of which gets its own search tree, and
    components with identical data are only solved once.
    """

    def __init__(self, model, config=None):
        """
        :param model: the Model to solve
        :param config: the config object
        """
        self.model = model
        self.config = resolve(config)

        # setup some signals so that the search can be tracked
        self.node_signal = Signal(
            doc=u'''Triggered after the LP relaxation of a node is solved. The kwargs
                    passed when this signal is sent are "node", "bound" and "status"
                    which hold the number of nodes explored so far (this one included),
                    the node's LP objective (None if the LP has no optimum) and the
                    LP's status respectively.'''
        )
        self.incumbent_signal = Signal(
            doc=u'''Triggered when a better integral solution is found. The kwargs
                    passed when this signal is sent are "objective", "node" and
                    "component" which hold the solution's objective for its component
                    (in the model's sense, constant excluded), the node number and the
                    component number respectively.'''
        )
        self.finish_signal = Signal(
            doc=u'''Triggered when the solve is complete. The kwargs passed when this
                    signal is sent are "solution" and "stats" which hold the
                    MilpSolution and the stats dict respectively.'''
        )

        self.start = None
        self.nodes = 0
        self.lp_solves = 0

    def _limit_reached(self):
        config = self.config
        if config.node_limit is not None and self.nodes >= config.node_limit:
            return True
        if config.time_limit is not None:
            return datetime.now() - self.start >= timedelta(seconds=config.time_limit)
        return False

    def get_stats(self, components, distinct, cache_hits):
        """
        Returns the statistics of a completed solve in the form of a dict.

        :param components: the number of components the model split into
        :param distinct: the number of components actually solved
        :param cache_hits: the number of components reusing another's solution
        :return: a dict
        """
        end = datetime.now()
        return {
            u'start': self.start,
            u'end': end,
            u'duration': (end - self.start).total_seconds(),
            u'nodes': self.nodes,
            u'lp_solves': self.lp_solves,
            u'components': components,
            u'distinct_components': distinct,
            u'cache_hits': cache_hits,
        }

    def solve(self):
        """
        Solves the model.

        :return: a MilpSolution
        """
        self.start = datetime.now()
        self.nodes = 0
        self.lp_solves = 0
        model = self.model

        components = decompose(model) if self.config.decompose else whole(model)
        costs = {handle.index: coefficient
                 for coefficient, handle in model.objective.terms}
        # the gap is shared out between the components so the total stays within it
        gap = self.config.gap_tolerance / max(len(components), 1)

        cache = {}
        cache_hits = 0
        values = [0.0] * len(model.variables)
        objective = float(model.objective.constant)
        statuses = set()
        limit_reached = False
        for number, component in enumerate(components):
            signature = component.signature(model, costs)
            result = cache.get(signature)
            if result is None:
                result = self._solve_component(component.submodel(model), gap, number)
                if not result.limit_reached:
                    cache[signature] = result
            else:
                cache_hits += 1
            statuses.add(result.status)
            limit_reached = limit_reached or result.limit_reached
            if result.status in (MilpStatus.INFEASIBLE, MilpStatus.UNBOUNDED):
                break
            if result.values is not None:
                objective += result.objective
                for index, value in zip(component.variables, result.values):
                    values[index] = value

        if MilpStatus.INFEASIBLE in statuses:
            solution = MilpSolution(MilpStatus.INFEASIBLE)
        elif MilpStatus.UNBOUNDED in statuses:
            infinite = math.inf if model.sense is Sense.MAX else -math.inf
            solution = MilpSolution(MilpStatus.UNBOUNDED, infinite)
        elif MilpStatus.NO_SOLUTION in statuses:
            solution = MilpSolution(MilpStatus.NO_SOLUTION, limit_reached=True)
        elif MilpStatus.FEASIBLE in statuses:
            solution = MilpSolution(MilpStatus.FEASIBLE, objective, values,
                                    limit_reached=True)
        else:
            solution = MilpSolution(MilpStatus.OPTIMAL, objective, values,
                                    limit_reached=limit_reached)
        solution.stats = self.get_stats(len(components), len(components) - cache_hits,
                                        cache_hits)
        self.finish_signal.send(self, solution=solution, stats=solution.stats)
        return solution

    def _solve_component(self, model, gap, number):
        """
        Runs the search on a single component.

        :param model: the component's Model
        :param gap: the absolute gap at which a subtree is no longer worth exploring
        :param number: the component's number, for the signals
        :return: a _ComponentResult
        """
        config = self.config
        problem = LpProblem.from_model(model, config)
        binaries = np.array(model.binary_indexes, dtype=int)
        # the search minimizes, maximization objectives are negated
        sign = -1 if model.sense is Sense.MAX else 1

        incumbent = None
        incumbent_values = None
        limit_reached = False
        sequence = 0
        heap = [(-math.inf, 0, sequence, problem.lower.copy(), problem.upper.copy())]
        while heap:
            if self._limit_reached():
                limit_reached = True
                break
            bound, negative_depth, _sequence, lower, upper = heapq.heappop(heap)
            if incumbent is not None and bound >= incumbent - gap:
                # best-bound order: nothing left can improve the incumbent
                break

            solution = problem.solve(lower, upper)
            self.lp_solves += 1
            self.nodes += 1
            self.node_signal.send(self, node=self.nodes, bound=solution.objective,
                                  status=solution.status)
            if solution.status is LpStatus.UNBOUNDED:
                if negative_depth == 0:
                    return _ComponentResult(MilpStatus.UNBOUNDED)
                raise SolverError(u'a branch is unbounded while the root is not')
            if solution.status is LpStatus.INFEASIBLE:
                continue
            value = sign * solution.objective
            if incumbent is not None and value >= incumbent - gap:
                continue

            node_values = np.array(solution.values)
            branch = self._branching_variable(node_values, binaries)
            if branch is None:
                node_values[binaries] = np.round(node_values[binaries])
                incumbent = value
                incumbent_values = [float(v) for v in node_values]
                self.incumbent_signal.send(self, objective=solution.objective,
                                           node=self.nodes, component=number)
                continue

            for low, high in ((0, 0), (1, 1)):
                child_lower = lower.copy()
                child_upper = upper.copy()
                child_lower[branch] = max(child_lower[branch], low)
                child_upper[branch] = min(child_upper[branch], high)
                sequence += 1
                heapq.heappush(heap, (value, negative_depth - 1, sequence, child_lower,
                                      child_upper))

        if incumbent is None:
            status = MilpStatus.NO_SOLUTION if limit_reached else MilpStatus.INFEASIBLE
            return _ComponentResult(status, limit_reached=limit_reached)
        status = MilpStatus.FEASIBLE if limit_reached else MilpStatus.OPTIMAL
        return _ComponentResult(status, sign * incumbent, incumbent_values, limit_reached)

    def _branching_variable(self, values, binaries):
        """
        Picks the most fractional binary, the lowest index winning ties.

        :param values: the node's LP values
        :param binaries: the indexes of the binary variables
        :return: the variable index or None if every binary is integral
        """
        if not len(binaries):
            return None
        binary_values = values[binaries]
        distances = np.abs(binary_values - np.round(binary_values))
        best = int(np.argmax(distances))
        if distances[best] <= self.config.integrality_tolerance:
            return None
        return int(binaries[best])


def solve_milp(model, config=None, gap_tol=None, node_limit=None, time_limit=None):
    """
    Solves the model with branch-and-bound.

    :param model: the Model
    :param config: the config object
    :param gap_tol: overrides the config's gap tolerance
    :param node_limit: overrides the config's node limit
    :param time_limit: overrides the config's time limit (seconds)
    :return: a MilpSolution
    """
    config = resolve(config)
    overrides = {u'gap_tolerance': gap_tol, u'node_limit': node_limit,
                 u'time_limit': time_limit}
    if any(value is not None for value in overrides.values()):
        config = copy.copy(config)
        for name, value in overrides.items():
            if value is not None:
                setattr(config, name, value)
    return BranchAndBound(model, config).solve()
