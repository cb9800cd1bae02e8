#!/usr/bin/env python
# encoding: utf-8

from enum import Enum

import numpy as np

from pwlmip.config import resolve
from pwlmip.exceptions import SolverError
from pwlmip.model import Relation, Sense

AT_LOWER = 0
AT_UPPER = 1
BASIC = 2


class LpStatus(Enum):
    OPTIMAL = u'optimal'
    INFEASIBLE = u'infeasible'
    UNBOUNDED = u'unbounded'


class BasisStatus(Enum):
    BASIC = u'basic'
    AT_LOWER = u'at_lower'
    AT_UPPER = u'at_upper'


class LpSolution(object):
    """
    The result of an LP solve. The objective includes the model's constant and is in
    the model's sense, values and basis follow the model's variable order.
    """

    def __init__(self, status, objective=None, values=None, basis=None, iterations=0):
        """
        :param status: the LpStatus
        :param objective: the objective value, None when infeasible and +/-inf when
                          unbounded
        :param values: a list of variable values (None unless optimal)
        :param basis: a list of BasisStatus values (None unless optimal)
        :param iterations: the number of simplex iterations used over both phases
        """
        self.status = status
        self.objective = objective
        self.values = values
        self.basis = basis
        self.iterations = iterations

    @property
    def is_optimal(self):
        return self.status is LpStatus.OPTIMAL

    def __repr__(self):
        return u'LpSolution({}, objective={})'.format(self.status.value, self.objective)


class _Tableau(object):
    """
    The working state of a bounded-variable primal simplex run on a problem in the form

        A z = b, 0 <= z <= caps

    where b >= 0. The tableau holds B^-1 A for the current basis B.
    """

    def __init__(self, matrix, rhs, caps, basis, config):
        self.matrix = matrix
        self.rhs = rhs
        self.tableau = matrix.copy()
        self.caps = caps
        self.basis = list(basis)
        self.values = rhs.copy()
        self.state = np.full(matrix.shape[1], AT_LOWER, dtype=int)
        self.state[self.basis] = BASIC
        self.config = config
        self.iterations = 0
        self.bland = False

    def nonbasic_values(self):
        values = np.zeros(len(self.caps))
        at_upper = self.state == AT_UPPER
        values[at_upper] = self.caps[at_upper]
        return values

    def objective(self, costs):
        return float(costs[self.basis] @ self.values) + float(
            costs @ self.nonbasic_values()
        )

    def pivot(self, row, column):
        tableau = self.tableau
        tableau[row] /= tableau[row, column]
        factors = tableau[:, column].copy()
        factors[row] = 0
        tableau -= np.outer(factors, tableau[row])

    def run(self, costs, limit):
        """
        Runs simplex iterations until the costs are minimized or unboundedness is
        detected.

        :param costs: the cost vector
        :param limit: the maximum number of iterations
        :return: True if an optimum was found, False if the problem is unbounded
        """
        config = self.config
        degenerate_run = 0
        taken = 0
        while True:
            if self.basis:
                reduced = costs - costs[self.basis] @ self.tableau
            else:
                reduced = costs.copy()
            can_increase = (
                (self.state == AT_LOWER)
                & (reduced < -config.optimality_tolerance)
                & (self.caps > 0)
            )
            can_decrease = (self.state == AT_UPPER) & (reduced > config.optimality_tolerance)
            candidates = can_increase | can_decrease
            if not candidates.any():
                return True

            if taken >= limit:
                raise SolverError(
                    u'the simplex method did not converge within {} iterations'.format(limit)
                )
            taken += 1
            self.iterations += 1

            if self.bland:
                entering = int(np.flatnonzero(candidates)[0])
            else:
                entering = int(np.argmax(np.where(candidates, np.abs(reduced), -1)))
            direction = 1 if self.state[entering] == AT_LOWER else -1
            column = direction * self.tableau[:, entering]

            step, row = self._ratio_test(column)
            flip = self.caps[entering]
            if step == np.inf and flip == np.inf:
                return False

            if flip <= step:
                # the entering variable reaches its other bound first
                self.values -= flip * column
                self.state[entering] = AT_UPPER if direction == 1 else AT_LOWER
                step = flip
            else:
                start = 0 if direction == 1 else self.caps[entering]
                self.values -= step * column
                leaving = self.basis[row]
                self.state[leaving] = AT_LOWER if column[row] > 0 else AT_UPPER
                self.values[row] = start + direction * step
                self.basis[row] = entering
                self.state[entering] = BASIC
                self.pivot(row, entering)

            np.maximum(self.values, 0, out=self.values)
            if step <= config.feasibility_tolerance:
                degenerate_run += 1
                if degenerate_run >= config.degenerate_pivot_limit:
                    # anti-cycling, for the rest of this solve
                    self.bland = True
            else:
                degenerate_run = 0

    def _ratio_test(self, column):
        """
        Finds how far the entering variable can move before a basic variable hits one
        of its bounds.

        :return: a 2-tuple of the step and the blocking row (None if nothing blocks)
        """
        if not self.basis:
            return np.inf, None
        tolerance = self.config.pivot_tolerance
        basic_caps = self.caps[self.basis]
        steps = np.full(len(self.basis), np.inf)
        decreasing = column > tolerance
        steps[decreasing] = self.values[decreasing] / column[decreasing]
        increasing = (column < -tolerance) & np.isfinite(basic_caps)
        steps[increasing] = (
            (basic_caps[increasing] - self.values[increasing]) / -column[increasing]
        )
        np.maximum(steps, 0, out=steps)
        step = steps.min()
        if step == np.inf:
            return step, None
        ties = np.flatnonzero(steps <= step + 1e-12)
        if self.bland:
            row = min(ties, key=lambda i: self.basis[i])
        else:
            row = ties[np.argmax(np.abs(column[ties]))]
        return step, int(row)

    def drive_out(self, artificial_start):
        """
        Pivots the artificial variables left in the basis (all at zero) out of it. Rows
        in which no other variable can replace the artificial are redundant and are
        dropped.
        """
        row = 0
        while row < len(self.basis):
            if self.basis[row] < artificial_start:
                row += 1
                continue
            entries = np.abs(self.tableau[row, :artificial_start])
            entries[self.state[:artificial_start] == BASIC] = 0
            column = int(np.argmax(entries)) if artificial_start else 0
            if artificial_start and entries[column] > self.config.pivot_tolerance:
                self.state[self.basis[row]] = AT_LOWER
                self.values[row] = self.caps[column] if self.state[column] == AT_UPPER else 0
                self.basis[row] = column
                self.state[column] = BASIC
                self.pivot(row, column)
                row += 1
            else:
                self._drop_row(row)

    def _drop_row(self, row):
        self.tableau = np.delete(self.tableau, row, axis=0)
        self.matrix = np.delete(self.matrix, row, axis=0)
        self.rhs = np.delete(self.rhs, row)
        self.values = np.delete(self.values, row)
        self.state[self.basis[row]] = AT_LOWER
        del self.basis[row]

    def drop_columns(self, start):
        self.tableau = self.tableau[:, :start]
        self.matrix = self.matrix[:, :start]
        self.caps = self.caps[:start]
        self.state = self.state[:start]

    def refine(self):
        """
        Recomputes the basic values from the original rows to shed the rounding error
        accumulated by the pivots.
        """
        if not self.basis:
            return
        nonbasic = self.nonbasic_values()
        try:
            self.values = np.linalg.solve(
                self.matrix[:, self.basis], self.rhs - self.matrix @ nonbasic
            )
        except np.linalg.LinAlgError:
            pass

    def column_values(self):
        values = self.nonbasic_values()
        values[self.basis] = self.values
        return values


class LpProblem(object):
    """
    The array form of a model's LP relaxation, binaries being treated as continuous
    variables within their bounds. A problem can be solved repeatedly under different
    variable bounds, which is how branch-and-bound uses it.
    """

    def __init__(self, matrix, relations, rhs, lower, upper, costs, constant=0,
                 sense=Sense.MIN, config=None):
        """
        :param matrix: the constraint matrix, one row per constraint
        :param relations: the Relation of each row
        :param rhs: the right hand sides
        :param lower: the variable lower bounds (may be -inf)
        :param upper: the variable upper bounds (may be inf)
        :param costs: the objective coefficients
        :param constant: the objective constant
        :param sense: the objective Sense
        :param config: the config object
        """
        self.matrix = np.asarray(matrix, dtype=float).reshape(len(relations), len(lower))
        self.relations = list(relations)
        self.rhs = np.asarray(rhs, dtype=float)
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.costs = np.asarray(costs, dtype=float)
        self.constant = float(constant)
        self.sense = sense
        self.config = resolve(config)

    @classmethod
    def from_model(cls, model, config=None):
        """
        :param model: the Model
        :param config: the config object
        :return: a new LpProblem
        """
        variables = model.variables
        matrix = np.zeros((len(model.constraints), len(variables)))
        for row, constraint in enumerate(model.constraints):
            for coefficient, handle in constraint.terms:
                matrix[row, handle.index] = float(coefficient)
        costs = np.zeros(len(variables))
        for coefficient, handle in model.objective.terms:
            costs[handle.index] = float(coefficient)
        return cls(
            matrix,
            [constraint.relation for constraint in model.constraints],
            [float(constraint.rhs) for constraint in model.constraints],
            [float(variable.lower) for variable in variables],
            [float(variable.upper) for variable in variables],
            costs,
            float(model.objective.constant),
            model.sense,
            config,
        )

    @property
    def variable_count(self):
        return len(self.lower)

    def solve(self, lower=None, upper=None):
        """
        Solves the LP with the two-phase bounded-variable primal simplex method.

        :param lower: optional lower bounds replacing the problem's own
        :param upper: optional upper bounds replacing the problem's own
        :return: an LpSolution
        """
        config = self.config
        lower = self.lower if lower is None else np.asarray(lower, dtype=float)
        upper = self.upper if upper is None else np.asarray(upper, dtype=float)
        if np.any(lower > upper + config.feasibility_tolerance):
            return LpSolution(LpStatus.INFEASIBLE)
        upper = np.maximum(upper, lower)

        # substitute every variable by columns with a zero lower bound
        variables, signs, offsets, caps = [], [], np.zeros(len(lower)), []
        for index, (low, high) in enumerate(zip(lower, upper)):
            if np.isfinite(low):
                offsets[index] = low
                variables.append(index)
                signs.append(1.0)
                caps.append(high - low)
            elif np.isfinite(high):
                offsets[index] = high
                variables.append(index)
                signs.append(-1.0)
                caps.append(np.inf)
            else:
                variables.extend([index, index])
                signs.extend([1.0, -1.0])
                caps.extend([np.inf, np.inf])
        signs = np.array(signs)
        structural = self.matrix[:, variables] * signs
        costs = self.costs[variables] * signs
        if self.sense is Sense.MAX:
            costs = -costs
        rhs = self.rhs - self.matrix @ offsets

        # drop empty rows, checking they hold
        rows = []
        for row, relation in enumerate(self.relations):
            if np.any(self.matrix[row] != 0):
                rows.append(row)
                continue
            value = rhs[row]
            tolerance = config.feasibility_tolerance
            if ((relation is Relation.LE and value < -tolerance)
                    or (relation is Relation.GE and value > tolerance)
                    or (relation is Relation.EQ and abs(value) > tolerance)):
                return LpSolution(LpStatus.INFEASIBLE)
        structural = structural[rows]
        rhs = rhs[rows]
        relations = [self.relations[row] for row in rows]

        # one slack per inequality
        row_count = len(rows)
        slack_rows = [row for row, relation in enumerate(relations)
                      if relation is not Relation.EQ]
        slacks = np.zeros((row_count, len(slack_rows)))
        for column, row in enumerate(slack_rows):
            slacks[row, column] = 1.0 if relations[row] is Relation.LE else -1.0
        matrix = np.hstack([structural, slacks])
        caps = np.concatenate([np.array(caps, dtype=float), np.full(len(slack_rows), np.inf)])
        costs = np.concatenate([costs, np.zeros(len(slack_rows))])

        # make the right hand side non-negative
        flip = rhs < 0
        matrix[flip] *= -1
        rhs = np.abs(rhs)

        # slacks with a +1 entry start in the basis, the other rows get an artificial
        basis = [None] * row_count
        structural_count = structural.shape[1]
        for column, row in enumerate(slack_rows):
            if matrix[row, structural_count + column] > 0:
                basis[row] = structural_count + column
        artificial_rows = [row for row in range(row_count) if basis[row] is None]
        column_count = matrix.shape[1]
        artificials = np.zeros((row_count, len(artificial_rows)))
        for offset, row in enumerate(artificial_rows):
            artificials[row, offset] = 1.0
            basis[row] = column_count + offset

        tableau = _Tableau(
            np.hstack([matrix, artificials]),
            rhs,
            np.concatenate([caps, np.full(len(artificial_rows), np.inf)]),
            basis,
            config,
        )
        limit = config.iteration_limit or 50 * (row_count + tableau.matrix.shape[1])

        if artificial_rows:
            phase_one = np.concatenate([np.zeros(column_count),
                                        np.ones(len(artificial_rows))])
            tableau.run(phase_one, limit)
            infeasibility = tableau.objective(phase_one)
            if infeasibility > config.feasibility_tolerance * (1 + np.abs(rhs).max()):
                return LpSolution(LpStatus.INFEASIBLE, iterations=tableau.iterations)
            tableau.drive_out(column_count)
            tableau.drop_columns(column_count)

        if not tableau.run(costs, limit):
            infinite = np.inf if self.sense is Sense.MAX else -np.inf
            return LpSolution(LpStatus.UNBOUNDED, infinite, iterations=tableau.iterations)
        tableau.refine()

        column_values = tableau.column_values()
        values = offsets.copy()
        np.add.at(values, variables, signs * column_values[:len(variables)])
        objective = float(self.costs @ values) + self.constant

        # free variables out of the basis sit at zero, reported as at their lower bound
        bounded = np.isfinite(lower) | np.isfinite(upper)
        basis_status = [BasisStatus.AT_LOWER] * len(lower)
        for column, index in enumerate(variables):
            state = tableau.state[column]
            if state == BASIC:
                basis_status[index] = BasisStatus.BASIC
            elif (basis_status[index] is not BasisStatus.BASIC and bounded[index]
                  and caps[column] > 0):
                at_upper = (state == AT_UPPER) == (signs[column] > 0)
                if at_upper:
                    basis_status[index] = BasisStatus.AT_UPPER
        return LpSolution(
            LpStatus.OPTIMAL,
            objective,
            [float(value) for value in values],
            basis_status,
            tableau.iterations,
        )


def solve_lp(model, config=None):
    """
    Solves the model's LP relaxation.

    :param model: the Model, normally already relaxed
    :param config: the config object
    :return: an LpSolution
    """
    return LpProblem.from_model(model, config).solve()
