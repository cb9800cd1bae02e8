#!/usr/bin/env python
# encoding: utf-8

import math
from enum import Enum

from pwlmip.exceptions import ModelError, ModelMismatchError

INFINITY = float(u'inf')


class VariableKind(Enum):
    CONTINUOUS = u'continuous'
    BINARY = u'binary'


class Relation(Enum):
    LE = u'<='
    EQ = u'='
    GE = u'>='


class Sense(Enum):
    MIN = u'min'
    MAX = u'max'


def as_sense(value):
    """
    Converts the given value into a Sense, accepting the enum itself or its value
    ("min"/"max", case insensitive).

    :param value: the value to convert
    :return: a Sense
    """
    if isinstance(value, Sense):
        return value
    try:
        return Sense(value.lower())
    except (AttributeError, ValueError):
        raise ModelError(u'unknown objective sense {!r}'.format(value))


class VarRef(object):
    """
    A handle on a variable in a model. Handles are only valid for the model that issued
    them and the models derived from it through copy and relax.
    """

    __slots__ = (u'token', u'index')

    def __init__(self, token, index):
        self.token = token
        self.index = index

    def __eq__(self, other):
        return (
            isinstance(other, VarRef)
            and self.token is other.token
            and self.index == other.index
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((id(self.token), self.index))

    def __repr__(self):
        return u'VarRef({})'.format(self.index)


class Variable(object):
    def __init__(self, index, name, lower, upper, kind):
        self.index = index
        self.name = name
        self.lower = lower
        self.upper = upper
        self.kind = kind

    @property
    def is_binary(self):
        return self.kind is VariableKind.BINARY

    def key(self):
        return self.name, self.lower, self.upper, self.kind

    def __eq__(self, other):
        return (
            isinstance(other, Variable)
            and self.index == other.index
            and self.key() == other.key()
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return u'Variable({}, {!r}, [{}, {}], {})'.format(
            self.index, self.name, self.lower, self.upper, self.kind.value
        )


class LinearExpression(object):
    """
    A linear expression over variable handles plus a constant. Repeated handles are
    merged and zero coefficients are dropped, the remaining terms keep the order in
    which their handles first appeared.
    """

    def __init__(self, terms=(), constant=0):
        """
        :param terms: an iterable of (coefficient, handle) pairs
        :param constant: the constant term
        """
        self._terms = {}
        for coefficient, handle in terms:
            self._terms[handle] = self._terms.get(handle, 0) + coefficient
        self._terms = {
            handle: coefficient
            for handle, coefficient in self._terms.items()
            if coefficient != 0
        }
        self.constant = constant

    @property
    def terms(self):
        """
        :return: a list of (coefficient, handle) pairs
        """
        return [(coefficient, handle) for handle, coefficient in self._terms.items()]

    def coefficient(self, handle):
        return self._terms.get(handle, 0)

    def handles(self):
        return list(self._terms)

    def without_constant(self):
        return LinearExpression(self.terms)

    def evaluate(self, values):
        """
        Evaluates the expression.

        :param values: a sequence of variable values in the model's variable order
        :return: the value
        """
        return self.constant + sum(
            coefficient * values[handle.index]
            for handle, coefficient in self._terms.items()
        )

    @classmethod
    def sum(cls, expressions):
        """
        Adds up a number of expressions in one pass.

        :param expressions: an iterable of LinearExpressions
        :return: a new LinearExpression
        """
        terms = []
        constant = 0
        for expression in expressions:
            terms.extend(expression.terms)
            constant += expression.constant
        return cls(terms, constant)

    def __add__(self, other):
        return LinearExpression.sum([self, other])

    def __eq__(self, other):
        return (
            isinstance(other, LinearExpression)
            and self.terms == other.terms
            and self.constant == other.constant
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return u'LinearExpression({}, {})'.format(self.terms, self.constant)


class LinearConstraint(object):
    """
    A linear constraint: sum(coefficient * variable) relation rhs. Terms with a zero
    coefficient are dropped, the same handle may not appear twice.
    """

    def __init__(self, terms, relation, rhs, name=None):
        """
        :param terms: an iterable of (coefficient, handle) pairs
        :param relation: a Relation
        :param rhs: the right hand side
        :param name: an optional name for the constraint
        """
        terms = list(terms)
        seen = set()
        for _coefficient, handle in terms:
            if handle in seen:
                raise ModelError(
                    u'variable {} appears more than once in a constraint'.format(handle)
                )
            seen.add(handle)
        self.terms = [
            (coefficient, handle) for coefficient, handle in terms if coefficient != 0
        ]
        self.relation = Relation(relation)
        self.rhs = rhs
        self.name = name

    def key(self):
        return (
            tuple((coefficient, handle.index) for coefficient, handle in self.terms),
            self.relation,
            self.rhs,
        )

    def evaluate(self, values):
        """
        :param values: a sequence of variable values in the model's variable order
        :return: the left hand side's value
        """
        return sum(coefficient * values[handle.index]
                   for coefficient, handle in self.terms)

    def violation(self, values):
        """
        :param values: a sequence of variable values in the model's variable order
        :return: how far the values are from satisfying the constraint, 0 if they do
        """
        lhs = self.evaluate(values)
        if self.relation is Relation.LE:
            return max(0, lhs - self.rhs)
        if self.relation is Relation.GE:
            return max(0, self.rhs - lhs)
        return abs(lhs - self.rhs)

    def __eq__(self, other):
        return isinstance(other, LinearConstraint) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return u'LinearConstraint({}, {}, {})'.format(
            self.key()[0], self.relation.value, self.rhs
        )


class Model(object):
    """
    A solver agnostic mixed integer linear program. Variables, constraints and the
    objective are registered during a single owner build phase, after which the model
    can be frozen. Variable insertion order is the canonical order everywhere: exports,
    solution values and polytope coordinates all follow it.
    """

    def __init__(self, name=None):
        """
        :param name: an optional name, used in exports
        """
        self.name = name
        self.variables = []
        self.constraints = []
        self.objective = LinearExpression()
        self.sense = Sense.MIN
        # the formulation fragments built into this model, in build order
        self.fragments = []
        self.frozen = False
        self._token = object()

    def _check_mutable(self):
        if self.frozen:
            raise ModelError(u'the model is frozen and cannot be modified')

    def _check_handle(self, handle):
        if not isinstance(handle, VarRef):
            raise ModelError(u'expected a variable handle, got {!r}'.format(handle))
        if handle.token is not self._token or not 0 <= handle.index < len(self.variables):
            raise ModelMismatchError(
                u'variable handle {} does not belong to this model'.format(handle)
            )

    def _check_bounds(self, lower, upper, kind):
        if math.isnan(lower) or math.isnan(upper):
            raise ModelError(u'variable bounds cannot be NaN')
        if lower > upper:
            raise ModelError(u'lower bound {} exceeds upper bound {}'.format(lower, upper))
        if kind is VariableKind.BINARY and (lower < 0 or upper > 1):
            raise ModelError(u'binary variable bounds must lie within [0, 1]')

    def add_variable(self, name=None, lower=0, upper=INFINITY,
                     kind=VariableKind.CONTINUOUS):
        """
        Adds a variable to the model. Binary variables default to the bounds [0, 1].

        :param name: an optional name, unnamed variables are exported as v{index}
        :param lower: the lower bound, may be -inf
        :param upper: the upper bound, may be inf
        :param kind: the VariableKind (or its string value)
        :return: a handle on the new variable
        """
        self._check_mutable()
        kind = VariableKind(kind)
        if kind is VariableKind.BINARY and lower == 0 and upper == INFINITY:
            upper = 1
        self._check_bounds(lower, upper, kind)
        index = len(self.variables)
        self.variables.append(Variable(index, name, lower, upper, kind))
        return VarRef(self._token, index)

    def variable(self, handle):
        """
        :param handle: the variable's handle
        :return: the Variable object the handle refers to
        """
        self._check_handle(handle)
        return self.variables[handle.index]

    def handle(self, index):
        """
        :param index: a variable index
        :return: the handle of the variable at that index
        """
        if not 0 <= index < len(self.variables):
            raise ModelError(u'no variable at index {}'.format(index))
        return VarRef(self._token, index)

    def handles(self):
        return [VarRef(self._token, index) for index in range(len(self.variables))]

    def set_bounds(self, handle, lower, upper):
        """
        Replaces a variable's bounds.

        :param handle: the variable's handle
        :param lower: the new lower bound
        :param upper: the new upper bound
        """
        self._check_mutable()
        variable = self.variable(handle)
        self._check_bounds(lower, upper, variable.kind)
        variable.lower = lower
        variable.upper = upper

    def add_constraint(self, constraint):
        """
        Adds a constraint to the model.

        :param constraint: a LinearConstraint
        :return: the constraint's id, its position in the model's constraint list
        """
        self._check_mutable()
        for _coefficient, handle in constraint.terms:
            self._check_handle(handle)
        self.constraints.append(constraint)
        return len(self.constraints) - 1

    def replace_constraint(self, constraint_id, constraint):
        """
        Swaps the constraint with the given id for a new one, keeping the id.

        :param constraint_id: the id returned by add_constraint
        :param constraint: the new LinearConstraint
        """
        self._check_mutable()
        if not 0 <= constraint_id < len(self.constraints):
            raise ModelError(u'no constraint with id {}'.format(constraint_id))
        for _coefficient, handle in constraint.terms:
            self._check_handle(handle)
        self.constraints[constraint_id] = constraint

    def set_objective(self, expression, sense=Sense.MIN):
        """
        Sets the objective.

        :param expression: a LinearExpression
        :param sense: the Sense (or "min"/"max")
        """
        self._check_mutable()
        for handle in expression.handles():
            self._check_handle(handle)
        self.objective = expression
        self.sense = as_sense(sense)

    def freeze(self):
        """
        Finalizes the model, any further mutation raises a ModelError.

        :return: the model itself
        """
        self.frozen = True
        return self

    def copy(self):
        """
        Creates a mutable copy of this model. Handles from this model resolve in the
        copy.

        :return: a new Model
        """
        other = Model(self.name)
        other._token = self._token
        other.variables = [
            Variable(v.index, v.name, v.lower, v.upper, v.kind) for v in self.variables
        ]
        other.constraints = list(self.constraints)
        other.objective = self.objective
        other.sense = self.sense
        other.fragments = list(self.fragments)
        return other

    def relax(self):
        """
        Creates the LP relaxation of this model: a copy in which every binary variable
        is continuous with bounds [0, 1]. This model is left untouched.

        :return: a new Model
        """
        relaxed = self.copy()
        for variable in relaxed.variables:
            if variable.is_binary:
                variable.kind = VariableKind.CONTINUOUS
                variable.lower = max(variable.lower, 0)
                variable.upper = min(variable.upper, 1)
        return relaxed

    @property
    def binary_indexes(self):
        return [variable.index for variable in self.variables if variable.is_binary]

    def counts(self):
        """
        :return: a 2-tuple of the number of continuous and binary variables
        """
        binaries = len(self.binary_indexes)
        return len(self.variables) - binaries, binaries

    def max_violation(self, values):
        """
        Returns the largest amount by which the given values violate a constraint or a
        variable bound.

        :param values: the variable values in canonical order
        :return: the violation, 0 if the values are feasible
        """
        violation = 0
        for variable in self.variables:
            value = values[variable.index]
            violation = max(violation, variable.lower - value, value - variable.upper)
        for constraint in self.constraints:
            violation = max(violation, constraint.violation(values))
        return violation

    def __eq__(self, other):
        return (
            isinstance(other, Model)
            and self.variables == other.variables
            and [c.key() for c in self.constraints] == [c.key() for c in other.constraints]
            and [(c, h.index) for c, h in self.objective.terms]
            == [(c, h.index) for c, h in other.objective.terms]
            and self.objective.constant == other.objective.constant
            and self.sense is other.sense
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        continuous, binary = self.counts()
        return u'Model({!r}, {} continuous, {} binary, {} constraints, {})'.format(
            self.name, continuous, binary, len(self.constraints), self.sense.value
        )


def relax(model):
    """
    Returns the LP relaxation of the model, see Model.relax.

    :param model: the Model
    :return: a new Model
    """
    return model.relax()
