#!/usr/bin/env python
# encoding: utf-8

from pwlmip.formulations.base import (
    FIRST_SEGMENT,
    Formulation,
    Fragment,
    MethodTag,
    X_DEFINITION,
)
from pwlmip.functions import Continuity, jumps
from pwlmip.model import LinearConstraint, LinearExpression, Relation, VariableKind


def add_filling_chain(model, lengths, namer, fill_name, binary_name):
    """
    Adds the filling variables and the binaries enforcing the filling order: the k-th
    variable may only be nonzero once the previous one is full, which is what the k-th
    binary switches on. With l_k the k-th length the rows are

        fill_1 <= l_1
        fill_k >= l_k * beta_k          (k < K)
        fill_k <= l_k * beta_{k-1}      (k > 1)

    and the fill variables are non-negative through their bounds.

    :param model: the Model
    :param lengths: the segment lengths in filling order
    :param namer: the Namer for the new variables
    :param fill_name: the base name of the filling variables
    :param binary_name: the base name of the binaries
    :return: a 4-tuple of the filling handles, the binary handles, the constraint ids
             and the id of the first segment's row
    """
    count = len(lengths)
    fills = [model.add_variable(namer(fill_name, k)) for k in range(1, count + 1)]
    betas = [
        model.add_variable(namer(binary_name, k), kind=VariableKind.BINARY)
        for k in range(1, count)
    ]

    first_segment = model.add_constraint(
        LinearConstraint([(1, fills[0])], Relation.LE, lengths[0])
    )
    constraint_ids = [first_segment]
    for k in range(1, count + 1):
        length = lengths[k - 1]
        fill = fills[k - 1]
        if k < count:
            constraint_ids.append(model.add_constraint(LinearConstraint(
                [(1, fill), (-length, betas[k - 1])], Relation.GE, 0
            )))
        if k > 1:
            constraint_ids.append(model.add_constraint(LinearConstraint(
                [(1, fill), (-length, betas[k - 2])], Relation.LE, 0
            )))
    return fills, betas, constraint_ids, first_segment


class IncrementalFormulation(Formulation):
    """
    The incremental (delta) method: x = a_0 + sum(y_k) where y_k is how much of segment
    k is used and the segments fill up in order. The objective adds the jump at a_k
    whenever beta_k switches on, which is zero everywhere for continuous functions.
    """

    def __init__(self, method_tag=MethodTag.INCR_RIGHT,
                 accepts=(Continuity.CONTINUOUS, Continuity.RIGHT)):
        super(IncrementalFormulation, self).__init__(method_tag, accepts)

    def _build(self, model, f, namer):
        a = f.breakpoints
        lower, upper = f.domain
        x = model.add_variable(namer(u'x'), lower=lower, upper=upper)
        lengths = [right - left for left, right, _m, _d in f.segments()]
        ys, betas, constraint_ids, first_segment = add_filling_chain(
            model, lengths, namer, u'y', u'beta'
        )
        # x = a_0 + sum(y_k)
        x_definition = model.add_constraint(LinearConstraint(
            [(1, x)] + [(-1, y) for y in ys], Relation.EQ, a[0]
        ))
        deltas = jumps(f).deltas
        objective = LinearExpression(
            [(slope, y) for slope, y in zip(f.slopes, ys)]
            + [(delta, beta) for delta, beta in zip(deltas, betas)],
            f.segment_value(1, a[0]),
        )
        return Fragment(
            f, self.method_tag, x, ys, betas, objective,
            sorted([x_definition] + constraint_ids),
            {FIRST_SEGMENT: first_segment, X_DEFINITION: x_definition},
        )


class LeftIncrementalFormulation(Formulation):
    """
    The mirrored incremental method for left-continuous functions: x = a_K - sum(y~_k)
    where y~_k is how much of segment K - k + 1 is removed, walking down from a_K. The
    k-th jump sits at a_{K-k}.
    """

    def __init__(self, method_tag=MethodTag.INCR_LEFT,
                 accepts=(Continuity.CONTINUOUS, Continuity.LEFT)):
        super(LeftIncrementalFormulation, self).__init__(method_tag, accepts)

    def _build(self, model, f, namer):
        a = f.breakpoints
        count = f.segment_count
        lower, upper = f.domain
        x = model.add_variable(namer(u'x'), lower=lower, upper=upper)
        lengths = [a[count - k + 1] - a[count - k] for k in range(1, count + 1)]
        ys, betas, constraint_ids, first_segment = add_filling_chain(
            model, lengths, namer, u'ytilde', u'betatilde'
        )
        # x = a_K - sum(y~_k)
        x_definition = model.add_constraint(LinearConstraint(
            [(1, x)] + [(1, y) for y in ys], Relation.EQ, a[count]
        ))
        deltas = jumps(f).deltas
        objective = LinearExpression(
            [(-f.slopes[count - k], y) for k, y in enumerate(ys, 1)]
            + [(delta, beta) for delta, beta in zip(deltas, betas)],
            f.segment_value(count, a[count]),
        )
        return Fragment(
            f, self.method_tag, x, ys, betas, objective,
            sorted([x_definition] + constraint_ids),
            {FIRST_SEGMENT: first_segment, X_DEFINITION: x_definition},
        )


# the incremental builders, instantiated globally for ease of use
INCREMENTAL_CONTINUOUS = IncrementalFormulation(MethodTag.INCR_CONT,
                                                (Continuity.CONTINUOUS,))
INCREMENTAL_RIGHT = IncrementalFormulation()
INCREMENTAL_LEFT = LeftIncrementalFormulation()


def incremental_continuous(model, f, index=None):
    """
    Encodes a continuous function with the incremental method.

    :param model: the Model
    :param f: the continuous PwlFunction
    :param index: the function's index in a separable sum, if any
    :return: the Fragment
    """
    return INCREMENTAL_CONTINUOUS.build(model, f, index)


def incremental_right_continuous(model, f, index=None):
    """
    Encodes a right-continuous (or continuous) function with the incremental method,
    adding the jump at a_k to the objective when beta_k is 1.

    :param model: the Model
    :param f: the PwlFunction
    :param index: the function's index in a separable sum, if any
    :return: the Fragment
    """
    return INCREMENTAL_RIGHT.build(model, f, index)


def incremental_left_continuous(model, g, index=None):
    """
    Encodes a left-continuous (or continuous) function with the mirrored incremental
    method.

    :param model: the Model
    :param g: the PwlFunction
    :param index: the function's index in a separable sum, if any
    :return: the Fragment
    """
    return INCREMENTAL_LEFT.build(model, g, index)


def incremental_for(f):
    """
    Picks the incremental builder matching the function's continuity class.

    :param f: the PwlFunction
    :return: a Formulation
    """
    if f.continuity is Continuity.RIGHT:
        return INCREMENTAL_RIGHT
    if f.continuity is Continuity.LEFT:
        return INCREMENTAL_LEFT
    return INCREMENTAL_CONTINUOUS
