#!/usr/bin/env python
# encoding: utf-8

from pwlmip.exceptions import WrongMethodError
from pwlmip.formulations.base import Formulation, Fragment, MethodTag, X_DEFINITION
from pwlmip.functions import Continuity, evaluate
from pwlmip.model import LinearConstraint, LinearExpression, Relation, VariableKind


class ConvexCombinationFormulation(Formulation):
    """
    The convex combination (lambda) method for continuous functions: x is a convex
    combination of two consecutive breakpoints, picked by a single active segment
    binary.
    """

    def __init__(self):
        super(ConvexCombinationFormulation, self).__init__(
            MethodTag.CC_CONT, (Continuity.CONTINUOUS,)
        )

    def _build(self, model, f, namer):
        a = f.breakpoints
        count = f.segment_count
        lower, upper = f.domain
        x = model.add_variable(namer(u'x'), lower=lower, upper=upper)
        lambdas = [model.add_variable(namer(u'lambda', k)) for k in range(count + 1)]
        betas = [
            model.add_variable(namer(u'beta', k), kind=VariableKind.BINARY)
            for k in range(1, count + 1)
        ]

        constraint_ids = [
            # the weights sum to 1
            model.add_constraint(LinearConstraint(
                [(1, weight) for weight in lambdas], Relation.EQ, 1
            )),
            # exactly one segment is active
            model.add_constraint(LinearConstraint(
                [(1, beta) for beta in betas], Relation.EQ, 1
            )),
        ]
        # a weight may only be nonzero if one of the segments either side is active
        for k, weight in enumerate(lambdas):
            adjacent = [betas[j] for j in (k - 1, k) if 0 <= j < count]
            constraint_ids.append(model.add_constraint(LinearConstraint(
                [(1, weight)] + [(-1, beta) for beta in adjacent], Relation.LE, 0
            )))
        x_definition = model.add_constraint(LinearConstraint(
            [(1, x)] + [(-point, weight) for point, weight in zip(a, lambdas)],
            Relation.EQ, 0,
        ))
        constraint_ids.append(x_definition)

        objective = LinearExpression(
            [(evaluate(f, point), weight) for point, weight in zip(a, lambdas)]
        )
        return Fragment(f, self.method_tag, x, lambdas, betas, objective,
                        constraint_ids, {X_DEFINITION: x_definition})


class DiscontinuousConvexCombinationFormulation(Formulation):
    """
    The convex combination method with two weights per segment, one on each of the
    segment's own end points, so that the values either side of a jump are both
    available. Segment k gets the weights lambda_{2k-2} and lambda_{2k-1} and the
    binary beta_k.
    """

    def __init__(self):
        super(DiscontinuousConvexCombinationFormulation, self).__init__(
            MethodTag.CC_DISC, (Continuity.RIGHT, Continuity.LEFT)
        )

    def check(self, f):
        if f.continuity is Continuity.CONTINUOUS:
            raise WrongMethodError(
                u'{} is meant for discontinuous functions, use {} for continuous ones as '
                u'it needs fewer variables'.format(self.name, MethodTag.CC_CONT.value)
            )
        super(DiscontinuousConvexCombinationFormulation, self).check(f)

    def _build(self, model, f, namer):
        count = f.segment_count
        lower, upper = f.domain
        x = model.add_variable(namer(u'x'), lower=lower, upper=upper)
        lambdas = [model.add_variable(namer(u'lambda', k)) for k in range(2 * count)]
        betas = [
            model.add_variable(namer(u'beta', k), kind=VariableKind.BINARY)
            for k in range(1, count + 1)
        ]

        constraint_ids = []
        x_terms = [(1, x)]
        objective_terms = []
        for k, (left, right, slope, intercept) in enumerate(f.segments(), 1):
            start, end = lambdas[2 * k - 2], lambdas[2 * k - 1]
            # the segment's weights add up to its binary
            constraint_ids.append(model.add_constraint(LinearConstraint(
                [(1, start), (1, end), (-1, betas[k - 1])], Relation.EQ, 0
            )))
            x_terms.extend([(-left, start), (-right, end)])
            # the segment's own end point values, whichever segment owns the breakpoint
            objective_terms.extend([
                (slope * left + intercept, start),
                (slope * right + intercept, end),
            ])
        constraint_ids.append(model.add_constraint(LinearConstraint(
            [(1, beta) for beta in betas], Relation.EQ, 1
        )))
        x_definition = model.add_constraint(LinearConstraint(x_terms, Relation.EQ, 0))
        constraint_ids.append(x_definition)

        return Fragment(f, self.method_tag, x, lambdas, betas,
                        LinearExpression(objective_terms), constraint_ids,
                        {X_DEFINITION: x_definition})


# the convex combination builders, instantiated globally for ease of use
CONVEX_COMBINATION = ConvexCombinationFormulation()
CONVEX_COMBINATION_DISCONTINUOUS = DiscontinuousConvexCombinationFormulation()


def convex_combination_continuous(model, f, index=None):
    """
    Encodes a continuous function with the convex combination method.

    :param model: the Model
    :param f: the continuous PwlFunction
    :param index: the function's index in a separable sum, if any
    :return: the Fragment
    """
    return CONVEX_COMBINATION.build(model, f, index)


def convex_combination_discontinuous(model, f, index=None):
    """
    Encodes a right or left-continuous function with the two weights per segment
    convex combination method.

    :param model: the Model
    :param f: the discontinuous PwlFunction
    :param index: the function's index in a separable sum, if any
    :return: the Fragment
    """
    return CONVEX_COMBINATION_DISCONTINUOUS.build(model, f, index)
