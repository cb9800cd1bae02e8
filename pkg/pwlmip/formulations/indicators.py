#!/usr/bin/env python
# encoding: utf-8

from pwlmip.exceptions import UnsupportedVariantError
from pwlmip.formulations.base import (
    FIRST_SEGMENT,
    Fragment,
    IndicatorVariant,
    MethodTag,
    X_DEFINITION,
    as_indicator_variant,
)
from pwlmip.model import LinearConstraint, LinearExpression, Relation, VariableKind


def anchor(fragment):
    """
    Returns the breakpoint the fragment's x definition starts from: a_K for the
    mirrored left-continuous encoding, a_0 otherwise.

    :param fragment: an incremental Fragment
    :return: the breakpoint value
    """
    breakpoints = fragment.function.breakpoints
    if fragment.method_tag is MethodTag.INCR_LEFT:
        return breakpoints[-1]
    return breakpoints[0]


def with_binary_indicator(model, fragment, variant):
    """
    Adds a binary indicator alpha to an incremental fragment so that alpha = 0 switches
    the function off. Every variant scales the first segment's bound by alpha, after
    which:

        - FIM leaves the x definition and the objective alone
        - PIM scales the x definition's constant and the objective constant by alpha
        - PIM_PRIME leaves both alone and adds x >= a_0 * alpha

    The x variable's bounds are widened to include 0. The fragment is replaced in the
    model's fragment list by the returned one.

    :param model: the Model the fragment was built in
    :param fragment: the Fragment
    :param variant: an IndicatorVariant (or its string value)
    :return: a new Fragment carrying the indicator
    """
    variant = as_indicator_variant(variant)
    if not fragment.method_tag.is_incremental:
        raise UnsupportedVariantError(
            u'binary indicators are only available for incremental fragments, not {}'.format(
                fragment.method_tag.value
            )
        )
    if fragment.indicator is not None:
        raise UnsupportedVariantError(u'the fragment already has an indicator')

    f = fragment.function
    lower, upper = f.domain
    start = anchor(fragment)

    alpha = model.add_variable(_indicator_name(model, fragment), kind=VariableKind.BINARY)
    model.set_bounds(fragment.x, min(0, lower), max(0, upper))

    # y_1 <= (a_1 - a_0) * alpha
    first_segment_id = fragment.roles[FIRST_SEGMENT]
    first_segment = model.constraints[first_segment_id]
    (coefficient, first_fill), = first_segment.terms
    model.replace_constraint(first_segment_id, LinearConstraint(
        [(coefficient, first_fill), (-first_segment.rhs, alpha)], Relation.LE, 0
    ))

    constraint_ids = list(fragment.constraints)
    objective = fragment.objective_expr
    if variant is IndicatorVariant.PIM:
        # x = a_0 * alpha + sum(y_k), or x = a_K * alpha - sum(y~_k) when mirrored
        x_definition_id = fragment.roles[X_DEFINITION]
        x_definition = model.constraints[x_definition_id]
        model.replace_constraint(x_definition_id, LinearConstraint(
            x_definition.terms + [(-start, alpha)], Relation.EQ, 0
        ))
        objective = LinearExpression(
            objective.terms + [(objective.constant, alpha)]
        )
    elif variant is IndicatorVariant.PIM_PRIME:
        constraint_ids.append(model.add_constraint(LinearConstraint(
            [(1, fragment.x), (-lower, alpha)], Relation.GE, 0
        )))

    indicated = Fragment(
        f, fragment.method_tag, fragment.x, fragment.aux_continuous,
        fragment.aux_binary, objective, constraint_ids, fragment.roles,
        indicator=alpha, indicator_tag=variant,
    )
    model.fragments = [indicated if existing is fragment else existing
                       for existing in model.fragments]
    return indicated


def _indicator_name(model, fragment):
    """
    Derives alpha's name from x's, so alpha_3 goes with x_3.
    """
    name = model.variable(fragment.x).name
    if name and name.startswith(u'x'):
        return u'alpha' + name[1:]
    return None
