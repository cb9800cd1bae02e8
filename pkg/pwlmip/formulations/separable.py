#!/usr/bin/env python
# encoding: utf-8

from pwlmip.exceptions import InputError, PwlmipError, WrongMethodError
from pwlmip.formulations.base import Formulation, as_indicator_variant
from pwlmip.formulations.indicators import with_binary_indicator
from pwlmip.model import LinearExpression, Model, as_sense


def get_formulation(method):
    """
    Looks up a formulation builder.

    :param method: a Formulation, a MethodTag or a method name ("incr", "cc-disc"...)
    :return: the Formulation
    """
    # avoid a circular import, the registry lives in the package
    from pwlmip.formulations import formulations

    if isinstance(method, Formulation):
        return method
    name = getattr(method, u'value', method)
    try:
        return formulations[name]
    except (KeyError, TypeError):
        raise WrongMethodError(u'unknown method {!r}, expected one of {}'.format(
            method, u', '.join(sorted(formulations))
        ))


def separable_sum(functions, method, sense, indicator=None, name=None):
    """
    Builds the model of the separable problem optimizing sum(f_n(x_n)) with one fragment
    per function and no coupling constraints. Errors raised while building a fragment
    are re-raised with the offending function's index.

    :param functions: a non-empty sequence of PwlFunctions
    :param method: the formulation to use (see get_formulation)
    :param sense: the Sense (or "min"/"max")
    :param indicator: an optional IndicatorVariant applied to every fragment
    :param name: an optional model name
    :return: the Model, its fragments are available in model.fragments
    """
    functions = list(functions)
    if not functions:
        raise InputError(u'at least one function is required')
    formulation = get_formulation(method)
    variant = as_indicator_variant(indicator)
    sense = as_sense(sense)

    model = Model(name)
    # a single function keeps the plain variable names
    indexed = len(functions) > 1
    fragments = []
    for index, f in enumerate(functions):
        try:
            fragment = formulation.build(model, f, index if indexed else None)
            if variant is not None:
                fragment = with_binary_indicator(model, fragment, variant)
        except PwlmipError as e:
            raise type(e)(u'function {}: {}'.format(index, e), index=index)
        fragments.append(fragment)

    model.set_objective(
        LinearExpression.sum(fragment.objective_expr for fragment in fragments), sense
    )
    return model


def count_vars(fragment):
    """
    Counts the fragment's auxiliary variables. The x variable is never counted and the
    indicator, if there is one, is reported as a flag rather than counted.

    :param fragment: the Fragment
    :return: a VariableCounts 3-tuple (continuous, binary, indicator)
    """
    return fragment.counts()
