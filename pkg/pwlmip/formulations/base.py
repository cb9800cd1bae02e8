#!/usr/bin/env python
# encoding: utf-8

import abc
from collections import namedtuple
from enum import Enum

import six

from pwlmip.exceptions import WrongMethodError
from pwlmip.functions import Continuity


class MethodTag(Enum):
    """
    The formulations a fragment can be built with. The values are the names the
    command line uses.
    """

    INCR_CONT = u'incr'
    INCR_RIGHT = u'incr-right'
    INCR_LEFT = u'incr-left'
    CC_CONT = u'cc'
    CC_DISC = u'cc-disc'

    @property
    def is_incremental(self):
        return self in (MethodTag.INCR_CONT, MethodTag.INCR_RIGHT, MethodTag.INCR_LEFT)


class IndicatorVariant(Enum):
    # the first segment bound is scaled by the indicator
    FIM = u'fim'
    # the x definition and the objective constant are scaled by the indicator as well
    PIM = u'pim'
    # the first segment bound is scaled and x >= a_0 * alpha is added
    PIM_PRIME = u'pim-prime'


def as_indicator_variant(value):
    """
    :param value: an IndicatorVariant, its string value or None
    :return: an IndicatorVariant or None
    """
    if value is None or isinstance(value, IndicatorVariant):
        return value
    try:
        return IndicatorVariant(value)
    except ValueError:
        raise WrongMethodError(u'unknown indicator variant {!r}, expected one of {}'.format(
            value, u', '.join(v.value for v in IndicatorVariant)
        ))


# the row ids an indicator variant needs to substitute
FIRST_SEGMENT = u'first_segment'
X_DEFINITION = u'x_definition'

VariableCounts = namedtuple(u'VariableCounts', [u'continuous', u'binary', u'indicator'])


class Fragment(object):
    """
    The part of a model encoding one piecewise-linear function: the x variable, the
    auxiliary variables, the constraint ids and the objective expression giving the
    function's value.
    """

    def __init__(self, function, method_tag, x, aux_continuous, aux_binary,
                 objective_expr, constraints, roles, indicator=None, indicator_tag=None):
        """
        :param function: the PwlFunction encoded
        :param method_tag: the MethodTag of the builder used
        :param x: the handle of the x variable
        :param aux_continuous: the handles of the continuous auxiliary variables (y, y~
                               or lambda) in order
        :param aux_binary: the handles of the binary auxiliary variables (beta) in order
        :param objective_expr: a LinearExpression, constant included, whose value is
                               the function's value at x
        :param constraints: the ids of the constraints the builder added
        :param roles: a dict mapping role names (FIRST_SEGMENT, X_DEFINITION) to
                      constraint ids
        :param indicator: the handle of the indicator variable alpha, if any
        :param indicator_tag: the IndicatorVariant applied, if any
        """
        self.function = function
        self.method_tag = method_tag
        self.x = x
        self.aux_continuous = list(aux_continuous)
        self.aux_binary = list(aux_binary)
        self.objective_expr = objective_expr
        self.constraints = list(constraints)
        self.roles = dict(roles)
        self.indicator = indicator
        self.indicator_tag = indicator_tag

    @property
    def binary_handles(self):
        """
        The handles of every binary variable in the fragment, the indicator included.
        """
        handles = list(self.aux_binary)
        if self.indicator is not None:
            handles.append(self.indicator)
        return handles

    @property
    def coordinates(self):
        """
        The handles of all the fragment's variables in (x, y, beta, alpha) order.
        """
        return [self.x] + self.aux_continuous + self.binary_handles

    def counts(self):
        """
        :return: a VariableCounts of the auxiliary variables (x is never counted, the
                 indicator is reported as a flag)
        """
        return VariableCounts(
            len(self.aux_continuous), len(self.aux_binary), self.indicator is not None
        )

    def __repr__(self):
        return u'Fragment({}, {}, indicator={})'.format(
            self.method_tag.value,
            self.counts()[:2],
            self.indicator_tag.value if self.indicator_tag else None,
        )


@six.add_metaclass(abc.ABCMeta)
class Formulation(object):
    """
    Abstract class defining the interface of a formulation builder.
    """

    def __init__(self, method_tag, accepts):
        """
        :param method_tag: the MethodTag of the fragments this builder produces
        :param accepts: the continuity classes this builder can encode
        """
        self.method_tag = method_tag
        self.accepts = frozenset(accepts)

    @property
    def name(self):
        return self.method_tag.value

    def check(self, f):
        """
        Raises a WrongMethodError if this builder can't encode the given function.

        :param f: the PwlFunction
        """
        if f.continuity not in self.accepts:
            raise WrongMethodError(
                u'{} cannot encode a {} function, it accepts {}'.format(
                    self.name,
                    f.continuity.value,
                    u', '.join(sorted(c.value for c in self.accepts)),
                )
            )

    def build(self, model, f, index=None):
        """
        Adds the variables and constraints encoding the function to the model, then
        registers the fragment with the model.

        :param model: the Model to build into
        :param f: the PwlFunction
        :param index: the function's position in a separable sum, used to name the
                      variables uniquely
        :return: the Fragment
        """
        self.check(f)
        fragment = self._build(model, f, Namer(index))
        model.fragments.append(fragment)
        return fragment

    @abc.abstractmethod
    def _build(self, model, f, namer):
        """
        Does the actual building, see build.

        :param model: the Model to build into
        :param f: the PwlFunction, already checked
        :param namer: a Namer for the new variables
        :return: the Fragment
        """
        pass


class Namer(object):
    """
    Names variables, suffixing them with the function index when there is one.
    """

    def __init__(self, index=None):
        self.index = index

    def __call__(self, base, k=None):
        parts = [base]
        if self.index is not None:
            parts.append(str(self.index))
        if k is not None:
            parts.append(str(k))
        return u'_'.join(parts)


ALL_CONTINUITIES = (Continuity.CONTINUOUS, Continuity.RIGHT, Continuity.LEFT)
