#!/usr/bin/env python
# encoding: utf-8

from pwlmip.formulations.base import IndicatorVariant, as_indicator_variant
from pwlmip.formulations.incremental import incremental_for
from pwlmip.formulations.indicators import anchor, with_binary_indicator
from pwlmip.formulations.separable import get_formulation
from pwlmip.ideality.polytope import (
    as_point,
    enumerate_vertices,
    from_relaxation,
    point_membership,
)
from pwlmip.model import Model, Sense, VarRef

NO_WITNESS_NOTE = u'no witness at tested K'

# the point (x, y, beta, alpha) = (0, 0, 0, 1), only meaningful when the anchor is 0
INCORRECT_POINT = u'p*'
# the point (x, y, beta, alpha) = (anchor, 0, 0, 0)
ANCHOR_POINT = u'p0'


def format_rational(value):
    """
    :param value: a sympy Rational
    :return: its exact string form, "1/2" say
    """
    return str(value)


class IdealityReport(object):
    """
    The outcome of an ideality check: the vertices of a relaxation polytope and those
    of them with a fractional binary coordinate.
    """

    def __init__(self, vertices, binary_indexes, flagged=None):
        """
        :param vertices: the enumerated vertices, tuples of sympy Rationals
        :param binary_indexes: the coordinates that are binary in the unrelaxed model
        :param flagged: an optional dict of named points, each a dict with "point",
                        "member" and "extreme" keys
        """
        self.vertices = list(vertices)
        self.binary_indexes = list(binary_indexes)
        self.witnesses = [
            vertex for vertex in self.vertices
            if any(vertex[index] not in (0, 1) for index in self.binary_indexes)
        ]
        self.flagged = flagged or {}

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def integral(self):
        return not self.witnesses

    @property
    def note(self):
        return NO_WITNESS_NOTE if self.integral else None

    def to_dict(self):
        """
        :return: the JSON-ready form of the report, rationals rendered as strings
        """
        data = {
            u'vertices': self.vertex_count,
            u'integral': self.integral,
            u'witnesses': [[format_rational(value) for value in witness]
                           for witness in self.witnesses],
            u'flagged': {
                name: {
                    u'point': [format_rational(value) for value in details[u'point']],
                    u'member': details[u'member'],
                    u'extreme': details[u'extreme'],
                }
                for name, details in self.flagged.items()
            },
        }
        if self.note:
            data[u'note'] = self.note
        return data

    def __repr__(self):
        return u'IdealityReport({} vertices, integral={})'.format(
            self.vertex_count, self.integral
        )


def _indexes(model, coordinates):
    indexes = []
    for coordinate in coordinates:
        if isinstance(coordinate, VarRef):
            coordinate = model.variable(coordinate).index
        indexes.append(coordinate)
    return indexes


def check_local_ideality(model, binary_coords=None, config=None):
    """
    Enumerates the vertices of the model's LP relaxation and reports those with a
    fractional value in a binary coordinate. The binary coordinates are those of the
    model's fragments unless given.

    :param model: the Model, relaxed or not
    :param binary_coords: optional handles (or indexes) of the coordinates to check
    :param config: the config object
    :return: an IdealityReport
    """
    if binary_coords is None:
        binary_coords = [handle for fragment in model.fragments
                         for handle in fragment.binary_handles]
    indexes = _indexes(model, binary_coords)
    vertices = enumerate_vertices(from_relaxation(model.relax()), config)
    return IdealityReport(vertices, indexes)


def indicator_model(variant, f, method=None):
    """
    Builds the single function model of an incremental encoding carrying the given
    indicator variant. Unless a method is given the encoding matching f's continuity
    class is used. The function's data is converted to exact rationals first.

    :param variant: the IndicatorVariant (or its string value)
    :param f: the PwlFunction
    :param method: an optional formulation (see get_formulation)
    :return: a 2-tuple of the Model and the Fragment
    """
    f = f.exact()
    model = Model()
    formulation = incremental_for(f) if method is None else get_formulation(method)
    fragment = formulation.build(model, f)
    fragment = with_binary_indicator(model, fragment, variant)
    model.set_objective(fragment.objective_expr, Sense.MIN)
    return model, fragment


def check_flagged_points(variant, f, config=None, method=None):
    """
    Checks the two notable points of an indicator variant's relaxation: the point with
    alpha = 1 but everything else 0, which is an incorrect extreme point of the FIM
    relaxation when the function's anchor (a_0, or a_K for the mirrored left-continuous
    encoding) is 0, and the point with x at the anchor and everything else 0, which the
    PIM_PRIME relaxation contains but the PIM one doesn't. Membership is decided
    exactly and extremality by looking the point up among the enumerated vertices.

    :param variant: the IndicatorVariant (or its string value)
    :param f: the PwlFunction
    :param config: the config object
    :param method: an optional incremental formulation, see indicator_model
    :return: an IdealityReport with its flagged points filled in
    """
    variant = as_indicator_variant(variant) or IndicatorVariant.FIM
    model, fragment = indicator_model(variant, f, method)
    polytope = from_relaxation(model.relax())
    vertices = enumerate_vertices(polytope, config)
    vertex_set = set(vertices)

    count = len(model.variables)
    start = anchor(fragment)
    points = {}
    if start == 0:
        point = [0] * count
        point[fragment.indicator.index] = 1
        points[INCORRECT_POINT] = point
    point = [0] * count
    point[fragment.x.index] = start
    points[ANCHOR_POINT] = point

    flagged = {}
    for name, point in points.items():
        member = point_membership(polytope, point)
        exact = tuple(as_point(point))
        flagged[name] = {
            u'point': exact,
            u'member': member,
            u'extreme': member and exact in vertex_set,
        }
    binary_indexes = [handle.index for handle in fragment.binary_handles]
    return IdealityReport(vertices, binary_indexes, flagged)
