#!/usr/bin/env python
# encoding: utf-8

from fractions import Fraction
from functools import reduce
from itertools import combinations

import numpy as np
import sympy as sp

from pwlmip.config import resolve
from pwlmip.exceptions import DimensionGuardError, ModelError
from pwlmip.model import Relation
from pwlmip.utils import chunk_iterator, to_rational

# float screening is only relied on below this condition number bound, and then with
# this relative slack on the residuals
TRUSTED_CONDITION = 1e9
SCREENING_TOLERANCE = 1e-5


def rational(value):
    """
    Converts a number to a sympy Rational through pwlmip.utils.to_rational.

    :param value: the number
    :return: a sympy Rational
    """
    if isinstance(value, sp.Rational):
        return value
    fraction = to_rational(value)
    return sp.Rational(fraction.numerator, fraction.denominator)


class HPolytope(object):
    """
    An exact rational half-space representation {x : A x <= b, E x = h}. The columns
    follow the canonical variable order of the model the polytope came from.
    """

    def __init__(self, inequalities, inequality_rhs, equalities, equality_rhs,
                 names=None):
        """
        :param inequalities: the sympy Matrix A
        :param inequality_rhs: the sympy column Matrix b
        :param equalities: the sympy Matrix E
        :param equality_rhs: the sympy column Matrix h
        :param names: optional column names
        """
        self.inequalities = inequalities
        self.inequality_rhs = inequality_rhs
        self.equalities = equalities
        self.equality_rhs = equality_rhs
        self.names = list(names) if names is not None else None

    @property
    def dimension(self):
        """
        The number of coordinates (not the affine dimension).
        """
        return self.inequalities.cols

    def __repr__(self):
        return u'HPolytope({} coordinates, {} inequalities, {} equalities)'.format(
            self.dimension, self.inequalities.rows, self.equalities.rows
        )


def _matrix(rows, columns):
    if not rows:
        return sp.zeros(0, columns)
    return sp.Matrix(rows)


def _column(values):
    if not values:
        return sp.zeros(0, 1)
    return sp.Matrix(values)


def from_relaxation(model):
    """
    Builds the exact H-representation of a relaxed model's feasible region. Every
    coefficient is read as an exact rational (see pwlmip.utils.to_rational) and the
    variable bounds are folded in as inequality rows after the constraints.

    :param model: a Model without binary variables
    :return: an HPolytope
    """
    if model.binary_indexes:
        raise ModelError(u'the model has binary variables, relax it first')
    count = len(model.variables)
    inequalities, inequality_rhs = [], []
    equalities, equality_rhs = [], []
    for constraint in model.constraints:
        row = [sp.Integer(0)] * count
        for coefficient, handle in constraint.terms:
            row[handle.index] = rational(coefficient)
        rhs = rational(constraint.rhs)
        if constraint.relation is Relation.EQ:
            equalities.append(row)
            equality_rhs.append(rhs)
        elif constraint.relation is Relation.LE:
            inequalities.append(row)
            inequality_rhs.append(rhs)
        else:
            inequalities.append([-value for value in row])
            inequality_rhs.append(-rhs)
    for variable in model.variables:
        if np.isfinite(float(variable.lower)):
            row = [sp.Integer(0)] * count
            row[variable.index] = sp.Integer(-1)
            inequalities.append(row)
            inequality_rhs.append(-rational(variable.lower))
        if np.isfinite(float(variable.upper)):
            row = [sp.Integer(0)] * count
            row[variable.index] = sp.Integer(1)
            inequalities.append(row)
            inequality_rhs.append(rational(variable.upper))
    return HPolytope(
        _matrix(inequalities, count),
        _column(inequality_rhs),
        _matrix(equalities, count),
        _column(equality_rhs),
        [variable.name for variable in model.variables],
    )


def _parametrize_equalities(equalities, rhs, count):
    """
    Solves E x = h by rational Gaussian elimination, returning the solution set as
    x = x0 + N z.

    :return: a 2-tuple of x0 and N, or None if the system is inconsistent
    """
    if equalities.rows == 0:
        return sp.zeros(count, 1), sp.eye(count)
    reduced, pivots = equalities.row_join(rhs).rref()
    if count in pivots:
        return None
    particular = sp.zeros(count, 1)
    for row, column in enumerate(pivots):
        particular[column] = reduced[row, count]
    free = [column for column in range(count) if column not in pivots]
    directions = []
    for column in free:
        direction = sp.zeros(count, 1)
        direction[column] = 1
        for row, pivot in enumerate(pivots):
            direction[pivot] = -reduced[row, column]
        directions.append(direction)
    if not directions:
        return particular, sp.zeros(count, 0)
    return particular, sp.Matrix.hstack(*directions)


def _integer_rows(inequalities, rhs):
    """
    Scales every inequality row to primitive integer coefficients, so that any regular
    square subsystem has a determinant of absolute value at least 1.

    :return: a 2-tuple of the rows (lists of int Fractions) and their Fraction rhs
    """
    rows, values = [], []
    for index in range(inequalities.rows):
        row = [Fraction(int(value.p), int(value.q)) for value in inequalities.row(index)]
        value = Fraction(int(rhs[index].p), int(rhs[index].q))
        denominators = reduce(sp.ilcm, (entry.denominator for entry in row), 1)
        numerators = reduce(sp.igcd, (int(entry * denominators) for entry in row), 0)
        if numerators:
            scale = Fraction(int(denominators), int(numerators))
            row = [entry * scale for entry in row]
            value *= scale
        rows.append(row)
        values.append(value)
    return rows, values


def _screen(rows, values, dimension, chunk_size):
    """
    Solves every square subsystem of the integer rows in floating point and yields the
    ones an exact check still has to settle, as (subset, float point) pairs. A subset
    is only dropped when its float determinant and residuals are reliable enough to
    show it singular or infeasible; otherwise it is yielded with a point of None.
    """
    floats = np.array([[float(entry) for entry in row] for row in rows], dtype=float)
    float_values = np.array([float(value) for value in values], dtype=float)
    norms = np.linalg.norm(floats, axis=1)
    for chunk in chunk_iterator(combinations(range(len(rows)), dimension), chunk_size):
        subsets = np.array(chunk, dtype=int)
        subset_norms = norms[subsets]
        # Hadamard's bound times the largest row norm bounds the condition number of a
        # regular integer system
        conditions = (np.prod(subset_norms, axis=1) * np.max(subset_norms, axis=1)
                      * np.sqrt(dimension))
        trusted = conditions < TRUSTED_CONDITION

        for subset in subsets[~trusted]:
            yield tuple(int(row) for row in subset), None

        systems = floats[subsets[trusted]]
        if not len(systems):
            continue
        regular = np.abs(np.linalg.det(systems)) >= 0.5
        if not regular.any():
            continue
        candidates = subsets[trusted][regular]
        points = np.linalg.solve(systems[regular], float_values[candidates][..., None])
        points = points[..., 0]
        magnitudes = np.linalg.norm(points, axis=1)
        slack = SCREENING_TOLERANCE * (
            1 + np.abs(float_values)[:, None] + norms[:, None] * magnitudes[None, :]
        )
        feasible = np.all(floats @ points.T <= float_values[:, None] + slack, axis=0)
        for subset, point in zip(candidates[feasible], points[feasible]):
            yield tuple(int(row) for row in subset), point


def _dot(row, point):
    return sum(entry * value for entry, value in zip(row, point) if entry)


def _solve_exact(rows, values):
    """
    Solves a square system by Gauss-Jordan elimination over Fractions.

    :return: the solution as a tuple of Fractions, or None if the system is singular
    """
    size = len(rows)
    matrix = [list(row) + [value] for row, value in zip(rows, values)]
    for column in range(size):
        pivot = next((r for r in range(column, size) if matrix[r][column] != 0), None)
        if pivot is None:
            return None
        matrix[column], matrix[pivot] = matrix[pivot], matrix[column]
        pivot_row = matrix[column]
        for r in range(size):
            if r != column and matrix[r][column] != 0:
                factor = matrix[r][column] / pivot_row[column]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], pivot_row)]
    return tuple(matrix[r][size] / matrix[r][r] for r in range(size))


def _bucket(point):
    return tuple(np.round(np.array(point, dtype=float), 6) + 0.0)


def _reduced_vertices(rows, values, dimension, chunk_size):
    """
    Finds every vertex of {z : rows z <= values} in the reduced coordinates. Each
    candidate subset is either matched exactly against a vertex already derived or
    solved and checked in rational arithmetic, so no vertex is lost to rounding.

    :return: a set of tuples of Fractions
    """
    vertices = set()
    checked = set()
    buckets = {}
    for subset, point in _screen(rows, values, dimension, chunk_size):
        system = [rows[row] for row in subset]
        system_values = [values[row] for row in subset]
        if point is not None:
            # a trusted float point comes from a regular system, so a known vertex
            # satisfying it exactly is its unique solution
            known = buckets.get(_bucket(point), ())
            if any(all(_dot(row, vertex) == value
                       for row, value in zip(system, system_values))
                   for vertex in known):
                continue
        exact = _solve_exact(system, system_values)
        if exact is None or exact in checked:
            continue
        checked.add(exact)
        if all(_dot(row, exact) <= value for row, value in zip(rows, values)):
            vertices.add(exact)
            buckets.setdefault(_bucket(exact), []).append(exact)
    return vertices


def enumerate_vertices(polytope, config=None):
    """
    Enumerates the vertices of a polytope exactly. The equalities are eliminated first,
    leaving a system of inequalities in d free coordinates, then every d-subset of the
    inequalities is solved: candidates are screened in floating point with numpy and
    every survivor is re-derived and checked in exact rational arithmetic, so vertices
    that differ by less than any float rounding are still told apart.

    :param polytope: the HPolytope
    :param config: the config object
    :return: the vertices as tuples of sympy Rationals, sorted lexicographically
    """
    config = resolve(config)
    count = polytope.dimension
    parametrization = _parametrize_equalities(
        polytope.equalities, polytope.equality_rhs, count
    )
    if parametrization is None:
        return []
    particular, directions = parametrization
    dimension = directions.cols
    if dimension > config.max_enumeration_dimension:
        raise DimensionGuardError(
            u'the polytope has dimension {} after removing equalities, more than the {} '
            u'that can be enumerated; try a function with fewer segments'.format(
                dimension, config.max_enumeration_dimension
            )
        )

    inequalities = polytope.inequalities
    if dimension == 0:
        slacks = polytope.inequality_rhs - inequalities * particular
        if all(value >= 0 for value in slacks):
            return [tuple(particular)]
        return []

    reduced = inequalities * directions
    reduced_rhs = polytope.inequality_rhs - inequalities * particular
    if reduced.rows < dimension:
        return []

    rows, values = _integer_rows(reduced, reduced_rhs)
    vertices = set()
    for point in _reduced_vertices(rows, values, dimension, config.enumeration_chunk_size):
        exact = sp.Matrix([sp.Rational(value.numerator, value.denominator)
                           for value in point])
        vertices.add(tuple(particular + directions * exact))
    return sorted(vertices)


def as_point(values):
    """
    :param values: a sequence of numbers
    :return: a sympy column Matrix of the values as exact rationals
    """
    return _column([rational(value) for value in values])


def point_membership(polytope, point):
    """
    Whether the point lies in the polytope, decided exactly.

    :param polytope: the HPolytope
    :param point: a sequence of numbers in the polytope's coordinate order
    :return: True or False
    """
    point = as_point(point)
    if point.rows != polytope.dimension:
        raise ModelError(u'expected a point with {} coordinates, got {}'.format(
            polytope.dimension, point.rows
        ))
    if any(value != 0
           for value in polytope.equalities * point - polytope.equality_rhs):
        return False
    return all(value >= 0
               for value in polytope.inequality_rhs - polytope.inequalities * point)


def is_extreme(polytope, point):
    """
    Whether the point is a vertex of the polytope: it must be a member and the rows
    active at it (the equalities and the tight inequalities) must have full rank.

    :param polytope: the HPolytope
    :param point: a sequence of numbers in the polytope's coordinate order
    :return: True or False
    """
    if not point_membership(polytope, point):
        return False
    if polytope.dimension == 0:
        return True
    exact = as_point(point)
    slacks = polytope.inequality_rhs - polytope.inequalities * exact
    tight = [row for row, value in enumerate(slacks) if value == 0]
    active = polytope.equalities
    if tight:
        active = active.col_join(
            polytope.inequalities.extract(tight, list(range(polytope.dimension)))
        )
    return active.rank() == polytope.dimension
