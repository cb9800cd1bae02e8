#!/usr/bin/env python
# encoding: utf-8

import bisect
import io
import math
from enum import Enum

import ujson
from six.moves import zip

from pwlmip.config import resolve
from pwlmip.exceptions import (
    DomainError,
    InputError,
    PwlmipError,
    UnsupportedFunctionError,
)
from pwlmip.utils import check_finite, iter_pairs, to_rational


class Continuity(Enum):
    """
    The continuity class of a piecewise-linear function. For discontinuous functions
    this decides which segment owns each interior breakpoint.
    """

    CONTINUOUS = u'continuous'
    # each segment owns its left end: [a_{k-1}, a_k), the last segment is closed
    RIGHT = u'right'
    # each segment owns its right end: (a_{k-1}, a_k], the first segment is closed
    LEFT = u'left'


class Side(Enum):
    LEFT = u'left'
    RIGHT = u'right'


def _as_continuity(value):
    if isinstance(value, Continuity):
        return value
    try:
        return Continuity(value)
    except ValueError:
        raise UnsupportedFunctionError(
            u'unknown continuity convention {!r}, expected one of {}'.format(
                value, u', '.join(c.value for c in Continuity)
            )
        )


def _as_side(value):
    if isinstance(value, Side):
        return value
    try:
        return Side(value)
    except ValueError:
        raise DomainError(u'unknown side {!r}'.format(value))


def _mismatches(breakpoints, slopes, intercepts, tolerance):
    """
    Returns the interior breakpoint indexes at which the two adjacent segments don't
    meet (within the tolerance).
    """
    mismatched = []
    for k in range(1, len(breakpoints) - 1):
        left = slopes[k - 1] * breakpoints[k] + intercepts[k - 1]
        right = slopes[k] * breakpoints[k] + intercepts[k]
        if abs(left - right) > tolerance:
            mismatched.append(k)
    return mismatched


class PwlFunction(object):
    """
    A univariate piecewise-linear function on [a_0, a_K] made of K affine segments, the
    k-th segment being m_k * x + d_k between a_{k-1} and a_k. Instances are immutable.

    The value at an interior breakpoint is never stored, it comes from the continuity
    convention: right-continuous functions take the right-hand segment's value there,
    left-continuous ones the left-hand segment's. The end points always belong to the
    first and last segments.
    """

    def __init__(self, breakpoints, slopes, intercepts, continuity=Continuity.CONTINUOUS,
                 config=None):
        """
        :param breakpoints: the strictly increasing breakpoints a_0 ... a_K
        :param slopes: the K slopes m_1 ... m_K
        :param intercepts: the K intercepts d_1 ... d_K
        :param continuity: the continuity class (a Continuity or its string value). If
                           the data turns out to be continuous the function is always
                           stored as continuous, whatever was requested
        :param config: the config object, used for the continuity tolerance
        """
        breakpoints = tuple(breakpoints)
        slopes = tuple(slopes)
        intercepts = tuple(intercepts)
        if len(breakpoints) < 2:
            raise InputError(u'at least two breakpoints are required')
        if len(slopes) != len(breakpoints) - 1 or len(intercepts) != len(slopes):
            raise InputError(
                u'expected {} slopes and intercepts for {} breakpoints, got {} and {}'.format(
                    len(breakpoints) - 1, len(breakpoints), len(slopes), len(intercepts)
                )
            )
        for name, values in ((u'breakpoint', breakpoints), (u'slope', slopes),
                             (u'intercept', intercepts)):
            for value in values:
                check_finite(value, name)
        for left, right in zip(breakpoints, breakpoints[1:]):
            if not left < right:
                raise InputError(u'breakpoints must be strictly increasing')

        continuity = _as_continuity(continuity)
        tolerance = resolve(config).continuity_tolerance
        mismatched = _mismatches(breakpoints, slopes, intercepts, tolerance)
        if not mismatched:
            continuity = Continuity.CONTINUOUS
        elif continuity is Continuity.CONTINUOUS:
            raise UnsupportedFunctionError(
                u'the segments do not meet at breakpoint(s) {}, a right or left '
                u'continuity convention is required'.format(
                    u', '.join(u'a_{}'.format(k) for k in mismatched)
                )
            )

        self._breakpoints = breakpoints
        self._slopes = slopes
        self._intercepts = intercepts
        self._continuity = continuity

    @property
    def breakpoints(self):
        return self._breakpoints

    @property
    def slopes(self):
        return self._slopes

    @property
    def intercepts(self):
        return self._intercepts

    @property
    def continuity(self):
        return self._continuity

    @property
    def segment_count(self):
        """
        The number of segments, K.
        """
        return len(self._slopes)

    @property
    def domain(self):
        """
        :return: the 2-tuple (a_0, a_K)
        """
        return self._breakpoints[0], self._breakpoints[-1]

    def segments(self):
        """
        Yields a 4-tuple for each segment in order: the segment's left breakpoint, right
        breakpoint, slope and intercept.
        """
        for (left, right), slope, intercept in zip(
            iter_pairs(self._breakpoints), self._slopes, self._intercepts
        ):
            yield left, right, slope, intercept

    def segment_value(self, k, x):
        """
        Evaluates the affine piece of segment k (1-based) at x, wherever x is.

        :param k: the segment number, 1 <= k <= K
        :param x: the point
        :return: m_k * x + d_k
        """
        return self._slopes[k - 1] * x + self._intercepts[k - 1]

    def exact(self):
        """
        Returns a copy of this function with every number converted to an exact
        Fraction (see pwlmip.utils.to_rational).

        :return: a new PwlFunction
        """
        return PwlFunction(
            [to_rational(value) for value in self._breakpoints],
            [to_rational(value) for value in self._slopes],
            [to_rational(value) for value in self._intercepts],
            self._continuity,
        )

    def to_dict(self):
        """
        :return: the canonical JSON-ready dict form of this function
        """
        return {
            u'breakpoints': [float(value) for value in self._breakpoints],
            u'slopes': [float(value) for value in self._slopes],
            u'intercepts': [float(value) for value in self._intercepts],
            u'continuity': self._continuity.value,
        }

    @classmethod
    def from_dict(cls, data, exact=False, config=None):
        """
        Creates a function from its dict form:

            {"breakpoints": [...], "slopes": [...], "intercepts": [...],
             "continuity": "continuous"|"right"|"left", "values": [...]}

        The continuity key is optional for continuous functions, the values key is
        optional and, if present, holds the function's value at each interior
        breakpoint (or at every breakpoint) which is used to infer and check the
        continuity convention.

        :param data: the dict
        :param exact: whether to read all numbers as exact rationals
        :param config: the config object
        :return: a new PwlFunction
        """
        if not isinstance(data, dict):
            raise InputError(u'a function must be described by a JSON object')
        missing = [key for key in (u'breakpoints', u'slopes', u'intercepts')
                   if key not in data]
        if missing:
            raise InputError(u'missing key(s): {}'.format(u', '.join(missing)))
        unknown = set(data) - {u'breakpoints', u'slopes', u'intercepts', u'continuity',
                               u'values'}
        if unknown:
            raise InputError(u'unknown key(s): {}'.format(u', '.join(sorted(unknown))))

        def read(key):
            values = data[key]
            if not isinstance(values, list):
                raise InputError(u'{} must be a list'.format(key))
            for value in values:
                check_finite(value, key)
            if exact:
                try:
                    return [to_rational(value) for value in values]
                except PwlmipError as e:
                    raise InputError(u'{}: {}'.format(key, e))
            return values

        continuity = data.get(u'continuity')
        if continuity is not None and continuity not in [c.value for c in Continuity]:
            raise InputError(u'continuity must be one of {}, got {!r}'.format(
                u', '.join(c.value for c in Continuity), continuity
            ))
        values = read(u'values') if u'values' in data else None
        convention = None if continuity == Continuity.CONTINUOUS.value else continuity
        return classify(read(u'breakpoints'), read(u'slopes'), read(u'intercepts'),
                        convention=convention, values=values, config=config)

    def __call__(self, x):
        return evaluate(self, x)

    def __eq__(self, other):
        return (
            isinstance(other, PwlFunction)
            and self._breakpoints == other._breakpoints
            and self._slopes == other._slopes
            and self._intercepts == other._intercepts
            and self._continuity is other._continuity
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._breakpoints, self._slopes, self._intercepts,
                     self._continuity))

    def __repr__(self):
        return u'PwlFunction(breakpoints={}, slopes={}, intercepts={}, continuity={})'.format(
            list(self._breakpoints), list(self._slopes), list(self._intercepts),
            self._continuity.value
        )


class JumpVector(object):
    """
    The jumps of a function at its breakpoints, one per segment. For right-continuous
    functions delta k (1-based) is the jump at a_k, for left-continuous ones it is the
    jump at a_{K-k}. The last entry is always 0 as the closed end carries no jump.
    """

    def __init__(self, deltas, continuity):
        """
        :param deltas: the K jump values
        :param continuity: the continuity class of the function the jumps belong to
        """
        self.deltas = tuple(deltas)
        self.continuity = continuity

    def delta(self, k):
        """
        :param k: the 1-based jump number
        :return: the jump
        """
        if not 1 <= k <= len(self.deltas):
            raise DomainError(u'jump index {} is out of range'.format(k))
        return self.deltas[k - 1]

    def __len__(self):
        return len(self.deltas)

    def __iter__(self):
        return iter(self.deltas)

    def __eq__(self, other):
        return (
            isinstance(other, JumpVector)
            and self.deltas == other.deltas
            and self.continuity is other.continuity
        )

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return u'JumpVector({}, {})'.format(list(self.deltas), self.continuity.value)


def owning_segment(f, x):
    """
    Returns the 1-based number of the segment that owns x under the function's
    continuity convention.

    :param f: the PwlFunction
    :param x: the point, which must lie in the function's domain
    :return: the segment number
    """
    breakpoints = f.breakpoints
    if not breakpoints[0] <= x <= breakpoints[-1]:
        raise DomainError(u'{} lies outside the domain [{}, {}]'.format(
            x, breakpoints[0], breakpoints[-1]
        ))
    if f.continuity is Continuity.LEFT:
        return max(bisect.bisect_left(breakpoints, x), 1)
    return min(bisect.bisect_right(breakpoints, x), f.segment_count)


def evaluate(f, x):
    """
    Evaluates the function at x.

    :param f: the PwlFunction
    :param x: the point, a_0 <= x <= a_K
    :return: the value of the owning segment at x
    """
    return f.segment_value(owning_segment(f, x), x)


def one_sided_limit(f, k, side):
    """
    Returns a one-sided limit of the function at breakpoint a_k. The left limit comes
    from segment k, the right limit from segment k + 1.

    :param f: the PwlFunction
    :param k: the breakpoint index, 0 <= k <= K
    :param side: Side.LEFT or Side.RIGHT (or their string values)
    :return: the limit
    """
    side = _as_side(side)
    if not 0 <= k <= f.segment_count:
        raise DomainError(u'breakpoint index {} is out of range'.format(k))
    if side is Side.LEFT:
        if k == 0:
            raise DomainError(u'there is no left limit at a_0')
        return f.segment_value(k, f.breakpoints[k])
    if k == f.segment_count:
        raise DomainError(u'there is no right limit at a_K')
    return f.segment_value(k + 1, f.breakpoints[k])


def jumps(f):
    """
    Computes the jumps of the function. For a right-continuous function the k-th jump
    is f(a_k) - (m_k * a_k + d_k), i.e. the right limit minus the left limit at a_k. For
    a left-continuous function the k-th jump sits at a_{K-k} and is
    g(a_{K-k}) - (m_{K-k+1} * a_{K-k} + d_{K-k+1}), the left limit minus the right
    limit. Continuous functions have no jumps.

    :param f: the PwlFunction
    :return: a JumpVector of length K
    """
    count = f.segment_count
    deltas = [0] * count
    if f.continuity is Continuity.RIGHT:
        for k in range(1, count):
            deltas[k - 1] = (one_sided_limit(f, k, Side.RIGHT)
                             - one_sided_limit(f, k, Side.LEFT))
    elif f.continuity is Continuity.LEFT:
        for k in range(1, count):
            at = count - k
            deltas[k - 1] = (one_sided_limit(f, at, Side.LEFT)
                             - one_sided_limit(f, at, Side.RIGHT))
    return JumpVector(deltas, f.continuity)


def classify(breakpoints, slopes, intercepts, convention=None, values=None, config=None):
    """
    Builds a PwlFunction from raw piece data, inferring its continuity class. If the
    segments meet at every interior breakpoint the function is continuous. Otherwise
    the caller has to supply the convention (or the values taken at the breakpoints)
    because the piece data alone doesn't say which segment owns each breakpoint.

    :param breakpoints: the breakpoints a_0 ... a_K
    :param slopes: the slopes m_1 ... m_K
    :param intercepts: the intercepts d_1 ... d_K
    :param convention: "right" or "left" (or a Continuity), required for discontinuous
                       data unless values are given
    :param values: optional values of the function at the interior breakpoints (K - 1
                   of them) or at all the breakpoints (K + 1 of them). Every value at a
                   jump must equal one of the one-sided limits there and they must all
                   pick the same side
    :param config: the config object
    :return: a PwlFunction
    """
    # validate the structure first so the checks below work on sane data
    candidate = PwlFunction(breakpoints, slopes, intercepts, Continuity.RIGHT, config)
    tolerance = resolve(config).continuity_tolerance
    mismatched = _mismatches(candidate.breakpoints, candidate.slopes,
                             candidate.intercepts, tolerance)

    requested = None
    if convention is not None:
        requested = _as_continuity(convention)
        if requested is Continuity.CONTINUOUS and mismatched:
            raise UnsupportedFunctionError(
                u'the function is discontinuous and cannot be treated as continuous'
            )

    if values is not None:
        inferred = _infer_from_values(candidate, list(values), mismatched, tolerance)
        if inferred is not None:
            if requested is not None and requested is not inferred:
                raise UnsupportedFunctionError(
                    u'the breakpoint values describe a {}-continuous function but {} '
                    u'was requested'.format(inferred.value, requested.value)
                )
            requested = inferred

    if not mismatched:
        return PwlFunction(candidate.breakpoints, candidate.slopes, candidate.intercepts,
                           Continuity.CONTINUOUS, config)
    if requested is None:
        raise UnsupportedFunctionError(
            u'the function is discontinuous at breakpoint(s) {}; a right or left '
            u'convention is required'.format(u', '.join(str(k) for k in mismatched))
        )
    return PwlFunction(candidate.breakpoints, candidate.slopes, candidate.intercepts,
                       requested, config)


def _infer_from_values(f, values, mismatched, tolerance):
    """
    Works out the continuity convention from the values taken at the breakpoints,
    rejecting functions that fall outside the right/left-continuous classes.
    """
    count = f.segment_count
    if len(values) == count + 1:
        # the end points belong to the closed end pieces
        for k, segment in ((0, 1), (count, count)):
            if abs(values[k] - f.segment_value(segment, f.breakpoints[k])) > tolerance:
                raise UnsupportedFunctionError(
                    u'the value at a_{} does not match its closed end segment'.format(k)
                )
        values = values[1:-1]
    elif len(values) != count - 1:
        raise InputError(u'expected {} or {} breakpoint values, got {}'.format(
            count - 1, count + 1, len(values)
        ))

    sides = set()
    for k in mismatched:
        value = values[k - 1]
        if abs(value - one_sided_limit(f, k, Side.RIGHT)) <= tolerance:
            sides.add(Continuity.RIGHT)
        elif abs(value - one_sided_limit(f, k, Side.LEFT)) <= tolerance:
            sides.add(Continuity.LEFT)
        else:
            raise UnsupportedFunctionError(
                u'the value at a_{} equals neither one-sided limit'.format(k)
            )
    for k in set(range(1, count)) - set(mismatched):
        if abs(values[k - 1] - one_sided_limit(f, k, Side.RIGHT)) > tolerance:
            raise UnsupportedFunctionError(
                u'the value at a_{} does not match the continuous segments'.format(k)
            )
    if len(sides) > 1:
        raise UnsupportedFunctionError(
            u'the function is right-continuous at some breakpoints and left-continuous '
            u'at others'
        )
    return sides.pop() if sides else None


def approximate(sampler, breakpoints, config=None):
    """
    Creates the continuous piecewise-linear interpolant of the sampler on the given
    breakpoints. Segment k joins (a_{k-1}, sampler(a_{k-1})) to (a_k, sampler(a_k)).

    :param sampler: a callable taking a real and returning a real
    :param breakpoints: the strictly increasing breakpoints
    :param config: the config object
    :return: a continuous PwlFunction
    """
    breakpoints = list(breakpoints)
    samples = []
    for point in breakpoints:
        value = sampler(point)
        try:
            samples.append(check_finite(value, u'sample'))
        except InputError:
            raise InputError(u'the sampler returned {!r} at {}'.format(value, point))
    slopes = []
    intercepts = []
    for (left, right), (left_value, right_value) in zip(
        zip(breakpoints, breakpoints[1:]), zip(samples, samples[1:])
    ):
        if not left < right:
            raise InputError(u'breakpoints must be strictly increasing')
        slope = (right_value - left_value) / (right - left)
        slopes.append(slope)
        intercepts.append(left_value - slope * left)
    return PwlFunction(breakpoints, slopes, intercepts, Continuity.CONTINUOUS, config)


def _breakpoint_values(f):
    """
    Yields a 3-tuple for each interior breakpoint: the value, the left limit and the
    right limit.
    """
    for k in range(1, f.segment_count):
        left = one_sided_limit(f, k, Side.LEFT)
        right = one_sided_limit(f, k, Side.RIGHT)
        value = left if f.continuity is Continuity.LEFT else right
        yield value, left, right


def is_lower_semicontinuous(f, config=None):
    """
    Whether the function is lower semi-continuous, i.e. at every breakpoint its value is
    no greater than either one-sided limit. A function that isn't may have no minimum.

    :param f: the PwlFunction
    :param config: the config object
    :return: True or False
    """
    tolerance = resolve(config).continuity_tolerance
    return all(value <= min(left, right) + tolerance
               for value, left, right in _breakpoint_values(f))


def is_upper_semicontinuous(f, config=None):
    """
    Whether the function is upper semi-continuous, i.e. at every breakpoint its value is
    no smaller than either one-sided limit. A function that isn't may have no maximum.

    :param f: the PwlFunction
    :param config: the config object
    :return: True or False
    """
    tolerance = resolve(config).continuity_tolerance
    return all(value >= max(left, right) - tolerance
               for value, left, right in _breakpoint_values(f))


def shift(f, delta):
    """
    Translates the function horizontally: the result h satisfies h(x) = f(x - delta)
    on [a_0 + delta, a_K + delta], with the same continuity class.

    :param f: the PwlFunction
    :param delta: the translation
    :return: a new PwlFunction
    """
    return PwlFunction(
        [point + delta for point in f.breakpoints],
        f.slopes,
        [intercept - slope * delta for slope, intercept in zip(f.slopes, f.intercepts)],
        f.continuity,
    )


def load_function(path, exact=False, config=None):
    """
    Reads a function from a JSON file (see PwlFunction.from_dict for the schema).

    :param path: the file path
    :param exact: whether to read all numbers as exact rationals
    :param config: the config object
    :return: a PwlFunction
    """
    try:
        with io.open(path, u'r', encoding=u'utf-8') as f:
            data = ujson.load(f)
    except (IOError, OSError) as e:
        raise InputError(u'could not read {}: {}'.format(path, e))
    except ValueError as e:
        raise InputError(u'{} is not valid JSON: {}'.format(path, e))
    return PwlFunction.from_dict(data, exact=exact, config=config)
