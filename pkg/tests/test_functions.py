#!/usr/bin/env python
# encoding: utf-8

import io
import random
from fractions import Fraction

import pytest
import ujson

from pwlmip.exceptions import (
    DomainError,
    InputError,
    IrrationalCoefficientError,
    UnsupportedFunctionError,
)
from pwlmip.functions import (
    Continuity,
    JumpVector,
    PwlFunction,
    Side,
    approximate,
    classify,
    evaluate,
    is_lower_semicontinuous,
    is_upper_semicontinuous,
    jumps,
    load_function,
    one_sided_limit,
    owning_segment,
    shift,
)
from tests.helpers import (
    BREAKPOINTS,
    INTERCEPTS,
    SLOPES,
    continuous_function,
    interior_point,
    left_function,
    random_function,
    right_function,
)


class TestPwlFunction(object):

    def test_properties(self):
        f = right_function()
        assert f.breakpoints == (0, 1, 2, 3)
        assert f.slopes == (-5, -5, -2.5)
        assert f.intercepts == (7.5, 15, 12.5)
        assert f.continuity is Continuity.RIGHT
        assert f.segment_count == 3
        assert f.domain == (0, 3)
        assert list(f.segments()) == [
            (0, 1, -5, 7.5),
            (1, 2, -5, 15),
            (2, 3, -2.5, 12.5),
        ]

    def test_continuity_by_value(self):
        f = PwlFunction(BREAKPOINTS, SLOPES, INTERCEPTS, u'left')
        assert f.continuity is Continuity.LEFT

    def test_continuous_data_is_stored_as_continuous(self):
        f = PwlFunction([0, 1, 2], [1, -1], [0, 2], Continuity.RIGHT)
        assert f.continuity is Continuity.CONTINUOUS

    def test_discontinuous_data_needs_a_convention(self):
        with pytest.raises(UnsupportedFunctionError):
            PwlFunction(BREAKPOINTS, SLOPES, INTERCEPTS)

    def test_unknown_convention(self):
        with pytest.raises(UnsupportedFunctionError):
            PwlFunction(BREAKPOINTS, SLOPES, INTERCEPTS, u'sideways')

    @pytest.mark.parametrize(u'breakpoints,slopes,intercepts', [
        ([0], [], []),
        ([0, 1], [1, 2], [0, 0]),
        ([0, 1, 2], [1, 2], [0]),
        ([0, 2, 1], [1, 1], [0, 0]),
        ([0, 0, 1], [1, 1], [0, 0]),
        ([0, float(u'inf')], [1], [0]),
        ([0, 1], [float(u'nan')], [0]),
        ([0, 1], [u'1'], [0]),
    ])
    def test_invalid_data(self, breakpoints, slopes, intercepts):
        with pytest.raises(InputError):
            PwlFunction(breakpoints, slopes, intercepts, Continuity.RIGHT)

    def test_exact(self):
        f = right_function().exact()
        assert f.intercepts == (Fraction(15, 2), Fraction(15), Fraction(25, 2))
        assert all(isinstance(value, Fraction) for value in f.slopes)
        assert f.continuity is Continuity.RIGHT

    def test_exact_refuses_irrational_looking_data(self):
        f = PwlFunction([0, 1], [1 / 3], [0])
        with pytest.raises(IrrationalCoefficientError):
            f.exact()

    def test_equality(self):
        assert right_function() == right_function()
        assert right_function() != left_function()
        assert hash(right_function()) == hash(right_function())

    def test_call(self):
        assert right_function()(1) == 10

    def test_segment_value(self):
        f = right_function()
        # the piece is evaluated wherever x is
        assert f.segment_value(1, 1) == 2.5
        assert f.segment_value(2, 0) == 15


class TestDictForm(object):

    def test_round_trip(self):
        f = right_function()
        assert PwlFunction.from_dict(f.to_dict()) == f

    def test_to_dict(self):
        assert left_function().to_dict() == {
            u'breakpoints': [0.0, 1.0, 2.0, 3.0],
            u'slopes': [-5.0, -5.0, -2.5],
            u'intercepts': [7.5, 15.0, 12.5],
            u'continuity': u'left',
        }

    def test_continuity_is_optional_for_continuous_data(self):
        f = PwlFunction.from_dict({u'breakpoints': [0, 1, 2], u'slopes': [1, -1],
                                   u'intercepts': [0, 2]})
        assert f.continuity is Continuity.CONTINUOUS

    def test_exact(self):
        f = PwlFunction.from_dict(right_function().to_dict(), exact=True)
        assert f.intercepts[0] == Fraction(15, 2)
        assert isinstance(f.breakpoints[0], Fraction)

    def test_exact_refuses_long_floats(self):
        data = {u'breakpoints': [0, 1], u'slopes': [1 / 3], u'intercepts': [0]}
        with pytest.raises(InputError):
            PwlFunction.from_dict(data, exact=True)

    def test_values_infer_the_convention(self):
        data = {u'breakpoints': BREAKPOINTS, u'slopes': SLOPES,
                u'intercepts': INTERCEPTS, u'values': [2.5, 5]}
        assert PwlFunction.from_dict(data).continuity is Continuity.LEFT

    @pytest.mark.parametrize(u'data', [
        [],
        {u'slopes': [1], u'intercepts': [0]},
        {u'breakpoints': [0, 1], u'slopes': [1], u'intercepts': [0], u'colour': 1},
        {u'breakpoints': u'0 1', u'slopes': [1], u'intercepts': [0]},
        {u'breakpoints': [0, 1], u'slopes': [1], u'intercepts': [0],
         u'continuity': u'up'},
        {u'breakpoints': [0, 1], u'slopes': [None], u'intercepts': [0]},
    ])
    def test_schema_violations(self, data):
        with pytest.raises(InputError):
            PwlFunction.from_dict(data)

    def test_continuous_label_on_discontinuous_data(self):
        data = right_function().to_dict()
        data[u'continuity'] = u'continuous'
        with pytest.raises(UnsupportedFunctionError):
            PwlFunction.from_dict(data)


class TestLoadFunction(object):

    def test_load(self, tmp_path):
        path = tmp_path / u'f.json'
        path.write_text(ujson.dumps(right_function().to_dict()))
        assert load_function(str(path)) == right_function()

    def test_load_exact(self, tmp_path):
        path = tmp_path / u'f.json'
        path.write_text(ujson.dumps(left_function().to_dict()))
        f = load_function(str(path), exact=True)
        assert f.slopes[2] == Fraction(-5, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_function(str(tmp_path / u'nope.json'))

    def test_bad_json(self, tmp_path):
        path = tmp_path / u'f.json'
        with io.open(str(path), u'w') as f:
            f.write(u'{"breakpoints": [0, 1')
        with pytest.raises(InputError):
            load_function(str(path))


class TestEvaluate(object):

    def test_right_continuous(self):
        f = right_function()
        assert evaluate(f, 0) == 7.5
        assert evaluate(f, 0.5) == 5
        assert evaluate(f, 1) == 10
        assert evaluate(f, 2) == 7.5
        assert evaluate(f, 3) == 5

    def test_left_continuous(self):
        g = left_function()
        assert evaluate(g, 0) == 7.5
        assert evaluate(g, 1) == 2.5
        assert evaluate(g, 2) == 5
        assert evaluate(g, 3) == 5

    def test_continuous(self):
        f = continuous_function()
        assert [evaluate(f, x) for x in (0, 1, 2, 3)] == [1, 0.5, 2, 2.5]

    @pytest.mark.parametrize(u'x', [-0.001, 3.5])
    def test_outside_domain(self, x):
        with pytest.raises(DomainError):
            evaluate(right_function(), x)

    def test_owning_segment(self):
        assert [owning_segment(right_function(), x) for x in (0, 1, 2, 3)] == [1, 2, 3, 3]
        assert [owning_segment(left_function(), x) for x in (0, 1, 2, 3)] == [1, 1, 2, 3]

    @pytest.mark.parametrize(u'seed', range(20))
    def test_piecewise_affine(self, seed):
        rng = random.Random(seed)
        continuity = rng.choice(list(Continuity))
        f = random_function(rng, continuity, rng.randint(1, 4))
        k, x = interior_point(rng, f)
        assert evaluate(f, x) == f.slopes[k - 1] * x + f.intercepts[k - 1]


class TestOneSidedLimit(object):

    def test_limits(self):
        f = right_function()
        assert one_sided_limit(f, 1, Side.LEFT) == 2.5
        assert one_sided_limit(f, 1, Side.RIGHT) == 10
        assert one_sided_limit(f, 2, u'left') == 5
        assert one_sided_limit(f, 0, Side.RIGHT) == 7.5
        assert one_sided_limit(f, 3, Side.LEFT) == 5

    def test_continuous_limits_agree(self):
        f = continuous_function()
        for k in range(1, f.segment_count):
            assert one_sided_limit(f, k, Side.LEFT) == one_sided_limit(f, k, Side.RIGHT)

    @pytest.mark.parametrize(u'k,side', [
        (0, Side.LEFT),
        (3, Side.RIGHT),
        (-1, Side.RIGHT),
        (4, Side.LEFT),
        (1, u'up'),
    ])
    def test_invalid(self, k, side):
        with pytest.raises(DomainError):
            one_sided_limit(right_function(), k, side)


class TestJumps(object):

    def test_right(self):
        assert jumps(right_function()) == JumpVector([7.5, 2.5, 0], Continuity.RIGHT)

    def test_left(self):
        assert list(jumps(left_function())) == [-2.5, -7.5, 0]

    def test_continuous(self):
        deltas = jumps(continuous_function())
        assert list(deltas) == [0, 0, 0]
        assert len(deltas) == 3

    def test_delta(self):
        deltas = jumps(right_function())
        assert deltas.delta(1) == 7.5
        assert deltas.delta(3) == 0
        with pytest.raises(DomainError):
            deltas.delta(0)

    @pytest.mark.parametrize(u'seed', range(20))
    def test_consistent_with_limits(self, seed):
        rng = random.Random(seed)
        f = random_function(rng, Continuity.RIGHT, rng.randint(2, 4))
        deltas = jumps(f)
        for k in range(1, f.segment_count):
            right = one_sided_limit(f, k, Side.RIGHT)
            assert deltas.delta(k) == right - one_sided_limit(f, k, Side.LEFT)
            assert evaluate(f, f.breakpoints[k]) == right


class TestClassify(object):

    def test_conventions(self):
        assert classify(BREAKPOINTS, SLOPES, INTERCEPTS, u'right') == right_function()
        g = classify(BREAKPOINTS, SLOPES, INTERCEPTS, Continuity.LEFT)
        assert g == left_function()

    def test_single_segment_is_continuous(self):
        f = classify([0, 1], [2], [3], u'left')
        assert f.continuity is Continuity.CONTINUOUS

    def test_continuous_round_trip(self):
        f = continuous_function()
        classified = classify(f.breakpoints, f.slopes, f.intercepts)
        assert classified.continuity is Continuity.CONTINUOUS

    def test_tolerance(self):
        f = classify([0, 1, 2], [1, -1], [0, 2 + 1e-12])
        assert f.continuity is Continuity.CONTINUOUS

    def test_discontinuous_needs_a_convention(self):
        with pytest.raises(UnsupportedFunctionError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS)

    def test_continuous_convention_on_discontinuous_data(self):
        with pytest.raises(UnsupportedFunctionError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS, u'continuous')

    def test_values(self):
        f = classify(BREAKPOINTS, SLOPES, INTERCEPTS, values=[10, 7.5])
        assert f.continuity is Continuity.RIGHT
        # all the breakpoints, the ends belonging to the end segments
        assert classify(BREAKPOINTS, SLOPES, INTERCEPTS,
                        values=[7.5, 2.5, 5, 5]).continuity is Continuity.LEFT

    def test_values_matching_no_limit(self):
        with pytest.raises(UnsupportedFunctionError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS, values=[6, 7.5])

    def test_mixed_conventions(self):
        with pytest.raises(UnsupportedFunctionError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS, values=[10, 5])

    def test_values_against_convention(self):
        with pytest.raises(UnsupportedFunctionError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS, u'left', values=[10, 7.5])

    def test_end_values_must_match(self):
        with pytest.raises(UnsupportedFunctionError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS, values=[0, 10, 7.5, 5])

    def test_wrong_number_of_values(self):
        with pytest.raises(InputError):
            classify(BREAKPOINTS, SLOPES, INTERCEPTS, values=[10])


class TestApproximate(object):

    def test_square(self):
        f = approximate(lambda x: x * x, [0, 1, 2])
        assert f.slopes == (1, 3)
        assert f.intercepts == (0, -2)
        assert f.continuity is Continuity.CONTINUOUS

    def test_interpolates(self):
        breakpoints = [-2, -0.5, 0, 1.25, 3]
        f = approximate(lambda x: x ** 3 - x, breakpoints)
        for point in breakpoints:
            assert evaluate(f, point) == pytest.approx(point ** 3 - point, rel=1e-12,
                                                       abs=1e-12)

    def test_recovers_lines(self):
        f = approximate(lambda x: 2 * x - 1, [0, 1, 3, 4])
        assert f.slopes == (2, 2, 2)
        assert f.intercepts == (-1, -1, -1)

    def test_non_finite_samples(self):
        with pytest.raises(InputError):
            approximate(lambda x: 1 / x if x else float(u'inf'), [0, 1])

    def test_unordered_breakpoints(self):
        with pytest.raises(InputError):
            approximate(lambda x: x, [0, 2, 1])


def test_semicontinuity():
    # the right-continuous function jumps up, taking the upper value
    assert is_upper_semicontinuous(right_function())
    assert not is_lower_semicontinuous(right_function())
    # and the left-continuous one takes the lower value
    assert is_lower_semicontinuous(left_function())
    assert not is_upper_semicontinuous(left_function())
    assert is_lower_semicontinuous(continuous_function())
    assert is_upper_semicontinuous(continuous_function())


def test_shift():
    f = right_function()
    shifted = shift(f, 1)
    assert shifted.domain == (1, 4)
    assert shifted.continuity is Continuity.RIGHT
    for x in (0, 0.5, 1, 2, 2.5, 3):
        assert evaluate(shifted, x + 1) == evaluate(f, x)
    assert jumps(shifted) == jumps(f)


def test_shift_exact():
    f = left_function().exact()
    shifted = shift(f, Fraction(1))
    assert shifted.breakpoints[0] == 1
    assert evaluate(shifted, 2) == Fraction(5, 2)
