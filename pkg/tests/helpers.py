#!/usr/bin/env python
# encoding: utf-8

from fractions import Fraction

from pwlmip.functions import Continuity, PwlFunction
from pwlmip.model import Model
from pwlmip.solving import solve_milp

BREAKPOINTS = [0, 1, 2, 3]
SLOPES = [-5, -5, -2.5]
INTERCEPTS = [7.5, 15, 12.5]


def right_function():
    """
    The right-continuous test function: 7.5 at 0, a jump up to 10 at 1 (its maximum),
    a smaller jump at 2 and 5 at 3.
    """
    return PwlFunction(BREAKPOINTS, SLOPES, INTERCEPTS, Continuity.RIGHT)


def left_function():
    """
    The same pieces read left-continuously, taking its minimum of 2.5 at 1.
    """
    return PwlFunction(BREAKPOINTS, SLOPES, INTERCEPTS, Continuity.LEFT)


def continuous_function():
    """
    A continuous function with 3 segments taking the values 1, 0.5, 2 and 2.5 at its
    breakpoints.
    """
    return PwlFunction([0, 1, 2, 3], [-0.5, 1.5, 0.5], [1, -1, 1])


def random_function(rng, continuity, segments):
    """
    Creates a random function with exact rational data: integral breakpoints, slopes
    in halves and, for discontinuous classes, a nonzero jump at every interior
    breakpoint.

    :param rng: a random.Random
    :param continuity: the Continuity of the result
    :param segments: the number of segments
    :return: a PwlFunction
    """
    breakpoints = [Fraction(rng.randint(-3, 3))]
    for _ in range(segments):
        breakpoints.append(breakpoints[-1] + rng.randint(1, 3))
    slopes = [Fraction(rng.randint(-8, 8), 2) for _ in range(segments)]
    intercepts = [Fraction(rng.randint(-6, 6))]
    for k in range(1, segments):
        # make the segments meet, then add the jump
        point = breakpoints[k]
        meeting = slopes[k - 1] * point + intercepts[k - 1] - slopes[k] * point
        if continuity is not Continuity.CONTINUOUS:
            meeting += rng.choice([-3, -2, -1, 1, 2, 3])
        intercepts.append(meeting)
    return PwlFunction(breakpoints, slopes, intercepts, continuity)


def interior_point(rng, f):
    """
    Picks a random rational point strictly inside one of the function's segments.

    :param rng: a random.Random
    :param f: the PwlFunction
    :return: a 2-tuple of the segment number and the point
    """
    k = rng.randint(1, f.segment_count)
    left, right = f.breakpoints[k - 1], f.breakpoints[k]
    return k, left + (right - left) * Fraction(rng.randint(1, 9), 10)


def solve_fixed(formulation, f, x, sense):
    """
    Builds the function's model with the given formulation, fixes x and solves it.

    :param formulation: a Formulation
    :param f: the PwlFunction
    :param x: the value to fix x to
    :param sense: the Sense to optimize in
    :return: the MilpSolution
    """
    model = Model()
    fragment = formulation.build(model, f)
    model.set_bounds(fragment.x, x, x)
    model.set_objective(fragment.objective_expr, sense)
    return solve_milp(model)
