#!/usr/bin/env python
# encoding: utf-8

import itertools
import math
import numbers
from decimal import Decimal
from fractions import Fraction

from six.moves import zip

from pwlmip.exceptions import IrrationalCoefficientError, InputError

# a float whose shortest decimal reading needs more significant digits than this is
# assumed to come from non-terminating arithmetic (1/3, sqrt(2), ...)
MAX_EXACT_DIGITS = 15


def chunk_iterator(iterable, chunk_size=1000):
    """
    Iterates over an iterable, yielding lists of size chunk_size until the iterable is
    exhausted. The final list could be smaller than chunk_size but will always have a
    length > 0.

    :param iterable: the iterable to chunk up
    :param chunk_size: the maximum size of each yielded chunk
    """
    chunk = []
    for element in iterable:
        chunk.append(element)
        if len(chunk) == chunk_size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def iter_pairs(iterable, final_partner=None):
    """
    Produces a generator that iterates over the iterable provided, yielding a tuple of
    consecutive items. When the final item in the iterable is reached, it is yielded
    with the final partner parameter. For example, printing the result of:

        iter_pairs([1,2,3,4])

    would produce

        (1, 2)
        (2, 3)
        (3, 4)
        (4, None)

    Zipping the result with a sequence one shorter than the iterable drops the final
    pair, which is how breakpoints are paired up with their segments.

    :param iterable: the iterable or iterator to pair up
    :param final_partner: the value that will partner the final item in the iterable (defaults to
                          None)
    :return: a generator object
    """
    i1, i2 = itertools.tee(iterable)
    return zip(i1, itertools.chain(itertools.islice(i2, 1, None), [final_partner]))


def check_finite(value, what=u'value'):
    """
    Checks that the given value is a finite real number, returning it untouched if it
    is.

    :param value: the value to check
    :param what: a description of the value for the error message
    :return: the value
    """
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InputError(u'{} must be a real number, got {!r}'.format(what, value))
    if not math.isfinite(value):
        raise InputError(u'{} must be finite, got {!r}'.format(what, value))
    return value


def to_rational(value, max_digits=MAX_EXACT_DIGITS):
    """
    Converts the given number to an exact Fraction. Ints, Fractions and Decimals are
    converted exactly. Floats are read as the exact decimal of their shortest repr (so
    0.1 becomes 1/10, not the binary value nearest to it) and refused if that decimal
    needs more than max_digits significant digits, as such values are almost certainly
    the result of irrational or non-terminating arithmetic.

    :param value: the number
    :param max_digits: the maximum number of significant digits accepted for floats
    :return: a Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise IrrationalCoefficientError(u'{!r} is not a number'.format(value))
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise IrrationalCoefficientError(u'{} is not finite'.format(value))
        return Fraction(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise IrrationalCoefficientError(u'{!r} is not finite'.format(value))
        decimal = Decimal(repr(value))
        if len(decimal.normalize().as_tuple().digits) > max_digits:
            raise IrrationalCoefficientError(
                u'{!r} does not look like a rational construction input (more than {} '
                u'significant digits), pass it as a Fraction instead'.format(
                    value, max_digits
                )
            )
        return Fraction(decimal)
    raise IrrationalCoefficientError(
        u'{!r} ({}) cannot be read as an exact rational'.format(
            value, type(value).__name__
        )
    )


def format_number(value):
    """
    Formats a number for display and for text exports: the shortest repr that reads
    back to the same float, without a trailing ".0" for integral values.

    :param value: the number
    :return: a string
    """
    value = float(value)
    if value == 0:
        # avoid "-0"
        return u'0'
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)
