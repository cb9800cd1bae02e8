#!/usr/bin/env python
# encoding: utf-8


class PwlmipError(Exception):
    """
    Base class for all the errors raised by this library.
    """

    def __init__(self, message, index=None):
        """
        :param message: the error message
        :param index: the position of the offending function when the error was raised
                      while building a separable model, otherwise None
        """
        super(PwlmipError, self).__init__(message)
        self.index = index


class InputError(PwlmipError):
    """
    Raised when input data is malformed, for example a function file that doesn't match
    the schema or a sampler returning a non-finite value.
    """


class DomainError(PwlmipError):
    """
    Raised when a function is asked about a point or breakpoint outside its domain.
    """


class UnsupportedFunctionError(PwlmipError):
    """
    Raised when a function is neither continuous, right-continuous nor left-continuous.
    """


class WrongMethodError(PwlmipError):
    """
    Raised when a formulation is asked to encode a function of a continuity class it
    doesn't handle.
    """


class UnsupportedVariantError(PwlmipError):
    """
    Raised when a binary indicator variant is requested for a fragment that can't carry
    one.
    """


class ModelError(PwlmipError):
    """
    Raised when a model is used incorrectly (duplicate terms, mutation after freezing
    and so on).
    """


class ModelMismatchError(ModelError):
    """
    Raised when a variable handle from one model is used with another.
    """


class SolverError(PwlmipError):
    """
    Raised when a solver fails numerically or runs out of iterations.
    """


class IrrationalCoefficientError(PwlmipError):
    """
    Raised when a coefficient can't be read as an exact rational.
    """


class DimensionGuardError(PwlmipError):
    """
    Raised when a polytope is too large to enumerate the vertices of.
    """


class BenchMismatchError(PwlmipError):
    """
    Raised when a bench row's objective doesn't match the expected value.
    """
