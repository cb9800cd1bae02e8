#!/usr/bin/env python
# encoding: utf-8

import os

from pwlmip.exceptions import InputError

ROW_CAP_VARIABLE = u'PWLMIP_ROW_CAP'


class Config(object):
    def __init__(
        self,
        continuity_tolerance=1e-9,
        feasibility_tolerance=1e-9,
        optimality_tolerance=1e-9,
        pivot_tolerance=1e-11,
        degenerate_pivot_limit=1000,
        iteration_limit=None,
        integrality_tolerance=1e-6,
        gap_tolerance=1e-6,
        node_limit=None,
        time_limit=None,
        decompose=False,
        max_enumeration_dimension=12,
        enumeration_chunk_size=20000,
        row_cap=2000000,
    ):
        """
        :param continuity_tolerance: absolute tolerance used when deciding whether two
                                     adjacent segments meet at a breakpoint
        :param feasibility_tolerance: the simplex engine's primal feasibility tolerance
        :param optimality_tolerance: the simplex engine's reduced cost tolerance
        :param pivot_tolerance: entries of the pivot column smaller than this (in
                                absolute value) are never pivoted on
        :param degenerate_pivot_limit: the number of consecutive degenerate pivots after
                                       which the pivot rule switches from Dantzig's rule
                                       to Bland's rule for the rest of the solve
        :param iteration_limit: the maximum number of simplex iterations per phase. If
                                None (the default) the limit is 50 * (rows + columns)
        :param integrality_tolerance: a binary variable within this distance of 0 or 1
                                      is considered integral
        :param gap_tolerance: the absolute optimality gap at which branch-and-bound
                              stops exploring a subtree
        :param node_limit: the maximum number of branch-and-bound nodes to explore, None
                           means no limit
        :param time_limit: the maximum number of seconds a branch-and-bound solve may
                           take, None means no limit
        :param decompose: if True, branch-and-bound splits the model into its
                          independent blocks and solves each distinct block once,
                          copying its solution into identical blocks. Off by default,
                          the whole model is then searched as a single tree
        :param max_enumeration_dimension: vertex enumeration is refused for polytopes
                                          whose dimension (after equality elimination)
                                          exceeds this value
        :param enumeration_chunk_size: the number of candidate constraint subsets screened
                                       together during vertex enumeration
        :param row_cap: bench rows whose models would have more constraint rows than this
                        are skipped and marked as out of memory
        """
        # formulation building
        self.continuity_tolerance = continuity_tolerance

        # simplex
        self.feasibility_tolerance = feasibility_tolerance
        self.optimality_tolerance = optimality_tolerance
        self.pivot_tolerance = pivot_tolerance
        self.degenerate_pivot_limit = degenerate_pivot_limit
        self.iteration_limit = iteration_limit

        # branch-and-bound
        self.integrality_tolerance = integrality_tolerance
        self.gap_tolerance = gap_tolerance
        self.node_limit = node_limit
        self.time_limit = time_limit
        self.decompose = decompose

        # vertex enumeration
        self.max_enumeration_dimension = max_enumeration_dimension
        self.enumeration_chunk_size = enumeration_chunk_size

        # benchmarking
        self.row_cap = row_cap

    @classmethod
    def from_environment(cls, environ=None, **overrides):
        """
        Creates a config object using the defaults, the values found in the environment
        and then the given overrides, in that order of precedence (lowest first).
        Currently only the PWLMIP_ROW_CAP variable is read.

        :param environ: the environment mapping to read, defaults to os.environ
        :param overrides: keyword arguments passed straight to the constructor
        :return: a new Config object
        """
        if environ is None:
            environ = os.environ
        options = {}
        raw_row_cap = environ.get(ROW_CAP_VARIABLE)
        if raw_row_cap is not None and raw_row_cap.strip():
            try:
                options[u'row_cap'] = int(raw_row_cap)
            except ValueError:
                raise InputError(
                    u'{} must be an integer, got {!r}'.format(
                        ROW_CAP_VARIABLE, raw_row_cap
                    )
                )
            if options[u'row_cap'] <= 0:
                raise InputError(u'{} must be positive'.format(ROW_CAP_VARIABLE))
        options.update(overrides)
        return cls(**options)


DEFAULT_CONFIG = Config()


def resolve(config):
    """
    Returns the given config or the default config if None is passed.

    :param config: a Config object or None
    :return: a Config object
    """
    return DEFAULT_CONFIG if config is None else config
