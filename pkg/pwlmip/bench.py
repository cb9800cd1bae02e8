#!/usr/bin/env python
# encoding: utf-8

import os
from datetime import datetime

from blinker import Signal

from pwlmip.config import resolve
from pwlmip.exceptions import BenchMismatchError, InputError
from pwlmip.formulations import MethodTag, get_formulation, separable_sum
from pwlmip.functions import load_function
from pwlmip.model import Model, Sense
from pwlmip.solving import solve_milp
from pwlmip.utils import format_number

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), u'fixtures')

# the number of functions in the rows of the comparison tables
DEFAULT_SIZES = (1000, 5000, 10000, 20000)
LARGE_SIZES = (50000, 100000, 250000)

OOM_MARKER = u'OOM-guard'
RELATIVE_TOLERANCE = 1e-6

COLUMNS = (u'n_var', u'method', u'objective', u'expected', u'time_s', u'continuous',
           u'binary', u'nodes')


class BenchFixture(object):
    """
    A benchmark problem: the separable sum of N copies of a fixture function optimized
    with each of the listed methods.
    """

    def __init__(self, name, filename, sense, methods, optimum):
        """
        :param name: the fixture's name
        :param filename: the function file's name in the fixtures directory
        :param sense: the Sense to optimize in
        :param methods: the MethodTags to compare
        :param optimum: the optimum of a single copy of the function
        """
        self.name = name
        self.path = os.path.join(FIXTURES_DIR, filename)
        self.sense = sense
        self.methods = methods
        self.optimum = optimum

    def load(self, config=None):
        return load_function(self.path, config=config)


fixtures = {
    fixture.name: fixture
    for fixture in [
        BenchFixture(u'table1', u'right_continuous.json', Sense.MAX,
                     (MethodTag.INCR_RIGHT, MethodTag.CC_DISC), 10),
        BenchFixture(u'table2', u'left_continuous.json', Sense.MIN,
                     (MethodTag.INCR_LEFT, MethodTag.CC_DISC), 2.5),
    ]
}


class BenchResult(object):
    """
    One row of a benchmark table.
    """

    def __init__(self, method, n_vars, objective, expected, duration=None,
                 continuous=0, binary=0, nodes=0, skipped=False):
        """
        :param method: the MethodTag
        :param n_vars: the number of functions summed
        :param objective: the objective found (None if the row was skipped)
        :param expected: the objective expected
        :param duration: the solve's wall time in seconds (informational only)
        :param continuous: the number of continuous auxiliary variables
        :param binary: the number of binary auxiliary variables
        :param nodes: the number of branch-and-bound nodes explored
        :param skipped: whether the row was skipped by the row cap
        """
        self.method = method
        self.n_vars = n_vars
        self.objective = objective
        self.expected = expected
        self.duration = duration
        self.continuous = continuous
        self.binary = binary
        self.nodes = nodes
        self.skipped = skipped

    @property
    def matches(self):
        """
        Whether the objective is within the relative tolerance of the expected value.
        Skipped rows always match.
        """
        if self.skipped:
            return True
        if self.objective is None:
            return False
        scale = max(1.0, abs(self.expected))
        return abs(self.objective - self.expected) <= RELATIVE_TOLERANCE * scale

    def cells(self):
        """
        :return: the row's values as strings, in COLUMNS order
        """
        if self.skipped:
            return [str(self.n_vars), self.method.value, OOM_MARKER,
                    format_number(self.expected), u'', u'', u'', u'']
        return [
            str(self.n_vars),
            self.method.value,
            u'-' if self.objective is None else format_number(self.objective),
            format_number(self.expected),
            u'{:.3f}'.format(self.duration),
            str(self.continuous),
            str(self.binary),
            str(self.nodes),
        ]

    def __repr__(self):
        return u'BenchResult({}, {}, {})'.format(
            self.method.value, self.n_vars, OOM_MARKER if self.skipped else self.objective
        )


class Benchmark(object):
    """
    Runs a fixture's comparison table: for every size N and every method, builds the
    separable model of N copies, solves it and checks the objective against N times
    the single copy optimum.
    """

    def __init__(self, fixture, sizes=DEFAULT_SIZES, config=None):
        """
        :param fixture: a BenchFixture or the name of one ("table1", "table2")
        :param sizes: the values of N
        :param config: the config object, its row cap guards against huge models
        """
        if not isinstance(fixture, BenchFixture):
            try:
                fixture = fixtures[fixture]
            except KeyError:
                raise InputError(u'unknown bench fixture {!r}, expected one of {}'.format(
                    fixture, u', '.join(sorted(fixtures))
                ))
        sizes = list(sizes)
        if not sizes or any(size <= 0 for size in sizes):
            raise InputError(u'bench sizes must be positive')
        self.fixture = fixture
        self.sizes = sizes
        self.config = resolve(config)

        self.row_signal = Signal(
            doc=u'''Triggered when a table row is complete (or skipped). One kwarg is
                    passed when this signal is sent, "result", which holds the
                    BenchResult.'''
        )
        self.finish_signal = Signal(
            doc=u'''Triggered when the whole table is complete. The kwargs passed when
                    this signal is sent are "results" and "stats" which hold the list of
                    BenchResults and the stats dict respectively.'''
        )
        self.start = None

    def rows_per_function(self, f, method):
        """
        Returns the number of constraint rows one copy of the function needs.

        :param f: the PwlFunction
        :param method: the MethodTag
        :return: the row count
        """
        model = Model()
        get_formulation(method).build(model, f)
        return len(model.constraints)

    def run_row(self, f, method, size):
        """
        Builds and solves a single row.

        :param f: the fixture's PwlFunction
        :param method: the MethodTag
        :param size: N
        :return: a BenchResult
        """
        expected = self.fixture.optimum * size
        if self.rows_per_function(f, method) * size > self.config.row_cap:
            return BenchResult(method, size, None, expected, skipped=True)

        model = separable_sum([f] * size, method, self.fixture.sense)
        solution = solve_milp(model, self.config)
        continuous = sum(fragment.counts().continuous for fragment in model.fragments)
        binary = sum(fragment.counts().binary for fragment in model.fragments)
        return BenchResult(method, size, solution.objective, expected,
                           solution.stats[u'duration'], continuous, binary,
                           solution.nodes)

    def get_stats(self, results):
        end = datetime.now()
        return {
            u'fixture': self.fixture.name,
            u'start': self.start,
            u'end': end,
            u'duration': (end - self.start).total_seconds(),
            u'rows': len(results),
            u'skipped': sum(1 for result in results if result.skipped),
            u'mismatched': sum(1 for result in results if not result.matches),
        }

    def run(self):
        """
        Runs every row of the table.

        :return: the list of BenchResults, in size then method order
        """
        self.start = datetime.now()
        f = self.fixture.load(self.config)
        results = []
        for size in self.sizes:
            for method in self.fixture.methods:
                result = self.run_row(f, method, size)
                results.append(result)
                self.row_signal.send(self, result=result)
        self.finish_signal.send(self, results=results, stats=self.get_stats(results))
        return results


def assert_objectives(results):
    """
    Raises a BenchMismatchError if any result's objective is off.

    :param results: the BenchResults
    """
    mismatched = [result for result in results if not result.matches]
    if mismatched:
        raise BenchMismatchError(u'objective mismatch in {}'.format(u'; '.join(
            u'{} N={}: got {}, expected {}'.format(
                result.method.value, result.n_vars, result.objective, result.expected
            )
            for result in mismatched
        )))


def format_table(results, pretty=False):
    """
    Renders the results as TSV, or as an aligned table if pretty is True.

    :param results: the BenchResults
    :param pretty: whether to align the columns for reading
    :return: the table text
    """
    rows = [list(COLUMNS)] + [result.cells() for result in results]
    if not pretty:
        return u'\n'.join(u'\t'.join(row) for row in rows) + u'\n'
    widths = [max(len(row[column]) for row in rows) for column in range(len(COLUMNS))]
    return u'\n'.join(
        u'  '.join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ) + u'\n'
