#!/usr/bin/env python
# encoding: utf-8

import argparse
import sys
from fractions import Fraction

import ujson

from pwlmip.bench import (
    DEFAULT_SIZES,
    LARGE_SIZES,
    Benchmark,
    assert_objectives,
    fixtures,
    format_table,
)
from pwlmip.config import Config
from pwlmip.exceptions import (
    BenchMismatchError,
    DimensionGuardError,
    DomainError,
    PwlmipError,
)
from pwlmip.formulations import (
    formulations,
    get_formulation,
    incremental_for,
    separable_sum,
)
from pwlmip.formulations.base import IndicatorVariant
from pwlmip.functions import (
    is_lower_semicontinuous,
    is_upper_semicontinuous,
    load_function,
    shift,
)
from pwlmip.ideality import check_flagged_points, check_local_ideality
from pwlmip.lpfile import export_lp_text, variable_name, write_lp_file
from pwlmip.model import Model, Sense
from pwlmip.solving import BranchAndBound, MilpStatus
from pwlmip.utils import format_number

EXIT_OK = 0
EXIT_BENCH_MISMATCH = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_FRACTIONAL = 4
EXIT_GUARD = 5


def _report(message):
    sys.stderr.write(u'{}\n'.format(message))


def _on_node(sender, node, bound, status):
    _report(u'node {}: {} {}'.format(node, status.value, bound))


def _on_incumbent(sender, objective, node, component):
    _report(u'incumbent {} at node {} (component {})'.format(objective, node, component))


def _on_solve_finish(sender, solution, stats):
    _report(u'finished: {} in {:.3f}s, {} nodes, {} components ({} solved)'.format(
        solution.status.value, stats[u'duration'], stats[u'nodes'], stats[u'components'],
        stats[u'distinct_components']
    ))


def _on_row(sender, result):
    _report(u'row done: {!r}'.format(result))


def _on_bench_finish(sender, results, stats):
    _report(u'{} finished: {} rows in {:.3f}s, {} skipped'.format(
        stats[u'fixture'], stats[u'rows'], stats[u'duration'], stats[u'skipped']
    ))


def _formulation(args, f):
    if args.method is None:
        return incremental_for(f)
    return get_formulation(args.method)


def _sizes(value):
    if value.strip() == u'large':
        return list(LARGE_SIZES)
    try:
        sizes = [int(size) for size in value.split(u',') if size.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(u'expected comma separated integers')
    if not sizes or any(size <= 0 for size in sizes):
        raise argparse.ArgumentTypeError(u'sizes must be positive integers')
    return sizes


def _positive(value):
    number = int(value)
    if number <= 0:
        raise argparse.ArgumentTypeError(u'expected a positive integer')
    return number


def _build_model(args, config):
    f = load_function(args.input, config=config)
    model = separable_sum([f] * args.n, _formulation(args, f), args.sense,
                          indicator=args.indicator)
    return f, model


def cmd_build(args, config):
    """
    Writes the LP text of the model of N copies of the input function and prints the
    variable counts of one copy.
    """
    f, model = _build_model(args, config)
    counts = model.fragments[0].counts()
    summary = u'{}: ({} continuous, {} binary{}) per function, {} function{}'.format(
        model.fragments[0].method_tag.value,
        counts.continuous,
        counts.binary,
        u', 1 indicator' if counts.indicator else u'',
        args.n,
        u'' if args.n == 1 else u's',
    )
    if args.out:
        write_lp_file(model, args.out)
        print(summary)
    else:
        sys.stdout.write(export_lp_text(model))
        _report(summary)
    return EXIT_OK


def cmd_solve(args, config):
    """
    Solves the model of N copies of the input function and prints the objective, the
    value of every x variable and the solve's stats.
    """
    f, model = _build_model(args, config)
    sense = model.sense
    if sense is Sense.MAX and not is_upper_semicontinuous(f, config):
        _report(u'warning: the function is not upper semi-continuous, the maximum may '
                u'not be attained (the supremum is reported)')
    elif sense is Sense.MIN and not is_lower_semicontinuous(f, config):
        _report(u'warning: the function is not lower semi-continuous, the minimum may '
                u'not be attained (the infimum is reported)')

    if args.fix_x is not None:
        for fragment in model.fragments:
            variable = model.variable(fragment.x)
            if not variable.lower <= args.fix_x <= variable.upper:
                raise DomainError(u'cannot fix x to {}, it must lie in [{}, {}]'.format(
                    args.fix_x, variable.lower, variable.upper
                ))
            model.set_bounds(fragment.x, args.fix_x, args.fix_x)

    solver = BranchAndBound(model, config)
    if args.verbose:
        solver.node_signal.connect(_on_node)
        solver.incumbent_signal.connect(_on_incumbent)
        solver.finish_signal.connect(_on_solve_finish)
    solution = solver.solve()

    xs = []
    if solution.has_solution:
        for fragment in model.fragments:
            variable = model.variable(fragment.x)
            xs.append((variable_name(variable), solution.values[variable.index]))
    stats = solution.stats

    if args.json:
        print(ujson.dumps({
            u'status': solution.status.value,
            u'objective': solution.objective,
            u'x': {name: value for name, value in xs},
            u'stats': {
                u'nodes': stats[u'nodes'],
                u'lp_solves': stats[u'lp_solves'],
                u'components': stats[u'components'],
                u'duration': stats[u'duration'],
            },
        }, sort_keys=True))
    else:
        print(u'status\t{}'.format(solution.status.value))
        if solution.objective is not None:
            print(u'objective\t{}'.format(format_number(solution.objective)))
        for name, value in xs:
            print(u'{}\t{}'.format(name, format_number(value)))
        print(u'nodes\t{}'.format(stats[u'nodes']))
        print(u'lp_solves\t{}'.format(stats[u'lp_solves']))
        print(u'time_s\t{:.3f}'.format(stats[u'duration']))

    if solution.status is MilpStatus.OPTIMAL or solution.status is MilpStatus.FEASIBLE:
        return EXIT_OK
    return EXIT_INFEASIBLE


def cmd_check_ideality(args, config):
    """
    Enumerates the vertices of the LP relaxation of the input function's encoding and
    prints the ideality report as JSON. With an indicator variant the report also
    covers the variant's two notable points.
    """
    f = load_function(args.input, exact=True, config=config)
    if args.a0 is not None:
        f = shift(f, args.a0 - f.breakpoints[0])
    if args.indicator is not None:
        report = check_flagged_points(args.indicator, f, config, method=args.method)
    else:
        model = Model()
        _formulation(args, f).build(model, f)
        report = check_local_ideality(model, config=config)
    print(ujson.dumps(report.to_dict(), sort_keys=True, indent=2))
    return EXIT_OK if report.integral else EXIT_FRACTIONAL


def cmd_bench(args, config):
    """
    Runs a comparison table and prints it, failing if any objective is off.
    """
    benchmark = Benchmark(args.fixture, args.sizes, config)
    if args.verbose:
        benchmark.row_signal.connect(_on_row)
        benchmark.finish_signal.connect(_on_bench_finish)
    results = benchmark.run()
    sys.stdout.write(format_table(results, pretty=args.pretty))
    assert_objectives(results)
    return EXIT_OK


def _add_model_arguments(parser, with_sense=True):
    parser.add_argument(u'input', help=u'the function JSON file')
    parser.add_argument(u'--method', choices=sorted(formulations),
                        help=u'the formulation, by default the incremental encoding '
                             u'matching the function')
    parser.add_argument(u'--indicator', choices=[v.value for v in IndicatorVariant],
                        help=u'add a binary indicator of the given variant')
    if with_sense:
        parser.add_argument(u'--sense', choices=[s.value for s in Sense],
                            default=Sense.MIN.value, help=u'the optimization sense')
        parser.add_argument(u'--n', type=_positive, default=1,
                            help=u'the number of copies of the function to sum')


def get_parser():
    parser = argparse.ArgumentParser(
        prog=u'pwlmip',
        description=u'Mixed-integer formulations of discontinuous piecewise linear '
                    u'functions.',
    )
    parser.add_argument(u'--verbose', action=u'store_true',
                        help=u'report progress on stderr')
    commands = parser.add_subparsers(dest=u'command', metavar=u'command')
    commands.required = True

    build = commands.add_parser(u'build', help=u'write the LP file of a model')
    _add_model_arguments(build)
    build.add_argument(u'--out', help=u'the LP file to write, stdout if omitted')
    build.set_defaults(handler=cmd_build)

    solve = commands.add_parser(u'solve', help=u'solve a model')
    _add_model_arguments(solve)
    solve.add_argument(u'--fix-x', type=float, help=u'fix every x to this value')
    solve.add_argument(u'--json', action=u'store_true', help=u'print the result as JSON')
    solve.set_defaults(handler=cmd_solve)

    check = commands.add_parser(u'check-ideality',
                                help=u'enumerate the vertices of an LP relaxation')
    _add_model_arguments(check, with_sense=False)
    check.add_argument(u'--a0', type=Fraction,
                       help=u'translate the function so its domain starts here')
    check.set_defaults(handler=cmd_check_ideality)

    bench = commands.add_parser(u'bench', help=u'run a comparison table')
    bench.add_argument(u'fixture', choices=sorted(fixtures))
    bench.add_argument(u'--sizes', type=_sizes, default=list(DEFAULT_SIZES),
                       help=u'comma separated numbers of functions, or "large" for '
                            u'the larger table rows')
    bench.add_argument(u'--pretty', action=u'store_true', help=u'align the columns')
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None):
    """
    Runs the command line interface.

    :param argv: the arguments, sys.argv[1:] if None
    :return: the exit code
    """
    args = get_parser().parse_args(argv)
    try:
        config = Config.from_environment()
        return args.handler(args, config)
    except BenchMismatchError as e:
        _report(u'error: {}'.format(e))
        return EXIT_BENCH_MISMATCH
    except DimensionGuardError as e:
        _report(u'error: {}'.format(e))
        return EXIT_GUARD
    except PwlmipError as e:
        _report(u'error: {}'.format(e))
        return EXIT_INPUT


if __name__ == u'__main__':
    sys.exit(main())
