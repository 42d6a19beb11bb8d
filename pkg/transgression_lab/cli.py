# -*- coding: utf-8 -*-
"""
The ``lab`` command::

    lab list
    lab run <scenario> [--config PATH] [--seed N] [--jobs N] [--out PATH]
                       [--table PATH] [--quick]
    lab check (--all | <scenario> ...) [--quick] [--jobs N] [--out DIR]
    lab export <report> --table PATH

Exit status is 0 when every check passes, 1 when a check failed, 2 for
configuration and usage errors and 3 for numerical breakdowns.
"""
from concurrent.futures import ProcessPoolExecutor
import argparse
import io
import logging
import os
import sys

from . import __version__, errors
from .config import SCENARIO_NAMES, default_config, load_config, merge
from .scenarios import list_scenarios, run_scenario
from .serializer import (TABLE_COLUMNS, dumps, from_graph, load_report,
                         report_graph, write_table)

__all__ = ['main', 'run', 'check', 'export', 'TABLE_COLUMNS', 'EXIT_PASS',
           'EXIT_FAILED', 'EXIT_CONFIG', 'EXIT_BREAKDOWN']

log = logging.getLogger(__name__)


EXIT_PASS = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_BREAKDOWN = 3

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(verbosity):
    level = {-1: logging.WARNING, 0: logging.INFO}.get(verbosity,
                                                       logging.DEBUG)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger('transgression_lab')
    for old in list(root.handlers):
        root.removeHandler(old)
    root.addHandler(handler)
    root.setLevel(level)
    logging.captureWarnings(True)
    warnings_log = logging.getLogger('py.warnings')
    warnings_log.handlers[:] = [handler]


def write_report(report, out=None, table=None):
    graph = report_graph(report)
    if out:
        with io.open(out, 'w', encoding='utf-8') as stream:
            stream.write(dumps(from_graph(graph)))
            stream.write(u'\n')
        log.info("report written to %s", out)
    if table:
        with io.open(table, 'w', encoding='utf-8', newline='') as stream:
            write_table(graph, stream)
        log.info("table written to %s", table)


def _exit_code(report):
    return EXIT_PASS if all(r.passed for r in report.checks) else EXIT_FAILED


def run(config):
    """Run one scenario, write its report and return ``(code, report)``."""
    report = run_scenario(config)
    write_report(report, config.output_path, config.table_path)
    return _exit_code(report), report


def _check_one(name, quick, seed, out_dir):
    config = default_config(name, quick=quick)
    if seed is not None:
        config = merge(config, seed=seed)
    if out_dir:
        config = merge(config,
                       output_path=os.path.join(out_dir, name + '.jsonld'))
    try:
        code, _ = run(config)
    except errors.NumericalBreakdown as e:
        log.error("%s: numerical breakdown: %s", name, e)
        return name, EXIT_BREAKDOWN
    return name, code


def check(names, quick=False, jobs=1, seed=None, out_dir=None):
    """
    Run the named scenarios with their acceptance configuration, at most
    ``jobs`` at a time, and return the worst exit code.
    """
    for name in names:
        if name not in SCENARIO_NAMES:
            raise errors.ConfigError('scenario', "unknown scenario %r"
                                     % (name,))
    if out_dir and not os.path.isdir(out_dir):
        os.makedirs(out_dir)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_one, names,
                                    [quick] * len(names),
                                    [seed] * len(names),
                                    [out_dir] * len(names)))
    else:
        results = [_check_one(name, quick, seed, out_dir) for name in names]
    for name, code in results:
        log.log(logging.INFO if code == EXIT_PASS else logging.WARNING,
                "%-22s %s", name, {EXIT_PASS: 'pass', EXIT_FAILED: 'FAIL',
                                   EXIT_BREAKDOWN: 'BREAKDOWN'}[code])
    return max(code for _, code in results) if results else EXIT_PASS


def export(report_path, table):
    """Flatten a written report document into the CSV table."""
    graph = load_report(report_path)
    with io.open(table, 'w', encoding='utf-8', newline='') as stream:
        write_table(graph, stream)
    return EXIT_PASS


def make_parser():
    parser = argparse.ArgumentParser(
            prog='lab', description="Vertical Morse-Bott flows, "
            "characteristic forms, residues and currents.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', dest='verbosity',
                           action='store_const', const=1, default=0)
    verbosity.add_argument('-q', '--quiet', dest='verbosity',
                           action='store_const', const=-1)
    commands = parser.add_subparsers(dest='command')

    commands.add_parser('list', help="list the scenarios")

    run_parser = commands.add_parser('run', help="run one scenario")
    run_parser.add_argument('scenario', choices=SCENARIO_NAMES)
    run_parser.add_argument('--config', help="JSON config document")
    run_parser.add_argument('--seed', type=int)
    run_parser.add_argument('--jobs', type=int)
    run_parser.add_argument('--out', help="report document path")
    run_parser.add_argument('--table', help="CSV table path")
    run_parser.add_argument('--quick', action='store_true')

    check_parser = commands.add_parser('check',
                                       help="run the acceptance suite")
    check_parser.add_argument('scenarios', nargs='*')
    check_parser.add_argument('--all', action='store_true')
    check_parser.add_argument('--quick', action='store_true')
    check_parser.add_argument('--jobs', type=int, default=1)
    check_parser.add_argument('--seed', type=int)
    check_parser.add_argument('--out', help="directory for the reports")

    export_parser = commands.add_parser('export',
                                        help="write a report as CSV")
    export_parser.add_argument('report')
    export_parser.add_argument('--table', required=True)
    return parser


def _dispatch(args):
    if args.command == 'list':
        for name, anchor, summary in list_scenarios():
            print("%-22s %-12s %s" % (name, anchor, summary))
        return EXIT_PASS
    if args.command == 'run':
        if args.config:
            config = load_config(args.config, scenario=args.scenario,
                                 quick=args.quick)
            if config.scenario != args.scenario:
                raise errors.ConfigError(
                        'scenario', "config is for %r, not %r"
                        % (config.scenario, args.scenario))
        else:
            config = default_config(args.scenario, quick=args.quick)
        config = merge(config, seed=args.seed, jobs=args.jobs,
                       output_path=args.out, table_path=args.table)
        code, _ = run(config)
        return code
    if args.command == 'check':
        if args.all == bool(args.scenarios):
            raise errors.UsageError("give either --all or scenario names")
        if args.jobs < 1:
            raise errors.ConfigError('jobs', "must be at least 1")
        names = list(SCENARIO_NAMES) if args.all else args.scenarios
        return check(names, args.quick, args.jobs, args.seed, args.out)
    if args.command == 'export':
        return export(args.report, args.table)
    raise errors.UsageError("no command given")


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbosity)
    try:
        return _dispatch(args)
    except (errors.ConfigError, errors.UsageError) as e:
        log.error("%s", e)
        return EXIT_CONFIG
    except errors.NumericalBreakdown as e:
        log.error("numerical breakdown: %s", e)
        return EXIT_BREAKDOWN
    except errors.LabException as e:
        log.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILED
    except (IOError, ValueError) as e:
        log.error("cannot read input: %s", e)
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
