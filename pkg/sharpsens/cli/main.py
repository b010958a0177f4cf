from __future__ import print_function
import argparse
import json
import sys

from sharpsens.base import ConfigurationError, DataError, NumericalError
from .config import COMMANDS, RunConfig, schema_document
from .commands import run_command


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog='sharpsens',
        description='Sharp bounds on causal effects under generalized '
                    'marginal sensitivity models.')
    parser.add_argument('command', choices=list(COMMANDS) + ['schema'],
                        help='the operation to run; schema prints the '
                             'configuration schema')
    parser.add_argument('--config', type=str, default=None,
                        help='path of the JSON run configuration')
    parser.add_argument('--seed', type=int, default=None,
                        help='root seed, overrides config.seed')
    parser.add_argument('--threads', type=int, default=None,
                        help='worker threads, overrides config.threads')
    parser.add_argument('--output', type=str, default=None,
                        help='output path, stdout if omitted')
    parser.add_argument('--verbose', action='store_true', default=None,
                        help='print progress to stdout')
    return parser


def main(argv=None):
    r"""
    Command line entry point. Returns the exit code: ``0`` on success, ``1``
    on configuration errors, ``2`` on data errors and ``3`` on numerical
    failures.
    """
    args = build_parser().parse_args(argv)
    if args.command == 'schema':
        json.dump(schema_document(), sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write('\n')
        return EXIT_OK
    try:
        if args.config is None:
            raise ConfigurationError("--config is required for "
                                     "{}".format(args.command))
        run = RunConfig.from_file(args.config, command=args.command,
                                  seed=args.seed, threads=args.threads,
                                  output=args.output, verbose=args.verbose)
        run_command(run)
    except DataError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_DATA
    except NumericalError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
