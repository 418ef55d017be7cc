import argparse
import logging
import os
import sys

from ..errors import GenerationFailed, InstanceParseError, UncrossError
from ..game import make_blue
from ..log_utils import print_arguments, save_arguments, set_logger
from ..time_utils import RunTimer
from ..version import __version__
from .cli_commands import (cmd_gen, cmd_lp_experiment, cmd_play, cmd_replay, cmd_uncross,
                           cmd_verify_fn)
from .cli_instance import GENERATOR_KINDS


__all__ = ['EXIT_OK', 'EXIT_FAILED', 'EXIT_PARSE', 'EXIT_GENERATION', 'build_parser', 'main']


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_GENERATION = 3

SEED_ENV = 'UNCROSSGAME_SEED'


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, '0'))
    except ValueError:
        return 0


def _blue_name(value: str) -> str:
    if value != 'exhaustive':
        try:
            make_blue(value)
        except ValueError as err:
            raise argparse.ArgumentTypeError(str(err))
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='log at INFO level')
    common.add_argument('--log-file', default=None, help='also write the log to this file')
    common.add_argument('--save-args', default=None, help='save the parsed arguments as JSON')
    common.add_argument('--out', default=None, help='write the report here instead of stdout')

    parser = argparse.ArgumentParser(
        prog='uncrossgame',
        description='Uncrossing game on skew-supermodular functions and dual uncrossing.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)
    seed = _default_seed()

    gen = subparsers.add_parser('gen', parents=[common], help='generate a random instance')
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--family-size', type=int, required=True)
    gen.add_argument('--kind', choices=GENERATOR_KINDS, default='requirement')
    gen.add_argument('--seed', type=int, default=seed)
    gen.set_defaults(func=cmd_gen)

    verify = subparsers.add_parser('verify-fn', parents=[common],
                                   help='check skew-supermodularity exhaustively')
    verify.add_argument('instance')
    verify.set_defaults(func=cmd_verify_fn)

    play = subparsers.add_parser('play', parents=[common], help='play the uncrossing game')
    play.add_argument('instance')
    play.add_argument('--red', choices=('paper', 'naive'), default='paper')
    play.add_argument('--blue', type=_blue_name, default='random:0',
                      help='random:SEED, maxpot, alwaysx, none or exhaustive')
    play.add_argument('--cap', type=int, default=None,
                      help='iteration cap (default 8 n^3 |F0|)')
    play.add_argument('--allow-none', action='store_true')
    play.add_argument('--trace', default=None, help='save the game trace here')
    play.set_defaults(func=cmd_play)

    uncross = subparsers.add_parser('uncross', parents=[common],
                                    help='uncross the dual solution of an instance')
    uncross.add_argument('instance')
    uncross.add_argument('--mode', choices=('naive', 'strategic'), default='strategic')
    uncross.add_argument('--scale', default=None, help='multiply every weight by p/q first')
    uncross.add_argument('--alpha-rule', choices=('min', 'unit'), default='min')
    uncross.add_argument('--prescale', action='store_true',
                         help='naive mode: clear denominators before uncrossing')
    uncross.set_defaults(func=cmd_uncross)

    lp = subparsers.add_parser('lp-experiment', parents=[common],
                               help='perturb a suboptimal laminar dual toward an optimum')
    lp.add_argument('instance')
    lp.add_argument('--epsilon', default='1/10')
    lp.add_argument('--trials', type=int, default=20)
    lp.add_argument('--seed', type=int, default=seed)
    lp.set_defaults(func=cmd_lp_experiment)

    rep = subparsers.add_parser('replay', parents=[common], help='replay a saved game trace')
    rep.add_argument('instance')
    rep.add_argument('trace')
    rep.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_logger(args.log_file, level=logging.INFO if args.verbose else logging.WARNING)
    if args.verbose:
        print_arguments(args)
    if args.save_args:
        save_arguments(args.save_args, args)

    try:
        with RunTimer(args.command):
            return args.func(args)
    except InstanceParseError as err:
        logger.error('%s', err)
        return EXIT_PARSE
    except GenerationFailed as err:
        logger.error('%s', err)
        return EXIT_GENERATION
    except UncrossError as err:
        logger.error('%s', err)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
