import argparse
import json
import logging
import sys


__all__ = ['set_logger', 'print_arguments', 'save_arguments']


def set_logger(filename=None, level=logging.INFO, logger_name='uncrossgame', formatter=None,
               with_print=True):
    """Points the package logger at a file and/or the console.

    Calling it again replaces the handlers installed by an earlier call.
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)

    if formatter is None:
        formatter = logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s')

    for handler in logger.handlers[:]:
        # FileHandler is a StreamHandler too
        if isinstance(handler, logging.StreamHandler):
            logger.removeHandler(handler)
            handler.close()

    if filename is not None:
        file_handler = logging.FileHandler(filename, encoding='utf-8')
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    if with_print:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
    return logger


def print_arguments(args):
    assert isinstance(args, argparse.Namespace)
    for key, value in sorted(vars(args).items()):
        if key != 'func':
            print('{}: {}'.format(key, value), file=sys.stderr)


def save_arguments(filename, args, sort=True):
    assert isinstance(args, argparse.Namespace)
    arguments = {key: value for key, value in vars(args).items() if key != 'func'}
    with open(filename, 'w', encoding='utf-8') as f:
        json.dump(arguments, f, indent=4, sort_keys=sort, default=str)
