import logging
import time


__all__ = ['RunTimer']


logger = logging.getLogger(__name__)


class RunTimer(object):
    """Times a block and logs the elapsed wall-clock seconds at DEBUG level.

    References:
        WithTimer in https://github.com/uber/ludwig/blob/master/ludwig/utils/time_utils.py
    """
    def __init__(self, name=None):
        self.name = '' if name is None else '{}, '.format(name.rstrip())
        self.start_time = None
        self.elapsed = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start_time
        logger.debug('%selapsed_time = %.5fs', self.name, self.elapsed)
