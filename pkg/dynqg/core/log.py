import logging
import sys
from contextlib import contextmanager

from monotonic import monotonic


DEFAULT_FORMAT = '[%(module)s]\t%(levelname)s\t%(message)s'

# Indexed by -v count, clamped to the last entry.
VERBOSITY_LEVELS = (
    logging.ERROR,
    logging.INFO,
    logging.DEBUG,
)


def get_logger(name=None, format_string=None):
    """
    :type name: str
    :param name: used for declaring log channels.

    :type format_string: str
    :param format_string: for custom formatting
    """
    logging.captureWarnings(True)
    log = logging.getLogger(name)

    # Bind custom methods to instance.
    log.set_debug_level = _set_debug_level.__get__(log)
    log.timed = _timed.__get__(log)
    log.set_debug_level(0)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter(format_string or DEFAULT_FORMAT),
    )
    log.handlers = [handler]

    return log


def _set_debug_level(self, debug_level):
    """
    :type debug_level: int
    :param debug_level: 0 reports errors only, 1 adds suite progress,
        2 and above adds rewriting traces.
    """
    self.setLevel(
        VERBOSITY_LEVELS[min(debug_level, len(VERBOSITY_LEVELS) - 1)],
    )


@contextmanager
def _timed(self, message, *args):
    """Logs `message` at INFO on entry, and again with the elapsed
    seconds on exit.
    """
    self.info(message, *args)
    start_time = monotonic()
    yield
    self.info(
        (message + ': done in %.3fs'),
        *(args + (monotonic() - start_time,))
    )


log = get_logger('dynqg')
