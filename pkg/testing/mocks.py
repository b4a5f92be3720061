"""This is a collection of utility functions for easier, DRY testing."""
from collections import defaultdict
from contextlib import contextmanager

import mock


@contextmanager
def mock_log(namespace):
    """Replaces the `log` found at `namespace` with a recorder.

    Usage: mock_log('dynqg.main.log') => .error_messages, .info_messages
    """
    class MockLogWrapper(object):
        """This is used to check what is being logged."""

        def __init__(self):
            self.messages = defaultdict(str)

        def _record(self, level, message, *args):
            self.messages[level] += (str(message) + '\n') % args

        def error(self, message, *args):
            self._record('error', message, *args)

        def warning(self, message, *args):
            self._record('warning', message, *args)

        def info(self, message, *args):
            self._record('info', message, *args)

        def debug(self, message, *args):
            self._record('debug', message, *args)

        @contextmanager
        def timed(self, message, *args):
            self.info(message, *args)
            yield
            self.info(message + ': done', *args)

        def set_debug_level(self, debug_level):
            self.messages['level'] = str(debug_level)

        @property
        def error_messages(self):
            return self.messages['error']

        @property
        def info_messages(self):
            return self.messages['info']

        @property
        def debug_messages(self):
            return self.messages['debug']

    wrapper = MockLogWrapper()
    with mock.patch(namespace, wrapper):
        yield wrapper
