from __future__ import absolute_import
from __future__ import unicode_literals

import pytest

from dynqg.core.color import AnsiColor
from dynqg.core.color import colorize
from dynqg.core.color import status_label
from dynqg.core.constants import CheckStatus
from testing.util import uncolor


class TestColorize(object):

    def test_wraps_and_resets(self):
        assert colorize('text', AnsiColor.BOLD) == '\x1b[1mtext\x1b[0m'

    def test_disabled(self):
        assert colorize('text', AnsiColor.BOLD, enabled=False) == 'text'


class TestStatusLabel(object):

    @pytest.mark.parametrize(
        'status,color',
        [
            (CheckStatus.PASS, AnsiColor.LIGHT_GREEN),
            (CheckStatus.FAIL, AnsiColor.RED),
            (CheckStatus.ERROR, AnsiColor.YELLOW),
        ],
    )
    def test_colored_by_outcome(self, status, color):
        label = status_label(status)

        assert label.startswith('\x1b' + color.value)
        assert uncolor(label) == status.value.upper()

    def test_plain(self):
        assert status_label(CheckStatus.FAIL, enabled=False) == 'FAIL'
