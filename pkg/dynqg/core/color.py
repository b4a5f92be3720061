from __future__ import unicode_literals

from enum import Enum

from dynqg.core.constants import CheckStatus


class AnsiColor(Enum):
    RESET = '[0m'
    BOLD = '[1m'
    RED = '[91m'
    LIGHT_GREEN = '[92m'
    YELLOW = '[93m'


STATUS_COLORS = {
    CheckStatus.PASS: AnsiColor.LIGHT_GREEN,
    CheckStatus.FAIL: AnsiColor.RED,
    CheckStatus.ERROR: AnsiColor.YELLOW,
}


def colorize(text, color, enabled=True):
    """
    :type color: AnsiColor
    :type enabled: bool
    :param enabled: False returns text untouched, for non-tty output.
    """
    if not enabled:
        return text

    return '\x1b{}{}\x1b{}'.format(
        color.value,
        text,
        AnsiColor.RESET.value,
    )


def status_label(status, enabled=True):
    """PASS, FAIL or ERROR, coloured by outcome.

    :type status: CheckStatus
    :rtype: str
    """
    return colorize(
        status.value.upper(),
        STATUS_COLORS[status],
        enabled=enabled,
    )
