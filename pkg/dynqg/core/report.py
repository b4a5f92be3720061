from __future__ import absolute_import
from __future__ import unicode_literals

import json
from collections import namedtuple

from monotonic import monotonic

from dynqg.core.color import AnsiColor
from dynqg.core.color import colorize
from dynqg.core.color import status_label
from dynqg.core.constants import CheckStatus
from dynqg.core.log import log


class CheckResult(
    namedtuple(
        'CheckResult',
        [
            # e.g. "coassociativity[alpha]"
            'name',

            # type: CheckStatus
            'status',

            # Printed non-zero normal form (or error message) for
            # anything that did not pass; None otherwise.
            'witness',

            # Seconds spent evaluating the check.
            'elapsed',
        ],
    ),
):

    def __new__(cls, name, status, witness=None, elapsed=0.0):
        return super(CheckResult, cls).__new__(
            cls,
            name,
            status,
            witness,
            elapsed,
        )

    def json(self, include_timing=False):
        output = {
            'name': self.name,
            'status': self.status.value,
        }
        if self.witness is not None:
            output['witness'] = self.witness
        if include_timing:
            output['elapsed'] = round(self.elapsed, 5)

        return output


class Report(object):
    """Ordered collection of check outcomes for one verification suite.

    Checks are evaluated eagerly through `expect`, `expect_zero` and
    `expect_equal`. Algebraic errors raised while evaluating a check are
    recorded as `error` entries rather than aborting the suite.
    """

    def __init__(self, suite):
        """
        :type suite: str
        """
        self.suite = suite
        self.checks = []

    @property
    def passed(self):
        return all(
            check.status == CheckStatus.PASS
            for check in self.checks
        )

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def failures(self):
        return [
            check
            for check in self.checks
            if check.status != CheckStatus.PASS
        ]

    def add(self, name, passed, witness=None, elapsed=0.0):
        """
        :type name: str
        :type passed: bool
        :type witness: str|None
        """
        status = CheckStatus.PASS if passed else CheckStatus.FAIL
        if passed:
            witness = None
        elif witness is not None:
            witness = str(witness)

        self.checks.append(CheckResult(name, status, witness, elapsed))
        return passed

    def add_error(self, name, error, elapsed=0.0):
        log.debug('Check %s raised %s', name, error)
        self.checks.append(
            CheckResult(
                name,
                CheckStatus.ERROR,
                '{}: {}'.format(error.__class__.__name__, error),
                elapsed,
            ),
        )
        return False

    def expect(self, name, func, witness=None):
        """
        :type func: function
        :param func: returns a bool.

        :type witness: function|None
        :param witness: called on failure to describe it.
        """
        start_time = monotonic()
        try:
            passed = bool(func())
            description = None
            if not passed and witness is not None:
                description = witness()
        except ValueError as e:
            return self.add_error(name, e, monotonic() - start_time)

        return self.add(name, passed, description, monotonic() - start_time)

    def expect_zero(self, name, func):
        """
        :type func: function
        :param func: returns an algebra element, base-ring element or
            matrix-like object offering `is_zero()`; the check passes iff
            it vanishes. Its printed form becomes the witness.
        """
        start_time = monotonic()
        try:
            value = func()
            passed = _is_zero(value)
        except ValueError as e:
            return self.add_error(name, e, monotonic() - start_time)

        return self.add(name, passed, value, monotonic() - start_time)

    def expect_equal(self, name, func):
        """
        :type func: function
        :param func: returns a pair (actual, expected).
        """
        start_time = monotonic()
        try:
            actual, expected = func()
            passed = actual == expected
        except ValueError as e:
            return self.add_error(name, e, monotonic() - start_time)

        witness = None
        if not passed:
            witness = '{} != {}'.format(actual, expected)

        return self.add(name, passed, witness, monotonic() - start_time)

    def extend(self, other, prefix=None):
        """
        :type other: Report
        :type prefix: str|None
        :param prefix: prepended to every merged check name.
        """
        for check in other.checks:
            name = check.name
            if prefix:
                name = '{}/{}'.format(prefix, name)

            self.checks.append(check._replace(name=name))

        return self

    def json(self, include_timing=False):
        output = {
            'suite': self.suite,
            'passed': self.passed,
            'checks': [
                check.json(include_timing)
                for check in self.checks
            ],
        }
        if include_timing:
            output['elapsed'] = round(
                sum(check.elapsed for check in self.checks),
                5,
            )

        return output

    def format(self, output_format='text', include_timing=False, color=True):
        """
        :type output_format: str
        :param output_format: 'json' or 'text'

        :rtype: str
        """
        if output_format == 'json':
            return json.dumps(
                self.json(include_timing),
                indent=2,
                sort_keys=True,
                separators=(',', ': '),
            )

        return self._format_text(include_timing, color)

    def _format_text(self, include_timing, color):
        lines = []
        for check in self.checks:
            line = '{}\t{}'.format(
                status_label(check.status, enabled=color),
                check.name,
            )
            if include_timing:
                line += '\t({:.3f}s)'.format(check.elapsed)
            lines.append(line)

            if check.witness is not None:
                lines.append('\t\t{}'.format(check.witness))

        summary = '{}: {} of {} checks passed'.format(
            self.suite,
            len(self.checks) - len(self.failures()),
            len(self.checks),
        )
        lines.append(colorize(summary, AnsiColor.BOLD, enabled=color))

        return '\n'.join(lines)


def _is_zero(value):
    if hasattr(value, 'is_zero') and callable(value.is_zero):
        return value.is_zero()

    return not value
