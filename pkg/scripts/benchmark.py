#!/usr/bin/python3
from __future__ import print_function

import argparse
import json
import os
import statistics
import subprocess
import sys
import tempfile

from monotonic import monotonic

from dynqg.algebra.instances import DEFAULT_WEB_Q
from dynqg.algebra.instances import INSTANCES
from dynqg.core.color import AnsiColor
from dynqg.core.color import colorize
from dynqg.core.constants import Suite


def main():
    args = get_arguments()

    print(
        'Running {} suite on: {}'.format(
            args.suite,
            ', '.join(args.instance),
        ),
        file=sys.stderr,
    )

    timings = {}
    directory = tempfile.mkdtemp(prefix='dynqg-benchmark-')
    for name in args.instance:
        filename = write_instance(name, directory)
        timings[name] = time_execution(
            filename,
            suite=args.suite,
            timeout=args.harakiri,
            num_iterations=args.num_iterations,
        )

    if args.web:
        timings['web-verify'] = time_command(
            ['dynqg', 'web-verify'],
            timeout=args.harakiri,
            num_iterations=args.num_iterations,
        )

    print_output(timings, args)


def get_arguments():
    instances = list(INSTANCES)

    parser = argparse.ArgumentParser(description='Time the verification suites.')
    parser.add_argument(
        '--pretty',
        action='store_true',
        help='Human readable output.',
    )
    parser.add_argument(
        '--instance',
        default=None,       # needs to be None, otherwise append won't work as expected
        choices=instances,
        action='append',
        help=(
            'Specifies an instance to check. May provide multiple values. '
            'Defaults to all.'
        ),
    )
    parser.add_argument(
        '--suite',
        default=Suite.ALL.value,
        choices=[suite.value for suite in Suite],
        help='Suite to time. Defaults to all.',
    )
    parser.add_argument(
        '--web',
        action='store_true',
        help='Also time web-verify.',
    )
    parser.add_argument(
        '--harakiri',
        default=600,
        type=assert_positive(float),
        help=(
            'Specifies an upper bound for the number of seconds to wait '
            'per execution.'
        ),
    )
    parser.add_argument(
        '-n',
        '--num-iterations',
        default=1,
        type=assert_positive(int),
        help=(
            'Specifies the number of times to run the test. '
            'Results will be averaged over this value.'
        ),
    )
    parser.add_argument(
        '--baseline',
        type=assert_valid_file,
        help=(
            'If provided, will compare performance with provided baseline. '
            'Assumes pretty output (otherwise, you can do the comparison '
            'yourself).'
        ),
    )

    args = parser.parse_args()
    if not args.instance:
        if args.baseline:
            args.instance = [
                name
                for name in args.baseline['timings']
                if name in INSTANCES
            ]
        else:
            args.instance = instances

    return args


def assert_positive(type):
    def wrapped(string):
        value = type(string)
        if value <= 0:
            raise argparse.ArgumentTypeError(
                '{} must be a positive {}.'.format(
                    string,
                    type.__name__,
                ),
            )

        return value

    return wrapped


def assert_valid_file(string):
    if not os.path.isfile(string):
        raise argparse.ArgumentTypeError(
            '{} must be a valid file.'.format(string),
        )

    with open(string) as f:
        return json.load(f)


def write_instance(name, directory):
    filename = os.path.join(directory, '{}.yaml'.format(name))
    command = ['dynqg', 'instance', name, '--out', filename]
    if INSTANCES[name][1]:
        command += ['--param', 'q={}'.format(DEFAULT_WEB_Q)]

    subprocess.check_call(command)
    return filename


def time_execution(filename, suite, timeout, num_iterations=1):
    """
    :type filename: str
    :param filename: spec file to check.

    :type suite: str
    :type timeout: float
    :type num_iterations: int
    """
    return time_command(
        ['dynqg', 'check', filename, '--suite', suite],
        timeout=timeout,
        num_iterations=num_iterations,
    )


def time_command(command, timeout, num_iterations=1):
    scores = []
    for _ in range(num_iterations):
        start_time = monotonic()
        try:
            # Exit status is ignored.
            subprocess.run(
                command,
                stdout=subprocess.DEVNULL,
                timeout=timeout,
            )
            scores.append(monotonic() - start_time)
        except subprocess.TimeoutExpired:
            scores.append(timeout)

    result = statistics.mean(scores)
    if result == timeout:
        return None

    return round(result, 5)


def print_output(timings, args):
    """
    :type timings: dict
    :type args: Namespace
    """
    if not args.pretty and not args.baseline:
        print(
            json.dumps({
                'suite': args.suite,
                'timings': timings,
            }),
        )
        return

    baseline = args.baseline['timings'] if args.baseline else {}
    if not baseline:
        print('-' * 45)
        print('{:<25s}{:>15s}'.format('instance', 'time'))
        print('-' * 45)
    else:
        print('-' * 60)
        print('{:<25s}{:>11s}{:>22s}'.format('instance', 'time', 'change'))
        print('-' * 60)

    for key in sorted(timings):
        print_line(
            key,
            time=timings[key],
            baseline=_get_baseline_value(baseline, key),
            timeout=args.harakiri,
        )

    if not args.baseline:
        print('-' * 45)
    else:
        print('-' * 60)


def _get_baseline_value(baseline, key):
    """
    None without a baseline; 0 for a baseline run that timed out, which
    is stored as None.
    """
    if key in baseline:
        return 0 if baseline[key] is None else baseline[key]


def print_line(name, time, baseline, timeout):
    """
    :type name: str

    :type time: float
    :param time: seconds it took to execute

    :type baseline: float
    :param baseline: expected seconds to execute

    :type timeout: float
    :param timeout: stands in for whichever run exceeded it.
    """
    if not time:
        time_string = 'Timeout exceeded!'
    else:
        time_string = '{}s'.format(str(time))

    if baseline is None:
        print('{:<25s}{:>20s}'.format(name, time_string))
        return

    if time and baseline:
        difference = round(baseline - time, 2)
    elif time:
        difference = round(timeout - time, 2)
    elif baseline:
        difference = round(timeout - baseline, 2)
    else:
        difference = 0

    if difference > 0:
        difference_string = '{:>22s}'.format(
            colorize('▲  {}'.format(difference), AnsiColor.LIGHT_GREEN),
        )
    elif difference < 0:
        difference_string = '{:>22s}'.format(
            colorize('▼ {}'.format(difference), AnsiColor.RED),
        )
    else:
        difference_string = '{:>10s}'.format('-')

    print(
        '{:<25s}{:^20s}{}'.format(
            name,
            time_string,
            difference_string,
        ),
    )


if __name__ == '__main__':
    main()
