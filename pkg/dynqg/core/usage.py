from __future__ import absolute_import

import argparse
from fractions import Fraction

from dynqg import VERSION
from dynqg.algebra.instances import instance_catalog
from dynqg.core.constants import DEFAULT_CHARACTER_RANGE
from dynqg.core.constants import DEFAULT_OVERLAP_LENGTH
from dynqg.core.constants import DEFAULT_STEP_BUDGET
from dynqg.core.constants import Suite


def add_format_argument(parser):
    parser.add_argument(
        '--format',
        choices=('text', 'json'),
        default='text',
        dest='output_format',
        help='Report serialization. Defaults to text.',
    )


def add_budget_argument(parser):
    parser.add_argument(
        '--budget',
        type=_argparse_minmax_type(int, minimum=1),
        default=DEFAULT_STEP_BUDGET,
        help='Maximal number of rewriting steps per reduction.',
    )


def add_timing_argument(parser):
    parser.add_argument(
        '--timing',
        action='store_true',
        help='Include per-check timings in reports.',
    )


def add_param_argument(parser):
    parser.add_argument(
        '--param',
        type=_argparse_param_type,
        metavar='q=NUM',
        dest='q',
        help='Deformation parameter, as an exact rational (e.g. 2/3).',
    )


def add_out_argument(parser):
    parser.add_argument(
        '--out',
        metavar='FILE',
        help='Write the spec file here instead of stdout.',
    )


def add_spec_argument(parser):
    parser.add_argument(
        'spec',
        metavar='SPEC',
        help='Algebra spec file.',
    )


def add_expression_argument(parser):
    parser.add_argument(
        '-e',
        '--expression',
        required=True,
        help='Expression in the generators of SPEC.',
    )


class ParserBuilder(object):

    def __init__(self):
        self.parser = argparse.ArgumentParser(prog='dynqg')

        self.add_default_arguments()

    def add_default_arguments(self):
        self._add_verbosity_argument()\
            ._add_version_argument()

    def add_console_use_arguments(self):
        subparser = self.parser.add_subparsers(
            dest='action',
        )

        for action_parser in (
            InstanceOptions,
            ReduceOptions,
            MapOptions,
            CheckOptions,
            BaseChangeOptions,
            WebVerifyOptions,
        ):
            action_parser(subparser).add_arguments()

        return self

    def parse_args(self, argv):
        output = self.parser.parse_args(argv)
        if not output.action:
            self.parser.error('a command is required')

        return output

    def _add_version_argument(self):
        self.parser.add_argument(
            '--version',
            action='version',
            version=VERSION,
            help='Display version information.',
        )
        return self

    def _add_verbosity_argument(self):
        self.parser.add_argument(
            '-v',
            '--verbose',
            action='count',
            default=0,
            help='Verbose mode.',
        )
        return self


class InstanceOptions(object):

    def __init__(self, subparser):
        self.parser = subparser.add_parser(
            'instance',
            help='Write the spec file of a shipped instance.',
        )

    def add_arguments(self):
        self.parser.add_argument(
            'name',
            choices=instance_catalog()['instances'],
            help='Which instance to build.',
        )
        add_param_argument(self.parser)
        add_out_argument(self.parser)
        add_budget_argument(self.parser)

        return self


class ReduceOptions(object):

    def __init__(self, subparser):
        self.parser = subparser.add_parser(
            'reduce',
            help='Print the normal form of an expression.',
        )

    def add_arguments(self):
        add_spec_argument(self.parser)
        add_expression_argument(self.parser)
        add_budget_argument(self.parser)

        return self


class MapOptions(object):

    def __init__(self, subparser):
        self.parser = subparser.add_parser(
            'map',
            help='Apply a structure map to an expression.',
        )

    def add_arguments(self):
        add_spec_argument(self.parser)
        self.parser.add_argument(
            '--morphism',
            required=True,
            help='delta, epsilon, antipode or theta:K.',
        )
        add_expression_argument(self.parser)
        add_budget_argument(self.parser)

        return self


class CheckOptions(object):

    def __init__(self, subparser):
        self.parser = subparser.add_parser(
            'check',
            help='Run a verification suite and report on it.',
        )

    def add_arguments(self):
        add_spec_argument(self.parser)
        self.parser.add_argument(
            '--suite',
            choices=[suite.value for suite in Suite],
            default=Suite.ALL.value,
            help='Which suite to run. Defaults to all.',
        )
        self.parser.add_argument(
            '--overlap-length',
            type=_argparse_minmax_type(int, minimum=2),
            default=DEFAULT_OVERLAP_LENGTH,
            help='Longest overlap word searched for ambiguities.',
        )
        self.parser.add_argument(
            '--character-range',
            type=_argparse_minmax_type(int, minimum=0),
            default=DEFAULT_CHARACTER_RANGE,
            help='Check characters theta^(k) for |k| up to this value.',
        )
        add_format_argument(self.parser)
        add_timing_argument(self.parser)
        add_budget_argument(self.parser)

        return self


class BaseChangeOptions(object):

    def __init__(self, subparser):
        self.parser = subparser.add_parser(
            'base-change',
            help='Push a spec along a base homomorphism.',
        )

    def add_arguments(self):
        add_spec_argument(self.parser)
        self.parser.add_argument(
            '--hom',
            required=True,
            choices=instance_catalog()['homs'],
            help='Base homomorphism out of B_sudQ.',
        )
        add_param_argument(self.parser)
        add_out_argument(self.parser)
        add_budget_argument(self.parser)

        return self


class WebVerifyOptions(object):

    def __init__(self, subparser):
        self.parser = subparser.add_parser(
            'web-verify',
            help='Check the specialisations of SU_Q^dyn(2).',
        )

    def add_arguments(self):
        add_param_argument(self.parser)
        add_format_argument(self.parser)
        add_timing_argument(self.parser)

        return self


def _argparse_minmax_type(type_, minimum=None, maximum=None):
    def wrapped(string):
        try:
            value = type_(string)
        except ValueError:
            raise argparse.ArgumentTypeError(
                '{} is not a valid {}.'.format(string, type_.__name__),
            )

        if (minimum is not None and value < minimum) or \
                (maximum is not None and value > maximum):
            raise argparse.ArgumentTypeError(
                '{} is out of range.'.format(string),
            )

        return value

    return wrapped


def _argparse_param_type(string):
    """q=NUM, with NUM an exact rational: 2/3, -5, 0.5.

    :rtype: Fraction
    """
    name, separator, value = string.partition('=')
    if not separator or name.strip() != 'q':
        raise argparse.ArgumentTypeError(
            'Expected q=NUM, got {}.'.format(string),
        )

    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            '{} is not an exact rational.'.format(value),
        )
