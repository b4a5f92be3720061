#!/usr/bin/python
from __future__ import absolute_import
from __future__ import print_function
from __future__ import unicode_literals

import sys

from dynqg.algebra.coeff import standard_hom
from dynqg.algebra.hopf import base_change
from dynqg.algebra.instances import build_instance
from dynqg.algebra.instances import DEFAULT_WEB_Q
from dynqg.algebra.instances import verify_base_change_web
from dynqg.algebra.ncalg import check_local_confluence
from dynqg.core.constants import Suite
from dynqg.core.log import log
from dynqg.core.parser import parse
from dynqg.core.specfile import dump_spec
from dynqg.core.specfile import read_spec
from dynqg.core.specfile import save_spec
from dynqg.core.usage import ParserBuilder


def parse_args(argv):
    return ParserBuilder()\
        .add_console_use_arguments()\
        .parse_args(argv)


def main(argv=None):
    """
    :returns: 0 if everything passed, 1 if a check failed, 2 on usage,
        format or precondition errors.
    """
    if len(sys.argv) == 1:  # pragma: no cover
        sys.argv.append('-h')

    args = parse_args(argv)
    if args.verbose:  # pragma: no cover
        log.set_debug_level(args.verbose)

    try:
        return _run(args)
    except ValueError as e:
        log.error('%s', e)
        return 2


def _run(args):
    if args.action == 'instance':
        bundle = build_instance(args.name, q=args.q, step_budget=args.budget)
        _write_spec(bundle.hopf, args.out)

    elif args.action == 'reduce':
        spec = read_spec(args.spec, step_budget=args.budget)
        print(parse(args.expression, spec.presentation))

    elif args.action == 'map':
        hopf = read_spec(args.spec, step_budget=args.budget).require_hopf()

        # The antipode is printed in the notation of A, not of A^{co,op}.
        if args.morphism == 'antipode':
            phi = hopf.antipode_in_algebra
        else:
            phi = hopf.morphism(args.morphism)

        print(phi.apply(parse(args.expression, hopf.presentation)))

    elif args.action == 'check':
        return _check(args)

    elif args.action == 'base-change':
        hopf = read_spec(args.spec, step_budget=args.budget).require_hopf()
        pushed = base_change(hopf, standard_hom(args.hom, args.q))
        _write_spec(pushed, args.out)

    elif args.action == 'web-verify':
        report = verify_base_change_web(
            args.q if args.q is not None else DEFAULT_WEB_Q,
        )
        _print_report(report, args)
        return report.exit_code

    return 0


def _check(args):
    spec = read_spec(args.spec, step_budget=args.budget)
    if spec.hopf is None and args.suite == Suite.CONFLUENCE.value:
        report = check_local_confluence(spec.presentation, args.overlap_length)
    else:
        report = spec.require_hopf().suite(
            args.suite,
            max_overlap_len=args.overlap_length,
            character_range=args.character_range,
        )

    _print_report(report, args)
    return report.exit_code


def _print_report(report, args):
    print(
        report.format(
            args.output_format,
            include_timing=args.timing,
            color=sys.stdout.isatty(),
        ),
    )


def _write_spec(algebra, filename):
    if filename:
        save_spec(algebra, filename)
    else:
        print(dump_spec(algebra), end='')


if __name__ == '__main__':
    sys.exit(main())
