"""The shipped dynamical quantum groups and the web of base changes
between them."""
from __future__ import absolute_import

from collections import namedtuple
from collections import OrderedDict
from fractions import Fraction

from dynqg.algebra.basematrix import BMatrix
from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import apply_hom
from dynqg.algebra.coeff import constant_base
from dynqg.algebra.coeff import cx_base
from dynqg.algebra.coeff import HOM_NAMES
from dynqg.algebra.coeff import mq_base
from dynqg.algebra.coeff import standard_hom
from dynqg.algebra.coeff import sudq_base
from dynqg.algebra.hopf import base_change
from dynqg.algebra.matrix import ao_triple
from dynqg.algebra.matrix import construct_AoFG
from dynqg.algebra.matrix import map_matrix
from dynqg.algebra.morphism import star_morphism
from dynqg.algebra.ncalg import is_equivalent
from dynqg.algebra.tensor import transport
from dynqg.core.log import log
from dynqg.core.report import Report


class InadmissibleParameterError(AlgebraError):
    pass


SU2_NAMES = [['alpha', 'beta'], ['gamma', 'delta']]
SU2_PRECEDENCE = ['delta', 'alpha', 'beta', 'gamma']
SU2_NABLA = [1, -1]

DEFAULT_WEB_Q = Fraction(2, 3)


class InstanceBundle(
    namedtuple(
        'InstanceBundle',
        [
            # CLI name, e.g. sudq2
            'name',

            # type: HopfData
            'hopf',

            # The statement this instance realises.
            'provenance',
        ],
    ),
):

    @property
    def presentation(self):
        return self.hopf.presentation

    @property
    def characters(self):
        return self.hopf.characters

    @property
    def matrices(self):
        return self.hopf.matrices

    def verify(self, **kwargs):
        return self.hopf.suite('all', **kwargs)


def _su2_bundle(name, base, F, G, title, provenance, step_budget=None):
    kwargs = {}
    if step_budget is not None:
        kwargs['step_budget'] = step_budget

    hopf = construct_AoFG(
        base,
        SU2_NABLA,
        BMatrix(base, F),
        BMatrix(base, G),
        names=SU2_NAMES,
        name=title,
        precedence=SU2_PRECEDENCE,
        **kwargs
    )
    hopf.provenance = provenance
    log.info('Built instance %s (%d rules)', name, len(hopf.presentation.rules))
    return InstanceBundle(name, hopf, provenance)


def build_sudq2(step_budget=None):
    """O(SU^dyn_Q(2)) = A_o(nabla, F, G) over B_sudQ with nabla = (1, -1),
    F = [[0, -1], [Z[0,-1], 0]] and G = [[0, -Q], [1, 0]]."""
    base = sudq_base()
    Q = base.var('Q')
    return _su2_bundle(
        'sudq2',
        base,
        [[0, -1], [base.shift_ratio_quotient(0, -1), 0]],
        [[0, -Q], [1, 0]],
        'SU_Q^dyn(2)',
        'dynamical SU_Q(2) as A_o(nabla, F, G)',
        step_budget,
    )


def check_admissible(q):
    q = Fraction(q)
    if q in (0, 1, -1):
        raise InadmissibleParameterError(
            'q = {} is not admissible; q must differ from 0, 1 and -1.'.format(q),
        )

    return q


def build_frt_su2(q, step_budget=None):
    """FRT SU_q(2) over Q(x): F = [[0, -1], [Z[0,-1], 0]] and
    G = [[0, -1], [q^{-1}, 0]].

    :type q: Fraction
    """
    q = check_admissible(q)
    base = mq_base(q)
    return _su2_bundle(
        'frt-su2',
        base,
        [[0, -1], [base.shift_ratio_quotient(0, -1), 0]],
        [[0, -1], [1 / q, 0]],
        'SU_q^FRT(2)',
        'FRT SU_q(2) at q = {}'.format(q),
        step_budget,
    )


def build_woronowicz_su2(q, step_budget=None):
    """Woronowicz SU_q(2) over Q with F = G = [[0, -1], [q^{-1}, 0]]."""
    q = check_admissible(q)
    base = constant_base()
    matrix = [[0, -1], [1 / q, 0]]
    return _su2_bundle(
        'su-q2',
        base,
        matrix,
        matrix,
        'SU_q(2)',
        'Woronowicz SU_q(2) at q = {}'.format(q),
        step_budget,
    )


def build_classical_su2(step_budget=None):
    """O(SU(2)) over Q(X) with F = G = [[0, -1], [1, 0]]."""
    matrix = [[0, -1], [1, 0]]
    return _su2_bundle(
        'classical',
        cx_base(),
        matrix,
        matrix,
        'SU(2)',
        'classical SU(2) over Q(X)',
        step_budget,
    )


INSTANCES = OrderedDict([
    ('sudq2', (build_sudq2, False)),
    ('frt-su2', (build_frt_su2, True)),
    ('su-q2', (build_woronowicz_su2, True)),
    ('classical', (build_classical_su2, False)),
])


def instance_catalog():
    """CLI names of the shipped instances and base homomorphisms.

    :rtype: dict
    """
    return {
        'instances': list(INSTANCES),
        'homs': list(HOM_NAMES),
    }


def build_instance(name, q=None, step_budget=None):
    """
    :type name: str
    :type q: Fraction|None
    :param q: required by frt-su2 and su-q2.
    """
    try:
        builder, needs_q = INSTANCES[name]
    except KeyError:
        raise AlgebraError('Unknown instance {}.'.format(name))

    if not needs_q:
        return builder(step_budget=step_budget)
    if q is None:
        raise InadmissibleParameterError('{} needs --param q=NUM.'.format(name))

    return builder(q, step_budget=step_budget)


def standard_su2_relations(presentation):
    """a c = q c a, a c* = q c* a, c c* = c* c, a* a + c* c = 1,
    a a* + q^2 c c* = 1 and c a* = q a* c, for a = alpha and c = gamma.

    :type presentation: Presentation
    :param presentation: over a base in which Q has become a number.

    :rtype: OrderedDict
    :returns: name => element, each 0 in SU_q(2).
    """
    A = presentation
    q = _deformation(A)
    a, c = A.gen('alpha'), A.gen('gamma')
    a_star, c_star = A.star(a), A.star(c)

    return OrderedDict([
        ('ac', a * c - c * a * q),
        ('ac*', a * c_star - c_star * a * q),
        ('cc*', c * c_star - c_star * c),
        ('a*a+c*c', a_star * a + c_star * c - 1),
        ('aa*+q2cc*', a * a_star + c * c_star * (q * q) - 1),
        ('ca*', c * a_star - a_star * c * q),
    ])


def _deformation(presentation):
    """q read off from conj(beta) = -q gamma."""
    A = presentation
    image = A.star(A.gen('beta'))
    gamma = A.word(['gamma'])
    if set(image.terms) != {gamma}:
        raise AlgebraError('beta* is not a multiple of gamma in {}.'.format(A.name))

    c = -image.terms[gamma]
    if not (c.numer.is_ground and c.denom.is_ground):
        raise AlgebraError('q is not a number in {}.'.format(A.name))

    return Fraction(str(c.numer.LC)) / Fraction(str(c.denom.LC))


def _unitary_defect(hopf):
    """conj(v) - v^{-T}."""
    triple = ao_triple(hopf)
    return map_matrix(star_morphism(hopf.presentation), triple.v) - triple.u


def _check_relations_vanish(report, prefix, presentation):
    for name, element in standard_su2_relations(presentation).items():
        report.expect_zero(
            '{}/su2[{}]'.format(prefix, name),
            lambda: element,
        )


def _check_commutative(report, prefix, presentation):
    A = presentation
    for first in A.names:
        for second in A.names:
            if first >= second:
                continue
            report.expect_zero(
                '{}/commute[{},{}]'.format(prefix, first, second),
                lambda: A.gen(first) * A.gen(second) - A.gen(second) * A.gen(first),
            )


def verify_base_change_web(q=DEFAULT_WEB_Q, sudq=None):
    """Specialisations of SU^dyn_Q(2):
        pi-q-m            gives FRT SU_q(2);
        pi-q-minus-inf    gives SU_q(2), with a unitary v;
        pi-q-plus-inf     gives the opposite of SU_q(2);
        pi-1-cx           gives classical SU(2).

    :type q: Fraction
    :type sudq: InstanceBundle|None
    :rtype: Report
    """
    q = check_admissible(q)
    sudq = sudq or build_sudq2()
    source = sudq.hopf
    base = source.presentation.base
    report = Report('web')

    hom = standard_hom('pi-q-m', q)
    frt = build_frt_su2(q)
    target = frt.presentation.base
    f = base.shift_ratio_quotient(-2, -1)
    report.expect_equal(
        'frt/f1-inverse',
        lambda: (
            apply_hom(hom, 1 / base.act((1,), f)),
            target.shift_ratio_quotient(0, -1),
        ),
    )
    pushed = _push(report, 'frt', source, hom)
    if pushed is not None:
        report.expect(
            'frt/relations',
            lambda: is_equivalent(pushed.presentation, frt.presentation),
        )

    minus = _push(report, 'minus-inf', source, standard_hom('pi-q-minus-inf', q))
    if minus is not None:
        report.expect_equal(
            'minus-inf/F',
            lambda: (
                minus.matrices['F'],
                BMatrix(minus.presentation.base, [[0, -1], [1 / q, 0]]),
            ),
        )
        report.expect_zero('minus-inf/unitary', lambda: _unitary_defect(minus))
        _check_relations_vanish(report, 'minus-inf', minus.presentation)
        report.expect(
            'minus-inf/woronowicz',
            lambda: is_equivalent(
                minus.presentation,
                build_woronowicz_su2(q).presentation,
            ),
        )

    plus = _push(report, 'plus-inf', source, standard_hom('pi-q-plus-inf', q))
    if plus is not None:
        report.expect_equal(
            'plus-inf/F',
            lambda: (
                plus.matrices['F'],
                BMatrix(plus.presentation.base, [[0, -1], [q, 0]]),
            ),
        )
        if minus is not None:
            report.expect(
                'plus-inf/opposite',
                lambda: is_equivalent(
                    plus.presentation,
                    transport(minus.presentation, 'op').presentation,
                    compare_degrees=False,
                ),
            )

    classical = _push(report, 'classical', source, standard_hom('pi-1-cx'))
    if classical is not None:
        expected = BMatrix(classical.presentation.base, [[0, -1], [1, 0]])
        for name in ('F', 'G'):
            report.expect_equal(
                'classical/{}'.format(name),
                lambda: (classical.matrices[name], expected),
            )
        report.expect_zero('classical/unitary', lambda: _unitary_defect(classical))
        _check_commutative(report, 'classical', classical.presentation)
        report.expect(
            'classical/relations',
            lambda: is_equivalent(
                classical.presentation,
                build_classical_su2().presentation,
            ),
        )

    return report


def _push(report, prefix, hopf, hom):
    try:
        return base_change(hopf, hom)
    except AlgebraError as e:
        report.add_error('{}/base-change'.format(prefix), e)
        return None
