from __future__ import absolute_import

import random
from fractions import Fraction

import pytest
from sympy import cancel
from sympy import limit
from sympy import symbols

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import apply_hom
from dynqg.algebra.coeff import BaseHom
from dynqg.algebra.coeff import BaseSpec
from dynqg.algebra.coeff import check_hom
from dynqg.algebra.coeff import coefficient_field
from dynqg.algebra.coeff import compose_homs
from dynqg.algebra.coeff import cx_base
from dynqg.algebra.coeff import format_ratfunc
from dynqg.algebra.coeff import format_shift_ratios
from dynqg.algebra.coeff import gamma_act
from dynqg.algebra.coeff import identity_hom
from dynqg.algebra.coeff import involve
from dynqg.algebra.coeff import mq_base
from dynqg.algebra.coeff import PoleError
from dynqg.algebra.coeff import power
from dynqg.algebra.coeff import RankMismatchError
from dynqg.algebra.coeff import standard_bases
from dynqg.algebra.coeff import standard_hom
from dynqg.algebra.coeff import substitute
from dynqg.algebra.coeff import sudq_base
from dynqg.algebra.coeff import validate_base
from dynqg.algebra.coeff import VarSpec
from dynqg.core.constants import SHARED
from testing.factories import random_fraction


Q_VALUE = Fraction(2, 3)


@pytest.fixture
def base():
    return sudq_base()


class TestBaseSpec(object):

    def test_action_on_variables(self, base):
        Q, X, Y = base.generators()

        assert base.act((1,), X) == X / Q
        assert base.act((1,), Y) == Q * Y
        assert base.act((-2,), X) == Q ** 2 * X
        assert base.act((0,), X - Y) == X - Y

    def test_action_is_a_group_action(self, base):
        Q, X, Y = base.generators()
        b = (X + Q) / (Y - X)

        assert base.act((2,), base.act((-3,), b)) == base.act((-1,), b)
        assert gamma_act(base, (0,), b) == b

    def test_shift_ratio_quotient(self, base):
        Q, X, Y = base.generators()

        assert base.shift_ratio_quotient(0, -1) == Q * (X - Y) / (Q ** 2 * X - Y)
        assert base.shift_ratio_quotient(1, 1) == base.field.one

    def test_shared_variables_are_fixed(self, base):
        Q = base.var('Q')

        assert base.shared_names == ['Q']
        assert base.dynamical_names == ['X', 'Y']
        assert base.act((5,), Q) == Q

    def test_unknown_variable(self, base):
        with pytest.raises(AlgebraError):
            base.var('W')

    @pytest.mark.parametrize(
        'g',
        [
            (1, 2),
            (),
        ],
    )
    def test_rank_mismatch(self, base, g):
        with pytest.raises(RankMismatchError):
            base.act(g, base.var('X'))

    def test_set_action_out_of_range(self):
        fresh = BaseSpec('B_test', [VarSpec('x')])

        with pytest.raises(RankMismatchError):
            fresh.set_action(1, {}, {})

    def test_invalid_variable_kind(self):
        with pytest.raises(AlgebraError):
            VarSpec('x', 'sideways')

    def test_z2_action_commutes(self):
        fresh = BaseSpec(
            'B_z2',
            [VarSpec('u'), VarSpec('w'), VarSpec('t', SHARED)],
            gamma_rank=2,
        )
        u, w, t = fresh.generators()
        fresh.set_action(0, {'u': u / t}, {'u': u * t})
        fresh.set_action(1, {'w': w + 1}, {'w': w - 1})

        assert fresh.act((1, 1), u * w) == u / t * (w + 1)
        assert validate_base(fresh).passed


class TestArithmetic(object):

    def test_power_keeps_canonical_form(self, base):
        X = base.var('X')

        assert power(X, -2) == 1 / X ** 2
        assert power(X, 0) == base.field.one

    def test_substitute_pole(self, base):
        Q, X, Y = base.generators()

        with pytest.raises(PoleError):
            substitute(1 / (X - Y), [Q, X, X], base.field)

    def test_format(self, base):
        Q, X, Y = base.generators()

        assert format_ratfunc(X - Y) == 'X - Y'
        assert format_ratfunc(X) == 'X'
        assert format_ratfunc(base.field.zero) == '0'


class TestValidateBase(object):

    @pytest.mark.parametrize(
        'name',
        ['B_sudQ', 'B_Mq', 'B_lambda', 'B_R', 'B_CX', 'B_Q'],
    )
    def test_shipped_bases(self, name):
        assert validate_base(standard_bases()[name]).passed

    def test_inverse_mismatch(self):
        fresh = BaseSpec('B_broken', [VarSpec('x')])
        x, = fresh.generators()
        fresh.set_action(0, {'x': x + 1}, {'x': x + 2})

        report = validate_base(fresh)

        assert not report.passed
        assert [check.name for check in report.failures()] == ['inverse[x; e1]']

    def test_non_involutive_star(self):
        fresh = BaseSpec('B_broken', [VarSpec('x')])
        x, = fresh.generators()
        fresh.set_star({'x': 2 * x})

        assert not validate_base(fresh).passed


class TestBaseHom(object):

    @pytest.mark.parametrize(
        'name',
        ['pi-q-m', 'pi-q-minus-inf', 'pi-q-plus-inf', 'pi-1-cx'],
    )
    def test_standard_homs_are_equivariant(self, name):
        assert check_hom(standard_hom(name, Q_VALUE)).passed

    def test_pi_q_m_images(self, base):
        hom = standard_hom('pi-q-m', Q_VALUE)
        target = hom.target
        x = target.var('x')

        assert target is mq_base(Q_VALUE)
        assert apply_hom(hom, base.var('Y')) == 1 / x
        assert apply_hom(hom, base.shift_ratio) == target.shift_ratio
        assert apply_hom(hom, base.shift_ratio_quotient(0, -1)) == \
            target.shift_ratio_quotient(0, -1)

    def test_limit_homomorphism(self, base):
        hom = standard_hom('pi-1')
        Q, X, Y = base.generators()

        assert apply_hom(hom, Q) == hom.target.field.one
        assert apply_hom(hom, (X - Y) / (Q - 1)) == 2 * hom.target.var('lambda')

    def test_limit_pole(self, base):
        Q, X, Y = base.generators()

        with pytest.raises(PoleError):
            apply_hom(standard_hom('pi-1'), 1 / (X - Y))

    def test_numeric_q_required(self):
        with pytest.raises(AlgebraError):
            standard_hom('pi-q-minus-inf')

    def test_unknown_hom(self):
        with pytest.raises(AlgebraError):
            standard_hom('pi-7')

    def test_missing_assignment(self, base):
        with pytest.raises(AlgebraError):
            BaseHom('partial', base, cx_base(), {'Q': 1})

    def test_not_equivariant(self):
        source = cx_base()
        X = source.var('X')
        hom = BaseHom('double', source, source, {'X': 2 * X})

        report = check_hom(hom)

        assert not report.passed
        assert report.failures()[0].name == 'equivariant[X; e1]'

    def test_compose(self, base):
        hom = standard_hom('pi-q-m', Q_VALUE)
        composed = compose_homs(identity_hom(hom.target), hom)
        b = base.shift_ratio_quotient(-1, -2)

        assert apply_hom(composed, b) == apply_hom(hom, b)

    def test_cannot_compose_after_limit(self):
        hom = standard_hom('pi-1')

        with pytest.raises(AlgebraError):
            compose_homs(identity_hom(hom.target), hom)


class TestCoefficientField(object):

    def test_symbols(self, base):
        cfield = coefficient_field(base, ('r', 's'))

        assert cfield.symbol_names() == ['Q', 'X_r', 'Y_r', 'X_s', 'Y_s']
        assert coefficient_field(base, ('r', 's')) is cfield

    def test_embed(self, base):
        cfield = coefficient_field(base, ('r', 's'))

        assert cfield.embed(base.var('X'), 's') == cfield.symbol_by_name('X_s')
        assert cfield.embed(base.var('Q'), 'r') == cfield.symbol_by_name('Q')

    def test_unknown_leg(self, base):
        cfield = coefficient_field(base, ('r', 's'))

        with pytest.raises(AlgebraError):
            cfield.embed(base.var('X'), 'm1')

    def test_twist_moves_one_leg(self, base):
        cfield = coefficient_field(base, ('r', 's'))
        Q, X_r, X_s = (cfield.symbol_by_name(name) for name in ('Q', 'X_r', 'X_s'))

        assert cfield.twist(X_r * X_s, {'r': (1,)}) == X_r / Q * X_s

    def test_transfer_swaps_legs(self, base):
        cfield = coefficient_field(base, ('r', 's'))
        X_r, Y_s = cfield.symbol_by_name('X_r'), cfield.symbol_by_name('Y_s')

        swapped = cfield.transfer(X_r + Y_s, cfield, {'r': 's', 's': 'r'})

        assert swapped == cfield.symbol_by_name('X_s') + cfield.symbol_by_name('Y_r')

    def test_push(self, base):
        hom = standard_hom('pi-q-m', Q_VALUE)
        source = coefficient_field(base, ('r', 's'))
        target = coefficient_field(hom.target, ('r', 's'))

        pushed = source.push(source.symbol_by_name('Y_s'), hom, target)

        assert pushed == 1 / target.symbol_by_name('x_s')


SEEDS = range(5)

# Independent sympy expressions for B_sudQ.
Q, X, Y = symbols('Q X Y')
q, x, lam, eps = symbols('q x lambda eps')


def shift_ratio_expr(k, l):
    return (Q ** -k * X - Q ** k * Y) / (Q ** -l * X - Q ** l * Y)


def same(b, expr):
    return cancel(b.as_expr() - expr) == 0


class TestRandomArithmetic(object):

    @pytest.mark.parametrize('seed', SEEDS)
    def test_field_axioms(self, base, seed):
        rng = random.Random(seed)
        a, b, c = (random_fraction(rng, base.field) for _ in range(3))
        one, zero = base.field.one, base.field.zero

        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == zero
        assert a * (one / a) == one
        assert a + zero == a and a * one == a

    @pytest.mark.parametrize('seed', SEEDS)
    def test_normalisation_is_idempotent(self, base, seed):
        rng = random.Random(seed)
        a = random_fraction(rng, base.field)
        k = random_fraction(rng, base.field)

        renormalised = (a * k) / k
        assert renormalised.numer == a.numer
        assert renormalised.denom == a.denom
        assert format_ratfunc(renormalised) == format_ratfunc(a)
        assert power(a, -2) * power(a, 2) == base.field.one


class TestRandomAction(object):

    @pytest.mark.parametrize('seed', SEEDS)
    def test_group_action(self, base, seed):
        rng = random.Random(seed)
        g, h = rng.randint(-3, 3), rng.randint(-3, 3)
        b = random_fraction(rng, base.field)

        assert gamma_act(base, (g,), gamma_act(base, (h,), b)) == \
            gamma_act(base, (g + h,), b)

    @pytest.mark.parametrize('seed', SEEDS)
    def test_involution(self, base, seed):
        rng = random.Random(seed)
        g = rng.randint(-3, 3)
        b = random_fraction(rng, base.field)

        assert involve(base, involve(base, b)) == b
        assert involve(base, gamma_act(base, (g,), b)) == \
            gamma_act(base, (g,), involve(base, b))

    @pytest.mark.parametrize(
        'name,seed',
        [
            (name, seed)
            for name in ('pi-q-m', 'pi-1-cx')
            for seed in SEEDS
        ],
    )
    def test_hom_commutes_with_action_and_star(self, base, name, seed):
        rng = random.Random(seed)
        hom = standard_hom(name)
        g = rng.randint(-3, 3)
        b = random_fraction(rng, base.field)

        assert check_hom(hom).passed
        assert apply_hom(hom, gamma_act(base, (g,), b)) == \
            gamma_act(hom.target, (g,), apply_hom(hom, b))
        assert apply_hom(hom, involve(base, b)) == \
            involve(hom.target, apply_hom(hom, b))

    @pytest.mark.parametrize('seed', SEEDS)
    def test_composition(self, base, seed):
        rng = random.Random(seed)
        first = standard_hom('pi-q-m')
        target = mq_base(Q_VALUE)
        second = BaseHom(
            'q=2/3',
            first.target,
            target,
            {'q': Q_VALUE, 'x': target.var('x')},
        )
        composed = compose_homs(second, first)
        b = random_fraction(rng, base.field)

        assert check_hom(second).passed
        assert composed.target is target
        assert apply_hom(composed, b) == apply_hom(second, apply_hom(first, b))


class TestSubstitutionOracle(object):

    def test_shift_of_shift_ratio(self, base):
        expected = shift_ratio_expr(0, -1).subs(
            {X: X / Q, Y: Q * Y},
            simultaneous=True,
        )

        assert cancel(expected - shift_ratio_expr(1, 0)) == 0
        assert same(gamma_act(base, (1,), base.shift_ratio_quotient(0, -1)), expected)
        assert gamma_act(base, (1,), base.shift_ratio_quotient(0, -1)) == \
            base.shift_ratio_quotient(1, 0)

    @pytest.mark.parametrize(
        'k,l',
        [
            (0, -1),
            (1, 0),
            (-2, -1),
            (2, -1),
        ],
    )
    def test_shift_ratios(self, base, k, l):
        assert same(base.shift_ratio_quotient(k, l), shift_ratio_expr(k, l))


class TestStandardHomImages(object):
    """Images of Z[k,l] under the base homomorphisms, against sympy
    substitution and limits."""

    PAIRS = [(0, -1), (1, 0), (-2, -1), (2, -1)]

    @pytest.mark.parametrize(
        'name,assignment',
        [
            ('pi-q-m', {Q: q, X: x, Y: 1 / x}),
            ('pi-minus-inf', {X: 1, Y: 0}),
            ('pi-plus-inf', {X: 0, Y: 1}),
            ('pi-1-cx', {Q: 1, X: 1, Y: 0}),
        ],
    )
    def test_substitution(self, base, name, assignment):
        hom = standard_hom(name)
        for k, l in self.PAIRS:
            expected = shift_ratio_expr(k, l).subs(assignment, simultaneous=True)

            assert same(apply_hom(hom, base.shift_ratio_quotient(k, l)), expected)

    @pytest.mark.parametrize(
        'name,exponent',
        [
            ('pi-q-minus-inf', lambda k, l: l - k),
            ('pi-q-plus-inf', lambda k, l: k - l),
        ],
    )
    def test_numeric_q(self, base, name, exponent):
        hom = standard_hom(name, Q_VALUE)
        for k, l in self.PAIRS:
            image = apply_hom(hom, base.shift_ratio_quotient(k, l))

            assert image == hom.target.constant(Q_VALUE ** exponent(k, l))

    def test_limit(self, base):
        hom = standard_hom('pi-1')
        for k, l in self.PAIRS:
            expected = limit(
                shift_ratio_expr(k, l).subs(
                    {Q: 1 + eps, X: 1 + lam * eps, Y: 1 - lam * eps},
                    simultaneous=True,
                ),
                eps,
                0,
            )

            assert cancel(expected - (lam - k) / (lam - l)) == 0
            assert same(apply_hom(hom, base.shift_ratio_quotient(k, l)), expected)

    def test_minus_inf_on_Z(self, base):
        image = apply_hom(standard_hom('pi-minus-inf'), base.shift_ratio_quotient(0, -1))

        assert same(image, 1 / Q)


class TestShiftRatioForm(object):

    @pytest.fixture
    def cfield(self, base):
        return coefficient_field(base, ('r', 's'))

    def test_single_leg(self, base, cfield):
        c = -cfield.embed(base.shift_ratio_quotient(-1, -2), 's')

        assert format_shift_ratios(cfield, c) == (True, 's(Z[-1,-2])')

    def test_both_legs_with_shared_factor(self, base, cfield):
        Q_c = cfield.symbol_by_name('Q')
        c = Q_c ** 2 * cfield.embed(base.shift_ratio_quotient(0, -1), 'r') * \
            cfield.embed(base.shift_ratio_quotient(2, 1), 's')

        assert cfield.shift_ratio_form(c) == (Q_c ** 2, [('r', 0, -1), ('s', 2, 1)])
        assert format_shift_ratios(cfield, c) == (False, 'Q^2*r(Z[0,-1])*s(Z[2,1])')

    @pytest.mark.parametrize(
        'build',
        [
            lambda var: var('X_r') - var('X_s'),
            lambda var: var('Q') + 1,
            lambda var: var('X_r'),
            lambda var: var('X_r') / var('Y_s'),
        ],
    )
    def test_no_form(self, cfield, build):
        c = build(cfield.symbol_by_name)

        assert format_shift_ratios(cfield, c) is None

    def test_base_without_legs(self, base):
        assert format_shift_ratios(
            coefficient_field(base),
            base.shift_ratio_quotient(0, -1),
        ) is None
