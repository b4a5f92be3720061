from __future__ import absolute_import

import random

import pytest

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import constant_base
from dynqg.algebra.ncalg import is_equivalent
from dynqg.algebra.tensor import crossed_product
from dynqg.algebra.tensor import FactorMismatchError
from dynqg.algebra.tensor import fiber_embed
from dynqg.algebra.tensor import fiber_product
from dynqg.algebra.tensor import fiber_star
from dynqg.algebra.tensor import InnerDegreeMismatch
from dynqg.algebra.tensor import juxtapose
from dynqg.algebra.tensor import parse_transform
from dynqg.algebra.tensor import transport
from dynqg.algebra.tensor import unit_iso_left
from dynqg.algebra.tensor import unit_iso_right
from testing.factories import presentation_factory
from testing.factories import random_element
from testing.factories import random_fraction
from testing.factories import random_word
from testing.factories import sudq2_factory


@pytest.fixture
def A():
    return presentation_factory(
        names=('a', 'b', 'c'),
        degrees={
            'a': ((1,), (1,)),
            'b': ((-1,), (-1,)),
            'c': ((1,), (0,)),
        },
    )


@pytest.fixture
def crossed(A):
    return crossed_product(A.base)


class TestCrossedProduct(object):

    def test_group_law(self, crossed):
        assert crossed.group((1,)) * crossed.group((2,)) == crossed.group((3,))
        assert crossed.group((1,)) * crossed.group((-1,)) == crossed.one()

    def test_group_twists_base(self, crossed):
        base = crossed.base
        Q, X, _ = base.generators()

        assert crossed.group((1,)) * crossed.from_coefficient(X) == \
            crossed.from_coefficient(X / Q) * crossed.group((1,))

    def test_star(self, crossed):
        Q, X, _ = crossed.base.generators()
        x = crossed.from_coefficient(X) * crossed.group((1,))

        assert crossed.star(x) == crossed.from_coefficient(Q * X) * crossed.group((-1,))
        assert crossed.star(crossed.star(x)) == x

    def test_antipode_is_antimultiplicative(self, crossed):
        _, X, Y = crossed.base.generators()
        x = crossed.from_coefficient(X) * crossed.group((1,))
        y = crossed.from_coefficient(Y) * crossed.group((2,))

        assert crossed.antipode(x * y) == crossed.antipode(y) * crossed.antipode(x)

    def test_r_hat_and_s_check(self, A, crossed):
        Q, X, _ = crossed.base.generators()
        x = crossed.from_coefficient(X) * crossed.group((1,))

        assert crossed.r_hat(x, A) == A.from_base(X, 'r')
        assert crossed.s_check(x, A) == A.from_base(Q * X, 's')

    def test_format(self, crossed):
        assert str(crossed.group((0,))) == '1'
        assert str(crossed.group((-2,))) == '[-2]'


class TestFiberProduct(object):

    def test_legs(self, A):
        assert fiber_product(A, A, A).legs == ('r', 'm1', 'm2', 's')
        assert fiber_product(A, A) is fiber_product(A, A)

    def test_inner_degrees_must_match(self, A):
        with pytest.raises(InnerDegreeMismatch):
            fiber_embed([A.gen('a'), A.gen('b')])

    def test_middle_leg_identification(self, A):
        X = A.base.var('X')
        a = A.gen('a')

        assert fiber_embed([A.from_base(X, 's') * a, a]) == \
            fiber_embed([a, A.from_base(X, 'r') * a])

    def test_multiplication_is_factorwise(self, A):
        a, b = A.gen('a'), A.gen('b')

        assert fiber_embed([a, a]) * fiber_embed([b, b]) == \
            fiber_embed([a * b, a * b])

    def test_wrong_number_of_parts(self, A):
        with pytest.raises(FactorMismatchError):
            fiber_product(A, A).embed([A.gen('a')])

    def test_factors_over_different_bases(self, A):
        other = presentation_factory(base=constant_base())

        with pytest.raises(FactorMismatchError):
            fiber_product(A, other)

    def test_juxtapose_flattens(self, A):
        a = A.gen('a')

        assert juxtapose([fiber_embed([a, a]), a]) == fiber_embed([a, a, a])

    def test_format(self, A):
        a = A.gen('a')

        assert str(fiber_embed([a, a])) == 'a (x) a'


class TestUnitIsomorphisms(object):

    def test_left(self, A, crossed):
        X = A.base.var('X')
        chain = fiber_embed([
            crossed.from_coefficient(X) * crossed.group((1,)),
            A.gen('a'),
        ])

        assert unit_iso_left(chain) == A.from_base(X, 'r') * A.gen('a')

    def test_right(self, A, crossed):
        chain = fiber_embed([A.gen('c'), crossed.group((0,))])

        assert unit_iso_right(chain) == A.gen('c')

    def test_left_needs_crossed_factor(self, A):
        a = A.gen('a')

        with pytest.raises(FactorMismatchError):
            unit_iso_left(fiber_embed([a, a]))


class TestTransport(object):

    def test_parse_transform(self):
        assert parse_transform('co,op') == frozenset(['co', 'op'])
        assert parse_transform('op,op') == frozenset()

        with pytest.raises(AlgebraError):
            parse_transform('upside-down')

    def test_memoised(self, A):
        assert transport(A, 'co,op') is transport(A, 'op,co')

    @pytest.mark.parametrize(
        'which,expected',
        [
            ('co', ((0,), (1,))),
            ('op', ((-1,), (0,))),
            ('co,op', ((0,), (-1,))),
            ('bar', ((1,), (0,))),
        ],
    )
    def test_degrees(self, A, which, expected):
        assert transport(A, which).presentation.generator_degree('c') == expected

    def test_op_reverses_products(self, A):
        op = transport(A, 'op')
        T = op.presentation

        assert op.forward.apply(A.gen('a') * A.gen('b')) == T.gen('b') * T.gen('a')
        assert op.backward.apply(op.forward.apply(A.gen('a') * A.gen('c'))) == \
            A.gen('a') * A.gen('c')

    def test_co_swaps_legs(self, A):
        co = transport(A, 'co')
        X = A.base.var('X')

        assert co.forward.apply(A.from_base(X, 'r')) == co.presentation.from_base(X, 's')

    def test_op_twice(self):
        A = sudq2_factory().presentation
        first = transport(A, 'op')
        second = transport(first.presentation, 'op')
        rng = random.Random(0)

        assert is_equivalent(second.presentation, A)
        for _ in range(3):
            x = random_element(rng, A)
            assert second.forward.apply(first.forward.apply(x)).terms == x.terms

    def test_co_twice(self):
        A = sudq2_factory().presentation
        first = transport(A, 'co')
        second = transport(first.presentation, 'co')
        rng = random.Random(1)

        assert is_equivalent(second.presentation, A)
        for _ in range(3):
            x = random_element(rng, A)
            assert second.forward.apply(first.forward.apply(x)).terms == x.terms

    @pytest.mark.parametrize('seed', range(3))
    def test_co_and_op_commute(self, seed):
        A = sudq2_factory().presentation
        op, co = transport(A, 'op'), transport(A, 'co')
        op_co = transport(op.presentation, 'co')
        co_op = transport(co.presentation, 'op')
        x = random_element(random.Random(seed), A)

        assert op_co.forward.apply(op.forward.apply(x)).terms == \
            co_op.forward.apply(co.forward.apply(x)).terms


@pytest.fixture
def graded():
    return presentation_factory(
        names=('a', 'b'),
        degrees={
            'a': ((1,), (1,)),
            'b': ((-1,), (-1,)),
        },
    )


def random_parts(rng, algebra, count):
    """Homogeneous elements c_i * w_i with every w_i a rearrangement of one
    word, so that all inner degrees agree."""
    word = random_word(rng, algebra, max_length=3)
    parts = []
    for _ in range(count):
        shuffled = list(word)
        rng.shuffle(shuffled)
        parts.append(algebra.element({
            tuple(shuffled): random_fraction(rng, algebra.cfield.field),
        }))

    return parts


class TestRandomChains(object):

    @pytest.mark.parametrize('seed', range(4))
    def test_juxtapose_is_associative(self, graded, seed):
        x, y, z = random_parts(random.Random(seed), graded, 3)
        expected = fiber_embed([x, y, z])

        assert juxtapose([juxtapose([x, y]), z]) == expected
        assert juxtapose([x, juxtapose([y, z])]) == expected

    @pytest.mark.parametrize('seed', range(4))
    def test_multiplication_is_associative(self, graded, seed):
        rng = random.Random(seed)
        x, y, z = (
            fiber_embed(random_parts(rng, graded, 2))
            for _ in range(3)
        )

        assert (x * y) * z == x * (y * z)


class TestFiberStar(object):

    @pytest.fixture
    def hopf(self):
        return sudq2_factory()

    @pytest.mark.parametrize('seed', range(3))
    def test_involutive(self, hopf, seed):
        x = random_element(random.Random(seed), hopf.presentation)
        chain = hopf.delta.apply(x)

        assert fiber_star(fiber_star(chain)) == chain

    @pytest.mark.parametrize('name', ['alpha', 'beta', 'gamma', 'delta'])
    def test_delta_is_a_star_map(self, hopf, name):
        A = hopf.presentation
        x = A.gen(name)

        assert fiber_star(hopf.delta.apply(x)) == hopf.delta.apply(A.star(x))

    @pytest.mark.parametrize('seed', range(3))
    def test_antimultiplicative(self, hopf, seed):
        rng = random.Random(seed)
        A = hopf.presentation
        x = hopf.delta.apply(random_element(rng, A))
        y = hopf.delta.apply(random_element(rng, A))

        assert fiber_star(x * y) == fiber_star(y) * fiber_star(x)
