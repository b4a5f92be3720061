from __future__ import absolute_import

import random

import pytest
from sympy import cancel
from sympy import Matrix
from sympy import symbols

from dynqg.algebra.basematrix import BMatrix
from dynqg.algebra.basematrix import DegMatrix
from dynqg.algebra.basematrix import SingularMatrixError
from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import sudq_base
from dynqg.algebra.hopf import check_hopf_axioms
from dynqg.algebra.hopf import check_hopf_morphism
from dynqg.algebra.hopf import check_morphism
from dynqg.algebra.hopf import check_star_axioms
from dynqg.algebra.matrix import ao_triple
from dynqg.algebra.matrix import AlgMatrix
from dynqg.algebra.matrix import check_antipode_square
from dynqg.algebra.matrix import check_corep_suite
from dynqg.algebra.matrix import check_dressing
from dynqg.algebra.matrix import check_functor_laws
from dynqg.algebra.matrix import check_grading_identities
from dynqg.algebra.matrix import construct_Ao
from dynqg.algebra.matrix import construct_AoFG
from dynqg.algebra.matrix import construct_Au
from dynqg.algebra.matrix import dressed_matrix
from dynqg.algebra.matrix import functor_apply
from dynqg.algebra.matrix import generator_names
from dynqg.algebra.matrix import intertwiner_defect
from dynqg.algebra.matrix import is_corep
from dynqg.algebra.matrix import matrix_inverse
from dynqg.algebra.matrix import MissingInverseError
from dynqg.algebra.matrix import ParityError
from dynqg.algebra.matrix import PreconditionError
from dynqg.algebra.matrix import quotient_morphism
from dynqg.algebra.matrix import unitarize
from dynqg.algebra.morphism import MorphismError
from testing.factories import ao_one_factory
from testing.factories import instance_factory
from testing.factories import random_fraction
from testing.factories import sudq2_factory


@pytest.fixture
def base():
    return sudq_base()


@pytest.fixture
def sudq_F(base):
    return BMatrix(base, [[0, -1], [base.shift_ratio_quotient(0, -1), 0]])


class TestGeneratorNames(object):

    def test_small(self):
        assert generator_names('v', 2) == [['v11', 'v12'], ['v21', 'v22']]

    def test_large(self):
        names = generator_names('w', 10)

        assert names[0][0] == 'w1_1'
        assert names[9][9] == 'w10_10'


class TestAlgMatrix(object):

    def test_inverse_from_antipode(self):
        hopf = ao_one_factory()
        v = AlgMatrix.from_names(hopf.presentation, [['v11']])

        with pytest.raises(MissingInverseError):
            matrix_inverse(v)
        assert matrix_inverse(v, hopf) == v

    def test_rejects_wrong_inverse(self):
        A = ao_one_factory().presentation
        v = AlgMatrix.from_names(A, [['v11']])

        with pytest.raises(MissingInverseError):
            v.set_inverse(AlgMatrix.identity(A, 1))

    def test_is_corep(self):
        hopf = ao_one_factory()

        assert is_corep(AlgMatrix.from_names(hopf.presentation, [['v11']]), hopf)


class TestConstructAo(object):

    def test_not_odd(self, base):
        with pytest.raises(ParityError):
            construct_Ao(base, [1, -1], BMatrix.identity(base, 2))

    def test_singular(self, base):
        with pytest.raises(SingularMatrixError):
            construct_Ao(base, [0, 0], BMatrix(base, [[1, 1], [1, 1]]))

    def test_size_mismatch(self, base):
        with pytest.raises(AlgebraError):
            construct_Ao(base, [0], BMatrix.identity(base, 2))

    def test_two_by_two(self, base, sudq_F):
        hopf = construct_Ao(base, [1, -1], sudq_F)

        assert check_hopf_axioms(hopf).passed
        report = check_corep_suite(hopf)
        assert report.passed, report.format(color=False)

    def test_coefficient_relation(self, base):
        X = base.var('X')
        hopf = construct_Ao(base, [0], BMatrix(base, [[X]]), name='A_o(X)')
        A = hopf.presentation
        v = A.gen('v11')

        assert v * v == A.from_base(X, 'r') * A.from_base(1 / X, 's')


class TestConstructAu(object):

    @pytest.fixture
    def hopf(self, base):
        return construct_Au(base, [0], BMatrix(base, [[1]]))

    def test_star(self, hopf):
        A = hopf.presentation

        assert A.star(A.gen('v11')) == A.gen('w11')
        assert check_star_axioms(hopf).passed

    def test_suites(self, hopf):
        assert check_hopf_axioms(hopf).passed
        assert check_corep_suite(hopf).passed

    def test_not_self_adjoint(self, base):
        with pytest.raises(PreconditionError):
            construct_Au(base, [0, 0], BMatrix(base, [[1, 1], [0, 1]]))


class TestIntertwiners(object):

    def test_defining_triple(self):
        assert intertwiner_defect(*ao_triple(sudq2_factory())).is_zero()

    def test_functors(self):
        hopf = sudq2_factory()

        assert check_functor_laws(ao_triple(hopf), hopf).passed

    def test_unknown_functor(self):
        hopf = sudq2_factory()

        with pytest.raises(AlgebraError):
            functor_apply('sideways', ao_triple(hopf), hopf)

    def test_grading_identities(self, base, sudq_F):
        nabla = DegMatrix(base, [(1,), (-1,)])

        assert check_grading_identities(sudq_F, nabla.inverse(), nabla).passed


class TestCharacters(object):

    def test_sudq_scaling_matrix(self, base):
        hopf = sudq2_factory()
        Q = base.var('Q')

        assert hopf.characters.blocks[0].H == BMatrix.diagonal(base, [
            -base.shift_ratio_quotient(-1, -2),
            -base.shift_ratio_quotient(-1, 0),
        ])
        assert hopf.matrices['Q'] == BMatrix.diagonal(base, [-Q, -Q])


class TestDressing(object):

    def test_one_by_one(self, base):
        X, Y = base.var('X'), base.var('Y')
        nabla = DegMatrix(base, [(0,)])
        F = BMatrix(base, [[X]])
        H = BMatrix(base, [[Y]])

        target = construct_Ao(base, nabla, F, name='A_o(X)')
        source = construct_Ao(base, nabla, dressed_matrix(F, H, nabla), name='A_o(XY^2)')

        assert dressed_matrix(F, H, nabla) == BMatrix(base, [[X * Y ** 2]])
        assert check_dressing(source, target, H).passed


class TestAntipodeSquare(object):

    def test_unitary_construction(self, base):
        hopf = construct_Au(base, [0], BMatrix(base, [[1]]))
        A = hopf.presentation
        S = hopf.antipode_in_algebra

        report = check_antipode_square(hopf)
        assert report.passed, report.format(color=False)
        for name in ('v11', 'w11'):
            assert S.apply(S.apply(A.gen(name))) == A.gen(name)

    def test_sudq2(self):
        report = check_antipode_square(sudq2_factory())

        assert report.passed, report.format(color=False)


# Independent sympy expressions for the SU_Q^dyn(2) matrices.
Q, X, Y = symbols('Q X Y')


def shifted(expr, k):
    return expr.subs({X: X * Q ** -k, Y: Y * Q ** k}, simultaneous=True)


def assert_matches(matrix, expected):
    for i in range(matrix.n):
        for j in range(matrix.n):
            assert cancel(matrix[i, j].as_expr() - expected[i, j]) == 0, (i, j)


class TestSudQMatrixOracle(object):

    @pytest.fixture
    def F(self):
        z = X - Y
        return Matrix([[0, -1], [z / shifted(z, -1), 0]])

    @pytest.fixture
    def F_hat(self, F):
        return Matrix([
            [shifted(entry, degree) for entry in F.row(i)]
            for i, degree in enumerate((1, -1))
        ])

    def test_hat(self, F_hat):
        hopf = sudq2_factory()
        F = hopf.matrices['F']

        assert_matches(F.act_rows(hopf.matrices['nabla']), F_hat)

    def test_scaling_matrix(self, F, F_hat):
        hopf = sudq2_factory()

        assert_matches(hopf.characters.blocks[0].H, F_hat.T * F.inv())

    def test_Q(self):
        G = Matrix([[0, -Q], [1, 0]])

        assert_matches(sudq2_factory().matrices['Q'], G * G)

    def test_G_inverse_F(self, F):
        hopf = sudq2_factory()
        G = Matrix([[0, -Q], [1, 0]])
        expected = G.inv() * F

        assert_matches(hopf.matrices['G'].inverse() * hopf.matrices['F'], expected)
        assert cancel(expected[1, 1] - 1 / Q) == 0


class TestUnitarize(object):

    def test_classical(self):
        hopf = instance_factory('classical').hopf
        A = hopf.presentation
        base = A.base
        v = AlgMatrix.from_names(A, hopf.generator_matrices['v'])

        assert unitarize(hopf, BMatrix.identity(base, 2)) == v

    def test_classical_with_signs(self):
        hopf = instance_factory('classical').hopf
        A = hopf.presentation
        alpha, beta, gamma, delta = (
            A.gen(name)
            for name in ('alpha', 'beta', 'gamma', 'delta')
        )

        u = unitarize(hopf, BMatrix.diagonal(A.base, [1, -1]))

        assert u == AlgMatrix(A, [[alpha, -beta], [-gamma, delta]])

    def test_one_by_one(self, base):
        hopf = construct_AoFG(base, [0], [[1]], [[1]])
        v = AlgMatrix.from_names(hopf.presentation, hopf.generator_matrices['v'])

        assert unitarize(hopf, BMatrix(base, [[1]])) == v

    def test_not_proportional(self, base):
        with pytest.raises(PreconditionError) as excinfo:
            unitarize(sudq2_factory(), BMatrix.identity(base, 2))

        assert 'G^{-1} F' in str(excinfo.value)


class TestQuotientMorphism(object):

    def test_onto_sudq2(self, base, sudq_F):
        source = construct_Ao(base, [1, -1], sudq_F)
        target = sudq2_factory()
        phi = quotient_morphism(source, target)

        assert phi.images['v12'] == target.presentation.gen('beta')
        report = check_hopf_morphism(phi, source, target)
        assert report.passed, report.format(color=False)

    def test_size_mismatch(self):
        with pytest.raises(MorphismError):
            quotient_morphism(ao_one_factory(), sudq2_factory())


class TestRandomOddF(object):

    @pytest.mark.parametrize('seed', range(3))
    def test_universal_construction(self, base, seed):
        rng = random.Random(seed)
        F = BMatrix(base, [
            [0, random_fraction(rng, base.field)],
            [random_fraction(rng, base.field), 0],
        ])
        hopf = construct_Ao(base, [1, -1], F, name='A_o(random)')

        for name in ('delta', 'epsilon', 'antipode'):
            report = check_morphism(getattr(hopf, name))
            assert report.passed, report.format(color=False)

        v = AlgMatrix.from_names(hopf.presentation, hopf.generator_matrices['v'])
        assert is_corep(v, hopf)
