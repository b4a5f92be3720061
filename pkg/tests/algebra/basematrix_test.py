from __future__ import absolute_import

from fractions import Fraction

import pytest

from dynqg.algebra.basematrix import BMatrix
from dynqg.algebra.basematrix import check_support
from dynqg.algebra.basematrix import DegMatrix
from dynqg.algebra.basematrix import SingularMatrixError
from dynqg.algebra.basematrix import SupportConditionError
from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import cx_base
from dynqg.algebra.coeff import mq_base
from dynqg.algebra.coeff import RankMismatchError
from dynqg.algebra.coeff import standard_hom
from dynqg.algebra.coeff import sudq_base


@pytest.fixture
def base():
    return sudq_base()


@pytest.fixture
def nabla(base):
    return DegMatrix(base, [(1,), (-1,)])


@pytest.fixture
def F(base):
    return BMatrix(base, [[0, -1], [base.shift_ratio_quotient(0, -1), 0]])


class TestDegMatrix(object):

    def test_inverse(self, base, nabla):
        assert nabla.inverse() == DegMatrix(base, [(-1,), (1,)])
        assert str(nabla) == 'diag(1, -1)'

    def test_rank(self, base):
        with pytest.raises(RankMismatchError):
            DegMatrix(base, [(1, 0)])

    def test_rebase(self, nabla):
        assert nabla.rebase(cx_base()).base is cx_base()


class TestBMatrix(object):

    def test_square(self, base):
        with pytest.raises(AlgebraError):
            BMatrix(base, [[1, 2]])

    def test_inverse(self, base, F):
        identity = BMatrix.identity(base, 2)

        assert F * F.inverse() == identity
        assert F.power(-1) == F.inverse()
        assert F.power(0) == identity
        assert F.power(2) == F * F

    def test_singular(self, base):
        with pytest.raises(SingularMatrixError):
            BMatrix(base, [[1, 1], [1, 1]]).inverse()

    def test_act_rows(self, base, F, nabla):
        Q, X, Y = base.generators()
        twisted = F.act_rows(nabla)

        assert twisted[0, 1] == -1
        assert twisted[1, 0] == base.act((-1,), F[1, 0])
        assert twisted[1, 0] == base.shift_ratio_quotient(-1, -2)

    def test_scalar_multiple(self, base, F):
        assert (F * 3).ratio_to(F) == Fraction(3)
        assert F.ratio_to(BMatrix.identity(base, 2)) is None
        assert (F * base.var('X')).ratio_to(F) is None

    def test_push(self, F):
        q = Fraction(2, 3)
        pushed = F.push(standard_hom('pi-q-m', q))
        target = mq_base(q)

        assert pushed.base is target
        assert pushed[1, 0] == target.shift_ratio_quotient(0, -1)

    def test_cannot_mix_bases(self, F):
        with pytest.raises(AlgebraError):
            F + BMatrix.identity(cx_base(), 2)

    def test_format(self, base):
        assert str(BMatrix.identity(base, 2)) == '[[1, 0], [0, 1]]'


class TestSupport(object):

    def test_odd_matrix(self, F, nabla):
        assert check_support(F, nabla, nabla.inverse()) is F

    def test_violation(self, F, nabla):
        with pytest.raises(SupportConditionError):
            check_support(F, nabla, nabla)
