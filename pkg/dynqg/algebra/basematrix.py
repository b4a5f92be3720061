"""Square matrices over a base ring B, and diagonal degree matrices
diag(g_1, ..., g_n) with entries in Gamma."""
from __future__ import absolute_import

from fractions import Fraction

from sympy.polys.matrices import DomainMatrix

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import apply_hom
from dynqg.algebra.coeff import format_ratfunc
from dynqg.algebra.ncalg import negate_degree


class SingularMatrixError(AlgebraError):
    pass


class SupportConditionError(AlgebraError):
    pass


def format_degree(g):
    if len(g) == 1:
        return str(g[0])

    return '({})'.format(','.join(str(entry) for entry in g))


class DegMatrix(object):
    """diag(g_1, ..., g_n), read inside M_n(B x Gamma)."""

    def __init__(self, base, degrees):
        """
        :type base: BaseSpec
        :type degrees: list(tuple(int))
        """
        self.base = base
        self.degrees = tuple(base.check_rank(g) for g in degrees)

    @property
    def n(self):
        return len(self.degrees)

    def __getitem__(self, index):
        return self.degrees[index]

    def __iter__(self):
        return iter(self.degrees)

    def __eq__(self, other):
        return isinstance(other, DegMatrix) and \
            self.base is other.base and \
            self.degrees == other.degrees

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.base, self.degrees))

    def __str__(self):
        return 'diag({})'.format(
            ', '.join(format_degree(g) for g in self.degrees),
        )

    __repr__ = __str__

    def inverse(self):
        return DegMatrix(self.base, [negate_degree(g) for g in self.degrees])

    def rebase(self, base):
        return DegMatrix(base, self.degrees)


class BMatrix(object):
    """Immutable n x n matrix over a BaseSpec."""

    def __init__(self, base, rows):
        """
        :type base: BaseSpec
        :type rows: list(list)
        :param rows: entries as FracElement, int or Fraction.
        """
        self.base = base
        self.rows = tuple(
            tuple(base.convert(entry) for entry in row)
            for row in rows
        )
        if any(len(row) != len(self.rows) for row in self.rows):
            raise AlgebraError('Base matrices must be square.')

        self._inverse = None

    @classmethod
    def identity(cls, base, n):
        return cls.diagonal(base, [1] * n)

    @classmethod
    def diagonal(cls, base, values):
        n = len(values)
        return cls(
            base,
            [
                [values[i] if i == j else 0 for j in range(n)]
                for i in range(n)
            ],
        )

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, BMatrix) and \
            self.base is other.base and \
            self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.base, self.rows))

    def __str__(self):
        return '[{}]'.format(', '.join(
            '[{}]'.format(', '.join(format_ratfunc(entry) for entry in row))
            for row in self.rows
        ))

    __repr__ = __str__

    def map(self, func, base=None):
        return BMatrix(
            base or self.base,
            [[func(entry) for entry in row] for row in self.rows],
        )

    def _check(self, other):
        if not isinstance(other, BMatrix) or other.base is not self.base \
                or other.n != self.n:
            raise AlgebraError(
                'Cannot combine {} with {}.'.format(self, other),
            )

    def __add__(self, other):
        self._check(other)
        return BMatrix(self.base, [
            [a + b for a, b in zip(row, other_row)]
            for row, other_row in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.map(lambda entry: -entry)

    def __mul__(self, other):
        if not isinstance(other, BMatrix):
            value = self.base.convert(other)
            return self.map(lambda entry: value * entry)

        self._check(other)
        n = self.n
        return BMatrix(self.base, [
            [
                sum(
                    (self.rows[i][k] * other.rows[k][j] for k in range(n)),
                    self.base.field.zero,
                )
                for j in range(n)
            ]
            for i in range(n)
        ])

    def __rmul__(self, other):
        return self * other

    def transpose(self):
        return BMatrix(self.base, list(zip(*self.rows)))

    def conjugate(self):
        """Entrywise involution."""
        return self.map(self.base.involve)

    def adjoint(self):
        return self.conjugate().transpose()

    def act_rows(self, degrees):
        """(g_i(F_ij))_{i,j} for a DegMatrix diag(g_1, ..., g_n)."""
        return BMatrix(self.base, [
            [self.base.act(g, entry) for entry in row]
            for g, row in zip(degrees, self.rows)
        ])

    def act(self, g):
        return self.map(lambda entry: self.base.act(g, entry))

    def push(self, hom):
        """Entrywise image under a base homomorphism.

        :type hom: BaseHom
        """
        return self.map(lambda entry: apply_hom(hom, entry), hom.target)

    def is_zero(self):
        return not any(entry for row in self.rows for entry in row)

    def support(self):
        return set(
            (i, j)
            for i, row in enumerate(self.rows)
            for j, entry in enumerate(row)
            if entry
        )

    def _domain_matrix(self):
        domain = self.base.field.to_domain()
        return DomainMatrix(
            [list(row) for row in self.rows],
            (self.n, self.n),
            domain,
        )

    def det(self):
        return self._domain_matrix().det()

    def inverse(self):
        if self._inverse is None:
            if not self.det():
                raise SingularMatrixError('{} is not invertible.'.format(self))

            self._inverse = BMatrix(
                self.base,
                _rows_of(self._domain_matrix().inv()),
            )

        return self._inverse

    def power(self, k):
        """F^k, negative k through the inverse."""
        factor = self if k >= 0 else self.inverse()
        result = BMatrix.identity(self.base, self.n)
        for _ in range(abs(k)):
            result = result * factor

        return result

    def ratio_to(self, other):
        """The rational number c with self == c * other, or None."""
        self._check(other)
        ratio = None
        for i, j in self.support() | other.support():
            if not other[i, j]:
                return None

            value = self[i, j] / other[i, j]
            if value.numer.is_ground and value.denom.is_ground:
                value = Fraction(
                    str(value.numer.LC) if value.numer else 0,
                ) / Fraction(str(value.denom.LC))
            else:
                return None

            if ratio is None:
                ratio = value
            elif ratio != value:
                return None

        return ratio


def _rows_of(matrix):
    try:
        return matrix.to_list()
    except AttributeError:  # pragma: no cover
        return [list(row) for row in matrix.to_ddm()]


def check_support(F, row_degrees, column_degrees):
    """Entries of F may only be non-zero where the row degree equals the
    column degree.

    :type F: BMatrix
    :type row_degrees: DegMatrix
    :type column_degrees: DegMatrix
    """
    for i, j in sorted(F.support()):
        if row_degrees[i] != column_degrees[j]:
            raise SupportConditionError(
                'Entry ({}, {}) of {} is non-zero but joins degrees {} and {}.'.format(
                    i + 1,
                    j + 1,
                    F,
                    format_degree(row_degrees[i]),
                    format_degree(column_degrees[j]),
                ),
            )

    return F
