"""Intertwiner calculus and the universal constructions A_o(nabla, F),
A_u(nabla, F) and A_o(nabla, F, G).

An intertwiner u -F-> v between homogeneous matrices over a
(B, Gamma)-algebra is an invertible F over B with r_n(F^) u = v s_n(F),
where F^ = (d_{v,i}(F_ij))_ij.

Matrix inverses over presented algebras are never computed by
elimination. They come from explicit links, from how a matrix was
produced (images under morphisms, boxed products), from the antipode of
a corepresentation, or from the *-structure, and a candidate is only
accepted once both products reduce to the identity.
"""
from __future__ import absolute_import

from collections import namedtuple
from collections import OrderedDict

from dynqg.algebra.basematrix import BMatrix
from dynqg.algebra.basematrix import check_support
from dynqg.algebra.basematrix import DegMatrix
from dynqg.algebra.basematrix import SingularMatrixError
from dynqg.algebra.basematrix import SupportConditionError
from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.hopf import CharacterBlock
from dynqg.algebra.hopf import CharacterFamily
from dynqg.algebra.hopf import check_hopf_morphism
from dynqg.algebra.hopf import hopf_structure
from dynqg.algebra.morphism import AlgMorphism
from dynqg.algebra.morphism import MorphismError
from dynqg.algebra.morphism import star_morphism
from dynqg.algebra.ncalg import GradingError
from dynqg.algebra.ncalg import Generator
from dynqg.algebra.ncalg import Presentation
from dynqg.algebra.tensor import CrossedProduct
from dynqg.algebra.tensor import crossed_product
from dynqg.algebra.tensor import fiber_embed
from dynqg.algebra.tensor import transport
from dynqg.core.constants import DEFAULT_STEP_BUDGET
from dynqg.core.constants import FUNCTOR_LABELS
from dynqg.core.log import log
from dynqg.core.report import Report


class ParityError(SupportConditionError):
    pass


class MissingInverseError(AlgebraError):
    pass


class PreconditionError(AlgebraError):
    pass


class AlgMatrix(object):
    """n x n matrix over one algebra.

    Inverses are attached lazily: `inverse` holds a verified two-sided
    inverse once one is known, and the transpose of a matrix is cached
    in both directions, so that u.transpose().inverse is (u^T)^{-1}.
    """

    def __init__(self, algebra, rows, origin=None):
        """
        :type algebra: Algebra
        :type rows: list(list)

        :type origin: tuple|None
        :param origin: ('map', phi, M) for phi applied entrywise to M,
            ('box', u) for u [x] u, ('box-t', u) for its transpose.
        """
        self.algebra = algebra
        self.rows = tuple(
            tuple(algebra.coerce(entry) for entry in row)
            for row in rows
        )
        if any(len(row) != len(self.rows) for row in self.rows):
            raise AlgebraError('Algebra matrices must be square.')

        self.origin = origin
        self.inverse = None
        self._transpose = None
        self._resolving = False

    @classmethod
    def identity(cls, algebra, n):
        return cls(
            algebra,
            [
                [algebra.one() if i == j else algebra.zero() for j in range(n)]
                for i in range(n)
            ],
        )

    @classmethod
    def from_names(cls, presentation, names):
        return cls(
            presentation,
            [[presentation.gen(name) for name in row] for row in names],
        )

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def entries(self):
        for i, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                yield i, j, entry

    def __eq__(self, other):
        return isinstance(other, AlgMatrix) and \
            self.algebra is other.algebra and \
            self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __str__(self):
        return '[{}]'.format(', '.join(
            '[{}]'.format(', '.join(str(entry) for entry in row))
            for row in self.rows
        ))

    __repr__ = __str__

    def _check(self, other):
        if not isinstance(other, AlgMatrix) or other.algebra is not self.algebra \
                or other.n != self.n:
            raise AlgebraError(
                'Cannot combine matrices over {!r} and {!r}.'.format(
                    self.algebra,
                    getattr(other, 'algebra', None),
                ),
            )

    def __add__(self, other):
        self._check(other)
        return AlgMatrix(self.algebra, [
            [a + b for a, b in zip(row, other_row)]
            for row, other_row in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        self._check(other)
        return AlgMatrix(self.algebra, [
            [a - b for a, b in zip(row, other_row)]
            for row, other_row in zip(self.rows, other.rows)
        ])

    def __mul__(self, other):
        self._check(other)
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = self.algebra.zero()
                for k in range(n):
                    if self.rows[i][k].is_zero() or other.rows[k][j].is_zero():
                        continue
                    entry = entry + self.rows[i][k] * other.rows[k][j]
                row.append(entry)
            rows.append(row)

        return AlgMatrix(self.algebra, rows)

    def is_zero(self):
        return all(entry.is_zero() for _, _, entry in self.entries())

    def is_identity(self):
        return (self - AlgMatrix.identity(self.algebra, self.n)).is_zero()

    def transpose(self):
        if self._transpose is None:
            rows = list(zip(*self.rows))
            if self.origin is not None and self.origin[0] == 'map':
                _, phi, source = self.origin
                transposed = AlgMatrix(
                    self.algebra,
                    rows,
                    ('map', phi, source.transpose()),
                )
            elif self.origin is not None and self.origin[0] == 'box':
                transposed = AlgMatrix(self.algebra, rows, ('box-t', self.origin[1]))
            elif self.origin is not None and self.origin[0] == 'box-t':
                transposed = AlgMatrix(self.algebra, rows, ('box', self.origin[1]))
            else:
                transposed = AlgMatrix(self.algebra, rows)

            transposed._transpose = self
            self._transpose = transposed

        return self._transpose

    def set_inverse(self, other, verify=True):
        """
        :type other: AlgMatrix
        :raises: MissingInverseError if verify and other is no inverse.
        """
        if verify and not is_inverse_pair(self, other):
            raise MissingInverseError(
                '{} is not an inverse of {}.'.format(other, self),
            )

        self.inverse = other
        if other.inverse is None:
            other.inverse = self

        return self


def is_inverse_pair(first, second):
    return (first * second).is_identity() and (second * first).is_identity()


class IntertwinerTriple(
    namedtuple(
        'IntertwinerTriple',
        [
            # type: AlgMatrix
            'u',

            # type: BMatrix
            'F',

            # type: AlgMatrix
            'v',
        ],
    ),
):

    def __str__(self):
        return '({} -{}-> {})'.format(self.u, self.F, self.v)


def as_degrees(base, nabla):
    """
    :type nabla: DegMatrix|list
    :param nabla: a DegMatrix, or group elements given as ints (rank 1)
        or tuples.
    """
    if isinstance(nabla, DegMatrix):
        return nabla

    return DegMatrix(
        base,
        [g if isinstance(g, tuple) else (g,) for g in nabla],
    )


def embed_base(algebra, F, leg):
    """r_n(F) for leg 'r', s_n(F) for leg 's'.

    :type F: BMatrix
    """
    return AlgMatrix(algebra, [
        [algebra.from_base(entry, leg) for entry in row]
        for row in F.rows
    ])


def r_n(algebra, F):
    return embed_base(algebra, F, 'r')


def s_n(algebra, F):
    return embed_base(algebra, F, 's')


def degree_matrix(crossed, degrees):
    """A DegMatrix as a matrix over B x Gamma."""
    n = degrees.n
    matrix = AlgMatrix(crossed, [
        [crossed.group(degrees[i]) if i == j else crossed.zero() for j in range(n)]
        for i in range(n)
    ])
    inverse = AlgMatrix(crossed, [
        [crossed.group(degrees.inverse()[i]) if i == j else crossed.zero() for j in range(n)]
        for i in range(n)
    ])
    return matrix.set_inverse(inverse, verify=False)


def homogeneity(u):
    """d_u = diag(g_1, ..., g_n) when every entry u_ij lies in
    A_{g_i, g_j}; None otherwise.

    :type u: AlgMatrix
    :rtype: DegMatrix|None
    """
    degrees = [None] * u.n
    for i, j, entry in u.entries():
        if entry.is_zero():
            continue

        degree = entry.degree()
        if degree is None:
            return None

        for index, component in ((i, degree[0]), (j, degree[1])):
            if degrees[index] is None:
                degrees[index] = component
            elif degrees[index] != component:
                return None

    if any(g is None for g in degrees):
        return None

    return DegMatrix(u.algebra.base, degrees)


def _require_degrees(u):
    degrees = homogeneity(u)
    if degrees is None:
        raise GradingError('{} is not homogeneous.'.format(u))

    return degrees


def hat(F, du, dv):
    """F^ = (d_{v,i}(F_ij))_ij.

    :raises: SupportConditionError unless F_ij = 0 whenever
        d_{v,i} != d_{u,j}.
    """
    check_support(F, dv, du)
    return F.act_rows(dv)


def map_matrix(phi, M):
    """phi applied entrywise.

    :type phi: AlgMorphism
    :type M: AlgMatrix
    """
    return AlgMatrix(
        phi.target,
        [[phi.apply(entry) for entry in row] for row in M.rows],
        ('map', phi, M),
    )


def boxtimes(u):
    """(u [x] u)_ij = sum_k u_ik (x) u_kj."""
    n = u.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = None
            for k in range(n):
                term = fiber_embed([u[i, k], u[k, j]])
                entry = term if entry is None else entry + term
            row.append(entry)
        rows.append(row)

    return AlgMatrix(rows[0][0].algebra, rows, ('box', u))


def matrix_inverse(M, hopf=None):
    """
    :type M: AlgMatrix
    :type hopf: HopfData|None
    :param hopf: enables the antipode as a source of inverses of
        corepresentations of hopf.presentation.

    :raises: MissingInverseError
    """
    inverse = _resolve_inverse(M, hopf)
    if inverse is None:
        raise MissingInverseError('No inverse known for {}.'.format(M))

    return inverse


def transpose_inverse(M, hopf=None):
    """(M^T)^{-1}."""
    return matrix_inverse(M.transpose(), hopf)


def _resolve_inverse(M, hopf):
    if M.inverse is not None:
        return M.inverse
    if M._resolving:
        return None

    M._resolving = True
    try:
        for candidate in _inverse_candidates(M, hopf):
            try:
                if candidate is not None and is_inverse_pair(M, candidate):
                    M.set_inverse(candidate, verify=False)
                    return candidate
            except AlgebraError as e:
                log.debug('Rejected inverse candidate for %s: %s', M, e)
    finally:
        M._resolving = False

    return None


def _inverse_candidates(M, hopf):
    origin = M.origin
    if origin is not None and origin[0] == 'map':
        _, phi, source = origin
        if phi.antihom:
            # phi(M)^{-1} = phi((M^T)^{-1})^T
            inverse = _resolve_inverse(source.transpose(), hopf)
            if inverse is not None:
                yield map_matrix(phi, inverse).transpose()
        else:
            inverse = _resolve_inverse(source, hopf)
            if inverse is not None:
                yield map_matrix(phi, inverse)

    elif origin is not None and origin[0] == 'box':
        inverse = _resolve_inverse(origin[1], hopf)
        if inverse is not None:
            yield boxtimes(inverse.transpose()).transpose()

    elif origin is not None and origin[0] == 'box-t':
        inverse = _resolve_inverse(origin[1].transpose(), hopf)
        if inverse is not None:
            yield boxtimes(inverse)

    if hopf is not None and M.algebra is hopf.presentation:
        yield map_matrix(hopf.antipode_in_algebra, M)

    algebra = M.algebra
    if isinstance(algebra, Presentation) and algebra.has_star and \
            M._transpose is not None:
        # M = N^T: (N^T)^{-1} = conj((conj N)^{-1})^T entrywise.
        star = star_morphism(algebra)
        conjugate = map_matrix(star, M._transpose)
        inverse = _resolve_inverse(conjugate, hopf)
        if inverse is not None:
            yield map_matrix(star, inverse).transpose()


def intertwiner_defect(u, F, v):
    """r_n(F^) u - v s_n(F).

    :rtype: AlgMatrix
    """
    if u.algebra is not v.algebra:
        raise AlgebraError('Intertwined matrices must share an algebra.')

    du = _require_degrees(u)
    dv = _require_degrees(v)
    if not F.det():
        raise SingularMatrixError('{} is not invertible.'.format(F))

    A = u.algebra
    return r_n(A, hat(F, du, dv)) * u - v * s_n(A, F)


def is_intertwiner(u, F, v):
    return intertwiner_defect(u, F, v).is_zero()


def functor_apply(label, triple, hopf=None):
    """The image of an intertwiner under one of the functors
    epsilon, delta, op, top_co, inv_co, inv_top, inv_bot, inv_co_op,
    bar_op, star_co, overline and star.

    :type label: str
    :type triple: IntertwinerTriple
    :type hopf: HopfData|None
    :param hopf: needed for epsilon, and as a source of inverses.

    :rtype: IntertwinerTriple
    """
    if label not in FUNCTOR_LABELS:
        raise AlgebraError('Unknown functor {}.'.format(label))

    u, F, v = triple
    A = u.algebra
    F_hat = hat(F, _require_degrees(u), _require_degrees(v))

    def inverse(M):
        return matrix_inverse(M, hopf)

    if label == 'epsilon':
        if hopf is None or A is not hopf.presentation:
            raise AlgebraError('epsilon needs the Hopf structure of the algebra.')
        return IntertwinerTriple(
            map_matrix(hopf.epsilon, u),
            F,
            map_matrix(hopf.epsilon, v),
        )

    if label == 'delta':
        return IntertwinerTriple(boxtimes(u), F, boxtimes(v))

    if label == 'op':
        forward = transport(A, 'op').forward
        return IntertwinerTriple(map_matrix(forward, u), F_hat, map_matrix(forward, v))

    if label == 'top_co':
        forward = transport(A, 'co').forward
        return IntertwinerTriple(
            map_matrix(forward, v.transpose()),
            F.transpose(),
            map_matrix(forward, u.transpose()),
        )

    if label == 'inv_co':
        forward = transport(A, 'co').forward
        return IntertwinerTriple(
            map_matrix(forward, inverse(v)),
            F_hat.inverse(),
            map_matrix(forward, inverse(u)),
        )

    if label == 'inv_top':
        return IntertwinerTriple(
            inverse(u).transpose(),
            F_hat.inverse().transpose(),
            inverse(v).transpose(),
        )

    if label == 'inv_bot':
        return IntertwinerTriple(
            inverse(u.transpose()),
            F_hat.inverse().transpose(),
            inverse(v.transpose()),
        )

    if label == 'inv_co_op':
        forward = transport(A, 'co,op').forward
        return IntertwinerTriple(
            map_matrix(forward, inverse(v)),
            F.inverse(),
            map_matrix(forward, inverse(u)),
        )

    if label == 'bar_op':
        forward = transport(A, 'bar,op').forward
        return IntertwinerTriple(
            map_matrix(forward, u),
            F_hat.conjugate(),
            map_matrix(forward, v),
        )

    if label == 'star_co':
        star = star_morphism(A)
        forward = transport(A, 'co').forward
        return IntertwinerTriple(
            map_matrix(forward, map_matrix(star, v).transpose()),
            F_hat.adjoint(),
            map_matrix(forward, map_matrix(star, u).transpose()),
        )

    if label == 'overline':
        star = star_morphism(A)
        return IntertwinerTriple(
            map_matrix(star, u),
            F_hat.conjugate(),
            map_matrix(star, v),
        )

    return functor_apply('inv_top', functor_apply('overline', triple, hopf), hopf)


def same_triple(first, second):
    return first.u == second.u and first.F == second.F and first.v == second.v


def check_commutation_laws(triple, hopf=None):
    """op o inv_top = inv_bot o op, inv_top o op = op o inv_bot,
    inv_top o delta = delta o inv_top and
    inv_top o inv_co_op = inv_co_op o inv_top, on one triple.

    :rtype: Report
    """
    report = Report('commutation')

    def apply(*labels):
        result = triple
        for label in reversed(labels):
            result = functor_apply(label, result, hopf)
        return result

    laws = (
        ('op.inv_top', ('op', 'inv_top'), ('inv_bot', 'op')),
        ('inv_top.op', ('inv_top', 'op'), ('op', 'inv_bot')),
        ('inv_top.delta', ('inv_top', 'delta'), ('delta', 'inv_top')),
        ('inv_top.inv_co_op', ('inv_top', 'inv_co_op'), ('inv_co_op', 'inv_top')),
    )
    for name, left, right in laws:
        report.expect(
            name,
            lambda: same_triple(apply(*left), apply(*right)),
            lambda: '{} != {}'.format(apply(*left), apply(*right)),
        )

    return report


def check_functor_laws(triple, hopf=None):
    """Every functor sends the triple to an intertwiner.

    :rtype: Report
    """
    report = Report('functors')
    has_star = isinstance(triple.u.algebra, Presentation) and \
        triple.u.algebra.has_star
    for label in FUNCTOR_LABELS:
        if label in ('star_co', 'overline', 'star') and not has_star:
            continue

        report.expect_zero(
            'functor[{}]'.format(label),
            lambda: intertwiner_defect(*functor_apply(label, triple, hopf)),
        )

    return report


def check_grading_identities(F, du, dv):
    """The hat identities inside M_n(B x Gamma):
        F^T-hat   = d_u F^T d_v^{-1}
        (d_v F)^{-T} = F^{-T} d_u^{-1}
        (F d_u^{-1})^{-T} = d_v F^{-T}
        conj(d_v F) = conj(F) d_u^{-1}
        conj(F d_u) = d_v^{-1} conj(F)

    :rtype: Report
    """
    report = Report('grading')
    crossed = crossed_product(F.base)
    D_u = degree_matrix(crossed, du)
    D_v = degree_matrix(crossed, dv)

    def c(matrix):
        return r_n(crossed, matrix)

    def conj(M):
        return AlgMatrix(crossed, [
            [crossed.star(entry) for entry in row]
            for row in M.rows
        ])

    F_hat = hat(F, du, dv)
    F_inv = F.inverse()

    report.expect_equal(
        'hat-transpose',
        lambda: (c(F_hat.transpose()), D_u * c(F.transpose()) * D_v.inverse),
    )
    report.expect(
        'inverse-transpose-left',
        lambda: is_inverse_pair(
            D_v * c(F),
            (c(F_inv.transpose()) * D_u.inverse).transpose(),
        ),
    )
    report.expect(
        'inverse-transpose-right',
        lambda: is_inverse_pair(
            c(F) * D_u.inverse,
            (D_v * c(F_inv.transpose())).transpose(),
        ),
    )
    report.expect_equal(
        'conjugate-left',
        lambda: (conj(D_v * c(F)), c(F.conjugate()) * D_u.inverse),
    )
    report.expect_equal(
        'conjugate-right',
        lambda: (conj(c(F) * D_u), D_v.inverse * c(F.conjugate())),
    )

    return report


def check_barop_identities(triple, hopf=None):
    """From u^{-T} -F-> v, the triple
    ((v^{bar,op})^{-T} -F*-> u^{bar,op}) is an intertwiner of
    conj(A)^op.

    :rtype: Report
    """
    report = Report('barop')
    u = transpose_inverse(triple.u, hopf)
    forward = transport(triple.v.algebra, 'bar,op').forward
    u_barop = map_matrix(forward, u)
    v_barop = map_matrix(forward, triple.v)

    report.expect_zero(
        'barop',
        lambda: intertwiner_defect(
            matrix_inverse(v_barop, hopf).transpose(),
            triple.F.adjoint(),
            u_barop,
        ),
    )
    return report


def is_corep(v, hopf):
    """Delta_n(v) = v [x] v, epsilon_n(v) = d_v and S_n(v) = v^{-1}.

    :type v: AlgMatrix
    :type hopf: HopfData
    """
    return all(defect.is_zero() for defect in corep_defects(v, hopf).values())


def corep_defects(v, hopf):
    """
    :rtype: OrderedDict
    :returns: name => AlgMatrix that vanishes iff the identity holds.
    """
    if isinstance(v.algebra, CrossedProduct):
        return _group_like_defects(v)

    degrees = _require_degrees(v)
    antipode = map_matrix(hopf.antipode_in_algebra, v)
    identity = AlgMatrix.identity(v.algebra, v.n)
    return OrderedDict([
        ('delta', map_matrix(hopf.delta, v) - boxtimes(v)),
        ('epsilon', map_matrix(hopf.epsilon, v) - degree_matrix(hopf.crossed, degrees)),
        ('antipode-left', antipode * v - identity),
        ('antipode-right', v * antipode - identity),
    ])


def _group_like_defects(v):
    crossed = v.algebra
    degrees = homogeneity(v)
    if degrees is None:
        raise GradingError('{} is not homogeneous.'.format(v))

    return OrderedDict([
        ('diagonal', v - degree_matrix(crossed, degrees)),
    ])


def ao_triple(hopf):
    """(v^{-T} -F-> v) for A_o(nabla, F) and A_o(nabla, F, G), with
    v^{-1}, (v^{-T})^{-1} and (v^T)^{-1} attached from the relations."""
    A = hopf.presentation
    nabla = hopf.matrices['nabla']
    F = hopf.matrices['F']
    v = AlgMatrix.from_names(A, hopf.generator_matrices['v'])
    F_hat = F.act_rows(nabla)

    X = _ao_inverse(A, v, F, F_hat)
    v.set_inverse(X)
    u = X.transpose()
    u.set_inverse(s_n(A, F.inverse()) * X * r_n(A, F_hat))
    v.transpose().set_inverse(
        r_n(A, F.inverse().transpose()) * v * s_n(A, F_hat.transpose()),
    )
    return IntertwinerTriple(u, F, v)


def au_triples(hopf):
    """(v^{-T} -1-> w) and (w^{-T} -F-> v) for A_u(nabla, F)."""
    A = hopf.presentation
    nabla = hopf.matrices['nabla']
    F = hopf.matrices['F']
    v = AlgMatrix.from_names(A, hopf.generator_matrices['v'])
    w = AlgMatrix.from_names(A, hopf.generator_matrices['w'])
    F_hat = F.act_rows(nabla)

    v.set_inverse(w.transpose())
    Y = _ao_inverse(A, v, F, F_hat)
    w.set_inverse(Y)
    Y.transpose().set_inverse(
        s_n(A, F.inverse()) * w.transpose() * r_n(A, F_hat),
    )
    v.transpose().set_inverse(
        r_n(A, F.inverse().transpose()) * w * s_n(A, F_hat.transpose()),
    )
    return OrderedDict([
        ('v', IntertwinerTriple(v.inverse.transpose(), BMatrix.identity(F.base, F.n), w)),
        ('w', IntertwinerTriple(Y.transpose(), F, v)),
    ])


def _ao_inverse(A, v, F, F_hat):
    """X with X_ji = (r_n(F^^{-1}) v s_n(F))_ij."""
    return (r_n(A, F_hat.inverse()) * v * s_n(A, F)).transpose()


def check_antipode_square(hopf):
    """S^2_n(v) = (v^{-T})^{-T} entrywise, with (v^{-T})^{-1} taken from
    the defining intertwiners rather than from S; and v -H-> S^2_n(v).

    For A_u, v^{-T} = w and w^{-1} comes from w^{-T} -F-> v.

    :rtype: Report
    """
    report = Report('antipode-square')
    A = hopf.presentation
    S = hopf.antipode_in_algebra

    if hopf.family == 'Au':
        triples = au_triples(hopf)
        v = triples['w'].v
        v_inverse_transpose = triples['v'].u
    else:
        triple = ao_triple(hopf)
        v = triple.v
        v_inverse_transpose = triple.u

    squared = AlgMatrix(A, [
        [S.apply(S.apply(entry)) for entry in row]
        for row in v.rows
    ])
    report.expect_zero(
        'antipode-square',
        lambda: squared - matrix_inverse(v_inverse_transpose, hopf).transpose(),
    )

    if hopf.characters is not None:
        H = hopf.characters.blocks[0].H
        report.expect_zero(
            'scaling-intertwiner',
            lambda: intertwiner_defect(v, H, squared),
        )

    return report


def check_corep_suite(hopf):
    """Corepresentation identities for every generator matrix, plus the
    intertwiner calculus on the defining triples.

    :type hopf: HopfData
    :rtype: Report
    """
    A = hopf.presentation
    report = Report('corep')
    for name, names in hopf.generator_matrices.items():
        matrix = AlgMatrix.from_names(A, names)
        try:
            defects = corep_defects(matrix, hopf)
        except AlgebraError as e:
            report.add_error('corep[{}]'.format(name), e)
            continue

        for check, defect in defects.items():
            report.expect_zero(
                'corep[{}]/{}'.format(name, check),
                lambda: defect,
            )

    if hopf.family is None:
        return report

    nabla = hopf.matrices['nabla']
    F = hopf.matrices['F']
    if hopf.family == 'Au':
        try:
            triples = au_triples(hopf)
        except AlgebraError as e:
            report.add_error('triples', e)
            return report

        for name, triple in triples.items():
            report.expect_zero(
                'intertwiner[{}]'.format(name),
                lambda: intertwiner_defect(*triple),
            )
            report.extend(check_functor_laws(triple, hopf), prefix=name)
        report.extend(check_grading_identities(F, nabla, nabla))
        report.extend(check_antipode_square(hopf))
        return report

    try:
        triple = ao_triple(hopf)
    except AlgebraError as e:
        report.add_error('triple', e)
        return report

    report.expect_zero('intertwiner[v]', lambda: intertwiner_defect(*triple))
    report.extend(check_functor_laws(triple, hopf))
    report.extend(check_commutation_laws(triple, hopf))
    report.extend(check_grading_identities(F, nabla.inverse(), nabla))
    report.extend(check_antipode_square(hopf))

    if hopf.family == 'AoFG':
        G = hopf.matrices['G']
        Q = hopf.matrices['Q']
        v = triple.v
        report.expect_zero(
            'intertwiner[conj]',
            lambda: intertwiner_defect(map_matrix(star_morphism(A), v), G, v),
        )
        report.expect_zero(
            'intertwiner[Q]',
            lambda: intertwiner_defect(v, Q, v),
        )
        report.extend(check_barop_identities(triple, hopf))

    return report


def generator_names(prefix, n):
    if n < 10:
        pattern = '{}{}{}'
    else:
        pattern = '{}{}_{}'

    return [
        [pattern.format(prefix, i + 1, j + 1) for j in range(n)]
        for i in range(n)
    ]


def _require_odd(F, nabla, label='F'):
    try:
        check_support(F, nabla, nabla.inverse())
    except SupportConditionError as e:
        raise ParityError('{} is not nabla-odd: {}'.format(label, e))


def _require_even(F, nabla, label='F'):
    try:
        check_support(F, nabla, nabla)
    except SupportConditionError as e:
        raise ParityError('{} is not nabla-even: {}'.format(label, e))


def _require_invertible(F, label='F'):
    if F.n and not F.det():
        raise SingularMatrixError('{} = {} is not invertible.'.format(label, F))


def _matrix_generators(names, degrees, sign=1):
    n = len(names)
    return [
        Generator(
            names[i][j],
            (
                tuple(sign * entry for entry in degrees[i]),
                tuple(sign * entry for entry in degrees[j]),
            ),
        )
        for i in range(n)
        for j in range(n)
    ]


def _ao_presentation(base, nabla, F, names, name, precedence, step_budget):
    nabla = as_degrees(base, nabla)
    F = BMatrix(base, F.rows) if isinstance(F, BMatrix) else BMatrix(base, F)
    if F.n != nabla.n:
        raise AlgebraError('F and nabla differ in size.')

    _require_odd(F, nabla)
    _require_invertible(F)

    names = names or generator_names('v', nabla.n)
    A = Presentation(
        name,
        base,
        _matrix_generators(names, nabla),
        precedence=precedence,
        step_budget=step_budget,
    )
    return A, nabla, F, names


def _ao_relations(A, v, F, F_hat):
    X = _ao_inverse(A, v, F, F_hat)
    identity = AlgMatrix.identity(A, v.n)
    relations = []
    for product in (v * X - identity, X * v - identity):
        relations.extend(entry.terms for _, _, entry in product.entries())

    return relations


def _ao_hopf(A, nabla, F, names, **kwargs):
    """Delta(v) = v [x] v, epsilon(v) = nabla and S(v) = X."""
    v = AlgMatrix.from_names(A, names)
    F_hat = F.act_rows(nabla)
    X = _ao_inverse(A, v, F, F_hat)
    box = boxtimes(v)
    crossed = crossed_product(A.base)
    epsilon = degree_matrix(crossed, nabla)

    return hopf_structure(
        A,
        dict((names[i][j], box[i, j]) for i, j, _ in v.entries()),
        dict((names[i][j], epsilon[i, j]) for i, j, _ in v.entries()),
        dict((names[i][j], X[i, j]) for i, j, _ in v.entries()),
        **kwargs
    )


def construct_Ao(
    base,
    nabla,
    F,
    names=None,
    name='A_o',
    precedence=None,
    step_budget=DEFAULT_STEP_BUDGET,
):
    """The universal algebra on v with r_n(F^) v^{-T} = v s_n(F), that
    is v X = X v = 1 for X_ji = (r_n(F^^{-1}) v s_n(F))_ij.

    :type base: BaseSpec
    :type nabla: DegMatrix|list
    :type F: BMatrix|list(list)
    :param F: invertible and nabla-odd.

    :type names: list(list(str))|None
    :param names: generator names for the entries of v.

    :rtype: HopfData
    """
    A, nabla, F, names = _ao_presentation(
        base, nabla, F, names, name, precedence, step_budget,
    )
    v = AlgMatrix.from_names(A, names)
    A.orient_relations(_ao_relations(A, v, F, F.act_rows(nabla)))
    log.info('Built %s with %d rules', A.name, len(A.rules))

    hopf = _ao_hopf(
        A,
        nabla,
        F,
        names,
        matrices=OrderedDict([('nabla', nabla), ('F', F)]),
        generator_matrices=OrderedDict([('v', names)]),
        family='Ao',
        provenance=name,
    )
    hopf.characters = character_H(hopf)
    return hopf


def construct_AoFG(
    base,
    nabla,
    F,
    G,
    names=None,
    name='A_o(F,G)',
    precedence=None,
    step_budget=DEFAULT_STEP_BUDGET,
):
    """A_o(nabla, F) with r_n(Q^) v = v s_n(Q) for Q = G (nabla conj(G)
    nabla), and the * with conj(v) = r_n(G^^{-1}) v s_n(G).

    :type G: BMatrix|list(list)
    :param G: invertible and nabla-odd, with G F* = F G*.

    :rtype: HopfData
    """
    A, nabla, F, names = _ao_presentation(
        base, nabla, F, names, name, precedence, step_budget,
    )
    G = BMatrix(base, G.rows) if isinstance(G, BMatrix) else BMatrix(base, G)
    _require_odd(G, nabla, 'G')
    _require_invertible(G, 'G')
    if G * F.adjoint() != F * G.adjoint():
        raise PreconditionError('G F* = {} differs from F G*.'.format(G * F.adjoint()))

    nabla_conj = G.conjugate().act_rows(nabla)
    Q = G * nabla_conj
    _require_even(Q, nabla, 'Q')

    v = AlgMatrix.from_names(A, names)
    relations = _ao_relations(A, v, F, F.act_rows(nabla))
    Q_hat = Q.act_rows(nabla)
    relations.extend(
        entry.terms
        for _, _, entry in (r_n(A, Q_hat) * v - v * s_n(A, Q)).entries()
    )
    A.orient_relations(relations)

    v = AlgMatrix.from_names(A, names)
    G_hat = G.act_rows(nabla)
    conjugate = r_n(A, G_hat.inverse()) * v * s_n(A, G)
    A.set_star(dict(
        (names[i][j], conjugate[i, j])
        for i, j, _ in v.entries()
    ))
    log.info('Built %s with %d rules', A.name, len(A.rules))

    hopf = _ao_hopf(
        A,
        nabla,
        F,
        names,
        matrices=OrderedDict([('nabla', nabla), ('F', F), ('G', G), ('Q', Q)]),
        generator_matrices=OrderedDict([('v', names)]),
        family='AoFG',
        provenance=name,
    )
    hopf.characters = character_H(hopf)
    return hopf


def construct_Au(
    base,
    nabla,
    F,
    name='A_u',
    precedence=None,
    step_budget=DEFAULT_STEP_BUDGET,
):
    """The universal algebra on v, w with v^{-T} -1-> w and w^{-T} -F-> v,
    and w = conj(v).

    :param F: invertible, self-adjoint and nabla-even.
    :rtype: HopfData
    """
    nabla = as_degrees(base, nabla)
    F = BMatrix(base, F.rows) if isinstance(F, BMatrix) else BMatrix(base, F)
    if F.n != nabla.n:
        raise AlgebraError('F and nabla differ in size.')

    _require_even(F, nabla)
    _require_invertible(F)
    if F.adjoint() != F:
        raise PreconditionError('F = {} is not self-adjoint.'.format(F))

    n = nabla.n
    v_names = generator_names('v', n)
    w_names = generator_names('w', n)
    A = Presentation(
        name,
        base,
        _matrix_generators(v_names, nabla) + _matrix_generators(w_names, nabla, -1),
        precedence=precedence,
        step_budget=step_budget,
    )

    v = AlgMatrix.from_names(A, v_names)
    w = AlgMatrix.from_names(A, w_names)
    F_hat = F.act_rows(nabla)
    Y = _ao_inverse(A, v, F, F_hat)
    identity = AlgMatrix.identity(A, n)
    relations = []
    for product in (
        v * w.transpose() - identity,
        w.transpose() * v - identity,
        w * Y - identity,
        Y * w - identity,
    ):
        relations.extend(entry.terms for _, _, entry in product.entries())
    A.orient_relations(relations)

    v = AlgMatrix.from_names(A, v_names)
    w = AlgMatrix.from_names(A, w_names)
    star = {}
    for i, j, _ in v.entries():
        star[v_names[i][j]] = w[i, j]
        star[w_names[i][j]] = v[i, j]
    A.set_star(star)
    log.info('Built %s with %d rules', A.name, len(A.rules))

    Y = _ao_inverse(A, v, F, F_hat)
    crossed = crossed_product(base)
    delta, epsilon, antipode = {}, {}, {}
    for names, matrix, degrees, inverse in (
        (v_names, v, nabla, w.transpose()),
        (w_names, w, nabla.inverse(), Y),
    ):
        box = boxtimes(matrix)
        counit = degree_matrix(crossed, degrees)
        for i, j, _ in matrix.entries():
            delta[names[i][j]] = box[i, j]
            epsilon[names[i][j]] = counit[i, j]
            antipode[names[i][j]] = inverse[i, j]

    hopf = hopf_structure(
        A,
        delta,
        epsilon,
        antipode,
        matrices=OrderedDict([('nabla', nabla), ('F', F)]),
        generator_matrices=OrderedDict([('v', v_names), ('w', w_names)]),
        family='Au',
        provenance=name,
    )
    hopf.characters = character_H(hopf)
    return hopf


def character_H(hopf):
    """The character family of a universal construction:
    theta^(k)(v) = nabla H^k with H = (nabla F nabla)^T F^{-1} for A_o
    and A_o(F, G); theta^(k)(v) = nabla F^{-k} and
    theta^(k)(w) = F^{kT} nabla^{-1} for A_u.

    :rtype: CharacterFamily
    """
    nabla = hopf.matrices['nabla']
    F = hopf.matrices['F']
    names = hopf.generator_matrices['v']

    if hopf.family == 'Au':
        return CharacterFamily(hopf.presentation, [
            CharacterBlock(names, nabla, F.inverse()),
            CharacterBlock(hopf.generator_matrices['w'], nabla.inverse(), F.transpose()),
        ])

    H = F.act_rows(nabla).transpose() * F.inverse()
    if hopf.family == 'AoFG':
        _check_commuting_square(hopf, H)

    return CharacterFamily(hopf.presentation, [CharacterBlock(names, nabla, H)])


def _check_commuting_square(hopf, H):
    nabla = hopf.matrices['nabla']
    F = hopf.matrices['F']
    G = hopf.matrices['G']
    Q = hopf.matrices['Q']
    nabla_conj = G.conjugate().act_rows(nabla)

    if F.adjoint() * nabla_conj.adjoint() != nabla_conj * F:
        raise PreconditionError(
            'F* (nabla conj(G) nabla)* differs from (nabla conj(G) nabla) F.',
        )

    crossed = crossed_product(F.base)
    D = degree_matrix(crossed, nabla)

    def c(matrix):
        return r_n(crossed, matrix)

    consequences = (
        ('HQ = QH', c(H * Q), c(Q * H)),
        (
            'conj(G) nabla H^{-1} = conj(H) conj(G) nabla',
            c(G.conjugate()) * D * c(H.inverse()),
            c(H.conjugate()) * c(G.conjugate()) * D,
        ),
        (
            'Q F = F nabla Q^T nabla^{-1}',
            c(Q * F),
            c(F) * D * c(Q.transpose()) * D.inverse,
        ),
    )
    for label, left, right in consequences:
        if left != right:
            raise PreconditionError('{} fails: {} != {}'.format(label, left, right))


def quotient_morphism(source, target):
    """The canonical surjection A_o(nabla, F) -> A_o(nabla, F, G), v -> v,
    matching the entries of the two generator matrices by position.

    :type source: HopfData
    :type target: HopfData
    :rtype: AlgMorphism
    """
    A, C = source.presentation, target.presentation
    source_names = source.generator_matrices['v']
    target_names = target.generator_matrices['v']
    if len(source_names) != len(target_names):
        raise MorphismError(
            'Cannot map the {0}x{0} matrix of {1} onto the {2}x{2} matrix of {3}.'.format(
                len(source_names),
                A.name,
                len(target_names),
                C.name,
            ),
        )

    n = len(source_names)
    return AlgMorphism(
        'quotient',
        A,
        C,
        dict(
            (source_names[i][j], C.gen(target_names[i][j]))
            for i in range(n)
            for j in range(n)
        ),
    )


def dressed_matrix(F, H, nabla):
    """H F H^^T, the F of the dressed algebra."""
    _require_even(H, nabla, 'H')
    return H * F * H.act_rows(nabla).transpose()


def dressing_iso(source, target, H):
    """A_o(nabla, H F H^^T) -> A_o(nabla, F), v -> r_n(H^) v s_n(H)^{-1}.

    :type source: HopfData
    :param source: built from dressed_matrix(F, H, nabla).
    :type target: HopfData
    :type H: BMatrix
    :rtype: AlgMorphism
    """
    nabla = target.matrices['nabla']
    _require_even(H, nabla, 'H')
    _require_invertible(H, 'H')

    C = target.presentation
    v = AlgMatrix.from_names(C, target.generator_matrices['v'])
    w = r_n(C, H.act_rows(nabla)) * v * s_n(C, H.inverse())
    names = source.generator_matrices['v']
    return AlgMorphism(
        'dressing',
        source.presentation,
        C,
        dict((names[i][j], w[i, j]) for i, j, _ in w.entries()),
    )


def check_dressing(source, target, H):
    """The dressing map is a Hopf morphism and its image matrix is a
    corepresentation.

    :rtype: Report
    """
    phi = dressing_iso(source, target, H)
    report = check_hopf_morphism(phi, source, target)
    image = map_matrix(phi, AlgMatrix.from_names(
        source.presentation,
        source.generator_matrices['v'],
    ))
    for check, defect in corep_defects(image, target).items():
        report.expect_zero('image-corep/{}'.format(check), lambda: defect)

    return report


def unitarize(hopf, H):
    """u = r_n(H^{-1}) v s_n(nabla^{-1} H nabla), a unitary
    corepresentation conj(u) = u^{-T} of A_o(nabla, F, G).

    :raises: PreconditionError unless conj(H) H^T is a scalar multiple
        of G^{-1} F.
    :rtype: AlgMatrix
    """
    nabla = hopf.matrices['nabla']
    F = hopf.matrices['F']
    G = hopf.matrices['G']
    _require_even(H, nabla, 'H')
    _require_invertible(H, 'H')

    product = H.conjugate() * H.transpose()
    target = G.inverse() * F
    if product.ratio_to(target) is None:
        raise PreconditionError(
            'conj(H) H^T = {} is no scalar multiple of G^{{-1}} F = {}.'.format(
                product,
                target,
            ),
        )

    A = hopf.presentation
    v = AlgMatrix.from_names(A, hopf.generator_matrices['v'])
    u = r_n(A, H.inverse()) * v * s_n(A, H.act_rows(nabla.inverse()))

    X = _ao_inverse(A, v, F, F.act_rows(nabla))
    u.set_inverse(s_n(A, H.act_rows(nabla.inverse()).inverse()) * X * r_n(A, H))

    conjugate = map_matrix(star_morphism(A), u)
    defect = conjugate - u.inverse.transpose()
    if not defect.is_zero():
        raise PreconditionError(
            'conj(u) differs from u^{{-T}} by {}.'.format(defect),
        )

    return u
