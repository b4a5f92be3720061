"""(B, Gamma)-Hopf algebroid structure on a presentation and the axiom
suites that verify it.

Every check runs on generators: the maps involved are (anti)multiplicative
and B^ev-linear, so agreement on generators extends to the algebra.
"""
from __future__ import absolute_import

from collections import namedtuple
from collections import OrderedDict

from dynqg.algebra.basematrix import BMatrix
from dynqg.algebra.basematrix import check_support
from dynqg.algebra.basematrix import DegMatrix
from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.morphism import AlgMorphism
from dynqg.algebra.morphism import compose
from dynqg.algebra.morphism import identity_morphism
from dynqg.algebra.morphism import MorphismError
from dynqg.algebra.morphism import star_morphism
from dynqg.algebra.ncalg import check_local_confluence
from dynqg.algebra.ncalg import Generator
from dynqg.algebra.ncalg import MissingStarError
from dynqg.algebra.ncalg import Presentation
from dynqg.algebra.tensor import apply_to_chain
from dynqg.algebra.tensor import crossed_product
from dynqg.algebra.tensor import fiber_product
from dynqg.algebra.tensor import multiply_chain
from dynqg.algebra.tensor import transport
from dynqg.algebra.tensor import unit_iso_left
from dynqg.algebra.tensor import unit_iso_right
from dynqg.core.constants import DEFAULT_CHARACTER_RANGE
from dynqg.core.constants import DEFAULT_OVERLAP_LENGTH
from dynqg.core.constants import Suite
from dynqg.core.log import log
from dynqg.core.report import Report


class CharacterBlock(
    namedtuple(
        'CharacterBlock',
        [
            # Generator names, as an n x n grid: the matrix u.
            'names',

            # type: DegMatrix, the degrees d_u of u.
            'degrees',

            # type: BMatrix, theta^(k)(u) = d_u H^k.
            'H',
        ],
    ),
):
    pass


class CharacterFamily(object):
    """The group theta^(k) of characters A -> B x Gamma, given on each
    matrix of generators u by theta^(k)(u) = d_u H^k."""

    def __init__(self, presentation, blocks):
        """
        :type presentation: Presentation
        :type blocks: list(CharacterBlock)
        """
        self.presentation = presentation
        self.crossed = crossed_product(presentation.base)
        self.blocks = list(blocks)
        self._morphisms = {}

        covered = set()
        for block in self.blocks:
            # d_u H d_u^{-1} has entries in B.
            check_support(block.H, block.degrees, block.degrees)
            for row in block.names:
                covered.update(row)

        missing = set(presentation.names) - covered
        if missing:
            raise MorphismError(
                'Characters of {} leave {} undetermined.'.format(
                    presentation.name,
                    ', '.join(sorted(missing)),
                ),
            )

    def morphism(self, k):
        """
        :type k: int
        :rtype: AlgMorphism
        """
        if k not in self._morphisms:
            images = {}
            for block in self.blocks:
                power = block.H.power(k)
                for i, row in enumerate(block.names):
                    g = block.degrees[i]
                    for j, name in enumerate(row):
                        images[name] = self.crossed.element(
                            {g: self.presentation.base.act(g, power[i, j])},
                            normal=True,
                        )

            self._morphisms[k] = AlgMorphism(
                'theta:{}'.format(k),
                self.presentation,
                self.crossed,
                images,
            )

        return self._morphisms[k]

    def push(self, hom, presentation):
        return CharacterFamily(
            presentation,
            [
                CharacterBlock(
                    block.names,
                    block.degrees.rebase(hom.target),
                    block.H.push(hom),
                )
                for block in self.blocks
            ],
        )


class HopfData(object):
    """A presentation A together with
        delta:    A -> A (x) A
        epsilon:  A -> B x Gamma
        antipode: A -> A^{co,op}
    and, optionally, its character family and defining matrices.
    """

    def __init__(
        self,
        presentation,
        delta,
        epsilon,
        antipode,
        characters=None,
        matrices=None,
        generator_matrices=None,
        family=None,
        provenance=None,
    ):
        """
        :type presentation: Presentation
        :type delta: AlgMorphism
        :type epsilon: AlgMorphism
        :type antipode: AlgMorphism
        :type characters: CharacterFamily|None

        :type matrices: dict|None
        :param matrices: name => BMatrix or DegMatrix, e.g. nabla, F, G, H.

        :type generator_matrices: dict|None
        :param generator_matrices: name => n x n grid of generator names,
            e.g. v (and w for A_u).

        :type family: str|None
        :param family: 'Ao', 'Au' or 'AoFG' for the universal constructions.

        :type provenance: str|None
        """
        self.presentation = presentation
        self.delta = delta
        self.epsilon = epsilon
        self.antipode = antipode
        self.characters = characters
        self.matrices = OrderedDict(matrices or {})
        self.generator_matrices = OrderedDict(generator_matrices or {})
        self.family = family
        self.provenance = provenance

        self._identity = None
        self._antipode_in_algebra = None

    @property
    def crossed(self):
        return crossed_product(self.presentation.base)

    @property
    def coop(self):
        return transport(self.presentation, 'co,op')

    @property
    def identity(self):
        if self._identity is None:
            self._identity = identity_morphism(self.presentation)
        return self._identity

    @property
    def antipode_in_algebra(self):
        if self._antipode_in_algebra is None:
            self._antipode_in_algebra = antipode_in_algebra(self)
        return self._antipode_in_algebra

    def morphism(self, name):
        """
        :type name: str
        :param name: delta, epsilon, antipode or theta:K.
        """
        if name in ('delta', 'epsilon', 'antipode'):
            return getattr(self, name)

        if name.startswith('theta:'):
            if self.characters is None:
                raise MorphismError(
                    '{} has no character family.'.format(self.presentation.name),
                )
            try:
                k = int(name.split(':', 1)[1])
            except ValueError:
                raise MorphismError('Invalid character index in {}.'.format(name))
            return self.characters.morphism(k)

        raise MorphismError('Unknown morphism {}.'.format(name))

    def suite(
        self,
        name,
        max_overlap_len=DEFAULT_OVERLAP_LENGTH,
        character_range=DEFAULT_CHARACTER_RANGE,
    ):
        """
        :type name: str|Suite
        :rtype: Report
        """
        from dynqg.algebra.matrix import check_corep_suite

        suite = Suite(name)
        runners = OrderedDict([
            (Suite.HOPF, lambda: check_hopf_axioms(self)),
            (Suite.STAR, lambda: check_star_axioms(self)),
            (Suite.THETA, lambda: _theta_suite(self, character_range)),
            (
                Suite.CONFLUENCE,
                lambda: check_local_confluence(self.presentation, max_overlap_len),
            ),
            (Suite.COREP, lambda: check_corep_suite(self)),
        ])

        with log.timed('%s suite on %s', suite.value, self.presentation.name):
            if suite != Suite.ALL:
                return runners[suite]()

            report = Report(Suite.ALL.value)
            for key, runner in runners.items():
                if key == Suite.STAR and not self.presentation.has_star:
                    continue
                if key == Suite.THETA and self.characters is None:
                    continue

                report.extend(runner(), prefix=key.value)

            return report


def hopf_structure(
    presentation,
    delta_images,
    epsilon_images,
    antipode_images,
    **kwargs
):
    """HopfData from generator images.

    :type delta_images: dict
    :param delta_images: generator => element of A (x) A.

    :type epsilon_images: dict
    :param epsilon_images: generator => element of B x Gamma.

    :type antipode_images: dict
    :param antipode_images: generator => S(g) written as an element of A.
    """
    A = presentation
    coop = transport(A, 'co,op')
    delta = AlgMorphism('delta', A, fiber_product(A, A), delta_images)
    epsilon = AlgMorphism('epsilon', A, crossed_product(A.base), epsilon_images)
    antipode = AlgMorphism(
        'antipode',
        A,
        coop.presentation,
        dict(
            (name, coop.forward.apply(A.coerce(image)))
            for name, image in antipode_images.items()
        ),
    )

    return HopfData(A, delta, epsilon, antipode, **kwargs)


def antipode_in_algebra(hopf):
    """S read as an antihomomorphism A -> A, with S(r(b)) = s(b)."""
    return compose(hopf.coop.backward, hopf.antipode)


def check_morphism(phi):
    """Relations map to 0, generator images have the transformed degree,
    and phi is B^ev-linear.

    :type phi: AlgMorphism
    :rtype: Report
    """
    report = Report('morphism:{}'.format(phi.name))
    A = phi.source
    target = phi.target

    for lhs in A.rules:
        report.expect_zero(
            'relation[{}]'.format(A.format_key(lhs)),
            lambda: phi.apply_terms(A.relation_terms(lhs)),
        )

    for name in A.names:
        image = phi.images[name]
        expected = phi.degree_map(A.generator_degree(name))
        report.expect(
            'grading[{}]'.format(name),
            lambda: all(
                target.key_degree(key) == expected
                for key in image.terms
            ),
            lambda: 'image {} is not of degree {}'.format(image, expected),
        )

        for variable in A.base.dynamical_names:
            b = A.base.var(variable)
            for leg in ('r', 's'):
                report.expect_zero(
                    'linear[{}; {}_{}]'.format(name, variable, leg),
                    lambda: _linearity_defect(phi, name, b, leg),
                )

    return report


def _linearity_defect(phi, name, b, leg):
    A = phi.source
    coefficient = phi.apply(A.from_base(b, leg))
    if phi.antihom:
        expected = coefficient * phi.images[name]
    else:
        expected = phi.images[name] * coefficient

    return phi.apply(A.gen(name) * A.from_base(b, leg)) - expected


def check_hopf_axioms(hopf):
    """Morphism checks for delta, epsilon and the antipode, then
    coassociativity, counit and both antipode identities on every
    generator.

    :type hopf: HopfData
    :rtype: Report
    """
    A = hopf.presentation
    report = Report(Suite.HOPF.value)
    for phi in (hopf.delta, hopf.epsilon, hopf.antipode):
        report.extend(check_morphism(phi), prefix=phi.name)

    delta, epsilon, S = hopf.delta, hopf.epsilon, hopf.antipode
    identity = hopf.identity
    coop_identity = hopf.coop.backward
    crossed = hopf.crossed

    for name in A.names:
        x = A.gen(name)
        coproduct = delta.apply(x)

        report.expect_zero(
            'coassociativity[{}]'.format(name),
            lambda: apply_to_chain(coproduct, [delta, identity]) -
            apply_to_chain(coproduct, [identity, delta]),
        )
        report.expect_zero(
            'counit-left[{}]'.format(name),
            lambda: unit_iso_left(apply_to_chain(coproduct, [epsilon, identity])) - x,
        )
        report.expect_zero(
            'counit-right[{}]'.format(name),
            lambda: unit_iso_right(apply_to_chain(coproduct, [identity, epsilon])) - x,
        )
        report.expect_zero(
            'antipode-left[{}]'.format(name),
            lambda: multiply_chain(
                apply_to_chain(coproduct, [S, identity]),
                [coop_identity, identity],
                A,
            ) - crossed.s_check(epsilon.apply(x), A),
        )
        report.expect_zero(
            'antipode-right[{}]'.format(name),
            lambda: multiply_chain(
                apply_to_chain(coproduct, [identity, S]),
                [identity, coop_identity],
                A,
            ) - crossed.r_hat(epsilon.apply(x), A),
        )

    return report


def check_star_axioms(hopf):
    """The * is well defined and involutive, delta and epsilon are
    *-morphisms, and * S * S = id.

    :type hopf: HopfData
    :rtype: Report
    """
    A = hopf.presentation
    report = Report(Suite.STAR.value)
    try:
        star = star_morphism(A)
    except MissingStarError as e:
        report.add_error('star', e)
        return report

    report.extend(check_morphism(star), prefix='star')

    S = hopf.antipode_in_algebra
    fibers = hopf.delta.target
    for name in A.names:
        x = A.gen(name)
        report.expect_zero(
            'involutive[{}]'.format(name),
            lambda: A.star(A.star(x)) - x,
        )
        report.expect_zero(
            'delta-star[{}]'.format(name),
            lambda: hopf.delta.apply(A.star(x)) - fibers.star(hopf.delta.apply(x)),
        )
        report.expect_zero(
            'epsilon-star[{}]'.format(name),
            lambda: hopf.epsilon.apply(A.star(x)) -
            hopf.crossed.star(hopf.epsilon.apply(x)),
        )
        report.expect_zero(
            'star-antipode[{}]'.format(name),
            lambda: A.star(S.apply(A.star(S.apply(x)))) - x,
        )

    return report


def check_hopf_morphism(pi, source, target):
    """pi: A -> C commutes with delta, epsilon and the antipode.

    :type pi: AlgMorphism
    :type source: HopfData
    :type target: HopfData
    :rtype: Report
    """
    report = Report('hopf-morphism:{}'.format(pi.name))
    if pi.source is not source.presentation or \
            pi.target is not target.presentation:
        report.add_error(
            'endpoints',
            MorphismError('{} does not map between the given algebras.'.format(pi.name)),
        )
        return report

    report.extend(check_morphism(pi), prefix=pi.name)
    for name in source.presentation.names:
        image = pi.images[name]
        report.expect_zero(
            'delta[{}]'.format(name),
            lambda: target.delta.apply(image) -
            apply_to_chain(source.delta.images[name], [pi, pi]),
        )
        report.expect_zero(
            'epsilon[{}]'.format(name),
            lambda: target.epsilon.apply(image) - source.epsilon.images[name],
        )
        report.expect_zero(
            'antipode[{}]'.format(name),
            lambda: target.antipode_in_algebra.apply(image) -
            pi.apply(source.antipode_in_algebra.images[name]),
        )

    return report


def convolution(first, second, hopf):
    """(first (x) second) o delta for characters A -> B x Gamma, as a
    morphism given on generators."""
    A = hopf.presentation
    return AlgMorphism(
        '{}#{}'.format(first.name, second.name),
        A,
        hopf.crossed,
        dict(
            (
                name,
                unit_iso_left(apply_to_chain(hopf.delta.images[name], [first, second])),
            )
            for name in A.names
        ),
    )


def check_character_group(hopf, k_range=DEFAULT_CHARACTER_RANGE):
    """theta^(0) = epsilon, the convolution, antipode, imaginary and
    scaling laws.

    :type hopf: HopfData
    :type k_range: int
    :param k_range: check theta^(k) for |k| <= k_range.
    :rtype: Report
    """
    A = hopf.presentation
    report = Report(Suite.THETA.value)
    if hopf.characters is None:
        report.add_error(
            'characters',
            MorphismError('{} has no character family.'.format(A.name)),
        )
        return report

    theta = hopf.characters.morphism
    crossed = hopf.crossed
    S = hopf.antipode_in_algebra
    ks = range(-k_range, k_range + 1)

    for k in ks:
        report.extend(check_morphism(theta(k)), prefix='theta:{}'.format(k))

    for name in A.names:
        x = A.gen(name)
        coproduct = hopf.delta.images[name]
        report.expect_equal(
            'unit[{}]'.format(name),
            lambda: (theta(0).images[name], hopf.epsilon.images[name]),
        )

        for k in (-1, 0, 1):
            for l in (-1, 0, 1):
                report.expect_equal(
                    'convolution[{}; {},{}]'.format(name, k, l),
                    lambda: (
                        unit_iso_left(apply_to_chain(coproduct, [theta(k), theta(l)])),
                        theta(k + l).images[name],
                    ),
                )

        for k in ks:
            report.expect_equal(
                'antipode[{}; {}]'.format(name, k),
                lambda: (
                    theta(k).apply(S.images[name]),
                    crossed.antipode(theta(-k).images[name]),
                ),
            )
            if A.has_star:
                report.expect_equal(
                    'imaginary[{}; {}]'.format(name, k),
                    lambda: (
                        theta(k).apply(A.star(x)),
                        crossed.star(theta(-k).images[name]),
                    ),
                )

        report.expect_zero(
            'scaling[{}]'.format(name),
            lambda: S.apply(S.images[name]) - unit_iso_right(unit_iso_left(
                apply_to_chain(
                    apply_to_chain(coproduct, [hopf.delta, hopf.identity]),
                    [theta(1), hopf.identity, theta(-1)],
                ),
            )),
        )

    return report


def check_character_powers(hopf, k_max=3):
    """theta^(k) built from H^k agrees with the k-fold convolution power
    of theta^(1) (and of theta^(-1) for negative k).

    :rtype: Report
    """
    report = Report('theta-powers')
    if hopf.characters is None:
        report.add_error(
            'characters',
            MorphismError(
                '{} has no character family.'.format(hopf.presentation.name),
            ),
        )
        return report

    theta = hopf.characters.morphism
    for sign in (1, -1):
        power = theta(sign)
        for k in range(2, k_max + 1):
            power = convolution(power, theta(sign), hopf)
            for name in hopf.presentation.names:
                report.expect_equal(
                    'power[{}; {}]'.format(name, sign * k),
                    lambda: (power.images[name], theta(sign * k).images[name]),
                )

    return report


def _theta_suite(hopf, character_range):
    report = check_character_group(hopf, character_range)
    if hopf.characters is not None:
        report.extend(check_character_powers(hopf))

    return report


def base_change(hopf, hom):
    """Pushes the presentation, its *, delta, epsilon, the antipode and
    the character family along a base homomorphism.

    :type hopf: HopfData
    :type hom: BaseHom
    :rtype: HopfData
    """
    A = hopf.presentation
    if hom.source is not A.base:
        raise AlgebraError(
            '{} does not start from {}.'.format(hom.name, A.base.name),
        )

    log.info('Changing base of %s along %s', A.name, hom.name)
    pushed = Presentation(
        '{}[{}]'.format(A.name, hom.name),
        hom.target,
        [Generator(g.name, g.degree) for g in A.generators],
        precedence=A.precedence,
        step_budget=A.step_budget,
        mirrored=A.mirrored,
    )

    def push(x, target):
        cfield = x.algebra.cfield
        return target.element(dict(
            (key, cfield.push(c, hom, target.cfield))
            for key, c in x.terms.items()
        ))

    pushed.orient_relations([
        push(A.element(relation, normal=True), pushed).terms
        for relation in A.relations()
    ])
    if A.has_star:
        pushed.set_star(dict(
            (g.name, push(g.star_image, pushed))
            for g in A.generators
        ))

    fibers = fiber_product(pushed, pushed)
    crossed = crossed_product(hom.target)
    matrices = OrderedDict()
    for name, matrix in hopf.matrices.items():
        if isinstance(matrix, BMatrix):
            matrix = matrix.push(hom)
        elif isinstance(matrix, DegMatrix):
            matrix = matrix.rebase(hom.target)
        matrices[name] = matrix

    characters = None
    if hopf.characters is not None:
        characters = hopf.characters.push(hom, pushed)

    return hopf_structure(
        pushed,
        dict(
            (name, push(image, fibers))
            for name, image in hopf.delta.images.items()
        ),
        dict(
            (name, push(image, crossed))
            for name, image in hopf.epsilon.images.items()
        ),
        dict(
            (name, push(image, pushed))
            for name, image in hopf.antipode_in_algebra.images.items()
        ),
        characters=characters,
        matrices=matrices,
        generator_matrices=hopf.generator_matrices,
        family=hopf.family,
        provenance='{} along {}'.format(hopf.provenance or A.name, hom.name),
    )
