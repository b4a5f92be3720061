"""Morphisms out of presented algebras, given on generators."""
from __future__ import absolute_import

from collections import namedtuple

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.ncalg import MissingStarError
from dynqg.algebra.ncalg import negate_degree


class MorphismError(AlgebraError):
    pass


class DegreeMap(namedtuple('DegreeMap', ['swap', 'negate'])):
    """How a morphism regrades: (a, b) -> (b, a) and/or (-a, -b)."""

    def __call__(self, degree):
        r_degree, s_degree = degree
        if self.swap:
            r_degree, s_degree = s_degree, r_degree
        if self.negate:
            r_degree, s_degree = negate_degree(r_degree), negate_degree(s_degree)

        return (r_degree, s_degree)

    def then(self, other):
        return DegreeMap(self.swap != other.swap, self.negate != other.negate)


IDENTITY_DEGREES = DegreeMap(False, False)


def default_leg_map(target):
    if target.cfield.legs is None:
        return {'r': None, 's': None}

    return {'r': 'r', 's': 's'}


class AlgMorphism(object):
    """A (conjugate-)linear map out of a Presentation, multiplicative or
    antimultiplicative, fixed by its generator images and by where it
    sends the coefficient legs r(b), s(b).
    """

    def __init__(
        self,
        name,
        source,
        target,
        images,
        leg_map=None,
        antihom=False,
        conjugate=False,
        degree_map=IDENTITY_DEGREES,
    ):
        """
        :type name: str
        :type source: Presentation
        :type target: Algebra

        :type images: dict
        :param images: generator name => target element.

        :type leg_map: dict|None
        :param leg_map: 'r'/'s' => leg of the target (None for a target
            without legs). Defaults to r -> r, s -> s.

        :type antihom: bool
        :type conjugate: bool

        :type degree_map: DegreeMap
        :param degree_map: degree of an image in terms of the source degree.
        """
        self.name = name
        self.source = source
        self.target = target
        self.antihom = antihom
        self.conjugate = conjugate
        self.degree_map = degree_map
        self.leg_map = dict(leg_map or default_leg_map(target))

        missing = set(source.names) - set(images)
        if missing:
            raise MorphismError(
                '{} assigns no image to {}.'.format(name, ', '.join(sorted(missing))),
            )

        self.images = dict(
            (generator, target.coerce(images[generator]))
            for generator in source.names
        )
        self._word_cache = {}

    def __repr__(self):
        return 'AlgMorphism({}: {!r} -> {!r})'.format(
            self.name,
            self.source,
            self.target,
        )

    def transfer(self, c):
        return self.source.cfield.transfer(
            c,
            self.target.cfield,
            self.leg_map,
            conjugate=self.conjugate,
        )

    def apply_word(self, word):
        if word not in self._word_cache:
            image = self.target.one()
            for index in (reversed(word) if self.antihom else word):
                image = image * self.images[self.source.names[index]]

            self._word_cache[word] = image

        return self._word_cache[word]

    def apply_terms(self, terms):
        """Image of a raw sum of words, which need not be reduced."""
        result = self.target.zero()
        for word, c in terms.items():
            image = self.apply_word(word)
            coefficient = self.transfer(c)
            if self.antihom:
                result = result + image * self.target.from_coefficient(coefficient)
            else:
                result = result + self.target.scale(coefficient, image)

        return result

    def apply(self, x):
        if x.algebra is not self.source:
            raise MorphismError(
                '{} cannot be applied to an element of {!r}.'.format(
                    self.name,
                    x.algebra,
                ),
            )

        return self.apply_terms(x.terms)

    __call__ = apply


def apply_morphism(phi, x):
    return phi.apply(x)


def identity_morphism(algebra):
    return AlgMorphism(
        'id',
        algebra,
        algebra,
        dict((name, algebra.gen(name)) for name in algebra.names),
    )


def compose(second, first):
    """second o first; first must land in the Presentation second starts
    from.

    :type second: AlgMorphism
    :type first: AlgMorphism
    """
    if first.target is not second.source:
        raise MorphismError(
            'Cannot compose {} after {}.'.format(second.name, first.name),
        )

    return AlgMorphism(
        '{}*{}'.format(second.name, first.name),
        first.source,
        second.target,
        dict(
            (name, second.apply(image))
            for name, image in first.images.items()
        ),
        leg_map=dict(
            (leg, second.leg_map[target_leg])
            for leg, target_leg in first.leg_map.items()
        ),
        antihom=first.antihom != second.antihom,
        conjugate=first.conjugate != second.conjugate,
        degree_map=first.degree_map.then(second.degree_map),
    )


def star_morphism(algebra):
    """The *-structure of a presentation as a conjugate-linear
    antihomomorphism."""
    if not algebra.has_star:
        raise MissingStarError('{} has no *-structure.'.format(algebra.name))

    return AlgMorphism(
        'star',
        algebra,
        algebra,
        dict((g.name, g.star_image) for g in algebra.generators),
        antihom=True,
        conjugate=True,
        degree_map=DegreeMap(False, True),
    )
