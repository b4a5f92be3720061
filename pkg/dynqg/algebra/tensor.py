"""The monoidal layer: the crossed product B x Gamma, fiber products of
(B, Gamma)-algebras, and the op / co / bar transforms of presentations.

A fiber chain over factors A_1, ..., A_k is a sum of terms
c * (w_1 (x) ... (x) w_k). The coefficient c lives in a field with legs
r, m1, ..., m(k-1), s: r(b) acts on the left of w_1, s(b) is s_k(b) on the
left of w_k, and m_i(b) is s_i(b) on the left of w_i, which the fiber
product identifies with r_{i+1}(b) on the left of w_{i+1}.
"""
from __future__ import absolute_import

from collections import namedtuple

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import coefficient_field
from dynqg.algebra.coeff import substitute
from dynqg.algebra.morphism import AlgMorphism
from dynqg.algebra.morphism import DegreeMap
from dynqg.algebra.morphism import MorphismError
from dynqg.algebra.ncalg import accumulate
from dynqg.algebra.ncalg import add_degrees
from dynqg.algebra.ncalg import Algebra
from dynqg.algebra.ncalg import Element
from dynqg.algebra.ncalg import Generator
from dynqg.algebra.ncalg import negate_degree
from dynqg.algebra.ncalg import Presentation
from dynqg.core.constants import SHARED
from dynqg.core.log import log


class InnerDegreeMismatch(AlgebraError):
    pass


class FactorMismatchError(AlgebraError):
    pass


class CrossedElement(Element):
    pass


class CrossedProduct(Algebra):
    """B x Gamma: sums of b * g with g * b' = b'_(g) * g."""

    element_class = CrossedElement

    def __init__(self, base):
        self.name = '{} x Z^{}'.format(base.name, base.gamma_rank)
        self.cfield = coefficient_field(base, None)

    def __repr__(self):
        return 'CrossedProduct({})'.format(self.base.name)

    @property
    def unit_key(self):
        return self.base.identity_group_element()

    def twist(self, c, g):
        return self.base.act(g, c)

    def key_product(self, first, second):
        return {add_degrees(first, second): self.cfield.one}

    def key_degree(self, g):
        return (g, g)

    def format_key(self, g):
        if not any(g):
            return '1'

        return '[{}]'.format(','.join(str(entry) for entry in g))

    def group(self, g):
        return self.element({self.base.check_rank(g): self.cfield.one}, normal=True)

    def star(self, x):
        """(b g)* = g^{-1} b*."""
        return self.element(
            dict(
                (negate_degree(g), self.base.act(negate_degree(g), self.base.involve(b)))
                for g, b in x.terms.items()
            ),
            normal=True,
        )

    def antipode(self, x):
        """S(b g) = g^{-1} b."""
        return self.element(
            dict(
                (negate_degree(g), self.base.act(negate_degree(g), b))
                for g, b in x.terms.items()
            ),
            normal=True,
        )

    def r_hat(self, x, algebra):
        """b g -> r(b) inside a (B, Gamma)-algebra."""
        total = self.cfield.zero
        for b in x.terms.values():
            total = total + b
        return algebra.from_base(total, 'r')

    def s_check(self, x, algebra):
        """g b -> s(b), that is b g -> s(g^{-1} b)."""
        total = self.cfield.zero
        for g, b in x.terms.items():
            total = total + self.base.act(negate_degree(g), b)
        return algebra.from_base(total, 's')


_crossed_products = {}


def crossed_product(base):
    if base not in _crossed_products:
        _crossed_products[base] = CrossedProduct(base)

    return _crossed_products[base]


def crossed_mul(x, y):
    return x * y


def leg_name(position, length):
    if position == 0:
        return 'r'
    if position == length:
        return 's'

    return 'm{}'.format(position)


class FiberChain(Element):
    pass


class FiberProduct(Algebra):
    """A_1 (x) ... (x) A_k over B, keys being tuples of factor keys with
    matching inner degrees."""

    element_class = FiberChain

    def __init__(self, factors):
        """
        :type factors: tuple(Algebra)
        :param factors: Presentations or crossed products over one base.
        """
        if not factors:
            raise FactorMismatchError('A fiber product needs a factor.')

        base = factors[0].base
        for factor in factors:
            if isinstance(factor, FiberProduct):
                raise FactorMismatchError('Fiber products are built flat.')
            if factor.base is not base:
                raise FactorMismatchError(
                    'Factors over {} and {} cannot be combined.'.format(
                        base.name,
                        factor.base.name,
                    ),
                )

        self.factors = tuple(factors)
        self.length = len(self.factors)
        self.name = ' (x) '.join(factor.name for factor in self.factors)
        self.legs = tuple(
            leg_name(position, self.length)
            for position in range(self.length + 1)
        )
        self.cfield = coefficient_field(base, self.legs)

        # A crossed factor has r = s, so its two legs are one.
        representative = list(range(self.length + 1))
        for index, factor in enumerate(self.factors):
            if isinstance(factor, CrossedProduct):
                representative[index + 1] = representative[index]

        self._merge_map = dict(
            (self.legs[position], self.legs[representative[position]])
            for position in range(self.length + 1)
        )
        self._merges = representative != list(range(self.length + 1))

    def __repr__(self):
        return 'FiberProduct({})'.format(self.name)

    @property
    def unit_key(self):
        return tuple(factor.unit_key for factor in self.factors)

    def merge(self, c):
        if not self._merges:
            return c

        return self.cfield.transfer(c, self.cfield, self._merge_map)

    def lift(self, index, c):
        """A coefficient on the left of the index-th factor key."""
        factor = self.factors[index]
        if factor.cfield.legs is None:
            leg_map = {None: self.legs[index]}
        else:
            leg_map = {'r': self.legs[index], 's': self.legs[index + 1]}

        return factor.cfield.transfer(c, self.cfield, leg_map)

    def key_degree(self, key):
        return (
            self.factors[0].key_degree(key[0])[0],
            self.factors[-1].key_degree(key[-1])[1],
        )

    def check_inner_degrees(self, key):
        for index in range(self.length - 1):
            left = self.factors[index].key_degree(key[index])[1]
            right = self.factors[index + 1].key_degree(key[index + 1])[0]
            if left != right:
                raise InnerDegreeMismatch(
                    'Cannot join {} and {}: inner degrees {} and {}.'.format(
                        self.factors[index].format_key(key[index]),
                        self.factors[index + 1].format_key(key[index + 1]),
                        left,
                        right,
                    ),
                )

    def twist(self, c, key):
        shifts = {'r': self.factors[0].key_degree(key[0])[0]}
        for index, factor in enumerate(self.factors):
            shifts[self.legs[index + 1]] = factor.key_degree(key[index])[1]

        return self.cfield.twist(c, shifts)

    def key_product(self, first, second):
        partial = {(): self.cfield.one}
        for index, factor in enumerate(self.factors):
            product = factor.key_product(first[index], second[index])
            extended = {}
            for key, c in partial.items():
                for factor_key, factor_c in product.items():
                    accumulate(
                        extended,
                        key + (factor_key,),
                        c * self.lift(index, factor_c),
                    )
            partial = extended

        output = {}
        for key, c in partial.items():
            accumulate(output, key, self.merge(c))
        return output

    def normalize_terms(self, terms):
        output = {}
        for key, c in terms.items():
            if not c:
                continue
            self.check_inner_degrees(key)
            accumulate(output, key, self.merge(c))

        return output

    def format_key(self, key):
        return ' (x) '.join(
            factor.format_key(part)
            for factor, part in zip(self.factors, key)
        )

    def sort_key(self, key):
        return tuple(
            factor.sort_key(part)
            for factor, part in zip(self.factors, key)
        )

    def embed(self, parts):
        """parts[0] (x) ... (x) parts[k-1].

        :type parts: list(Element)
        """
        if len(parts) != self.length:
            raise FactorMismatchError(
                'Expected {} parts, got {}.'.format(self.length, len(parts)),
            )

        terms = {(): self.cfield.one}
        for index, part in enumerate(parts):
            part = self.factors[index].coerce(part)
            extended = {}
            for key, c in terms.items():
                for part_key, part_c in part.terms.items():
                    accumulate(
                        extended,
                        key + (part_key,),
                        c * self.lift(index, part_c),
                    )
            terms = extended

        return self.element(terms)

    def star(self, x):
        """(a (x) c)* = a* (x) c*."""
        result = self.zero()
        for key, c in x.terms.items():
            parts = [
                factor.star(factor.element({part: factor.cfield.one}, normal=True))
                for factor, part in zip(self.factors, key)
            ]
            result = result + self.embed(parts) * self.from_coefficient(
                self.cfield.conjugate(c),
            )

        return result


_fiber_products = {}


def fiber_product(*factors):
    if factors not in _fiber_products:
        _fiber_products[factors] = FiberProduct(factors)

    return _fiber_products[factors]


def fiber_embed(parts):
    """
    :type parts: list(Element)
    :rtype: FiberChain
    """
    return fiber_product(*[part.algebra for part in parts]).embed(parts)


def fiber_mul(x, y):
    return x * y


def fiber_star(x):
    return x.algebra.star(x)


def _require_chain(x):
    if not isinstance(x.algebra, FiberProduct):
        raise FactorMismatchError('{!r} is not a fiber product.'.format(x.algebra))

    return x.algebra


def _restrict(chain, positions, factors):
    """Algebra made of the given factors, and where each leg of `chain`
    goes in it."""
    if len(factors) == 1:
        target = factors[0]
        names = [None, None] if target.cfield.legs is None else ['r', 's']
    else:
        target = fiber_product(*factors)
        names = list(target.legs)

    leg_map = dict(
        (leg, names[position])
        for leg, position in zip(chain.legs, positions)
    )
    return target, leg_map


def unit_iso_left(x):
    """(b g) (x) a -> r(b) a."""
    chain = _require_chain(x)
    if not isinstance(chain.factors[0], CrossedProduct):
        raise FactorMismatchError('The first factor is not B x Gamma.')

    target, leg_map = _restrict(
        chain,
        [max(position - 1, 0) for position in range(chain.length + 1)],
        chain.factors[1:],
    )
    single = chain.length == 2
    return target.element(dict(
        (
            key[1] if single else key[1:],
            chain.cfield.transfer(c, target.cfield, leg_map),
        )
        for key, c in x.terms.items()
    ))


def unit_iso_right(x):
    """a (x) (b g) -> s(b) a."""
    chain = _require_chain(x)
    if not isinstance(chain.factors[-1], CrossedProduct):
        raise FactorMismatchError('The last factor is not B x Gamma.')

    last = chain.length - 1
    target, leg_map = _restrict(
        chain,
        [min(position, last) for position in range(chain.length + 1)],
        chain.factors[:-1],
    )
    single = chain.length == 2
    return target.element(dict(
        (
            key[0] if single else key[:-1],
            chain.cfield.transfer(c, target.cfield, leg_map),
        )
        for key, c in x.terms.items()
    ))


def _blocks(targets):
    """Flattened factors of a juxtaposition and the leg offset of each
    block."""
    factors = []
    offsets = []
    for target in targets:
        offsets.append(len(factors))
        if isinstance(target, FiberProduct):
            factors.extend(target.factors)
        else:
            factors.append(target)

    return factors, offsets


def _block_position(algebra, leg):
    if isinstance(algebra, FiberProduct):
        return algebra.legs.index(leg)
    if algebra.cfield.legs is None:
        return 0

    return {'r': 0, 's': 1}[leg]


def _target_legs(target):
    if isinstance(target, FiberProduct):
        return list(target.legs)
    if target.cfield.legs is None:
        return [None, None]

    return ['r', 's']


def juxtapose(parts):
    """X_1 (x) ... (x) X_k for elements that may themselves be chains."""
    factors, offsets = _blocks([part.algebra for part in parts])
    target = factors[0] if len(factors) == 1 else fiber_product(*factors)
    legs = _target_legs(target)

    terms = {(): target.cfield.one}
    for part, offset in zip(parts, offsets):
        algebra = part.algebra
        source_legs = algebra.legs if isinstance(algebra, FiberProduct) else (
            [None] if algebra.cfield.legs is None else ['r', 's']
        )
        leg_map = dict(
            (leg, legs[offset + _block_position(algebra, leg)])
            for leg in source_legs
        )
        extended = {}
        for key, c in terms.items():
            for part_key, part_c in part.terms.items():
                block = part_key if isinstance(algebra, FiberProduct) else (part_key,)
                accumulate(
                    extended,
                    key + block,
                    c * algebra.cfield.transfer(part_c, target.cfield, leg_map),
                )
        terms = extended

    if len(factors) == 1:
        terms = dict((key[0], c) for key, c in terms.items())

    return target.element(terms)


def apply_to_chain(x, maps):
    """(phi_1 (x) ... (x) phi_k)(x) for maps that are all multiplicative or
    all antimultiplicative.

    :type x: FiberChain
    :type maps: list(AlgMorphism)
    """
    chain = _require_chain(x)
    if len(maps) != chain.length:
        raise FactorMismatchError(
            'Expected {} maps, got {}.'.format(chain.length, len(maps)),
        )
    for phi, factor in zip(maps, chain.factors):
        if phi.source is not factor:
            raise FactorMismatchError(
                '{} does not start from {!r}.'.format(phi.name, factor),
            )
    if len(set(phi.antihom for phi in maps)) != 1 or \
            len(set(phi.conjugate for phi in maps)) != 1:
        raise MorphismError(
            'Cannot mix homomorphisms and antihomomorphisms in one chain map.',
        )

    antihom = maps[0].antihom
    conjugate = maps[0].conjugate
    targets = [phi.target for phi in maps]
    factors, offsets = _blocks(targets)
    target = factors[0] if len(factors) == 1 else fiber_product(*factors)
    legs = _target_legs(target)

    leg_map = {}
    for position, leg in enumerate(chain.legs):
        index = max(position - 1, 0)
        side = 'r' if position == 0 else 's'
        target_leg = maps[index].leg_map[side]
        leg_map[leg] = legs[
            offsets[index] + _block_position(targets[index], target_leg)
        ]

    result = target.zero()
    for key, c in x.terms.items():
        image = juxtapose([
            phi.apply_word(part)
            for phi, part in zip(maps, key)
        ])
        coefficient = chain.cfield.transfer(
            c,
            target.cfield,
            leg_map,
            conjugate=conjugate,
        )
        if antihom:
            result = result + image * target.from_coefficient(coefficient)
        else:
            result = result + target.scale(coefficient, image)

    return result


def multiply_chain(x, maps, target):
    """Contracts a chain into one Presentation: the sum of
    phi_1(a_1) ... phi_k(a_k).

    Each coefficient leg is read on one side of an adjacent factor (a
    multiplicative one when there is a choice), sent through that factor's
    map, and moved to the far left past the images in front of it.

    :type x: FiberChain
    :type maps: list(AlgMorphism)
    :type target: Presentation
    """
    chain = _require_chain(x)
    if len(maps) != chain.length:
        raise FactorMismatchError(
            'Expected {} maps, got {}.'.format(chain.length, len(maps)),
        )
    for phi, factor in zip(maps, chain.factors):
        if phi.source is not factor or phi.target is not target:
            raise FactorMismatchError(
                '{} does not map {!r} into {!r}.'.format(phi.name, factor, target),
            )
        if phi.conjugate:
            raise MorphismError('Conjugate-linear maps cannot be contracted.')

    placement = []
    for position in range(chain.length + 1):
        if position == 0:
            placement.append((0, 'r'))
        elif position == chain.length or not maps[position - 1].antihom:
            placement.append((position - 1, 's'))
        elif not maps[position].antihom:
            placement.append((position, 'r'))
        else:
            placement.append((position - 1, 's'))

    dynamical = [
        index
        for index, var in enumerate(chain.base.variables)
        if var.leg != SHARED
    ]
    result = target.zero()
    for key, c in x.terms.items():
        degrees = [
            phi.degree_map(factor.key_degree(part))
            for phi, factor, part in zip(maps, chain.factors, key)
        ]
        before = [_total_degree(chain.base, degrees[:index]) for index in range(chain.length)]
        through = [_total_degree(chain.base, degrees[:index + 1]) for index in range(chain.length)]

        images = [
            target.cfield.symbol(name)
            for name in chain.base.shared_names
        ]
        for position, leg in enumerate(chain.legs):
            index, side = placement[position]
            phi = maps[index]
            target_leg = phi.leg_map[side]
            shift = through[index] if phi.antihom else before[index]
            leg_images = target.cfield.leg_images(target_leg)
            images.extend(
                target.twist_by_degree(leg_images[var_index], shift)
                for var_index in dynamical
            )

        coefficient = substitute(c, images, target.cfield.field)

        product = target.one()
        for phi, part in zip(maps, key):
            product = product * phi.apply_word(part)

        result = result + target.scale(coefficient, product)

    return result


def _total_degree(base, degrees):
    zero = base.identity_group_element()
    total = (zero, zero)
    for r_degree, s_degree in degrees:
        total = (add_degrees(total[0], r_degree), add_degrees(total[1], s_degree))
    return total


TRANSFORMS = ('bar', 'co', 'op')


class Transport(
    namedtuple(
        'Transport',
        [
            # type: Presentation
            'presentation',

            # type: AlgMorphism, A -> transformed A
            'forward',

            # type: AlgMorphism, transformed A -> A
            'backward',
        ],
    ),
):
    pass


def parse_transform(which):
    """
    :type which: str
    :param which: comma separated transforms, e.g. "co,op". Repeated
        transforms cancel.

    :rtype: frozenset
    """
    flags = set()
    for token in which.split(','):
        token = token.strip()
        if token not in TRANSFORMS:
            raise AlgebraError('Unknown transform {}.'.format(token))
        flags ^= {token}

    return frozenset(flags)


_transports = {}


def transport(presentation, which):
    """The transformed presentation together with the identity-on-sets
    morphisms to and from it.

    :type presentation: Presentation
    :type which: str
    :rtype: Transport
    """
    flags = parse_transform(which)
    key = (presentation, flags)
    if key not in _transports:
        _transports[key] = _build_transport(presentation, flags)

    return _transports[key]


def transform_presentation(presentation, which):
    return transport(presentation, which).presentation


def _transport_maps(source, target, flags, name):
    co = 'co' in flags
    leg_map = {'r': 's', 's': 'r'} if co else {'r': 'r', 's': 's'}
    images = dict((generator, target.gen(generator)) for generator in source.names)
    return AlgMorphism(
        name,
        source,
        target,
        images,
        leg_map=leg_map,
        antihom='op' in flags,
        conjugate='bar' in flags,
        degree_map=DegreeMap(co, 'op' in flags),
    )


def _build_transport(A, flags):
    suffix = ','.join(token for token in TRANSFORMS if token in flags)
    degree_map = DegreeMap('co' in flags, 'op' in flags)
    target = Presentation(
        '{}^{{{}}}'.format(A.name, suffix) if suffix else A.name,
        A.base,
        [Generator(g.name, degree_map(g.degree)) for g in A.generators],
        precedence=A.precedence,
        step_budget=A.step_budget,
        mirrored=A.mirrored != ('op' in flags),
    )
    log.debug('Transporting %s to %s', A.name, target.name)

    skeleton_map = _transport_maps(A, target, flags, 'to-' + suffix)
    target.orient_relations([
        skeleton_map.apply_terms(relation).terms
        for relation in A.relations()
    ])

    forward = _transport_maps(A, target, flags, 'to-' + suffix)
    backward = _transport_maps(target, A, flags, 'from-' + suffix)
    if A.has_star:
        target.set_star(dict(
            (g.name, forward.apply(g.star_image))
            for g in A.generators
        ))

    return Transport(target, forward, backward)
