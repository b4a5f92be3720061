"""Exact arithmetic for base rings of dynamical quantum groups.

A base ring B is modelled inside the fraction field Q(x_1, ..., x_m) of its
variables, with sympy's sparse `FracField` doing the arithmetic: elements
are kept as coprime numerator/denominator pairs with a normalised sign,
so equality of normal forms is syntactic equality.

Z^d acts on B through substitutions (one per generator, supplied together
with their inverses), and B carries an involution given by the images of
its variables.

Coefficients of algebra elements live in a `CoefficientField`, which keeps
one copy of every shared variable and one copy of every dynamical
variable per leg: `X_r` for r(X), `X_s` for s(X), `X_m1` for the first
middle leg of a fiber chain.
"""
from __future__ import absolute_import

from collections import namedtuple
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.fields import field

from dynqg.core.constants import DYNAMICAL
from dynqg.core.constants import SHARED
from dynqg.core.log import log
from dynqg.core.report import Report


# Printed coefficients are matched against Z[k,l] for |k|, |l| up to this.
SHIFT_RATIO_WINDOW = 3


class AlgebraError(ValueError):
    """Base class for every error raised by the algebra layer."""
    pass


class RankMismatchError(AlgebraError):
    pass


class PoleError(AlgebraError):
    pass


def make_field(names):
    """
    :type names: list(str)
    :rtype: sympy.polys.fields.FracField
    """
    return field(','.join(names), QQ)[0]


def constant(target, value):
    """
    :type target: FracField
    :type value: int|Fraction|str
    """
    value = Fraction(value)
    return target.ground_new(QQ(value.numerator, value.denominator))


def power(b, exponent):
    """Integer power that keeps the result in canonical form.

    sympy builds negative powers without re-normalising the sign, so
    those go through a division instead.
    """
    if exponent >= 0:
        return b ** exponent

    return b.field.one / b ** (-exponent)


def substitute(b, images, target):
    """Ring homomorphism Q(x_1..x_m) -> target sending x_i to images[i].

    :type b: FracElement
    :type images: list(FracElement)
    :type target: FracField
    """
    numer = _evaluate(b.numer, images, target)
    denom = _evaluate(b.denom, images, target)
    if not denom:
        raise PoleError(
            'Denominator of {} vanishes under the substitution.'.format(
                format_ratfunc(b),
            ),
        )

    return numer / denom


def _evaluate(poly, images, target):
    total = target.zero
    powers = {}
    for monom, coeff in poly.terms():
        term = target.ground_new(coeff)
        for index, exponent in enumerate(monom):
            if not exponent:
                continue

            key = (index, exponent)
            if key not in powers:
                powers[key] = images[index] ** exponent
            term = term * powers[key]

        total = total + term

    return total


def take_limit(value, target):
    """Limit as the last variable of value's field tends to 0.

    The remaining variables of value's field must be exactly target's.

    :type value: FracElement
    :type target: FracField
    """
    numer_valuation, numer_part = _lowest_part(value.numer, target)
    if numer_part is None:
        return target.zero

    denom_valuation, denom_part = _lowest_part(value.denom, target)
    if numer_valuation > denom_valuation:
        return target.zero
    if numer_valuation < denom_valuation:
        raise PoleError(
            'Limit of {} does not exist.'.format(format_ratfunc(value)),
        )

    return target.new(numer_part, denom_part)


def _lowest_part(poly, target):
    terms = poly.terms()
    if not terms:
        return None, None

    valuation = min(monom[-1] for monom, _ in terms)
    return valuation, target.ring.from_dict({
        monom[:-1]: coeff
        for monom, coeff in terms
        if monom[-1] == valuation
    })


def format_ratfunc(b):
    """Canonical text form; the expression parser reads it back exactly.

    :type b: FracElement
    :rtype: str
    """
    names = [str(symbol) for symbol in b.field.symbols]
    numer = _format_poly(b.numer, names)
    if b.denom == 1:
        return numer

    if len(b.numer.terms()) > 1:
        numer = '({})'.format(numer)

    denom = _format_poly(b.denom, names)
    if not _is_atomic(b.denom):
        denom = '({})'.format(denom)

    return '{}/{}'.format(numer, denom)


def is_compound(b):
    """True if b prints as more than one additive term."""
    return b.denom != 1 or len(b.numer.terms()) > 1


def _is_atomic(poly):
    terms = poly.terms()
    if len(terms) != 1:
        return False

    monom, coeff = terms[0]
    if not any(monom):
        return Fraction(int(coeff.numerator), int(coeff.denominator)).denominator == 1

    return coeff == 1 and len([e for e in monom if e]) == 1


def _format_poly(poly, names):
    terms = poly.terms()
    if not terms:
        return '0'

    output = ''
    for position, (monom, coeff) in enumerate(terms):
        value = Fraction(int(coeff.numerator), int(coeff.denominator))
        text = _format_monomial(abs(value), monom, names)
        if position == 0:
            output = ('-' if value < 0 else '') + text
        else:
            output += (' - ' if value < 0 else ' + ') + text

    return output


def _format_monomial(value, monom, names):
    factors = []
    for name, exponent in zip(names, monom):
        if exponent == 1:
            factors.append(name)
        elif exponent:
            factors.append('{}^{}'.format(name, exponent))

    if not factors:
        return str(value)
    if value == 1:
        return '*'.join(factors)

    return '{}*{}'.format(value, '*'.join(factors))


class VarSpec(
    namedtuple(
        'VarSpec',
        [
            'name',

            # SHARED or DYNAMICAL
            'leg',

            # type: FracElement|None
            # None means the variable is self-adjoint.
            'star_image',
        ],
    ),
):

    def __new__(cls, name, leg=DYNAMICAL, star_image=None):
        if leg not in (SHARED, DYNAMICAL):
            raise AlgebraError('Unknown variable kind: {}'.format(leg))

        return super(VarSpec, cls).__new__(cls, name, leg, star_image)


class BaseSpec(object):
    """Commutative base ring with a Z^d-action and an involution."""

    def __init__(self, name, variables, gamma_rank=1):
        """
        :type name: str
        :type variables: list(VarSpec)
        :type gamma_rank: int
        :param gamma_rank: d, where the grading group is Z^d.
        """
        self.name = name
        self.variables = list(variables)
        self.gamma_rank = gamma_rank
        self.field = make_field(self.names)

        # Per group generator: (forward images, inverse images), each a
        # list aligned with self.variables. None means trivial action.
        self.action = [None] * gamma_rank

        # Expression whose shift ratios Z[k,l] = z@k / z@l the grammar
        # offers as sugar.
        self.shift_ratio = None

        # (label, element) pairs generating the subring on which base
        # homomorphisms are validated. Empty means "the variables".
        self.check_elements = []

        self._images_cache = {}
        self._act_cache = {}

    def __repr__(self):
        return 'BaseSpec({})'.format(self.name)

    @property
    def names(self):
        return [var.name for var in self.variables]

    @property
    def shared_names(self):
        return [var.name for var in self.variables if var.leg == SHARED]

    @property
    def dynamical_names(self):
        return [var.name for var in self.variables if var.leg == DYNAMICAL]

    def generators(self):
        return tuple(self.field.gens)

    def var(self, name):
        try:
            index = self.names.index(name)
        except ValueError:
            raise AlgebraError(
                'Unknown variable {} in {}.'.format(name, self.name),
            )

        return self.field.gens[index]

    def constant(self, value):
        return constant(self.field, value)

    def convert(self, value):
        """
        :type value: FracElement|int|Fraction
        :rtype: FracElement
        """
        if hasattr(value, 'numer'):
            if value.field != self.field:
                raise AlgebraError(
                    '{} is not an element of {}.'.format(
                        format_ratfunc(value),
                        self.name,
                    ),
                )
            return value

        return self.constant(value)

    def identity_group_element(self):
        return (0,) * self.gamma_rank

    def check_rank(self, g):
        g = tuple(int(entry) for entry in g)
        if len(g) != self.gamma_rank:
            raise RankMismatchError(
                'Group element {} does not lie in Z^{}.'.format(
                    g,
                    self.gamma_rank,
                ),
            )

        return g

    def set_action(self, index, substitution, inverse):
        """
        :type index: int
        :param index: which generator of Z^d.

        :type substitution: dict
        :param substitution: variable name => image. Missing variables
            are fixed.

        :type inverse: dict
        """
        if not 0 <= index < self.gamma_rank:
            raise RankMismatchError(
                'No generator {} in Z^{}.'.format(index, self.gamma_rank),
            )

        self.action[index] = (
            self._images_from_dict(substitution),
            self._images_from_dict(inverse),
        )
        self._images_cache = {}
        self._act_cache = {}

        return self

    def set_star(self, images):
        """
        :type images: dict
        :param images: variable name => star image.
        """
        unknown = set(images) - set(self.names)
        if unknown:
            raise AlgebraError(
                'Unknown variables {} in {}.'.format(sorted(unknown), self.name),
            )

        self.variables = [
            var._replace(star_image=self.convert(images[var.name]))
            if var.name in images else var
            for var in self.variables
        ]

        return self

    def set_shift_ratio(self, value):
        self.shift_ratio = self.convert(value)
        return self

    def set_check_elements(self, elements):
        """
        :type elements: list(tuple(str, FracElement))
        """
        self.check_elements = [
            (label, self.convert(value))
            for label, value in elements
        ]
        return self

    def action_images(self, index, forward=True):
        if self.action[index] is None:
            return list(self.field.gens)

        return self.action[index][0 if forward else 1]

    def var_images(self, g):
        """Images of the variables under the automorphism g.

        :rtype: list(FracElement)
        """
        g = self.check_rank(g)
        if g not in self._images_cache:
            images = list(self.field.gens)
            for index, count in enumerate(g):
                step = self.action_images(index, forward=count > 0)
                for _ in range(abs(count)):
                    images = [
                        substitute(image, step, self.field)
                        for image in images
                    ]

            self._images_cache[g] = images

        return self._images_cache[g]

    def act(self, g, b):
        """b_{(g)}, the image of b under the group element g."""
        g = self.check_rank(g)
        if not any(g):
            return b

        key = (g, b)
        if key not in self._act_cache:
            self._act_cache[key] = substitute(b, self.var_images(g), self.field)

        return self._act_cache[key]

    def star_images(self):
        return [
            var.star_image if var.star_image is not None else gen
            for var, gen in zip(self.variables, self.field.gens)
        ]

    def involve(self, b):
        return substitute(b, self.star_images(), self.field)

    def shift_ratio_quotient(self, k, l):
        """Z[k,l] := z_{(k)} / z_{(l)} for the declared shift ratio z."""
        if self.shift_ratio is None:
            raise AlgebraError(
                '{} declares no shift ratio for Z[k,l].'.format(self.name),
            )

        return self.act(_as_group_element(k), self.shift_ratio) / \
            self.act(_as_group_element(l), self.shift_ratio)

    def _images_from_dict(self, substitution):
        unknown = set(substitution) - set(self.names)
        if unknown:
            raise AlgebraError(
                'Unknown variables {} in {}.'.format(sorted(unknown), self.name),
            )

        return [
            self.convert(substitution[name]) if name in substitution else gen
            for name, gen in zip(self.names, self.field.gens)
        ]


def _as_group_element(k):
    if isinstance(k, tuple):
        return k
    return (k,)


def gamma_act(base, g, b):
    """
    :type base: BaseSpec
    :type g: tuple(int)
    :type b: FracElement
    """
    return base.act(g, base.convert(b))


def involve(base, b):
    return base.involve(base.convert(b))


def validate_base(base):
    """Checks the structural invariants of a BaseSpec.

    :rtype: Report
    """
    report = Report('base:{}'.format(base.name))
    gens = base.generators()
    star = base.star_images()

    for var, gen, image in zip(base.variables, gens, star):
        report.expect_equal(
            'involutive[{}]'.format(var.name),
            lambda: (base.involve(image), gen),
        )

    for index in range(base.gamma_rank):
        forward = base.action_images(index)
        backward = base.action_images(index, forward=False)
        for var, gen in zip(base.variables, gens):
            report.expect_equal(
                'inverse[{}; e{}]'.format(var.name, index + 1),
                lambda: (
                    substitute(
                        substitute(gen, forward, base.field),
                        backward,
                        base.field,
                    ),
                    gen,
                ),
            )
            report.expect_equal(
                'star-equivariant[{}; e{}]'.format(var.name, index + 1),
                lambda: (
                    substitute(base.involve(gen), forward, base.field),
                    base.involve(substitute(gen, forward, base.field)),
                ),
            )
            if var.leg == SHARED:
                report.expect_equal(
                    'shared-fixed[{}; e{}]'.format(var.name, index + 1),
                    lambda: (substitute(gen, forward, base.field), gen),
                )

        for other in range(index + 1, base.gamma_rank):
            other_forward = base.action_images(other)
            for var, gen in zip(base.variables, gens):
                report.expect_equal(
                    'commute[{}; e{}, e{}]'.format(var.name, index + 1, other + 1),
                    lambda: (
                        substitute(
                            substitute(gen, forward, base.field),
                            other_forward,
                            base.field,
                        ),
                        substitute(
                            substitute(gen, other_forward, base.field),
                            forward,
                            base.field,
                        ),
                    ),
                )

    return report


def limit_field(target, limit):
    """Field of target's variables plus an auxiliary variable that a
    limit homomorphism sends to 0.

    :type target: BaseSpec
    :type limit: str
    :rtype: (FracField, dict)
    """
    names = target.names + [limit]
    domain = make_field(names)
    return domain, dict(zip(names, domain.gens))


class BaseHom(object):
    """Gamma-equivariant *-homomorphism between base rings, given on
    variables.

    When `limit` names an auxiliary variable eps, the assignment takes
    values in target(eps) and the homomorphism is b -> lim_{eps->0} b(...).
    """

    def __init__(self, name, source, target, assignment, limit=None):
        """
        :type name: str
        :type source: BaseSpec
        :type target: BaseSpec

        :type assignment: dict
        :param assignment: source variable name => image.

        :type limit: str|None
        """
        self.name = name
        self.source = source
        self.target = target
        self.limit = limit
        if limit is None:
            self.domain_field = target.field
        else:
            self.domain_field = limit_field(target, limit)[0]

        missing = set(source.names) - set(assignment)
        if missing:
            raise AlgebraError(
                'Homomorphism {} does not assign {}.'.format(
                    name,
                    ', '.join(sorted(missing)),
                ),
            )

        self.assignment = dict(
            (name, self._convert(assignment[name]))
            for name in source.names
        )

    def __repr__(self):
        return 'BaseHom({}: {} -> {})'.format(
            self.name,
            self.source.name,
            self.target.name,
        )

    def images(self):
        return [self.assignment[name] for name in self.source.names]

    def _convert(self, value):
        if hasattr(value, 'numer'):
            if value.field != self.domain_field:
                raise AlgebraError(
                    'Image {} does not lie in the target of {}.'.format(
                        format_ratfunc(value),
                        self.name,
                    ),
                )
            return value

        return constant(self.domain_field, value)


def identity_hom(base):
    return BaseHom(
        'id',
        base,
        base,
        dict(zip(base.names, base.generators())),
    )


def apply_hom(hom, b):
    """
    :type hom: BaseHom
    :type b: FracElement
    :rtype: FracElement
    """
    b = hom.source.convert(b)
    value = substitute(b, hom.images(), hom.domain_field)
    if hom.limit is not None:
        value = take_limit(value, hom.target.field)

    return value


def compose_homs(second, first):
    """second o first.

    :type second: BaseHom
    :type first: BaseHom
    """
    if first.target is not second.source:
        raise AlgebraError(
            'Cannot compose {} after {}.'.format(second.name, first.name),
        )
    if first.limit is not None:
        raise AlgebraError(
            'Cannot compose after the limit homomorphism {}.'.format(first.name),
        )

    return BaseHom(
        '{}*{}'.format(second.name, first.name),
        first.source,
        second.target,
        dict(
            (name, substitute(image, second.images(), second.domain_field))
            for name, image in first.assignment.items()
        ),
        limit=second.limit,
    )


def check_hom(hom):
    """Gamma-equivariance and *-compatibility on the variables of the
    source, or on its declared check elements.

    :type hom: BaseHom
    :rtype: Report
    """
    report = Report('hom:{}'.format(hom.name))
    source, target = hom.source, hom.target
    if source.gamma_rank != target.gamma_rank:
        report.add_error(
            'rank',
            RankMismatchError(
                '{} acts by Z^{} but {} by Z^{}.'.format(
                    source.name,
                    source.gamma_rank,
                    target.name,
                    target.gamma_rank,
                ),
            ),
        )
        return report

    elements = source.check_elements or list(
        zip(source.names, source.generators()),
    )
    for label, element in elements:
        for index in range(source.gamma_rank):
            g = tuple(int(i == index) for i in range(source.gamma_rank))
            report.expect_equal(
                'equivariant[{}; e{}]'.format(label, index + 1),
                lambda: (
                    apply_hom(hom, source.act(g, element)),
                    target.act(g, apply_hom(hom, element)),
                ),
            )

        report.expect_equal(
            'star[{}]'.format(label),
            lambda: (
                apply_hom(hom, source.involve(element)),
                target.involve(apply_hom(hom, element)),
            ),
        )

    return report


_coefficient_fields = {}


def coefficient_field(base, legs=None):
    """Memoised CoefficientField constructor.

    :type base: BaseSpec
    :type legs: tuple(str)|None
    """
    key = (base, tuple(legs) if legs is not None else None)
    if key not in _coefficient_fields:
        _coefficient_fields[key] = CoefficientField(base, legs)

    return _coefficient_fields[key]


class CoefficientField(object):
    """Shared variables plus one copy of each dynamical variable per leg.

    With `legs=None` this is the base field itself, which is what the
    crossed product B x Gamma uses.
    """

    def __init__(self, base, legs=None):
        self.base = base
        self.legs = tuple(legs) if legs is not None else None
        if self.legs is None:
            self.field = base.field
        else:
            self.field = make_field(self.symbol_names())

        self._index = dict(
            (name, index)
            for index, name in enumerate(str(s) for s in self.field.symbols)
        )
        self._leg_images = {}
        self._embed_cache = {}
        self._twist_images = {}
        self._twist_cache = {}
        self._transfer_images = {}
        self._transfer_cache = {}
        self._push_images = {}
        self._shift_ratios = {}
        self._shift_ratio_forms = {}

    def __repr__(self):
        return 'CoefficientField({}, {})'.format(self.base.name, self.legs)

    def symbol_names(self):
        if self.legs is None:
            return self.base.names

        names = list(self.base.shared_names)
        for leg in self.legs:
            names.extend(
                '{}_{}'.format(name, leg)
                for name in self.base.dynamical_names
            )

        return names

    @property
    def one(self):
        return self.field.one

    @property
    def zero(self):
        return self.field.zero

    def constant(self, value):
        return constant(self.field, value)

    def has_symbol(self, name):
        return name in self._index

    def symbol(self, name, leg=None):
        """
        :type name: str
        :param name: base variable name.

        :type leg: str|None
        """
        if self.legs is not None and name not in self.base.shared_names:
            name = '{}_{}'.format(name, leg)

        return self.symbol_by_name(name)

    def symbol_by_name(self, name):
        try:
            return self.field.gens[self._index[name]]
        except KeyError:
            raise AlgebraError('Unknown coefficient variable {}.'.format(name))

    def check_leg(self, leg):
        if self.legs is not None and leg not in self.legs:
            raise AlgebraError('Unknown leg {}.'.format(leg))

    def leg_images(self, leg):
        """Where the base variables go in leg `leg`."""
        if leg not in self._leg_images:
            self.check_leg(leg)
            self._leg_images[leg] = [
                self.symbol(name, leg)
                for name in self.base.names
            ]

        return self._leg_images[leg]

    def embed(self, b, leg=None):
        """The coefficient b placed in leg `leg`: r(b) for leg 'r'."""
        if self.legs is None:
            return b

        key = (b, leg)
        if key not in self._embed_cache:
            self._embed_cache[key] = substitute(b, self.leg_images(leg), self.field)

        return self._embed_cache[key]

    def twist(self, c, shifts):
        """Shift each leg of c by a group element.

        :type shifts: dict|tuple
        :param shifts: leg => group element; a bare group element when
            the field has no legs.
        """
        if self.legs is None:
            return self.base.act(shifts, c)

        shifts = tuple(
            self.base.check_rank(shifts.get(leg, self.base.identity_group_element()))
            for leg in self.legs
        )
        if not any(any(g) for g in shifts):
            return c

        key = (c, shifts)
        if key not in self._twist_cache:
            self._twist_cache[key] = substitute(
                c,
                self._twist_images_for(shifts),
                self.field,
            )

        return self._twist_cache[key]

    def _twist_images_for(self, shifts):
        if shifts not in self._twist_images:
            images = [
                self.symbol(name)
                for name in self.base.shared_names
            ]
            dynamical = [
                index
                for index, var in enumerate(self.base.variables)
                if var.leg == DYNAMICAL
            ]
            for leg, g in zip(self.legs, shifts):
                var_images = self.base.var_images(g)
                images.extend(
                    self.embed(var_images[index], leg)
                    for index in dynamical
                )

            self._twist_images[shifts] = images

        return self._twist_images[shifts]

    def conjugate(self, c):
        return self.transfer(
            c,
            self,
            dict((leg, leg) for leg in self.legs or ()),
            conjugate=True,
        )

    def transfer(self, c, target, leg_map, conjugate=False):
        """Relabel the legs of c into another coefficient field over the
        same base.

        :type target: CoefficientField
        :type leg_map: dict
        :param leg_map: leg of self => leg of target (None for a target
            without legs). Ignored when self has no legs, in which case
            every variable goes to leg_map.get(None).

        :type conjugate: bool
        :param conjugate: also apply the involution.
        """
        if target.base is not self.base:
            raise AlgebraError(
                'Cannot move coefficients from {} to {}.'.format(
                    self.base.name,
                    target.base.name,
                ),
            )

        images_key = (target, tuple(sorted(leg_map.items(), key=str)), conjugate)
        if images_key not in self._transfer_images:
            self._transfer_images[images_key] = self._build_transfer_images(
                target,
                leg_map,
                conjugate,
            )

        key = (c, images_key)
        if key not in self._transfer_cache:
            self._transfer_cache[key] = substitute(
                c,
                self._transfer_images[images_key],
                target.field,
            )

        return self._transfer_cache[key]

    def _build_transfer_images(self, target, leg_map, conjugate):
        star = self.base.star_images()
        values = star if conjugate else list(self.base.generators())

        if self.legs is None:
            leg = leg_map.get(None)
            return [target.embed(value, leg) for value in values]

        images = []
        any_leg = target.legs[0] if target.legs else None
        for name in self.base.shared_names:
            images.append(target.embed(values[self.base.names.index(name)], any_leg))

        for leg in self.legs:
            for name in self.base.dynamical_names:
                images.append(
                    target.embed(values[self.base.names.index(name)], leg_map[leg]),
                )

        return images

    def push(self, c, hom, target):
        """Base change of a coefficient along hom, leg by leg.

        :type hom: BaseHom
        :type target: CoefficientField
        :param target: coefficient field over hom.target with the same legs.
        """
        if hom.limit is None:
            domain = target.field
        else:
            domain = make_field(target.symbol_names() + [hom.limit])

        key = (hom, target)
        if key not in self._push_images:
            log.debug('Building push images for %s along %s', self, hom.name)
            self._push_images[key] = self._build_push_images(hom, target, domain)

        value = substitute(c, self._push_images[key], domain)
        if hom.limit is not None:
            value = take_limit(value, target.field)

        return value

    def _build_push_images(self, hom, target, domain):
        def embed(value, leg):
            images = [
                domain.gens[index]
                for index in _leg_indices(target, leg)
            ]
            if hom.limit is not None:
                images.append(domain.gens[-1])
            return substitute(value, images, domain)

        if self.legs is None:
            return [
                embed(hom.assignment[name], None)
                for name in self.base.names
            ]

        images = []
        for name in self.base.shared_names:
            value = hom.assignment[name]
            placed = [embed(value, leg) for leg in target.legs]
            if any(image != placed[0] for image in placed):
                raise AlgebraError(
                    'Shared variable {} must map to a shared expression under {}.'.format(
                        name,
                        hom.name,
                    ),
                )
            images.append(placed[0])

        for leg in self.legs:
            for name in self.base.dynamical_names:
                images.append(embed(hom.assignment[name], leg))

        return images

    def shift_ratio_form(self, c):
        """(rest, factors) with c = rest * prod leg(Z[k,l]) over factors
        (leg, k, l), at most one per leg, and rest free of dynamical
        variables. None when c has no such form, or mentions no dynamical
        variable at all.

        :type c: FracElement
        """
        if self.legs is None or self.base.shift_ratio is None or \
                self.base.gamma_rank != 1 or not c:
            return None

        if c not in self._shift_ratio_forms:
            self._shift_ratio_forms[c] = self._find_shift_ratios(c)

        return self._shift_ratio_forms[c]

    def _find_shift_ratios(self, c):
        rest = c
        factors = []
        for leg in self.legs:
            positions = self._dynamical_positions(leg)
            if not _mentions(rest, positions):
                continue

            for (k, l), ratio in self._shift_ratio_candidates(leg):
                quotient = rest / ratio
                if not _mentions(quotient, positions):
                    factors.append((leg, k, l))
                    rest = quotient
                    break
            else:
                return None

        if not factors:
            return None

        return rest, factors

    def _dynamical_positions(self, leg):
        return [
            self._index['{}_{}'.format(name, leg)]
            for name in self.base.dynamical_names
        ]

    def _shift_ratio_candidates(self, leg):
        if leg not in self._shift_ratios:
            window = range(-SHIFT_RATIO_WINDOW, SHIFT_RATIO_WINDOW + 1)
            pairs = sorted(
                ((k, l) for k in window for l in window if k != l),
                key=lambda pair: (abs(pair[0]) + abs(pair[1]), pair),
            )
            self._shift_ratios[leg] = [
                (pair, self.embed(self.base.shift_ratio_quotient(*pair), leg))
                for pair in pairs
            ]

        return self._shift_ratios[leg]


def _mentions(c, positions):
    return any(
        monom[position]
        for poly in (c.numer, c.denom)
        for monom, _ in poly.terms()
        for position in positions
    )


def format_shift_ratios(cfield, c):
    """Printed form of c as a product of shift ratios r(Z[k,l]), s(Z[k,l])
    and a remaining shared factor.

    :type cfield: CoefficientField
    :rtype: (bool, str)|None
    :returns: (negative, text), or None when c has no such form.
    """
    form = cfield.shift_ratio_form(c)
    if form is None:
        return None

    rest, factors = form
    pieces = []
    negative = _leading_sign(rest) < 0
    if negative:
        rest = -rest
    if rest != 1:
        text = format_ratfunc(rest)
        pieces.append('({})'.format(text) if is_compound(rest) else text)

    pieces.extend(
        '{}(Z[{},{}])'.format(leg, k, l)
        for leg, k, l in factors
    )
    return negative, '*'.join(pieces)


def _leading_sign(c):
    terms = c.numer.terms()
    if not terms:
        return 0

    return -1 if terms[0][1] < 0 else 1


def _leg_indices(cfield, leg):
    """Positions, inside cfield's symbols, of the base variables of
    cfield.base placed in leg `leg`."""
    names = [str(symbol) for symbol in cfield.field.symbols]
    return [
        names.index(str(symbol))
        for symbol in (
            cfield.leg_images(leg) if cfield.legs is not None
            else cfield.base.generators()
        )
    ]


def standard_bases(q=None):
    """The base rings used by the shipped instances.

    :type q: Fraction|None
    :param q: deformation parameter for B_Mq; symbolic when None.

    :rtype: dict
    """
    return {
        'B_sudQ': sudq_base(),
        'B_Mq': mq_base(q),
        'B_lambda': lambda_base(),
        'B_R': r_base(),
        'B_CX': cx_base(),
        'B_Q': constant_base(),
    }


_base_cache = {}


def _memoised(key, builder):
    if key not in _base_cache:
        _base_cache[key] = builder()
    return _base_cache[key]


def sudq_base():
    """Q(Q, X, Y) with X_(k) = Q^{-k} X and Y_(k) = Q^k Y."""
    def build():
        base = BaseSpec(
            'B_sudQ',
            [VarSpec('Q', SHARED), VarSpec('X'), VarSpec('Y')],
        )
        Q, X, Y = base.generators()
        base.set_action(0, {'X': X / Q, 'Y': Q * Y}, {'X': Q * X, 'Y': Y / Q})\
            .set_shift_ratio(X - Y)

        elements = [('Q', Q)]
        for k, l in ((0, -1), (-1, -2), (-2, -1), (1, 0), (2, -1)):
            elements.append(
                ('Z[{},{}]'.format(k, l), base.shift_ratio_quotient(k, l)),
            )
        return base.set_check_elements(elements)

    return _memoised('B_sudQ', build)


def mq_base(q=None):
    """Q(q)(x) model of meromorphic functions, x standing for q^lambda."""
    def build():
        if q is None:
            base = BaseSpec('B_Mq', [VarSpec('q', SHARED), VarSpec('x')])
            deformation, x = base.generators()
        else:
            base = BaseSpec('B_Mq', [VarSpec('x')])
            x, = base.generators()
            deformation = base.constant(q)

        base.set_action(0, {'x': x / deformation}, {'x': deformation * x})
        return base.set_shift_ratio(x - 1 / x)

    return _memoised(('B_Mq', q), build)


def lambda_base():
    def build():
        base = BaseSpec('B_lambda', [VarSpec('lambda')])
        lam, = base.generators()
        base.set_action(0, {'lambda': lam - 1}, {'lambda': lam + 1})
        return base.set_shift_ratio(lam)

    return _memoised('B_lambda', build)


def r_base():
    """Q(Q) with trivial action."""
    return _memoised(
        'B_R',
        lambda: BaseSpec('B_R', [VarSpec('Q', SHARED)]),
    )


def cx_base():
    def build():
        base = BaseSpec('B_CX', [VarSpec('X')])
        X, = base.generators()
        base.set_action(0, {'X': X - 1}, {'X': X + 1})
        return base.set_shift_ratio(X)

    return _memoised('B_CX', build)


def constant_base():
    return _memoised('B_Q', lambda: BaseSpec('B_Q', []))


HOM_NAMES = (
    'pi-q-m',
    'pi-1',
    'pi-minus-inf',
    'pi-plus-inf',
    'pi-q-minus-inf',
    'pi-q-plus-inf',
    'pi-1-cx',
)


def standard_hom(name, q=None):
    """The base homomorphisms out of B_sudQ.

    :type name: str
    :param name: one of HOM_NAMES.

    :type q: Fraction|None
    :param q: required for the pi-q-*-inf specialisations.
    """
    source = sudq_base()
    if name == 'pi-q-m':
        target = mq_base(q)
        x = target.var('x')
        deformation = target.var('q') if q is None else target.constant(q)
        return BaseHom(name, source, target, {
            'Q': deformation,
            'X': x,
            'Y': 1 / x,
        })

    if name == 'pi-1':
        target = lambda_base()
        _, gens = limit_field(target, 'eps')
        eps, lam = gens['eps'], gens['lambda']
        return BaseHom(
            name,
            source,
            target,
            {'Q': 1 + eps, 'X': 1 + lam * eps, 'Y': 1 - lam * eps},
            limit='eps',
        )

    if name in ('pi-minus-inf', 'pi-plus-inf'):
        target = r_base()
        x, y = (1, 0) if name == 'pi-minus-inf' else (0, 1)
        return BaseHom(name, source, target, {
            'Q': target.var('Q'),
            'X': x,
            'Y': y,
        })

    if name in ('pi-q-minus-inf', 'pi-q-plus-inf'):
        if q is None:
            raise AlgebraError('{} needs a numeric q.'.format(name))

        x, y = (1, 0) if name == 'pi-q-minus-inf' else (0, 1)
        return BaseHom(name, source, constant_base(), {
            'Q': Fraction(q),
            'X': x,
            'Y': y,
        })

    if name == 'pi-1-cx':
        return BaseHom(name, source, cx_base(), {'Q': 1, 'X': 1, 'Y': 0})

    raise AlgebraError('Unknown base homomorphism {}.'.format(name))
