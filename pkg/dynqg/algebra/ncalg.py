"""Graded noncommutative algebras over a base ring.

Elements are finite sums c*k of keys k (words, group elements or tuples of
words) with the coefficient c at the far left, read as r(c_r)s(c_s). Moving a
coefficient from the right of a key to its left twists each leg by the
key's degree (`Algebra.twist`), which is all the module needs to multiply.

`Presentation` adds generators, a rewriting system and the diamond-lemma
checker; `dynqg.algebra.tensor` provides the crossed product and fiber
products on the same interface.
"""
from __future__ import absolute_import

from abc import ABCMeta
from abc import abstractmethod
from collections import namedtuple
from collections import OrderedDict
from fractions import Fraction

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import coefficient_field
from dynqg.algebra.coeff import format_ratfunc
from dynqg.algebra.coeff import format_shift_ratios
from dynqg.algebra.coeff import is_compound
from dynqg.core.constants import DEFAULT_OVERLAP_LENGTH
from dynqg.core.constants import DEFAULT_STEP_BUDGET
from dynqg.core.log import log
from dynqg.core.report import Report


class ReductionBudgetExceeded(AlgebraError):
    pass


class InconsistentRelationsError(AlgebraError):
    pass


class MissingStarError(AlgebraError):
    pass


class GradingError(AlgebraError):
    pass


def add_degrees(first, second):
    return tuple(a + b for a, b in zip(first, second))


def negate_degree(g):
    return tuple(-a for a in g)


def accumulate(terms, key, value):
    """terms[key] += value, dropping the entry when it cancels."""
    if key in terms:
        value = terms[key] + value
        if value:
            terms[key] = value
        else:
            del terms[key]
    elif value:
        terms[key] = value


class Element(object):
    """Immutable sum of coefficient * key over some Algebra."""

    def __init__(self, algebra, terms):
        """
        :type algebra: Algebra
        :type terms: dict
        :param terms: key => non-zero coefficient, keys in normal form.
        """
        self.algebra = algebra
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def degree(self):
        return self.algebra.degree(self)

    def coefficient(self, key):
        return self.terms.get(key, self.algebra.cfield.zero)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented

        return self.algebra is other.algebra and self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __add__(self, other):
        return self.algebra.add(self, self.algebra.coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.algebra.add(self, -self.algebra.coerce(other))

    def __rsub__(self, other):
        return self.algebra.add(self.algebra.coerce(other), -self)

    def __neg__(self):
        return self.algebra.element(
            dict((key, -c) for key, c in self.terms.items()),
            normal=True,
        )

    def __mul__(self, other):
        return self.algebra.mul(self, self.algebra.coerce(other))

    def __rmul__(self, other):
        return self.algebra.mul(self.algebra.coerce(other), self)

    def __pow__(self, exponent):
        result = self.algebra.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __str__(self):
        return self.algebra.format(self)

    def __repr__(self):
        return '{}({})'.format(self.__class__.__name__, self)


class AlgElement(Element):
    pass


class Algebra(object, metaclass=ABCMeta):
    """A (B, Gamma)-algebra with a basis of keys.

    Subclasses define keys, their degrees, how a coefficient moves past a
    key, and the product of two keys in normal form.
    """

    element_class = Element
    cfield = None

    @property
    def base(self):
        return self.cfield.base

    @property
    @abstractmethod
    def unit_key(self):
        pass

    @abstractmethod
    def twist(self, c, key):
        """Returns c' with key * c = c' * key."""
        pass

    @abstractmethod
    def key_product(self, first, second):
        """Normal form of first*second as {key: coefficient}."""
        pass

    @abstractmethod
    def key_degree(self, key):
        """(d^r, d^s) of a key."""
        pass

    @abstractmethod
    def format_key(self, key):
        pass

    def sort_key(self, key):
        return key

    def normalize_terms(self, terms):
        """Brings arbitrary terms into normal form."""
        output = {}
        for key, c in terms.items():
            accumulate(output, key, c)
        return output

    def element(self, terms, normal=False):
        """
        :type terms: dict
        :type normal: bool
        :param normal: skip normalisation; keys are already normal.
        """
        if normal:
            terms = dict((key, c) for key, c in terms.items() if c)
        else:
            terms = self.normalize_terms(terms)

        return self.element_class(self, terms)

    def zero(self):
        return self.element({}, normal=True)

    def one(self):
        return self.from_coefficient(self.cfield.one)

    def from_coefficient(self, c):
        return self.element({self.unit_key: c}, normal=True)

    def constant(self, value):
        return self.from_coefficient(self.cfield.constant(value))

    def from_base(self, b, leg):
        """r(b) for leg 'r', s(b) for leg 's'."""
        return self.from_coefficient(self.cfield.embed(b, leg))

    def coerce(self, value):
        if isinstance(value, Element):
            if value.algebra is not self:
                raise AlgebraError(
                    'Cannot combine elements of {} and {}.'.format(
                        value.algebra,
                        self,
                    ),
                )
            return value

        if isinstance(value, (int, Fraction)):
            return self.constant(value)

        if hasattr(value, 'numer') and value.field == self.cfield.field:
            return self.from_coefficient(value)

        raise AlgebraError('Cannot use {!r} in {}.'.format(value, self))

    def add(self, x, y):
        terms = dict(x.terms)
        for key, c in y.terms.items():
            accumulate(terms, key, c)

        return self.element(terms, normal=True)

    def scale(self, c, x):
        """c * x for a coefficient c."""
        return self.element(
            dict((key, c * value) for key, value in x.terms.items()),
            normal=True,
        )

    def mul(self, x, y):
        terms = {}
        for first, cx in x.terms.items():
            for second, cy in y.terms.items():
                c = cx * self.twist(cy, first)
                for key, ck in self.key_product(first, second).items():
                    accumulate(terms, key, c * ck)

        return self.element(terms, normal=True)

    def twist_by_degree(self, c, degree):
        """Moves c from the right of a homogeneous element of the given
        degree to its left."""
        return self.cfield.twist(c, {'r': degree[0], 's': degree[1]})

    def degree(self, x):
        """Common degree of the terms of x; None for mixed degrees or 0."""
        degrees = set(self.key_degree(key) for key in x.terms)
        if len(degrees) == 1:
            return degrees.pop()

        return None

    def homogeneous_part(self, x, degree):
        return self.element(
            dict(
                (key, c)
                for key, c in x.terms.items()
                if self.key_degree(key) == degree
            ),
            normal=True,
        )

    def coefficient_sugar(self, c):
        """(negative, text) when c prints shorter than its expanded
        fraction; None otherwise."""
        return None

    def format(self, x):
        if x.is_zero():
            return '0'

        keys = sorted(x.terms, key=self.sort_key, reverse=True)
        return format_terms(
            ((x.terms[key], self.format_key(key)) for key in keys),
            sugar=self.coefficient_sugar,
        )


def format_terms(terms, sugar=None):
    """
    :type terms: iterable((FracElement, str))
    :param terms: coefficient and printed key, '1' for the unit.

    :type sugar: function|None
    :param sugar: c -> (negative, text) or None, tried before the
        expanded fraction.
    """
    output = ''
    for position, (c, key_text) in enumerate(terms):
        negative, text = _format_term(c, key_text, sugar)
        if position == 0:
            output = ('-' if negative else '') + text
        else:
            output += (' - ' if negative else ' + ') + text

    return output


def _format_term(c, key_text, sugar=None):
    short = sugar(c) if sugar is not None else None
    if short is not None:
        negative, text = short
        if key_text == '1':
            return negative, text
        return negative, '{}*{}'.format(text, key_text)

    negative = _is_negative(c)
    if negative:
        c = -c

    if key_text == '1':
        text = format_ratfunc(c)
        if is_compound(c):
            text = '({})'.format(text)
        return negative, text

    if c == 1:
        return negative, key_text

    text = format_ratfunc(c)
    if is_compound(c):
        text = '({})'.format(text)

    return negative, '{}*{}'.format(text, key_text)


def _is_negative(c):
    terms = c.numer.terms()
    if len(terms) != 1:
        return False

    return terms[0][1] < 0


class Generator(
    namedtuple(
        'Generator',
        [
            'name',

            # ((r components), (s components)), each a Gamma element.
            'degree',

            # type: AlgElement|None
            'star_image',
        ],
    ),
):

    def __new__(cls, name, degree, star_image=None):
        return super(Generator, cls).__new__(
            cls,
            name,
            (tuple(degree[0]), tuple(degree[1])),
            star_image,
        )


class Presentation(Algebra):
    """Algebra given by graded generators and an oriented rewriting system.

    Words are tuples of generator indices ordered degree-lexicographically
    by a declared precedence (first name = largest). Rules map a word to
    a combination of strictly smaller words of the same degree.
    """

    element_class = AlgElement

    def __init__(
        self,
        name,
        base,
        generators,
        precedence=None,
        step_budget=DEFAULT_STEP_BUDGET,
        mirrored=False,
    ):
        """
        :type name: str
        :type base: BaseSpec
        :type generators: list(Generator)

        :type precedence: list(str)|None
        :param precedence: generator names, highest first. Defaults to
            declaration order.

        :type step_budget: int
        :param step_budget: maximal number of rewriting steps per reduction.

        :type mirrored: bool
        :param mirrored: compare words of equal length from the right, so
            that the opposite algebra keeps the mirrored rule set.
        """
        self.name = name
        self.cfield = coefficient_field(base, ('r', 's'))
        self.generators = list(generators)
        self.names = [g.name for g in self.generators]
        if len(set(self.names)) != len(self.names):
            raise AlgebraError('Duplicate generator names in {}.'.format(name))

        for generator in self.generators:
            for component in generator.degree:
                base.check_rank(component)

        self.precedence = list(precedence or self.names)
        if sorted(self.precedence) != sorted(self.names):
            raise AlgebraError(
                'Precedence of {} must list every generator once.'.format(name),
            )

        size = len(self.precedence)
        self._rank = [
            size - self.precedence.index(generator_name)
            for generator_name in self.names
        ]
        self.rules = OrderedDict()
        self.step_budget = step_budget
        self.mirrored = mirrored
        self._normal_forms = {}
        self._degrees = {}
        self._star_cache = {}

    def __repr__(self):
        return 'Presentation({})'.format(self.name)

    @property
    def unit_key(self):
        return ()

    @property
    def has_star(self):
        return all(g.star_image is not None for g in self.generators) and \
            bool(self.generators)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(
                'Unknown generator {} in {}.'.format(name, self.name),
            )

    def gen(self, name):
        return self.element({(self.index(name),): self.cfield.one})

    def word(self, names):
        return tuple(self.index(name) for name in names)

    def word_names(self, word):
        return [self.names[index] for index in word]

    def generator_degree(self, name):
        return self.generators[self.index(name)].degree

    def key_degree(self, word):
        if word not in self._degrees:
            zero = self.base.identity_group_element()
            r_degree, s_degree = zero, zero
            for index in word:
                g_r, g_s = self.generators[index].degree
                r_degree = add_degrees(r_degree, g_r)
                s_degree = add_degrees(s_degree, g_s)

            self._degrees[word] = (r_degree, s_degree)

        return self._degrees[word]

    def twist(self, c, word):
        if not word:
            return c

        return self.twist_by_degree(c, self.key_degree(word))

    def order_key(self, word):
        if self.mirrored:
            word = word[::-1]
        return (len(word), tuple(self._rank[index] for index in word))

    sort_key = order_key

    def coefficient_sugar(self, c):
        return format_shift_ratios(self.cfield, c)

    def format_key(self, word):
        if not word:
            return '1'

        pieces = []
        position = 0
        while position < len(word):
            run = 1
            while position + run < len(word) and word[position + run] == word[position]:
                run += 1

            name = self.names[word[position]]
            pieces.append(name if run == 1 else '{}^{}'.format(name, run))
            position += run

        return '*'.join(pieces)

    def key_product(self, first, second):
        return self.normal_form(first + second)

    def normalize_terms(self, terms):
        return self.reduce_terms(terms)

    def reduce(self, x):
        return self.element(self.reduce_terms(x.terms), normal=True)

    def reduce_terms(self, terms):
        output = {}
        for word, c in terms.items():
            if not c:
                continue
            for normal, cn in self.normal_form(word).items():
                accumulate(output, normal, c * cn)

        return output

    def normal_form(self, word):
        """
        :type word: tuple(int)
        :rtype: dict
        """
        if word not in self._normal_forms:
            self._normal_forms[word] = self._rewrite({word: self.cfield.one})

        return self._normal_forms[word]

    def find_rule(self, word):
        """First (leftmost) rule occurrence in word.

        :rtype: (tuple, int)|None
        :returns: (lhs, position)
        """
        lengths = sorted(set(len(lhs) for lhs in self.rules))
        for position in range(len(word)):
            for length in lengths:
                if position + length > len(word):
                    break

                candidate = word[position:position + length]
                if candidate in self.rules:
                    return candidate, position

        return None

    def apply_rule_at(self, word, lhs, position):
        """One rewriting step at a given position.

        :rtype: dict
        """
        if word[position:position + len(lhs)] != lhs:
            raise AlgebraError('Rule does not match at position {}.'.format(position))

        prefix = word[:position]
        suffix = word[position + len(lhs):]
        output = {}
        for replacement, c in self.rules[lhs].items():
            accumulate(output, prefix + replacement + suffix, self.twist(c, prefix))

        return output

    def _rewrite(self, terms):
        pending = {}
        for word, c in terms.items():
            accumulate(pending, word, c)

        output = {}
        steps = 0
        while pending:
            word = max(pending, key=self.order_key)
            c = pending.pop(word)

            known = self._normal_forms.get(word)
            if known is not None:
                for normal, cn in known.items():
                    accumulate(output, normal, c * cn)
                continue

            match = self.find_rule(word)
            if match is None:
                accumulate(output, word, c)
                continue

            steps += 1
            if steps > self.step_budget:
                raise ReductionBudgetExceeded(
                    'Reduction in {} exceeded {} steps.'.format(
                        self.name,
                        self.step_budget,
                    ),
                )

            for replacement, cr in self.apply_rule_at(word, *match).items():
                accumulate(pending, replacement, c * cr)

        return output

    def relation_terms(self, lhs):
        """The rule lhs -> rhs as the raw relation lhs - rhs."""
        terms = {lhs: self.cfield.one}
        for word, c in self.rules[lhs].items():
            accumulate(terms, word, -c)
        return terms

    def relations(self):
        return [self.relation_terms(lhs) for lhs in self.rules]

    def add_rule(self, lhs, rhs):
        """Installs an already oriented rule.

        :type lhs: tuple(int)
        :type rhs: dict
        """
        degree = self.key_degree(lhs)
        for word in rhs:
            if self.order_key(word) >= self.order_key(lhs):
                raise GradingError(
                    'Rule {} -> {} does not decrease the order.'.format(
                        self.format_key(lhs),
                        self.format_key(word),
                    ),
                )
            if self.key_degree(word) != degree:
                raise GradingError(
                    'Rule {} -> {} is not homogeneous.'.format(
                        self.format_key(lhs),
                        self.format_key(word),
                    ),
                )

        self.rules[lhs] = dict(rhs)
        self._normal_forms = {}
        self._star_cache = {}
        return self

    def orient_relations(self, relations):
        """Adds relations (raw term dicts meaning "sum = 0"), orienting each
        by its largest word and interreducing the rule set.

        :type relations: list(dict)
        """
        pending = list(relations)
        while pending:
            relation = self._rewrite(pending.pop(0))
            if not relation:
                continue

            lead = max(relation, key=self.order_key)
            if not lead:
                raise InconsistentRelationsError(
                    'Relations of {} force {} = 0.'.format(
                        self.name,
                        format_ratfunc(relation[lead]),
                    ),
                )

            inverse = self.cfield.one / relation.pop(lead)
            rhs = dict((word, -inverse * c) for word, c in relation.items())

            for lhs in list(self.rules):
                if _contains(lhs, lead):
                    pending.append(self.relation_terms(lhs))
                    del self.rules[lhs]

            self.add_rule(lead, rhs)
            log.debug(
                'Oriented %s -> %s',
                self.format_key(lead),
                self.format(self.element(rhs, normal=True)),
            )

        for lhs in list(self.rules):
            self.rules[lhs] = self._rewrite(self.rules[lhs])
        self._normal_forms = {}

        return self

    def set_star(self, images):
        """
        :type images: dict
        :param images: generator name => AlgElement.
        """
        for name, image in images.items():
            degree = self.generator_degree(name)
            expected = (negate_degree(degree[0]), negate_degree(degree[1]))
            image_degree = image.degree()
            if image_degree is not None and image_degree != expected:
                raise GradingError(
                    'Star image of {} has degree {}, expected {}.'.format(
                        name,
                        image_degree,
                        expected,
                    ),
                )

        self.generators = [
            g._replace(star_image=images[g.name]) if g.name in images else g
            for g in self.generators
        ]
        self._star_cache = {}
        return self

    def star(self, x):
        """Conjugate-linear anti-automorphism extending the generator
        images; coefficients go through the base involution."""
        if not self.has_star:
            raise MissingStarError('{} has no *-structure.'.format(self.name))

        result = self.zero()
        for word, c in x.terms.items():
            image = self._star_word(word) * self.from_coefficient(
                self.cfield.conjugate(c),
            )
            result = result + image

        return result

    def _star_word(self, word):
        if word not in self._star_cache:
            image = self.one()
            for index in reversed(word):
                image = image * self.generators[index].star_image
            self._star_cache[word] = image

        return self._star_cache[word]

    def irreducible_words(self, max_length):
        """Normal words up to the given length, shortest first."""
        words = [()]
        layer = [()]
        for _ in range(max_length):
            layer = [
                word + (index,)
                for word in layer
                for index in range(len(self.generators))
                if self.find_rule(word + (index,)) is None
            ]
            words.extend(sorted(layer, key=self.order_key))

        return words


def _contains(word, part):
    length = len(part)
    return any(
        word[position:position + length] == part
        for position in range(len(word) - length + 1)
    )


def commute_coeff_left(presentation, name, c):
    """c' with g * c = c' * g for the generator g.

    :type presentation: Presentation
    :type name: str
    """
    return presentation.twist(c, (presentation.index(name),))


def reduce(presentation, x):
    return presentation.reduce(x)


def degree(x):
    return x.degree()


def mul(presentation, x, y):
    return presentation.mul(x, y)


def add(presentation, x, y):
    return presentation.add(x, y)


def star(presentation, x):
    return presentation.star(x)


def is_equivalent(first, second, compare_degrees=True):
    """Whether both presentations define the same relation ideal under
    the identity correspondence of generator names.

    :type first: Presentation
    :type second: Presentation
    """
    if sorted(first.names) != sorted(second.names):
        return False
    if first.base is not second.base:
        return False
    if compare_degrees and any(
        first.generator_degree(name) != second.generator_degree(name)
        for name in first.names
    ):
        return False

    return _relations_vanish(first, second) and _relations_vanish(second, first)


def _relations_vanish(source, target):
    translation = [target.index(name) for name in source.names]
    for relation in source.relations():
        terms = dict(
            (tuple(translation[index] for index in word), c)
            for word, c in relation.items()
        )
        if target.reduce_terms(terms):
            return False

    return True


def check_local_confluence(presentation, max_overlap_len=DEFAULT_OVERLAP_LENGTH):
    """Resolves every overlap and inclusion ambiguity of the rule set whose
    word is at most max_overlap_len long.

    :type presentation: Presentation
    :rtype: Report
    """
    report = Report('confluence')
    A = presentation
    rules = list(A.rules)

    ambiguities = []
    for first in rules:
        for second in rules:
            for length in range(1, min(len(first), len(second))):
                if first[-length:] == second[:length]:
                    ambiguities.append((
                        'overlap',
                        first + second[length:],
                        (first, 0),
                        (second, len(first) - length),
                    ))

            if first != second and len(second) <= len(first):
                for position in range(len(first) - len(second) + 1):
                    if first[position:position + len(second)] == second:
                        ambiguities.append((
                            'inclusion',
                            first,
                            (first, 0),
                            (second, position),
                        ))

    ambiguities = [
        ambiguity for ambiguity in ambiguities
        if len(ambiguity[1]) <= max_overlap_len
    ]
    log.info(
        'Checking %d ambiguities of %s up to length %d',
        len(ambiguities),
        A.name,
        max_overlap_len,
    )

    for kind, word, left, right in ambiguities:
        report.expect_zero(
            '{}[{}|{}]'.format(kind, A.format_key(left[0]), A.format_key(right[0])),
            lambda: A.element(A.apply_rule_at(word, *left)) -
            A.element(A.apply_rule_at(word, *right)),
        )

    if not ambiguities:
        report.add('no-ambiguities', True)

    return report
