"""Expression grammar for algebra elements, fiber chains, crossed
product elements and base-ring values.

    expr   := fiber (('+' | '-') fiber)*
    fiber  := term ('(x)' term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' integer | '@' group)*
    atom   := identifier | 'r(' base ')' | 's(' base ')' | rational
            | '[' integers ']' | '(' expr ')' | 'Z[' k ',' l ']'

Identifiers are generators of the presentation, or coefficient variables:
shared variables (Q), and leg-tagged dynamical variables (X_r, X_s,
X_m1) which always denote the absolute legs of the value being built.
Inside part i of a fiber expression, r(.) and s(.) denote the legs next
to factor i.

Base expressions (inside r(.), s(.), or through parse_base) admit
variables, + - * / ^, the shift expr@k, and Z[k,l].
"""
from __future__ import absolute_import

import re
from fractions import Fraction

from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import power
from dynqg.algebra.tensor import crossed_product
from dynqg.algebra.tensor import FiberProduct
from dynqg.algebra.tensor import juxtapose
from dynqg.core.constants import FIBER_TOKEN


class ExpressionSyntaxError(ValueError):

    def __init__(self, message, position=None):
        if position is not None:
            message = '{} (at position {})'.format(message, position)

        super(ExpressionSyntaxError, self).__init__(message)
        self.position = position


class UnknownIdentifierError(ValueError):
    pass


TOKEN_PATTERN = re.compile(
    r'\s*(?:'
    r'(?P<fiber>\(x\))|'
    r'(?P<number>\d+(?:\.\d+)?)|'
    r'(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|'
    r'(?P<symbol>[-+*/^()\[\],@])'
    r')',
)


class Token(object):

    def __init__(self, kind, text, position):
        self.kind = kind
        self.text = text
        self.position = position

    def __repr__(self):
        return 'Token({}, {!r})'.format(self.kind, self.text)


def tokenize(text):
    """
    :type text: str
    :rtype: list(Token)
    """
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if not match or match.end() == position:
            position = len(text) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(
                'Unexpected character {!r}'.format(text[position]),
                position,
            )

        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        position = match.end()

    tokens.append(Token('end', '', len(text)))
    return tokens


class _Parser(object):
    """Recursive descent over the token list, producing nested tuples:

        ('num', Fraction)           ('ident', name)
        ('group', (k1, ..., kd))    ('leg', 'r'|'s', base node)
        ('zsugar', k, l)            ('neg', node)
        ('add', [(sign, node)])     ('mul', [node])
        ('div', node, node)         ('pow', node, int)
        ('shift', node, group)      ('fiber', [node])
    """

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.current
        self.index += 1
        return token

    def accept(self, text):
        if self.current.kind in ('symbol', 'fiber') and self.current.text == text:
            return self.advance()
        return None

    def expect(self, text):
        token = self.accept(text)
        if token is None:
            raise ExpressionSyntaxError(
                'Expected {!r}, found {!r}'.format(text, self.current.text or 'end'),
                self.current.position,
            )
        return token

    def parse(self):
        if self.current.kind == 'end':
            raise ExpressionSyntaxError('Empty expression', 0)

        node = self.expr()
        if self.current.kind != 'end':
            raise ExpressionSyntaxError(
                'Unexpected {!r}'.format(self.current.text),
                self.current.position,
            )
        return node

    def expr(self):
        terms = [(1, self.fiber())]
        while True:
            if self.accept('+'):
                terms.append((1, self.fiber()))
            elif self.accept('-'):
                terms.append((-1, self.fiber()))
            else:
                break

        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else ('add', terms)

    def fiber(self):
        parts = [self.term()]
        while self.accept(FIBER_TOKEN):
            parts.append(self.term())

        return parts[0] if len(parts) == 1 else ('fiber', parts)

    def term(self):
        node = self.unary()
        factors = [node]
        while True:
            if self.accept('*'):
                factors.append(self.unary())
            elif self.accept('/'):
                divisor = self.unary()
                left = factors[0] if len(factors) == 1 else ('mul', factors)
                factors = [('div', left, divisor)]
            else:
                break

        return factors[0] if len(factors) == 1 else ('mul', factors)

    def unary(self):
        if self.accept('-'):
            return ('neg', self.unary())
        return self.factor()

    def factor(self):
        node = self.atom()
        while True:
            if self.accept('^'):
                node = ('pow', node, self.integer())
            elif self.accept('@'):
                node = ('shift', node, self.group_element())
            else:
                return node

    def integer(self):
        sign = -1 if self.accept('-') else 1
        token = self.current
        if token.kind != 'number' or '.' in token.text:
            raise ExpressionSyntaxError('Expected an integer', token.position)

        self.advance()
        return sign * int(token.text)

    def group_element(self):
        if self.accept('('):
            values = [self.integer()]
            while self.accept(','):
                values.append(self.integer())
            self.expect(')')
            return tuple(values)

        return (self.integer(),)

    def atom(self):
        token = self.current
        if token.kind == 'number':
            self.advance()
            return ('num', Fraction(token.text))

        if token.kind == 'fiber':
            # "(x)" read as a parenthesised variable x.
            self.advance()
            return ('ident', 'x')

        if token.kind == 'ident':
            self.advance()
            if token.text in ('r', 's') and self.current.kind in ('symbol', 'fiber') \
                    and self.current.text in ('(', FIBER_TOKEN):
                if self.accept(FIBER_TOKEN):
                    return ('leg', token.text, ('ident', 'x'))
                self.expect('(')
                node = self.expr()
                self.expect(')')
                return ('leg', token.text, node)

            if token.text == 'Z' and self.accept('['):
                k = self.integer()
                self.expect(',')
                l = self.integer()
                self.expect(']')
                return ('zsugar', k, l)

            return ('ident', token.text)

        if self.accept('['):
            values = [self.integer()]
            while self.accept(','):
                values.append(self.integer())
            self.expect(']')
            return ('group', tuple(values))

        if self.accept('('):
            node = self.expr()
            self.expect(')')
            return node

        raise ExpressionSyntaxError(
            'Unexpected {!r}'.format(token.text or 'end'),
            token.position,
        )


def parse_expression(text):
    """Syntax tree of an expression; raises on syntax errors only."""
    return _Parser(text).parse()


def parse_base(base, text):
    """
    :type base: BaseSpec
    :type text: str
    :rtype: FracElement
    """
    return _BaseEvaluator(base).evaluate(parse_expression(text))


class _BaseEvaluator(object):

    def __init__(self, base):
        self.base = base

    def evaluate(self, node):
        kind = node[0]
        base = self.base

        if kind == 'num':
            return base.constant(node[1])

        if kind == 'ident':
            if node[1] not in base.names:
                raise UnknownIdentifierError(
                    'Unknown variable {} in {}.'.format(node[1], base.name),
                )
            return base.var(node[1])

        if kind == 'zsugar':
            return base.shift_ratio_quotient(node[1], node[2])

        if kind == 'shift':
            return base.act(node[2], self.evaluate(node[1]))

        if kind == 'neg':
            return -self.evaluate(node[1])

        if kind == 'add':
            total = base.field.zero
            for sign, term in node[1]:
                value = self.evaluate(term)
                total = total + value if sign > 0 else total - value
            return total

        if kind == 'mul':
            total = base.field.one
            for factor in node[1]:
                total = total * self.evaluate(factor)
            return total

        if kind == 'div':
            divisor = self.evaluate(node[2])
            if not divisor:
                raise AlgebraError('Division by zero.')
            return self.evaluate(node[1]) / divisor

        if kind == 'pow':
            value = self.evaluate(node[1])
            if node[2] < 0 and not value:
                raise AlgebraError('Division by zero.')
            return power(value, node[2])

        raise ExpressionSyntaxError(
            '{} is not allowed in a base expression'.format(_describe(node)),
        )


def _describe(node):
    return {
        'group': 'a group element',
        'leg': 'r(.) or s(.)',
        'fiber': FIBER_TOKEN,
    }.get(node[0], node[0])


class _Deferred(object):
    """A coefficient expression waiting for the algebra it lives in."""

    def __init__(self, build):
        self.build = build

    def bind(self, algebra):
        return self.build(algebra)


def parse(text, presentation, context=None):
    """
    :type text: str
    :type presentation: Presentation
    :param presentation: whose generators the identifiers name.

    :type context: Algebra|None
    :param context: where coefficient-only expressions land, e.g. the
        crossed product for counit images. Defaults to presentation.

    :rtype: Element
    """
    context = context or presentation
    evaluator = _AlgebraEvaluator(presentation, context)
    return evaluator.finish(evaluator.evaluate(parse_expression(text), context), context)


class _AlgebraEvaluator(object):

    def __init__(self, presentation, context):
        self.presentation = presentation
        self.base = context.base

    def finish(self, value, algebra):
        if isinstance(value, _Deferred):
            return value.bind(algebra)
        return value

    def evaluate(self, node, home):
        """
        :param home: where deferred values of this subtree default to.
        """
        kind = node[0]

        if kind == 'num':
            value = node[1]
            return _Deferred(lambda algebra: algebra.constant(value))

        if kind == 'ident':
            return self._identifier(node[1])

        if kind == 'group':
            return crossed_product(self.base).group(node[1])

        if kind == 'leg':
            b = _BaseEvaluator(self.base).evaluate(node[2])
            leg = node[1]
            return _Deferred(lambda algebra: algebra.from_base(b, leg))

        if kind in ('zsugar', 'shift'):
            raise ExpressionSyntaxError(
                '{} needs r(.) or s(.) around it'.format(
                    'Z[k,l]' if kind == 'zsugar' else 'A shift',
                ),
            )

        if kind == 'neg':
            return _combine(
                self.evaluate(node[1], home),
                None,
                lambda x, _: -x,
            )

        if kind == 'add':
            total = None
            for sign, term in node[1]:
                value = self.evaluate(term, home)
                if total is None:
                    total = value if sign > 0 else _combine(value, None, lambda x, _: -x)
                elif sign > 0:
                    total = _combine(total, value, lambda x, y: x + y)
                else:
                    total = _combine(total, value, lambda x, y: x - y)
            return total

        if kind == 'mul':
            total = self.evaluate(node[1][0], home)
            for factor in node[1][1:]:
                total = _combine(total, self.evaluate(factor, home), lambda x, y: x * y)
            return total

        if kind == 'div':
            divisor = self.evaluate(node[2], home)
            return _combine(
                self.evaluate(node[1], home),
                divisor,
                lambda x, y: x * _reciprocal(y),
            )

        if kind == 'pow':
            exponent = node[2]
            value = self.evaluate(node[1], home)
            if exponent >= 0:
                return _combine(value, None, lambda x, _: x ** exponent)
            return _combine(value, None, lambda x, _: _reciprocal(x) ** -exponent)

        if kind == 'fiber':
            return self._fiber(node[1], home)

        raise ExpressionSyntaxError('Cannot evaluate {}'.format(kind))

    def _identifier(self, name):
        if self.presentation is not None and name in self.presentation.names:
            return self.presentation.gen(name)

        def build(algebra):
            if not algebra.cfield.has_symbol(name):
                raise UnknownIdentifierError(
                    'Unknown identifier {} in {}.'.format(name, algebra.name),
                )
            return algebra.element({
                algebra.unit_key: algebra.cfield.symbol_by_name(name),
            })

        return _Deferred(build)

    def _fiber(self, parts, home):
        factors = home.factors if isinstance(home, FiberProduct) and \
            len(home.factors) == len(parts) else None

        prefix = []
        values = []
        for index, part in enumerate(parts):
            scalars, rest = _split_scalars(part, self.presentation)
            prefix.extend(scalars)
            part_home = factors[index] if factors else self.presentation
            value = self.evaluate(rest, part_home)
            values.append(self.finish(value, part_home))

        chain = juxtapose(values)
        for scalar in prefix:
            coefficient = self.finish(self.evaluate(scalar, chain.algebra), chain.algebra)
            chain = coefficient * chain

        return chain


def _combine(first, second, operation):
    """Applies operation once both operands live in one algebra; stays
    deferred while both are coefficient expressions."""
    if isinstance(first, _Deferred) and (second is None or isinstance(second, _Deferred)):
        return _Deferred(lambda algebra: operation(
            first.bind(algebra),
            second.bind(algebra) if second is not None else None,
        ))

    if isinstance(first, _Deferred):
        first = first.bind(second.algebra)
    if isinstance(second, _Deferred):
        second = second.bind(first.algebra)

    return operation(first, second)


def _reciprocal(x):
    algebra = x.algebra
    unit = algebra.unit_key
    if set(x.terms) != {unit}:
        raise ExpressionSyntaxError('Can only divide by coefficients, not by {}'.format(x))

    return algebra.element({unit: algebra.cfield.one / x.terms[unit]})


def _split_scalars(node, presentation):
    """Leading factors of a product that mention neither generators,
    group elements nor r(.)/s(.)."""
    if node[0] != 'mul':
        return [], node

    factors = node[1]
    count = 0
    while count < len(factors) - 1 and _is_scalar(factors[count], presentation):
        count += 1

    rest = factors[count:]
    return factors[:count], rest[0] if len(rest) == 1 else ('mul', rest)


def _is_scalar(node, presentation):
    kind = node[0]
    if kind == 'num':
        return True
    if kind == 'ident':
        return presentation is None or node[1] not in presentation.names
    if kind in ('group', 'leg', 'fiber', 'zsugar', 'shift'):
        return False
    if kind == 'add':
        return all(_is_scalar(term, presentation) for _, term in node[1])
    if kind == 'mul':
        return all(_is_scalar(factor, presentation) for factor in node[1])
    if kind == 'div':
        return _is_scalar(node[1], presentation) and _is_scalar(node[2], presentation)
    if kind in ('neg', 'pow'):
        return _is_scalar(node[1], presentation)

    return False
