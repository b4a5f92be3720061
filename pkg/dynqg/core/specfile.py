"""Self-contained YAML documents describing a presentation and,
optionally, its Hopf algebroid structure.

Expressions are stored as their printed normal forms, so that
save -> load -> save reproduces the document byte for byte.
"""
from __future__ import absolute_import

from collections import namedtuple
from collections import OrderedDict
from fractions import Fraction

import yaml

from dynqg.algebra.basematrix import BMatrix
from dynqg.algebra.basematrix import DegMatrix
from dynqg.algebra.coeff import AlgebraError
from dynqg.algebra.coeff import BaseSpec
from dynqg.algebra.coeff import constant_base
from dynqg.algebra.coeff import cx_base
from dynqg.algebra.coeff import format_ratfunc
from dynqg.algebra.coeff import lambda_base
from dynqg.algebra.coeff import mq_base
from dynqg.algebra.coeff import r_base
from dynqg.algebra.coeff import sudq_base
from dynqg.algebra.coeff import VarSpec
from dynqg.algebra.hopf import CharacterBlock
from dynqg.algebra.hopf import CharacterFamily
from dynqg.algebra.hopf import HopfData
from dynqg.algebra.hopf import hopf_structure
from dynqg.algebra.ncalg import Generator
from dynqg.algebra.ncalg import Presentation
from dynqg.algebra.tensor import crossed_product
from dynqg.algebra.tensor import fiber_product
from dynqg.core.constants import DEFAULT_STEP_BUDGET
from dynqg.core.log import log
from dynqg.core.parser import parse
from dynqg.core.parser import parse_base


class SpecFormatError(ValueError):
    pass


class AlgebraSpec(
    namedtuple(
        'AlgebraSpec',
        [
            # type: Presentation
            'presentation',

            # type: HopfData|None
            # None when the document has no hopf block.
            'hopf',
        ],
    ),
):

    def require_hopf(self):
        if self.hopf is None:
            raise SpecFormatError(
                '{} has no hopf block.'.format(self.presentation.name),
            )
        return self.hopf


def dump_spec(algebra):
    """
    :type algebra: HopfData|Presentation
    :rtype: str
    """
    return yaml.safe_dump(
        spec_document(algebra),
        sort_keys=False,
        default_flow_style=False,
    )


def save_spec(algebra, filename):
    with open(filename, 'w') as f:
        f.write(dump_spec(algebra))

    log.info('Wrote %s', filename)


def spec_document(algebra):
    """
    :type algebra: HopfData|Presentation
    :rtype: dict
    """
    hopf = algebra if isinstance(algebra, HopfData) else None
    A = hopf.presentation if hopf else algebra

    meta = {'name': A.name}
    if hopf is not None:
        if hopf.provenance:
            meta['provenance'] = hopf.provenance
        if hopf.family:
            meta['family'] = hopf.family
    if A.mirrored:
        meta['mirrored'] = True

    document = {
        'meta': meta,
        'base': _dump_base(A.base),
        'generators': [
            {
                'name': g.name,
                'degree': {
                    'r': list(g.degree[0]),
                    's': list(g.degree[1]),
                },
            }
            for g in A.generators
        ],
        'order': list(A.precedence),
        'rules': [
            {
                'lhs': A.format_key(lhs),
                'rhs': str(A.element(rhs, normal=True)),
            }
            for lhs, rhs in A.rules.items()
        ],
    }
    if A.has_star:
        document['star'] = dict(
            (g.name, str(g.star_image))
            for g in A.generators
        )

    if hopf is None:
        return document

    document['hopf'] = {
        'delta': _dump_images(A, hopf.delta.images),
        'epsilon': _dump_images(A, hopf.epsilon.images),
        'antipode': _dump_images(A, hopf.antipode_in_algebra.images),
    }

    matrices = {}
    for name, matrix in hopf.matrices.items():
        matrices[name] = _dump_matrix(matrix)
    for name, grid in hopf.generator_matrices.items():
        matrices[name] = {'generators': [list(row) for row in grid]}
    if matrices:
        document['matrices'] = matrices

    if hopf.characters is not None:
        document['characters'] = [
            {
                'names': [list(row) for row in block.names],
                'degrees': [list(g) for g in block.degrees],
                'H': _dump_rows(block.H),
            }
            for block in hopf.characters.blocks
        ]

    return document


def _dump_images(presentation, images):
    return dict(
        (name, str(images[name]))
        for name in presentation.names
    )


def _dump_rows(matrix):
    return [
        [format_ratfunc(matrix[i, j]) for j in range(matrix.n)]
        for i in range(matrix.n)
    ]


def _dump_matrix(matrix):
    if isinstance(matrix, DegMatrix):
        return {'degrees': [list(g) for g in matrix]}

    return {'entries': _dump_rows(matrix)}


def _dump_base(base):
    output = {
        'name': base.name,
        'gamma_rank': base.gamma_rank,
        'variables': [],
    }
    for var in base.variables:
        entry = {'name': var.name, 'kind': var.leg}
        if var.star_image is not None:
            entry['star'] = format_ratfunc(var.star_image)
        output['variables'].append(entry)

    if any(action is not None for action in base.action):
        output['action'] = [
            _dump_action(base, index)
            for index in range(base.gamma_rank)
        ]
    if base.shift_ratio is not None:
        output['shift_ratio'] = format_ratfunc(base.shift_ratio)
    if base.check_elements:
        output['check_elements'] = [
            {'label': label, 'value': format_ratfunc(value)}
            for label, value in base.check_elements
        ]

    return output


def _dump_action(base, index):
    if base.action[index] is None:
        return None

    output = {}
    for key, forward in (('forward', True), ('inverse', False)):
        output[key] = dict(
            (name, format_ratfunc(image))
            for name, gen, image in zip(
                base.names,
                base.field.gens,
                base.action_images(index, forward),
            )
            if image != gen
        )

    return output


def load_spec(text, step_budget=DEFAULT_STEP_BUDGET):
    """
    :type text: str
    :rtype: AlgebraSpec
    :raises: SpecFormatError
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SpecFormatError('Invalid YAML: {}'.format(e))

    if not isinstance(document, dict):
        raise SpecFormatError('A spec file is a mapping of blocks.')

    try:
        return _load_document(document, step_budget)
    except (KeyError, TypeError, IndexError) as e:
        raise SpecFormatError('Malformed spec file: {!r}'.format(e))


def read_spec(filename, step_budget=DEFAULT_STEP_BUDGET):
    try:
        with open(filename) as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise SpecFormatError('Cannot read {}: {}'.format(filename, e))

    return load_spec(text, step_budget=step_budget)


def _load_document(document, step_budget):
    for block in ('meta', 'base', 'generators', 'rules'):
        if block not in document:
            raise SpecFormatError('Missing {} block.'.format(block))

    meta = document['meta']
    base = load_base(document['base'])
    A = Presentation(
        meta['name'],
        base,
        [
            Generator(
                entry['name'],
                (entry['degree']['r'], entry['degree']['s']),
            )
            for entry in document['generators']
        ],
        precedence=document.get('order'),
        step_budget=step_budget,
        mirrored=bool(meta.get('mirrored', False)),
    )

    for rule in document['rules'] or []:
        A.add_rule(
            parse_word(A, rule['lhs']),
            parse(str(rule['rhs']), A).terms,
        )

    if document.get('star'):
        A.set_star(dict(
            (name, parse(str(image), A))
            for name, image in document['star'].items()
        ))

    if 'hopf' not in document:
        return AlgebraSpec(A, None)

    return AlgebraSpec(A, _load_hopf(A, document, meta))


def _load_hopf(A, document, meta):
    block = document['hopf']
    fibers = fiber_product(A, A)
    crossed = crossed_product(A.base)

    matrices = OrderedDict()
    generator_matrices = OrderedDict()
    for name, entry in (document.get('matrices') or {}).items():
        if 'degrees' in entry:
            matrices[name] = DegMatrix(A.base, entry['degrees'])
        elif 'entries' in entry:
            matrices[name] = _load_rows(A.base, entry['entries'])
        elif 'generators' in entry:
            generator_matrices[name] = [list(row) for row in entry['generators']]
        else:
            raise SpecFormatError('Matrix {} has no contents.'.format(name))

    characters = None
    if document.get('characters'):
        characters = CharacterFamily(
            A,
            [
                CharacterBlock(
                    [list(row) for row in entry['names']],
                    DegMatrix(A.base, entry['degrees']),
                    _load_rows(A.base, entry['H']),
                )
                for entry in document['characters']
            ],
        )

    return hopf_structure(
        A,
        _load_images(block['delta'], A, fibers),
        _load_images(block['epsilon'], A, crossed),
        _load_images(block['antipode'], A, A),
        characters=characters,
        matrices=matrices,
        generator_matrices=generator_matrices,
        family=meta.get('family'),
        provenance=meta.get('provenance'),
    )


def _load_images(images, presentation, context):
    return dict(
        (name, parse(str(text), presentation, context))
        for name, text in images.items()
    )


def _load_rows(base, rows):
    return BMatrix(
        base,
        [[parse_base(base, str(entry)) for entry in row] for row in rows],
    )


def parse_word(presentation, text):
    """Inverse of Presentation.format_key: "alpha*beta^2" -> word.

    :rtype: tuple(int)
    """
    text = str(text).strip()
    if text == '1':
        return ()

    names = []
    for piece in text.split('*'):
        name, _, count = piece.strip().partition('^')
        try:
            repeat = int(count) if count else 1
        except ValueError:
            raise SpecFormatError('Invalid word {!r}.'.format(text))
        if repeat < 1:
            raise SpecFormatError('Invalid word {!r}.'.format(text))

        names.extend([name] * repeat)

    return presentation.word(names)


def load_base(block):
    """
    :type block: dict
    :rtype: BaseSpec
    """
    base = BaseSpec(
        block['name'],
        [
            VarSpec(entry['name'], entry.get('kind', 'dynamical'))
            for entry in block['variables'] or []
        ],
        gamma_rank=int(block.get('gamma_rank', 1)),
    )

    for index, action in enumerate(block.get('action') or []):
        if action is None:
            continue
        base.set_action(
            index,
            _base_images(base, action.get('forward')),
            _base_images(base, action.get('inverse')),
        )

    stars = dict(
        (entry['name'], parse_base(base, str(entry['star'])))
        for entry in block['variables'] or []
        if 'star' in entry
    )
    if stars:
        base.set_star(stars)

    if block.get('shift_ratio') is not None:
        base.set_shift_ratio(parse_base(base, str(block['shift_ratio'])))

    if block.get('check_elements'):
        base.set_check_elements([
            (entry['label'], parse_base(base, str(entry['value'])))
            for entry in block['check_elements']
        ])

    return _canonical_base(base)


def _base_images(base, images):
    return dict(
        (name, parse_base(base, str(text)))
        for name, text in (images or {}).items()
    )


def _canonical_base(base):
    """The shipped base ring with the same document, if there is one, so
    that base homomorphisms out of it apply to the loaded presentation."""
    document = _dump_base(base)
    for candidate in _candidate_bases(base):
        if _dump_base(candidate) == document:
            return candidate

    return base


def _candidate_bases(base):
    candidates = [
        sudq_base(),
        mq_base(),
        lambda_base(),
        r_base(),
        cx_base(),
        constant_base(),
    ]

    # B_Mq at a numeric q: x_(1) = x / q.
    if base.names == ['x'] and base.action[0] is not None:
        x = base.var('x')
        q = _as_fraction(x / base.action_images(0)[0])
        if q is not None and q not in (0, 1, -1):
            candidates.append(mq_base(q))

    return candidates


def _as_fraction(value):
    if not (value.numer.is_ground and value.denom.is_ground):
        return None

    try:
        return Fraction(str(value.numer.LC)) / Fraction(str(value.denom.LC))
    except (ValueError, ZeroDivisionError, AlgebraError):
        return None
