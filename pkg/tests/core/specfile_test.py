from __future__ import absolute_import

import pytest
import yaml

from dynqg.algebra.coeff import constant_base
from dynqg.algebra.coeff import mq_base
from dynqg.algebra.coeff import sudq_base
from dynqg.algebra.instances import DEFAULT_WEB_Q
from dynqg.algebra.ncalg import is_equivalent
from dynqg.core.specfile import dump_spec
from dynqg.core.specfile import load_spec
from dynqg.core.specfile import parse_word
from dynqg.core.specfile import read_spec
from dynqg.core.specfile import save_spec
from dynqg.core.specfile import SpecFormatError
from testing.factories import instance_factory
from testing.factories import sudq2_factory
from testing.util import fixture_path


class TestRoundTrip(object):

    @pytest.mark.parametrize(
        'name',
        ['sudq2', 'frt-su2', 'su-q2', 'classical'],
    )
    def test_byte_identical(self, name):
        text = dump_spec(instance_factory(name).hopf)

        assert dump_spec(load_spec(text).hopf) == text

    def test_file(self, tmpdir):
        filename = str(tmpdir.join('sudq2.yaml'))
        hopf = sudq2_factory()

        save_spec(hopf, filename)
        loaded = read_spec(filename)

        assert is_equivalent(loaded.presentation, hopf.presentation)
        assert loaded.presentation.names == hopf.presentation.names

    def test_loaded_structure_verifies(self):
        loaded = load_spec(dump_spec(sudq2_factory())).require_hopf()

        assert loaded.suite('hopf').passed
        assert loaded.family == 'AoFG'

    def test_presentation_only(self):
        loaded = load_spec(dump_spec(sudq2_factory().presentation))

        assert loaded.hopf is None
        with pytest.raises(SpecFormatError):
            loaded.require_hopf()


class TestBases(object):

    def test_shipped_base_is_reused(self):
        loaded = load_spec(dump_spec(sudq2_factory()))

        assert loaded.presentation.base is sudq_base()

    def test_numeric_deformation(self):
        loaded = load_spec(dump_spec(instance_factory('frt-su2').hopf))

        assert loaded.presentation.base is mq_base(DEFAULT_WEB_Q)

    def test_handwritten(self):
        spec = read_spec(fixture_path('specs/commutative.yaml'))
        A = spec.presentation

        assert A.base is constant_base()
        assert A.gen('b') * A.gen('a') == A.gen('a') * A.gen('b')
        assert spec.hopf is None


class TestTampering(object):

    def test_doubled_coproduct_fails(self):
        document = yaml.safe_load(dump_spec(sudq2_factory()))
        delta = document['hopf']['delta']
        delta['beta'] = '2*({})'.format(delta['beta'])

        hopf = load_spec(yaml.safe_dump(document, sort_keys=False)).hopf
        report = hopf.suite('hopf')

        assert not report.passed
        assert any(
            check.name.startswith('delta/relation[')
            for check in report.failures()
        )


class TestErrors(object):

    def test_invalid_yaml(self):
        with pytest.raises(SpecFormatError):
            load_spec('meta: [')

    def test_not_a_mapping(self):
        with pytest.raises(SpecFormatError):
            read_spec(fixture_path('specs/not_a_mapping.yaml'))

    def test_missing_file(self):
        with pytest.raises(SpecFormatError):
            read_spec(fixture_path('specs/missing.yaml'))

    @pytest.mark.parametrize(
        'block',
        ['meta', 'base', 'generators', 'rules'],
    )
    def test_missing_block(self, block):
        document = yaml.safe_load(dump_spec(sudq2_factory().presentation))
        del document[block]

        with pytest.raises(SpecFormatError):
            load_spec(yaml.safe_dump(document))

    def test_malformed_generator(self):
        document = yaml.safe_load(dump_spec(sudq2_factory().presentation))
        del document['generators'][0]['degree']

        with pytest.raises(SpecFormatError):
            load_spec(yaml.safe_dump(document))


class TestParseWord(object):

    def test_powers(self):
        A = sudq2_factory().presentation

        assert parse_word(A, 'alpha*beta^2') == A.word(['alpha', 'beta', 'beta'])
        assert parse_word(A, '1') == ()

    @pytest.mark.parametrize(
        'text',
        ['alpha^0', 'alpha^two'],
    )
    def test_invalid(self, text):
        with pytest.raises(SpecFormatError):
            parse_word(sudq2_factory().presentation, text)
