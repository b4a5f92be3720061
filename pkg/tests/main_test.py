import json

import pytest
import yaml

from dynqg.algebra.coeff import cx_base
from dynqg.core.parser import parse
from dynqg.core.specfile import dump_spec
from dynqg.core.specfile import load_spec
from dynqg.core.specfile import save_spec
from dynqg.main import main
from testing.factories import sudq2_factory
from testing.mocks import mock_log
from testing.util import fixture_path
from testing.util import uncolor


@pytest.fixture
def spec_file(tmpdir):
    filename = str(tmpdir.join('sudq2.yaml'))
    save_spec(sudq2_factory(), filename)
    return filename


@pytest.fixture
def tampered_file(tmpdir):
    document = yaml.safe_load(dump_spec(sudq2_factory()))
    delta = document['hopf']['delta']
    delta['beta'] = '2*({})'.format(delta['beta'])

    filename = str(tmpdir.join('tampered.yaml'))
    with open(filename, 'w') as f:
        f.write(yaml.safe_dump(document, sort_keys=False))
    return filename


class TestMain(object):
    """Smoke tests for the console usage of dynqg. Functional cases live
    with the module tests."""

    def test_instance_to_stdout(self, capsys):
        assert main(['instance', 'sudq2']) == 0

        assert capsys.readouterr().out == dump_spec(sudq2_factory())

    def test_instance_to_file(self, tmpdir):
        filename = str(tmpdir.join('out.yaml'))

        assert main(['instance', 'classical', '--out', filename]) == 0
        with open(filename) as f:
            assert load_spec(f.read()).hopf is not None

    def test_instance_needs_param(self, capsys):
        assert main(['instance', 'frt-su2']) == 2

    def test_reduce(self, spec_file, capsys):
        assert main(['reduce', spec_file, '-e', 'delta*alpha']) == 0

        A = sudq2_factory().presentation
        out = capsys.readouterr().out.strip()
        assert out == str(parse('delta*alpha', A))
        assert out == 's(Z[0,-1])*gamma*beta + 1'

    def test_reduce_syntax_error(self, spec_file):
        assert main(['reduce', spec_file, '-e', 'delta*']) == 2

    @pytest.mark.parametrize(
        'morphism,expected',
        [
            ('epsilon', '[1]'),
            ('delta', 'alpha (x) alpha + beta (x) gamma'),
        ],
    )
    def test_map(self, spec_file, capsys, morphism, expected):
        assert main(['map', spec_file, '--morphism', morphism, '-e', 'alpha']) == 0

        assert capsys.readouterr().out.strip() == expected

    def test_map_antipode_shift_ratio(self, spec_file, capsys):
        assert main(['map', spec_file, '--morphism', 'antipode', '-e', 'beta']) == 0

        assert capsys.readouterr().out.strip() == '-s(Z[-1,-2])*beta'

    def test_map_antipode_in_algebra_notation(self, spec_file, capsys):
        assert main(['map', spec_file, '--morphism', 'antipode', '-e', 'alpha']) == 0

        expected = sudq2_factory().antipode_in_algebra.images['alpha']
        assert capsys.readouterr().out.strip() == str(expected)

    def test_map_unknown_morphism(self, spec_file):
        assert main(['map', spec_file, '--morphism', 'kappa', '-e', 'alpha']) == 2

    def test_check_passes(self, spec_file, capsys):
        assert main(['check', spec_file, '--suite', 'hopf']) == 0

        last_line = uncolor(capsys.readouterr().out).strip().splitlines()[-1]
        passed, _, total = last_line[len('hopf: '):].split()[:3]
        assert passed == total

    def test_check_fails(self, tampered_file, capsys):
        assert main(['check', tampered_file, '--suite', 'hopf', '--format', 'json']) == 1

        output = json.loads(capsys.readouterr().out)
        assert not output['passed']
        assert 'elapsed' not in output

    def test_check_presentation_only(self, capsys):
        filename = fixture_path('specs/commutative.yaml')

        assert main(['check', filename, '--suite', 'confluence']) == 0
        assert main(['check', filename, '--suite', 'hopf']) == 2

    def test_missing_spec(self):
        assert main(['check', fixture_path('specs/missing.yaml')]) == 2

    def test_base_change(self, spec_file, capsys):
        assert main(['base-change', spec_file, '--hom', 'pi-1-cx']) == 0

        pushed = load_spec(capsys.readouterr().out)
        assert pushed.presentation.base is cx_base()

    def test_base_change_needs_param(self, spec_file):
        assert main(['base-change', spec_file, '--hom', 'pi-q-minus-inf']) == 2

    def test_web_verify(self, capsys):
        assert main(['web-verify', '--format', 'json', '--timing']) == 0

        output = json.loads(capsys.readouterr().out)
        assert output['suite'] == 'web'
        assert output['passed']
        assert 'elapsed' in output

    def test_web_verify_inadmissible(self):
        assert main(['web-verify', '--param', 'q=1']) == 2


class TestErrorLogging(object):

    def test_missing_spec_is_logged(self):
        filename = fixture_path('specs/missing.yaml')
        with mock_log('dynqg.main.log') as mock_logger:
            assert main(['check', filename]) == 2

        assert filename in mock_logger.error_messages

    def test_nothing_logged_on_success(self, spec_file):
        with mock_log('dynqg.main.log') as mock_logger:
            assert main(['reduce', spec_file, '-e', 'alpha']) == 0

        assert not mock_logger.error_messages
