import os
import re

# Strips ANSI colour codes from text reports.
_ansi_escape = re.compile(r'\x1b\[[0-?]*[ -/]*[@-~]')

TEST_DATA = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    'test_data',
)


def uncolor(text):
    return _ansi_escape.sub('', text)


def fixture_path(name):
    return os.path.join(TEST_DATA, name)
