from enum import Enum


# Variable placement in coefficient fields: shared variables get one
# copy, dynamical ones get a copy per leg (r, s and middle legs).
SHARED = 'shared'
DYNAMICAL = 'dynamical'

DEFAULT_STEP_BUDGET = 10 ** 6
DEFAULT_OVERLAP_LENGTH = 3

# Powers k of the character family checked by default.
DEFAULT_CHARACTER_RANGE = 2

# Separator for fiber-product factors in the expression grammar.
FIBER_TOKEN = '(x)'


class CheckStatus(Enum):
    PASS = 'pass'
    FAIL = 'fail'
    ERROR = 'error'


class Suite(Enum):
    HOPF = 'hopf'
    STAR = 'star'
    THETA = 'theta'
    CONFLUENCE = 'confluence'
    COREP = 'corep'
    ALL = 'all'


FUNCTOR_LABELS = (
    'epsilon',
    'delta',
    'op',
    'top_co',
    'inv_co',
    'inv_top',
    'inv_bot',
    'inv_co_op',
    'bar_op',
    'star_co',
    'overline',
    'star',
)
