import pytest

from wdfa.codec import InVector, OutMatrix
from wdfa.core import Params, WheelerDfa

# The running example: five states, two labels, six transitions.
FIG1_EDGES = [(2, 1, 2), (5, 1, 2), (1, 2, 3), (3, 2, 4), (4, 2, 4), (5, 2, 5)]
FIG1_PARAMS = Params(5, 6, 2)
FIG2_ROWS = [(0, 1), (1, 0), (0, 1), (0, 1), (1, 1)]
FIG2_I = "101101"
SCRIPT_O = [2, 5, 6, 8, 9, 10]
SCRIPT_I = [2, 4]
# seeds under which the kernel samplers replay the scripts above
SEED_SCRIPT_O = 154
SEED_SCRIPT_I = 12
SEED_FIG1_STREAM = 1568


@pytest.fixture
def fig1():
    return WheelerDfa(5, 2, FIG1_EDGES)


@pytest.fixture
def fig2():
    return OutMatrix.from_rows(FIG2_ROWS), InVector(FIG2_I)
