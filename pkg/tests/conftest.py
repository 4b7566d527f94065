from fractions import Fraction

import numpy as np
import pytest

from markov_cycles import linalg, validate_generator

# Four-state worked example, transcribed from the published matrices.
GAMMA_4 = np.array(
    [
        [-1, -1, -1, 0, 0, 0],
        [1, 0, 0, -1, -1, 0],
        [0, 1, 0, 1, 0, -1],
        [0, 0, 1, 0, 1, 1],
    ]
)
C_123 = np.array([1, -1, 0, 1, 0, 0])
C_124 = np.array([1, 0, -1, 0, 1, 0])
C_234 = np.array([0, 0, 0, 1, -1, 1])
M_123 = np.array([[0, 1, -1, 0], [-1, 0, 1, 0], [1, -1, 0, 0], [0, 0, 0, 0]])
M_124 = np.array([[0, 1, 0, -1], [-1, 0, 0, 1], [0, 0, 0, 0], [1, -1, 0, 0]])
M_234 = np.array([[0, 0, 0, 0], [0, 0, 1, -1], [0, -1, 0, 1], [0, 1, -1, 0]])
LAMBDA_4 = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]])
LAMBDA_4_T = np.array([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
LAMBDA_DIFF_4 = np.array([[0, 1, 0, -1], [-1, 0, 1, 0], [0, -1, 0, 1], [1, 0, -1, 0]])

# Three-state ring: forward rates 2 (1->2->3->1), backward rates 1.
CYCLIC_3 = [[0, 2, 1], [1, 0, 2], [2, 1, 0]]


def exact(a):
    return linalg.exact_array(a)


@pytest.fixture
def cyclic3():
    return validate_generator(CYCLIC_3)


@pytest.fixture
def cyclic3_exact():
    return validate_generator(CYCLIC_3, exact=True)


@pytest.fixture
def two_state():
    return validate_generator([[-1, 1], [1, -1]])


def random_generator(rng, n, low=0.1, high=10.0):
    return validate_generator(rng.uniform(low, high, (n, n)))


F = Fraction


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
