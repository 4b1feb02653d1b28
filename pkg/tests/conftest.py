from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from pbwdeform import GF, Q, Matrix, close_generators, corpus_get

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def unipotent(p):
    return close_generators([Matrix(GF(p), [[1, 1], [0, 1]])])[1]


def s3_reflection():
    return corpus_get("s3-coxeter-q").rep


def s3_permutation():
    """S3 permuting a basis of Q^3."""
    a = Matrix(Q, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    b = Matrix(Q, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    return close_generators([a, b])[1]


def dihedral_d4():
    s1 = Matrix(Q, [[0, 1], [1, 0]])
    s2 = Matrix(Q, [[1, 0], [0, -1]])
    return close_generators([s1, s2])[1]


def cyclic_rotation(n):
    """Z/n acting on Q^2 by a rational rotation of order n (n = 2, 3, 4)."""
    if n == 2:
        return close_generators([Matrix(Q, [[-1, 0], [0, -1]])])[1]
    if n == 3:
        return close_generators([Matrix(Q, [[0, -1], [1, -1]])])[1]
    if n == 4:
        return close_generators([Matrix(Q, [[0, -1], [1, 0]])])[1]
    raise ValueError(n)


@pytest.fixture
def rep_p2():
    return unipotent(2)


@pytest.fixture
def rep_p3():
    return unipotent(3)


def scalars(field):
    if field.char:
        return st.integers(min_value=0, max_value=field.char - 1)
    return st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))


FIELDS = [Q, GF(2), GF(5), GF(7)]


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
