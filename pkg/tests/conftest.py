import numpy as np
import pytest

from jbhoro import BoundaryDatumV, Element, TripleSpace
from jbhoro.sampling import derive_rng, random_unitary


@pytest.fixture
def disc():
    return TripleSpace(((1, 1),))


@pytest.fixture
def m22():
    return TripleSpace(((2, 2),))


@pytest.fixture
def m23():
    return TripleSpace(((2, 3),))


@pytest.fixture
def m33():
    return TripleSpace(((3, 3),))


@pytest.fixture
def ball3():
    # complex Euclidean 3-ball: rank one, q = 1
    return TripleSpace(((3, 1),))


@pytest.fixture
def two_block():
    return TripleSpace(((2, 2), (1, 3)))


@pytest.fixture
def rng():
    return derive_rng(20240801)


@pytest.fixture
def tied_pair_data():
    """Factory: one rank-3 datum in M_33 (alpha = 0, tie, tie) under two
    minimal splits of the tied rank-two projection."""

    def build(m33, rng, tie):
        e1 = m33.matrix_unit(0, 0, 0)
        e2, e3 = m33.matrix_unit(0, 1, 1), m33.matrix_unit(0, 2, 2)
        u = random_unitary(2, rng)
        vecs = np.zeros((3, 2), dtype=complex)
        vecs[1:, :] = u
        f2 = Element(m33, [np.outer(vecs[:, 0], vecs[:, 0].conj())])
        f3 = Element(m33, [np.outer(vecs[:, 1], vecs[:, 1].conj())])
        return (BoundaryDatumV([e1, e2, e3], [0.0, tie, tie]),
                BoundaryDatumV([e1, f2, f3], [0.0, tie, tie]))

    return build


def pytest_configure(config):
    np.seterr(all="raise", under="ignore")
