"""The numba twins must agree with the pure-numpy kernels exactly."""

import numpy as np
import pytest

from jbhoro import _kernels
from jbhoro.sampling import derive_rng


def _random_block(rng, p, q):
    return rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q))


@pytest.mark.parametrize("shape", [(1, 1), (2, 2), (2, 3), (4, 3)])
def test_backends_agree(shape):
    rng = derive_rng(13, *shape)
    p, q = shape
    a, b, c = (_random_block(rng, p, q) for _ in range(3))
    ref = _kernels.NUMPY_KERNELS
    assert np.allclose(_kernels.triple_block(a, b, c), ref["triple_block"](a, b, c),
                       atol=1e-13)
    assert np.allclose(_kernels.quadratic_block(a, c), ref["quadratic_block"](a, c),
                       atol=1e-13)
    assert np.allclose(_kernels.bergman_block(a, b, c), ref["bergman_block"](a, b, c),
                       atol=1e-13)
    assert np.allclose(_kernels.box_matrix_block(a, b), ref["box_matrix_block"](a, b),
                       atol=1e-13)
    assert np.allclose(_kernels.qq_matrix_block(a, b), ref["qq_matrix_block"](a, b),
                       atol=1e-13)


def test_box_matrix_matches_apply():
    rng = derive_rng(14)
    a, b, x = (_random_block(rng, 3, 2) for _ in range(3))
    m = _kernels.box_matrix_block(a, b)
    direct = _kernels.triple_block(a, b, x)
    via_matrix = (m @ x.ravel(order="F")).reshape((3, 2), order="F")
    assert np.allclose(direct, via_matrix, atol=1e-13)


def test_qq_matrix_matches_double_quadratic():
    rng = derive_rng(15)
    a, b, x = (_random_block(rng, 2, 3) for _ in range(3))
    qb = _kernels.quadratic_block(b, x)
    direct = _kernels.quadratic_block(a, qb)
    m = _kernels.qq_matrix_block(a, b)
    via_matrix = (m @ x.ravel(order="F")).reshape((2, 3), order="F")
    assert np.allclose(direct, via_matrix, atol=1e-13)


def test_backend_flag_is_reported():
    assert _kernels.BACKEND in ("numba", "numpy")
