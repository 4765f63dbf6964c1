import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jbhoro import (Element, ShapeError, TripleSpace, box_operator,
                    hermitian_eigenvalues, normalized_inner, quadratic_apply,
                    quadratic_pair_operator, spectral_op_norm, trace_inner,
                    triple_norm, triple_product)
from jbhoro.sampling import derive_rng, random_element, random_frame


def test_matrix_unit_is_tripotent(m22):
    e = m22.matrix_unit(0, 0, 0)
    assert triple_norm(triple_product(e, e, e) - e) == 0.0


def test_middle_slot_zero(m23, rng):
    x, z = random_element(m23, rng), random_element(m23, rng)
    assert triple_norm(triple_product(x, m23.zero(), z)) == 0.0


def test_middle_slot_conjugate_linear(m22, rng):
    a = random_element(m22, rng)
    x = random_element(m22, rng)
    lhs = quadratic_apply(a, 1j * x)
    rhs = -1j * quadratic_apply(a, x)
    assert triple_norm(lhs - rhs) < 1e-14


def test_quadratic_fixes_tripotent(m23, rng):
    e = random_frame(m23, rng, 1)[0]
    assert triple_norm(quadratic_apply(e, e) - e) < 1e-12


def test_cube_norm_identity(m23, rng):
    for _ in range(20):
        a = random_element(m23, rng)
        assert abs(triple_norm(triple_product(a, a, a)) - triple_norm(a) ** 3) \
            <= 1e-12 * max(1.0, triple_norm(a) ** 3)


def test_box_eigenvalues_of_tripotent(m22):
    e = m22.matrix_unit(0, 0, 0)
    ev = hermitian_eigenvalues(box_operator(e, e))
    assert np.all(np.min(np.abs(ev[:, None] - np.array([0.0, 0.5, 1.0])), axis=1) < 1e-12)


def test_box_of_zero(m22, rng):
    b = random_element(m22, rng)
    assert np.linalg.norm(box_operator(m22.zero(), b).matrix) == 0.0


def test_box_matches_triple_product(m23, rng):
    for _ in range(100):
        a, b, x = (random_element(m23, rng) for _ in range(3))
        residual = triple_norm(box_operator(a, b)(x) - triple_product(a, b, x))
        assert residual < 1e-13 * max(1.0, triple_norm(a) * triple_norm(b))


def test_jordan_triple_identity(two_block):
    rng = derive_rng(5)
    for _ in range(200):
        a, b, x, y, z = (random_element(two_block, rng, norm=rng.uniform(0.2, 1.0))
                         for _ in range(5))
        lhs = triple_product(a, b, triple_product(x, y, z))
        rhs = (triple_product(triple_product(a, b, x), y, z)
               - triple_product(x, triple_product(b, a, y), z)
               + triple_product(x, y, triple_product(a, b, z)))
        assert triple_norm(lhs - rhs) < 1e-11


def test_box_self_adjoint_nonnegative(m33, rng):
    a = random_element(m33, rng)
    ev = hermitian_eigenvalues(box_operator(a, a))
    assert ev.min() > -1e-12


def test_box_norm_is_norm_squared(m23, rng):
    for _ in range(20):
        a = random_element(m23, rng, norm=rng.uniform(0.1, 2.0))
        got = spectral_op_norm(box_operator(a, a))
        want = triple_norm(a) ** 2
        assert abs(got - want) <= 1e-10 * max(1.0, want)


def test_contractivity(m22, rng):
    for _ in range(50):
        a, b, c = (random_element(m22, rng) for _ in range(3))
        bound = triple_norm(a) * triple_norm(b) * triple_norm(c)
        assert triple_norm(triple_product(a, b, c)) <= bound + 1e-12


def test_norm_diagonal(m22):
    x = Element(m22, [np.diag([3.0, 1.0]).astype(complex)])
    assert triple_norm(x) == pytest.approx(3.0)
    assert triple_norm(m22.zero()) == 0.0


def test_orthogonal_norm_law(m23, rng):
    for _ in range(20):
        f = random_frame(m23, rng, 2)
        a = rng.uniform(0.2, 2.0) * f[0]
        b = rng.uniform(0.2, 2.0) * f[1]
        assert abs(triple_norm(a + b) - max(triple_norm(a), triple_norm(b))) < 1e-12


@settings(max_examples=50, deadline=None)
@given(scale=st.floats(min_value=0.0, max_value=100.0, allow_nan=False),
       seed=st.integers(min_value=0, max_value=2 ** 20))
def test_norm_homogeneity_and_triangle(scale, seed):
    sp = TripleSpace(((2, 2),))
    r = derive_rng(seed)
    x, y = random_element(sp, r), random_element(sp, r)
    assert triple_norm(scale * x) == pytest.approx(scale * triple_norm(x), abs=1e-12, rel=1e-12)
    assert triple_norm(x + y) <= triple_norm(x) + triple_norm(y) + 1e-12


def _operator_trace_oracle(x, y):
    """Trace of a [] b summed over matrix-unit coordinates, independently of
    the materialized operator matrix."""
    sp = x.space
    total = 0.0 + 0.0j
    for bi, (p, q) in enumerate(sp.blocks):
        for i in range(p):
            for j in range(q):
                unit = sp.matrix_unit(bi, i, j)
                total += triple_product(x, y, unit).blocks[bi][i, j]
    return total


def test_trace_inner_matches_summation_oracle(m23, rng):
    x, y = random_element(m23, rng), random_element(m23, rng)
    assert trace_inner(x, y) == pytest.approx(_operator_trace_oracle(x, y), abs=1e-12)
    # on a block M_{p,q} the trace form is ((p+q)/2) tr(x y*)
    p, q = m23.blocks[0]
    want = 0.5 * (p + q) * np.trace(x.blocks[0] @ y.blocks[0].conj().T)
    assert trace_inner(x, y) == pytest.approx(want, abs=1e-12)


def test_trace_inner_positive_definite(two_block, rng):
    for _ in range(10):
        x = random_element(two_block, rng)
        assert trace_inner(x, x).real > 0
        assert abs(trace_inner(x, x).imag) < 1e-12


def test_minimal_tripotent_trace_norm(m23):
    e = m23.matrix_unit(0, 0, 0)
    p, q = m23.blocks[0]
    assert trace_inner(e, e) == pytest.approx(0.5 * (p + q))


def _peirce1_dimension_oracle(e):
    """Complex dimension of the 1/2 eigenspace of e [] e, counted from the
    eigenvalues of the box operator."""
    ev = hermitian_eigenvalues(box_operator(e, e))
    return int(np.sum(np.abs(ev - 0.5) < 1e-9))


def test_normalized_inner_is_frobenius_on_type_one(m23, rng):
    e = m23.matrix_unit(0, 0, 0)
    p, q = m23.blocks[0]
    assert _peirce1_dimension_oracle(e) == (p - 1) + (q - 1)
    # normalizer 1 + dim V_1(e)/2 = (p+q)/2 = 5/2 here
    x, y = random_element(m23, rng), random_element(m23, rng)
    assert normalized_inner(x, y) == pytest.approx(
        np.trace(x.blocks[0] @ y.blocks[0].conj().T), abs=1e-12)
    assert trace_inner(x, y) == pytest.approx(2.5 * normalized_inner(x, y), abs=1e-12)


def test_normalized_inner_on_minimal_tripotents(two_block, rng):
    c, d = random_frame(two_block, rng, 2)
    assert normalized_inner(c, c) == pytest.approx(1.0, abs=1e-12)
    assert abs(normalized_inner(c, d)) < 1e-12


def test_quadratic_pair_idempotent_for_minimal(m22, rng):
    e = random_frame(m22, rng, 1)[0]
    p2 = quadratic_pair_operator(e, e).matrix
    assert np.linalg.norm(p2 @ p2 - p2) < 1e-12
    assert abs(np.trace(p2).real - 1.0) < 1e-9


def test_shape_mismatch_raises(m22, m23, rng):
    with pytest.raises(ShapeError):
        triple_product(random_element(m22, rng), random_element(m23, rng),
                       random_element(m22, rng))
