"""Triple product calculus: products, box/quadratic maps, norms, inner products.

The product on a block is {a,b,c} = (a b* c + c b* a)/2, extended
coordinatewise to direct sums.  The norm is the largest singular value per
block, maximized over blocks.  Two sesquilinear forms are used throughout:

* the trace form  <x,y> = Tr(x [] y), which on a block M_{p,q} equals
  ((p+q)/2) tr(x y*);
* its blockwise normalization [x,y] = tr(x y*), which gives every minimal
  tripotent length one.

Both are linear in the first slot and conjugate linear in the second.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import ShapeError
from .space import Element, LinOp, TripleSpace

__all__ = [
    "triple_product",
    "box_operator",
    "quadratic_apply",
    "quadratic_pair_operator",
    "triple_norm",
    "trace_inner",
    "normalized_inner",
    "trace_adjoint",
    "is_trace_self_adjoint",
    "hermitian_eigenvalues",
    "spectral_op_norm",
]


def _same_space(*elems: Element) -> TripleSpace:
    sp = elems[0].space
    for e in elems[1:]:
        if e.space != sp:
            raise ShapeError("operands live in different spaces")
    return sp


def triple_product(a: Element, b: Element, c: Element) -> Element:
    """{a,b,c}, linear in a and c, conjugate linear in b."""
    sp = _same_space(a, b, c)
    return Element(sp, [_kernels.triple_block(x, y, z)
                        for x, y, z in zip(a.blocks, b.blocks, c.blocks)])


def box_operator(a: Element, b: Element) -> LinOp:
    """The operator x -> {a,b,x} as a dense matrix.

    Contractive: its norm is at most ||a|| ||b||.  For b = a it is
    self-adjoint with respect to the trace form and has nonnegative
    spectrum.
    """
    sp = _same_space(a, b)
    n = sp.complex_dim
    m = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for x, y, (p, q) in zip(a.blocks, b.blocks, sp.blocks):
        d = p * q
        m[pos:pos + d, pos:pos + d] = _kernels.box_matrix_block(x, y)
        pos += d
    return LinOp(sp, m, self_adjoint_hint=a is b)


def quadratic_apply(a: Element, x: Element) -> Element:
    """Q_a(x) = {a,x,a} = a x* a blockwise; conjugate linear in x.

    Conjugate-linear maps are never materialized as matrices; see
    ``quadratic_pair_operator`` for the complex-linear compositions.
    """
    sp = _same_space(a, x)
    return Element(sp, [_kernels.quadratic_block(u, v)
                        for u, v in zip(a.blocks, x.blocks)])


def quadratic_pair_operator(a: Element, b: Element) -> LinOp:
    """The complex-linear composition Q_a Q_b as a dense matrix.

    Q_a Q_b x = (a b*) x (b* a) blockwise.  With b = a this is the Peirce
    2-projection of a tripotent a.
    """
    sp = _same_space(a, b)
    n = sp.complex_dim
    m = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for x, y, (p, q) in zip(a.blocks, b.blocks, sp.blocks):
        d = p * q
        m[pos:pos + d, pos:pos + d] = _kernels.qq_matrix_block(x, y)
        pos += d
    return LinOp(sp, m)


def triple_norm(x: Element) -> float:
    """Largest singular value per block, maximum over blocks."""
    return max(float(np.linalg.svd(b, compute_uv=False)[0]) if min(b.shape) else 0.0
               for b in x.blocks)


def trace_inner(x: Element, y: Element) -> complex:
    """<x,y> = Tr(x [] y) = sum over blocks of ((p+q)/2) tr(x y*)."""
    _same_space(x, y)
    total = 0.0 + 0.0j
    for (p, q), xb, yb in zip(x.space.blocks, x.blocks, y.blocks):
        total += 0.5 * (p + q) * np.vdot(yb, xb)
    return complex(total)


def normalized_inner(x: Element, y: Element) -> complex:
    """[x,y]: the trace form rescaled so every minimal tripotent has [c,c]=1.

    The normalizer on a block is 1/(1 + dim V_1(e)/2) with e minimal, which
    equals 2/(p+q); the result is the plain Frobenius form tr(x y*) summed
    over blocks.
    """
    _same_space(x, y)
    return complex(sum(np.vdot(yb, xb) for xb, yb in zip(x.blocks, y.blocks)))


# -- operator helpers with respect to the trace form -------------------------

def trace_adjoint(op: LinOp) -> LinOp:
    """Adjoint with respect to <.,.>: W^{-1} M^H W with W the weight diagonal."""
    w = op.space.inner_weights()
    m = (op.matrix.conj().T * w[np.newaxis, :]) / w[:, np.newaxis]
    return LinOp(op.space, m, self_adjoint_hint=op.self_adjoint_hint)


def is_trace_self_adjoint(op: LinOp, rtol: float = 1e-9) -> bool:
    """||M - M^dagger||_F < rtol * ||M||_F in the trace geometry."""
    m = op.matrix
    madj = trace_adjoint(op).matrix
    scale = np.linalg.norm(m)
    return bool(np.linalg.norm(m - madj) <= rtol * max(scale, 1.0))


def hermitian_eigenvalues(op: LinOp, rtol: float = 1e-9) -> np.ndarray:
    """Eigenvalues of a trace-form self-adjoint operator, ascending.

    Self-adjointness is asserted numerically first, then the Hermitian part
    is used, which removes rounding drift.  Computed in weighted coordinates
    where the trace form is the standard one.
    """
    if not is_trace_self_adjoint(op, rtol=rtol):
        raise ValueError("operator is not self-adjoint within tolerance")
    s = np.sqrt(op.space.inner_weights())
    mw = (op.matrix * s[:, np.newaxis]) / s[np.newaxis, :]
    return np.linalg.eigvalsh(0.5 * (mw + mw.conj().T))


def spectral_op_norm(op: LinOp, rtol: float = 1e-9) -> float:
    """Operator norm of a self-adjoint operator: its spectral radius.

    Hermitian operators attain their norm on the spectrum, so no ascent over
    the unit ball is needed for them.
    """
    ev = hermitian_eigenvalues(op, rtol=rtol)
    return float(np.max(np.abs(ev)))
