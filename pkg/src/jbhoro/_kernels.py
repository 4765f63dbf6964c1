"""Hot per-block kernels, with numba-compiled twins.

Every kernel operates on a single dense complex block (a p x q matrix).
Two implementations exist side by side: a pure-numpy reference and a
numba ``@njit`` version.  The active backend is chosen once at import:

* ``JBH_PURE_NUMPY=1`` in the environment forces the numpy path;
* otherwise numba is used when importable, numpy when not.

``BACKEND`` records the choice ("numba" or "numpy").  The dispatch is
deliberately tiny: callers import ``triple_block`` etc. and never care
which twin they got.  ``benchmarks/bench_kernels.py`` times both.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "triple_block",
    "quadratic_block",
    "bergman_block",
    "box_matrix_block",
    "qq_matrix_block",
]


# -- pure numpy twins -------------------------------------------------------

def _triple_block_np(a, b, c):
    # {a,b,c} = (a b* c + c b* a) / 2 on one block
    bh = b.conj().T
    return 0.5 * (a @ bh @ c + c @ bh @ a)


def _quadratic_block_np(a, x):
    # Q_a(x) = {a,x,a} = a x* a; conjugate linear in x
    return a @ x.conj().T @ a


def _bergman_block_np(b, c, x):
    # B(b,c)x = (I - b c*) x (I - c* b)
    p, q = x.shape
    left = np.eye(p, dtype=np.complex128) - b @ c.conj().T
    right = np.eye(q, dtype=np.complex128) - c.conj().T @ b
    return left @ x @ right


def _box_matrix_block_np(a, b):
    # matrix of x -> {a,b,x} on vec(x) in column-major order:
    # vec((A x + x B)/2) = (kron(I_q, A) + kron(B^T, I_p)) vec(x) / 2
    p, q = a.shape
    left = a @ b.conj().T
    right = b.conj().T @ a
    return 0.5 * (np.kron(np.eye(q), left) + np.kron(right.T, np.eye(p)))


def _qq_matrix_block_np(a, b):
    # matrix of the complex-linear composition x -> Q_a Q_b x = (a b*) x (b* a)
    left = a @ b.conj().T
    right = b.conj().T @ a
    return np.kron(right.T, left)


# -- numba twins ------------------------------------------------------------

def _build_numba_twins():
    from numba import njit

    @njit(cache=True)
    def triple_block(a, b, c):
        bh = np.ascontiguousarray(b.conj().T)
        return 0.5 * (a @ (bh @ c) + c @ (bh @ a))

    @njit(cache=True)
    def quadratic_block(a, x):
        xh = np.ascontiguousarray(x.conj().T)
        return a @ (xh @ a)

    @njit(cache=True)
    def bergman_block(b, c, x):
        p = x.shape[0]
        q = x.shape[1]
        ch = np.ascontiguousarray(c.conj().T)
        left = np.eye(p, dtype=np.complex128) - b @ ch
        right = np.eye(q, dtype=np.complex128) - ch @ b
        return left @ (x @ right)

    @njit(cache=True)
    def box_matrix_block(a, b):
        p = a.shape[0]
        q = a.shape[1]
        bh = np.ascontiguousarray(b.conj().T)
        left = a @ bh
        right = bh @ a
        n = p * q
        out = np.zeros((n, n), dtype=np.complex128)
        # column-major vec: entry (i,j) of the block sits at index j*p + i
        for j in range(q):
            for i in range(p):
                col = j * p + i
                for r in range(p):
                    out[j * p + r, col] += 0.5 * left[r, i]
                for s in range(q):
                    out[s * p + i, col] += 0.5 * right[j, s]
        return out

    @njit(cache=True)
    def qq_matrix_block(a, b):
        p = a.shape[0]
        q = a.shape[1]
        bh = np.ascontiguousarray(b.conj().T)
        left = a @ bh
        right = bh @ a
        n = p * q
        out = np.zeros((n, n), dtype=np.complex128)
        for j in range(q):
            for i in range(p):
                col = j * p + i
                for s in range(q):
                    for r in range(p):
                        out[s * p + r, col] = left[r, i] * right[j, s]
        return out

    return {
        "triple_block": triple_block,
        "quadratic_block": quadratic_block,
        "bergman_block": bergman_block,
        "box_matrix_block": box_matrix_block,
        "qq_matrix_block": qq_matrix_block,
    }


NUMPY_KERNELS = {
    "triple_block": _triple_block_np,
    "quadratic_block": _quadratic_block_np,
    "bergman_block": _bergman_block_np,
    "box_matrix_block": _box_matrix_block_np,
    "qq_matrix_block": _qq_matrix_block_np,
}

if os.environ.get("JBH_PURE_NUMPY", "").strip() not in ("", "0"):
    BACKEND = "numpy"
    _active = NUMPY_KERNELS
else:
    try:
        _active = _build_numba_twins()
        BACKEND = "numba"
    except ImportError:
        _active = NUMPY_KERNELS
        BACKEND = "numpy"

triple_block = _active["triple_block"]
quadratic_block = _active["quadratic_block"]
bergman_block = _active["bergman_block"]
box_matrix_block = _active["box_matrix_block"]
qq_matrix_block = _active["qq_matrix_block"]
