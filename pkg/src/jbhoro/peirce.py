"""Peirce projections, Bergman operators and their powers, Moebius maps,
and the induced operator norm over the unit ball.

For a tripotent e the box operator e [] e has eigenvalues {0, 1/2, 1}; the
eigenprojections are

    P_2(e) = Q_e^2,   P_1(e) = 2(e [] e - Q_e^2),   P_0(e) = B(e,e).

A family of mutually orthogonal tripotents refines this into the joint
system indexed by pairs 0 <= i <= j <= n, on which Bergman operators of
frame elements are diagonal:

    B(x,x) = sum (1-|l_i|^2)(1-|l_j|^2) P_ij      (x = sum l_i e_i, l_0 = 0),

which yields the closed form of the +-1/2 powers used everywhere below.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NotTripotentError, OutsideDomainError, ShapeError
from .results import OpNormEstimate
from .sampling import derive_rng, random_maximal_tripotent
from .space import Element, LinOp, TripleSpace
from .spectral import is_tripotent, is_orthogonal, spectral_decompose
from .triple import box_operator, quadratic_pair_operator, triple_norm

__all__ = [
    "peirce_projection",
    "JointPeirceSystem",
    "joint_peirce",
    "bergman",
    "bergman_half_powers",
    "frame_bergman_half",
    "mobius",
    "induced_op_norm",
]

_SOLVE_COND_LIMIT = 1e8


def peirce_projection(e: Element, k: int) -> LinOp:
    """Projection onto the eigenspace of e [] e for eigenvalue k/2, k in {0,1,2}."""
    if not is_tripotent(e):
        raise NotTripotentError("Peirce projections need a tripotent")
    if k == 2:
        m = quadratic_pair_operator(e, e).matrix
    elif k == 0:
        m = bergman(e, e).matrix
    elif k == 1:
        m = (np.eye(e.space.complex_dim)
             - quadratic_pair_operator(e, e).matrix
             - bergman(e, e).matrix)
    else:
        raise ValueError("Peirce index must be 0, 1 or 2")
    return LinOp(e.space, m, self_adjoint_hint=True)


@dataclass
class JointPeirceSystem:
    """Joint Peirce projections P_ij, 0 <= i <= j <= n, of an orthogonal family.

    Index 0 stands for the joint kernel; indices 1..n for the tripotents in
    order.  The projections are mutually annihilating idempotents summing to
    the identity, with P_jj e_k = delta_jk e_k and P_ij e_k = 0 for i != j.
    """

    space: TripleSpace
    tripotents: tuple[Element, ...]
    projections: dict[tuple[int, int], LinOp] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.tripotents)

    def pairs(self):
        return sorted(self.projections.keys())

    def projection(self, i: int, j: int) -> LinOp:
        return self.projections[(min(i, j), max(i, j))]

    def weighted_sum(self, coeffs: np.ndarray) -> LinOp:
        """sum over 0 <= i <= j <= n of c_i c_j P_ij for coefficients c_0..c_n."""
        c = np.asarray(coeffs, dtype=float)
        if c.size != self.n + 1:
            raise ShapeError(f"need {self.n + 1} coefficients, got {c.size}")
        m = np.zeros((self.space.complex_dim, self.space.complex_dim),
                     dtype=np.complex128)
        for (i, j), proj in self.projections.items():
            m += (c[i] * c[j]) * proj.matrix
        return LinOp(self.space, m, self_adjoint_hint=True)

    def upper_sum(self, coeffs: np.ndarray) -> LinOp:
        """sum over 1 <= i <= j <= n of c_i c_j P_ij (index 0 excluded)."""
        c = np.concatenate([[0.0], np.asarray(coeffs, dtype=float)])
        return self.weighted_sum(c)


def joint_peirce(tripotents, check: bool = True) -> JointPeirceSystem:
    """Build the joint Peirce system of mutually orthogonal tripotents.

    The projections are products of the commuting single-tripotent
    eigenprojections:

        P_ii = P_2(e_i),  P_ij = P_1(e_i) P_1(e_j)  (1 <= i < j),
        P_00 = prod_k P_0(e_k),  P_0j = P_1(e_j) prod_{k != j} P_0(e_k).
    """
    trips = tuple(tripotents)
    if not trips:
        raise ValueError("empty tripotent family")
    sp = trips[0].space
    if check:
        for e in trips:
            if not is_tripotent(e):
                raise NotTripotentError("joint Peirce system needs tripotents")
        for i in range(len(trips)):
            for j in range(i + 1, len(trips)):
                if not is_orthogonal(trips[i], trips[j]):
                    raise ValueError("tripotents are not mutually orthogonal")
    n = len(trips)
    eye = np.eye(sp.complex_dim)
    p2 = [quadratic_pair_operator(e, e).matrix for e in trips]
    p0 = [bergman(e, e).matrix for e in trips]
    p1 = [eye - a - b for a, b in zip(p2, p0)]

    projections: dict[tuple[int, int], LinOp] = {}
    all0 = eye.copy()
    for m in p0:
        all0 = all0 @ m
    projections[(0, 0)] = LinOp(sp, all0, self_adjoint_hint=True)
    for j in range(1, n + 1):
        rest = eye.copy()
        for k in range(n):
            if k != j - 1:
                rest = rest @ p0[k]
        projections[(0, j)] = LinOp(sp, p1[j - 1] @ rest, self_adjoint_hint=True)
        projections[(j, j)] = LinOp(sp, p2[j - 1], self_adjoint_hint=True)
        for i in range(1, j):
            projections[(i, j)] = LinOp(sp, p1[i - 1] @ p1[j - 1],
                                        self_adjoint_hint=True)
    return JointPeirceSystem(sp, trips, projections)


def bergman(b: Element, c: Element) -> LinOp:
    """B(b,c) x = x - 2 {b,c,x} + {b,{c,x,c},b} = (I - b c*) x (I - c* b) blockwise."""
    if b.space != c.space:
        raise ShapeError("operands live in different spaces")
    sp = b.space
    n = sp.complex_dim
    m = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for bb, cb, (p, q) in zip(b.blocks, c.blocks, sp.blocks):
        d = p * q
        left = np.eye(p, dtype=np.complex128) - bb @ cb.conj().T
        right = np.eye(q, dtype=np.complex128) - cb.conj().T @ bb
        m[pos:pos + d, pos:pos + d] = np.kron(right.T, left)
        pos += d
    return LinOp(sp, m)


def _half_power_coeffs(coeffs: np.ndarray, sign: int) -> np.ndarray:
    lam2 = np.abs(np.asarray(coeffs, dtype=complex)) ** 2
    if np.any(lam2 >= 1.0):
        raise OutsideDomainError("frame coefficients must have modulus < 1")
    c = np.sqrt(1.0 - lam2)
    if sign < 0:
        c = 1.0 / c
    return np.concatenate([[1.0], c])


def bergman_half_powers(x: Element, sign: int) -> LinOp:
    """B(x,x)^{+-1/2} via the spectral frame of x and joint Peirce projections.

    Requires ||x|| < 1.  Along approach sequences, where the frame is fixed
    and only the coefficients move, use ``frame_bergman_half`` with a
    prebuilt joint system instead.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if triple_norm(x) >= 1.0:
        raise OutsideDomainError("Bergman half powers need ||x|| < 1")
    fr = spectral_decompose(x)
    if len(fr) == 0:
        return LinOp.identity(x.space)
    system = joint_peirce(fr.tripotents, check=False)
    c = _half_power_coeffs(np.array(fr.coefficients), sign)
    return system.weighted_sum(c)


def frame_bergman_half(system: JointPeirceSystem, coeffs, sign: int) -> LinOp:
    """B(x,x)^{+-1/2} for x = sum coeffs_i e_i on a prebuilt joint system.

    Accepts signed or complex coefficients; only |coeff|^2 enters.
    """
    c = _half_power_coeffs(np.asarray(coeffs, dtype=complex), sign)
    return system.weighted_sum(c)


def mobius(a: Element, x: Element, b_half: LinOp | None = None) -> Element:
    """The transvection g_a(x) = a + B(a,a)^{1/2} (I + x [] a)^{-1} x.

    Maps the open ball to itself with g_a(0) = a and g_{-a}(a) = 0; needs
    ||a|| < 1 and ||x|| < 1 (then ||x [] a|| < 1 and the inverse exists).
    """
    if a.space != x.space:
        raise ShapeError("operands live in different spaces")
    if triple_norm(a) >= 1.0 or triple_norm(x) >= 1.0:
        raise OutsideDomainError("Moebius transformation needs arguments in the open ball")
    if b_half is None:
        b_half = bergman_half_powers(a, +1)
    m = np.eye(a.space.complex_dim) + box_operator(x, a).matrix
    cond = np.linalg.cond(m)
    if cond > _SOLVE_COND_LIMIT:
        warnings.warn(f"ill-conditioned Moebius solve: cond={cond:.3e}",
                      RuntimeWarning, stacklevel=2)
    w = np.linalg.solve(m, x.vec())
    return a + Element.from_vec(a.space, b_half.matrix @ w)


# -- induced operator norm over the spectral unit ball -----------------------

def _block_views(space: TripleSpace, v: np.ndarray) -> list[np.ndarray]:
    out, pos = [], 0
    for p, q in space.blocks:
        out.append(v[pos:pos + p * q].reshape((p, q), order="F"))
        pos += p * q
    return out


def _sup_norm_and_dual(space: TripleSpace, v: np.ndarray) -> tuple[float, np.ndarray]:
    """Norm of an element and a norming functional (top singular pair).

    The dual vector is u1 v1* in the block attaining the max singular value,
    zero elsewhere; it has nuclear norm one.
    """
    blocks = _block_views(space, v)
    best, arg, pair = -1.0, 0, None
    for bi, blk in enumerate(blocks):
        u, s, vh = np.linalg.svd(blk)
        if s[0] > best:
            best, arg, pair = float(s[0]), bi, (u[:, 0], vh[0, :])
    dual = np.zeros(space.complex_dim, dtype=np.complex128)
    views = _block_views(space, dual)
    u1, v1h = pair
    np.copyto(views[arg], np.outer(u1, v1h))
    return best, dual


def _polar_extreme_point(space: TripleSpace, v: np.ndarray) -> np.ndarray:
    """Blockwise polar factor, completed to a maximal tripotent.

    Maximizes Re<g, x> over the unit ball; on each block the maximizer is
    U I V* from the full SVD of the block of g.
    """
    out = np.zeros(space.complex_dim, dtype=np.complex128)
    views = _block_views(space, out)
    for view, blk, (p, q) in zip(views, _block_views(space, v), space.blocks):
        u, _, vh = np.linalg.svd(blk)
        np.copyto(view, u @ np.eye(p, q) @ vh)
    return out


def induced_op_norm(op: LinOp, restarts: int = 32, max_steps: int = 200,
                    seed: int = 0, rel_tol: float = 1e-10,
                    details: bool = False) -> float | OpNormEstimate:
    """sup{ ||T x|| : ||x|| <= 1 } for the spectral sup norm on both sides.

    The supremum of this convex function is attained at an extreme point of
    the ball, i.e. at a maximal tripotent.  Ascent alternates between the
    norming functional of T x and the blockwise polar factor of the adjoint
    image; restarts are seeded extreme points (one canonical start from the
    top right singular vector of the matrix, the rest random).  The returned
    value is the best ascent value, a certified lower bound; the Frobenius
    equivalence gives the upper bound sqrt(rank) * smax.
    """
    m = op.matrix
    space = op.space
    mh = m.conj().T
    smax = float(np.linalg.norm(m, 2))
    upper = np.sqrt(space.rank) * smax
    if smax == 0.0:
        est = OpNormEstimate(0.0, 0.0, restarts, 0)
        return est if details else 0.0

    rng = derive_rng(seed, 0x6F70)
    _, _, vh = np.linalg.svd(m)
    starts = [_polar_extreme_point(space, vh[0, :].conj())]
    while len(starts) < restarts:
        starts.append(random_maximal_tripotent(space, rng).vec())

    best = 0.0
    total_steps = 0
    for x in starts:
        prev = -np.inf
        for _ in range(max_steps):
            total_steps += 1
            y = m @ x
            val, dual = _sup_norm_and_dual(space, y)
            if val > best:
                best = val
            if val <= prev * (1.0 + rel_tol):
                break
            prev = val
            x = _polar_extreme_point(space, mh @ dual)
    est = OpNormEstimate(best, upper, len(starts), total_steps)
    return est if details else best
