"""Horofunctions of the normed space itself: the top-eigenvalue formula,
approach sequences, parts, detour distance and the variation seminorm.

A boundary datum is a frame of orthogonal minimal tripotents e_1..e_p with
weights alpha_i >= 0, min alpha = 0.  Its horofunction is

    h(x) = Lambda_{V_2(e_I)}( -(e_I [] P_2 x + P_2 x [] e_I)/2
                              - sum_i alpha_i (e_i [] e_i) ),

the largest eigenvalue of the compression to the Peirce 2-space of the
support, with respect to the trace inner product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDatumError
from .space import Element, LinOp
from .spectral import frame_sum, is_minimal_tripotent, is_orthogonal
from .triple import (box_operator, quadratic_apply, quadratic_pair_operator,
                     trace_inner, triple_norm)
from .results import DetourCost

__all__ = [
    "BoundaryDatumV",
    "peirce2_basis",
    "lambda_restricted",
    "horofunction_v_eval",
    "approach_sequence_v",
    "approach_functional_v",
    "limit_datum_sequence",
    "same_part_v",
    "datum_v_equal",
    "detour_cost_v",
    "detour_distance_v",
    "variation_seminorm",
]

_SUPPORT_TOL = 1e-7
DIVERGENCE_CUTOFF = 25.0


@dataclass
class BoundaryDatumV:
    """Horofunction datum of the normed space: orthogonal minimal tripotents
    with weights alpha_i >= 0, min alpha = 0, alpha nondecreasing."""

    tripotents: tuple[Element, ...]
    alphas: tuple[float, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __init__(self, tripotents, alphas, validate: bool = True):
        trips = tuple(tripotents)
        a = tuple(float(v) for v in alphas)
        if validate:
            if len(trips) != len(a) or not trips:
                raise InvalidDatumError("frame and weights must be nonempty and aligned")
            for e in trips:
                if not is_minimal_tripotent(e):
                    raise InvalidDatumError("V datum: entries must be minimal tripotents")
            for i in range(len(trips)):
                for j in range(i + 1, len(trips)):
                    if not is_orthogonal(trips[i], trips[j]):
                        raise InvalidDatumError("V datum: tripotents must be mutually orthogonal")
            if min(a) < -1e-12 or abs(min(a)) > 1e-9:
                raise InvalidDatumError("V datum: weights must be >= 0 with min alpha = 0")
        order = np.argsort(a, kind="stable")
        self.tripotents = tuple(trips[i] for i in order)
        self.alphas = tuple(max(0.0, a[i]) for i in order)
        self._cache = {}

    @property
    def space(self):
        return self.tripotents[0].space

    @property
    def p(self) -> int:
        return len(self.tripotents)

    def support(self) -> Element:
        if "support" not in self._cache:
            self._cache["support"] = frame_sum(self.tripotents)
        return self._cache["support"]

    def weighted_sum(self) -> Element:
        x = self.space.zero()
        for ai, e in zip(self.alphas, self.tripotents):
            x = x + ai * e
        return x

    def peirce_basis(self) -> list[Element]:
        if "basis" not in self._cache:
            self._cache["basis"] = peirce2_basis(self.support())
        return self._cache["basis"]

    def weight_operator(self) -> LinOp:
        """sum_i alpha_i (e_i [] e_i), self-adjoint for the trace form."""
        if "weight_op" not in self._cache:
            total = None
            for ai, e in zip(self.alphas, self.tripotents):
                term = ai * box_operator(e, e)
                total = term if total is None else total + term
            total.self_adjoint_hint = True
            self._cache["weight_op"] = total
        return self._cache["weight_op"]


def peirce2_basis(e: Element, sv_tol: float = 1e-8) -> list[Element]:
    """Orthonormal basis of the Peirce 2-space of a tripotent, for <.,.>.

    The range of P_2(e) is extracted rank-revealingly: in coordinates where
    the trace form is standard the projection is Hermitian idempotent, so
    eigenvectors with eigenvalue above the threshold span the range.
    """
    sp = e.space
    s = np.sqrt(sp.inner_weights())
    p2 = quadratic_pair_operator(e, e).matrix
    pw = (p2 * s[:, np.newaxis]) / s[np.newaxis, :]
    evals, evecs = np.linalg.eigh(0.5 * (pw + pw.conj().T))
    keep = evals > max(0.5, sv_tol * float(evals.max(initial=0.0)))
    return [Element.from_vec(sp, evecs[:, i] / s) for i in np.nonzero(keep)[0]]


def _compression(T: LinOp, basis: list[Element], hermit_rtol: float = 1e-9) -> np.ndarray:
    """Hermitian matrix [<T b_j, b_i>] of T on an orthonormal basis.

    Hermitianity within tolerance is asserted (the operator must be
    self-adjoint on the subspace); the Hermitian part is returned.
    """
    m = len(basis)
    images = [T(b) for b in basis]
    h = np.empty((m, m), dtype=np.complex128)
    for j in range(m):
        for i in range(m):
            h[i, j] = trace_inner(images[j], basis[i])
    drift = np.linalg.norm(h - h.conj().T)
    if drift > hermit_rtol * max(1.0, np.linalg.norm(h)):
        raise ValueError(f"compression is not Hermitian within tolerance (drift {drift:.2e})")
    return 0.5 * (h + h.conj().T)


def lambda_restricted(T: LinOp, basis: list[Element], hermit_rtol: float = 1e-9) -> float:
    """Largest eigenvalue of T compressed to the span of an orthonormal basis."""
    return float(np.linalg.eigvalsh(_compression(T, basis, hermit_rtol)).max())


def _horofunction_operator(datum: BoundaryDatumV, x: Element) -> LinOp:
    e = datum.support()
    x2 = quadratic_pair_operator(e, e)(x)
    sym = -0.5 * (box_operator(e, x2) + box_operator(x2, e))
    return sym - datum.weight_operator()


def horofunction_v_eval(datum: BoundaryDatumV, x: Element) -> float:
    """Closed-form horofunction value at x (limit of ||x - a_k|| - ||a_k||)."""
    return lambda_restricted(_horofunction_operator(datum, x), datum.peirce_basis())


def approach_sequence_v(datum: BoundaryDatumV, k: float) -> Element:
    """a_k = k e_I - sum_i alpha_i e_i; for k >= max alpha, ||a_k|| = k."""
    x = datum.space.zero()
    for ai, e in zip(datum.alphas, datum.tripotents):
        x = x + (k - ai) * e
    return x


def approach_sequence_v_threshold(datum: BoundaryDatumV) -> float:
    return max(datum.alphas)


def approach_functional_v(datum: BoundaryDatumV, k: float, x: Element) -> float:
    """h_{a_k}(x) = ||x - a_k|| - ||a_k||, the sequence oracle for the closed form."""
    a_k = approach_sequence_v(datum, k)
    return triple_norm(x - a_k) - triple_norm(a_k)


def limit_datum_sequence(data, divergence_cutoff: float = DIVERGENCE_CUTOFF) -> BoundaryDatumV:
    """Limit of a sequence of data with converging frames and weights.

    Indices whose weights diverge are dropped (divergence of the finite
    sample is decided by the final weight exceeding ``divergence_cutoff``);
    the surviving tripotents and weights are taken from the final datum.
    The minimum of the surviving weights must return to 0, which holds for
    convergent inputs since every datum has min alpha = 0.
    """
    data = list(data)
    if not data:
        raise InvalidDatumError("empty datum sequence")
    sizes = {d.p for d in data}
    if len(sizes) != 1:
        raise InvalidDatumError("data must share frame length")
    last = data[-1]
    keep = [i for i, a in enumerate(last.alphas) if a <= divergence_cutoff]
    if not keep:
        raise InvalidDatumError("all weights diverge: empty limit support")
    alphas = np.array([last.alphas[i] for i in keep])
    if alphas.min() > 1e-6:
        raise InvalidDatumError("surviving weights do not reach 0; inputs not convergent")
    alphas = alphas - alphas.min()
    return BoundaryDatumV([last.tripotents[i] for i in keep], alphas)


def same_part_v(h: BoundaryDatumV, h2: BoundaryDatumV, tol: float = _SUPPORT_TOL) -> bool:
    """Same part of the boundary iff the support tripotents coincide."""
    return triple_norm(h.support() - h2.support()) < tol


def datum_v_equal(h: BoundaryDatumV, h2: BoundaryDatumV, tol: float = _SUPPORT_TOL) -> bool:
    """Horofunction equality: equal supports and equal weighted sums."""
    return (same_part_v(h, h2, tol)
            and triple_norm(h.weighted_sum() - h2.weighted_sum()) < tol)


def detour_cost_v(h: BoundaryDatumV, h2: BoundaryDatumV) -> DetourCost:
    """H(h,h2) = Lambda_{V_2(e_I)}((a - b) [] e_I), infinite across parts."""
    if not same_part_v(h, h2):
        return DetourCost.infinite()
    e = h.support()
    diff = h.weighted_sum() - h2.weighted_sum()
    return DetourCost.of(lambda_restricted(box_operator(diff, e), h.peirce_basis()))


def detour_distance_v(h: BoundaryDatumV, h2: BoundaryDatumV) -> DetourCost:
    """delta(h,h2) = H(h,h2) + H(h2,h); a metric on each part."""
    return detour_cost_v(h, h2) + detour_cost_v(h2, h)


def variation_seminorm(x: Element, e: Element, membership_tol: float = 1e-8) -> float:
    """Spread of x [] e on the Peirce 2-space: lambda_max - lambda_min.

    Defined for x in the self-adjoint part A(e) of the Peirce 2-space
    (Q_e x = x); vanishes exactly on the line R e, and delta on a part of
    the boundary is this seminorm of the weight difference.
    """
    if triple_norm(quadratic_apply(e, x) - x) > membership_tol:
        raise ValueError("x is not in the self-adjoint part A(e)")
    ev = np.linalg.eigvalsh(_compression(box_operator(x, e), peirce2_basis(e)))
    return float(ev.max() - ev.min())
