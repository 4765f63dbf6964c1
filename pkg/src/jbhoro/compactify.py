"""The dual-ball model of the compactification.

The dual norm of an element is the sum of its spectral coefficients
(nuclear norm across blocks); its unit ball carries boundary faces
F_e = { x : [e,x] = 1 } indexed by tripotents.  The map phi sends the space
into the interior and boundary data onto the boundary, landing in the
relative interior of the face of the support.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NotTripotentError
from .horo_v import BoundaryDatumV
from .space import Element
from .spectral import (is_tripotent, spectral_decompose, tripotent_leq,
                       unique_spectral)
from .triple import normalized_inner

__all__ = [
    "dual_norm",
    "DualBallPoint",
    "dual_ball_point",
    "phi_interior",
    "phi_boundary",
    "face_membership",
    "face_membership_checks",
    "relative_interior_face",
]

_BOUNDARY_TOL = 1e-9
_SUPPORT_COEFF_TOL = 1e-9


def dual_norm(x: Element) -> float:
    """Sum of all singular values over all blocks."""
    return float(sum(np.linalg.svd(b, compute_uv=False).sum() for b in x.blocks))


@dataclass(frozen=True)
class DualBallPoint:
    """A point of the dual unit ball with its norm and boundary flag."""

    element: Element
    norm: float
    boundary: bool


def dual_ball_point(x: Element, boundary_tol: float = _BOUNDARY_TOL) -> DualBallPoint:
    nu = dual_norm(x)
    if nu > 1.0 + boundary_tol:
        raise ValueError(f"dual norm {nu} exceeds 1")
    return DualBallPoint(x, nu, abs(nu - 1.0) <= boundary_tol)


def phi_interior(x: Element) -> DualBallPoint:
    """phi(x) = [sum_i (e^{l_i} - e^{-l_i}) c_i] / [sum_{i=1}^r (e^{l_i} + e^{-l_i})].

    The denominator runs over the full rank r of the space, zero
    coefficients contributing 2 each; the image fills the open dual ball.
    Evaluated with the largest coefficient factored out, so arbitrarily
    large inputs stay finite.
    """
    sp = x.space
    fr = spectral_decompose(x)
    lam = np.array(fr.coefficients)
    m = float(lam[0]) if len(fr) else 0.0
    denom = float(np.sum(np.exp(lam - m) + np.exp(-lam - m))) \
        + 2.0 * np.exp(-m) * (sp.rank - len(fr))
    out = sp.zero()
    for li, e in zip(lam, fr.tripotents):
        out = out + float((np.exp(li - m) - np.exp(-li - m)) / denom) * e
    return dual_ball_point(out)


def phi_boundary(h: BoundaryDatumV) -> DualBallPoint:
    """phi(h) = sum_i e^{-alpha_i} e_i / sum_i e^{-alpha_i}, on the boundary."""
    w = np.exp(-np.array(h.alphas))
    total = float(w.sum())
    out = h.space.zero()
    for wi, e in zip(w, h.tripotents):
        out = out + float(wi / total) * e
    return dual_ball_point(out)


def face_membership_checks(x: Element, e: Element, tol: float = 1e-8) -> tuple[bool, bool]:
    """(metric, structural) verdicts of membership of x in the face of e.

    Metric: dual_norm(x) <= 1 and [e,x] = 1.  Structural: x is a convex
    combination of orthogonal minimal tripotents sitting below e.
    """
    if not is_tripotent(e):
        raise NotTripotentError("faces are indexed by tripotents")
    nu = dual_norm(x)
    pairing = normalized_inner(e, x)
    metric = nu <= 1.0 + tol and abs(pairing - 1.0) < tol
    fr = spectral_decompose(x, zero_tol=_SUPPORT_COEFF_TOL)
    structural = (len(fr) > 0
                  and abs(sum(fr.coefficients) - 1.0) < tol
                  and all(tripotent_leq(c, e) for c in fr.tripotents))
    return metric, structural


def face_membership(x: Element, e: Element, tol: float = 1e-8) -> bool:
    """True iff x lies in the boundary face of the tripotent e.

    Returns the metric verdict; a disagreement with the structural
    description (possible only at tolerance boundaries) is warned about.
    """
    metric, structural = face_membership_checks(x, e, tol)
    if metric != structural:
        warnings.warn(
            f"face membership verdicts disagree (metric={metric}, structural={structural})",
            RuntimeWarning, stacklevel=2)
    return metric


def relative_interior_face(x: Element | DualBallPoint,
                           boundary_tol: float = _BOUNDARY_TOL) -> Element:
    """The face tripotent whose relative interior contains a boundary point.

    For x on the dual sphere this is the sum of its support tripotents
    (coefficients below 1e-9 are treated as zero); each boundary point
    determines exactly one face this way.
    """
    if isinstance(x, DualBallPoint):
        elem, nu = x.element, x.norm
    else:
        elem, nu = x, dual_norm(x)
    if abs(nu - 1.0) > boundary_tol:
        raise ValueError(f"point is not on the dual sphere (norm {nu})")
    grouped = unique_spectral(elem)
    support = None
    for coeff, trip in zip(grouped.coefficients, grouped.tripotents):
        if coeff > _SUPPORT_COEFF_TOL:
            support = trip if support is None else support + trip
    if support is None:
        raise ValueError("boundary point with empty support")
    return support
