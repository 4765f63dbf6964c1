"""Spectral decompositions into weighted frames of minimal tripotents.

On a block M_{p,q} the decomposition is the singular value decomposition:
x = sum_i sigma_i u_i v_i*, with each u_i v_i* a minimal tripotent.  For a
direct sum the per-block contributions are merged and sorted by coefficient.
The coefficients are unique; the tripotents are not when coefficients
repeat, so canonical comparisons go through grouped decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotTripotentError
from .space import Element, TripleSpace
from .triple import box_operator, quadratic_pair_operator, triple_norm, triple_product

__all__ = [
    "Frame",
    "GroupedFrame",
    "spectral_decompose",
    "unique_spectral",
    "frame_sum",
    "is_tripotent",
    "is_minimal_tripotent",
    "is_orthogonal",
    "tripotent_leq",
    "GROUPING_TOL",
]

GROUPING_TOL = 1e-8
_ZERO_TOL = 1e-12
_ORTH_TOL = 1e-9


@dataclass(frozen=True)
class Frame:
    """Nonincreasing coefficients paired with orthogonal minimal tripotents."""

    coefficients: tuple[float, ...]
    tripotents: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.coefficients)

    def reconstruct(self, space: TripleSpace) -> Element:
        x = space.zero()
        for lam, e in zip(self.coefficients, self.tripotents):
            x = x + lam * e
        return x


@dataclass(frozen=True)
class GroupedFrame:
    """Strictly decreasing coefficients with (not necessarily minimal) tripotents.

    Groups collect equal coefficients of a plain frame; both the coefficients
    and the grouped tripotents are unique, which makes this the canonical
    comparator for decompositions.
    """

    coefficients: tuple[float, ...]
    tripotents: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.coefficients)


def spectral_decompose(x: Element, zero_tol: float = _ZERO_TOL) -> Frame:
    """Decompose x as sum of sigma_i e_i, coefficients sorted nonincreasing.

    Coefficients below ``zero_tol`` are dropped together with their
    tripotents.  Within a block the tripotents are built from the singular
    vectors, so they are mutually orthogonal; across blocks orthogonality is
    automatic.
    """
    sp = x.space
    entries: list[tuple[float, int, np.ndarray, np.ndarray]] = []
    for bi, blk in enumerate(x.blocks):
        u, s, vh = np.linalg.svd(blk)
        for i, sigma in enumerate(s):
            if sigma > zero_tol:
                entries.append((float(sigma), bi, u[:, i], vh[i, :].conj()))
    entries.sort(key=lambda t: -t[0])
    coeffs, trips = [], []
    for sigma, bi, u, v in entries:
        blocks = [np.zeros(shape, dtype=np.complex128) for shape in sp.blocks]
        blocks[bi] = np.outer(u, v.conj())
        coeffs.append(sigma)
        trips.append(Element(sp, blocks))
    return Frame(tuple(coeffs), tuple(trips))


def unique_spectral(x: Element, grouping_tol: float = GROUPING_TOL) -> GroupedFrame:
    """Group frame entries whose coefficients differ by less than the tolerance.

    The grouped tripotents are sums of the minimal ones in each group and are
    unique even when the minimal decomposition is not.
    """
    fr = spectral_decompose(x)
    coeffs, trips = [], []
    i = 0
    while i < len(fr):
        j = i
        total = fr.tripotents[i]
        while j + 1 < len(fr) and fr.coefficients[i] - fr.coefficients[j + 1] < grouping_tol:
            j += 1
            total = total + fr.tripotents[j]
        coeffs.append(float(np.mean(fr.coefficients[i:j + 1])))
        trips.append(total)
        i = j + 1
    return GroupedFrame(tuple(coeffs), tuple(trips))


def frame_sum(tripotents) -> Element:
    """Sum of a family of tripotents (their common support when orthogonal)."""
    trips = list(tripotents)
    if not trips:
        raise ValueError("empty tripotent family")
    total = trips[0]
    for e in trips[1:]:
        total = total + e
    return total


def is_tripotent(e: Element, tol: float = 1e-9) -> bool:
    return triple_norm(triple_product(e, e, e) - e) < tol


def is_minimal_tripotent(e: Element, tol: float = 1e-9) -> bool:
    """Tripotent whose Peirce 2-space is one dimensional.

    The 2-projection Q_e^2 is idempotent, so its rank equals its trace.
    """
    if not is_tripotent(e, tol):
        return False
    tr = np.trace(quadratic_pair_operator(e, e).matrix).real
    return abs(tr - 1.0) < 1e-6


def is_orthogonal(a: Element, b: Element, tol: float = _ORTH_TOL) -> bool:
    """True iff the box operator a [] b vanishes."""
    m = box_operator(a, b).matrix
    return bool(np.linalg.norm(m, 2) < tol)


def tripotent_leq(c: Element, e: Element, tol: float = 1e-7) -> bool:
    """Order on tripotents: c <= e iff P_2(c) e = c.

    Equivalently e - c is a tripotent orthogonal to c, or
    {c,e,c} + {c,c,e} = 2c, or B(e,c) kills the Peirce 2-space of c.
    """
    for name, x in (("c", c), ("e", e)):
        if not is_tripotent(x):
            raise NotTripotentError(f"argument {name} is not a tripotent")
    projected = quadratic_pair_operator(c, c)(e)
    return triple_norm(projected - c) < tol
