"""Sequence acceleration for the approach-sequence ladders.

The canonical boundary sequences converge with an O(1/k) gap, so the ladders
run over k = 2^j and apply one order of Richardson acceleration in 1/k:
with F_j evaluated at k = 2^j, the combination 2 F_{j+1} - F_j cancels the
1/k term exactly.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import NonConvergenceError

__all__ = ["power2_ladder", "richardson_limit"]


def power2_ladder(lo_exp: int, hi_exp: int, k_min: float = 0.0) -> list[int]:
    """Powers of two 2^lo..2^hi, dropping entries below ``k_min``."""
    ks = [2 ** j for j in range(lo_exp, hi_exp + 1)]
    return [k for k in ks if k >= k_min]


def richardson_limit(
    fn: Callable[[int], float],
    ks: Sequence[int],
    rel_tol: float = 1e-6,
) -> tuple[float, dict]:
    """Accelerated limit of fn(k) along a doubling ladder, evaluated lazily.

    Stops as soon as two successive accelerated values agree to ``rel_tol``
    (relative to max(1, |value|)); raises NonConvergenceError with the
    partial ladder otherwise.
    """
    if len(ks) < 3:
        raise NonConvergenceError("ladder too short for acceleration", ladder=list(ks))
    raw: list[float] = []
    accel: list[float] = []
    for j, k in enumerate(ks):
        raw.append(float(fn(k)))
        if j >= 1:
            accel.append(2.0 * raw[j] - raw[j - 1])
        if len(accel) >= 2:
            a, b = accel[-2], accel[-1]
            if abs(b - a) < rel_tol * max(1.0, abs(b)):
                diag = {"ks": list(ks[:j + 1]), "raw": raw, "accelerated": accel,
                        "converged": True}
                return accel[-1], diag
    raise NonConvergenceError(
        f"ladder did not converge to rel_tol={rel_tol} by k={ks[-1]}",
        ladder=list(zip(ks, raw)),
    )
