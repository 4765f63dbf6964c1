"""The Caratheodory distance on the open unit ball and its horofunctions.

The distance is rho(x,y) = atanh ||g_{-x}(y)||.  Boundary data (frames with
weights lambda in (0,1], max lambda = 1) represent horofunctions in closed
form through Bergman operators and joint Peirce projections; every closed
form is cross-checked against the sequence limit along its canonical
approach sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDatumError, OutsideDomainError
from .numerics import power2_ladder, richardson_limit
from .peirce import (JointPeirceSystem, bergman, bergman_half_powers,
                     frame_bergman_half, induced_op_norm, joint_peirce, mobius)
from .results import DetourCost
from .space import Element, LinOp
from .spectral import frame_sum, is_minimal_tripotent, is_orthogonal
from .triple import quadratic_pair_operator, triple_norm

__all__ = [
    "caratheodory_distance",
    "metric_functional_d",
    "BoundaryDatumD",
    "approach_sequence_d",
    "approach_sequence_d_threshold",
    "horofunction_d_eval",
    "geodesic_gamma",
    "geodesic_functional_d",
    "almost_geodesic_defect",
    "same_part_d",
    "datum_d_equal",
    "detour_cost_d",
    "detour_distance_d",
    "SUPPORT_TOL",
]

SUPPORT_TOL = 1e-7
_DETOUR_T_GRID = (4.0, 6.0, 8.0, 10.0, 12.0)
_PLATEAU_TOL = 1e-5


def caratheodory_distance(x: Element, y: Element) -> float:
    """rho(x,y) = atanh ||g_{-x}(y)||; symmetric, zero iff x = y."""
    if triple_norm(x) >= 1.0 or triple_norm(y) >= 1.0:
        raise OutsideDomainError("distance arguments must lie in the open ball")
    n = triple_norm(mobius(-1.0 * x, y))
    if n >= 1.0:
        raise OutsideDomainError(
            "arguments too close to the boundary to resolve the distance")
    return float(np.arctanh(n))


def metric_functional_d(y: Element, z: Element) -> float:
    """Internal metric functional h_y(z) = rho(z,y) - rho(0,y)."""
    if triple_norm(y) >= 1.0 or triple_norm(z) >= 1.0:
        raise OutsideDomainError("metric functional arguments must lie in the open ball")
    return caratheodory_distance(z, y) - float(np.arctanh(triple_norm(y)))


def _validate_frame(tripotents, weights, kind: str) -> None:
    if len(tripotents) != len(weights) or len(tripotents) == 0:
        raise InvalidDatumError(f"{kind}: frame and weights must be nonempty and aligned")
    for e in tripotents:
        if not is_minimal_tripotent(e):
            raise InvalidDatumError(f"{kind}: entries must be minimal tripotents")
    for i in range(len(tripotents)):
        for j in range(i + 1, len(tripotents)):
            if not is_orthogonal(tripotents[i], tripotents[j]):
                raise InvalidDatumError(f"{kind}: tripotents must be mutually orthogonal")


@dataclass
class BoundaryDatumD:
    """Horofunction datum of the ball: orthogonal minimal tripotents e_1..e_p
    with weights lambda_i in (0,1], max lambda = 1, lambda nonincreasing."""

    tripotents: tuple[Element, ...]
    lambdas: tuple[float, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __init__(self, tripotents, lambdas, validate: bool = True):
        trips = tuple(tripotents)
        lams = tuple(float(v) for v in lambdas)
        if validate:
            _validate_frame(trips, lams, "D datum")
            if min(lams) <= 0.0 or max(lams) > 1.0 + 1e-12:
                raise InvalidDatumError("D datum: weights must lie in (0, 1]")
            if abs(max(lams) - 1.0) > 1e-9:
                raise InvalidDatumError("D datum: the largest weight must be 1")
        order = np.argsort([-v for v in lams], kind="stable")
        self.tripotents = tuple(trips[i] for i in order)
        self.lambdas = tuple(lams[i] for i in order)
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

    def weighted_support(self) -> Element:
        x = self.space.zero()
        for lam, e in zip(self.lambdas, self.tripotents):
            x = x + lam * e
        return x

    def alphas(self) -> np.ndarray:
        """Flat coordinates alpha_i = -log lambda_i (min alpha = 0)."""
        return -np.log(np.array(self.lambdas))

    def system(self) -> JointPeirceSystem:
        if "system" not in self._cache:
            self._cache["system"] = joint_peirce(self.tripotents, check=False)
        return self._cache["system"]

    def pair_sum(self) -> LinOp:
        """sum over 1 <= i <= j <= p of lambda_i lambda_j P_ij."""
        if "pair_sum" not in self._cache:
            self._cache["pair_sum"] = self.system().upper_sum(np.array(self.lambdas))
        return self._cache["pair_sum"]


def approach_sequence_d_threshold(datum: BoundaryDatumD) -> int:
    """Least k making every radicand of the approach sequence positive."""
    lam = np.array(datum.lambdas)
    # k^2 lam^2 - 2k + 1 > 0  <=>  k > (1 + sqrt(1 - lam^2)) / lam^2
    bound = (1.0 + np.sqrt(np.maximum(0.0, 1.0 - lam ** 2))) / lam ** 2
    return int(np.floor(bound.max())) + 1


def approach_sequence_d(datum: BoundaryDatumD, k: int) -> Element:
    """y_k = sum_i sqrt(1 - (2k-1)/(k^2 lambda_i^2)) e_i, converging to the datum.

    For lambda_1 = 1 the leading coefficient is exactly 1 - 1/k, so
    1 - ||y_k||^2 = (2k-1)/k^2.
    """
    kmin = approach_sequence_d_threshold(datum)
    if k < kmin:
        raise ValueError(f"k={k} below the positivity threshold {kmin}")
    coeffs = _approach_coeffs_d(datum, k)
    x = datum.space.zero()
    for c, e in zip(coeffs, datum.tripotents):
        x = x + float(c) * e
    return x


def _approach_coeffs_d(datum: BoundaryDatumD, k: int) -> np.ndarray:
    lam = np.array(datum.lambdas)
    return np.sqrt(1.0 - (2.0 * k - 1.0) / (k * k * lam * lam))


def horofunction_d_eval(datum: BoundaryDatumD, z: Element, method: str = "induced_norm",
                        kmax_exp: int = 20, rel_tol: float = 1e-6,
                        diagnostics: bool = False):
    """Evaluate the horofunction of a boundary datum at z in the open ball.

    induced_norm: half of the log of the norm of
        sum_{1<=i<=j<=p} lambda_i lambda_j B(z,z)^{-1/2} B(z,e) P_ij.
    extrapolate: the accelerated limit of
        (1 - ||y_k||^2) / (1 - ||g_{-y_k}(z)||^2)
    along the canonical approach sequence (a sequence oracle needing only
    Moebius images and singular values).  The two agree within the
    documented tolerance of the acceptance suite.
    """
    if triple_norm(z) >= 1.0:
        raise OutsideDomainError("evaluation point must lie in the open ball")
    if method == "induced_norm":
        op = _closed_form_operator(datum, z)
        norm = induced_op_norm(op)
        value = 0.5 * math.log(norm)
        return (value, {"method": method, "norm": norm}) if diagnostics else value
    if method == "extrapolate":
        system = datum.system()

        def ratio(k: int) -> float:
            coeffs = _approach_coeffs_d(datum, k)
            b_half = frame_bergman_half(system, coeffs, +1)
            y = datum.space.zero()
            for c, e in zip(coeffs, datum.tripotents):
                y = y + float(c) * e
            g = mobius(-1.0 * y, z, b_half=b_half)
            one_minus_yk = (2.0 * k - 1.0) / (k * k)
            return one_minus_yk / (1.0 - triple_norm(g) ** 2)

        ks = power2_ladder(4, kmax_exp, k_min=approach_sequence_d_threshold(datum))
        limit, diag = richardson_limit(ratio, ks, rel_tol=rel_tol)
        value = 0.5 * math.log(limit)
        diag["method"] = method
        return (value, diag) if diagnostics else value
    raise ValueError(f"unknown method {method!r}")


def _closed_form_operator(datum: BoundaryDatumD, z: Element) -> LinOp:
    bneg = bergman_half_powers(z, -1)
    return bneg @ bergman(z, datum.support()) @ datum.pair_sum()


# -- geodesics in flats ------------------------------------------------------

def geodesic_gamma(tripotents, alphas, t: float, check: bool = True) -> Element:
    """gamma(t) = sum_i tanh(t - alpha_i) e_i, a geodesic ray from 0.

    Needs an orthogonal frame of minimal tripotents and weights with
    min alpha = 0; then rho(gamma(s), gamma(t)) = |t - s| and gamma
    converges to the horofunction with lambda_i = exp(-alpha_i).
    """
    trips = tuple(tripotents)
    a = np.asarray(alphas, dtype=float)
    if check:
        if len(trips) != a.size or len(trips) == 0:
            raise InvalidDatumError("frame and weights must be nonempty and aligned")
        if abs(a.min()) > 1e-9 or np.any(a < -1e-9):
            raise InvalidDatumError("weights must be >= 0 with min alpha = 0")
        for i in range(len(trips)):
            for j in range(i + 1, len(trips)):
                if not is_orthogonal(trips[i], trips[j]):
                    raise InvalidDatumError("frame must be mutually orthogonal")
    x = trips[0].space.zero()
    for ai, e in zip(a, trips):
        x = x + float(np.tanh(t - ai)) * e
    return x


def _stable_cosh_ratio(t: float, alpha: float) -> float:
    # cosh(t - alpha) / cosh(t), exact for arbitrarily large t
    return (math.exp(-alpha) + math.exp(alpha - 2.0 * t)) / (1.0 + math.exp(-2.0 * t))


def geodesic_functional_d(tripotents, alphas, t: float, z: Element,
                          system: JointPeirceSystem | None = None) -> float:
    """h_{gamma(t)}(z) for the geodesic of a frame, stable for large t.

    For moderate t the direct definition rho(z, gamma(t)) - rho(0, gamma(t))
    is used (a pure Moebius/singular-value oracle).  Beyond the range where
    1 - tanh(t)^2 is representable the evaluation switches to

        1/2 log( || sum c_i(t) c_j(t) B(z,z)^{-1/2} B(z,gamma(t)) P_ij ||
                 * ((1 + ||g||) / (1 + tanh t))^2 ),

    with c_i(t) = cosh(t - alpha_i)/cosh(t) evaluated in exp form, which is
    exact to double precision for any t.
    """
    a = np.asarray(alphas, dtype=float)
    if t <= 15.0:
        return metric_functional_d(geodesic_gamma(tripotents, a, t, check=False), z)

    trips = tuple(tripotents)
    if system is None:
        system = joint_peirce(trips, check=False)
    gamma_t = geodesic_gamma(trips, a, t, check=False)
    tanh_t = math.tanh(t)
    sech2_t = (2.0 * math.exp(-t) / (1.0 + math.exp(-2.0 * t))) ** 2
    c = np.array([math.sqrt(sech2_t)] + [_stable_cosh_ratio(t, ai) for ai in a])
    scaled = system.weighted_sum(c)
    op = bergman_half_powers(z, -1) @ bergman(z, gamma_t) @ scaled
    n_scaled = induced_op_norm(op)
    g_norm = math.sqrt(max(0.0, 1.0 - sech2_t / n_scaled))
    return 0.5 * math.log(n_scaled * ((1.0 + g_norm) / (1.0 + tanh_t)) ** 2)


def almost_geodesic_defect(points, n: int, m: int) -> float:
    """d(x_n,x_m) + d(x_m,x_0) - d(x_n,x_0); zero along geodesics."""
    pts = list(points)
    if not (0 <= m <= n < len(pts)):
        raise IndexError("need 0 <= m <= n < len(points)")
    return (caratheodory_distance(pts[n], pts[m])
            + caratheodory_distance(pts[m], pts[0])
            - caratheodory_distance(pts[n], pts[0]))


# -- parts and detour distance on the boundary ------------------------------

def same_part_d(h: BoundaryDatumD, h2: BoundaryDatumD,
                tol: float = SUPPORT_TOL) -> bool:
    """Two data lie in the same part iff their support tripotents coincide."""
    return triple_norm(h.support() - h2.support()) < tol


def datum_d_equal(h: BoundaryDatumD, h2: BoundaryDatumD,
                  tol: float = SUPPORT_TOL) -> bool:
    """Equality criterion: equal supports and equal weighted sums."""
    return (same_part_d(h, h2, tol)
            and triple_norm(h.weighted_support() - h2.weighted_support()) < tol)


def detour_cost_d(h: BoundaryDatumD, h2: BoundaryDatumD, method: str = "closed",
                  diagnostics: bool = False):
    """Detour cost H(h,h2) on the boundary of the ball.

    Infinite (explicitly flagged) when the supports differ.  Otherwise the
    closed method returns half the log of the induced norm of
    Q_{a^{-1}} Q_e Q_b Q_e on the Peirce 2-space of the common support
    (a, b the weighted supports); the limit method evaluates
    lim_t t + h2(gamma(t)) along the geodesic of h on a fixed t grid and
    fits the plateau.
    """
    if not same_part_d(h, h2):
        out = DetourCost.infinite()
        return (out, {"reason": "supports differ"}) if diagnostics else out
    e = h.support()
    if method == "closed":
        a_inv = h.space.zero()
        for lam, trip in zip(h.lambdas, h.tripotents):
            a_inv = a_inv + (1.0 / lam) * trip
        b = h2.weighted_support()
        op = quadratic_pair_operator(a_inv, e) @ quadratic_pair_operator(b, e)
        norm = induced_op_norm(op)
        out = DetourCost.of(0.5 * math.log(norm))
        return (out, {"method": method, "norm": norm}) if diagnostics else out
    if method == "limit":
        alphas = h.alphas()
        system = h.system()
        pair2 = h2.pair_sum()
        c_elem = h2.support()
        values = []
        for t in _DETOUR_T_GRID:
            cosh_coeffs = np.array([1.0] + [math.cosh(t - ai) for ai in alphas])
            bneg = system.weighted_sum(cosh_coeffs)
            gamma_t = geodesic_gamma(h.tripotents, alphas, t, check=False)
            op = bneg @ bergman(gamma_t, c_elem) @ pair2
            values.append(t + 0.5 * math.log(induced_op_norm(op)))
        value, diag = _plateau_fit(np.array(_DETOUR_T_GRID), np.array(values))
        diag["method"] = method
        out = DetourCost.of(value)
        return (out, diag) if diagnostics else out
    raise ValueError(f"unknown method {method!r}")


def _plateau_fit(ts: np.ndarray, vs: np.ndarray) -> tuple[float, dict]:
    """Linear fit over the plateau of t + h'(gamma(t)).

    The sequence converges exponentially in t, but for large t the operator
    product spans a dynamic range of exp(4t) and double precision corrupts
    the tail, so the plateau is the longest run of consecutive steps smaller
    than the tolerance, not the final values.
    """
    diffs = np.abs(np.diff(vs))
    flat = diffs < _PLATEAU_TOL
    best_len, best_end, run = 0, 0, 0
    for i, is_flat in enumerate(flat):
        run = run + 1 if is_flat else 0
        if run >= best_len and run > 0:
            best_len, best_end = run, i + 1
    if best_len == 0:
        j = int(np.argmin(diffs))
        sel = slice(j, j + 2)
        note = "no converged plateau; using the flattest step"
    else:
        sel = slice(best_end - best_len, best_end + 1)
        note = ""
    slope, intercept = np.polyfit(ts[sel], vs[sel], 1)
    value = float(slope * ts[sel][-1] + intercept)
    return value, {"slope": float(slope), "values": vs.tolist(),
                   "plateau_ts": ts[sel].tolist(), "note": note}


def detour_distance_d(h: BoundaryDatumD, h2: BoundaryDatumD,
                      method: str = "closed") -> DetourCost:
    """Symmetrized detour distance delta = H(h,h2) + H(h2,h)."""
    return detour_cost_d(h, h2, method) + detour_cost_d(h2, h, method)
