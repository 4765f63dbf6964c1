"""Seeded randomized verification suites behind `jbh verify`.

Each suite samples a desk-scale family of spaces (blocks up to 4x4 and
two-block sums) and checks the closed-form identities against independent
routes: sequence oracles for horofunction formulas, singular-value
computations for spectral claims, eigenvalue tables for detour costs.
Reports are deterministic for a fixed seed; trials derive their generators
from (seed, trial index) counters.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np

from . import compactify, exp_bridge, horo_v, metric_d, peirce, triple
from .horo_v import BoundaryDatumV
from .metric_d import BoundaryDatumD
from .numerics import power2_ladder, richardson_limit
from .sampling import derive_rng, random_element, random_frame
from .space import TripleSpace
from .spectral import frame_sum
from .triple import (box_operator, quadratic_pair_operator, spectral_op_norm,
                     trace_inner, triple_norm, triple_product)

__all__ = ["SUITE_NAMES", "run_suite", "run_report"]

SUITE_NAMES = ("axioms", "peirce", "horo-d", "horo-v", "phi", "detour", "exp")

REPORT_SCHEMA = "jbh-report/1"

_AXIOM_SPACES = (
    TripleSpace(((2, 2),)),
    TripleSpace(((2, 3),)),
    TripleSpace(((3, 3),)),
    TripleSpace(((4, 3),)),
    TripleSpace(((2, 2), (1, 3))),
)
_HORO_SPACES = (
    TripleSpace(((2, 2),)),
    TripleSpace(((2, 3),)),
    TripleSpace(((3, 3),)),
    TripleSpace(((4, 4),)),
    TripleSpace(((2, 2), (1, 3))),
)
_DISC = TripleSpace(((1, 1),))
_EUCLIDEAN = TripleSpace(((3, 1),))


@dataclass
class PropertyResult:
    name: str
    passed: bool
    max_residual: float
    p95_residual: float
    trials: int
    tolerance: float
    note: str = ""


def _result(name: str, residuals, tol: float, note: str = "") -> PropertyResult:
    r = np.asarray(list(residuals), dtype=float)
    if r.size == 0:
        return PropertyResult(name, True, 0.0, 0.0, 0, tol, note or "no trials")
    return PropertyResult(
        name=name,
        passed=bool(np.nanmax(r) < tol),
        max_residual=float(np.nanmax(r)),
        p95_residual=float(np.percentile(r, 95)),
        trials=int(r.size),
        tolerance=tol,
        note=note,
    )


def _space_for(trial: int, spaces) -> TripleSpace:
    return spaces[trial % len(spaces)]


def _random_datum_v(sp: TripleSpace, rng, alpha_max: float = 3.0,
                    length: int | None = None) -> BoundaryDatumV:
    if length is None:
        length = int(rng.integers(1, sp.rank + 1))
    frame = random_frame(sp, rng, length)
    alphas = np.concatenate([[0.0], rng.uniform(0.0, alpha_max, length - 1)])
    return BoundaryDatumV(frame, alphas, validate=False)


def _random_datum_d(sp: TripleSpace, rng, lam_min: float = 0.25,
                    length: int | None = None) -> BoundaryDatumD:
    if length is None:
        length = int(rng.integers(1, sp.rank + 1))
    frame = random_frame(sp, rng, length)
    lams = np.concatenate([[1.0], rng.uniform(lam_min, 1.0, length - 1)])
    return BoundaryDatumD(frame, lams, validate=False)


# -- axioms -------------------------------------------------------------------

def _suite_axioms(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    jordan, cube, boxsq, orth, herm, contr, norm_ax = [], [], [], [], [], [], []
    trace_form, normalized = [], []
    for t in range(trials):
        rng = derive_rng(seed, 1, t)
        sp = _space_for(t, _AXIOM_SPACES)
        a, b, x, y, z = (random_element(sp, rng, norm=rng.uniform(0.2, 1.0))
                         for _ in range(5))
        lhs = triple_product(a, b, triple_product(x, y, z))
        rhs = (triple_product(triple_product(a, b, x), y, z)
               - triple_product(x, triple_product(b, a, y), z)
               + triple_product(x, y, triple_product(a, b, z)))
        jordan.append(triple_norm(lhs - rhs))
        cube.append(abs(triple_norm(triple_product(a, a, a)) - triple_norm(a) ** 3))
        boxsq.append(abs(spectral_op_norm(box_operator(a, a)) - triple_norm(a) ** 2))
        herm.append(max(0.0, -float(triple.hermitian_eigenvalues(box_operator(a, a)).min())))
        contr.append(max(0.0, triple_norm(triple_product(a, b, x))
                         - triple_norm(a) * triple_norm(b) * triple_norm(x)))
        fr = random_frame(sp, rng, 2)
        oa, ob = rng.uniform(0.2, 1.5) * fr[0], rng.uniform(0.2, 1.5) * fr[1]
        orth.append(abs(triple_norm(oa + ob) - max(triple_norm(oa), triple_norm(ob))))
        norm_ax.append(max(
            max(0.0, triple_norm(a + b) - triple_norm(a) - triple_norm(b)),
            abs(triple_norm(2.5 * a) - 2.5 * triple_norm(a)),
        ))
        # trace form against the trace of the materialized box operator
        m = box_operator(x, y).matrix
        trace_form.append(abs(np.trace(m) - trace_inner(x, y)))
        c, d = random_frame(sp, rng, 2)
        normalized.append(max(abs(triple.normalized_inner(c, c) - 1.0),
                              abs(triple.normalized_inner(c, d))))
    return [
        _result("jordan_triple_identity", jordan, 1e-10),
        _result("cube_norm_identity", cube, 1e-10),
        _result("box_norm_is_norm_squared", boxsq, 1e-10),
        _result("orthogonal_norm_law", orth, 1e-10),
        _result("box_self_nonnegative_spectrum", herm, 1e-12),
        _result("triple_product_contractive", contr, 1e-12),
        _result("norm_axioms", norm_ax, 1e-12),
        _result("trace_form_matches_operator_trace", trace_form, 1e-10),
        _result("normalized_form_on_minimal_tripotents", normalized, 1e-12),
    ]


# -- peirce / bergman ---------------------------------------------------------

def _suite_peirce(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    idem, annih, complete, pijek, p2sum, arith, eigtable = [], [], [], [], [], [], []
    bid2, bid, hh, halfsq, mob, hhh, projnorm = [], [], [], [], [], [], []
    for t in range(trials):
        rng = derive_rng(seed, 2, t)
        sp = _space_for(t, _HORO_SPACES)
        n = int(rng.integers(1, sp.rank + 1))
        frame = random_frame(sp, rng, n)
        system = peirce.joint_peirce(frame, check=False)
        eye = np.eye(sp.complex_dim)
        total = np.zeros_like(eye, dtype=np.complex128)
        pairs = system.pairs()
        worst_idem = worst_annih = 0.0
        for pr in pairs:
            m = system.projections[pr].matrix
            total += m
            worst_idem = max(worst_idem, np.linalg.norm(m @ m - m, 2))
            for pr2 in pairs:
                if pr2 != pr:
                    m2 = system.projections[pr2].matrix
                    worst_annih = max(worst_annih, np.linalg.norm(m @ m2, 2))
        idem.append(worst_idem)
        annih.append(worst_annih)
        complete.append(np.linalg.norm(total - eye, 2))
        worst = 0.0
        for j in range(n + 1):
            for i in range(j + 1):
                pm = system.projections[(i, j)]
                for k, e in enumerate(frame, start=1):
                    target = e if (i == j == k) else sp.zero()
                    worst = max(worst, triple_norm(pm(e) - target))
        pijek.append(worst)
        # Peirce 2-space of a subset sum
        size = int(rng.integers(1, n + 1))
        subset = sorted(rng.permutation(n)[:size] + 1)
        e_n = frame_sum([frame[i - 1] for i in subset])
        lhs = quadratic_pair_operator(e_n, e_n).matrix
        rhs = np.zeros_like(lhs)
        for i in subset:
            for j in subset:
                if i <= j:
                    rhs += system.projections[(i, j)].matrix
        p2sum.append(np.linalg.norm(lhs - rhs, 2))
        # {V2, V0, V} = 0
        e = frame[0]
        p2 = peirce.peirce_projection(e, 2)
        p0 = peirce.peirce_projection(e, 0)
        u, v, w = (random_element(sp, rng) for _ in range(3))
        arith.append(triple_norm(triple_product(p2(u), p0(v), w)))
        ev = triple.hermitian_eigenvalues(box_operator(e, e))
        eigtable.append(float(np.abs(ev - np.round(2 * ev) / 2).max()))
        # Bergman identities
        z = random_element(sp, rng, norm=rng.uniform(0.3, 0.8))
        y = random_element(sp, rng, norm=rng.uniform(0.3, 0.8))
        bneg = peirce.bergman_half_powers(z, -1)
        exact = 1.0 / (1.0 - triple_norm(z) ** 2)
        bid2.append(abs(peirce.induced_op_norm(bneg) - exact) / exact)
        op = bneg @ peirce.bergman(z, y) @ peirce.bergman_half_powers(y, -1)
        lhs_bid = 1.0 - triple_norm(peirce.mobius(-1.0 * y, z)) ** 2
        rhs_bid = 1.0 / peirce.induced_op_norm(op)
        bid.append(abs(lhs_bid - rhs_bid) / abs(rhs_bid))
        bh = peirce.bergman_half_powers(z, +1)
        halfsq.append(np.linalg.norm((bh @ bh).matrix - peirce.bergman(z, z).matrix, 2))
        av = random_element(sp, rng, norm=rng.uniform(0.2, 0.7))
        mob.append(max(triple_norm(peirce.mobius(av, sp.zero()) - av),
                       triple_norm(peirce.mobius(-1.0 * av, av))))
        # Euclidean-ball law on a q=1 space
        rngE = derive_rng(seed, 2, t, 5)
        ye = random_element(_EUCLIDEAN, rngE, norm=rngE.uniform(0.2, 0.9))
        ze = random_element(_EUCLIDEAN, rngE, norm=rngE.uniform(0.2, 0.9))
        g = peirce.mobius(-1.0 * ye, ze)
        yv, zv = ye.blocks[0][:, 0], ze.blocks[0][:, 0]
        rhs_hh = ((1 - np.vdot(yv, yv).real) * (1 - np.vdot(zv, zv).real)
                  / abs(1 - np.vdot(zv, yv)) ** 2)
        hh.append(abs(1 - triple_norm(g) ** 2 - rhs_hh))
        # boundary collapse of Moebius images
        xi = frame[0]
        yk = (1.0 - 1e-6) * xi
        hhh.append(abs(1.0 - triple_norm(peirce.mobius(-1.0 * yk, z))))
        lam = float(rng.uniform(0.5, 2.0))
        projnorm.append(abs(peirce.induced_op_norm(lam * p2) - lam) / lam)
    return [
        _result("joint_projections_idempotent", idem, 1e-10),
        _result("joint_projections_mutually_annihilating", annih, 1e-10),
        _result("joint_projections_complete", complete, 1e-10),
        _result("projections_on_frame_members", pijek, 1e-10),
        _result("peirce2_of_subset_sum", p2sum, 1e-10),
        _result("peirce_two_zero_product_rule", arith, 1e-10),
        _result("box_eigenvalues_half_integer", eigtable, 1e-10),
        _result("neg_half_power_norm_formula", bid2, 1e-6),
        _result("mobius_bergman_norm_identity", bid, 1e-5),
        _result("euclidean_ball_law", hh, 1e-10),
        _result("half_power_squares_to_bergman", halfsq, 1e-9),
        _result("mobius_base_point_laws", mob, 1e-10),
        _result("mobius_boundary_collapse", hhh, 1e-3),
        _result("scaled_projection_induced_norm", projnorm, 1e-8),
    ]


# -- horofunctions of the ball -----------------------------------------------

def _suite_horo_d(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    round_trip, disc_case, eucl_case, d2_eq, h0, triangle = [], [], [], [], [], []
    n_data = max(1, trials // 5)
    for t in range(n_data):
        rng = derive_rng(seed, 3, t)
        sp = _space_for(t, _HORO_SPACES)
        datum = _random_datum_d(sp, rng)
        for _ in range(5):
            z = random_element(sp, rng, norm=rng.uniform(0.1, 0.8))
            closed = metric_d.horofunction_d_eval(datum, z, "induced_norm")
            ladder = metric_d.horofunction_d_eval(datum, z, "extrapolate",
                                                  kmax_exp=kmax_exp)
            round_trip.append(abs(closed - ladder))
        h0.append(abs(metric_d.horofunction_d_eval(datum, sp.zero(), "induced_norm")))
        # the two sequence-limit expressions agree along the approach sequence
        k = 2 ** 12
        y_k = metric_d.approach_sequence_d(datum, k)
        z = random_element(sp, rng, norm=0.6)
        one_minus = 1.0 - triple_norm(y_k) ** 2
        f1 = one_minus / (1.0 - triple_norm(peirce.mobius(-1.0 * y_k, z)) ** 2)
        f2 = one_minus / (1.0 - triple_norm(peirce.mobius(-1.0 * z, y_k)) ** 2)
        d2_eq.append(abs(0.5 * np.log(f1) - 0.5 * np.log(f2)))
    for t in range(trials):
        rng = derive_rng(seed, 3, t, 1)
        # disc closed form
        one = _DISC.matrix_unit(0, 0, 0)
        phase = np.exp(2j * np.pi * rng.uniform())
        datum = BoundaryDatumD([phase * one], [1.0], validate=False)
        zc = rng.uniform(0.05, 0.9) * np.exp(2j * np.pi * rng.uniform())
        z = zc * one
        xi = phase
        exact = 0.5 * np.log(abs(xi - zc) ** 2 / (1 - abs(zc) ** 2))
        disc_case.append(abs(metric_d.horofunction_d_eval(datum, z, "induced_norm") - exact))
        # Euclidean ball closed form, both methods
        rngE = derive_rng(seed, 3, t, 2)
        frame = random_frame(_EUCLIDEAN, rngE, 1)
        datum_e = BoundaryDatumD(frame, [1.0], validate=False)
        ze = random_element(_EUCLIDEAN, rngE, norm=rngE.uniform(0.1, 0.8))
        xiv, zv = frame[0].blocks[0][:, 0], ze.blocks[0][:, 0]
        exact_e = 0.5 * np.log(abs(1 - np.vdot(xiv, zv)) ** 2
                               / (1 - np.vdot(zv, zv).real))
        eucl_case.append(max(
            abs(metric_d.horofunction_d_eval(datum_e, ze, "induced_norm") - exact_e),
            abs(metric_d.horofunction_d_eval(datum_e, ze, "extrapolate",
                                             kmax_exp=kmax_exp) - exact_e)))
        # metric axioms of the distance
        sp = _space_for(t, _HORO_SPACES)
        rngT = derive_rng(seed, 3, t, 3)
        pts = [random_element(sp, rngT, norm=rngT.uniform(0.1, 0.85)) for _ in range(3)]
        d01 = metric_d.caratheodory_distance(pts[0], pts[1])
        d12 = metric_d.caratheodory_distance(pts[1], pts[2])
        d02 = metric_d.caratheodory_distance(pts[0], pts[2])
        sym = abs(d01 - metric_d.caratheodory_distance(pts[1], pts[0]))
        base = abs(metric_d.caratheodory_distance(sp.zero(), pts[0])
                   - np.arctanh(triple_norm(pts[0])))
        triangle.append(max(max(0.0, d02 - d01 - d12), sym, base))
    return [
        _result("closed_form_vs_sequence_limit", round_trip, 1e-4),
        _result("disc_special_case", disc_case, 1e-8),
        _result("euclidean_ball_special_case", eucl_case, 1e-6),
        _result("two_limit_expressions_agree", d2_eq, 1e-6),
        _result("base_point_normalization", h0, 1e-9),
        _result("distance_metric_axioms", triangle, 1e-10),
    ]


# -- horofunctions of the normed space ---------------------------------------

def _suite_horo_v(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    round_trip, rm, linear, lower, lip, basis_inv = [], [], [], [], [], []
    for t in range(trials):
        rng = derive_rng(seed, 4, t)
        sp = _space_for(t, _HORO_SPACES)
        datum = _random_datum_v(sp, rng)
        x = random_element(sp, rng, norm=rng.uniform(0.5, 3.0))
        closed = horo_v.horofunction_v_eval(datum, x)
        limit, _ = richardson_limit(
            lambda k: horo_v.approach_functional_v(datum, k, x),
            power2_ladder(6, kmax_exp))
        round_trip.append(abs(closed - limit))
        m = float(rng.uniform(0.5, 4.0))
        rm.append(abs(horo_v.horofunction_v_eval(datum, horo_v.approach_sequence_v(datum, m)) + m))
        # p = 1: the horofunction is -Re of the coordinate functional
        d1 = _random_datum_v(sp, rng, length=1)
        e = d1.tripotents[0]
        ell = triple.normalized_inner(quadratic_pair_operator(e, e)(x), e)
        linear.append(abs(horo_v.horofunction_v_eval(d1, x) + ell.real))
        # lower bound along the canonical sequence
        k = 2 ** int(rng.integers(6, 14))
        a_k = horo_v.approach_sequence_v(datum, k)
        r_k = triple_norm(a_k)
        diff = x - a_k
        val = (spectral_op_norm(box_operator(diff, diff)) - r_k ** 2) / (2 * r_k)
        lower.append(max(0.0, -2.0 * triple_norm(x) - val))
        y = random_element(sp, rng, norm=rng.uniform(0.5, 3.0))
        hy = horo_v.horofunction_v_eval(datum, y)
        lip.append(max(0.0, abs(closed - hy) - triple_norm(x - y)))
        # Lambda does not depend on the orthonormal basis of the subspace
        basis = datum.peirce_basis()
        u = _random_basis_mix(len(basis), rng)
        mixed = [sum((u[i, j] * basis[i] for i in range(len(basis))),
                     start=sp.zero()) for j in range(len(basis))]
        op = horo_v._horofunction_operator(datum, x)
        basis_inv.append(abs(horo_v.lambda_restricted(op, basis)
                             - horo_v.lambda_restricted(op, mixed)))
    # variation seminorm axioms
    semi = []
    for t in range(trials):
        rng = derive_rng(seed, 4, t, 7)
        sp = _space_for(t, _HORO_SPACES)
        n = int(rng.integers(1, sp.rank + 1))
        frame = random_frame(sp, rng, n)
        e = frame_sum(frame)
        coeffs = rng.normal(size=n)
        coeffs2 = rng.normal(size=n)
        x = sum((float(c) * f for c, f in zip(coeffs, frame)), start=sp.zero())
        y = sum((float(c) * f for c, f in zip(coeffs2, frame)), start=sp.zero())
        vs = horo_v.variation_seminorm
        lam = float(rng.uniform(-2.0, 2.0))
        semi.append(max(
            abs(vs(lam * x, e) - abs(lam) * vs(x, e)),
            max(0.0, vs(x + y, e) - vs(x, e) - vs(y, e)),
            abs(vs(x + lam * e, e) - vs(x, e)),
            vs(lam * e, e),
        ))
    return [
        _result("closed_form_vs_sequence_limit", round_trip, 1e-4),
        _result("straight_line_values", rm, 1e-9),
        _result("rank_one_is_linear_functional", linear, 1e-10),
        _result("box_norm_lower_bound", lower, 1e-9),
        _result("one_lipschitz", lip, 1e-9),
        _result("eigenvalue_basis_independence", basis_inv, 1e-10),
        _result("variation_seminorm_axioms", semi, 1e-9),
    ]


def _random_basis_mix(n: int, rng) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


# -- dual-ball map ------------------------------------------------------------

def _suite_phi(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    interior, inj, surj, cont, welldef, faces, duality = [], [], [], [], [], [], []
    for t in range(trials):
        rng = derive_rng(seed, 5, t)
        sp = _space_for(t, _HORO_SPACES)
        x = random_element(sp, rng, norm=rng.uniform(0.1, 6.0))
        y = random_element(sp, rng, norm=rng.uniform(0.1, 6.0))
        px, py = compactify.phi_interior(x), compactify.phi_interior(y)
        interior.append(max(0.0, px.norm - (1.0 - 1e-12)))
        if triple_norm(x - y) > 1e-6:
            inj.append(0.0 if compactify.dual_norm(px.element - py.element) > 1e-10 else 1.0)
        # boundary surjectivity round trip
        n = int(rng.integers(1, sp.rank + 1))
        frame = random_frame(sp, rng, n)
        lams = rng.uniform(0.1, 1.0, n)
        lams = np.sort(lams / lams.sum())[::-1]
        target = sum((float(l) * f for l, f in zip(lams, frame)), start=sp.zero())
        mu = -np.log(lams)
        datum = BoundaryDatumV(frame, mu - mu.min(), validate=False)
        surj.append(compactify.dual_norm(compactify.phi_boundary(datum).element - target))
        # boundary continuity along the canonical sequence
        a_k = horo_v.approach_sequence_v(datum, 2 ** kmax_exp)
        cont.append(compactify.dual_norm(compactify.phi_interior(a_k).element
                                         - compactify.phi_boundary(datum).element))
        # duality of the nuclear norm against the sup-norm witness
        w = frame_sum(frame)
        pairing = triple.normalized_inner(target, w).real
        duality.append(abs(compactify.dual_norm(target) - pairing))
        # faces: the image of a datum lands in the face of its support
        p1 = compactify.phi_boundary(datum)
        face1 = compactify.relative_interior_face(p1)
        ok = compactify.face_membership(p1.element, face1)
        metric_v, structural_v = compactify.face_membership_checks(p1.element, face1)
        faces.append(0.0 if (ok and metric_v == structural_v
                             and triple_norm(face1 - datum.support()) < 1e-7) else 1.0)
    for t in range(min(trials, 50)):
        rng = derive_rng(seed, 5, t, 9)
        welldef.append(_phi_regrouping_residual(rng))
    return [
        _result("interior_maps_into_open_dual_ball", interior, 1e-12),
        _result("sampled_injectivity", inj, 0.5, note="indicator residuals"),
        _result("boundary_surjectivity_round_trip", surj, 1e-9),
        _result("boundary_continuity_of_phi", cont, 1e-5),
        _result("nuclear_norm_duality_witness", duality, 1e-8),
        _result("faces_classify_supports", faces, 0.5, note="indicator residuals"),
        _result("well_defined_under_regrouping", welldef, 1e-9),
    ]


def _regrouped_datum_pair(rng) -> tuple[BoundaryDatumV, BoundaryDatumV]:
    """One horofunction datum under two minimal splits of its tied frame.

    Tied weights are the only source of frame ambiguity, and the canonical
    form pins them at 0; any orthonormal basis of C^2 splits the rank-two
    projection into minimal tripotents.
    """
    from .sampling import random_unitary
    sp = TripleSpace(((2, 2),))
    u = random_unitary(2, rng)
    e1 = sp.matrix_unit(0, 0, 0)
    e2 = sp.matrix_unit(0, 1, 1)
    f1 = _rank_one(sp, u[:, 0])
    f2 = _rank_one(sp, u[:, 1])
    return (BoundaryDatumV([e1, e2], [0.0, 0.0], validate=False),
            BoundaryDatumV([f1, f2], [0.0, 0.0], validate=False))


def _phi_regrouping_residual(rng) -> float:
    """Two frame splits of the same horofunction must share a phi image."""
    h_a, h_b = _regrouped_datum_pair(rng)
    if not horo_v.datum_v_equal(h_a, h_b):
        return 1.0
    return compactify.dual_norm(compactify.phi_boundary(h_a).element
                                - compactify.phi_boundary(h_b).element)


def _rank_one(sp: TripleSpace, u: np.ndarray):
    from .space import Element
    block = np.outer(u, u.conj())
    return Element(sp, [block])


# -- detour costs and parts ---------------------------------------------------

def _suite_detour(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    var_eq, infinite, closed_limit, planted, triangle, equality = [], [], [], [], [], []
    for t in range(trials):
        rng = derive_rng(seed, 6, t)
        sp = _space_for(t, _HORO_SPACES)
        n = int(rng.integers(1, sp.rank + 1))
        frame = random_frame(sp, rng, n)
        a1 = _zero_min(rng.uniform(0, 3, n))
        a2 = _zero_min(rng.uniform(0, 3, n))
        h1 = BoundaryDatumV(frame, a1, validate=False)
        h2 = BoundaryDatumV(frame, a2, validate=False)
        delta = horo_v.detour_distance_v(h1, h2)
        diff = h1.weighted_sum() - h2.weighted_sum()
        var_eq.append(abs(delta.value - horo_v.variation_seminorm(diff, h1.support())))
        # infinite exactly across different supports
        other = _random_datum_v(sp, rng)
        same = horo_v.same_part_v(h1, other)
        verdict = horo_v.detour_cost_v(h1, other).finite
        infinite.append(0.0 if verdict == same else 1.0)
        # triangle inequality within a part
        h3 = BoundaryDatumV(frame, _zero_min(rng.uniform(0, 3, n)), validate=False)
        d12 = horo_v.detour_distance_v(h1, h2).value
        d23 = horo_v.detour_distance_v(h2, h3).value
        d13 = horo_v.detour_distance_v(h1, h3).value
        triangle.append(max(0.0, d13 - d12 - d23))
        # equality criterion on a planted equal pair and a generic unequal one
        h_same = BoundaryDatumV(frame, a1, validate=False)
        weights_match = bool(np.allclose(a1, a2))
        equality.append(0.0 if (horo_v.datum_v_equal(h1, h_same)
                                and horo_v.datum_v_equal(h1, h2) == weights_match)
                        else 1.0)
    n_d = max(1, trials // 4)
    for t in range(n_d):
        rng = derive_rng(seed, 6, t, 11)
        sp = _space_for(t, _HORO_SPACES)
        n = int(rng.integers(1, min(2, sp.rank) + 1))
        frame = random_frame(sp, rng, n)
        d1 = BoundaryDatumD(frame, _one_max(rng.uniform(0.35, 1.0, n)), validate=False)
        d2 = BoundaryDatumD(frame, _one_max(rng.uniform(0.35, 1.0, n)), validate=False)
        c = metric_d.detour_cost_d(d1, d2, "closed")
        l = metric_d.detour_cost_d(d1, d2, "limit")
        closed_limit.append(abs(c.value - l.value))
    # planted rank-2 example: weights (1, e^-1) vs (1, e^-2) give distance 1
    sp22 = TripleSpace(((2, 2),))
    e1, e2 = sp22.matrix_unit(0, 0, 0), sp22.matrix_unit(0, 1, 1)
    da = BoundaryDatumD([e1, e2], [1.0, float(np.exp(-1))], validate=False)
    db = BoundaryDatumD([e1, e2], [1.0, float(np.exp(-2))], validate=False)
    ha = BoundaryDatumV([e1, e2], [0.0, 1.0], validate=False)
    hb = BoundaryDatumV([e1, e2], [0.0, 2.0], validate=False)
    planted.append(abs(metric_d.detour_distance_d(da, db, "closed").value - 1.0))
    planted.append(abs(metric_d.detour_distance_d(da, db, "limit").value - 1.0))
    planted.append(abs(horo_v.detour_distance_v(ha, hb).value - 1.0))
    return [
        _result("detour_distance_equals_variation_seminorm", var_eq, 1e-9),
        _result("infinite_iff_supports_differ", infinite, 0.5, note="indicator residuals"),
        _result("ball_detour_closed_vs_limit", closed_limit, 1e-4),
        _result("planted_rank2_distance_one", planted, 1e-5),
        _result("detour_triangle_inequality", triangle, 1e-9),
        _result("equality_criterion", equality, 0.5, note="indicator residuals"),
    ]


def _zero_min(a: np.ndarray) -> np.ndarray:
    return a - a.min()


def _one_max(a: np.ndarray) -> np.ndarray:
    return a / a.max()


# -- exponential bridge -------------------------------------------------------

def _suite_exp(trials: int, seed: int, kmax_exp: int) -> list[PropertyResult]:
    geod, radial, roundtrip, bridge, parts, welldef = [], [], [], [], [], []
    delta_pairs = []
    for t in range(trials):
        rng = derive_rng(seed, 7, t)
        sp = _space_for(t, _HORO_SPACES)
        datum = _random_datum_v(sp, rng, alpha_max=2.0)
        s_, t_ = sorted(rng.uniform(0.0, 4.0, 2))
        g_s = metric_d.geodesic_gamma(datum.tripotents, datum.alphas, float(s_), check=False)
        g_t = metric_d.geodesic_gamma(datum.tripotents, datum.alphas, float(t_), check=False)
        geod.append(abs(metric_d.caratheodory_distance(g_s, g_t) - (t_ - s_)))
        x = random_element(sp, rng, norm=rng.uniform(0.2, 3.0))
        radial.append(abs(metric_d.caratheodory_distance(sp.zero(), exp_bridge.exp_map(x))
                          - triple_norm(x)))
        d_img = exp_bridge.exp_extend(datum)
        back = exp_bridge.exp_extend_inverse(d_img)
        roundtrip.append(max(np.abs(np.array(back.alphas) - np.array(datum.alphas)).max(),
                             max(triple_norm(a - b) for a, b in
                                 zip(back.tripotents, datum.tripotents))))
        # part preservation across the bridge
        datum2 = _random_datum_v(sp, rng, alpha_max=2.0)
        same_v = horo_v.same_part_v(datum, datum2)
        same_d = metric_d.same_part_d(exp_bridge.exp_extend(datum),
                                      exp_bridge.exp_extend(datum2))
        parts.append(0.0 if same_v == same_d else 1.0)
        if same_v:
            dv = horo_v.detour_distance_v(datum, datum2).value
            dd = metric_d.detour_distance_d(exp_bridge.exp_extend(datum),
                                            exp_bridge.exp_extend(datum2), "closed").value
            delta_pairs.append((dv, dd))
    n_b = max(1, trials // 10)
    for t in range(n_b):
        rng = derive_rng(seed, 7, t, 13)
        sp = _space_for(t, _HORO_SPACES)
        datum = _random_datum_v(sp, rng, alpha_max=2.0)
        zs = [random_element(sp, rng, norm=rng.uniform(0.1, 0.7)) for _ in range(3)]
        rep_direct = exp_bridge.bridge_consistency(datum, zs, k=12.0)
        rep_stable = exp_bridge.bridge_consistency(datum, zs, k=2.0 ** 16)
        bridge.append(max(rep_direct.max_gap, rep_stable.max_gap))
        welldef.append(_exp_regrouping_residual(rng))
    note = ""
    if delta_pairs:
        dv = np.array([p[0] for p in delta_pairs])
        dd = np.array([p[1] for p in delta_pairs])
        note = (f"measured only: max|delta_V-delta_D|={np.abs(dv - dd).max():.3e} "
                f"over {len(delta_pairs)} same-part pairs (no assertion)")
    return [
        _result("flat_geodesic_isometry", geod, 1e-9),
        _result("exp_radial_isometry", radial, 1e-9),
        _result("boundary_extension_round_trip", roundtrip, 1e-12),
        _result("bridge_sequence_vs_closed_form", bridge, 1e-4),
        _result("part_preservation", parts, 0.5, note="indicator residuals"),
        _result("extension_well_defined_under_regrouping", welldef, 1e-7),
        _result("detour_distances_across_bridge", [0.0], 1.0, note=note),
    ]


def _exp_regrouping_residual(rng) -> float:
    """Two splits of one V datum must extend to equal ball data."""
    h_a, h_b = _regrouped_datum_pair(rng)
    da, db = exp_bridge.exp_extend(h_a), exp_bridge.exp_extend(h_b)
    return 0.0 if metric_d.datum_d_equal(da, db) else 1.0


_SUITES = {
    "axioms": _suite_axioms,
    "peirce": _suite_peirce,
    "horo-d": _suite_horo_d,
    "horo-v": _suite_horo_v,
    "phi": _suite_phi,
    "detour": _suite_detour,
    "exp": _suite_exp,
}


def run_suite(suite: str, trials: int, seed: int, tol: float | None = None,
              kmax_exp: int = 20) -> list[PropertyResult]:
    """Run one named suite; ``tol`` overrides every property tolerance."""
    if suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}; known: {', '.join(SUITE_NAMES)}")
    results = _SUITES[suite](trials, seed, kmax_exp)
    if tol is not None:
        results = [PropertyResult(r.name, r.max_residual < tol, r.max_residual,
                                  r.p95_residual, r.trials, tol, r.note)
                   for r in results]
    return results


def run_report(suite: str, trials: int, seed: int, tol: float | None = None,
               kmax_exp: int = 20, with_timing: bool = True) -> dict:
    """Machine-readable report for one suite or for `all`."""
    started = time.time()
    names = list(SUITE_NAMES) if suite == "all" else [suite]
    properties = []
    for name in names:
        for r in run_suite(name, trials, seed, tol, kmax_exp):
            d = asdict(r)
            d["suite"] = name
            properties.append(d)
    report = {
        "schema": REPORT_SCHEMA,
        "suite": suite,
        "trials": trials,
        "seed": seed,
        "tolerance_override": tol,
        "properties": properties,
        "passed": all(p["passed"] for p in properties),
    }
    if with_timing:
        report["runtime_s"] = round(time.time() - started, 3)
        report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return report
