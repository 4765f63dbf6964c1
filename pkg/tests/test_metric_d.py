import math

import numpy as np
import pytest

from jbhoro import (BoundaryDatumD, Element, InvalidDatumError,
                    NonConvergenceError,
                    OutsideDomainError, almost_geodesic_defect,
                    approach_sequence_d, approach_sequence_d_threshold,
                    caratheodory_distance, datum_d_equal, detour_cost_d,
                    detour_distance_d, geodesic_functional_d, geodesic_gamma,
                    horofunction_d_eval, metric_functional_d, mobius,
                    same_part_d, triple_norm)
from jbhoro.sampling import derive_rng, random_element, random_frame

ATANH_HALF = 0.5493061443340549
ATANH_08 = 1.0986122886681098


def test_distance_basics(disc, m22, rng):
    one = disc.matrix_unit(0, 0, 0)
    assert caratheodory_distance(0.5 * one, 0.5 * one) == pytest.approx(0.0, abs=1e-14)
    assert caratheodory_distance(disc.zero(), 0.5 * one) == pytest.approx(ATANH_HALF, abs=1e-12)
    assert caratheodory_distance(0.5 * one, -0.5 * one) == pytest.approx(ATANH_08, abs=1e-12)
    x = random_element(m22, rng, norm=0.8)
    with pytest.raises(OutsideDomainError):
        caratheodory_distance(x, random_element(m22, rng, norm=1.05))


def test_distance_symmetry_triangle(m22):
    rng = derive_rng(17)
    for _ in range(50):
        x, y, z = (random_element(m22, rng, norm=rng.uniform(0.1, 0.85))
                   for _ in range(3))
        dxy = caratheodory_distance(x, y)
        assert dxy == pytest.approx(caratheodory_distance(y, x), abs=1e-10)
        assert dxy <= (caratheodory_distance(x, z)
                       + caratheodory_distance(z, y) + 1e-10)
        assert caratheodory_distance(m22.zero(), y) == pytest.approx(
            np.arctanh(triple_norm(y)), abs=1e-10)


def test_metric_functional_forms(m23, rng):
    # h_y(0) = 0, h_y(y) = -rho(0,y), and the two Moebius-centered forms agree
    for _ in range(10):
        y = random_element(m23, rng, norm=rng.uniform(0.2, 0.9))
        z = random_element(m23, rng, norm=rng.uniform(0.2, 0.9))
        assert metric_functional_d(y, m23.zero()) == pytest.approx(0.0, abs=1e-12)
        assert metric_functional_d(y, y) == pytest.approx(
            -np.arctanh(triple_norm(y)), abs=1e-10)
        ny, ngy = triple_norm(y), triple_norm(mobius(-1.0 * y, z))
        form_g = 0.5 * math.log((1 - ny ** 2) / (1 - ngy ** 2)
                                * ((1 + ngy) / (1 + ny)) ** 2)
        ngz = triple_norm(mobius(-1.0 * z, y))
        form_gg = 0.5 * math.log((1 - ny ** 2) / (1 - ngz ** 2)
                                 * ((1 + ngz) / (1 + ny)) ** 2)
        assert metric_functional_d(y, z) == pytest.approx(form_g, abs=1e-10)
        assert form_g == pytest.approx(form_gg, abs=1e-10)


def test_datum_validation(m22, rng):
    frame = random_frame(m22, rng, 2)
    with pytest.raises(InvalidDatumError):
        BoundaryDatumD(frame, [0.9, 0.5])  # max lambda must be 1
    with pytest.raises(InvalidDatumError):
        BoundaryDatumD(frame, [1.0, 0.0])  # weights positive
    with pytest.raises(InvalidDatumError):
        BoundaryDatumD([frame[0], frame[0]], [1.0, 0.5])  # not orthogonal
    d = BoundaryDatumD([frame[1], frame[0]], [0.5, 1.0])
    assert d.lambdas == (1.0, 0.5)  # canonical nonincreasing order


def test_approach_sequence_forms(m22, rng):
    frame = random_frame(m22, rng, 2)
    d1 = BoundaryDatumD([frame[0]], [1.0])
    y = approach_sequence_d(d1, 10)
    assert triple_norm(y - 0.9 * frame[0]) < 1e-12
    d2 = BoundaryDatumD(frame, [1.0, 1.0])
    y2 = approach_sequence_d(d2, 10)
    assert triple_norm(y2 - 0.9 * (frame[0] + frame[1])) < 1e-12
    with pytest.raises(ValueError):
        approach_sequence_d(d2, 1)
    small = BoundaryDatumD(frame, [1.0, 0.1])
    k0 = approach_sequence_d_threshold(small)
    assert k0 > 2
    assert triple_norm(approach_sequence_d(small, k0)) < 1.0


def test_horofunction_disc_closed_form(disc):
    one = disc.matrix_unit(0, 0, 0)
    datum = BoundaryDatumD([one], [1.0])
    z = 0.5 * one
    want = 0.5 * math.log(abs(1 - 0.5) ** 2 / (1 - 0.25))
    assert want == pytest.approx(-ATANH_HALF, abs=1e-12)
    got = horofunction_d_eval(datum, z, "induced_norm")
    assert got == pytest.approx(want, abs=1e-10)
    got_seq = horofunction_d_eval(datum, z, "extrapolate")
    assert got_seq == pytest.approx(want, abs=1e-6)
    assert horofunction_d_eval(datum, disc.zero()) == pytest.approx(0.0, abs=1e-12)


def test_horofunction_euclidean_ball(ball3, rng):
    frame = random_frame(ball3, rng, 1)
    datum = BoundaryDatumD(frame, [1.0])
    z = random_element(ball3, rng, norm=0.6)
    xiv, zv = frame[0].blocks[0][:, 0], z.blocks[0][:, 0]
    want = 0.5 * math.log(abs(1 - np.vdot(xiv, zv)) ** 2
                          / (1 - np.vdot(zv, zv).real))
    assert horofunction_d_eval(datum, z, "induced_norm") == pytest.approx(want, abs=1e-6)
    assert horofunction_d_eval(datum, z, "extrapolate") == pytest.approx(want, abs=1e-6)


def test_horofunction_round_trip_rank2(m23, rng):
    frame = random_frame(m23, rng, 2)
    datum = BoundaryDatumD(frame, [1.0, 0.45])
    for _ in range(3):
        z = random_element(m23, rng, norm=rng.uniform(0.2, 0.8))
        closed = horofunction_d_eval(datum, z, "induced_norm")
        ladder = horofunction_d_eval(datum, z, "extrapolate")
        assert abs(closed - ladder) < 1e-4


def test_sequence_gap_decays_linearly(m22, rng):
    frame = random_frame(m22, rng, 2)
    datum = BoundaryDatumD(frame, [1.0, 0.7])
    z = random_element(m22, rng, norm=0.6)
    closed = math.exp(2.0 * horofunction_d_eval(datum, z, "induced_norm"))
    ks = [2 ** j for j in range(4, 11)]
    gaps = []
    for k in ks:
        y = approach_sequence_d(datum, k)
        ratio = ((1 - triple_norm(y) ** 2)
                 / (1 - triple_norm(mobius(-1.0 * y, z)) ** 2))
        gaps.append(abs(ratio - closed))
    slope = np.polyfit(np.log(ks), np.log(gaps), 1)[0]
    assert slope == pytest.approx(-1.0, abs=0.2)


def test_distinct_sequences_share_horofunction(m22, rng):
    # appending a slower-converging complementary frame term does not change
    # the limit functional
    frame = random_frame(m22, rng, 2)
    datum = BoundaryDatumD([frame[0]], [1.0])
    z = random_element(m22, rng, norm=0.5)
    closed = horofunction_d_eval(datum, z, "induced_norm")
    k = 2 ** 18
    y = approach_sequence_d(datum, k)
    zk = y + (1 - 1 / math.sqrt(k)) * frame[1]
    assert triple_norm(zk) < 1.0
    val = metric_functional_d(zk, z)
    assert abs(val - closed) < 5e-2


def test_extrapolation_nonconvergence_reported(m22, rng):
    frame = random_frame(m22, rng, 2)
    datum = BoundaryDatumD(frame, [1.0, 1e-3])
    z = random_element(m22, rng, norm=0.5)
    with pytest.raises(NonConvergenceError):
        horofunction_d_eval(datum, z, "extrapolate")


def test_geodesic_properties(m22, rng):
    frame = random_frame(m22, rng, 2)
    alphas = [0.0, 1.3]
    assert triple_norm(geodesic_gamma(frame, [0.0, 0.0], 0.0)) == 0.0
    g1 = geodesic_gamma(frame, alphas, 1.0)
    g3 = geodesic_gamma(frame, alphas, 3.0)
    assert caratheodory_distance(g1, g3) == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(InvalidDatumError):
        geodesic_gamma(frame, [0.5, 1.0], 1.0)  # min alpha must be 0


def test_geodesic_converges_to_horofunction(m22, rng):
    frame = random_frame(m22, rng, 2)
    alphas = np.array([0.0, 0.8])
    datum = BoundaryDatumD(frame, np.exp(-alphas))
    z = random_element(m22, rng, norm=0.6)
    closed = horofunction_d_eval(datum, z, "induced_norm")
    assert abs(metric_functional_d(geodesic_gamma(frame, alphas, 12.0), z)
               - closed) < 1e-4
    # the large-t evaluation route agrees too
    assert abs(geodesic_functional_d(frame, alphas, 40.0, z) - closed) < 1e-6


def test_almost_geodesic_defect(m22, rng):
    frame = random_frame(m22, rng, 2)
    alphas = [0.0, 0.5]
    pts = [geodesic_gamma(frame, alphas, t) for t in (0.0, 1.0, 2.0, 4.0)]
    assert almost_geodesic_defect(pts, 3, 1) == pytest.approx(0.0, abs=1e-9)
    assert almost_geodesic_defect(pts, 2, 1) < 1e-8
    bent = list(pts)
    bent[1] = random_element(m22, rng, norm=0.7)
    assert almost_geodesic_defect(bent, 2, 1) > 1e-4
    with pytest.raises(IndexError):
        almost_geodesic_defect(pts, 1, 2)


def test_detour_costs(m22, disc, rng):
    e1, e2 = m22.matrix_unit(0, 0, 0), m22.matrix_unit(0, 1, 1)
    da = BoundaryDatumD([e1, e2], [1.0, math.exp(-1.0)])
    db = BoundaryDatumD([e1, e2], [1.0, math.exp(-2.0)])
    same = BoundaryDatumD([e1, e2], [1.0, math.exp(-1.0)])
    for method in ("closed", "limit"):
        assert detour_cost_d(da, same, method).value == pytest.approx(0.0, abs=1e-5)
        assert detour_distance_d(da, db, method).value == pytest.approx(1.0, abs=1e-5)
    assert detour_cost_d(da, db, "closed").value == pytest.approx(0.0, abs=1e-9)
    assert detour_cost_d(db, da, "closed").value == pytest.approx(1.0, abs=1e-9)
    # rank one data with distinct boundary points sit in different parts
    one = disc.matrix_unit(0, 0, 0)
    h1 = BoundaryDatumD([one], [1.0])
    h2 = BoundaryDatumD([-1.0 * one], [1.0])
    cost = detour_cost_d(h1, h2)
    assert not cost.finite
    with pytest.raises(ValueError):
        cost.value


def test_datum_equality_criterion(m22, rng):
    from jbhoro.sampling import random_unitary
    e1, e2 = m22.matrix_unit(0, 0, 0), m22.matrix_unit(0, 1, 1)
    u = random_unitary(2, rng)
    f1 = Element(m22, [np.outer(u[:, 0], u[:, 0].conj())])
    f2 = Element(m22, [np.outer(u[:, 1], u[:, 1].conj())])
    # equal lambda on two splits of the same support: equal data
    ha = BoundaryDatumD([e1, e2], [1.0, 1.0])
    hb = BoundaryDatumD([f1, f2], [1.0, 1.0])
    assert same_part_d(ha, hb)
    assert datum_d_equal(ha, hb)
    hc = BoundaryDatumD([e1, e2], [1.0, 0.5])
    assert same_part_d(ha, hc)
    assert not datum_d_equal(ha, hc)
