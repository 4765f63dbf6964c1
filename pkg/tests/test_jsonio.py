import json

import numpy as np
import pytest

from jbhoro import (BoundaryDatumD, BoundaryDatumV, phi_boundary,
                    spectral_decompose, triple_norm)
from jbhoro import jsonio
from jbhoro.sampling import random_element, random_frame


def test_element_round_trip(two_block, rng):
    x = random_element(two_block, rng)
    data = jsonio.element_to_json(x)
    y = jsonio.element_from_json(json.loads(json.dumps(data)))
    assert y.space == two_block
    assert triple_norm(x - y) == 0.0


def test_element_space_mismatch(m22, m23, rng):
    x = random_element(m22, rng)
    with pytest.raises(ValueError):
        jsonio.element_from_json(jsonio.element_to_json(x), space=m23)


def test_frame_round_trip(m23, rng):
    fr = spectral_decompose(random_element(m23, rng))
    back = jsonio.frame_from_json(json.loads(json.dumps(jsonio.frame_to_json(fr))))
    assert back.coefficients == pytest.approx(fr.coefficients)
    for a, b in zip(back.tripotents, fr.tripotents):
        assert triple_norm(a - b) == 0.0


def test_datum_round_trips(m22, rng):
    frame = random_frame(m22, rng, 2)
    hv = BoundaryDatumV(frame, [0.0, 1.5])
    hv2 = jsonio.datum_v_from_json(json.loads(json.dumps(jsonio.datum_v_to_json(hv))))
    assert hv2.alphas == pytest.approx(hv.alphas)
    hd = BoundaryDatumD(frame, [1.0, 0.5])
    hd2 = jsonio.datum_d_from_json(json.loads(json.dumps(jsonio.datum_d_to_json(hd))))
    assert hd2.lambdas == pytest.approx(hd.lambdas)


def test_dual_point_json(m22, rng):
    frame = random_frame(m22, rng, 2)
    h = BoundaryDatumV(frame, [0.0, 0.7])
    point = phi_boundary(h)
    data = jsonio.dual_point_to_json(point)
    assert data["boundary"] is True
    assert data["dual_norm"] == pytest.approx(1.0)
    face = jsonio.element_from_json(data["face"])
    assert triple_norm(face - h.support()) < 1e-7


def test_malformed_inputs_raise():
    with pytest.raises(ValueError):
        jsonio.space_from_json({"not_blocks": []})
    with pytest.raises(ValueError):
        jsonio.element_from_json({"space": {"blocks": [{"p": 1, "q": 1}]}})
    with pytest.raises(ValueError):
        jsonio.datum_v_from_json({"tripotents": []})
