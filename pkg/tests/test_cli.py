import json
import math

import numpy as np
import pytest

from jbhoro import BoundaryDatumD, BoundaryDatumV, Element, TripleSpace
from jbhoro import jsonio
from jbhoro.cli import main
from jbhoro.sampling import derive_rng, random_element, random_frame


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def _disc_element(value):
    sp = TripleSpace(((1, 1),))
    return Element(sp, [np.array([[value]], dtype=complex)])


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out.strip()
    return code, (json.loads(out) if out else None)


def test_decompose(tmp_path, capsys):
    sp = TripleSpace(((2, 2),))
    x = Element(sp, [np.diag([0.9, 0.3]).astype(complex)])
    path = _write(tmp_path / "x.json", jsonio.element_to_json(x))
    code, out = _run(capsys, ["decompose", "--input", path])
    assert code == 0
    assert [e["coeff"] for e in out["entries"]] == pytest.approx([0.9, 0.3])

    zero = _write(tmp_path / "z.json", jsonio.element_to_json(sp.zero()))
    code, out = _run(capsys, ["decompose", "--input", zero])
    assert code == 0 and out["entries"] == []

    rng = derive_rng(3)
    sp3 = TripleSpace(((3, 3),))
    y = random_element(sp3, rng)
    path3 = _write(tmp_path / "y.json", jsonio.element_to_json(y))
    code, out = _run(capsys, ["decompose", "--input", path3])
    sv = np.linalg.svd(y.blocks[0], compute_uv=False)
    assert [e["coeff"] for e in out["entries"]] == pytest.approx(list(sv), abs=1e-10)


def test_decompose_space_mismatch(tmp_path, capsys):
    sp = TripleSpace(((2, 2),))
    x = sp.zero()
    path = _write(tmp_path / "x.json", jsonio.element_to_json(x))
    other = _write(tmp_path / "s.json", jsonio.space_to_json(TripleSpace(((1, 2),))))
    code, _ = _run(capsys, ["decompose", "--input", path, "--space", other])
    assert code == 2


def test_dist_disc(tmp_path, capsys):
    x = _write(tmp_path / "x.json", jsonio.element_to_json(_disc_element(0.0)))
    y = _write(tmp_path / "y.json", jsonio.element_to_json(_disc_element(0.5)))
    code, out = _run(capsys, ["dist", x, y])
    assert code == 0
    assert out["rho"] == pytest.approx(math.atanh(0.5), abs=1e-9)


def test_horo_eval_d_and_v(tmp_path, capsys):
    sp = TripleSpace(((1, 1),))
    one = sp.matrix_unit(0, 0, 0)
    datum = BoundaryDatumD([one], [1.0])
    dpath = _write(tmp_path / "d.json", jsonio.datum_d_to_json(datum))
    zero = _write(tmp_path / "zero.json", jsonio.element_to_json(sp.zero()))
    code, out = _run(capsys, ["horo", "eval-d", "--datum", dpath, "--at", zero])
    assert code == 0 and out["value"] == pytest.approx(0.0, abs=1e-9)

    code, out = _run(capsys, ["horo", "eval-d", "--datum", dpath, "--at", zero,
                              "--method", "both"])
    assert code == 0 and out["gap"] < 1e-4

    hv = BoundaryDatumV([one], [0.0])
    vpath = _write(tmp_path / "h.json", jsonio.datum_v_to_json(hv))
    xpath = _write(tmp_path / "x.json", jsonio.element_to_json(_disc_element(1 + 1j)))
    code, out = _run(capsys, ["horo", "eval-v", "--datum", vpath, "--at", xpath])
    assert code == 0 and out["value"] == pytest.approx(-1.0, abs=1e-9)


def test_horo_eval_nonconvergence_exit_code(tmp_path, capsys):
    sp = TripleSpace(((2, 2),))
    rng = derive_rng(5)
    frame = random_frame(sp, rng, 2)
    datum = BoundaryDatumD(frame, [1.0, 1e-3])
    dpath = _write(tmp_path / "d.json", jsonio.datum_d_to_json(datum))
    z = _write(tmp_path / "z.json",
               jsonio.element_to_json(random_element(sp, rng, norm=0.5)))
    code, _ = _run(capsys, ["horo", "eval-d", "--datum", dpath, "--at", z,
                            "--method", "extrapolate"])
    assert code == 3


def test_exp_extend(tmp_path, capsys):
    sp = TripleSpace(((2, 2),))
    e1, e2 = sp.matrix_unit(0, 0, 0), sp.matrix_unit(0, 1, 1)
    h = BoundaryDatumV([e1, e2], [0.0, 1.0])
    path = _write(tmp_path / "h.json", jsonio.datum_v_to_json(h))
    code, out = _run(capsys, ["exp-extend", "--datum", path])
    assert code == 0
    assert out["lambda"] == pytest.approx([1.0, 0.36787944117144233])


def test_phi_modes(tmp_path, capsys):
    sp = TripleSpace(((1, 1),))
    x = _write(tmp_path / "x.json",
               jsonio.element_to_json(_disc_element(math.log(3.0))))
    code, out = _run(capsys, ["phi", "--input", x])
    assert code == 0
    assert out["blocks"][0]["re"][0][0] == pytest.approx(0.8, abs=1e-12)
    assert out["boundary"] is False

    h = BoundaryDatumV([sp.matrix_unit(0, 0, 0)], [0.0])
    hpath = _write(tmp_path / "h.json", jsonio.datum_v_to_json(h))
    code, out = _run(capsys, ["phi", "--datum", hpath])
    assert code == 0 and out["boundary"] is True and out["dual_norm"] == pytest.approx(1.0)

    code, _ = _run(capsys, ["phi", "--input", x, "--datum", hpath])
    assert code == 2


def test_detour_both_sides(tmp_path, capsys):
    sp = TripleSpace(((2, 2),))
    e1, e2 = sp.matrix_unit(0, 0, 0), sp.matrix_unit(0, 1, 1)
    ha = BoundaryDatumV([e1, e2], [0.0, 1.0])
    hb = BoundaryDatumV([e1, e2], [0.0, 2.0])
    pa = _write(tmp_path / "a.json", jsonio.datum_v_to_json(ha))
    pb = _write(tmp_path / "b.json", jsonio.datum_v_to_json(hb))
    code, out = _run(capsys, ["detour", pa, pb, "--side", "v"])
    assert code == 0
    assert out["finite"] and out["delta"] == pytest.approx(1.0, abs=1e-9)

    da = BoundaryDatumD([e1, e2], [1.0, math.exp(-1.0)])
    db = BoundaryDatumD([e1, e2], [1.0, math.exp(-2.0)])
    qa = _write(tmp_path / "da.json", jsonio.datum_d_to_json(da))
    qb = _write(tmp_path / "db.json", jsonio.datum_d_to_json(db))
    for method in ("closed", "limit"):
        code, out = _run(capsys, ["detour", qa, qb, "--side", "d",
                                  "--method", method])
        assert code == 0
        assert out["delta"] == pytest.approx(1.0, abs=1e-4)

    hc = BoundaryDatumV([e1], [0.0])
    pc = _write(tmp_path / "c.json", jsonio.datum_v_to_json(hc))
    code, out = _run(capsys, ["detour", pa, pc, "--side", "v"])
    assert code == 0
    assert out["finite"] is False and out["delta"] is None


def test_verify_exit_codes(tmp_path, capsys):
    code, out = _run(capsys, ["verify", "--suite", "axioms", "--trials", "5",
                              "--seed", "1", "--no-timestamp"])
    assert code == 0 and out["passed"] is True
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2
    capsys.readouterr()
    # an impossible tolerance forces a property failure
    code, out = _run(capsys, ["verify", "--suite", "axioms", "--trials", "5",
                              "--seed", "1", "--tol", "1e-30", "--no-timestamp"])
    assert code == 1 and out["passed"] is False


def test_verify_deterministic(capsys):
    argv = ["verify", "--suite", "axioms", "--trials", "6", "--seed", "11",
            "--no-timestamp"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = _run(capsys, ["decompose", "--input", str(bad)])
    assert code == 2
    code, _ = _run(capsys, ["dist", str(bad), str(bad)])
    assert code == 2
