"""JSON encodings of spaces, elements, frames, boundary data and dual points.

Matrices are encoded as separate real and imaginary parts, row-major 2D
arrays of 64-bit floats; every reader accepts exactly what the matching
writer emits.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .compactify import DualBallPoint, relative_interior_face
from .horo_v import BoundaryDatumV
from .metric_d import BoundaryDatumD
from .space import Element, TripleSpace
from .spectral import Frame

__all__ = [
    "space_to_json", "space_from_json",
    "element_to_json", "element_from_json",
    "frame_to_json", "frame_from_json",
    "datum_v_to_json", "datum_v_from_json",
    "datum_d_to_json", "datum_d_from_json",
    "dual_point_to_json",
    "load_json", "dump_json",
]


def space_to_json(space: TripleSpace) -> dict:
    return {"blocks": [{"p": p, "q": q} for p, q in space.blocks]}


def space_from_json(data: Any) -> TripleSpace:
    try:
        blocks = tuple((int(b["p"]), int(b["q"])) for b in data["blocks"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed space JSON: {exc}") from exc
    return TripleSpace(blocks)


def element_to_json(x: Element) -> dict:
    return {
        "space": space_to_json(x.space),
        "blocks": [{"re": b.real.tolist(), "im": b.imag.tolist()} for b in x.blocks],
    }


def element_from_json(data: Any, space: TripleSpace | None = None) -> Element:
    try:
        sp = space_from_json(data["space"])
        if space is not None and space != sp:
            raise ValueError("element space does not match the expected space")
        blocks = [np.array(b["re"], dtype=float) + 1j * np.array(b["im"], dtype=float)
                  for b in data["blocks"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed element JSON: {exc}") from exc
    return Element(sp, blocks)


def frame_to_json(frame: Frame) -> dict:
    return {"entries": [{"coeff": c, "tripotent": element_to_json(e)}
                        for c, e in zip(frame.coefficients, frame.tripotents)]}


def frame_from_json(data: Any) -> Frame:
    try:
        coeffs = tuple(float(ent["coeff"]) for ent in data["entries"])
        trips = tuple(element_from_json(ent["tripotent"]) for ent in data["entries"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed frame JSON: {exc}") from exc
    return Frame(coeffs, trips)


def datum_v_to_json(h: BoundaryDatumV) -> dict:
    return {"tripotents": [element_to_json(e) for e in h.tripotents],
            "alpha": list(h.alphas)}


def datum_v_from_json(data: Any) -> BoundaryDatumV:
    try:
        trips = [element_from_json(e) for e in data["tripotents"]]
        alphas = [float(a) for a in data["alpha"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed V datum JSON: {exc}") from exc
    return BoundaryDatumV(trips, alphas)


def datum_d_to_json(h: BoundaryDatumD) -> dict:
    return {"tripotents": [element_to_json(e) for e in h.tripotents],
            "lambda": list(h.lambdas)}


def datum_d_from_json(data: Any) -> BoundaryDatumD:
    try:
        trips = [element_from_json(e) for e in data["tripotents"]]
        lambdas = [float(v) for v in data["lambda"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed D datum JSON: {exc}") from exc
    return BoundaryDatumD(trips, lambdas)


def dual_point_to_json(point: DualBallPoint) -> dict:
    out = element_to_json(point.element)
    out["dual_norm"] = point.norm
    out["boundary"] = point.boundary
    out["face"] = (element_to_json(relative_interior_face(point))
                   if point.boundary else None)
    return out


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)
