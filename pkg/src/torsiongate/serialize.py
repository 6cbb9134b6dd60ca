"""JSON schemas for polynomials, fields, curves, groups and reports.

Rationals are strings "num/den"; polynomials are coefficient arrays in
ascending degree; field elements are coordinate arrays.  All emitters sort
keys and use fixed separators so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import json
from typing import Any

from .curves import Curve, CurvePoint, TorsionData
from .errors import SpecError
from .groups import MatGroup
from .numberfield import NumberField, FieldElement, nf_create
from .polyq import QQ, PolyQ


def rational_to_str(c) -> str:
    return f"{int(c.numerator)}/{int(c.denominator)}"


def rational_from_str(s: str):
    try:
        return QQ(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"bad rational literal {s!r}") from exc


def poly_to_json(f: PolyQ) -> list[str]:
    return [rational_to_str(c) for c in f.coeffs]


def poly_from_json(data: Any) -> PolyQ:
    if not isinstance(data, list):
        raise SpecError("polynomial must be an array of coefficient strings")
    return PolyQ([rational_from_str(c) for c in data])


def field_to_json(K: NumberField) -> dict:
    return {"defining_poly": poly_to_json(K.defining_poly), "label": K.label}


def field_from_json(data: Any, degree_cap: int = 64) -> NumberField:
    if not isinstance(data, dict) or "defining_poly" not in data:
        raise SpecError("field spec needs a 'defining_poly' array")
    poly = poly_from_json(data["defining_poly"])
    label = data.get("label", "")
    if poly.degree < 1:
        raise SpecError("defining polynomial must have degree >= 1")
    if not poly.is_monic():
        raise SpecError("defining polynomial must be monic")
    return nf_create(poly, label=label, degree_cap=degree_cap)


def element_to_json(e: FieldElement) -> list[str]:
    return [rational_to_str(c) for c in e.coords]


def element_from_json(K: NumberField, data: Any) -> FieldElement:
    if not isinstance(data, list):
        raise SpecError("field element must be an array of coordinate strings")
    return K.element([rational_from_str(c) for c in data])


def curve_to_json(c: Curve) -> dict:
    return {
        "field": field_to_json(c.field),
        "a_invariants": [element_to_json(getattr(c, n)) for n in ("a1", "a2", "a3", "a4", "a6")],
    }


def curve_from_json(data: Any, degree_cap: int = 64) -> Curve:
    if not isinstance(data, dict) or "a_invariants" not in data:
        raise SpecError("curve spec needs 'a_invariants'")
    field = field_from_json(data.get("field", {"defining_poly": ["0/1", "1/1"], "label": "Q"}),
                            degree_cap=degree_cap)
    raw = data["a_invariants"]
    if not isinstance(raw, list) or len(raw) != 5:
        raise SpecError("'a_invariants' must list [a1, a2, a3, a4, a6]")
    ainv = []
    for entry in raw:
        if isinstance(entry, list):
            ainv.append(element_from_json(field, entry))
        else:
            ainv.append(field.from_rational(rational_from_str(str(entry))))
    return Curve(field, ainv)


def point_to_json(P: CurvePoint) -> Any:
    if P.is_infinity:
        return "infinity"
    return {"x": element_to_json(P.x), "y": element_to_json(P.y)}


def torsion_to_json(t: TorsionData) -> dict:
    return {
        "invariants": [t.invariant_m, t.invariant_n],
        "structure": t.structure(),
        "generators": [point_to_json(P) for P in t.generators],
        "field": field_to_json(t.field),
    }


def matgroup_to_json(G: MatGroup) -> dict:
    return {"ell": G.ell, "generators": [list(g) for g in G.generators],
            "order": G.order}


def matgroup_from_json(data: Any) -> MatGroup:
    if not isinstance(data, dict) or "ell" not in data or "generators" not in data:
        raise SpecError("matrix group spec needs 'ell' and 'generators'")
    return MatGroup(int(data["ell"]), [tuple(g) for g in data["generators"]])


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
