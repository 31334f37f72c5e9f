"""JSON documents for hyperlinks, colored hyperlinks and planar surfaces.

    hyperlink:          {"kind": "hyperlink", "loops": [{"name": ..., "vertices": [[x0, x1, x2, x3], ...]}]}
    colored-hyperlink:  the same plus "colors": [{"jplus": "1/2", "jminus": "1"}, ...]
    surface:            {"kind": "surface", "normal_sign": 1,
                         "components": [{"outer": [[x2, x3], ...], "holes": [[[x2, x3], ...]]}]}

Floats are written with repr precision, so a document re-parses to an equal value.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .geometry import ColoredHyperlink, Hyperlink, PlanarSurface, PLLoop, SurfaceComponent

KINDS = ("hyperlink", "colored-hyperlink", "surface")


class MalformedDocument(ValueError):
    pass


def _spin(j: Fraction) -> str:
    return str(j)


def hyperlink_to_doc(h: Hyperlink) -> dict:
    return {"kind": "hyperlink",
            "loops": [{"name": l.name, "vertices": l.vertices.tolist()} for l in h]}


def colored_to_doc(M: ColoredHyperlink) -> dict:
    d = hyperlink_to_doc(M.base)
    d["kind"] = "colored-hyperlink"
    d["colors"] = [{"jplus": _spin(a), "jminus": _spin(b)} for a, b in M.colors]
    return d


def surface_to_doc(S: PlanarSurface) -> dict:
    return {"kind": "surface", "normal_sign": S.normal_sign,
            "components": [{"outer": c.outer.tolist(), "holes": [h.tolist() for h in c.holes]}
                           for c in S.components]}


def to_doc(obj) -> dict:
    if isinstance(obj, ColoredHyperlink):
        return colored_to_doc(obj)
    if isinstance(obj, Hyperlink):
        return hyperlink_to_doc(obj)
    if isinstance(obj, PlanarSurface):
        return surface_to_doc(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _field(d, key, where, typ=None):
    if not isinstance(d, dict) or key not in d:
        raise MalformedDocument(f"{where}: missing field '{key}'")
    v = d[key]
    if typ is not None and not isinstance(v, typ):
        raise MalformedDocument(f"{where}.{key}: expected {typ.__name__}")
    return v


def _wrap(fn, where):
    try:
        return fn()
    except MalformedDocument:
        raise
    except (ValueError, TypeError) as e:
        raise MalformedDocument(f"{where}: {e}") from None


def hyperlink_from_doc(d: dict) -> Hyperlink:
    loops = []
    for i, ld in enumerate(_field(d, "loops", "$", list)):
        where = f"$.loops[{i}]"
        verts = _field(ld, "vertices", where, list)
        name = ld.get("name")
        loops.append(_wrap(lambda: PLLoop(verts, name), where + ".vertices"))
    return Hyperlink(tuple(loops))


def colored_from_doc(d: dict) -> ColoredHyperlink:
    h = hyperlink_from_doc(d)
    cols = []
    for i, c in enumerate(_field(d, "colors", "$", list)):
        where = f"$.colors[{i}]"
        cols.append((_field(c, "jplus", where), _field(c, "jminus", where)))
    return _wrap(lambda: ColoredHyperlink(h, tuple(cols)), "$.colors")


def surface_from_doc(d: dict) -> PlanarSurface:
    comps = []
    for i, cd in enumerate(_field(d, "components", "$", list)):
        where = f"$.components[{i}]"
        outer = _field(cd, "outer", where, list)
        holes = cd.get("holes", [])
        comps.append(_wrap(lambda: SurfaceComponent(outer, tuple(holes)), where))
    sign = d.get("normal_sign", 1)
    return _wrap(lambda: PlanarSurface(tuple(comps), sign), "$")


def from_doc(d: dict):
    kind = _field(d, "kind", "$", str)
    if kind == "hyperlink":
        return hyperlink_from_doc(d)
    if kind == "colored-hyperlink":
        return colored_from_doc(d)
    if kind == "surface":
        return surface_from_doc(d)
    raise MalformedDocument(f"$.kind: unknown document kind {kind!r}; expected one of {KINDS}")


def dumps(obj) -> str:
    return json.dumps(to_doc(obj) if not isinstance(obj, dict) else obj, indent=1) + "\n"


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_doc(d)


def load(path):
    with open(path) as f:
        text = f.read()
    try:
        return loads(text)
    except MalformedDocument as e:
        raise MalformedDocument(f"{path}: {e}") from None
