"""Bit-exact JSON formats for graphs, representations and drawings.

Graph:          {"n": int, "rotation": [[int, ...], ...], "external": [u, v]}
                ("external" may be omitted for trees, which have one face)
Representation: {"graph": <graph>, "angles": [[v, face, deg], ...],
                 "bends": [[u, v, "LRL..."], ...]}
Drawing:        {"graph": <graph>, "pos": [[v, x, y], ...],
                 "bends": [[u, v, [[x, y], ...]], ...]}

Angle triples are listed face by face in boundary order, which disambiguates
vertices that occur more than once on a face.  Serialization is canonical:
sorted keys, fixed separators, a single trailing newline.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .geometry import GridDrawing
from .graph_core import PlaneGraph, build_plane_graph
from .ortho_rep import OrthoRep


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_obj(g: PlaneGraph) -> dict:
    obj = {"n": g.n, "rotation": [list(r) for r in g.rotation]}
    ext = g.faces[g.external_face].darts
    if len(g.faces) > 1:
        obj["external"] = list(ext[0])
    return obj


def graph_from_obj(obj) -> PlaneGraph:
    try:
        n = int(obj["n"])
        rotation = [[int(v) for v in ring] for ring in obj["rotation"]]
        ext = obj.get("external")
        ext_dart = (int(ext[0]), int(ext[1])) if ext is not None else None
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed graph object: {exc}") from exc
    return build_plane_graph(n, rotation, ext_dart)


def rep_to_obj(h: OrthoRep) -> dict:
    g = h.graph
    angles = []
    for f in g.faces:
        for (v, w) in f.darts:
            angles.append([v, f.face_id, h.angles[(v, w)]])
    bends = []
    for (u, v) in g.edges:
        s = h.bends_of(u, v)
        if s:
            bends.append([u, v, s])
    return {"graph": graph_to_obj(g), "angles": angles, "bends": bends}


def rep_from_obj(obj) -> OrthoRep:
    try:
        g = graph_from_obj(obj["graph"])
        triples = [(int(v), int(f), int(a)) for v, f, a in obj["angles"]]
        bend_items = [(int(u), int(v), str(s)) for u, v, s in obj.get("bends", [])]
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed representation object: {exc}") from exc
    # consume triples in canonical face order
    angles = {}
    queue = list(triples)
    for f in g.faces:
        for (v, w) in f.darts:
            if not queue:
                raise ParseError("too few angle entries")
            tv, tf, ta = queue.pop(0)
            if tv != v or tf != f.face_id:
                raise ParseError(
                    f"angle entry [{tv},{tf},{ta}] does not match incidence "
                    f"({v}, face {f.face_id})")
            angles[(v, w)] = ta
    if queue:
        raise ParseError("too many angle entries")
    bends = {}
    for u, v, s in bend_items:
        bends[(u, v)] = s
    return OrthoRep(g, angles, bends)


def drawing_to_obj(d: GridDrawing) -> dict:
    pos = [[v, d.vertex_pos[v][0], d.vertex_pos[v][1]]
           for v in range(d.graph.n)]
    bends = []
    for (u, v) in sorted(d.edge_bends):
        bends.append([u, v, [[x, y] for x, y in d.edge_bends[(u, v)]]])
    return {"graph": graph_to_obj(d.graph), "pos": pos, "bends": bends}


def drawing_from_obj(obj) -> GridDrawing:
    try:
        g = graph_from_obj(obj["graph"])
        pos = {int(v): (int(x), int(y)) for v, x, y in obj["pos"]}
        bends = {}
        for u, v, pts in obj.get("bends", []):
            bends[(int(u), int(v))] = tuple((int(x), int(y)) for x, y in pts)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed drawing object: {exc}") from exc
    return GridDrawing(g, pos, bends)


def dumps_graph(g: PlaneGraph) -> str:
    return _dump(graph_to_obj(g))


def dumps_rep(h: OrthoRep) -> str:
    return _dump(rep_to_obj(h))


def dumps_drawing(d: GridDrawing) -> str:
    return _dump(drawing_to_obj(d))


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def loads_graph(text: str) -> PlaneGraph:
    return graph_from_obj(_loads(text))


def loads_rep(text: str) -> OrthoRep:
    return rep_from_obj(_loads(text))


def loads_drawing(text: str) -> GridDrawing:
    return drawing_from_obj(_loads(text))
