"""Integer grid drawings: validation, representation extraction, corner
directions, SVG rendering and area reporting.

Drawings are planar orthogonal: vertices and bends on integer grid points,
edges as alternating horizontal/vertical polylines.  ``extract_representation``
reads angles and bend strings off the geometry and checks them against the
embedding the drawing claims to realize.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .errors import InvalidDrawing, NotDirectional
from .ortho_rep import Corner, OrthoRep, RectImage, is_turn_regular, rectilinear_image

N, E, S, W = (0, 1), (1, 0), (0, -1), (-1, 0)
_CW_FROM_NORTH = (N, E, S, W)


def _dir(p, q):
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx == 0 and dy == 0:
        return None
    if dx != 0 and dy != 0:
        return None
    return ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class GridDrawing:
    """Orthogonal grid drawing of a plane graph.

    Bend lists are stored tail-to-head for the canonical (u < v) direction;
    ``polyline`` serves either direction.
    """

    graph: object
    vertex_pos: dict
    edge_bends: dict = field(default_factory=dict)

    def __post_init__(self):
        pos = {int(v): (int(x), int(y)) for v, (x, y) in self.vertex_pos.items()}
        object.__setattr__(self, "vertex_pos", pos)
        canon = {}
        for (u, v), pts in self.edge_bends.items():
            pts = tuple((int(x), int(y)) for x, y in pts)
            if not pts:
                continue
            if u > v:
                u, v, pts = v, u, tuple(reversed(pts))
            if canon.get((u, v), pts) != pts:
                raise InvalidDrawing(f"conflicting bend lists for edge ({u},{v})")
            canon[(u, v)] = pts
        object.__setattr__(self, "edge_bends", canon)
        for v in range(self.graph.n):
            if v not in pos:
                raise InvalidDrawing(f"vertex {v} has no position")

    def bends_of(self, u, v):
        if u < v:
            return self.edge_bends.get((u, v), ())
        return tuple(reversed(self.edge_bends.get((v, u), ())))

    def polyline(self, u, v):
        return (self.vertex_pos[u],) + self.bends_of(u, v) + (self.vertex_pos[v],)

    def total_bends(self) -> int:
        return sum(len(p) for p in self.edge_bends.values())

    def bend_counts(self) -> dict:
        return {e: len(p) for e, p in self.edge_bends.items()}


def _node_points(d: GridDrawing):
    nodes = []
    for v in range(d.graph.n):
        nodes.append((d.vertex_pos[v], ("vertex", v)))
    for (u, v), pts in sorted(d.edge_bends.items()):
        for i, p in enumerate(pts):
            nodes.append((p, ("bend", (u, v), i)))
    return nodes


def segments(d: GridDrawing):
    """All drawn segments as (p, q, edge) with p, q in polyline order."""
    out = []
    for (u, v) in d.graph.edges:
        pts = d.polyline(u, v)
        for i in range(len(pts) - 1):
            out.append((pts[i], pts[i + 1], (u, v)))
    return out


def validate_drawing(d: GridDrawing) -> list[str]:
    """All violations of the planar-orthogonal contract; empty iff valid."""
    violations = []
    for (u, v) in d.graph.edges:
        pts = d.polyline(u, v)
        prev_dir = None
        for i in range(len(pts) - 1):
            dd = _dir(pts[i], pts[i + 1])
            if dd is None:
                violations.append(
                    f"edge ({u},{v}) segment {i} is not a proper axis-parallel segment")
                prev_dir = None
                continue
            if prev_dir is not None and _cross(prev_dir, dd) == 0:
                violations.append(
                    f"edge ({u},{v}) has collinear or reversing segments at bend {i - 1}")
            prev_dir = dd

    nodes = _node_points(d)
    seen = {}
    for p, tag in nodes:
        if p in seen:
            violations.append(f"{tag} and {seen[p]} share point {p}")
        else:
            seen[p] = tag

    horiz, vert = [], []
    for p, q, e in segments(d):
        if p[1] == q[1] and p[0] != q[0]:
            x1, x2 = sorted((p[0], q[0]))
            horiz.append((p[1], x1, x2, e))
        elif p[0] == q[0] and p[1] != q[1]:
            y1, y2 = sorted((p[1], q[1]))
            vert.append((p[0], y1, y2, e))
        # degenerate segments already reported above

    xs_by_y, ys_by_x = {}, {}
    for p, _tag in nodes:
        xs_by_y.setdefault(p[1], []).append(p[0])
        ys_by_x.setdefault(p[0], []).append(p[1])
    for lst in xs_by_y.values():
        lst.sort()
    for lst in ys_by_x.values():
        lst.sort()

    for y, x1, x2, e in horiz:
        xs = xs_by_y.get(y, ())
        lo, hi = bisect_right(xs, x1), bisect_left(xs, x2)
        if hi > lo:
            violations.append(
                f"segment of edge {e} at y={y} passes through a point it is "
                f"not incident to (x in ({x1},{x2}))")
    for x, y1, y2, e in vert:
        ys = ys_by_x.get(x, ())
        lo, hi = bisect_right(ys, y1), bisect_left(ys, y2)
        if hi > lo:
            violations.append(
                f"segment of edge {e} at x={x} passes through a point it is "
                f"not incident to (y in ({y1},{y2}))")

    by_line = {}
    for y, x1, x2, e in horiz:
        by_line.setdefault(("h", y), []).append((x1, x2, e))
    for x, y1, y2, e in vert:
        by_line.setdefault(("v", x), []).append((y1, y2, e))
    for key, items in by_line.items():
        items.sort()
        max_end = None
        prev = None
        for a, b, e in items:
            if max_end is not None and a < max_end:
                violations.append(
                    f"segments of edges {prev} and {e} overlap on line {key}")
            if max_end is None or b > max_end:
                max_end = b
                prev = e

    hs_by_y = sorted({h[0] for h in horiz})
    horiz_at = {}
    for y, x1, x2, e in horiz:
        horiz_at.setdefault(y, []).append((x1, x2, e))
    for x, y1, y2, e in vert:
        lo = bisect_right(hs_by_y, y1)
        hi = bisect_left(hs_by_y, y2)
        for yi in range(lo, hi):
            y = hs_by_y[yi]
            for (x1, x2, e2) in horiz_at[y]:
                if x1 < x < x2:
                    violations.append(
                        f"edges {e2} and {e} cross at ({x}, {y})")
    return violations


class CornerDirection(enum.Enum):
    UP_LEFT = "up-left"
    UP_RIGHT = "up-right"
    DOWN_LEFT = "down-left"
    DOWN_RIGHT = "down-right"
    UPWARD = "upward"
    DOWNWARD = "downward"
    LEFTWARD = "leftward"
    RIGHTWARD = "rightward"


def derive_rotation(d: GridDrawing):
    """Clockwise rotation lists read off the geometry (north, east, south, west)."""
    rot = []
    for v in range(d.graph.n):
        by_dir = {}
        for w in d.graph.rotation[v]:
            pts = d.polyline(v, w)
            dd = _dir(pts[0], pts[1])
            if dd is None or dd in by_dir:
                raise InvalidDrawing(f"edges at vertex {v} do not use distinct axes")
            by_dir[dd] = w
        rot.append(tuple(by_dir[dd] for dd in _CW_FROM_NORTH if dd in by_dir))
    return tuple(rot)


def _cyclic_equal(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    n = len(a)
    for s in range(n):
        if all(a[(s + i) % n] == b[i] for i in range(n)):
            return True
    return False


def extract_representation(d: GridDrawing) -> OrthoRep:
    """Read angles and bend strings off a valid drawing.

    Raises InvalidDrawing when the geometry violates the drawing contract,
    does not realize the embedding of ``d.graph``, or when the unbounded
    region is not the designated external face.
    """
    violations = validate_drawing(d)
    if violations:
        raise InvalidDrawing("invalid drawing", violations)
    g = d.graph
    derived = derive_rotation(d)
    for v in range(g.n):
        if not _cyclic_equal(derived[v], g.rotation[v]):
            raise InvalidDrawing(
                f"drawn rotation at vertex {v} is {derived[v]}, embedding "
                f"says {g.rotation[v]}")

    angles = {}
    face_turn = {}
    for f in g.faces:
        total = 0
        for k, (v, w) in enumerate(f.darts):
            pu, pv = f.darts[k - 1]
            in_pts = d.polyline(pu, pv)
            dir_in = _dir(in_pts[-2], in_pts[-1])
            out_pts = d.polyline(v, w)
            dir_out = _dir(out_pts[0], out_pts[1])
            cr = _cross(dir_in, dir_out)
            if cr != 0:
                t = cr
            elif dir_in == dir_out:
                t = 0
            else:
                t = -2
            angles[(v, w)] = 180 - 90 * t
            total += t
            for i in range(len(out_pts) - 2):
                a = _dir(out_pts[i], out_pts[i + 1])
                b = _dir(out_pts[i + 1], out_pts[i + 2])
                total += _cross(a, b)
        face_turn[f.face_id] = total

    for fid, total in face_turn.items():
        if total == -4 and fid != g.external_face:
            raise InvalidDrawing(
                f"unbounded region is face {fid}, but face {g.external_face} "
                "is designated external")

    bends = {}
    for (u, v) in g.edges:
        pts = d.polyline(u, v)
        letters = []
        for i in range(len(pts) - 2):
            a = _dir(pts[i], pts[i + 1])
            b = _dir(pts[i + 1], pts[i + 2])
            letters.append("L" if _cross(a, b) > 0 else "R")
        if letters:
            bends[(u, v)] = "".join(letters)
    return OrthoRep(g, angles, bends)


def rect_drawing(d: GridDrawing):
    """Rectilinear image of the drawing's representation plus the positions
    of all image vertices (original vertices and bends)."""
    h = extract_representation(d)
    image = rectilinear_image(h)
    pos = dict(d.vertex_pos)
    for b, (edge, i) in image.origin.items():
        pos[b] = d.edge_bends[edge][i]
    return image, pos


def corner_direction_at(pos, c: Corner, image_degree: int) -> CornerDirection:
    host = pos[c.host]
    if image_degree == 1:
        dd = _dir(host, pos[c.next_nbr])
        return {
            S: CornerDirection.UPWARD,
            N: CornerDirection.DOWNWARD,
            E: CornerDirection.LEFTWARD,
            W: CornerDirection.RIGHTWARD,
        }[dd]
    if c.turn != -1 or image_degree != 2:
        raise NotDirectional(
            "direction is defined for reflex corners at degree-2 hosts and "
            "for degree-1 hosts only")
    d1 = _dir(host, pos[c.prev_nbr])
    d2 = _dir(host, pos[c.next_nbr])
    vertical = d1 if d1[0] == 0 else d2
    horizontal = d1 if d1[1] == 0 else d2
    if vertical[0] != 0 or horizontal[1] != 0:
        raise NotDirectional("host segments are not one horizontal, one vertical")
    up = vertical == S
    left = horizontal == E
    return {
        (True, True): CornerDirection.UP_LEFT,
        (True, False): CornerDirection.UP_RIGHT,
        (False, True): CornerDirection.DOWN_LEFT,
        (False, False): CornerDirection.DOWN_RIGHT,
    }[(up, left)]


def corner_direction(d: GridDrawing, c: Corner) -> CornerDirection:
    image, pos = rect_drawing(d)
    return corner_direction_at(pos, c, image.graph.degree(c.host))


def bounding_area(d: GridDrawing) -> tuple[int, int]:
    """Width and height after removing grid lines with no vertex or bend."""
    xs, ys = set(), set()
    for p, _tag in _node_points(d):
        xs.add(p[0])
        ys.add(p[1])
    if not xs:
        return (0, 0)
    return (max(0, len(xs) - 1), max(0, len(ys) - 1))


def render_svg(d: GridDrawing, *, scale: int = 24, margin: int = 24,
               highlight_kitty: bool = False, labels: bool = False) -> bytes:
    """Deterministic SVG: one polyline per edge, one marker per vertex.

    ``highlight_kitty`` draws a dotted arrow between the hosts of every
    kitty-corner pair.
    """
    violations = validate_drawing(d)
    if violations:
        raise InvalidDrawing("cannot render an invalid drawing", violations)
    pts = [p for p, _ in _node_points(d)]
    if not pts:
        pts = [(0, 0)]
    min_x = min(p[0] for p in pts)
    max_y = max(p[1] for p in pts)
    max_x = max(p[0] for p in pts)
    min_y = min(p[1] for p in pts)

    def sx(x):
        return (x - min_x) * scale + margin

    def sy(y):
        return (max_y - y) * scale + margin

    width = (max_x - min_x) * scale + 2 * margin
    height = (max_y - min_y) * scale + 2 * margin
    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">')
    out.append('<g stroke="black" stroke-width="2" fill="none">')
    for (u, v) in d.graph.edges:
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in d.polyline(u, v))
        out.append(f'<polyline points="{coords}"/>')
    out.append("</g>")
    if highlight_kitty:
        image, pos = rect_drawing(d)
        h = extract_representation(d)
        report = is_turn_regular(h)
        out.append('<g stroke="gray" stroke-width="1.5" '
                   'stroke-dasharray="4 3" fill="none">')
        for seq in image.corner_seqs:
            for i, j in report.per_face[seq.face_id]:
                a = pos[seq.corners[i].host]
                b = pos[seq.corners[j].host]
                out.append(
                    f'<line x1="{sx(a[0])}" y1="{sy(a[1])}" '
                    f'x2="{sx(b[0])}" y2="{sy(b[1])}"/>')
        out.append("</g>")
    out.append('<g fill="black">')
    for v in range(d.graph.n):
        x, y = d.vertex_pos[v]
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="4"/>')
    out.append("</g>")
    if labels:
        out.append('<g font-family="monospace" font-size="12" fill="blue">')
        for v in range(d.graph.n):
            x, y = d.vertex_pos[v]
            out.append(f'<text x="{sx(x) + 5}" y="{sy(y) - 5}">{v}</text>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
