"""Orthogonal representations and the turn/rot corner calculus.

An orthogonal representation stores one angle per vertex-face incidence and
one bend string per directed edge.  The incidence at vertex ``v`` whose face
leaves ``v`` through the dart ``(v, w)`` is keyed by that dart.  Replacing
every bend with a degree-2 vertex yields the rectilinear image, whose faces
carry the circular corner sequences that rot(), kitty_pairs() and the
regularity checks operate on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    IndexOutOfFace,
    InvalidRepresentation,
    PreconditionUnmet,
)
from .graph_core import PlaneGraph, build_plane_graph

ANGLES = (90, 180, 270, 360)


def reverse_bends(s: str) -> str:
    """Bend string of the opposite dart: reversed with L and R swapped."""
    return "".join("L" if c == "R" else "R" for c in reversed(s))


@dataclass(frozen=True)
class Corner:
    """One corner of a rectilinear-image face.

    ``pair_index`` is None for single corners and 0/1 for the ordered pair
    of reflex corners that a 360-degree incidence expands into.  ``prev_nbr``
    and ``next_nbr`` are the image-level neighbors along the boundary walk,
    used for geometric direction classification.
    """

    host: int
    turn: int
    pair_index: int | None
    prev_nbr: int
    next_nbr: int


@dataclass(frozen=True)
class CornerSeq:
    """Circular corner sequence of one face of the rectilinear image."""

    face_id: int
    is_external: bool
    corners: tuple[Corner, ...]
    _prefix: tuple[int, ...] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.corners)

    @property
    def turns(self) -> tuple[int, ...]:
        return tuple(c.turn for c in self.corners)


def make_corner_seq(face_id, is_external, corners) -> CornerSeq:
    corners = tuple(corners)
    prefix = [0]
    for c in corners:
        prefix.append(prefix[-1] + c.turn)
    return CornerSeq(face_id, is_external, corners, tuple(prefix))


def turn(c: Corner) -> int:
    """+1 convex, 0 flat, -1 reflex."""
    return c.turn


def rot(seq: CornerSeq, ci: int, cj: int) -> int:
    """Sum of turns along the boundary walk from ci (included) to cj
    (excluded); the empty walk rot(c, c) is 0."""
    m = len(seq.corners)
    if not (0 <= ci < m) or not (0 <= cj < m):
        raise IndexOutOfFace(f"corner index out of range for face {seq.face_id}")
    if cj >= ci:
        return seq._prefix[cj] - seq._prefix[ci]
    return seq._prefix[m] - (seq._prefix[ci] - seq._prefix[cj])


def rot_cycle(seq: CornerSeq) -> int:
    """Turn sum over the full cycle: +4 internal, -4 external."""
    return seq._prefix[len(seq.corners)]


def kitty_pairs(seq: CornerSeq) -> list[tuple[int, int]]:
    """Unordered pairs of reflex corners {i, j} with rot(i,j)=2 or rot(j,i)=2."""
    reflex = [i for i, c in enumerate(seq.corners) if c.turn == -1]
    found = set()
    for a in range(len(reflex)):
        for b in range(a + 1, len(reflex)):
            i, j = reflex[a], reflex[b]
            if rot(seq, i, j) == 2 or rot(seq, j, i) == 2:
                found.add((i, j))
    return sorted(found)


class OrthoRep:
    """Orthogonal representation: angles per incidence, bends per dart.

    Validated eagerly: angle values, 360-degree sums around vertices, bend
    reversal symmetry, and the +-4 turn sum on every face of the rectilinear
    image.
    """

    def __init__(self, graph: PlaneGraph, angles, bends=None):
        self.graph = graph
        self.angles = dict(angles)
        self.bends = {}
        for dart, s in (bends or {}).items():
            self._put_bends(dart, s)
        self._validate()

    def _put_bends(self, dart, s):
        u, v = dart
        s = str(s)
        if any(c not in "LR" for c in s):
            raise InvalidRepresentation(f"bend string {s!r} on {dart}")
        rev = reverse_bends(s)
        if self.bends.get((v, u), rev) != rev:
            raise InvalidRepresentation(
                f"bend strings of ({u},{v}) and ({v},{u}) disagree")
        if s:
            self.bends[(u, v)] = s
            self.bends[(v, u)] = rev

    def bends_of(self, u, v) -> str:
        return self.bends.get((u, v), "")

    def angle_at(self, dart) -> int:
        return self.angles[dart]

    @property
    def total_bends(self) -> int:
        return sum(len(s) for s in self.bends.values()) // 2

    def is_rectilinear(self) -> bool:
        return not self.bends

    def _validate(self):
        g = self.graph
        for u in range(g.n):
            for v in g.rotation[u]:
                if (u, v) not in self.angles:
                    raise InvalidRepresentation(f"missing angle at dart ({u},{v})")
        if len(self.angles) != sum(len(r) for r in g.rotation):
            extra = set(self.angles) - {
                (u, v) for u in range(g.n) for v in g.rotation[u]}
            raise InvalidRepresentation(f"angles on non-darts: {sorted(extra)}")
        for dart, a in self.angles.items():
            if a not in ANGLES:
                raise InvalidRepresentation(f"angle {a} at {dart}")
        for u in range(g.n):
            if g.degree(u) == 0:
                continue
            total = sum(self.angles[(u, v)] for v in g.rotation[u])
            if total != 360:
                raise InvalidRepresentation(
                    f"angles around vertex {u} sum to {total}")
        for dart in self.bends:
            u, v = dart
            if not g.has_edge(u, v):
                raise InvalidRepresentation(f"bends on non-edge {dart}")
        # Turn sum per face of the rectilinear image, without building it:
        # corners contribute 2 - a/90 and each bend of a boundary dart
        # contributes +1 (L) or -1 (R) as read along the walk.
        for f in g.faces:
            if not f.darts:
                continue
            total = 0
            for (v, w) in f.darts:
                total += 2 - self.angles[(v, w)] // 90
                for c in self.bends_of(v, w):
                    total += 1 if c == "L" else -1
            want = -4 if f.face_id == g.external_face else 4
            if total != want:
                raise InvalidRepresentation(
                    f"face {f.face_id} has turn sum {total}, expected {want}")


@dataclass(frozen=True)
class RectImage:
    """Rectilinear image: bends replaced by degree-2 vertices."""

    graph: PlaneGraph
    origin: dict  # image vertex -> ((u, v), index along u->v) for u < v
    corner_seqs: tuple[CornerSeq, ...]

    def seq_of(self, face_id: int) -> CornerSeq:
        return self.corner_seqs[face_id]


def _expand_angle(a):
    if a == 90:
        return ((1, None),)
    if a == 180:
        return ((0, None),)
    if a == 270:
        return ((-1, None),)
    return ((-1, 0), (-1, 1))


def rectilinear_image(h: OrthoRep) -> RectImage:
    """Replace each bend with a degree-2 vertex and build corner sequences."""
    g = h.graph
    # Assign image ids to bends along each canonical (u < v) direction.
    next_id = g.n
    bend_ids = {}
    origin = {}
    for (u, v) in g.edges:
        s = h.bends_of(u, v)
        ids = []
        for i in range(len(s)):
            bend_ids[(u, v, i)] = next_id
            origin[next_id] = ((u, v), i)
            ids.append(next_id)
            next_id += 1

    def chain(u, v):
        """Image vertices strictly between u and v, walking u -> v."""
        a, b = (u, v) if u < v else (v, u)
        m = len(h.bends_of(a, b))
        ids = [bend_ids[(a, b, i)] for i in range(m)]
        return ids if u < v else list(reversed(ids))

    rotation = []
    for u in range(g.n):
        ring = []
        for v in g.rotation[u]:
            mid = chain(u, v)
            ring.append(mid[0] if mid else v)
        rotation.append(ring)
    bend_rot = {}
    for (u, v) in g.edges:
        mid = chain(u, v)
        path = [u] + mid + [v]
        for i in range(1, len(path) - 1):
            bend_rot[path[i]] = (path[i - 1], path[i + 1])
    for b in range(g.n, next_id):
        rotation.append(list(bend_rot[b]))

    if g.num_edges == 0:
        image_graph = build_plane_graph(1, [[]])
    else:
        ext = g.faces[g.external_face].darts[0]
        eu, ev = ext
        mid = chain(eu, ev)
        ext_dart = (eu, mid[0] if mid else ev)
        image_graph = build_plane_graph(next_id, rotation, ext_dart)
        if len(image_graph.faces) != len(g.faces):
            raise InvalidRepresentation("bend expansion altered the face count")

    seqs = []
    for f in g.faces:
        entries = []
        for (v, w) in f.darts:
            mid = chain(v, w)
            path = [v] + mid + [w]
            entries.append(("corner", v, (v, w), path[1]))
            s = h.bends_of(v, w)
            for i, c in enumerate(s):
                entries.append(("bend", path[1 + i], path[i], path[2 + i],
                                1 if c == "L" else -1))
        # Resolve prev neighbors for vertex corners: the image vertex we
        # arrived from, i.e. the previous entry's host chain end.
        resolved = []
        for idx, e in enumerate(entries):
            if e[0] == "corner":
                _, v, dart, nxt = e
                prev_entry = entries[idx - 1]
                if prev_entry[0] == "bend":
                    prev_nbr = prev_entry[1]
                else:
                    # previous dart had no bends; we came straight from its tail
                    pv, pw = prev_entry[2]
                    prev_nbr = pv
                for t, pi in _expand_angle(h.angles[dart]):
                    resolved.append(Corner(v, t, pi, prev_nbr, nxt))
            else:
                _, host, prev_nbr, nxt, t = e
                resolved.append(Corner(host, t, None, prev_nbr, nxt))
        seqs.append(make_corner_seq(
            f.face_id, f.face_id == g.external_face, resolved))
    return RectImage(image_graph, origin, tuple(seqs))


@dataclass(frozen=True)
class RegularityReport:
    """Per-face turn-regularity verdicts and kitty-corner pairs."""

    per_face: dict  # face_id -> tuple of corner index pairs
    external_face: int
    seqs: tuple[CornerSeq, ...] = field(compare=False, repr=False)

    @property
    def is_turn_regular(self) -> bool:
        return all(not pairs for pairs in self.per_face.values())

    @property
    def is_internally_turn_regular(self) -> bool:
        return all(not pairs for fid, pairs in self.per_face.items()
                   if fid != self.external_face)

    def face_verdict(self, face_id: int) -> bool:
        return not self.per_face[face_id]

    def vertex_pairs(self, face_id: int) -> list[tuple[int, int]]:
        """Kitty pairs of a face as (host, host) vertex pairs."""
        seq = self.seqs[face_id]
        out = []
        for i, j in self.per_face[face_id]:
            out.append(tuple(sorted((seq.corners[i].host, seq.corners[j].host))))
        return out


def is_turn_regular(h: OrthoRep) -> RegularityReport:
    image = rectilinear_image(h)
    per_face = {seq.face_id: tuple(kitty_pairs(seq)) for seq in image.corner_seqs}
    return RegularityReport(per_face, h.graph.external_face, image.corner_seqs)


def lemma1_witness(seq: CornerSeq, c1: int, c2: int) -> tuple[int, int]:
    """Concrete kitty pair on the external face, built by walk extension.

    Requires rot(c1, c2) >= 3, or c1 reflex with rot(c1, c2) >= 2.  Extends
    c1 backward to a reflex corner keeping rot >= 2, then c2 forward to a
    reflex corner where rot is exactly 2.
    """
    if not seq.is_external:
        raise PreconditionUnmet("lemma1_witness applies to the external face")
    m = len(seq.corners)
    if not (0 <= c1 < m and 0 <= c2 < m):
        raise IndexOutOfFace("corner index out of range")
    r = rot(seq, c1, c2)
    if not (r >= 3 or (seq.corners[c1].turn == -1 and r >= 2)):
        raise PreconditionUnmet(
            f"need rot >= 3, or a reflex start with rot >= 2; got {r}")

    steps = 0
    while seq.corners[c1].turn != -1 or r < 2:
        c1 = (c1 - 1) % m
        r += seq.corners[c1].turn
        steps += 1
        if steps > m:
            raise InvalidRepresentation("backward extension failed to terminate")

    steps = 0
    while not (r == 2 and seq.corners[c2].turn == -1):
        r += seq.corners[c2].turn
        c2 = (c2 + 1) % m
        steps += 1
        if steps > 2 * m:
            raise InvalidRepresentation("forward extension failed to terminate")
    return (c1, c2)
