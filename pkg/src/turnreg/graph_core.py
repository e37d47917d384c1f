"""Plane-graph data model: rotation systems, faces, connectivity, st-ordering.

A plane graph is given by per-vertex rotation lists (neighbors in clockwise
order) plus a designated external face.  The face-successor of a dart (u, v)
is the dart (v, w) where w follows u in the clockwise list at v; with this
convention internal faces traverse counterclockwise and the external face
clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegreeTooHigh,
    EulerViolation,
    InconsistentRotation,
    NotBiconnected,
    NotSimple,
    PreconditionUnmet,
)

Dart = tuple[int, int]


@dataclass(frozen=True)
class FaceBoundary:
    """One face of a plane graph: its darts in traversal order."""

    face_id: int
    darts: tuple[Dart, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.darts)


@dataclass(frozen=True)
class PlaneGraph:
    """Simple planar 4-graph with a fixed embedding and external face."""

    n: int
    rotation: tuple[tuple[int, ...], ...]
    external_face: int
    faces: tuple[FaceBoundary, ...] = field(compare=False)
    _face_of: dict = field(compare=False, repr=False)
    _rot_pos: dict = field(compare=False, repr=False)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (u, v) for u in range(self.n) for v in self.rotation[u] if u < v
        )

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return (v, u) in self._rot_pos

    def next_dart(self, dart: Dart) -> Dart:
        """Face-successor of a dart."""
        u, v = dart
        i = self._rot_pos[(v, u)]
        return (v, self.rotation[v][(i + 1) % len(self.rotation[v])])

    def face_of(self, dart: Dart) -> int:
        return self._face_of[dart]

    def cw_successor(self, v: int, u: int) -> int:
        """Neighbor following u in the clockwise order at v."""
        i = self._rot_pos[(v, u)]
        return self.rotation[v][(i + 1) % len(self.rotation[v])]

    def cw_index(self, v: int, u: int) -> int:
        return self._rot_pos[(v, u)]

    def is_internal(self, face_id: int) -> bool:
        return face_id != self.external_face

    def with_external_face(self, face_id: int) -> "PlaneGraph":
        """Same embedding, different designated external face."""
        if not 0 <= face_id < len(self.faces):
            raise PreconditionUnmet(f"no face {face_id}")
        return PlaneGraph(self.n, self.rotation, face_id, self.faces,
                          self._face_of, self._rot_pos)


def _trace_faces(n, rotation, rot_pos):
    faces = []
    face_of = {}
    for u in range(n):
        for v in rotation[u]:
            start = (u, v)
            if start in face_of:
                continue
            fid = len(faces)
            boundary = []
            dart = start
            while True:
                face_of[dart] = fid
                boundary.append(dart)
                a, b = dart
                i = rot_pos[(b, a)]
                dart = (b, rotation[b][(i + 1) % len(rotation[b])])
                if dart == start:
                    break
            faces.append(FaceBoundary(fid, tuple(boundary)))
    return faces, face_of


def build_plane_graph(n, rotation, external_dart=None) -> PlaneGraph:
    """Validate a rotation system and precompute its faces.

    ``external_dart`` picks the external face; it may be omitted only when
    the traversal finds a single face (trees).
    """
    if n <= 0:
        raise InconsistentRotation("vertex count must be positive")
    if len(rotation) != n:
        raise InconsistentRotation(
            f"expected {n} rotation lists, got {len(rotation)}")
    rot = []
    for u, ring in enumerate(rotation):
        ring = tuple(ring)
        if len(ring) > 4:
            raise DegreeTooHigh(f"vertex {u} has degree {len(ring)}")
        for v in ring:
            if not isinstance(v, int) or not 0 <= v < n:
                raise InconsistentRotation(
                    f"rotation of {u} names invalid vertex {v!r}")
            if v == u:
                raise NotSimple(f"self-loop at {u}")
        if len(set(ring)) != len(ring):
            raise NotSimple(f"parallel edges at {u}")
        rot.append(ring)
    rot = tuple(rot)

    rot_pos = {}
    for u in range(n):
        for i, v in enumerate(rot[u]):
            rot_pos[(u, v)] = i
    for u in range(n):
        for v in rot[u]:
            if (v, u) not in rot_pos:
                raise InconsistentRotation(f"dart ({u},{v}) has no twin")

    num_edges = sum(len(r) for r in rot) // 2
    if num_edges == 0:
        if n != 1:
            raise EulerViolation("edgeless graph must be a single vertex")
        faces = (FaceBoundary(0, ()),)
        return PlaneGraph(1, rot, 0, faces, {}, rot_pos)

    faces, face_of = _trace_faces(n, rot, rot_pos)
    if n - num_edges + len(faces) != 2:
        raise EulerViolation(
            f"V-E+F = {n}-{num_edges}+{len(faces)} != 2; "
            "embedding is not a connected sphere embedding")

    if external_dart is None:
        if len(faces) != 1:
            raise PreconditionUnmet(
                "external face must be designated when there are several")
        ext = 0
    else:
        ext_dart = (int(external_dart[0]), int(external_dart[1]))
        if ext_dart not in face_of:
            raise InconsistentRotation(
                f"external dart {ext_dart} does not exist")
        ext = face_of[ext_dart]
    return PlaneGraph(n, rot, ext, tuple(faces), face_of, rot_pos)


def faces(g: PlaneGraph) -> tuple[FaceBoundary, ...]:
    """All faces; every dart appears in exactly one boundary."""
    return g.faces


def is_biconnected(g: PlaneGraph) -> bool:
    """True iff the graph has no cut vertex and at least three vertices."""
    if g.n < 3:
        return False
    # Iterative lowpoint computation from vertex 0.
    depth = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    order = []
    stack = [(0, iter(g.rotation[0]))]
    depth[0] = 0
    low[0] = 0
    order.append(0)
    root_children = 0
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if depth[w] == -1:
                depth[w] = depth[v] + 1
                low[w] = depth[w]
                parent[w] = v
                if v == 0:
                    root_children += 1
                order.append(w)
                stack.append((w, iter(g.rotation[w])))
                advanced = True
                break
            elif w != parent[v]:
                low[v] = min(low[v], depth[w])
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != 0 and low[v] >= depth[p]:
                    return False
    if len(order) != g.n:
        return False
    return root_children <= 1


@dataclass(frozen=True)
class StOrdering:
    """Vertex order where every internal vertex has an earlier and a later
    neighbor; s is first and t last."""

    order: tuple[int, ...]

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def validate_st_order(g: PlaneGraph, order) -> bool:
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in range(g.n):
        i = pos[v]
        if i == 0 or i == g.n - 1:
            continue
        nbrs = [pos[w] for w in g.rotation[v]]
        if not any(p < i for p in nbrs) or not any(p > i for p in nbrs):
            return False
    return True


def st_ordering(g: PlaneGraph, s: int, t: int) -> StOrdering:
    """Deterministic st-ordering built from an open ear decomposition.

    A DFS rooted at t (forced first child s, remaining neighbors in
    ascending order) yields chains in the usual way: for each vertex in
    preorder and each incident back edge leading into its subtree, walk the
    tree upward from the far endpoint until a marked vertex is reached.
    Each chain is an open ear; its interior vertices slot into the order
    between the ear's endpoints.
    """
    if s == t or not (0 <= s < g.n) or not (0 <= t < g.n):
        raise PreconditionUnmet("s and t must be distinct vertices")
    if g.n == 2:
        if g.has_edge(s, t):
            return StOrdering((s, t))
        raise NotBiconnected("two isolated vertices")
    if not is_biconnected(g):
        raise NotBiconnected("st-ordering requires a biconnected graph")

    # DFS from t; s is the forced first child (a virtual tree edge if (t, s)
    # is not a real edge), all other exploration lowest-neighbor-first.
    parent = [-1] * g.n
    pre = [-1] * g.n
    post_size = [1] * g.n
    pre[t] = 0
    pre[s] = 1
    parent[s] = t
    counter = 2
    order_stack = [s]
    iter_stack = [iter(sorted(g.rotation[s]))]
    preorder = [t, s]
    while order_stack:
        v = order_stack[-1]
        advanced = False
        for w in iter_stack[-1]:
            if pre[w] == -1:
                pre[w] = counter
                counter += 1
                parent[w] = v
                preorder.append(w)
                order_stack.append(w)
                iter_stack.append(iter(sorted(g.rotation[w])))
                advanced = True
                break
        if not advanced:
            order_stack.pop()
            iter_stack.pop()
            if order_stack:
                post_size[order_stack[-1]] += post_size[v]
    if counter != g.n:
        raise NotBiconnected("graph is not connected")
    post_size[t] = g.n  # everything hangs below the root

    def in_subtree(anc, w):
        return pre[anc] <= pre[w] < pre[anc] + post_size[anc]

    # Order maintenance: doubly linked list plus Fraction labels for O(1)
    # before/after queries.
    nxt = {s: t, t: None}
    prv = {t: s, s: None}
    label = {s: Fraction(0), t: Fraction(1)}
    marked = [False] * g.n
    marked[s] = marked[t] = True

    def insert_after(anchor, chain):
        hi = nxt[anchor]
        lo_l, hi_l = label[anchor], label[hi]
        step = (hi_l - lo_l) / (len(chain) + 1)
        at = anchor
        for i, x in enumerate(chain, start=1):
            label[x] = lo_l + step * i
            nxt[x] = nxt[at]
            prv[x] = at
            prv[nxt[at]] = x
            nxt[at] = x
            at = x

    def insert_before(anchor, chain):
        insert_after(prv[anchor], chain)

    for v in preorder:
        # Back edges from v into its own subtree, far endpoint ascending.
        targets = sorted(
            w for w in g.rotation[v]
            if parent[w] != v and parent[v] != w and in_subtree(v, w)
        )
        for w in targets:
            if not marked[v]:
                raise NotBiconnected("chain decomposition found a cut vertex")
            if marked[w]:
                continue  # ear with no interior vertices
            chain = []
            x = w
            while not marked[x]:
                chain.append(x)
                marked[x] = True
                x = parent[x]
            z = x  # first marked ancestor: the ear's far endpoint
            # chain currently runs from w (at v's side) toward z
            if label[v] < label[z]:
                insert_after(v, chain)
            else:
                insert_before(v, list(reversed(chain)))

    order = []
    x = s
    while x is not None:
        order.append(x)
        x = nxt[x]
    if not validate_st_order(g, order):
        raise NotBiconnected("failed to build a valid st-ordering")
    return StOrdering(tuple(order))
