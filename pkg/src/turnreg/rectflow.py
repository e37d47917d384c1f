"""Flow-network decision procedure for rectilinear turn-regular
representations of biconnected plane graphs with faces of degree at most 8.

Every vertex-node supplies 4 units (360 degrees in 90-degree quanta); every
face-node demands 2*deg(f) - 4 (internal) or 2*deg(f) + 4 (external).  A unit
of flow from a vertex to a face is one 90-degree quantum of the angle at that
incidence, so every incidence arc carries between 1 and 3 units.  Bends are
ruled out simply by having no face-to-face arcs.  On internal faces of degree
8, each antipodal vertex pair routes through a shared node whose outgoing
capacity 5 forbids the 3+3 pattern, i.e. two 270-degree angles facing each
other across the face.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FaceTooLarge, Infeasible, PreconditionUnmet
from .graph_core import FaceBoundary, PlaneGraph, is_biconnected
from .ortho_rep import OrthoRep, is_turn_regular


def potential_kitty_pairs(face: FaceBoundary) -> list[tuple[int, int]]:
    """Vertex pairs of an internal face that could form kitty corners.

    Faces of degree at most 7 admit none; on a degree-8 face exactly the
    four antipodal pairs qualify (a kitty pair needs three boundary vertices
    strictly between its members on both sides).
    """
    if face.degree > 8:
        raise FaceTooLarge(f"face of degree {face.degree}")
    if face.degree < 8:
        return []
    verts = face.vertices()
    return [tuple(sorted((verts[i], verts[i + 4]))) for i in range(4)]


@dataclass(frozen=True)
class FlowNetwork:
    """Typed node list plus lower-bounded arcs.

    nodes[i] is ("vertex", v), ("face", f) or ("kitty", f, pair_index);
    arcs[j] is (from_node, to_node, low, cap, dart_or_None).  A dart tag on
    an arc means its flow value is the 90-degree quantum count of that
    vertex-face incidence.
    """

    graph: PlaneGraph
    nodes: tuple
    arcs: tuple
    supply: tuple  # per node
    demand: tuple  # per node

    def node_id(self, key):
        return self._index[key]

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {key: i for i, key in enumerate(self.nodes)})

    def dump_obj(self) -> dict:
        labels = []
        for key in self.nodes:
            if key[0] == "vertex":
                labels.append(f"v{key[1]}")
            elif key[0] == "face":
                labels.append(f"f{key[1]}")
            else:
                labels.append(f"f{key[1]}:pair{key[2]}")
        return {
            "nodes": labels,
            "arcs": [[a, b, cap] for (a, b, low, cap, tag) in self.arcs],
            "supply": list(self.supply),
            "demand": list(self.demand),
        }


def face_capacity(deg: int, external: bool) -> int:
    return 2 * deg + (4 if external else -4)


def build_network(g: PlaneGraph) -> FlowNetwork:
    """Kitty-constrained, bend-free angle network of a plane graph."""
    if not is_biconnected(g):
        raise PreconditionUnmet("graph must be biconnected")
    for f in g.faces:
        if f.degree > 8:
            raise PreconditionUnmet(
                f"face {f.face_id} has degree {f.degree} > 8")

    nodes = [("vertex", v) for v in range(g.n)]
    nodes += [("face", f.face_id) for f in g.faces]
    kitty_of = {}  # (face_id, vertex) -> pair node key
    pair_nodes = []
    for f in g.faces:
        if f.face_id == g.external_face:
            continue  # a degree-8 external face cannot host kitty corners
        for i, pair in enumerate(potential_kitty_pairs(f)):
            key = ("kitty", f.face_id, i)
            pair_nodes.append(key)
            for v in pair:
                kitty_of[(f.face_id, v)] = key
    nodes += pair_nodes

    index = {key: i for i, key in enumerate(nodes)}
    supply = [0] * len(nodes)
    demand = [0] * len(nodes)
    for v in range(g.n):
        supply[index[("vertex", v)]] = 4
    for f in g.faces:
        demand[index[("face", f.face_id)]] = face_capacity(
            f.degree, f.face_id == g.external_face)
    assert sum(supply) == sum(demand), "angle budget must balance"

    arcs = []
    for f in g.faces:
        fn = index[("face", f.face_id)]
        for (v, w) in f.darts:
            vn = index[("vertex", v)]
            target = kitty_of.get((f.face_id, v))
            if target is not None:
                arcs.append((vn, index[target], 1, 3, (v, w)))
            else:
                arcs.append((vn, fn, 1, 3, (v, w)))
        for i, pair in enumerate(potential_kitty_pairs(f)
                                 if f.face_id != g.external_face else []):
            arcs.append((index[("kitty", f.face_id, i)], fn, 2, 5, None))
    return FlowNetwork(g, tuple(nodes), tuple(arcs),
                       tuple(supply), tuple(demand))


@dataclass(frozen=True)
class FlowAssignment:
    """Integral flow on a FlowNetwork.

    ``value`` counts shipped units in the original (quantum) scale and equals
    4*|V| exactly when all supplies reach their demands; ``deficit`` is the
    unshipped transformed amount (0 iff feasible).
    """

    network: FlowNetwork
    arc_flow: tuple
    value: int
    deficit: int

    @property
    def feasible(self) -> bool:
        return self.deficit == 0

    def angle_units(self) -> dict:
        """dart -> flow quanta, only meaningful when feasible."""
        out = {}
        for (a, b, low, cap, tag), fl in zip(self.network.arcs, self.arc_flow):
            if tag is not None:
                out[tag] = fl
        return out


class _Dinic:
    def __init__(self, n):
        self.n = n
        self.head = [[] for _ in range(n)]
        self.to = []
        self.cap = []

    def add(self, a, b, c):
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)
        return len(self.to) - 2

    def _bfs(self, s, t):
        self.level = [-1] * self.n
        self.level[s] = 0
        queue = [s]
        for v in queue:
            for e in self.head[v]:
                if self.cap[e] > 0 and self.level[self.to[e]] == -1:
                    self.level[self.to[e]] = self.level[v] + 1
                    queue.append(self.to[e])
        return self.level[t] != -1

    def _dfs(self, v, t, limit):
        # recursion depth is the BFS level of t; these networks are shallow
        if v == t:
            return limit
        while self.it[v] < len(self.head[v]):
            e = self.head[v][self.it[v]]
            w = self.to[e]
            if self.cap[e] > 0 and self.level[w] == self.level[v] + 1:
                d = self._dfs(w, t, min(limit, self.cap[e]))
                if d > 0:
                    self.cap[e] -= d
                    self.cap[e ^ 1] += d
                    return d
            self.it[v] += 1
        return 0

    def max_flow(self, s, t):
        flow = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, float("inf"))
                if pushed == 0:
                    break
                flow += pushed
        return flow


def max_flow(net: FlowNetwork) -> FlowAssignment:
    """Deterministic integral max flow honoring the arc lower bounds.

    Standard reduction: subtract lower bounds, route the resulting node
    imbalances through a super source and sink.
    """
    n = len(net.nodes)
    balance = [net.supply[i] - net.demand[i] for i in range(n)]
    for (a, b, low, cap, tag) in net.arcs:
        balance[a] -= low
        balance[b] += low
    src, snk = n, n + 1
    dinic = _Dinic(n + 2)
    arc_edge = []
    for (a, b, low, cap, tag) in net.arcs:
        arc_edge.append(dinic.add(a, b, cap - low))
    required = 0
    for i in range(n):
        if balance[i] > 0:
            dinic.add(src, i, balance[i])
            required += balance[i]
        elif balance[i] < 0:
            dinic.add(i, snk, -balance[i])
    pushed = dinic.max_flow(src, snk)
    deficit = required - pushed
    flows = []
    for (arc, e) in zip(net.arcs, arc_edge):
        low = arc[2]
        cap = arc[3]
        flows.append(low + (cap - low - dinic.cap[e]))
    value = 4 * net.graph.n - deficit
    return FlowAssignment(net, tuple(flows), value, deficit)


def extract_rect_rep(g: PlaneGraph, flow: FlowAssignment) -> OrthoRep:
    """Angles from a saturating flow: 90 degrees per quantum at each
    incidence.  Raises Infeasible when demands are not met."""
    if not flow.feasible:
        raise Infeasible(
            f"flow misses demands by {flow.deficit} units")
    if flow.network.graph is not g:
        if flow.network.graph.rotation != g.rotation:
            raise PreconditionUnmet("flow belongs to a different graph")
    units = flow.angle_units()
    angles = {dart: 90 * k for dart, k in units.items()}
    return OrthoRep(g, angles)


def rect_turn_regular(g: PlaneGraph) -> OrthoRep | None:
    """Embedding-preserving turn-regular rectilinear representation, or None.

    Sound and complete for biconnected plane graphs whose faces all have
    degree at most eight.
    """
    net = build_network(g)
    flow = max_flow(net)
    if not flow.feasible:
        return None
    rep = extract_rect_rep(g, flow)
    report = is_turn_regular(rep)
    if not report.is_turn_regular:
        raise AssertionError("gadget failed to exclude a kitty pair")
    return rep
