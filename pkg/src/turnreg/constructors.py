"""Constructive drawing algorithms for biconnected planar graphs.

All three constructions insert vertices one at a time along an ordering in
which every pending edge (one endpoint placed, one not) owns a dedicated
vertical lane of the drawing.  The frontier keeps the pending edges in
left-to-right order; a vertex's incoming edges always form a consecutive
block there, which gets spliced out and replaced by its outgoing edges in
embedding order.

* ``construct_3graph``: bottom-up on an st-ordering, at most two bends per
  edge, turn-regular output (max degree 3).
* ``construct_hamiltonian``: the ordering is a Hamiltonian cycle; chords are
  routed on their side of the drawn cycle; at most three bends per edge and
  at most one three-bend edge, the latter only on 4-regular inputs.
* ``construct_spiral``: the whole frontier turns left at every insertion, so
  pending edges wind around the drawing; internal faces end up turn-regular
  at the cost of O(n) bends per edge.
"""

from __future__ import annotations

from .errors import (
    NotHamiltonianCycle,
    PreconditionUnmet,
    TurnRegError,
)
from .geometry import GridDrawing
from .graph_core import PlaneGraph, is_biconnected, st_ordering, validate_st_order


class _EngineError(TurnRegError):
    """Internal frontier invariant failed (tried configuration is unusable)."""


class _Frontier:
    """Pending edges in left-to-right order (doubly linked)."""

    HEAD = object()
    TAIL = object()

    def __init__(self):
        self.nxt = {self.HEAD: self.TAIL}
        self.prv = {self.TAIL: self.HEAD}

    def insert_seq_after(self, anchor, keys):
        at = anchor
        for k in keys:
            self.nxt[k] = self.nxt[at]
            self.prv[k] = at
            self.prv[self.nxt[at]] = k
            self.nxt[at] = k
            at = k

    def replace_block(self, block, new_keys):
        """Splice out a consecutive block (checked) and insert new_keys."""
        for a, b in zip(block, block[1:]):
            if self.nxt[a] is not b:
                raise _EngineError("incoming edges are not consecutive in the frontier")
        left = self.prv[block[0]]
        right = self.nxt[block[-1]]
        for k in block:
            del self.nxt[k]
            del self.prv[k]
        self.nxt[left] = right
        self.prv[right] = left
        self.insert_seq_after(left, new_keys)

    def to_list(self):
        out = []
        k = self.nxt[self.HEAD]
        while k is not self.TAIL:
            out.append(k)
            k = self.nxt[k]
        return out

    def is_leftmost(self, k):
        return self.prv[k] is self.HEAD

    def is_rightmost(self, k):
        return self.nxt[k] is self.TAIL


class _Cols:
    """Columns of the drawing in geometric left-to-right order."""

    def __init__(self):
        self.nxt = {"L": "R"}
        self.prv = {"R": "L"}
        self.count = 0

    def _new(self):
        self.count += 1
        return self.count

    def insert_after(self, anchor):
        c = self._new()
        self.nxt[c] = self.nxt[anchor]
        self.prv[c] = anchor
        self.prv[self.nxt[anchor]] = c
        self.nxt[anchor] = c
        return c

    def insert_before(self, anchor):
        return self.insert_after(self.prv[anchor])

    def far_left(self):
        return self.insert_after("L")

    def far_right(self):
        return self.insert_before("R")

    def x_map(self):
        xs = {}
        c = self.nxt["L"]
        x = 0
        while c != "R":
            xs[c] = x
            x += 1
            c = self.nxt[c]
        return xs


def _rotated(ring, start_value):
    i = ring.index(start_value)
    return list(ring[i:]) + list(ring[:i])


def _external_corner_outdart(g, v):
    """Out-dart of the external face's corner at v (v occurs exactly once)."""
    hits = [dart for dart in g.faces[g.external_face].darts if dart[0] == v]
    if len(hits) != 1:
        raise _EngineError(f"vertex {v} occurs {len(hits)} times on the external face")
    return hits[0]


def _external_corner_edges(g, v):
    """The two edges bounding the external face at v, as neighbor vertices."""
    out = _external_corner_outdart(g, v)
    prec = [dart for dart in g.faces[g.external_face].darts if dart[1] == v]
    if len(prec) != 1:
        raise _EngineError("external boundary malformed")
    return prec[0][0], out[1]


class _RowColEngine:
    """Shared bottom-up geometry: rows by insertion rank, columns by lane."""

    def __init__(self, g: PlaneGraph, order):
        self.g = g
        self.order = list(order)
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.cols = _Cols()
        self.front = _Frontier()
        self.vcol = {}
        self.route = {}  # edge (tail, head) -> route dict

    # -- route bookkeeping ------------------------------------------------

    def _start_route(self, edge, col, tail_pts):
        self.route[edge] = {"col": col, "tail": tail_pts, "head": []}

    def bends_so_far(self, edge):
        return len(self.route[edge]["tail"])

    def _open_exit(self, v, edge, kind):
        """Create the lane for an outgoing edge of v and record its exit."""
        cu = self.vcol[v]
        r = self.pos[v]
        if kind == "N":
            self._start_route(edge, cu, [])
        elif kind == "E":
            c = self.cols.insert_after(cu)
            self._start_route(edge, c, [(c, r)])
        elif kind == "W":
            c = self.cols.insert_before(cu)
            self._start_route(edge, c, [(c, r)])
        elif kind == "SdE":
            c = self.cols.far_right()
            self._start_route(edge, c, [(cu, r - 1), (c, r - 1)])
        elif kind == "SdW":
            c = self.cols.far_left()
            self._start_route(edge, c, [(cu, r - 1), (c, r - 1)])
        else:
            raise AssertionError(kind)

    def _close_arrival(self, w, edge, kind):
        r = self.pos[w]
        rt = self.route[edge]
        c = rt["col"]
        if kind == "S":
            if c != self.vcol[w]:
                raise _EngineError("straight arrival on a different column")
        elif kind in ("W", "E"):
            rt["head"] = [(c, r)]
        elif kind == "N":
            rt["head"] = [(c, r + 1), (self.vcol[w], r + 1)]
        else:
            raise AssertionError(kind)

    def _split_rotation(self, v, in_tails_lr):
        """outs_lr for v given its incoming block (left-to-right tails)."""
        return _split_rotation_standalone(self.g, v, in_tails_lr)

    # -- vertex insertion ---------------------------------------------------

    def run(self, policy):
        g = self.g
        n = g.n
        for k, v in enumerate(self.order):
            ins_lr = [e for e in self.front.to_list() if e[1] == v]
            in_tails = [e[0] for e in ins_lr]
            if k == 0:
                if ins_lr:
                    raise _EngineError("first vertex cannot have incoming edges")
                outs_nb = self._split_rotation(v, [])
                outs = [(v, w) for w in outs_nb]
                kinds = policy.first_slots(outs)
                base = self.cols.far_right()
                self.vcol[v] = base
                for e, kind in zip(outs, kinds):
                    self._open_exit(v, e, kind)
                self.front.insert_seq_after(self.front.HEAD, outs)
                continue
            if not ins_lr:
                raise _EngineError(f"vertex {v} has no placed neighbor")
            if k == n - 1:
                if set(self.front.to_list()) != set(ins_lr):
                    raise _EngineError("last vertex must absorb every pending edge")
                self._split_rotation(v, in_tails)  # embedding check
                placement_idx, arrivals = policy.last_plan(self, v, ins_lr)
                self.vcol[v] = self.route[ins_lr[placement_idx]]["col"]
                for e, kind in zip(ins_lr, arrivals):
                    self._close_arrival(v, e, kind)
                self.front.replace_block(ins_lr, [])
                continue
            outs_nb = self._split_rotation(v, in_tails)
            outs = [(v, w) for w in outs_nb]
            placement_idx, arrivals, kinds = policy.mid_plan(self, v, ins_lr, outs)
            self.vcol[v] = self.route[ins_lr[placement_idx]]["col"]
            for e, kind in zip(ins_lr, arrivals):
                self._close_arrival(v, e, kind)
            for e, kind in zip(outs, kinds):
                self._open_exit(v, e, kind)
            self.front.replace_block(ins_lr, outs)
        return self._materialize()

    def _materialize(self):
        xs = self.cols.x_map()
        pos = {v: (xs[self.vcol[v]], self.pos[v]) for v in range(self.g.n)}
        bends = {}
        for (u, w), rt in self.route.items():
            pts = [(xs[c], r) for (c, r) in rt["tail"] + rt["head"]]
            if pts:
                bends[(u, w)] = pts
        return GridDrawing(self.g, pos, bends)


def _arrival_pattern(p, placement_idx, overtop_idx=None):
    kinds = []
    for i in range(p):
        if i == placement_idx:
            kinds.append("S")
        elif overtop_idx is not None and i == overtop_idx:
            kinds.append("N")
        elif i < placement_idx:
            kinds.append("W")
        else:
            kinds.append("E")
    if kinds.count("W") > 1 or kinds.count("E") > 1:
        raise _EngineError("more than one side arrival on the same side")
    return kinds


class _ThreeGraphPolicy:
    """Max degree 3: everything leans right, no detours, at most 2 bends."""

    def first_slots(self, outs):
        return {1: ["N"], 2: ["N", "E"], 3: ["W", "N", "E"]}[len(outs)]

    def mid_plan(self, eng, v, ins_lr, outs):
        # degree <= 3 never couples a side arrival with a side exit
        idx = 0 if len(ins_lr) <= 2 else 1
        out_kinds = {1: ["N"], 2: ["N", "E"]}[len(outs)]
        return idx, _arrival_pattern(len(ins_lr), idx), out_kinds

    def last_plan(self, eng, v, ins_lr):
        p = len(ins_lr)
        idx = {1: 0, 2: 0, 3: 1}[p]
        return idx, _arrival_pattern(p, idx)


class _HamiltonianPolicy:
    """Cycle ordering; the closing edge takes the bottom detour when the
    start vertex has four outgoing edges, the top detour goes to whichever
    extreme pending edge has fewest bends."""

    def __init__(self, order, z_edge, regular, variant=0):
        self.pos = {v: i for i, v in enumerate(order)}
        self.order = order
        n = len(order)
        self.closing = (order[0], order[-1])
        self.spine_out = {order[i]: (order[i], order[i + 1])
                          for i in range(n - 1)}
        self.spine_in = {order[i + 1]: (order[i], order[i + 1])
                         for i in range(n - 1)}
        self.z_edge = z_edge
        self.max_three = 1 if regular else 0
        self.variant = variant

    def first_slots(self, outs):
        q = len(outs)
        if self.closing not in (outs[0], outs[-1]):
            raise _EngineError("closing edge is not extreme at the start vertex")
        at_left = outs[0] == self.closing
        if q == 1:
            options = [["N"]]
        elif q == 2:
            options = ([["N", "E"], ["W", "N"]] if at_left
                       else [["W", "N"], ["N", "E"]])
        elif q == 3:
            # second choice runs the closing edge straight up, freeing it
            # to take the over-the-top slot at the far end without bends
            options = ([["W", "N", "E"], ["N", "E", "SdE"]] if at_left
                       else [["W", "N", "E"], ["SdW", "W", "N"]])
        else:
            options = ([["SdW", "W", "N", "E"], ["W", "N", "E", "SdE"]]
                       if at_left else
                       [["W", "N", "E", "SdE"], ["SdW", "W", "N", "E"]])
        if self.variant >= len(options):
            raise _EngineError("start-vertex slot variants exhausted")
        return options[self.variant]

    def _n_pref(self, v, outs):
        """Out that should run straight up: the flagged edge into the last
        vertex first, then the next cycle edge."""
        if self.z_edge in outs:
            return outs.index(self.z_edge)
        sp = self.spine_out.get(v)
        if sp in outs:
            return outs.index(sp)
        return 0

    def _s_pref(self, eng, v, ins_lr):
        """Incoming edge that should arrive straight: anything already
        carrying two bends, else the cycle edge."""
        return max(range(len(ins_lr)),
                   key=lambda i: (eng.bends_so_far(ins_lr[i]) >= 2,
                                  ins_lr[i] == self.spine_in.get(v),
                                  -i))

    def mid_plan(self, eng, v, ins_lr, outs):
        p, q = len(ins_lr), len(outs)
        if p == 2 and q == 2:
            # side slots are shared: either ins [S,E] + outs [W,N]
            # or ins [W,S] + outs [N,E]
            def penalty(idx):
                other = ins_lr[1 - idx]
                pen = 4 * (eng.bends_so_far(other) + 1 >= 3)
                n_out = outs[1] if idx == 0 else outs[0]
                w_out = outs[0] if idx == 0 else outs[1]
                if self.z_edge in outs and n_out != self.z_edge:
                    pen += 2
                if self.spine_out.get(v) == w_out:
                    pen += 1
                return pen

            idx = 0 if penalty(0) <= penalty(1) else 1
            out_kinds = ["W", "N"] if idx == 0 else ["N", "E"]
            return idx, _arrival_pattern(2, idx), out_kinds
        if p == 1:
            out_kinds = {1: ["N"], 3: ["W", "N", "E"]}.get(q)
            if out_kinds is None:
                out_kinds = ["N", "E"] if self._n_pref(v, outs) == 0 else ["W", "N"]
            return 0, ["S"], out_kinds
        idx = 1 if p == 3 else self._s_pref(eng, v, ins_lr)
        return idx, _arrival_pattern(p, idx), ["N"]

    def last_plan(self, eng, v, ins_lr):
        """Arrivals at the cycle's last vertex.

        Chords must come in on their own side of the drawn cycle (their
        frontier position tells which), the over-the-top slot is fine for
        anything (its corners are exceptions on edges incident to the last
        vertex) but costs two bends.  Among the feasible patterns pick the
        one minimizing three-bend edges, then total bends.
        """
        p = len(ins_lr)
        spine = self.spine_in.get(v)
        if p == 1:
            return 0, ["S"]
        if p == 4:
            a, b = _external_corner_edges(eng.g, v)
            corner = {tuple(sorted((a, v))), tuple(sorted((b, v)))}
            ext_edges = {tuple(sorted(e)) for e in (ins_lr[0], ins_lr[-1])}
            if corner != ext_edges:
                raise _EngineError(
                    "frontier extremes at the last vertex do not border the "
                    "external face")
            candidates = [(1, _arrival_pattern(4, 1, overtop_idx=3)),
                          (2, _arrival_pattern(4, 2, overtop_idx=0))]
        elif p == 3:
            candidates = [(1, _arrival_pattern(3, 1))]
        else:
            candidates = [(0, _arrival_pattern(2, 0)),
                          (1, _arrival_pattern(2, 1))]

        try:
            s_pos = ins_lr.index(spine)
        except ValueError:
            s_pos = None
        best = None
        for idx, kinds in candidates:
            overflow = False
            violations = 0
            bends3 = 0
            total = 0
            for i, (e, kind) in enumerate(zip(ins_lr, kinds)):
                cost = {"S": 0, "W": 1, "E": 1, "N": 2}[kind]
                final = eng.bends_so_far(e) + cost
                total += final
                if final > 3:
                    overflow = True
                if final == 3:
                    bends3 += 1
                if e == self.closing or e == spine or kind in ("S", "N"):
                    continue
                side_left = (s_pos is not None and i < s_pos)
                if (kind == "E") == side_left:
                    violations += 1  # chord arriving against its cycle side
            hard = overflow or bends3 > self.max_three
            score = (hard, violations, bends3, total)
            if best is None or score < best[:4]:
                best = (*score, idx, kinds)
        if best is None or best[0]:
            raise _EngineError("no usable arrival pattern at the last vertex")
        return best[4], best[5]


def construct_3graph(g: PlaneGraph, s: int, t: int, *, order=None) -> GridDrawing:
    """Turn-regular drawing of a biconnected planar 3-graph, <= 2 bends per
    edge.  ``order`` may supply a precomputed st-ordering (validated)."""
    if any(g.degree(v) > 3 for v in range(g.n)):
        raise PreconditionUnmet("construct_3graph needs maximum degree 3")
    if g.n < 3 or not is_biconnected(g):
        raise PreconditionUnmet("graph must be biconnected (n >= 3)")
    ext_verts = {u for u, _ in g.faces[g.external_face].darts}
    if s == t or s not in ext_verts or t not in ext_verts:
        raise PreconditionUnmet("s and t must be distinct external-face vertices")
    if order is None:
        order = st_ordering(g, s, t).order
    else:
        order = tuple(order)
        if order[0] != s or order[-1] != t or not validate_st_order(g, order):
            raise PreconditionUnmet("supplied order is not a valid st-ordering")
    return _RowColEngine(g, order).run(_ThreeGraphPolicy())


def _validate_cycle(g: PlaneGraph, cycle):
    cycle = list(cycle)
    if sorted(cycle) != list(range(g.n)):
        raise NotHamiltonianCycle("cycle must visit every vertex exactly once")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if not g.has_edge(a, b):
            raise NotHamiltonianCycle(f"({a},{b}) is not an edge")
    return cycle


def _face_has_edge(g, face_id, a, b):
    return any({d[0], d[1]} == {a, b} for d in g.faces[face_id].darts)


def _bend_contract_ok(g, drawing):
    regular = all(g.degree(v) == 4 for v in range(g.n))
    three = 0
    for e, pts in drawing.edge_bends.items():
        if len(pts) > 3:
            return False
        if len(pts) == 3:
            three += 1
    if three > 1:
        return False
    if three == 1 and not regular:
        return False
    return True


def _hamiltonian_candidates(g, cycle):
    """Start vertices and orientations to try, the documented selection
    rule first: minimum degree, then (among 4-regular) lowest index whose
    two cycle edges are not both on the input external face."""
    n = g.n
    degs = [g.degree(v) for v in range(n)]
    ext = g.external_face
    scored = []
    for v in range(n):
        i = cycle.index(v)
        before, after = cycle[i - 1], cycle[(i + 1) % n]
        both_ext = (_face_has_edge(g, ext, v, before)
                    and _face_has_edge(g, ext, v, after))
        scored.append((degs[v], both_ext, v))
    scored.sort()
    for _deg, _both, v in scored:
        i = cycle.index(v)
        fwd = cycle[i:] + cycle[:i]
        rev = [v] + list(reversed(cycle[:i])) + list(reversed(cycle[i:]))[:-1]
        yield fwd
        yield rev


def _rootings(g, order):
    """External-face candidates: keep the input face when it already borders
    the closing edge, prefer faces avoiding the second cycle edge."""
    v1, v2, vn = order[0], order[1], order[-1]
    closing_faces = []
    for fid in range(len(g.faces)):
        if _face_has_edge(g, fid, v1, vn) and fid not in closing_faces:
            closing_faces.append(fid)
    ranked = sorted(closing_faces,
                    key=lambda f: (f != g.external_face,
                                   _face_has_edge(g, f, v1, v2), f))
    return ranked


def construct_hamiltonian(g: PlaneGraph, cycle) -> GridDrawing:
    """Turn-regular drawing of a planar Hamiltonian 4-graph along its cycle:
    <= 3 bends per edge, at most one 3-bend edge and only if 4-regular.

    Configurations (start vertex, cycle direction, external-face rooting)
    are tried in a deterministic order; each produced drawing is verified
    outright and the first one meeting the contract is returned.
    """
    from .geometry import extract_representation, validate_drawing
    from .ortho_rep import is_turn_regular

    if g.n < 3:
        raise PreconditionUnmet("need at least three vertices")
    cycle = _validate_cycle(g, cycle)
    regular = all(g.degree(x) == 4 for x in range(g.n))
    last_error = None
    for order in _hamiltonian_candidates(g, cycle):
        for fid in _rootings(g, order):
            g_rooted = g.with_external_face(fid)
            vn = order[-1]
            for variant in range(2):
                try:
                    a, b = _external_corner_edges(g_rooted, vn)
                    z_nb = a if b == order[0] else b if a == order[0] else None
                    if z_nb is None:
                        # closing edge not at the external corner of vn
                        raise _EngineError(
                            "closing edge must border the external face at vn")
                    z_edge = (z_nb, vn)
                    policy = _HamiltonianPolicy(order, z_edge, regular, variant)
                    eng = _RowColEngine(g_rooted, order)
                    drawing = eng.run(policy)
                except _EngineError as exc:
                    last_error = exc
                    continue
                if not _bend_contract_ok(g, drawing):
                    last_error = _EngineError("bend contract failed")
                    continue
                if validate_drawing(drawing):
                    last_error = _EngineError("produced an invalid drawing")
                    continue
                if not is_turn_regular(extract_representation(drawing)).is_turn_regular:
                    last_error = _EngineError("produced kitty corners")
                    continue
                return drawing
    raise PreconditionUnmet(
        f"no configuration satisfied the construction invariants: {last_error}")


# ---------------------------------------------------------------------------
# spiraling construction


_HEADINGS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # E, N, W, S; +1 turns left


def _ccw(h):
    return _HEADINGS[(_HEADINGS.index(h) + 1) % 4]


def _cw(h):
    return _HEADINGS[(_HEADINGS.index(h) - 1) % 4]


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1]


def _add(p, q, k=1):
    return (p[0] + q[0] * k, p[1] + q[1] * k)


class _SpiralEngine:
    """Left-turning frontier with the turn fused into each insertion.

    Per step the heading rotates counterclockwise and every pending lane
    bends once onto the new heading at staggered positions -- except the
    vertex's innermost incoming lane, which keeps the old heading and runs
    straight into the new vertex.  That straight arrival is what keeps the
    incident faces' right bounding paths free of reflex corners; it also
    frees the bottom slot, so a third outgoing edge leaves through a
    two-bend bottom detour instead of a poisoning side exit.

    Lane lines live on multiples of 4 (slots of stride 16 plus offsets 0,
    4, 8); detour and overtop rows sit at +-2, so they never collide with
    a lane line.
    """

    STRIDE = 16

    def __init__(self, g, order):
        self.g = g
        self.order = list(order)
        self.pos = {v: i for i, v in enumerate(order)}
        self.front = _Frontier()
        self.lane = {}  # edge -> list of points (tail first)
        self.heading = (0, 1)
        self.vpos = {}
        self.bbox = None

    def _grow_bbox(self, p):
        if self.bbox is None:
            self.bbox = [p[0], p[0], p[1], p[1]]
        else:
            self.bbox[0] = min(self.bbox[0], p[0])
            self.bbox[1] = max(self.bbox[1], p[0])
            self.bbox[2] = min(self.bbox[2], p[1])
            self.bbox[3] = max(self.bbox[3], p[1])

    def _extent(self, h):
        xs = (self.bbox[0], self.bbox[1])
        ys = (self.bbox[2], self.bbox[3])
        return max(_dot((x, y), h) for x in xs for y in ys)

    def _place_first(self, v):
        outs_nb = _split_rotation_standalone(self.g, v, [])
        outs = [(v, w) for w in outs_nb]
        q = len(outs)
        kinds = {1: ["N"], 2: ["N", "E"], 3: ["N", "E", "SdE"],
                 4: ["W", "N", "E", "SdE"]}[q]
        p0 = (0, 0)
        self.vpos[v] = p0
        self._grow_bbox(p0)
        for e, kind in zip(outs, kinds):
            if kind == "N":
                self.lane[e] = [p0]
            elif kind == "W":
                self.lane[e] = [p0, (-4, 0)]
            elif kind == "E":
                self.lane[e] = [p0, (4, 0)]
            else:  # SdE: dive below, resurface to the east
                self.lane[e] = [p0, (0, -2), (8, -2)]
            for pt in self.lane[e]:
                self._grow_bbox(pt)
        self.front.insert_seq_after(self.front.HEAD, outs)

    def run(self):
        g = self.g
        n = g.n
        for k, v in enumerate(self.order):
            if k == 0:
                self._place_first(v)
                continue
            h_old = self.heading
            h_new = _ccw(h_old)
            lanes = self.front.to_list()
            ins_lr = [e for e in lanes if e[1] == v]
            if not ins_lr:
                raise _EngineError(f"vertex {v} has no placed neighbor")
            in_tails = [e[0] for e in ins_lr]
            first = lanes.index(ins_lr[0])
            if lanes[first:first + len(ins_lr)] != ins_lr:
                raise _EngineError("incoming edges are not consecutive")
            is_last = (k == n - 1)
            if is_last and set(lanes) != set(ins_lr):
                raise _EngineError("last vertex must absorb every pending edge")
            outs_nb = _split_rotation_standalone(g, v, in_tails)
            outs = [(v, w) for w in outs_nb]
            p, q = len(ins_lr), len(outs)
            if p + q != g.degree(v) or (is_last and q) or (not is_last and not q):
                raise _EngineError("in/out split mismatch")

            base = max(self._extent(h_old),
                       max(_dot(self.lane[e][-1], h_old) for e in lanes))
            slot = [base + self.STRIDE * (i + 1) for i in range(len(lanes) + 2)]
            counter = 0

            def bend_onto(e, cross):
                end = self.lane[e][-1]
                pt = _add(end, h_old, cross - _dot(end, h_old))
                self.lane[e].append(pt)
                self._grow_bbox(pt)
                return pt

            for e in lanes[:first]:  # inner untouched lanes turn first
                bend_onto(e, slot[counter])
                counter += 1
            v_cross = slot[counter]
            counter += 1
            b1 = ins_lr[0]
            vp = _add(self.lane[b1][-1], h_old,
                      v_cross - _dot(self.lane[b1][-1], h_old))
            self.vpos[v] = vp
            self._grow_bbox(vp)
            self.lane[b1].append(vp)  # straight arrival, no bend
            if p >= 2:  # second arrives from below after its own turn
                bend_onto(ins_lr[1], v_cross)
                self.lane[ins_lr[1]].append(vp)
            if p >= 3:  # third rises beyond and comes back in from the side
                bend_onto(ins_lr[2], slot[counter])
                counter += 1
                r = _add(self.lane[ins_lr[2]][-1], h_new,
                         _dot(vp, h_new) - _dot(self.lane[ins_lr[2]][-1], h_new))
                self.lane[ins_lr[2]] += [r, vp]
                self._grow_bbox(r)
            if p == 4:  # last vertex only: over the top
                e = ins_lr[3]
                bend_onto(e, slot[counter])
                counter += 1
                hi = _dot(vp, h_new) + 2
                r1 = _add(self.lane[e][-1], h_new,
                          hi - _dot(self.lane[e][-1], h_new))
                r2 = _add(vp, h_new, 2)
                self.lane[e] += [r1, r2, vp]
                self._grow_bbox(r1)
                self._grow_bbox(r2)
            for e in lanes[first + p:]:  # outer untouched lanes turn last
                bend_onto(e, slot[counter])
                counter += 1

            kinds = {0: [], 1: ["N"], 2: ["N", "E"], 3: ["N", "E", "SdE"]}[q]
            for e, kind in zip(outs, kinds):
                if kind == "N":
                    self.lane[e] = [vp]
                elif kind == "E":
                    self.lane[e] = [vp, _add(vp, h_old, 4)]
                else:  # SdE: dive two below v's line, resurface outward
                    d1 = _add(vp, h_new, -2)
                    d2 = _add(d1, h_old, 8)
                    self.lane[e] = [vp, d1, d2]
                for pt in self.lane[e]:
                    self._grow_bbox(pt)
            self.front.replace_block(ins_lr, outs)
            self.heading = h_new
        return self._materialize()

    def _materialize(self):
        bends = {}
        for (u, w), pts in self.lane.items():
            inner = []
            for i in range(1, len(pts) - 1):
                a = (pts[i][0] - pts[i - 1][0], pts[i][1] - pts[i - 1][1])
                b = (pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1])
                if a[0] * b[1] - a[1] * b[0] != 0:
                    inner.append(pts[i])
            bends[(u, w)] = inner
        return GridDrawing(self.g, dict(self.vpos), bends)


def _split_rotation_standalone(g, v, in_tails_lr):
    ring = list(g.rotation[v])
    p = len(in_tails_lr)
    target = list(reversed(in_tails_lr))
    if p == 0:
        w_star = _external_corner_outdart(g, v)[1]
        return _rotated(ring, w_star)
    if p == len(ring):
        rot = _rotated(ring, target[0])
        if rot != target:
            raise _EngineError(f"incoming edges at {v} do not match the embedding")
        return []
    tgt = set(target)
    starts = [i for i in range(len(ring))
              if ring[i] in tgt and ring[i - 1] not in tgt]
    if len(starts) != 1:
        raise _EngineError(f"incoming edges at {v} are not contiguous in the rotation")
    i = starts[0]
    block = [ring[(i + j) % len(ring)] for j in range(p)]
    if block != target:
        raise _EngineError(f"frontier order at {v} disagrees with the embedding")
    return [ring[(i + p + j) % len(ring)] for j in range(len(ring) - p)]


def construct_spiral(g: PlaneGraph) -> GridDrawing:
    """Internally turn-regular drawing of a biconnected planar 4-graph.

    The output's external face is the region the spiral leaves unbounded,
    which may differ from the input designation; the rotation system is
    preserved.
    """
    if g.n < 3 or not is_biconnected(g):
        raise PreconditionUnmet("graph must be biconnected (n >= 3)")
    ext_dart = g.faces[g.external_face].darts[0]
    s, t = ext_dart
    order = st_ordering(g, s, t).order
    drawing = _SpiralEngine(g, order).run()
    # the unbounded region of the spiral is whatever face the walk leaves
    # open; re-designate it so extraction sees a consistent embedding
    ext = _drawn_external_face(drawing)
    g2 = g.with_external_face(ext)
    return GridDrawing(g2, drawing.vertex_pos, drawing.edge_bends)


def _drawn_external_face(d: GridDrawing) -> int:
    """Face id whose traversal has turn sum -4 in the geometry."""
    from .geometry import _dir, _cross

    g = d.graph
    for f in g.faces:
        total = 0
        for kdx, (v, w) in enumerate(f.darts):
            pu, pv = f.darts[kdx - 1]
            in_pts = d.polyline(pu, pv)
            dir_in = _dir(in_pts[-2], in_pts[-1])
            out_pts = d.polyline(v, w)
            dir_out = _dir(out_pts[0], out_pts[1])
            cr = _cross(dir_in, dir_out)
            if cr != 0:
                total += cr
            elif dir_in != dir_out:
                total += -2
            for i in range(len(out_pts) - 2):
                a = _dir(out_pts[i], out_pts[i + 1])
                b = _dir(out_pts[i + 1], out_pts[i + 2])
                total += _cross(a, b)
        if total == -4:
            return f.face_id
    raise _EngineError("no face has external turning")
