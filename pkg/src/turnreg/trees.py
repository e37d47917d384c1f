"""Turn-regular trees: smoothing, splitters, forks, the caterpillar/windmill
taxonomy, linear-time classification and bend-free convex drawing.

Trees are free trees given as adjacency lists with maximum degree four.
Classification works on the smoothed tree (degree-2 vertices suppressed);
drawings re-insert suppressed vertices as flat corners.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegreeTooHigh, InvalidDrawing, PreconditionUnmet
from .geometry import GridDrawing, validate_drawing, _dir, segments
from .graph_core import build_plane_graph

TRIVIAL = "Trivial"
CATERPILLAR4 = "Caterpillar4"
WINDMILL3 = "Windmill3"
WINDMILL4 = "Windmill4"
DOUBLE_WINDMILL = "DoubleWindmill"
NOT_TURN_REGULAR = "NotTurnRegular"


def validate_tree(adj) -> list[list[int]]:
    n = len(adj)
    adj = [list(a) for a in adj]
    for v, ring in enumerate(adj):
        if len(ring) > 4:
            raise DegreeTooHigh(f"vertex {v} has degree {len(ring)}")
        for w in ring:
            if not 0 <= w < n or w == v:
                raise PreconditionUnmet(f"bad neighbor {w} at {v}")
            if v not in adj[w]:
                raise PreconditionUnmet("adjacency is not symmetric")
        if len(set(ring)) != len(ring):
            raise PreconditionUnmet(f"repeated neighbor at {v}")
    edges = sum(len(a) for a in adj) // 2
    if edges != n - 1:
        raise PreconditionUnmet(f"{n} vertices need {n - 1} edges, got {edges}")
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise PreconditionUnmet("tree is not connected")
    return adj


@dataclass(frozen=True)
class SmoothTree:
    """Smoothed tree plus the data needed to restore suppressed vertices.

    ``orig_id[i]`` is the original vertex behind smooth vertex ``i`` and
    ``paths[(a, b)]`` lists the suppressed original vertices along the
    smooth edge (a, b), read from a to b.
    """

    adj: tuple[tuple[int, ...], ...]
    orig_id: tuple[int, ...]
    paths: dict = field(compare=False)

    @property
    def n(self):
        return len(self.adj)


def smooth_tree(adj) -> SmoothTree:
    adj = validate_tree(adj)
    n = len(adj)
    if n <= 2:
        return SmoothTree(tuple(tuple(a) for a in adj), tuple(range(n)), {})
    keep = [v for v in range(n) if len(adj[v]) != 2]
    if not keep:
        raise PreconditionUnmet("not a tree")  # cycle; unreachable for trees
    new_id = {v: i for i, v in enumerate(keep)}
    new_adj = [[] for _ in keep]
    paths = {}
    for v in keep:
        for w in adj[v]:
            # walk through degree-2 vertices
            chain = []
            prev, cur = v, w
            while len(adj[cur]) == 2:
                chain.append(cur)
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt
            a, b = new_id[v], new_id[cur]
            new_adj[a].append(b)
            paths[(a, b)] = chain
    return SmoothTree(tuple(tuple(a) for a in new_adj), tuple(keep), paths)


def smooth(adj):
    """Suppress all degree-2 vertices; idempotent."""
    return [list(a) for a in smooth_tree(adj).adj]


def _leaves(adj):
    return {v for v in range(len(adj)) if len(adj[v]) <= 1}


def find_splitters(adj) -> list[int]:
    """Vertices adjacent to at least three non-leaf vertices (smoothed tree)."""
    leaves = _leaves(adj)
    return [v for v in range(len(adj))
            if sum(1 for w in adj[v] if w not in leaves) >= 3]


def find_forks(adj) -> tuple[list[int], list[int]]:
    """(2-forks, 3-forks): degree k+1 vertices with at least k adjacent leaves."""
    leaves = _leaves(adj)
    two, three = [], []
    for v in range(len(adj)):
        leaf_nbrs = sum(1 for w in adj[v] if w in leaves)
        if len(adj[v]) == 3 and leaf_nbrs >= 2:
            two.append(v)
        elif len(adj[v]) == 4 and leaf_nbrs >= 3:
            three.append(v)
    return two, three


def _spine(adj):
    """Non-leaf vertices if they form a path: ordered list, else None.

    A single internal vertex counts as a path; an empty internal set (single
    edge) yields an empty spine.
    """
    leaves = _leaves(adj)
    internal = [v for v in range(len(adj)) if v not in leaves]
    if not internal:
        return []
    deg_in = {v: sum(1 for w in adj[v] if w not in leaves) for v in internal}
    if any(d > 2 for d in deg_in.values()):
        return None
    ends = [v for v in internal if deg_in[v] <= 1]
    if len(internal) == 1:
        return internal
    if len(ends) != 2:
        return None
    order = [ends[0]]
    prev = None
    cur = ends[0]
    while True:
        nxts = [w for w in adj[cur] if w not in leaves and w != prev]
        if not nxts:
            break
        prev, cur = cur, nxts[0]
        order.append(cur)
    return order if len(order) == len(internal) else None


def _is_caterpillar(adj, k) -> bool:
    """Non-trivial caterpillar whose spine degrees lie in [3, k]."""
    if len(adj) <= 2:
        return False
    sp = _spine(adj)
    if sp is None or not sp:
        return False
    return all(3 <= len(adj[v]) <= k for v in sp)


def _arm(adj, hub, first):
    """Component of adj - hub containing ``first``, with hub reattached as a
    leaf.  Returns (arm_adj, arm_to_orig)."""
    comp = [hub, first]
    seen = {hub, first}
    stack = [first]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                comp.append(w)
                stack.append(w)
    new_id = {v: i for i, v in enumerate(comp)}
    arm = [[] for _ in comp]
    for v in comp:
        if v == hub:
            arm[new_id[hub]].append(new_id[first])
            continue
        for w in adj[v]:
            if w == hub:
                arm[new_id[v]].append(new_id[hub])
            elif w in new_id:
                arm[new_id[v]].append(new_id[w])
    return arm, comp


@dataclass(frozen=True)
class TreeClass:
    """Classification verdict with witness data (original vertex ids)."""

    kind: str
    splitters: tuple[int, ...] = ()
    spine: tuple[int, ...] = ()
    reason: str = ""

    @property
    def is_turn_regular(self) -> bool:
        return self.kind != NOT_TURN_REGULAR


def classify(adj) -> TreeClass:
    """Classify a tree (degree <= 4) per the splitter/windmill taxonomy."""
    st = smooth_tree(adj)
    s = [list(a) for a in st.adj]
    orig = st.orig_id
    if st.n <= 2:
        return TreeClass(TRIVIAL)
    splitters = find_splitters(s)
    leaves = _leaves(s)
    if len(splitters) > 2:
        return TreeClass(NOT_TURN_REGULAR,
                         splitters=tuple(orig[v] for v in splitters),
                         reason="more than two splitters")
    if not splitters:
        sp = _spine(s)
        return TreeClass(CATERPILLAR4, spine=tuple(orig[v] for v in sp))
    if len(splitters) == 1:
        hub = splitters[0]
        nonleaf_nbrs = [w for w in s[hub] if w not in leaves]
        arms = [_arm(s, hub, w)[0] for w in nonleaf_nbrs]
        if len(nonleaf_nbrs) == 4:
            if all(_is_caterpillar(a, 3) for a in arms):
                return TreeClass(WINDMILL4, splitters=(orig[hub],))
            return TreeClass(NOT_TURN_REGULAR, splitters=(orig[hub],),
                             reason="an arm of the 4-windmill candidate is "
                                    "not a 3-caterpillar")
        # exactly three non-leaf neighbors
        if all(_is_caterpillar(a, 4) for a in arms):
            wide = sum(1 for a in arms if not _is_caterpillar(a, 3))
            if wide <= 1:
                return TreeClass(WINDMILL3, splitters=(orig[hub],))
        return TreeClass(NOT_TURN_REGULAR, splitters=(orig[hub],),
                         reason="arms do not form a 3-windmill")
    # two splitters
    u, v = splitters
    path = _tree_path(s, u, v)
    ok = True
    for x in path[1:-1]:
        if any(w not in leaves and w not in (path[path.index(x) - 1],
                                             path[path.index(x) + 1])
               for w in s[x]):
            ok = False
    for hub, other in ((u, v), (v, u)):
        nonleaf_nbrs = [w for w in s[hub] if w not in leaves]
        if len(nonleaf_nbrs) != 3:
            ok = False
            continue
        side = path[1] if hub == u else path[-2]
        off = [w for w in nonleaf_nbrs if w != side]
        if len(off) != 2:
            ok = False
            continue
        for w in off:
            if not _is_caterpillar(_arm(s, hub, w)[0], 3):
                ok = False
    if ok:
        return TreeClass(DOUBLE_WINDMILL,
                         splitters=(orig[u], orig[v]),
                         spine=tuple(orig[x] for x in path))
    return TreeClass(NOT_TURN_REGULAR, splitters=(orig[u], orig[v]),
                     reason="splitter pair does not form a double-windmill")


def _tree_path(adj, a, b):
    parent = {a: None}
    stack = [a]
    while stack:
        v = stack.pop()
        if v == b:
            break
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return list(reversed(path))


# ---------------------------------------------------------------------------
# drawing


def _axis_layout_caterpillar(s, sp, pos, at, axis, leaf_dirs, leaves):
    """Arm layout: spine outward along axis, leaves on the given sides,
    one spare leaf per spine end continuing along the axis."""
    ax, ay = axis
    x0, y0 = at
    for i, v in enumerate(sp):
        p = (x0 + (i + 1) * ax, y0 + (i + 1) * ay)
        pos[v] = p
    for i, v in enumerate(sp):
        p = pos[v]
        pending = [w for w in s[v] if w in leaves and w not in pos]
        dirs = list(leaf_dirs)
        if i == len(sp) - 1:
            dirs.append(axis)  # outward slot at the arm tip
        if len(pending) > len(dirs):
            raise InvalidDrawing(
                f"no room for {len(pending)} leaves at spine vertex {v}")
        for w, dd in zip(pending, dirs):
            pos[w] = (p[0] + dd[0], p[1] + dd[1])


def draw_tree(adj) -> GridDrawing | None:
    """Bend-free turn-regular convex drawing, or None when the class is
    NotTurnRegular.  Suppressed degree-2 vertices come back as flat corners."""
    st = smooth_tree(adj)
    verdict = classify(adj)
    if not verdict.is_turn_regular:
        return None
    s = [list(a) for a in st.adj]
    leaves = _leaves(s)
    pos = {}

    if verdict.kind == TRIVIAL:
        if st.n == 1:
            pos[0] = (0, 0)
        else:
            pos[0], pos[1] = (0, 0), (1, 0)
    elif verdict.kind == CATERPILLAR4:
        sp = _spine(s)
        if len(sp) == 1:
            hub = sp[0]
            pos[hub] = (0, 0)
            for w, dd in zip(s[hub], ((0, 1), (0, -1), (1, 0), (-1, 0))):
                pos[w] = dd
        else:
            for i, v in enumerate(sp):
                pos[v] = (i, 0)
            for i, v in enumerate(sp):
                pending = [w for w in s[v] if w in leaves and w not in pos]
                dirs = [(0, 1), (0, -1)]
                if i == 0:
                    dirs.append((-1, 0))
                if i == len(sp) - 1:
                    dirs.append((1, 0))
                for w, dd in zip(pending, dirs):
                    pos[w] = (pos[v][0] + dd[0], pos[v][1] + dd[1])
    elif verdict.kind in (WINDMILL4, WINDMILL3):
        hub = next(v for v in range(st.n)
                   if st.orig_id[v] == verdict.splitters[0])
        pos[hub] = (0, 0)
        nonleaf = [w for w in s[hub] if w not in leaves]
        arms = [(w, _spine_from(s, hub, w, leaves)) for w in nonleaf]
        if verdict.kind == WINDMILL4:
            # pinwheel: east arm leaves north, north arm leaves west, ...
            slots = (((1, 0), (0, 1)), ((0, 1), (-1, 0)),
                     ((-1, 0), (0, -1)), ((0, -1), (1, 0)))
            for (w, arm_sp), (axis, ldir) in zip(arms, slots):
                _axis_layout_caterpillar(s, arm_sp, pos, (0, 0), axis,
                                         (ldir,), leaves)
        else:
            wide = [a for a in arms
                    if any(len(s[v]) == 4 for v in a[1])]
            narrow = [a for a in arms if a not in wide]
            ordered = (wide + narrow) if wide else arms
            w0, sp0 = ordered[0]
            _axis_layout_caterpillar(s, sp0, pos, (0, 0), (1, 0),
                                     ((0, 1), (0, -1)), leaves)
            w1, sp1 = ordered[1]
            _axis_layout_caterpillar(s, sp1, pos, (0, 0), (0, 1),
                                     ((-1, 0),), leaves)
            w2, sp2 = ordered[2]
            _axis_layout_caterpillar(s, sp2, pos, (0, 0), (-1, 0),
                                     ((0, -1),), leaves)
            for w in s[hub]:
                if w not in pos:  # optional hub leaf on the free axis
                    pos[w] = (0, -1)
    else:  # DOUBLE_WINDMILL
        u = next(v for v in range(st.n) if st.orig_id[v] == verdict.splitters[0])
        vtx = next(v for v in range(st.n) if st.orig_id[v] == verdict.splitters[1])
        path = _tree_path(s, u, vtx)
        dist = len(path) - 1
        for i, x in enumerate(path):
            pos[x] = (i, 0)
        for i, x in enumerate(path[1:-1], start=1):
            pending = [w for w in s[x] if w in leaves and w not in pos]
            for w, dd in zip(pending, ((0, 1), (0, -1))):
                pos[w] = (i, dd[1])
        for hub, hub_x, leaf_dir in ((u, 0, (-1, 0)), (vtx, dist, (1, 0))):
            nonleaf = [w for w in s[hub]
                       if w not in leaves and w not in path]
            for w, axis in zip(nonleaf, ((0, 1), (0, -1))):
                arm_sp = _spine_from(s, hub, w, leaves)
                _axis_layout_caterpillar(s, arm_sp, pos, (hub_x, 0), axis,
                                         (leaf_dir,), leaves)
            for w in s[hub]:
                if w not in pos:  # optional hub leaf points away on the spine axis
                    pos[w] = (hub_x + leaf_dir[0], leaf_dir[1])

    # restore suppressed vertices: scale so every smooth edge has room
    factor = 1
    for (a, b), chain in st.paths.items():
        factor = max(factor, len(chain) + 1)
    full_pos = {}
    for v, p in pos.items():
        full_pos[st.orig_id[v]] = (p[0] * factor, p[1] * factor)
    for (a, b), chain in st.paths.items():
        if a > b and (b, a) in st.paths:
            continue
        pa = full_pos[st.orig_id[a]]
        pb = full_pos[st.orig_id[b]]
        dd = _dir(pa, pb)
        for i, x in enumerate(chain, start=1):
            full_pos[x] = (pa[0] + dd[0] * i, pa[1] + dd[1] * i)

    # rotation system read off the layout (clockwise from north)
    n = len(adj)
    rotation = []
    for v in range(n):
        by_dir = {}
        for w in adj[v]:
            dd = _dir(full_pos[v], full_pos[w])
            if dd is None or dd in by_dir:
                raise InvalidDrawing(f"layout collision at vertex {v}")
            by_dir[dd] = w
        rotation.append([by_dir[dd] for dd in ((0, 1), (1, 0), (0, -1), (-1, 0))
                         if dd in by_dir])
    g = build_plane_graph(n, rotation, None)
    return GridDrawing(g, full_pos, {})


def _spine_from(s, hub, first, leaves):
    """Spine of the arm rooted at ``first`` (hub excluded), walking outward."""
    sp = [first]
    prev = hub
    cur = first
    while True:
        nxts = [w for w in s[cur] if w not in leaves and w != prev]
        if not nxts:
            return sp
        if len(nxts) > 1:
            raise InvalidDrawing("arm is not a caterpillar")
        prev, cur = cur, nxts[0]
        sp.append(cur)


def convexity_check(d: GridDrawing) -> bool:
    """True iff every leaf edge extends to an infinite crossing-free ray.

    Rays are open at their leaf origin; any contact between a ray and a
    drawn segment, or between two rays, fails the check.
    """
    violations = validate_drawing(d)
    if violations:
        raise InvalidDrawing("invalid drawing", violations)
    rays = []
    for v in range(d.graph.n):
        if d.graph.degree(v) != 1:
            continue
        w = d.graph.rotation[v][0]
        pts = d.polyline(w, v)
        dd = _dir(pts[-2], pts[-1])
        rays.append((d.vertex_pos[v], dd))

    segs = [(p, q) for p, q, _e in segments(d)]

    def ray_hits_segment(o, u, p, q):
        (ox, oy), (ux, uy) = o, u
        x1, x2 = min(p[0], q[0]), max(p[0], q[0])
        y1, y2 = min(p[1], q[1]), max(p[1], q[1])
        if ux == 0:  # vertical ray at x = ox
            if x1 != x2:  # horizontal segment
                return x1 <= ox <= x2 and (y1 - oy) * uy > 0
            if x1 == ox:  # vertical segment on the ray's line
                return y2 > oy if uy > 0 else y1 < oy
            return False
        # horizontal ray at y = oy
        if y1 != y2:  # vertical segment
            return y1 <= oy <= y2 and (x1 - ox) * ux > 0
        if y1 == oy:
            return x2 > ox if ux > 0 else x1 < ox
        return False

    def ray_hits_ray(o1, u1, o2, u2):
        (x1, y1), (x2, y2) = o1, o2
        if u1[0] == 0 and u2[0] == 0:  # both vertical
            if x1 != x2:
                return False
            if u1[1] == u2[1]:
                return True  # same open half-line direction: they overlap
            if u1[1] > 0:
                return y2 > y1
            return y1 > y2
        if u1[1] == 0 and u2[1] == 0:  # both horizontal
            if y1 != y2:
                return False
            if u1[0] == u2[0]:
                return True
            if u1[0] > 0:
                return x2 > x1
            return x1 > x2
        if u1[0] == 0:  # ray1 vertical, ray2 horizontal
            return (y2 - y1) * u1[1] > 0 and (x1 - x2) * u2[0] > 0
        return (y1 - y2) * u2[1] > 0 and (x2 - x1) * u1[0] > 0

    for i, (o, u) in enumerate(rays):
        for p, q in segs:
            if ray_hits_segment(o, u, p, q):
                return False
        for j in range(i + 1, len(rays)):
            o2, u2 = rays[j]
            if ray_hits_ray(o, u, o2, u2):
                return False
    return True
