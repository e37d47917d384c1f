"""Independent brute-force oracles for tests and acceptance checks.

These deliberately avoid the optimized code paths they are used to check:
kitty scanning by definition-level summation, rectilinear-representation
enumeration by backtracking over raw angle assignments, and intersection
checking by all-pairs segment tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph_core import PlaneGraph
from .ortho_rep import CornerSeq, OrthoRep


@dataclass(frozen=True)
class EnumerationBudget:
    max_results: int = 100000
    max_vertices: int = 16

    def __post_init__(self):
        if self.max_results <= 0 or self.max_vertices <= 0:
            raise ValueError("budget bounds must be positive")


def brute_force_kitty(seq: CornerSeq) -> list[tuple[int, int]]:
    """Kitty pairs by direct summation over every ordered reflex pair."""
    m = len(seq.corners)
    turns = [c.turn for c in seq.corners]
    reflex = [i for i in range(m) if turns[i] == -1]
    found = set()
    for i in reflex:
        for j in reflex:
            if i == j:
                continue
            total = 0
            k = i
            while k != j:
                total += turns[k]
                k = (k + 1) % m
            if total == 2:
                found.add((min(i, j), max(i, j)))
    return sorted(found)


def enumerate_rect_reps(g: PlaneGraph, budget: EnumerationBudget = EnumerationBudget()):
    """Yield every bend-free angle assignment with 360-degree vertex sums and
    +-4 face turn sums, as validated OrthoReps.  Deterministic backtracking
    order; raises BudgetExceeded when limits are hit."""
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds budget {budget.max_vertices}")
    darts = sorted(
        (u, v) for u in range(g.n) for v in g.rotation[u])
    if not darts:
        yield OrthoRep(g, {})
        return

    # per-face turn targets in angle units: sum of a/90 = 2*deg -/+ 4
    face_target = {}
    face_size = {}
    for f in g.faces:
        face_size[f.face_id] = f.degree
        face_target[f.face_id] = 2 * f.degree + (4 if f.face_id == g.external_face else -4)

    vert_left = [g.degree(v) for v in range(g.n)]  # unassigned darts per vertex
    vert_sum = [0] * g.n
    face_left = dict(face_size)
    face_sum = dict.fromkeys(face_target, 0)
    assign = {}
    emitted = 0

    def options(u):
        if g.degree(u) == 1:
            return (4,)
        return (1, 2, 3)

    def feasible(u, fid):
        # vertex: remaining darts must be able to reach exactly 4 units
        lo = vert_sum[u] + vert_left[u] * 1
        hi = vert_sum[u] + vert_left[u] * (4 if g.degree(u) == 1 else 3)
        if not lo <= 4 <= hi:
            return False
        flo = face_sum[fid] + face_left[fid] * 1
        fhi = face_sum[fid] + face_left[fid] * 4
        return flo <= face_target[fid] <= fhi

    def backtrack(i):
        nonlocal emitted
        if i == len(darts):
            angles = {d: 90 * a for d, a in assign.items()}
            emitted += 1
            if emitted > budget.max_results:
                raise BudgetExceeded("too many representations")
            yield OrthoRep(g, angles)
            return
        d = darts[i]
        u, _w = d
        fid = g.face_of(d)
        for a in options(u):
            vert_sum[u] += a
            vert_left[u] -= 1
            face_sum[fid] += a
            face_left[fid] -= 1
            assign[d] = a
            ok = vert_sum[u] <= 4 and face_sum[fid] <= face_target[fid]
            if ok and vert_left[u] == 0 and vert_sum[u] != 4:
                ok = False
            if ok and face_left[fid] == 0 and face_sum[fid] != face_target[fid]:
                ok = False
            if ok and feasible(u, fid):
                yield from backtrack(i + 1)
            del assign[d]
            vert_sum[u] -= a
            vert_left[u] += 1
            face_sum[fid] -= a
            face_left[fid] += 1

    yield from backtrack(0)


def has_rect_turn_regular_rep(g: PlaneGraph,
                              budget: EnumerationBudget = EnumerationBudget()) -> bool:
    """Exhaustive oracle: does the plane graph admit a bend-free
    representation with no kitty corners in any face?"""
    from .ortho_rep import is_turn_regular

    for rep in enumerate_rect_reps(g, budget):
        if is_turn_regular(rep).is_turn_regular:
            return True
    return False


def _seg_points(p, q):
    """Integer points of an axis-parallel segment."""
    (x1, y1), (x2, y2) = p, q
    if x1 == x2:
        step = 1 if y2 > y1 else -1
        return [(x1, y) for y in range(y1, y2 + step, step)]
    step = 1 if x2 > x1 else -1
    return [(x, y1) for x in range(x1, x2 + step, step)]


def _segments_intersect(a, b):
    """Point set intersection of two axis-parallel integer segments."""
    pa = set(_seg_points(*a))
    pb = set(_seg_points(*b))
    return pa & pb


def brute_force_intersections(d) -> list[str]:
    """All-pairs oracle for validate_drawing.

    Uses explicit point sets, so it is only suitable for small drawings.
    """
    from .geometry import segments

    violations = []
    nodes = []
    for v in range(d.graph.n):
        nodes.append((d.vertex_pos[v], ("vertex", v)))
    for (u, v), pts in sorted(d.edge_bends.items()):
        for i, p in enumerate(pts):
            nodes.append((p, ("bend", (u, v), i)))
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if nodes[i][0] == nodes[j][0]:
                violations.append(
                    f"{nodes[i][1]} and {nodes[j][1]} share point {nodes[i][0]}")

    segs = []
    for p, q, e in segments(d):
        dd = (q[0] - p[0], q[1] - p[1])
        if (dd[0] == 0) == (dd[1] == 0):
            violations.append(f"edge {e} has a degenerate or skew segment")
            continue
        segs.append((p, q, e))

    node_pos = {}
    for p, tag in nodes:
        node_pos.setdefault(p, []).append(tag)

    for i, (p, q, e) in enumerate(segs):
        interior = set(_seg_points(p, q)) - {p, q}
        for pt in interior:
            if pt in node_pos:
                violations.append(
                    f"point {pt} of {node_pos[pt]} lies inside a segment of {e}")
        for j in range(i + 1, len(segs)):
            p2, q2, e2 = segs[j]
            common = _segments_intersect((p, q), (p2, q2))
            if not common:
                continue
            if len(common) > 1:
                violations.append(f"segments of {e} and {e2} overlap")
                continue
            pt = common.pop()
            endpoints1 = {p, q}
            endpoints2 = {p2, q2}
            if pt in endpoints1 and pt in endpoints2:
                tags = node_pos.get(pt, [])
                shared_vertex = any(
                    t[0] == "vertex" and t[1] in e and t[1] in e2 for t in tags)
                same_edge_bend = (e == e2 and any(t[0] == "bend" for t in tags))
                if not (shared_vertex or same_edge_bend):
                    violations.append(
                        f"segments of {e} and {e2} touch at non-shared point {pt}")
            elif pt in endpoints1 or pt in endpoints2:
                pass  # endpoint-in-interior: already reported via node scan
            else:
                violations.append(f"segments of {e} and {e2} cross at {pt}")
    return violations
