"""Instance builders used by the test harness and the CLI `gen` subcommand.

Everything here returns validated PlaneGraph objects (or trees as adjacency
lists).  Random builders take a seed and are fully deterministic.
"""

from __future__ import annotations

import random

from .graph_core import PlaneGraph, build_plane_graph


def cycle_graph(k: int) -> PlaneGraph:
    rotation = [((i - 1) % k, (i + 1) % k) for i in range(k)]
    return build_plane_graph(k, rotation, (0, k - 1))


def k4() -> PlaneGraph:
    rotation = [[2, 3, 1], [0, 3, 2], [1, 3, 0], [1, 0, 2]]
    return build_plane_graph(4, rotation, (1, 0))


def grid_graph(rows: int, cols: int) -> PlaneGraph:
    """rows x cols grid of vertices; vertex (r, c) -> r * cols + c."""

    def vid(r, c):
        return r * cols + c

    rotation = []
    for r in range(rows):
        for c in range(cols):
            ring = []
            if r + 1 < rows:
                ring.append(vid(r + 1, c))  # north
            if c + 1 < cols:
                ring.append(vid(r, c + 1))  # east
            if r > 0:
                ring.append(vid(r - 1, c))  # south
            if c > 0:
                ring.append(vid(r, c - 1))  # west
            rotation.append(ring)
    return build_plane_graph(rows * cols, rotation, (vid(0, 1), vid(0, 0)))


def prism(k: int) -> PlaneGraph:
    """Circular ladder: two k-cycles joined by spokes (3-regular)."""
    n = 2 * k
    rotation = []
    for j in range(k):  # outer ring 0..k-1
        rotation.append([(j - 1) % k, k + j, (j + 1) % k])
    for j in range(k):  # inner ring k..2k-1
        rotation.append([j, k + (j - 1) % k, k + (j + 1) % k])
    return build_plane_graph(n, rotation, (1, 0))


def antiprism(k: int) -> tuple[PlaneGraph, list[int]]:
    """Antiprism on 2k vertices (4-regular, planar, Hamiltonian) plus a
    Hamiltonian cycle.  antiprism(3) is the octahedron."""
    if k < 3:
        raise ValueError("antiprism needs k >= 3")
    rotation = []
    for j in range(k):  # outer 0..k-1; o_j ~ i_j and i_{j+1}
        rotation.append([(j - 1) % k, k + j, k + (j + 1) % k, (j + 1) % k])
    for m in range(k):  # inner k..2k-1; i_m ~ o_m and o_{m-1}
        rotation.append([(m - 1) % k, k + (m - 1) % k, k + (m + 1) % k, m])
    g = build_plane_graph(2 * k, rotation, (1, 0))
    cycle = []
    for j in range(k):
        cycle.append(j)
        cycle.append(k + (j + 1) % k)
    return g, cycle


def relabel(g: PlaneGraph, new_id: dict) -> PlaneGraph:
    """Rename vertices; new_id maps old -> new."""
    rotation = [None] * g.n
    for u in range(g.n):
        rotation[new_id[u]] = [new_id[v] for v in g.rotation[u]]
    ext = g.faces[g.external_face].darts[0]
    return build_plane_graph(g.n, rotation, (new_id[ext[0]], new_id[ext[1]]))


def figure_3graph_instance() -> tuple[PlaneGraph, int, int]:
    """10-vertex biconnected planar 3-graph whose first construction steps
    exercise the one-incoming and two-incoming insertion cases, with the
    extra column of step 2 assigned to the higher-indexed neighbor.

    Returns (graph, s, t) with the st-order 0..9 valid.
    """
    base = prism(5)  # outer 0..4 = A..E, inner 5..9 = a..e
    order = {0: 0, 1: 1, 6: 2, 5: 3, 9: 4, 2: 5, 7: 6, 8: 7, 3: 8, 4: 9}
    g = relabel(base, order)
    # external face: the quad A-a-e-E, i.e. dart (0 -> 3) side
    g = g.with_external_face(g.face_of((0, 3)))
    return g, 0, 9


def _insert_chord(rotation, faces_darts, face, u, w):
    """Insert chord (u, w) inside the given face boundary (list of darts)."""
    # corner of the face at a vertex x: in-dart (a->x), out-dart (x->b);
    # the chord goes inside the face, so it slots right before b at x.
    def slot(x):
        for k, (p, q) in enumerate(faces_darts):
            if p == x:
                return q  # out-neighbor b
        raise AssertionError

    bu, bw = slot(u), slot(w)
    rotation[u].insert(rotation[u].index(bu), w)
    rotation[w].insert(rotation[w].index(bw), u)


def random_plane_graph(n: int, max_deg: int, seed: int,
                       chord_rounds: int | None = None,
                       subdivide: bool = True) -> PlaneGraph:
    """Random biconnected plane graph with max degree <= max_deg.

    Grown from a cycle by inserting chords inside faces and subdividing
    edges, both of which preserve planarity and biconnectivity.
    """
    rng = random.Random(seed)
    if n < 3:
        raise ValueError("need n >= 3")
    k = rng.randint(3, max(3, min(n, 8)))
    rotation = [[(i - 1) % k, (i + 1) % k] for i in range(k)]
    count = k

    # grow by subdivision until n vertices, sprinkling chords along the way
    rounds = chord_rounds if chord_rounds is not None else 3 * n
    for _ in range(rounds):
        op = rng.random()
        if subdivide and count < n and op < 0.55:
            u = rng.randrange(count)
            if not rotation[u]:
                continue
            v = rng.choice(rotation[u])
            x = count
            rotation.append([u, v])
            rotation[u][rotation[u].index(v)] = x
            rotation[v][rotation[v].index(u)] = x
            count += 1
        else:
            g = build_plane_graph(count, rotation, (0, rotation[0][0]))
            f = g.faces[rng.randrange(len(g.faces))]
            verts = [p for p, q in f.darts]
            if len(set(verts)) != len(verts):
                continue  # face revisits a vertex; skip for simplicity
            cand = [x for x in verts if len(rotation[x]) < max_deg]
            if len(cand) < 2:
                continue
            u = rng.choice(cand)
            others = [x for x in cand
                      if x != u and x not in rotation[u]]
            if not others:
                continue
            w = rng.choice(others)
            _insert_chord(rotation, list(f.darts), f, u, w)
    while count < n:
        u = rng.randrange(count)
        if not rotation[u]:
            continue
        v = rng.choice(rotation[u])
        x = count
        rotation.append([u, v])
        rotation[u][rotation[u].index(v)] = x
        rotation[v][rotation[v].index(u)] = x
        count += 1
    g = build_plane_graph(count, rotation, (0, rotation[0][0]))
    return g


def random_hamiltonian_4graph(n: int, seed: int,
                              want_regular: bool = False
                              ) -> tuple[PlaneGraph, list[int]]:
    """Random planar Hamiltonian 4-graph: an n-cycle plus non-crossing
    chords inside and outside.  Returns (graph, hamiltonian_cycle)."""
    rng = random.Random(seed)
    if n < 3:
        raise ValueError("need n >= 3")
    rotation = [[(i - 1) % n, (i + 1) % n] for i in range(n)]
    attempts = 8 * n if want_regular else 3 * n
    for _ in range(attempts):
        g = build_plane_graph(n, rotation, (0, rotation[0][0]))
        if want_regular and all(len(r) == 4 for r in rotation):
            break
        f = g.faces[rng.randrange(len(g.faces))]
        verts = [p for p, q in f.darts]
        if len(set(verts)) != len(verts):
            continue
        cand = [x for x in verts if len(rotation[x]) < 4]
        if len(cand) < 2:
            continue
        u = rng.choice(cand)
        others = [x for x in cand if x != u and x not in rotation[u]]
        if not others:
            continue
        w = rng.choice(others)
        _insert_chord(rotation, list(f.darts), f, u, w)
    g = build_plane_graph(n, rotation, (0, rotation[0][0]))
    return g, list(range(n))


def random_tree(n: int, seed: int, max_deg: int = 4) -> list[list[int]]:
    """Random free tree as adjacency lists, degrees <= max_deg."""
    rng = random.Random(seed)
    adj = [[] for _ in range(n)]
    for v in range(1, n):
        choices = [u for u in range(v) if len(adj[u]) < max_deg]
        u = rng.choice(choices)
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _ahu_canon(adj, root, parent):
    subs = sorted(_ahu_canon(adj, w, root) for w in adj[root] if w != parent)
    return "(" + "".join(subs) + ")"


def tree_canonical_form(adj) -> str:
    """AHU canonical string of a free tree (rooted at its center)."""
    n = len(adj)
    if n == 1:
        return "()"
    deg = [len(a) for a in adj]
    leaves = [v for v in range(n) if deg[v] <= 1]
    removed = len(leaves)
    layer = leaves
    alive = deg[:]
    while removed < n:
        nxt = []
        for v in layer:
            for w in adj[v]:
                alive[w] -= 1
                if alive[w] == 1:
                    nxt.append(w)
        if not nxt:
            break
        removed += len(nxt)
        layer = nxt
    centers = layer
    if len(centers) == 1:
        return _ahu_canon(adj, centers[0], -1)
    a, b = centers
    return "".join(sorted((_ahu_canon(adj, a, b), _ahu_canon(adj, b, a))))


def all_trees(max_n: int, max_deg: int = 4):
    """Isomorph-free free trees with <= max_n vertices and degree <= max_deg,
    as adjacency lists, grouped by vertex count."""
    levels = {1: [[[]]]}
    seen = {tree_canonical_form([[]])}
    yield [[]]
    for n in range(2, max_n + 1):
        level = []
        for adj in levels[n - 1]:
            for at in range(n - 1):
                if len(adj[at]) >= max_deg:
                    continue
                grown = [list(a) for a in adj] + [[at]]
                grown[at].append(n - 1)
                key = tree_canonical_form(grown)
                if key in seen:
                    continue
                seen.add(key)
                level.append(grown)
                yield grown
        levels[n] = level
        del levels[n - 1]


def tree_as_plane_graph(adj) -> PlaneGraph:
    """Tree with an arbitrary (adjacency-order) rotation system."""
    return build_plane_graph(len(adj), [tuple(a) for a in adj], None)
