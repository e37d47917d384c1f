"""Command-line interface.

Exit codes are a stable contract: 0 for success or a positive decision,
1 for a negative decision, 2 for parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats, generate
from .constructors import construct_3graph, construct_hamiltonian, construct_spiral
from .errors import ParseError, TurnRegError
from .geometry import bounding_area, render_svg, validate_drawing, extract_representation
from .ortho_rep import is_turn_regular
from .rectflow import build_network, max_flow, extract_rect_rep
from .trees import classify, draw_tree, validate_tree


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    mode = "wb" if isinstance(text, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(text)


def cmd_check(args):
    h = formats.loads_rep(_read(args.rep))
    report = is_turn_regular(h)
    verdict = (report.is_internally_turn_regular if args.internal_only
               else report.is_turn_regular)
    faces = []
    for fid in sorted(report.per_face):
        faces.append({
            "face": fid,
            "external": fid == h.graph.external_face,
            "turn_regular": report.face_verdict(fid),
            "kitty_corner_pairs": [list(p) for p in report.per_face[fid]],
            "kitty_vertex_pairs": [list(p) for p in report.vertex_pairs(fid)],
        })
    if args.json:
        print(json.dumps({"turn_regular": report.is_turn_regular,
                          "internally_turn_regular":
                              report.is_internally_turn_regular,
                          "faces": faces}, sort_keys=True))
    else:
        for f in faces:
            tag = "external" if f["external"] else "internal"
            if f["turn_regular"]:
                print(f"face {f['face']} ({tag}): turn-regular")
            else:
                pairs = ", ".join(f"{a}-{b}" for a, b in f["kitty_vertex_pairs"])
                print(f"face {f['face']} ({tag}): kitty corners at {pairs}")
        print("turn-regular" if report.is_turn_regular else "not turn-regular")
    return 0 if verdict else 1


def cmd_construct(args):
    g = formats.loads_graph(_read(args.graph))
    if args.mode == "3graph":
        ext = g.faces[g.external_face].darts[0]
        s = args.s if args.s is not None else ext[0]
        t = args.t if args.t is not None else ext[1]
        d = construct_3graph(g, s, t)
    elif args.mode == "hamiltonian":
        if not args.cycle:
            raise ParseError("--cycle is required for hamiltonian mode")
        cycle = [int(x) for x in args.cycle.split(",")]
        d = construct_hamiltonian(g, cycle)
    else:
        d = construct_spiral(g)
    _write(args.out, formats.dumps_drawing(d))
    counts = sorted(d.bend_counts().values(), reverse=True)
    rep = is_turn_regular(extract_representation(d))
    stats = {
        "edges": d.graph.num_edges,
        "total_bends": d.total_bends(),
        "max_bends_per_edge": counts[0] if counts else 0,
        "turn_regular": rep.is_turn_regular,
        "internally_turn_regular": rep.is_internally_turn_regular,
        "area": list(bounding_area(d)),
    }
    if args.json:
        print(json.dumps(stats, sort_keys=True))
    else:
        for k, v in sorted(stats.items()):
            print(f"{k}: {v}")
    return 0


def cmd_tree(args):
    obj = json.loads(_read(args.tree))
    try:
        adj = validate_tree([[int(w) for w in ring] for ring in obj["rotation"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed tree file: {exc}") from exc
    verdict = classify(adj)
    if args.action == "classify":
        if args.json:
            print(json.dumps({"class": verdict.kind,
                              "splitters": list(verdict.splitters),
                              "spine": list(verdict.spine),
                              "reason": verdict.reason}, sort_keys=True))
        else:
            print(verdict.kind)
            if verdict.splitters:
                print("splitters:", ", ".join(map(str, verdict.splitters)))
            if verdict.reason:
                print("reason:", verdict.reason)
        return 0 if verdict.is_turn_regular else 1
    d = draw_tree(adj)
    if d is None:
        print("not turn-regular; no drawing", file=sys.stderr)
        return 1
    _write(args.out, formats.dumps_drawing(d))
    return 0


def cmd_rectflow(args):
    g = formats.loads_graph(_read(args.graph))
    net = build_network(g)
    if args.dump_network:
        _write(args.dump_network,
               json.dumps(net.dump_obj(), sort_keys=True) + "\n")
    flow = max_flow(net)
    if not flow.feasible:
        msg = {"feasible": False, "deficit": flow.deficit}
        print(json.dumps(msg, sort_keys=True) if args.json
              else f"infeasible: max flow misses demands by {flow.deficit} units")
        return 1
    rep = extract_rect_rep(g, flow)
    _write(args.out, formats.dumps_rep(rep))
    if args.json:
        print(json.dumps({"feasible": True, "value": flow.value}, sort_keys=True))
    else:
        print(f"feasible: flow value {flow.value}")
    return 0


def cmd_render(args):
    d = formats.loads_drawing(_read(args.drawing))
    svg = render_svg(d, scale=args.scale, highlight_kitty=args.highlight_kitty,
                     labels=args.labels)
    _write(args.out, svg)
    return 0


def cmd_gen(args):
    if args.kind == "cycle":
        g = generate.cycle_graph(args.n)
    elif args.kind == "grid":
        g = generate.grid_graph(args.rows, args.n)
    elif args.kind == "prism":
        g = generate.prism(args.n)
    elif args.kind == "antiprism":
        g, cycle = generate.antiprism(args.n)
        print("# cycle:", ",".join(map(str, cycle)), file=sys.stderr)
    elif args.kind == "k4":
        g = generate.k4()
    elif args.kind == "random3":
        g = generate.random_plane_graph(args.n, 3, args.seed)
    elif args.kind == "random4":
        g = generate.random_plane_graph(args.n, 4, args.seed)
    elif args.kind == "hamiltonian":
        g, cycle = generate.random_hamiltonian_4graph(args.n, args.seed)
        print("# cycle:", ",".join(map(str, cycle)), file=sys.stderr)
    elif args.kind == "tree":
        adj = generate.random_tree(args.n, args.seed)
        obj = {"n": len(adj), "rotation": [list(a) for a in adj]}
        _write(args.out, json.dumps(obj, sort_keys=True,
                                    separators=(",", ":")) + "\n")
        return 0
    else:
        raise ParseError(f"unknown kind {args.kind}")
    _write(args.out, formats.dumps_graph(g))
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="turnreg",
        description="Turn-regular orthogonal representations: check, "
                    "construct, classify trees, run the rectilinear flow "
                    "test, render drawings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="test a representation for turn-regularity")
    c.add_argument("rep", help="representation JSON file ('-' for stdin)")
    c.add_argument("--internal-only", action="store_true",
                   help="ignore the external face")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="draw a plane graph")
    c.add_argument("graph")
    c.add_argument("--mode", required=True,
                   choices=["3graph", "hamiltonian", "spiral"])
    c.add_argument("--s", type=int, default=None)
    c.add_argument("--t", type=int, default=None)
    c.add_argument("--cycle", help="comma-separated Hamiltonian cycle")
    c.add_argument("-o", "--out", default="-")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("tree", help="classify or draw a tree")
    c.add_argument("action", choices=["classify", "draw"])
    c.add_argument("tree", help="tree JSON file (graph format, no external)")
    c.add_argument("-o", "--out", default="-")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_tree)

    c = sub.add_parser("rectflow",
                       help="decide rectilinear turn-regularity via max flow")
    c.add_argument("graph")
    c.add_argument("-o", "--out", default="-")
    c.add_argument("--dump-network", default=None,
                   help="write the flow network as JSON")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_rectflow)

    c = sub.add_parser("render", help="render a drawing as SVG")
    c.add_argument("drawing")
    c.add_argument("out")
    c.add_argument("--highlight-kitty", action="store_true",
                   help="dotted arrows between kitty-corner pairs")
    c.add_argument("--labels", action="store_true")
    c.add_argument("--scale", type=int, default=24)
    c.set_defaults(func=cmd_render)

    c = sub.add_parser("gen", help="(internal) generate test instances")
    c.add_argument("kind", choices=["cycle", "grid", "prism", "antiprism",
                                    "k4", "random3", "random4",
                                    "hamiltonian", "tree"])
    c.add_argument("n", type=int)
    c.add_argument("--rows", type=int, default=2)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--out", default="-")
    c.set_defaults(func=cmd_gen)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TurnRegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
