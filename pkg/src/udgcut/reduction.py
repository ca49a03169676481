"""The reduction pipeline: a degree-at-most-4 graph becomes a unit disk
graph U(G) with an exact proximity model at squared precision >= 1/2, while
the maximum cut moves by exactly 8k + t (k crossings, t subdivision
vertices), so mc(G) is recoverable from mc(U(G)).

Steps, in construction order:
  1. standard mesh drawing;
  2. subdivision vertices at every interior mesh cross that is not a
     crossing point (consecutive points at distance exactly 1);
  3. per crossing, subdivide the vertical edge at the crossing itself and
     reroute the horizontal edge through four vertices on the half-integer
     row above;
  4. per crossing, plant the gadget on the two former crossing edges, with
     apex coordinates from the gadget model centered half a unit above the
     crossing;
  5. per original edge with an odd subdivision count, bend one straight
     horizontal unit edge into a two-edge detour through a fresh apex,
     restoring even parity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .drawing import MeshDrawing, crossings, mesh_draw, standardize, validate_drawing, validate_standard
from .errors import ConstructionError, InconsistencyError, InputError, PreconditionError
from .gadget import W_OFFSETS, GadgetInstance, build_H, construct_H_on
from .geometry import SCALE, Point
from .graph_core import Edge, Graph, canon_edge, disjoint_union
from .udg_model import ProximityModel, precision2, validate_model

ROLE_ORIGINAL = "original"
ROLE_SUBDIVISION = "subdivision"
ROLE_GADGET_W = "gadget_w"
ROLE_DETOUR_APEX = "detour_apex"

_HALF = SCALE // 2       # 1/2 mesh unit
_QUARTER = SCALE // 4    # 1/4 mesh unit


@dataclass(frozen=True)
class Provenance:
    role: str
    edge: Edge | None = None           # originating edge of G, for path vertices
    crossing: tuple[int, int] | None = None  # crossing point in 1/20 units, for w's


@dataclass
class ReductionOutput:
    source: Graph
    result: Graph
    model: ProximityModel
    k: int
    t: int
    provenance: dict[int, Provenance]
    per_edge_subdivisions: dict[Edge, int]
    gadgets: list[GadgetInstance]
    drawing: MeshDrawing


def _route_mesh_points(route) -> list[Point]:
    """Every mesh cross along the polyline, in order, endpoints included."""
    pts = [route[0]]
    for i in range(len(route) - 1):
        p, q = route[i], route[i + 1]
        dx = (q.xu > p.xu) - (q.xu < p.xu)
        dy = (q.yu > p.yu) - (q.yu < p.yu)
        steps = (abs(q.xu - p.xu) + abs(q.yu - p.yu)) // SCALE
        for s in range(1, steps + 1):
            pts.append(Point(p.xu + dx * s * SCALE, p.yu + dy * s * SCALE))
    return pts


class _Builder:
    """Mutable vertex/edge store with monotone id allocation."""

    def __init__(self, n_original: int):
        self.n_alloc = n_original
        self.coords: dict[int, Point] = {}
        self.adj: dict[int, set[int]] = {}
        self.role: dict[int, str] = {}
        self.prov: dict[int, Provenance] = {}

    def new_node(self, pt: Point, prov: Provenance, node_id: int | None = None) -> int:
        nid = self.n_alloc if node_id is None else node_id
        if node_id is None:
            self.n_alloc += 1
        self.coords[nid] = pt
        self.adj[nid] = set()
        self.prov[nid] = prov
        return nid

    def add_edge(self, a: int, b: int):
        if a == b or b in self.adj[a]:
            raise ConstructionError(f"bad edge insertion ({a}, {b})")
        self.adj[a].add(b)
        self.adj[b].add(a)

    def remove_edge(self, a: int, b: int):
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def delete_node(self, a: int):
        for b in list(self.adj[a]):
            self.remove_edge(a, b)
        del self.adj[a], self.coords[a], self.prov[a]

    def as_graph(self) -> Graph:
        edges = {canon_edge(a, b) for a, nbrs in self.adj.items() for b in nbrs}
        return Graph(self.n_alloc, frozenset(edges))

    def load_graph(self, g: Graph):
        # refresh adjacency after an operation returned a new Graph
        self.n_alloc = g.n
        for a in self.adj:
            self.adj[a] = set()
        for nid in self.coords:
            self.adj.setdefault(nid, set())
        for u, v in g.edges:
            self.adj[u].add(v)
            self.adj[v].add(u)


def reduce(g: Graph) -> ReductionOutput:
    """Run the full pipeline on a graph of maximum degree at most 4."""
    drawn = standardize(mesh_draw(g))
    problems = validate_drawing(drawn)
    if problems:
        raise ConstructionError(f"standardized drawing invalid: {problems[:3]}")
    report = validate_standard(drawn)
    if not report.ok:
        raise ConstructionError(f"standardization failed: {report.witnesses}")
    xreport = crossings(drawn)

    b = _Builder(g.n)
    for v in range(g.n):
        b.new_node(drawn.placement[v], Provenance(ROLE_ORIGINAL), node_id=v)

    holes_by_edge: dict[Edge, set[Point]] = {e: set() for e in drawn.routes}
    cross_edges: dict[Point, tuple[Edge, Edge]] = {}
    for cr in xreport:
        holes_by_edge[cr.horizontal_edge].add(cr.point)
        holes_by_edge[cr.vertical_edge].add(cr.point)
        cross_edges[cr.point] = (cr.horizontal_edge, cr.vertical_edge)

    # Step 2: subdivision vertices everywhere except at crossing points.
    hole = object()
    paths: dict[Edge, list] = {}
    node_at: dict[Point, int] = {b.coords[v]: v for v in range(g.n)}
    for e in sorted(drawn.routes):
        mesh_pts = _route_mesh_points(drawn.routes[e])
        path: list = [e[0]]
        for pt in mesh_pts[1:-1]:
            if pt in holes_by_edge[e]:
                path.append((hole, pt))
            else:
                nid = b.new_node(pt, Provenance(ROLE_SUBDIVISION, edge=e))
                node_at[pt] = nid
                path.append(nid)
        path.append(e[1])
        for i in range(len(path) - 1):
            a_ent, b_ent = path[i], path[i + 1]
            if isinstance(a_ent, tuple) or isinstance(b_ent, tuple):
                continue
            b.add_edge(a_ent, b_ent)
        # edges across a hole: the temporary length-2 link
        for i, ent in enumerate(path):
            if isinstance(ent, tuple):
                if not (0 < i < len(path) - 1):
                    raise ConstructionError(f"crossing adjacent to a vertex on {e}")
                before, after = path[i - 1], path[i + 1]
                if isinstance(before, tuple) or isinstance(after, tuple):
                    raise ConstructionError(f"adjacent crossings on {e}")
                b.add_edge(before, after)
        paths[e] = path

    # Steps 3 and 4, one crossing at a time (sites are >= 10 apart).
    gadgets: list[GadgetInstance] = []
    for cr in sorted(xreport, key=lambda c: (c.point.xu, c.point.yu)):
        gadgets.append(_build_crossing_site(b, paths, cross_edges, node_at, cr.point))

    # Step 5: restore even parity per original edge.
    for e in sorted(paths):
        if (len(paths[e]) - 2) % 2 == 1:
            _apply_parity_detour(b, paths, e)

    return _finalize(g, drawn, b, paths, gadgets)


def _path_replace(path: list, index: int, count: int, replacement: list):
    path[index:index + count] = replacement


def _build_crossing_site(b: _Builder, paths, cross_edges, node_at,
                         cp: Point) -> GadgetInstance:
    eh, ev = cross_edges[cp]
    x, y = cp.xu, cp.yu

    def expect(pt: Point) -> int:
        nid = node_at.get(pt)
        if nid is None or nid not in b.coords:
            raise ConstructionError(f"expected a vertex at {pt} near crossing {cp}")
        return nid

    # Step 3, vertical edge: subdivide the length-2 link with a vertex at cp.
    below = expect(Point(x, y - SCALE))
    above = expect(Point(x, y + SCALE))
    vpath = paths[ev]
    iv = vpath.index((_hole_entry(vpath, cp)))
    v3 = b.new_node(cp, Provenance(ROLE_SUBDIVISION, edge=ev))
    node_at[cp] = v3
    b.remove_edge(below, above)
    b.add_edge(below, v3)
    b.add_edge(v3, above)
    _path_replace(vpath, iv, 1, [v3])

    # Step 3, horizontal edge: drop the two flanking vertices, reroute through
    # four vertices on the half-integer row above the crossing.
    hm1 = expect(Point(x - SCALE, y))
    hp1 = expect(Point(x + SCALE, y))
    hm2 = expect(Point(x - 2 * SCALE, y))
    hp2 = expect(Point(x + 2 * SCALE, y))
    if len(b.adj[hm1]) != 2 or len(b.adj[hp1]) != 2:
        raise ConstructionError(f"crossing flank not plain at {cp}")
    hpath = paths[eh]
    ih = hpath.index(_hole_entry(hpath, cp))
    left_first = b.coords[hpath[ih - 1]].xu < b.coords[hpath[ih + 1]].xu
    b.delete_node(hm1)
    b.delete_node(hp1)
    chain_pts = [Point(x - 30, y + 10), Point(x - 10, y + 10),
                 Point(x + 10, y + 10), Point(x + 30, y + 10)]
    c1, c2, c3, c4 = (b.new_node(pt, Provenance(ROLE_SUBDIVISION, edge=eh))
                      for pt in chain_pts)
    for pt, nid in zip(chain_pts, (c1, c2, c3, c4)):
        node_at[pt] = nid
    for a_, b_ in ((hm2, c1), (c1, c2), (c2, c3), (c3, c4), (c4, hp2)):
        b.add_edge(a_, b_)
    replacement = [c1, c2, c3, c4] if left_first else [c4, c3, c2, c1]
    _path_replace(hpath, ih - 1, 3, replacement)

    # Step 4: plant H on the two crossing edges; roles follow the model
    # layout around center (x, y + 1/2): v0 right, v1 top, v2 left, v3 bottom.
    v0, v1, v2 = c3, above, c2
    try:
        new_graph, inst = construct_H_on(b.as_graph(), (v0, v2), (v1, v3))
    except PreconditionError as exc:
        raise ConstructionError(f"gadget precondition failed at {cp}: {exc}") from exc
    center = Point(x, y + _HALF)
    w_pts = [center.translate(dx, dy) for dx, dy in W_OFFSETS]
    for wid, pt in zip(inst.w_ids, w_pts):
        b.new_node(pt, Provenance(ROLE_GADGET_W, crossing=(x, y)), node_id=wid)
        node_at[pt] = wid
    b.load_graph(new_graph)
    return GadgetInstance(inst.v_ids, inst.w_ids, center, inst.added_edges)


def _hole_entry(path: list, cp: Point):
    for ent in path:
        if isinstance(ent, tuple) and ent[1] == cp:
            return ent
    raise ConstructionError(f"crossing {cp} not found on its path")


def _apply_parity_detour(b: _Builder, paths, e: Edge):
    """Step 5: bend one straight horizontal unit edge of e through an apex.

    Site rule: six consecutive path vertices on one mesh row, all at integer
    mesh crosses with degree at most 2, the detour applied to the middle
    edge.  This is stricter than requiring low degrees alone, which would
    admit sites one unit from a crossing chain or a route corner where the
    apex would land within distance 1 of a non-neighbor.
    """
    path = paths[e]
    candidates = []
    for i in range(len(path) - 5):
        window = path[i:i + 6]
        pts = [b.coords[nid] for nid in window]
        if any(p.xu % SCALE or p.yu % SCALE for p in pts):
            continue
        if len({p.yu for p in pts}) != 1:
            continue
        dxs = {q.xu - p.xu for p, q in zip(pts, pts[1:])}
        if dxs not in ({SCALE}, {-SCALE}):
            continue
        if any(len(b.adj[nid]) > 2 for nid in window):
            continue
        left, right = (window[2], window[3]) if pts[2].xu < pts[3].xu else (window[3], window[2])
        candidates.append(((b.coords[left].xu, b.coords[left].yu), left, right, window[2], window[3]))
    if not candidates:
        raise ConstructionError(f"no parity detour site on edge {e}")
    _, left, right, mid_a, mid_b = min(candidates)
    xl, yl = b.coords[left].xu, b.coords[left].yu
    b.coords[left] = Point(xl - _QUARTER, yl)
    b.coords[right] = Point(xl + SCALE + _QUARTER, yl)
    apex = b.new_node(Point(xl + _HALF, yl + _HALF),
                      Provenance(ROLE_DETOUR_APEX, edge=e))
    b.remove_edge(left, right)
    b.add_edge(apex, left)
    b.add_edge(apex, right)
    i = path.index(mid_a)
    if path[i + 1] != mid_b:
        raise ConstructionError("detour site not consecutive on its path")
    path[i + 1:i + 1] = [apex]
    if (len(path) - 2) % 2 == 1:
        raise ConstructionError(f"parity repair failed on edge {e}")


def _finalize(g: Graph, drawn: MeshDrawing, b: _Builder, paths,
              gadgets: list[GadgetInstance]) -> ReductionOutput:
    # canonical ids: originals keep 0..n-1, the rest ordered by coordinates
    others = sorted((nid for nid in b.coords if nid >= g.n),
                    key=lambda nid: (b.coords[nid].xu, b.coords[nid].yu))
    remap = {v: v for v in range(g.n)}
    for new_id, nid in enumerate(others, start=g.n):
        remap[nid] = new_id
    n_total = g.n + len(others)
    edges = {canon_edge(remap[a], remap[bb])
             for a, nbrs in b.adj.items() for bb in nbrs}
    result = Graph(n_total, frozenset(edges))
    points = [None] * n_total
    provenance: dict[int, Provenance] = {}
    for nid, pt in b.coords.items():
        points[remap[nid]] = pt
        provenance[remap[nid]] = b.prov[nid]
    model = ProximityModel(result, tuple(points))
    per_edge = {e: len(paths[e]) - 2 for e in paths}
    t = sum(per_edge.values())
    k = len(gadgets)
    gadgets = [GadgetInstance(tuple(remap[v] for v in inst.v_ids),
                              tuple(remap[w] for w in inst.w_ids),
                              inst.center,
                              tuple(canon_edge(remap[a], remap[bb])
                                    for a, bb in inst.added_edges))
               for inst in gadgets]
    out = ReductionOutput(g, result, model, k, t, provenance, per_edge,
                          gadgets, drawn)
    validate_reduction(out)
    return out


def validate_reduction(r: ReductionOutput):
    """Internal consistency of a ReductionOutput; raises ConstructionError."""
    report = validate_model(r.model)
    if not report.ok:
        raise ConstructionError(
            f"model invalid: missing={report.missing_edges[:3]} "
            f"spurious={report.spurious_edges[:3]}")
    if any(cnt % 2 for cnt in r.per_edge_subdivisions.values()):
        raise ConstructionError("odd per-edge subdivision count")
    if r.t != sum(r.per_edge_subdivisions.values()) or r.t % 2:
        raise ConstructionError("t does not match per-edge counts")
    if r.k != len(r.gadgets):
        raise ConstructionError("k does not match gadget instances")
    if r.result.n >= 2:
        p2 = precision2(r.model)
        if p2 < Fraction(1, 2):
            raise ConstructionError(f"precision2 {p2} below 1/2")
        if r.k >= 1 and p2 != Fraction(1, 2):
            raise ConstructionError(f"precision2 {p2} not tight despite k >= 1")
    h_edges = build_H().edges
    for inst in r.gadgets:
        ids = list(inst.v_ids) + list(inst.w_ids)
        induced = {(i, j) for i in range(8) for j in range(i + 1, 8)
                   if r.result.has_edge(ids[i], ids[j])}
        if induced != set(h_edges):
            raise ConstructionError(f"gadget at {inst.center} is not a copy of H")


def recover_mc(mc_u: int, k: int, t: int) -> int:
    """Invert the cut identity: mc(G) = mc(U(G)) - 8k - t."""
    value = mc_u - 8 * k - t
    if value < 0:
        raise InconsistencyError(f"mc_u={mc_u} smaller than 8k+t={8 * k + t}")
    return value


def bisection_double(r: "ReductionOutput | ProximityModel") -> ProximityModel:
    """Two far-apart disjoint copies of the model: its maximum bisection is
    twice the maximum cut of the single copy."""
    model = r.model if isinstance(r, ReductionOutput) else r
    g = model.graph
    if model.points:
        xs = [p.xu for p in model.points]
        dxu = (max(xs) - min(xs)) + 3 * SCALE
    else:
        dxu = 3 * SCALE
    doubled = disjoint_union(g, g)
    points = tuple(model.points) + tuple(p.translate(dxu, 0) for p in model.points)
    out = ProximityModel(doubled, points)
    report = validate_model(out)
    if not report.ok:
        raise ConstructionError("doubled model failed validation")
    return out


# -- serialization ---------------------------------------------------------


def to_json(r: ReductionOutput) -> str:
    """Deterministic JSON: integer 1/20-unit coordinates, sorted structures."""
    vertices = []
    for vid in range(r.result.n):
        prov = r.provenance[vid]
        origin = None
        if prov.edge is not None:
            origin = list(prov.edge)
        elif prov.crossing is not None:
            origin = list(prov.crossing)
        pt = r.model.points[vid]
        vertices.append({"id": vid, "x": pt.xu, "y": pt.yu,
                         "role": prov.role, "origin": origin})
    payload = {
        "scale": SCALE,
        "vertices": vertices,
        "edges": [list(e) for e in r.result.sorted_edges()],
        "k": r.k,
        "t": r.t,
        "per_edge_subdivisions": [[list(e), cnt] for e, cnt
                                  in sorted(r.per_edge_subdivisions.items())],
        "source": {"n": r.source.n,
                   "edges": [list(e) for e in r.source.sorted_edges()]},
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def model_to_json(model: ProximityModel, roles: dict[int, str] | None = None) -> str:
    """Standalone-model JSON in the same schema as a reduction output."""
    roles = roles or {}
    vertices = [{"id": i, "x": p.xu, "y": p.yu,
                 "role": roles.get(i, ROLE_ORIGINAL), "origin": None}
                for i, p in enumerate(model.points)]
    payload = {
        "scale": SCALE,
        "vertices": vertices,
        "edges": [list(e) for e in model.graph.sorted_edges()],
        "k": 0,
        "t": 0,
        "per_edge_subdivisions": [],
        "source": {"n": model.graph.n,
                   "edges": [list(e) for e in model.graph.sorted_edges()]},
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


@dataclass
class LoadedOutput:
    model: ProximityModel
    k: int
    t: int
    roles: dict[int, str]


def load_output_json(text: str) -> LoadedOutput:
    try:
        payload = json.loads(text)
        if payload.get("scale") != SCALE:
            raise InputError(f"unsupported scale {payload.get('scale')}")
        n = len(payload["vertices"])
        points = [None] * n
        roles = {}
        for rec in payload["vertices"]:
            points[rec["id"]] = Point(rec["x"], rec["y"])
            roles[rec["id"]] = rec.get("role", ROLE_ORIGINAL)
        graph_obj = Graph(n, frozenset(canon_edge(u, v) for u, v in payload["edges"]))
        model = ProximityModel(graph_obj, tuple(points))
        return LoadedOutput(model, payload.get("k", 0), payload.get("t", 0), roles)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed model JSON: {exc}") from exc
