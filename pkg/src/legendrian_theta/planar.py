"""Property N realizations of planar graphs through dual spanning trees.

A planar map is a graph with a rotation system.  Edge ``i`` joining
``edges[i] = (u, v)`` has darts ``2i`` (the end at ``u``) and ``2i + 1``
(the end at ``v``); ``rotation[x]`` lists the darts at ``x`` in cyclic
order.  Faces are the orbits of ``d -> next(twin(d))``.

Given a spanning tree T* of the dual graph, the realization assigns to
every cycle the Thurston-Bennequin number minus the number of its edges
whose duals lie in T*.  The certificate records, for each edge, either
that it is a cut edge or a cycle through it with tb = -1.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx


class PlanarMapError(ValueError):
    pass


class NoWitnessError(ValueError):
    pass


@dataclass
class PlanarMap:
    vertices: List[str]
    edges: List[Tuple[str, str]]
    rotation: Dict[str, List[int]]

    def __post_init__(self):
        self.vertices = [str(v) for v in self.vertices]
        self.edges = [(str(u), str(v)) for u, v in self.edges]
        self.rotation = {str(v): [int(d) for d in ds] for v, ds in self.rotation.items()}

    def dart_vertex(self, d: int) -> str:
        return self.edges[d // 2][d % 2]

    def check(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PlanarMapError("duplicate vertex ids")
        for i, (u, v) in enumerate(self.edges):
            if u not in vs or v not in vs:
                raise PlanarMapError(f"edge {i} has an unknown endpoint")
        seen = []
        for v in self.vertices:
            for d in self.rotation.get(v, []):
                if not 0 <= d < 2 * len(self.edges):
                    raise PlanarMapError(f"dart {d} out of range at {v!r}")
                if self.dart_vertex(d) != v:
                    raise PlanarMapError(f"dart {d} listed at {v!r} but belongs to {self.dart_vertex(d)!r}")
                seen.append(d)
        if set(self.rotation) - vs:
            raise PlanarMapError("rotation names an unknown vertex")
        if sorted(seen) != list(range(2 * len(self.edges))):
            raise PlanarMapError("every edge end must appear exactly once in the rotation")

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for i, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, key=i)
        return g

    def is_connected(self) -> bool:
        return not self.vertices or nx.is_connected(self.graph())

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "rotation": {v: list(self.rotation.get(v, [])) for v in self.vertices},
        }

    @classmethod
    def from_json(cls, d: dict) -> "PlanarMap":
        try:
            m = cls(d["vertices"], [tuple(e) for e in d["edges"]], d["rotation"])
        except (KeyError, TypeError) as exc:
            raise PlanarMapError(f"malformed planar map: {exc}") from exc
        m.check()
        return m

    @classmethod
    def loads(cls, text: str) -> "PlanarMap":
        return cls.from_json(json.loads(text))


def _next_in_rotation(m: PlanarMap) -> Dict[int, int]:
    nxt = {}
    for ds in m.rotation.values():
        for k, d in enumerate(ds):
            nxt[d] = ds[(k + 1) % len(ds)]
    return nxt


def trace_faces(m: PlanarMap) -> List[List[int]]:
    """Facial walks as dart lists; checks the Euler formula on the sphere."""
    m.check()
    if not m.is_connected():
        raise PlanarMapError("graph is not connected")
    nxt = _next_in_rotation(m)
    faces, seen = [], set()
    for start in range(2 * len(m.edges)):
        if start in seen:
            continue
        walk, d = [], start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = nxt[d ^ 1]
        faces.append(walk)
    if not faces:
        faces = [[]]
    if len(m.vertices) - len(m.edges) + len(faces) != 2:
        raise PlanarMapError(
            f"rotation system is not spherical: V - E + F = "
            f"{len(m.vertices)} - {len(m.edges)} + {len(faces)}")
    return faces


def face_of_darts(faces: List[List[int]]) -> Dict[int, int]:
    return {d: f for f, walk in enumerate(faces) for d in walk}


@dataclass
class DualGraph:
    n_faces: int
    ends: List[Tuple[int, int]]  # dual edge i joins the two faces beside primal edge i

    def neighbors(self) -> Dict[int, List[Tuple[int, int]]]:
        adj: Dict[int, List[Tuple[int, int]]] = {f: [] for f in range(self.n_faces)}
        for i, (a, b) in enumerate(self.ends):
            adj[a].append((i, b))
            if a != b:
                adj[b].append((i, a))
        return adj


def dual(m: PlanarMap) -> DualGraph:
    faces = trace_faces(m)
    fd = face_of_darts(faces)
    return DualGraph(len(faces), [(fd[2 * i], fd[2 * i + 1]) for i in range(len(m.edges))])


@dataclass
class DualTree:
    dual: DualGraph
    tree: List[int]
    root: int
    depth: Dict[int, int]
    parent: Dict[int, Tuple[int, int]]  # face -> (dual edge, parent face)

    @property
    def height(self) -> int:
        return max(self.depth.values(), default=0)

    def d(self, face: int) -> int:
        return self.height - self.depth[face]

    def path(self, a: int, b: int) -> List[int]:
        """Dual tree edges on the path between faces ``a`` and ``b``."""
        up_a, up_b = [], []
        while self.depth[a] > self.depth[b]:
            e, a = self.parent[a]
            up_a.append(e)
        while self.depth[b] > self.depth[a]:
            e, b = self.parent[b]
            up_b.append(e)
        while a != b:
            e, a = self.parent[a]
            up_a.append(e)
            e, b = self.parent[b]
            up_b.append(e)
        return up_a + list(reversed(up_b))

    def side(self, edge: int) -> set:
        """Faces on the far side of tree edge ``edge`` from the root."""
        if edge not in self.tree:
            raise ValueError(f"dual edge {edge} is not in the tree")
        a, b = self.dual.ends[edge]
        child = a if self.parent.get(a, (None,))[0] == edge else b
        children: Dict[int, List[int]] = {}
        for f, (_, p) in self.parent.items():
            children.setdefault(p, []).append(f)
        out, stack = set(), [child]
        while stack:
            f = stack.pop()
            out.add(f)
            stack.extend(children.get(f, []))
        return out


def dual_spanning_tree(g: DualGraph, root: int = 0, seed_edges: Sequence[int] = ()) -> DualTree:
    """BFS spanning tree of the dual, ties broken by edge index.

    ``seed_edges`` are put in the tree first; they must not contain a cycle.
    """
    if not 0 <= root < g.n_faces:
        raise ValueError(f"root face {root} out of range")
    adj = g.neighbors()
    bfs_edges, seen, queue = [], {root}, deque([root])
    while queue:
        f = queue.popleft()
        for e, h in sorted(adj[f]):
            if h not in seen:
                seen.add(h)
                bfs_edges.append(e)
                queue.append(h)
    parent_uf = list(range(g.n_faces))

    def find(x):
        while parent_uf[x] != x:
            parent_uf[x] = parent_uf[parent_uf[x]]
            x = parent_uf[x]
        return x

    tree = []
    for k, e in enumerate(list(seed_edges) + bfs_edges):
        a, b = g.ends[e]
        ra, rb = find(a), find(b)
        if ra == rb:
            if k < len(seed_edges):
                raise ValueError(f"seed edges {list(seed_edges)} contain a cycle or loop")
            continue
        parent_uf[ra] = rb
        tree.append(e)
    tree_adj: Dict[int, List[Tuple[int, int]]] = {f: [] for f in range(g.n_faces)}
    for e in tree:
        a, b = g.ends[e]
        tree_adj[a].append((e, b))
        tree_adj[b].append((e, a))
    depth, parent, queue = {root: 0}, {}, deque([root])
    while queue:
        f = queue.popleft()
        for e, h in sorted(tree_adj[f]):
            if h not in depth:
                depth[h] = depth[f] + 1
                parent[h] = (e, f)
                queue.append(h)
    return DualTree(g, sorted(tree), root, depth, parent)


# ---------------------------------------------------------------------------
# Cycles


def order_cycle(m: PlanarMap, edges: Iterable[int]) -> Tuple[List[int], List[str]]:
    """Arrange an edge set forming a simple cycle into a closed walk."""
    edges = list(dict.fromkeys(edges))
    if not edges:
        raise PlanarMapError("empty cycle")
    for e in edges:
        if not 0 <= e < len(m.edges):
            raise PlanarMapError(f"edge {e} not in graph")
    deg: Dict[str, int] = {}
    for e in edges:
        for x in m.edges[e]:
            deg[x] = deg.get(x, 0) + 1
    if any(c != 2 for c in deg.values()):
        raise PlanarMapError(f"edges {edges} do not form a simple cycle")
    start = edges[0]
    walk, verts = [start], [m.edges[start][0]]
    cur = m.edges[start][1]
    remaining = set(edges[1:])
    while remaining:
        nxt = next((e for e in sorted(remaining) if cur in m.edges[e]), None)
        if nxt is None:
            raise PlanarMapError(f"edges {edges} do not form a single cycle")
        remaining.discard(nxt)
        walk.append(nxt)
        verts.append(cur)
        u, v = m.edges[nxt]
        cur = v if u == cur else u
    if cur != verts[0]:
        raise PlanarMapError(f"edges {edges} do not close up")
    return walk, verts


def lerp_tb(tree: DualTree, m: PlanarMap, cycle: Iterable[int]) -> int:
    """tb of a cycle: minus the number of its edges dual to tree edges."""
    walk, _ = order_cycle(m, cycle)
    in_tree = set(tree.tree)
    return -sum(1 for e in walk if e in in_tree)


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class RealizationCertificate:
    map: PlanarMap
    faces: List[List[int]]
    tree: DualTree
    cut_edges: List[int]
    witnesses: Dict[int, List[int]]
    facial_tb: Dict[int, Optional[int]]
    rule: str = "tb(cycle) = -#{edges e of the cycle with e* in T*}"

    def to_json(self) -> dict:
        return {
            "map": self.map.to_json(),
            "faces": [list(f) for f in self.faces],
            "tree": {
                "edges": list(self.tree.tree),
                "root": self.tree.root,
                "depth": {str(f): d for f, d in sorted(self.tree.depth.items())},
            },
            "rule": self.rule,
            "edges": [
                {"edge": i, "status": "cut"} if i in self.cut_edges else
                {"edge": i, "status": "witness", "cycle": order_cycle(self.map, self.witnesses[i])[0],
                 "tb": lerp_tb(self.tree, self.map, self.witnesses[i])}
                for i in range(len(self.map.edges))
            ],
            "facial_tb": {str(f): t for f, t in sorted(self.facial_tb.items())},
        }


def _bond(tree: DualTree, f: int) -> List[int]:
    """Primal edges whose duals cross the cut made by removing tree edge ``f``."""
    side = tree.side(f)
    return sorted(i for i, (a, b) in enumerate(tree.dual.ends) if (a in side) != (b in side))


def _face_is_cycle(m: PlanarMap, walk: Sequence[int]) -> bool:
    try:
        order_cycle(m, [d // 2 for d in walk])
    except PlanarMapError:
        return False
    return len({d // 2 for d in walk}) == len(walk)


def realize_property_n(m: PlanarMap, seed_edges: Sequence[int] = (), root: int = 0) -> RealizationCertificate:
    """Dual spanning tree realization with a tb = -1 witness for every non-cut edge.

    Removing a tree edge f* splits the faces into a subtree D and the rest;
    the boundary of D is a cycle meeting T* only in f*, hence tb = -1.  A
    tree edge is witnessed by its own boundary cycle; any other non-cut edge
    by the boundary cycle of a tree edge on the tree path joining its faces.
    """
    faces = trace_faces(m)
    g = dual(m)
    tree = dual_spanning_tree(g, root, seed_edges)
    in_tree = set(tree.tree)
    cuts, witnesses = [], {}
    for i, (a, b) in enumerate(g.ends):
        if a == b:
            cuts.append(i)
            continue
        f = i if i in in_tree else tree.path(a, b)[0]
        witnesses[i] = _bond(tree, f)
    facial = {}
    for k, walk in enumerate(faces):
        facial[k] = (-sum(1 for d in walk if d // 2 in in_tree)
                     if walk and _face_is_cycle(m, walk) else None)
    return RealizationCertificate(m, faces, tree, cuts, witnesses, facial)


def validate_certificate(cert: RealizationCertificate) -> List[str]:
    """Independent recheck of a certificate; returns a list of problems."""
    problems = []
    m = cert.map
    faces = trace_faces(m)
    g = dual(m)
    if len(cert.tree.tree) != len(faces) - 1:
        problems.append(f"tree has {len(cert.tree.tree)} edges, expected {len(faces) - 1}")
    t = nx.MultiGraph()
    t.add_nodes_from(range(len(faces)))
    for e in cert.tree.tree:
        t.add_edge(*g.ends[e], key=e)
    if not nx.is_tree(t):
        problems.append("tree edges do not form a spanning tree of the dual")
    primal = m.graph()
    for i in range(len(m.edges)):
        is_cut = nx.number_connected_components(
            nx.restricted_view(primal, [], [(m.edges[i][0], m.edges[i][1], i)])) > 1
        if i in cert.cut_edges:
            if not is_cut:
                problems.append(f"edge {i} marked cut but is not a bridge")
            continue
        if is_cut:
            problems.append(f"bridge {i} carries a witness")
        cyc = cert.witnesses.get(i)
        if cyc is None:
            problems.append(f"edge {i} has no witness")
            continue
        if i not in cyc:
            problems.append(f"witness for edge {i} does not contain it")
        try:
            tb = -sum(1 for e in order_cycle(m, cyc)[0] if e in set(cert.tree.tree))
        except PlanarMapError as exc:
            problems.append(f"witness for edge {i}: {exc}")
            continue
        if tb != -1:
            problems.append(f"witness for edge {i} has tb {tb}")
    return problems


# ---------------------------------------------------------------------------
# Theta and wedge subdivisions


def _subdivided(m: PlanarMap) -> nx.Graph:
    """Simple graph with each edge split twice; handles loops and multi-edges."""
    g = nx.Graph()
    g.add_nodes_from(m.vertices)
    for i, (u, v) in enumerate(m.edges):
        a, b = ("s", i, 0), ("s", i, 1)
        g.add_edges_from([(u, a), (a, b), (b, v)])
    return g


def _edges_of(path_nodes) -> List[int]:
    return list(dict.fromkeys(n[1] for n in path_nodes if isinstance(n, tuple)))


def _originals(path_nodes) -> List[str]:
    return [n for n in path_nodes if not isinstance(n, tuple)]


@dataclass
class ThetaWitness:
    v1: str
    v2: str
    paths: List[List[int]]  # edge indices from v1 to v2

    def to_json(self) -> dict:
        return {"v1": self.v1, "v2": self.v2, "paths": self.paths}


@dataclass
class WedgeWitness:
    v: str
    cycles: List[List[int]]

    def to_json(self) -> dict:
        return {"v": self.v, "cycles": self.cycles}


def has_theta_subdivision(m: PlanarMap) -> Optional[ThetaWitness]:
    """Three internally disjoint paths between two vertices, if any.

    Only blocks of cycle rank at least two can hold one; inside such a block
    the ends of any ear are joined by three disjoint paths, so a search over
    pairs of branch vertices always succeeds.
    """
    g = _subdivided(m)
    for block in sorted(nx.biconnected_components(g), key=lambda b: sorted(map(str, b))):
        h = g.subgraph(block)
        if h.number_of_edges() - h.number_of_nodes() + 1 < 2:
            continue
        branch = sorted((x for x in h.nodes if not isinstance(x, tuple) and h.degree(x) >= 3), key=str)
        for x, z in itertools.combinations(branch, 2):
            paths = list(nx.node_disjoint_paths(h, x, z, cutoff=3))
            if len(paths) >= 3:
                return ThetaWitness(x, z, [_edges_of(p) for p in paths[:3]])
    return None


def _cycles_through(g: nx.Graph, v) -> List[List]:
    return [c for c in nx.simple_cycles(g) if v in c]


def has_wedge_subdivision(m: PlanarMap, exhaustive_limit: int = 12) -> Optional[WedgeWitness]:
    """Two cycles sharing exactly one vertex, if any.

    A cut vertex lying on two blocks that contain cycles gives one directly;
    otherwise small graphs are searched exhaustively.
    """
    g = _subdivided(m)
    cyclic = [b for b in nx.biconnected_components(g) if len(b) > 2]
    for v in m.vertices:
        mine = [b for b in cyclic if v in b]
        if len(mine) >= 2:
            cycles = []
            for b in mine[:2]:
                h = g.subgraph(b)
                c = nx.find_cycle(h, source=v)
                cycles.append(_edges_of([u for u, _ in c]))
            return WedgeWitness(v, cycles)
    if len(m.vertices) > exhaustive_limit:
        return None
    for v in m.vertices:
        cycles = _cycles_through(g, v)
        for c1, c2 in itertools.combinations(cycles, 2):
            if set(_originals(c1)) & set(_originals(c2)) == {v}:
                return WedgeWitness(v, [_edges_of(c1), _edges_of(c2)])
    return None


# ---------------------------------------------------------------------------
# Infinite families


@dataclass
class FamilyDescriptor:
    kind: str  # "theta" or "wedge"
    k: int
    vertex: str
    twist_edges: Tuple[int, int]
    twists: int
    distinguished: List[int]
    invariant: int
    base: RealizationCertificate
    witnesses_preserved: bool

    def to_json(self) -> dict:
        d = {
            "kind": self.kind,
            "k": self.k,
            "vertex": self.vertex,
            "twist_edges": list(self.twist_edges),
            "twists": self.twists,
            "distinguished": self.distinguished,
            "witnesses_preserved": self.witnesses_preserved,
        }
        d["tb" if self.kind == "theta" else "linking"] = self.invariant
        return d


def _theta_site(m: PlanarMap, g: DualGraph):
    """Vertex with two rotation-adjacent edges on a common cycle whose duals
    can both sit in a spanning tree."""
    mg = m.graph()
    for v in m.vertices:
        ds = m.rotation.get(v, [])
        for k in range(len(ds)):
            a, b = ds[k] // 2, ds[(k + 1) % len(ds)] // 2
            if a == b or m.edges[a][0] == m.edges[a][1] or m.edges[b][0] == m.edges[b][1]:
                continue
            fa, fb = g.ends[a], g.ends[b]
            if fa[0] == fa[1] or fb[0] == fb[1] or set(fa) == set(fb):
                continue
            far_a = m.edges[a][1] if m.edges[a][0] == v else m.edges[a][0]
            far_b = m.edges[b][1] if m.edges[b][0] == v else m.edges[b][0]
            h = nx.restricted_view(mg, [v], [])
            if far_a == far_b:
                cycle = [a, b]
            elif nx.has_path(h, far_a, far_b):
                path = nx.shortest_path(h, far_a, far_b)
                rest = [min(mg[x][y]) for x, y in zip(path, path[1:])]
                cycle = [a] + rest + [b]
            else:
                continue
            return v, (a, b), cycle
    return None


def infinite_family(m: PlanarMap, k_max: int) -> List[FamilyDescriptor]:
    """Pairwise distinct Property N realizations indexed by k = 0..k_max.

    Theta case: k positive vertex twists of two adjacent edges whose duals are
    in the tree lower tb of a cycle through both by k; every tb = -1 witness
    avoids one of the two edges and keeps its tb.  Wedge case: 2k twists
    between the two cycles at their common vertex give pushoff linking k.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if has_theta_subdivision(m) is not None:
        g = dual(m)
        site = _theta_site(m, g)
        if site is None:
            raise NoWitnessError("no rotation-adjacent edge pair at a branch vertex fits in a dual tree")
        v, (a, b), cycle = site
        cert = realize_property_n(m, seed_edges=[a, b])
        base = lerp_tb(cert.tree, m, cycle)
        keep = all(not (a in w and b in w) for w in cert.witnesses.values())
        return [FamilyDescriptor("theta", k, v, (a, b), k, order_cycle(m, cycle)[0], base - k, cert, keep)
                for k in range(k_max + 1)]
    wedge = has_wedge_subdivision(m)
    if wedge is None:
        raise NoWitnessError("graph has neither a theta nor a wedge subdivision")
    cert = realize_property_n(m)
    v = wedge.v
    c1, c2 = wedge.cycles
    at_v = [d // 2 for d in m.rotation[v]]
    pair = next(((x, y) for x, y in zip(at_v, at_v[1:] + at_v[:1])
                 if (x in c1 and y in c2) or (x in c2 and y in c1)), None)
    if pair is None:
        raise NoWitnessError("the wedge cycles have no adjacent ends at the shared vertex")
    keep = all(not (pair[0] in w and pair[1] in w) for w in cert.witnesses.values())
    out = []
    for k in range(k_max + 1):
        crossings = 2 * k  # each positive twist adds one crossing between the pushoffs
        out.append(FamilyDescriptor("wedge", k, v, pair, 2 * k, sorted(set(c1) | set(c2)),
                                    crossings // 2, cert, keep))
    return out


# ---------------------------------------------------------------------------
# Example maps


def from_embedding(emb: nx.PlanarEmbedding) -> PlanarMap:
    vertices = sorted(emb.nodes, key=str)
    index, edges = {}, []
    for u, v in sorted({tuple(sorted((a, b), key=str)) for a, b in emb.edges()}, key=str):
        index[(u, v)] = 2 * len(edges)
        index[(v, u)] = 2 * len(edges) + 1
        edges.append((u, v))
    rotation = {str(v): [index[(v, w)] for w in emb.neighbors_cw_order(v)] for v in vertices}
    return PlanarMap([str(v) for v in vertices], [(str(u), str(v)) for u, v in edges], rotation)


def planar_map_of(graph: nx.Graph) -> PlanarMap:
    ok, emb = nx.check_planarity(graph)
    if not ok:
        raise PlanarMapError("graph is not planar")
    return from_embedding(emb)


def theta_map() -> PlanarMap:
    return PlanarMap(["v1", "v2"], [("v1", "v2")] * 3, {"v1": [0, 2, 4], "v2": [5, 3, 1]})


def wedge_map() -> PlanarMap:
    """Two loops at one vertex."""
    return PlanarMap(["v"], [("v", "v"), ("v", "v")], {"v": [0, 1, 2, 3]})


def loop_map() -> PlanarMap:
    return PlanarMap(["v"], [("v", "v")], {"v": [0, 1]})


def path_map(n: int) -> PlanarMap:
    return planar_map_of(nx.path_graph(n))


def standard_maps() -> Dict[str, PlanarMap]:
    return {
        "theta": theta_map(),
        "K4": planar_map_of(nx.complete_graph(4)),
        "cube": planar_map_of(nx.hypercube_graph(3)),
        "W4": planar_map_of(nx.wheel_graph(5)),
        "prism": planar_map_of(nx.circular_ladder_graph(3)),
    }


def random_planar_map(rng: random.Random, max_vertices: int = 12) -> PlanarMap:
    """A connected planar graph: a random tree plus random edges kept while planar."""
    n = rng.randint(2, max_vertices)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for v in range(1, n):
        g.add_edge(v, rng.randrange(v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    rng.shuffle(pairs)
    for u, v in pairs[: rng.randint(0, len(pairs))]:
        g.add_edge(u, v)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(u, v)
    return planar_map_of(g)


__all__ = [
    "DualGraph", "DualTree", "FamilyDescriptor", "NoWitnessError", "PlanarMap",
    "PlanarMapError", "RealizationCertificate", "ThetaWitness", "WedgeWitness", "dual",
    "dual_spanning_tree", "face_of_darts", "from_embedding", "has_theta_subdivision",
    "has_wedge_subdivision", "infinite_family", "lerp_tb", "loop_map", "order_cycle",
    "path_map", "planar_map_of", "random_planar_map", "realize_property_n",
    "standard_maps", "theta_map", "trace_faces", "validate_certificate", "wedge_map",
]
