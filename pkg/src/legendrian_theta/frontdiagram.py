"""Front projections of Legendrian graphs as Morse event words.

A diagram is read left to right.  Between events the front is a stack of
horizontal strands numbered 1, 2, ... from the top.  Events act on that
stack:

``lcusp``  two strands of one edge are born at ``pos``, ``pos+1``
``rcusp``  the strands at ``pos``, ``pos+1`` (same edge) die
``cross``  the strands at ``pos`` and ``pos+1`` swap; the descending one is in front
``vertex`` ``len(left)`` strands ending at ``pos`` are replaced by ``len(right)`` new ones

Edges are oriented from the end at the vertex listed first in
``FrontDiagram.vertices`` (for a loop, from its first end in event order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .classify import ThetaInvariants

LCUSP, RCUSP, CROSS, VERTEX = "lcusp", "rcusp", "cross", "vertex"
KINDS = (LCUSP, RCUSP, CROSS, VERTEX)


class DiagramError(ValueError):
    """Raised when an operation needs a legal diagram and gets an illegal one."""


@dataclass(frozen=True)
class Event:
    kind: str
    pos: int
    edge: Optional[str] = None
    vertex: Optional[str] = None
    left: Tuple[str, ...] = ()
    right: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))

    @property
    def consumed(self) -> int:
        return {LCUSP: 0, RCUSP: 2, CROSS: 2}.get(self.kind, len(self.left))

    @property
    def produced(self) -> int:
        return {LCUSP: 2, RCUSP: 0, CROSS: 2}.get(self.kind, len(self.right))

    def moved(self, pos: int) -> "Event":
        return replace(self, pos=pos)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "pos": self.pos}
        if self.kind == LCUSP:
            d["edge"] = self.edge
        elif self.kind == VERTEX:
            d.update(vertex=self.vertex, left=list(self.left), right=list(self.right))
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Event":
        kind = d["kind"]
        if kind == LCUSP:
            return cls(LCUSP, int(d["pos"]), edge=str(d["edge"]))
        if kind == VERTEX:
            return cls(VERTEX, int(d["pos"]), vertex=str(d["vertex"]),
                       left=tuple(map(str, d.get("left", ()))),
                       right=tuple(map(str, d.get("right", ()))))
        return cls(kind, int(d["pos"]))


def lcusp(pos, edge):
    return Event(LCUSP, pos, edge=edge)


def rcusp(pos):
    return Event(RCUSP, pos)


def cross(pos):
    return Event(CROSS, pos)


def vertex(pos, vid, left=(), right=()):
    return Event(VERTEX, pos, vertex=vid, left=tuple(left), right=tuple(right))


@dataclass(frozen=True)
class FrontDiagram:
    edges: Tuple[str, ...]
    vertices: Tuple[Tuple[str, int], ...]
    events: Tuple[Event, ...]
    trusted_trivial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "vertices", tuple((str(v), int(n)) for v, n in self.vertices))
        object.__setattr__(self, "events", tuple(self.events))

    @property
    def vertex_ids(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    def with_events(self, events) -> "FrontDiagram":
        return replace(self, events=tuple(events))

    def to_json(self) -> dict:
        return {
            "edges": list(self.edges),
            "vertices": [{"id": v, "valence": n} for v, n in self.vertices],
            "events": [e.to_json() for e in self.events],
            "trusted_trivial": self.trusted_trivial,
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    @classmethod
    def from_json(cls, d: dict) -> "FrontDiagram":
        return cls(
            edges=tuple(map(str, d["edges"])),
            vertices=tuple((str(v["id"]), int(v["valence"])) for v in d["vertices"]),
            events=tuple(Event.from_json(e) for e in d["events"]),
            trusted_trivial=bool(d.get("trusted_trivial", False)),
        )

    @classmethod
    def loads(cls, text: str) -> "FrontDiagram":
        return cls.from_json(json.loads(text))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# ---------------------------------------------------------------------------
# Analysis: strands, edge arcs, crossings


@dataclass
class _Strand:
    edge: str
    left_end: tuple = None
    right_end: tuple = None


@dataclass
class EdgeArc:
    """An edge read from its tail end to its head end."""

    tail: tuple
    head: tuple
    strands: List[Tuple[int, bool]]  # (strand id, traversed rightward)
    cusps: List[str]  # "down"/"up" in forward direction


@dataclass
class _Analysis:
    strands: List[_Strand]
    crossings: List[Tuple[int, int, int]]  # (event index, over strand, under strand)
    cusp_branches: Dict[int, Tuple[int, int]]
    end_strand: Dict[tuple, int]
    end_label: Dict[tuple, str]
    vertex_event: Dict[str, int]
    arcs: Dict[str, EdgeArc]
    widths: List[int]  # width before each event, plus final width


def _walk(diagram: FrontDiagram, violations: list) -> Optional[_Analysis]:
    strands: List[_Strand] = []
    crossings = []
    cusp_branches = {}
    end_strand = {}
    end_label = {}
    vertex_event = {}
    widths = []
    slots: List[int] = []
    edge_set = set(diagram.edges)
    valence = dict(diagram.vertices)

    def new(label, left_end):
        strands.append(_Strand(label, left_end))
        return len(strands) - 1

    for i, ev in enumerate(diagram.events):
        widths.append(len(slots))
        p = ev.pos - 1
        if ev.kind == LCUSP:
            if ev.edge not in edge_set:
                violations.append((i, f"lcusp on unknown edge {ev.edge!r}"))
                return None
            if not 0 <= p <= len(slots):
                violations.append((i, f"pos {ev.pos} out of range for width {len(slots)}"))
                return None
            u = new(ev.edge, ("lcusp", i, "upper"))
            d = new(ev.edge, ("lcusp", i, "lower"))
            cusp_branches[i] = (u, d)
            slots[p:p] = [u, d]
        elif ev.kind in (RCUSP, CROSS):
            if not 0 <= p or p + 1 >= len(slots):
                violations.append((i, f"pos {ev.pos} out of range for width {len(slots)}"))
                return None
            a, b = slots[p], slots[p + 1]
            if ev.kind == RCUSP:
                if strands[a].edge != strands[b].edge:
                    violations.append((i, "rcusp joins strands of different edges "
                                          f"{strands[a].edge!r} and {strands[b].edge!r}"))
                    return None
                strands[a].right_end = ("rcusp", i, "upper")
                strands[b].right_end = ("rcusp", i, "lower")
                cusp_branches[i] = (a, b)
                del slots[p:p + 2]
            else:
                crossings.append((i, a, b))
                slots[p], slots[p + 1] = b, a
        else:
            k = len(ev.left)
            if ev.vertex in vertex_event:
                violations.append((i, f"vertex {ev.vertex!r} appears twice"))
                return None
            if ev.vertex not in valence:
                violations.append((i, f"unknown vertex {ev.vertex!r}"))
                return None
            vertex_event[ev.vertex] = i
            if valence[ev.vertex] != k + len(ev.right):
                violations.append((i, f"vertex {ev.vertex!r} has valence {k + len(ev.right)}, "
                                      f"declared {valence[ev.vertex]}"))
            if not 0 <= p or p + k > len(slots) or p > len(slots):
                violations.append((i, f"pos {ev.pos} out of range for width {len(slots)}"))
                return None
            consumed = slots[p:p + k]
            for j, (s, label) in enumerate(zip(consumed, ev.left)):
                if label not in edge_set:
                    violations.append((i, f"unknown edge {label!r} at vertex"))
                    return None
                if strands[s].edge != label:
                    violations.append((i, f"vertex expects edge {label!r} at slot {p + j + 1}, "
                                          f"found {strands[s].edge!r}"))
                    return None
                end = ("vertex", i, "L", j)
                strands[s].right_end = end
                end_strand[end] = s
                end_label[end] = label
            created = []
            for j, label in enumerate(ev.right):
                if label not in edge_set:
                    violations.append((i, f"unknown edge {label!r} at vertex"))
                    return None
                end = ("vertex", i, "R", j)
                s = new(label, end)
                end_strand[end] = s
                end_label[end] = label
                created.append(s)
            slots[p:p + k] = created
    widths.append(len(slots))
    if slots:
        violations.append((len(diagram.events), f"{len(slots)} strands left open at the end"))
        return None
    for v, _ in diagram.vertices:
        if v not in vertex_event:
            violations.append((len(diagram.events), f"vertex {v!r} has no vertex event"))
    return _Analysis(strands, crossings, cusp_branches, end_strand, end_label,
                     vertex_event, {}, widths)


def _end_vertex(diagram: FrontDiagram, end: tuple) -> str:
    return diagram.events[end[1]].vertex


def _assemble_arcs(diagram: FrontDiagram, an: _Analysis, violations: list) -> None:
    order = {v: k for k, (v, _) in enumerate(diagram.vertices)}
    ends_by_edge: Dict[str, List[tuple]] = {e: [] for e in diagram.edges}
    for end, label in an.end_label.items():
        ends_by_edge[label].append(end)
    seen = set()
    for e in diagram.edges:
        ends = ends_by_edge[e]
        if len(ends) != 2:
            violations.append((len(diagram.events), f"edge {e!r} has {len(ends)} vertex ends, expected 2"))
            continue
        ends.sort(key=lambda end: (order[_end_vertex(diagram, end)], end[1], end[2], end[3]))
        tail, head = ends
        s = an.end_strand[tail]
        rightward = tail[2] == "R"
        steps, cusps = [], []
        while True:
            if s in seen:
                violations.append((len(diagram.events), f"edge {e!r} revisits a strand"))
                return
            seen.add(s)
            steps.append((s, rightward))
            st = an.strands[s]
            end = st.right_end if rightward else st.left_end
            if end[0] == "vertex":
                if end != head:
                    violations.append((len(diagram.events), f"edge {e!r} does not run from tail to head"))
                break
            upper, lower = an.cusp_branches[end[1]]
            if end[2] == "upper":
                cusps.append("down")
                s = lower
            else:
                cusps.append("up")
                s = upper
            rightward = not rightward
        an.arcs[e] = EdgeArc(tail, head, steps, cusps)
    stray = [k for k in range(len(an.strands)) if k not in seen]
    if stray:
        labels = sorted({an.strands[k].edge for k in stray})
        violations.append((len(diagram.events), f"edges {labels} have strands off their arc"))


@lru_cache(maxsize=4096)
def _analyze(diagram: FrontDiagram):
    violations: list = []
    if len(set(diagram.edges)) != len(diagram.edges):
        violations.append((0, "duplicate edge ids"))
    an = _walk(diagram, violations)
    if an is not None and not violations:
        _assemble_arcs(diagram, an, violations)
    return an, tuple(violations)


def validate(diagram: FrontDiagram) -> List[Tuple[int, str]]:
    """Return ``(event index, message)`` for every violated legality rule."""
    return list(_analyze(diagram)[1])


def analysis(diagram: FrontDiagram) -> _Analysis:
    an, violations = _analyze(diagram)
    if violations:
        raise DiagramError("; ".join(f"event {i}: {m}" for i, m in violations))
    return an


def is_legal(diagram: FrontDiagram) -> bool:
    return not validate(diagram)


def edge_arc(diagram: FrontDiagram, edge: str) -> EdgeArc:
    an = analysis(diagram)
    if edge not in an.arcs:
        raise DiagramError(f"edge {edge!r} not in diagram")
    return an.arcs[edge]


def edge_endpoints(diagram: FrontDiagram, edge: str) -> Tuple[str, str]:
    arc = edge_arc(diagram, edge)
    return _end_vertex(diagram, arc.tail), _end_vertex(diagram, arc.head)


def strand_labels(diagram: FrontDiagram, index: int) -> List[str]:
    """Edge labels of the strands (top to bottom) just before event ``index``."""
    an = analysis(diagram)
    return [an.strands[s].edge for s in strands_before(diagram, index)]


def strands_before(diagram: FrontDiagram, index: int) -> List[int]:
    an = analysis(diagram)
    slots: List[int] = []
    for i, ev in enumerate(diagram.events[:index]):
        p = ev.pos - 1
        if ev.kind == LCUSP:
            slots[p:p] = an.cusp_branches[i]
        elif ev.kind == RCUSP:
            del slots[p:p + 2]
        elif ev.kind == CROSS:
            slots[p], slots[p + 1] = slots[p + 1], slots[p]
        else:
            k = len(ev.left)
            slots[p:p + k] = [an.end_strand[("vertex", i, "R", j)] for j in range(len(ev.right))]
    return slots


def strand_direction(diagram: FrontDiagram, strand: int) -> Tuple[str, bool]:
    """Edge of a strand and whether the edge's forward orientation runs it rightward."""
    an = analysis(diagram)
    edge = an.strands[strand].edge
    for s, rightward in an.arcs[edge].strands:
        if s == strand:
            return edge, rightward
    raise DiagramError(f"strand {strand} not on edge {edge!r}")


def zigzag(slot: int, label: str, down: bool) -> List[Event]:
    """Events of a zigzag on the strand at ``slot``; ``down`` gives cusps that
    are traversed upper-to-lower when the strand is read rightward."""
    if down:
        return [lcusp(slot + 1, label), rcusp(slot)]
    return [lcusp(slot, label), rcusp(slot + 1)]


def insert_stabilization(diagram: FrontDiagram, index: int, slot: int, sign: int,
                         edge: Optional[str] = None) -> FrontDiagram:
    """Stabilize the strand at ``slot`` just before event ``index``.

    ``sign`` is +1 (rot +1) or -1 relative to the edge's forward orientation.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not 0 <= index <= len(diagram.events):
        raise DiagramError(f"event index {index} out of range")
    slots = strands_before(diagram, index)
    if not 1 <= slot <= len(slots):
        raise DiagramError(f"no strand at slot {slot} before event {index}")
    label, rightward = strand_direction(diagram, slots[slot - 1])
    if edge is not None and label != edge:
        raise DiagramError(f"slot {slot} before event {index} lies on {label!r}, not {edge!r}")
    events = list(diagram.events)
    events[index:index] = zigzag(slot, label, (sign > 0) == rightward)
    return diagram.with_events(events)


# ---------------------------------------------------------------------------
# Cycles and invariants

FORWARD, BACKWARD = "forward", "backward"


@dataclass
class CycleTraversal:
    steps: List[Tuple[str, str]]
    up_cusps: int
    down_cusps: int
    writhe: int
    strand_directions: Dict[int, bool] = field(default_factory=dict, repr=False)

    @property
    def cusps(self) -> int:
        return self.up_cusps + self.down_cusps

    @property
    def tb(self) -> int:
        return self.writhe - self.cusps // 2

    @property
    def rot(self) -> int:
        return (self.down_cusps - self.up_cusps) // 2


def _norm_dir(d) -> bool:
    if d in (FORWARD, "f", "+", 1, True):
        return True
    if d in (BACKWARD, "b", "-", -1, False):
        return False
    raise ValueError(f"bad direction {d!r}")


def _corner(arrive: tuple, leave: tuple) -> Optional[str]:
    if arrive[1] != leave[1] or arrive[2] != leave[2]:
        return None
    if arrive[3] == leave[3]:
        raise DiagramError("cycle turns back along the same edge end")
    return "down" if arrive[3] < leave[3] else "up"


def traverse_cycle(diagram: FrontDiagram, cycle: Sequence[Tuple[str, object]]) -> CycleTraversal:
    an = analysis(diagram)
    if not cycle:
        raise DiagramError("empty cycle")
    names = [e for e, _ in cycle]
    if len(set(names)) != len(names):
        raise DiagramError("cycle repeats an edge")
    legs = []
    for e, d in cycle:
        if e not in an.arcs:
            raise DiagramError(f"edge {e!r} not in diagram")
        arc = an.arcs[e]
        if _norm_dir(d):
            legs.append((arc.tail, arc.head, arc.strands, arc.cusps))
        else:
            legs.append((arc.head, arc.tail,
                         [(s, not r) for s, r in reversed(arc.strands)],
                         ["up" if c == "down" else "down" for c in reversed(arc.cusps)]))
    up = down = 0
    directions: Dict[int, bool] = {}
    for j, (start, end, strands, cusps) in enumerate(legs):
        nxt = legs[(j + 1) % len(legs)][0]
        if _end_vertex(diagram, end) != _end_vertex(diagram, nxt):
            raise DiagramError(f"cycle is not closed after edge {cycle[j][0]!r}")
        corner = _corner(end, nxt)
        for c in cusps + ([corner] if corner else []):
            if c == "down":
                down += 1
            else:
                up += 1
        directions.update(strands)
    writhe = 0
    for _, a, b in an.crossings:
        if a in directions and b in directions:
            writhe += 1 if directions[a] == directions[b] else -1
    if (up + down) % 2:
        raise DiagramError("odd cusp count on a closed cycle")
    steps = [(e, FORWARD if _norm_dir(d) else BACKWARD) for e, d in cycle]
    return CycleTraversal(steps, up, down, writhe, directions)


def reverse_cycle(cycle):
    return [(e, BACKWARD if _norm_dir(d) else FORWARD) for e, d in reversed(cycle)]


def tb(diagram: FrontDiagram, cycle) -> int:
    return traverse_cycle(diagram, cycle).tb


def rot(diagram: FrontDiagram, cycle) -> int:
    return traverse_cycle(diagram, cycle).rot


def _require_theta(diagram: FrontDiagram) -> None:
    if len(diagram.edges) != 3 or len(diagram.vertices) != 2:
        raise DiagramError("abstract graph is not a Theta-graph")
    v1, v2 = diagram.vertex_ids
    for e in diagram.edges:
        if edge_endpoints(diagram, e) != (v1, v2):
            raise DiagramError("abstract graph is not a Theta-graph")


def theta_cycles(diagram: FrontDiagram):
    e = diagram.edges
    return [[(e[i], FORWARD), (e[(i + 1) % 3], BACKWARD)] for i in range(3)]


def theta_invariants(diagram: FrontDiagram) -> ThetaInvariants:
    """(tb, rot) of gamma_i = e_i + e_{i+1}, with e_i run from v1 to v2."""
    _require_theta(diagram)
    trav = [traverse_cycle(diagram, c) for c in theta_cycles(diagram)]
    return ThetaInvariants(tuple(t.tb for t in trav), tuple(t.rot for t in trav))


def ccw_order(diagram: FrontDiagram, vid: str) -> List[str]:
    """Edge ends at a vertex in counterclockwise order in the contact plane.

    Right-going ends bottom to top, then left-going ends bottom to top.
    """
    an = analysis(diagram)
    if vid not in an.vertex_event:
        raise DiagramError(f"vertex {vid!r} not in diagram")
    ev = diagram.events[an.vertex_event[vid]]
    return list(reversed(ev.right)) + list(reversed(ev.left))


def vertex_sign(diagram: FrontDiagram, vid: str) -> int:
    order = ccw_order(diagram, vid)
    if len(order) != 3:
        raise DiagramError(f"vertex {vid!r} is not trivalent")
    rank = {e: k for k, e in enumerate(diagram.edges)}
    if len(set(order)) != 3:
        raise DiagramError(f"vertex sign undefined at {vid!r}: loop edge")
    seq = sorted(order, key=rank.get)
    a, b, c = (order.index(x) for x in seq)
    return 1 if (b - a) % 3 == 1 else -1


def theta_key(diagram: FrontDiagram):
    from .classify import EmbeddingKey
    return EmbeddingKey(theta_invariants(diagram), vertex_sign(diagram, diagram.vertex_ids[0]))


# ---------------------------------------------------------------------------
# Symmetries and relabeling


def mirror(diagram: FrontDiagram) -> FrontDiagram:
    """Reflect the front across the x-axis (z -> -z)."""
    analysis(diagram)
    events = []
    w = 0
    for ev in diagram.events:
        if ev.kind == LCUSP:
            events.append(ev.moved(w + 2 - ev.pos))
        elif ev.kind in (RCUSP, CROSS):
            events.append(ev.moved(w - ev.pos))
        else:
            events.append(vertex(w + 2 - ev.pos - len(ev.left), ev.vertex,
                                 tuple(reversed(ev.left)), tuple(reversed(ev.right))))
        w += ev.produced - ev.consumed
    return diagram.with_events(events)


def reflect(diagram: FrontDiagram) -> FrontDiagram:
    """Reflect the front across the z-axis (x -> -x); a contactomorphism."""
    an = analysis(diagram)
    events = []
    for i in reversed(range(len(diagram.events))):
        ev = diagram.events[i]
        if ev.kind == LCUSP:
            events.append(rcusp(ev.pos))
        elif ev.kind == RCUSP:
            events.append(lcusp(ev.pos, an.strands[an.cusp_branches[i][0]].edge))
        elif ev.kind == CROSS:
            events.append(ev)
        else:
            events.append(vertex(ev.pos, ev.vertex, ev.right, ev.left))
    return diagram.with_events(events)


def relabel(diagram: FrontDiagram, edge_map: Dict[str, str] = None,
            vertex_map: Dict[str, str] = None, edge_order=None, vertex_order=None) -> FrontDiagram:
    """Rename edges/vertices, and optionally reorder the edge/vertex lists."""
    em = edge_map or {}
    vm = vertex_map or {}
    events = []
    for ev in diagram.events:
        if ev.kind == LCUSP:
            events.append(lcusp(ev.pos, em.get(ev.edge, ev.edge)))
        elif ev.kind == VERTEX:
            events.append(vertex(ev.pos, vm.get(ev.vertex, ev.vertex),
                                 [em.get(x, x) for x in ev.left], [em.get(x, x) for x in ev.right]))
        else:
            events.append(ev)
    edges = edge_order if edge_order is not None else [em.get(e, e) for e in diagram.edges]
    valence = {vm.get(v, v): n for v, n in diagram.vertices}
    vids = vertex_order if vertex_order is not None else [vm.get(v, v) for v, _ in diagram.vertices]
    return FrontDiagram(tuple(edges), tuple((v, valence[v]) for v in vids), tuple(events),
                        diagram.trusted_trivial)


def relabel_theta(diagram: FrontDiagram, aut) -> FrontDiagram:
    """Diagram of theta o phi: new e_i is old edge ``aut.perm[i]``."""
    edges = [diagram.edges[aut.perm[i]] for i in range(3)]
    vids = list(diagram.vertex_ids)
    if aut.swap_vertices:
        vids.reverse()
    return relabel(diagram, edge_order=edges, vertex_order=vids)


def ascii_render(diagram: FrontDiagram) -> str:
    """One line per event with the strand stack after it; debugging aid."""
    lines = []
    for i, ev in enumerate(diagram.events):
        labels = strand_labels(diagram, i + 1)
        lines.append(f"{i:3d} {ev.kind:6s} @{ev.pos:<3d} | " + " ".join(labels))
    return "\n".join(lines)
