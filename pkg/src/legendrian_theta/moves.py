"""Rewriting moves on front diagrams.

Every move is a pure function returning a new diagram.  Sites are given
explicitly by event index and slot (see ``MoveSite``); ``reidemeister_sites``
lists the sites where a local move applies, which is what the fuzz tests use.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

from .frontdiagram import (
    CROSS, LCUSP, RCUSP, VERTEX, DiagramError, Event, FrontDiagram, analysis,
    cross, insert_stabilization, lcusp, rcusp, strand_labels, strands_before,
    theta_key, vertex,
)
from .halfint import HalfInt


class MoveError(DiagramError):
    """The requested move does not match the diagram at the given site."""


@dataclass(frozen=True)
class MoveSite:
    index: Optional[int] = None
    slot: Optional[int] = None
    vertex: Optional[str] = None
    k: int = 1
    edges: Optional[Tuple[str, str]] = None
    sign: int = 1
    variant: Optional[str] = None
    inverse: bool = False

    def to_json(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        if self.edges is not None:
            d["edges"] = list(self.edges)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "MoveSite":
        d = dict(d)
        if d.get("edges") is not None:
            d["edges"] = tuple(d["edges"])
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown site fields {sorted(unknown)}")
        return cls(**d)


def _replace(diagram: FrontDiagram, start: int, stop: int, new: Sequence[Event]) -> FrontDiagram:
    events = list(diagram.events)
    events[start:stop] = new
    out = diagram.with_events(events)
    analysis(out)
    return out


# ---------------------------------------------------------------------------
# Edge stabilization


def first_site_on_edge(diagram: FrontDiagram, edge: str) -> MoveSite:
    """Earliest (index, slot) where a strand of ``edge`` is present."""
    for i in range(len(diagram.events) + 1):
        labels = strand_labels(diagram, i)
        if edge in labels:
            return MoveSite(index=i, slot=labels.index(edge) + 1)
    raise MoveError(f"edge {edge!r} has no strand")


def edge_stabilize(diagram: FrontDiagram, edge: str, sign: int,
                   site: Optional[MoveSite] = None) -> FrontDiagram:
    """Insert a zigzag on ``edge``; rot of the edge (run forward) moves by ``sign``."""
    if site is None or site.index is None:
        site = first_site_on_edge(diagram, edge)
    try:
        return insert_stabilization(diagram, site.index, site.slot, sign, edge)
    except DiagramError as exc:
        raise MoveError(str(exc)) from exc


def _zigzag_at(diagram: FrontDiagram, index: int) -> Optional[int]:
    """Slot of the stabilized strand if events ``index``, ``index+1`` form a zigzag."""
    ev = diagram.events
    if index < 0 or index + 1 >= len(ev):
        return None
    a, b = ev[index], ev[index + 1]
    if a.kind != LCUSP or b.kind != RCUSP:
        return None
    if b.pos == a.pos - 1:
        return b.pos
    if b.pos == a.pos + 1 and a.pos <= len(strands_before(diagram, index)):
        return a.pos
    return None


def zigzag_sites(diagram: FrontDiagram) -> List[MoveSite]:
    analysis(diagram)
    return [MoveSite(index=i, slot=s) for i in range(len(diagram.events) - 1)
            for s in [_zigzag_at(diagram, i)] if s is not None]


def edge_destabilize(diagram: FrontDiagram, site: MoveSite) -> FrontDiagram:
    """Remove the zigzag made of events ``site.index`` and ``site.index + 1``."""
    analysis(diagram)
    if site.index is None or _zigzag_at(diagram, site.index) is None:
        raise MoveError(f"no zigzag at event {site.index}")
    return _replace(diagram, site.index, site.index + 2, [])


# ---------------------------------------------------------------------------
# V moves: an edge end rotates to the other side of its vertex


def _v_expand(variant: str, ev: Event) -> List[Event]:
    L, R, p = list(ev.left), list(ev.right), ev.pos
    k, m, vid = len(L), len(R), ev.vertex
    if variant == "rt_lb":
        if not R:
            raise MoveError("no right end to rotate")
        return ([lcusp(p + k, R[0])] + [cross(p + k - 1 - j) for j in range(k)]
                + [vertex(p + 1, vid, L + [R[0]], R[1:])])
    if variant == "rb_lt":
        if not R:
            raise MoveError("no right end to rotate")
        return ([lcusp(p, R[-1])] + [cross(p + 1 + j) for j in range(k)]
                + [vertex(p, vid, [R[-1]] + L, R[:-1])])
    if variant == "lt_rb":
        if not L:
            raise MoveError("no left end to rotate")
        return ([vertex(p + 1, vid, L[1:], R + [L[0]])] + [cross(p + j) for j in range(m)]
                + [rcusp(p + m)])
    if variant == "lb_rt":
        if not L:
            raise MoveError("no left end to rotate")
        return ([vertex(p, vid, L[:-1], [L[-1]] + R)] + [cross(p + m - j) for j in range(m)]
                + [rcusp(p)])
    raise MoveError(f"unknown V variant {variant!r}")


V_VARIANTS = ("rt_lb", "rb_lt", "lt_rb", "lb_rt")


def _v_preimage(variant: str, ev: Event) -> Optional[Event]:
    """The vertex event whose V expansion ends (or starts) with ``ev``."""
    L, R, q, vid = list(ev.left), list(ev.right), ev.pos, ev.vertex
    if variant == "rt_lb" and L:
        return vertex(q - 1, vid, L[:-1], [L[-1]] + R)
    if variant == "rb_lt" and L:
        return vertex(q, vid, L[1:], R + [L[0]])
    if variant == "lt_rb" and R:
        return vertex(q - 1, vid, [R[-1]] + L, R[:-1])
    if variant == "lb_rt" and R:
        return vertex(q, vid, L + [R[0]], R[1:])
    return None


def _match_v_inverse(diagram: FrontDiagram, variant: str, start: int):
    evs = diagram.events
    vertex_last = variant in ("rt_lb", "rb_lt")
    for j in range(start, len(evs)):
        if evs[j].kind == VERTEX:
            break
    else:
        return None
    if not vertex_last and j != start:
        return None
    pre = _v_preimage(variant, evs[j])
    if pre is None or pre.pos < 1:
        return None
    window = _v_expand(variant, pre)
    if tuple(evs[start:start + len(window)]) != tuple(window):
        return None
    return pre, len(window)


# ---------------------------------------------------------------------------
# Local Reidemeister-type moves

REIDEMEISTER_MOVES = ("I", "II", "III", "III_v", "V", "commute")


def _rI(slot: int, variant: str, label: str) -> List[Event]:
    if variant == "a":
        return [lcusp(slot + 1, label), cross(slot), rcusp(slot + 1)]
    return [lcusp(slot, label), cross(slot + 1), rcusp(slot)]


def _rII_expand(variant: str, ev: Event) -> List[Event]:
    p = ev.pos
    if variant == "r_down":
        return [cross(p + 1), cross(p), rcusp(p + 1)]
    if variant == "r_up":
        return [cross(p - 1), cross(p), rcusp(p - 1)]
    if variant == "l_down":
        return [lcusp(p + 1, ev.edge), cross(p), cross(p + 1)]
    if variant == "l_up":
        return [lcusp(p - 1, ev.edge), cross(p), cross(p - 1)]
    raise MoveError(f"unknown II variant {variant!r}")


def _rII_ok(variant: str, ev: Event, width: int) -> bool:
    if variant.startswith("r"):
        if ev.kind != RCUSP:
            return False
        return ev.pos + 2 <= width if variant == "r_down" else ev.pos >= 2
    if ev.kind != LCUSP:
        return False
    return ev.pos <= width if variant == "l_down" else ev.pos >= 2


def _rII_preimage(variant: str, window: Sequence[Event]) -> Optional[Event]:
    if len(window) != 3:
        return None
    if variant == "r_down" and window[2].kind == RCUSP:
        return rcusp(window[2].pos - 1)
    if variant == "r_up" and window[2].kind == RCUSP:
        return rcusp(window[2].pos + 1)
    if variant == "l_down" and window[0].kind == LCUSP:
        return lcusp(window[0].pos - 1, window[0].edge)
    if variant == "l_up" and window[0].kind == LCUSP:
        return lcusp(window[0].pos + 1, window[0].edge)
    return None


def _iiiv_lhs(variant: str, ev: Event, q: int) -> List[Event]:
    """A strand next to the vertex crosses all its left ends, then the vertex."""
    k = len(ev.left)
    if variant == "down":
        return [cross(q - 1 + j) for j in range(k)] + [ev.moved(q - 1)]
    return [cross(q + k - 1 - j) for j in range(k)] + [ev.moved(q + 1)]


def _iiiv_rhs(variant: str, ev: Event, q: int) -> List[Event]:
    """The vertex first, then the strand crosses all its right ends."""
    m = len(ev.right)
    if variant == "down":
        return [ev.moved(q)] + [cross(q - 1 + j) for j in range(m)]
    return [ev.moved(q)] + [cross(q + m - 1 - j) for j in range(m)]


def _disjoint_swap(a: Event, b: Event) -> Optional[Tuple[Event, Event]]:
    """Events b', a' equal to a then b when they act on separate slots."""
    if b.pos >= a.pos + a.produced:
        return b.moved(b.pos - a.produced + a.consumed), a
    if b.pos + b.consumed <= a.pos:
        return b, a.moved(a.pos + b.produced - b.consumed)
    return None


def reidemeister(diagram: FrontDiagram, move: str, site: MoveSite) -> FrontDiagram:
    """Apply a local move that preserves every cycle invariant and vertex sign.

    Forward direction builds the bigger side (or, for ``III``/``III_v``/
    ``commute``, the other side); ``site.inverse`` undoes it.  ``site.index``
    is the first event of the pattern.
    """
    analysis(diagram)
    evs = diagram.events
    i = site.index
    if i is None or not 0 <= i <= len(evs):
        raise MoveError(f"bad event index {i}")
    var = site.variant
    if move == "I":
        var = var or "a"
        if var not in ("a", "b"):
            raise MoveError(f"unknown I variant {var!r}")
        if site.inverse:
            s = evs[i].pos - 1 if var == "a" else evs[i].pos
            window = _rI(s, var, evs[i].edge) if i < len(evs) and evs[i].kind == LCUSP else None
            if window is None or tuple(evs[i:i + 3]) != tuple(window):
                raise MoveError(f"no type I loop at event {i}")
            return _replace(diagram, i, i + 3, [])
        labels = strand_labels(diagram, i)
        if site.slot is None or not 1 <= site.slot <= len(labels):
            raise MoveError(f"no strand at slot {site.slot} before event {i}")
        return _replace(diagram, i, i, _rI(site.slot, var, labels[site.slot - 1]))
    if move == "II":
        if var is None:
            raise MoveError("II needs a variant: r_down, r_up, l_down or l_up")
        if site.inverse:
            pre = _rII_preimage(var, evs[i:i + 3])
            if pre is None or pre.pos < 1 or tuple(evs[i:i + 3]) != tuple(_rII_expand(var, pre)):
                raise MoveError(f"no type II pattern {var} at event {i}")
            out = _replace(diagram, i, i + 3, [pre])
            return out
        if i >= len(evs) or not _rII_ok(var, evs[i], len(strands_before(diagram, i))):
            raise MoveError(f"type II {var} does not apply at event {i}")
        return _replace(diagram, i, i + 1, _rII_expand(var, evs[i]))
    if move == "III":
        window = evs[i:i + 3]
        if len(window) != 3 or any(e.kind != CROSS for e in window):
            raise MoveError(f"no triple crossing at event {i}")
        p, q, r = (e.pos for e in window)
        if p == r and abs(p - q) == 1:
            return _replace(diagram, i, i + 3, [cross(q), cross(p), cross(q)])
        raise MoveError(f"no triple crossing at event {i}")
    if move == "III_v":
        var = var or "down"
        if var not in ("down", "up"):
            raise MoveError(f"unknown III_v variant {var!r}")
        j = next((t for t in range(i, len(evs)) if evs[t].kind == VERTEX), None)
        if j is None:
            raise MoveError(f"no vertex at or after event {i}")
        v = evs[j]
        if site.inverse:
            rhs = _iiiv_rhs(var, v, v.pos)
            if j != i or tuple(evs[i:i + len(rhs)]) != tuple(rhs):
                raise MoveError(f"no crossings after the vertex at event {i}")
            return _replace(diagram, i, i + len(rhs), _iiiv_lhs(var, v, v.pos))
        q = v.pos + 1 if var == "down" else v.pos - 1
        lhs = _iiiv_lhs(var, v, q)
        if j - i != len(lhs) - 1 or tuple(evs[i:j + 1]) != tuple(lhs) or q < 1:
            raise MoveError(f"no crossings before the vertex at event {i}")
        return _replace(diagram, i, j + 1, _iiiv_rhs(var, v, q))
    if move == "V":
        if var not in V_VARIANTS:
            raise MoveError(f"V needs a variant in {V_VARIANTS}")
        if site.inverse:
            found = _match_v_inverse(diagram, var, i)
            if found is None:
                raise MoveError(f"no V pattern {var} at event {i}")
            pre, n = found
            return _replace(diagram, i, i + n, [pre])
        if i >= len(evs) or evs[i].kind != VERTEX:
            raise MoveError(f"no vertex at event {i}")
        return _replace(diagram, i, i + 1, _v_expand(var, evs[i]))
    if move == "commute":
        if i + 1 >= len(evs):
            raise MoveError(f"no event pair at {i}")
        swapped = _disjoint_swap(evs[i], evs[i + 1])
        if swapped is None:
            raise MoveError(f"events {i} and {i + 1} share a slot")
        return _replace(diagram, i, i + 2, list(swapped))
    raise MoveError(f"unknown move {move!r}")


def reidemeister_sites(diagram: FrontDiagram, move: str) -> List[MoveSite]:
    """Every site where ``reidemeister(diagram, move, site)`` succeeds."""
    out = []
    n = len(diagram.events)
    candidates: List[MoveSite] = []
    if move == "I":
        for i in range(n + 1):
            width = len(strands_before(diagram, i))
            for s in range(1, width + 1):
                candidates += [MoveSite(index=i, slot=s, variant=v) for v in ("a", "b")]
        candidates += [MoveSite(index=i, variant=v, inverse=True) for i in range(n) for v in ("a", "b")]
    elif move == "II":
        for i in range(n):
            for v in ("r_down", "r_up", "l_down", "l_up"):
                candidates += [MoveSite(index=i, variant=v), MoveSite(index=i, variant=v, inverse=True)]
    elif move in ("III", "commute"):
        candidates = [MoveSite(index=i) for i in range(n)]
    elif move == "III_v":
        for i in range(n):
            for v in ("down", "up"):
                candidates += [MoveSite(index=i, variant=v), MoveSite(index=i, variant=v, inverse=True)]
    elif move == "V":
        for i in range(n):
            for v in V_VARIANTS:
                candidates += [MoveSite(index=i, variant=v), MoveSite(index=i, variant=v, inverse=True)]
    else:
        raise MoveError(f"unknown move {move!r}")
    for site in candidates:
        try:
            reidemeister(diagram, move, site)
        except DiagramError:
            continue
        out.append(site)
    return out


# ---------------------------------------------------------------------------
# Vertex moves


def _vertex_index(diagram: FrontDiagram, vid: str) -> int:
    an = analysis(diagram)
    if vid not in an.vertex_event:
        raise MoveError(f"vertex {vid!r} not in diagram")
    return an.vertex_event[vid]


def normalize_vertex(diagram: FrontDiagram, vid: str) -> FrontDiagram:
    """Rotate every right-going end at ``vid`` to the left side with V moves."""
    while True:
        j = _vertex_index(diagram, vid)
        if not diagram.events[j].right:
            return diagram
        diagram = reidemeister(diagram, "V", MoveSite(index=j, variant="rt_lb"))


def rotate_vertex(diagram: FrontDiagram, vid: str) -> FrontDiagram:
    """On a normalized vertex, move the top end to the bottom (two V moves)."""
    diagram = normalize_vertex(diagram, vid)
    j = _vertex_index(diagram, vid)
    diagram = reidemeister(diagram, "V", MoveSite(index=j, variant="lt_rb"))
    return normalize_vertex(diagram, vid)


def stabilization_arcs(diagram: FrontDiagram, vid: str, k: int = 1) -> List[Tuple[str, str]]:
    """Arcs alpha_1..alpha_n of S_k(v): (in-edge, out-edge) pairs, alpha_n last.

    Ends are read top to bottom after normalizing the vertex and rotating
    it ``k - 1`` times; alpha_n joins the bottom end to the top end.
    """
    d = _prepare_vertex(diagram, vid, k)
    ends = list(d.events[_vertex_index(d, vid)].left)
    n = len(ends)
    return [(ends[i], ends[(i + 1) % n]) for i in range(n)]


def _prepare_vertex(diagram: FrontDiagram, vid: str, k: int) -> FrontDiagram:
    valence = dict(diagram.vertices).get(vid)
    if valence is None:
        raise MoveError(f"vertex {vid!r} not in diagram")
    if valence < 3:
        raise MoveError(f"vertex {vid!r} has valence {valence} < 3")
    if not 1 <= k <= valence:
        raise MoveError(f"variant k={k} outside 1..{valence}")
    d = normalize_vertex(diagram, vid)
    for _ in range(k - 1):
        d = rotate_vertex(d, vid)
    return d


def vertex_stabilize(diagram: FrontDiagram, vid: str, k: int = 1) -> FrontDiagram:
    """Vertex stabilization S_k(v): every edge end gets a half stabilization
    and the cyclic order at ``vid`` is reversed.

    The vertex is first brought to the form where all ends arrive from the
    left (top to bottom e_1..e_n); it then moves left of its edges, which
    turn back through nested right cusps.
    """
    d = _prepare_vertex(diagram, vid, k)
    j = _vertex_index(d, vid)
    ev = d.events[j]
    p, ends = ev.pos, list(ev.left)
    n = len(ends)
    new = [vertex(p, vid, (), list(reversed(ends)))] + [rcusp(p + n - 1 - t) for t in range(n)]
    return _replace(d, j, j + 1, new)


def vertex_twist(diagram: FrontDiagram, vid: str, edges: Tuple[str, str], sign: int = 1) -> FrontDiagram:
    """Transpose two cyclically adjacent edge ends at ``vid``.

    A positive twist adds one crossing between the two ends, lowering tb by
    one on each cycle through both edges.  A negative twist removes such a
    crossing next to the vertex and is the inverse of a positive twist.
    """
    if sign not in (1, -1):
        raise MoveError("twist sign must be +1 or -1")
    a, b = edges
    j = _vertex_index(diagram, vid)
    ev = diagram.events[j]
    if sign < 0:
        left = list(ev.left)
        for t in range(len(left) - 1):
            if {left[t], left[t + 1]} == {a, b} and j > 0 \
                    and diagram.events[j - 1] == cross(ev.pos + t):
                left[t], left[t + 1] = left[t + 1], left[t]
                return _replace(diagram, j - 1, j + 1, [vertex(ev.pos, vid, left, ev.right)])
        right = list(ev.right)
        for t in range(len(right) - 1):
            if {right[t], right[t + 1]} == {a, b} and j + 1 < len(diagram.events) \
                    and diagram.events[j + 1] == cross(ev.pos + t):
                right[t], right[t + 1] = right[t + 1], right[t]
                return _replace(diagram, j, j + 2, [vertex(ev.pos, vid, ev.left, right)])
        raise MoveError(f"no twist crossing between {a!r} and {b!r} at {vid!r}")
    d = normalize_vertex(diagram, vid)
    n = len(d.events[_vertex_index(d, vid)].left)
    for _ in range(n):
        j = _vertex_index(d, vid)
        ev = d.events[j]
        left = list(ev.left)
        for t in range(n - 1):
            if {left[t], left[t + 1]} == {a, b}:
                left[t], left[t + 1] = left[t + 1], left[t]
                return _replace(d, j, j + 1, [cross(ev.pos + t), vertex(ev.pos, vid, left, ())])
        d = rotate_vertex(d, vid)
    raise MoveError(f"edges {a!r} and {b!r} are not adjacent at {vid!r}")


# ---------------------------------------------------------------------------
# The G_l family


def edge_stab_connected(l, l_prime) -> bool:
    """G_l and G_l' become isotopic after edge stabilizations iff l - l' is an integer."""
    l, l_prime = HalfInt.of(l), HalfInt.of(l_prime)
    if l.doubled < -1 or l_prime.doubled < -1:
        raise ValueError("G_l needs l >= -1/2")
    return (l - l_prime).is_integer


def gl_level(diagram: FrontDiagram) -> HalfInt:
    """The l with ``diagram == build_gl(l)``; raises if there is none."""
    from .realize import build_gl
    twists = sum(1 for e in diagram.events if e.kind == CROSS)
    l = HalfInt(twists - 1)
    if twists < 0 or l.doubled < -1 or build_gl(l) != diagram:
        raise MoveError("diagram is not a G_l front")
    return l


def gl_step(diagram: FrontDiagram) -> FrontDiagram:
    """G_l -> G_{l+1/2}: a vertex stabilization at the right vertex, then an
    edge destabilization.

    The destabilization is checked at the level of keys: the vertex
    stabilized front must have the key of G_{l+1/2} stabilized once along
    some edge.  Keys are complete, so that front is returned.
    """
    from .realize import build_gl
    l = gl_level(diagram)
    right = diagram.events[-1].vertex
    stabilized = vertex_stabilize(diagram, right)
    target = build_gl(l + HalfInt(1))
    key = theta_key(stabilized)
    for e in target.edges:
        for sign in (1, -1):
            if theta_key(edge_stabilize(target, e, sign)) == key:
                return target
    raise AssertionError(f"vertex stabilization of G_{l} is not a stabilized G_(l+1/2)")


__all__ = [
    "MoveError", "MoveSite", "REIDEMEISTER_MOVES", "V_VARIANTS", "edge_destabilize",
    "edge_stab_connected", "edge_stabilize", "first_site_on_edge", "gl_level", "gl_step",
    "normalize_vertex", "reidemeister", "reidemeister_sites", "rotate_vertex",
    "stabilization_arcs", "vertex_stabilize", "vertex_twist", "zigzag_sites",
]
