"""Independent reference computations used to check the library.

Nothing here imports the invariant code under test.  The front oracle
places every event word in the plane (event i spans x in [i, i+1], the
strand in slot s sits at z = -s between events), reads cycles off as
polylines, and gets cusps from reversals of the x direction and crossings
from segment intersections, with the steeper-descending strand in front.
"""

from __future__ import annotations

import itertools
from fractions import Fraction as F


# ---------------------------------------------------------------------------
# Admissible invariants by brute force


def brute_admissible(bound, rot_range=None):
    """All (tb, rot) with -bound <= tb_i <= -1 meeting the unknot and Rot bounds."""
    rot_range = rot_range or bound + 2
    out = []
    for tb in itertools.product(range(-bound, 0), repeat=3):
        for rot in itertools.product(range(-rot_range, rot_range + 1), repeat=3):
            if all(t + abs(r) <= -1 and (t + r) % 2 == 1 for t, r in zip(tb, rot)) \
                    and -1 <= sum(rot) <= 1:
                out.append((tb, rot))
    return out


# ---------------------------------------------------------------------------
# Geometric front oracle


def _place(diagram_json):
    """Segments ((x0, z0), (x1, z1), edge) of every strand, vertex points and
    end-point records for vertex events."""
    segs = []
    slots = []  # (edge, last point)
    vertex_points = {}
    vertex_ends = {}
    for i, ev in enumerate(diagram_json["events"]):
        x0, xm, x1 = F(i), F(2 * i + 1, 2), F(i + 1)
        p = ev["pos"] - 1
        kind = ev["kind"]
        new = []
        if kind == "lcusp":
            top = [(e, (x0, F(-s))) for s, (e, _) in enumerate(slots[:p])]
            bot = [(e, (x0, F(-s))) for s, (e, _) in enumerate(slots[p:], start=p)]
            cusp = (xm, F(-(2 * p + 1), 2))
            new = [(e, pt) for e, pt in top]
            new += [(ev["edge"], cusp), (ev["edge"], cusp)]
            new += [(e, pt) for e, pt in bot]
        elif kind == "rcusp":
            cusp = (xm, F(-(2 * p + 1), 2))
            for s, (e, pt) in enumerate(slots):
                if s in (p, p + 1):
                    segs.append((pt, cusp, e))
            new = [sl for s, sl in enumerate(slots) if s not in (p, p + 1)]
        elif kind == "cross":
            new = list(slots)
            new[p], new[p + 1] = new[p + 1], new[p]
        else:
            k, m = len(ev["left"]), len(ev["right"])
            zv = F(-(2 * p + max(k, m) - 1), 2) if max(k, m) else F(-p)
            vpt = (xm, zv)
            vertex_points[ev["vertex"]] = vpt
            ends = []
            for j in range(k):
                e, pt = slots[p + j]
                segs.append((pt, vpt, e))
                ends.append(("L", j, e, pt))
            new = slots[:p] + [(e, vpt) for e in ev["right"]] + slots[p + k:]
            for j, e in enumerate(ev["right"]):
                ends.append(("R", j, e, (x1, F(-(p + j)))))
            vertex_ends[ev["vertex"]] = ends
        # every surviving strand runs to x1 at its new slot
        slots = []
        for s, (e, pt) in enumerate(new):
            end = (x1, F(-s))
            if pt != end:
                segs.append((pt, end, e))
            slots.append((e, end))
    assert not slots, "open strands at the end of the word"
    return segs, vertex_points, vertex_ends


def _edge_paths(diagram_json):
    segs, vpts, _ = _place(diagram_json)
    v1, v2 = [v["id"] for v in diagram_json["vertices"]]
    paths = {}
    for e in diagram_json["edges"]:
        adj = {}
        for a, b, lab in segs:
            if lab == e:
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
        start, goal = vpts[v1], vpts[v2]
        path, prev, cur = [start], None, start
        while cur != goal:
            nxt = [q for q in adj[cur] if q != prev]
            if cur == start:
                nxt = adj[cur][:1]
            prev, cur = cur, nxt[0]
            path.append(cur)
        paths[e] = path
    return paths


def _segments_of(path):
    return list(zip(path, path[1:]))


def _intersect(s, t):
    """Interior intersection point of two segments, if any."""
    (p1, p2), (q1, q2) = s, t
    d = (p2[0] - p1[0]) * (q2[1] - q1[1]) - (p2[1] - p1[1]) * (q2[0] - q1[0])
    if d == 0:
        return None
    u = ((q1[0] - p1[0]) * (q2[1] - q1[1]) - (q1[1] - p1[1]) * (q2[0] - q1[0])) / d
    v = ((q1[0] - p1[0]) * (p2[1] - p1[1]) - (q1[1] - p1[1]) * (p2[0] - p1[0])) / d
    if 0 < u < 1 and 0 < v < 1:
        return u, v
    return None


def _slope(seg):
    (a, b) = seg
    return (b[1] - a[1]) / (b[0] - a[0])


def oracle_cycle(diagram_json, cycle):
    """(tb, rot) of a cycle given as [(edge, forward?), ...]."""
    paths = _edge_paths(diagram_json)
    pts = []
    for e, fwd in cycle:
        p = paths[e] if fwd else list(reversed(paths[e]))
        pts.extend(p if not pts else p[1:])
    assert pts[0] == pts[-1]
    ring = pts[:-1]
    n = len(ring)
    up = down = 0
    for k in range(n):
        a, b, c = ring[k - 1], ring[k], ring[(k + 1) % n]
        if (b[0] - a[0]) * (c[0] - b[0]) < 0:
            if c[1] < a[1]:
                down += 1
            else:
                up += 1
    segs = [(ring[k], ring[(k + 1) % n]) for k in range(n)]
    writhe = 0
    for s, t in itertools.combinations(segs, 2):
        if _intersect(s, t) is None:
            continue
        ds = (s[1][0] - s[0][0], s[1][1] - s[0][1])
        dt = (t[1][0] - t[0][0], t[1][1] - t[0][1])
        over, under = (ds, dt) if _slope(s) < _slope(t) else (dt, ds)
        cr = over[0] * under[1] - over[1] * under[0]
        writhe += 1 if cr > 0 else -1
    assert (up + down) % 2 == 0
    return writhe - (up + down) // 2, (down - up) // 2


def oracle_theta(diagram_json):
    e = diagram_json["edges"]
    cycles = [[(e[i], True), (e[(i + 1) % 3], False)] for i in range(3)]
    vals = [oracle_cycle(diagram_json, c) for c in cycles]
    return tuple(t for t, _ in vals), tuple(r for _, r in vals)


def oracle_vertex_sign(diagram_json, vid):
    """Coorientation sign from the contact-plane directions of the ends.

    All ends at a front vertex share one slope, so they are told apart by
    curvature: an end drawn higher near the vertex curves upward more.  A
    right end with curvature c points along (1, c) in the (x, y) contact
    plane, a left end along (-1, -c).
    """
    import math
    _, _, ends = _place(diagram_json)
    rows = ends[vid]
    k = sum(1 for side, *_ in rows if side == "L")
    m = len(rows) - k
    dirs = []
    for side, j, e, _ in rows:
        n = k if side == "L" else m
        c = (n - 1) / 2 - j  # higher ends (small j) curve up more
        vec = (-1.0, -c) if side == "L" else (1.0, c)
        dirs.append((math.atan2(vec[1], vec[0]) % (2 * math.pi), e))
    order = [e for _, e in sorted(dirs)]
    rank = {e: i for i, e in enumerate(diagram_json["edges"])}
    pos = [order.index(e) for e in sorted(order, key=rank.get)]
    return 1 if (pos[1] - pos[0]) % 3 == 1 else -1


# ---------------------------------------------------------------------------
# Relabeling action read off diagrams


def relabel_json(diagram_json, perm, swap):
    """Diagram of theta o phi with new e_i = old e_{perm[i]}, vertices swapped if asked."""
    d = dict(diagram_json)
    d["edges"] = [diagram_json["edges"][perm[i]] for i in range(3)]
    vs = list(diagram_json["vertices"])
    d["vertices"] = list(reversed(vs)) if swap else vs
    return d
