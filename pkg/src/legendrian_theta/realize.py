"""The nondestabilizeable family G_l and realization of admissible invariants."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Tuple

from .classify import EmbeddingKey, InadmissibleError, ThetaInvariants, is_admissible
from .frontdiagram import (
    FrontDiagram, cross, insert_stabilization, mirror, relabel, theta_key, vertex,
)
from .halfint import HalfInt

EDGES = ("e1", "e2", "e3")
VERTICES = ("v1", "v2")


def build_gl(l, order=(0, 1, 2), swap_vertices: bool = False) -> FrontDiagram:
    """Front of G_l: three cusp-free arcs with 2l+1 crossings on the bottom pair.

    ``order`` lists edge indices top to bottom at the left vertex; with
    ``swap_vertices`` the left vertex is v2.
    """
    l = HalfInt.of(l)
    if l.doubled < -1:
        raise ValueError(f"G_l needs l >= -1/2, got {l}")
    top = [EDGES[i] for i in order]
    if sorted(top) != list(EDGES):
        raise ValueError(f"bad edge order {order}")
    left_v, right_v = (VERTICES[1], VERTICES[0]) if swap_vertices else VERTICES
    twists = l.doubled + 1
    events = [vertex(1, left_v, (), top)]
    events += [cross(2)] * twists
    bottom = top if twists % 2 == 0 else [top[0], top[2], top[1]]
    events.append(vertex(1, right_v, bottom, ()))
    return FrontDiagram(EDGES, tuple((v, 3) for v in VERTICES), tuple(events), True)


@dataclass(frozen=True)
class StabRecipe:
    """Build G_l, then stabilize each e_i (run v1 -> v2) ``p_i`` times
    positively and ``n_i`` times negatively.

    The counts are in the cyclically shifted labeling: final edge ``e_j``
    is built as edge ``(j - shift) mod 3``.  When ``mirrored`` is set the
    front is built with ``p_i``/``n_i`` exchanged and then mirrored, which
    produces the same net stabilization counts.
    """

    l: HalfInt
    stabs: Tuple[Tuple[int, int], ...]
    shift: int = 0
    mirrored: bool = False
    a: Tuple[int, int, int] = (0, 0, 0)
    b: Tuple[int, int, int] = (0, 0, 0)
    method: str = "lemma"

    def __post_init__(self):
        object.__setattr__(self, "l", HalfInt.of(self.l))
        object.__setattr__(self, "stabs", tuple(tuple(int(x) for x in s) for s in self.stabs))
        if self.l.doubled < -1:
            raise ValueError("recipe needs l >= -1/2")
        if len(self.stabs) != 3 or any(x < 0 for s in self.stabs for x in s):
            raise ValueError("stabilization counts must be three non-negative pairs")
        if self.shift not in (0, 1, 2):
            raise ValueError("shift must be 0, 1 or 2")

    def to_json(self) -> dict:
        return {
            "l": self.l.to_json(),
            "stabs": [list(s) for s in self.stabs],
            "shift": self.shift,
            "mirrored": self.mirrored,
            "method": self.method,
        }


@lru_cache(maxsize=None)
def _base_total_rot(doubled_l: int) -> int:
    from .frontdiagram import theta_invariants
    return theta_invariants(build_gl(HalfInt(doubled_l))).total_rot


def _lemma_counts(tb_s, rot_s, t1: HalfInt):
    """Verbatim recipe in a shifted labeling; None when it leaves l < -1/2."""
    a2 = (-1 - tb_s[0] - rot_s[0]) // 2
    b2 = (-1 - tb_s[0] + rot_s[0]) // 2
    a3 = (-1 - tb_s[2] + rot_s[2]) // 2
    b3 = (-1 - tb_s[2] - rot_s[2]) // 2
    a1, b1 = min(a2, a3), min(b2, b3)
    if t1.doubled >= -1:
        return t1, ((0, 0), (a2, b2), (a3, b3)), (a1, a2, a3), (b1, b2, b3)
    l = t1 + a1 + b1
    if l.doubled < -1:
        return None
    # e1 is stabilized against the v1 -> v2 direction here: a1 of the
    # sign that raises rot(gamma_3), b1 of the sign that raises rot(gamma_1)
    stabs = ((b1, a1), (a2 - a1, b2 - b1), (a3 - a1, b3 - b1))
    return l, stabs, (a1, a2, a3), (b1, b2, b3)


def _search_counts(tw_s, rot_s):
    """Smallest l >= -1/2 with stabilization counts reaching ``tw_s``/``rot_s``.

    Stabilizing e_i s_i times lowers tw(e_i) by s_i; with net signs d_i the
    rotation numbers move by d1 - d2, d2 - d3, d3 - d1 on gamma_1..3.
    """
    t1, t2, t3 = tw_s
    r1, _, r3 = rot_s
    l = t1
    while l.doubled < -1:
        l = l + 1
    while True:
        s1 = (l - t1).to_int()
        s2 = (-1 - l - t2).to_int()
        s3 = (-1 - l - t3).to_int()
        if min(s2, s3) < 0:
            return None
        for d1 in range(-s1, s1 + 1, 2):
            d2, d3 = d1 - r1, d1 + r3
            if abs(d2) <= s2 and abs(d3) <= s3 and (s2 - d2) % 2 == 0 and (s3 - d3) % 2 == 0:
                stabs = tuple(((s + d) // 2, (s - d) // 2) for s, d in ((s1, d1), (s2, d2), (s3, d3)))
                return l, stabs
        l = l + 1


def stab_recipe(tb, rot) -> StabRecipe:
    """Stabilization recipe realizing an admissible ``(tb, rot)`` from some G_l.

    Relabel cyclically so that e1 has the largest twisting and run the
    explicit a_i/b_i recipe.  When that recipe would need l < -1/2 the other
    maximal shifts are tried, then a direct search over l.
    """
    adm = is_admissible(tb, rot)
    if not adm:
        raise InadmissibleError("; ".join(adm.violations))
    tw = ThetaInvariants(tb, rot).tw
    best = max(tw)
    tied = [s for s in range(3) if tw[s] == best]
    found = None
    for shift in tied:
        tb_s = [tb[(i + shift) % 3] for i in range(3)]
        rot_s = [rot[(i + shift) % 3] for i in range(3)]
        res = _lemma_counts(tb_s, rot_s, tw[shift])
        if res is not None:
            found = (shift, res[0], res[1], res[2], res[3], "lemma")
            break
    if found is None:
        options = []
        for shift in range(3):
            tw_s = [tw[(i + shift) % 3] for i in range(3)]
            rot_s = [rot[(i + shift) % 3] for i in range(3)]
            res = _search_counts(tw_s, rot_s)
            if res is not None:
                options.append((res[0], shift, res[1]))
        if not options:
            raise AssertionError(f"no stabilization of any G_l reaches tb={tb} rot={rot}")
        l, shift, stabs = min(options, key=lambda o: (o[0], o[1]))
        found = (shift, l, stabs, (0, 0, 0), (0, 0, 0), "search")
    shift, l, stabs, a, b, method = found

    total = sum(rot)
    base = _base_total_rot(l.doubled)
    if abs(base) != abs(total):
        raise AssertionError(f"total rotation parity mismatch for l={l}")
    return StabRecipe(l, stabs, shift, mirrored=(base != total), a=a, b=b, method=method)


def apply_recipe(recipe: StabRecipe) -> FrontDiagram:
    d = build_gl(recipe.l)
    for i in reversed(range(3)):
        p, n = recipe.stabs[i]
        if recipe.mirrored:
            p, n = n, p
        # inserted right after the left vertex, so insert negatives first
        for _ in range(n):
            d = insert_stabilization(d, 1, i + 1, -1, EDGES[i])
        for _ in range(p):
            d = insert_stabilization(d, 1, i + 1, +1, EDGES[i])
    if recipe.mirrored:
        d = mirror(d)
    if recipe.shift:
        names = {EDGES[i]: EDGES[(i + recipe.shift) % 3] for i in range(3)}
        d = relabel(d, edge_map=names, edge_order=EDGES)
    return d


def realize_key(key: EmbeddingKey) -> FrontDiagram:
    """A front whose (tb, rot, sigma(v1)) equals ``key``."""
    if not key.is_valid():
        raise InadmissibleError(f"invalid key {key.to_json()}")
    recipe = stab_recipe(key.inv.tb, key.inv.rot)
    for r in (recipe, replace(recipe, mirrored=not recipe.mirrored)):
        d = apply_recipe(r)
        if theta_key(d) == key:
            return d
    raise AssertionError(f"no construction realizes {key.to_json()}")


def realize(tb, rot):
    """Recipe plus one front per valid key over ``(tb, rot)``."""
    from .classify import keys_for
    recipe = stab_recipe(tb, rot)
    return recipe, [realize_key(k) for k in keys_for(tb, rot)]
