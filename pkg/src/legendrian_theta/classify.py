"""Admissibility, counting and the Aut(Theta) action on invariant vectors.

A topologically trivial Legendrian Theta-graph is determined by its
Thurston-Bennequin vector, rotation vector and the coorientation sign at
``v1``.  This module works purely with those keys.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

from .halfint import HalfInt

log = logging.getLogger(__name__)

Vec3 = Tuple[int, int, int]


class InadmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class ThetaInvariants:
    tb: Vec3
    rot: Vec3

    def __post_init__(self):
        object.__setattr__(self, "tb", tuple(int(t) for t in self.tb))
        object.__setattr__(self, "rot", tuple(int(r) for r in self.rot))
        if len(self.tb) != 3 or len(self.rot) != 3:
            raise ValueError("tb and rot must have three entries")

    @property
    def total_rot(self) -> int:
        return sum(self.rot)

    @property
    def tw(self) -> Tuple[HalfInt, HalfInt, HalfInt]:
        tb = self.tb
        return tuple(HalfInt(tb[i - 1] + tb[i] - tb[(i + 1) % 3]) for i in range(3))

    def as_tuple(self) -> Tuple[int, ...]:
        return self.tb + self.rot

    def to_json(self) -> dict:
        return {
            "tb": list(self.tb),
            "rot": list(self.rot),
            "Rot": self.total_rot,
            "tw": [t.to_json() for t in self.tw],
        }


def tb_from_tw(tw) -> Vec3:
    tw = [HalfInt.of(t) for t in tw]
    return tuple((tw[i] + tw[(i + 1) % 3]).to_int() for i in range(3))


@dataclass
class Admissibility:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def is_admissible(tb, rot) -> Admissibility:
    """Check the unknot bounds on every cycle and the total rotation bound."""
    violations = []
    for i, (t, r) in enumerate(zip(tb, rot), start=1):
        if t + abs(r) > -1:
            violations.append(f"tb+|rot|<=-1 fails on gamma{i}")
        if (t + r) % 2 != 1:
            violations.append(f"tb+rot odd fails on gamma{i}")
    total = sum(rot)
    if total not in (-1, 0, 1):
        violations.append(f"Rot={total} not in {{-1,0,1}}")
    return Admissibility(not violations, violations)


def count_embeddings(tb, rot) -> int:
    if not is_admissible(tb, rot):
        return 0
    return 2 if sum(rot) == 0 else 1


@dataclass(frozen=True, order=True)
class EmbeddingKey:
    inv: ThetaInvariants = field(compare=False)
    sigma1: int = field(compare=False)
    _order: tuple = field(init=False, repr=False, compare=True)

    def __post_init__(self):
        if self.sigma1 not in (1, -1):
            raise ValueError("sigma1 must be +1 or -1")
        object.__setattr__(self, "_order", (self.inv.tb, self.inv.rot, self.sigma1))

    @classmethod
    def make(cls, tb, rot, sigma1) -> "EmbeddingKey":
        return cls(ThetaInvariants(tb, rot), sigma1)

    @property
    def sigma2(self) -> int:
        return self.sigma1 - 2 * self.inv.total_rot

    def is_valid(self) -> bool:
        if not is_admissible(self.inv.tb, self.inv.rot):
            return False
        total = self.inv.total_rot
        return total == 0 or self.sigma1 == total

    def to_json(self) -> dict:
        return {"tb": list(self.inv.tb), "rot": list(self.inv.rot), "sigma1": self.sigma1}


def keys_for(tb, rot) -> List[EmbeddingKey]:
    """All valid keys over an invariant pair (two when Rot = 0, else one)."""
    if not is_admissible(tb, rot):
        return []
    total = sum(rot)
    if total == 0:
        return [EmbeddingKey.make(tb, rot, s) for s in (-1, 1)]
    return [EmbeddingKey.make(tb, rot, total)]


def _perm_sign(perm) -> int:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class AutElement:
    """Relabeling of Theta: new edge ``i`` is old edge ``perm[i]`` (0-based)."""

    swap_vertices: bool = False
    perm: Tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        if sorted(self.perm) != [0, 1, 2]:
            raise ValueError(f"not a permutation of 0..2: {self.perm}")

    @property
    def sign(self) -> int:
        return _perm_sign(self.perm)

    @property
    def is_transposition(self) -> bool:
        return sum(1 for i in range(3) if self.perm[i] != i) == 2

    def compose(self, first: "AutElement") -> "AutElement":
        """The element acting as ``first`` followed by ``self``."""
        perm = tuple(first.perm[self.perm[i]] for i in range(3))
        return AutElement(self.swap_vertices != first.swap_vertices, perm)

    def __repr__(self):
        return f"AutElement(swap={self.swap_vertices}, perm={self.perm})"


IDENTITY = AutElement()
PHI_V = AutElement(True, (0, 1, 2))
# phi_i transposes e_i and e_{i+1}
PHI = {
    1: AutElement(False, (1, 0, 2)),
    2: AutElement(False, (0, 2, 1)),
    3: AutElement(False, (2, 1, 0)),
}


def aut_group() -> List[AutElement]:
    return [AutElement(s, p) for s in (False, True) for p in itertools.permutations(range(3))]


def act_on_invariants(inv: ThetaInvariants, a: AutElement) -> ThetaInvariants:
    tb, rot = inv.tb, inv.rot
    new_tb, new_rot = [], []
    for i in range(3):
        x, y = a.perm[i], a.perm[(i + 1) % 3]
        if (x + 1) % 3 == y:
            j, s = x, 1
        else:
            j, s = y, -1
        new_tb.append(tb[j])
        new_rot.append(s * rot[j])
    if a.swap_vertices:
        new_rot = [-r for r in new_rot]
    return ThetaInvariants(tuple(new_tb), tuple(new_rot))


def apply_aut(key: EmbeddingKey, a: AutElement) -> EmbeddingKey:
    sigma = key.sigma2 if a.swap_vertices else key.sigma1
    return EmbeddingKey(act_on_invariants(key.inv, a), sigma * a.sign)


def orbit(key: EmbeddingKey) -> frozenset:
    return frozenset(apply_aut(key, a) for a in aut_group())


def canonical(key: EmbeddingKey) -> EmbeddingKey:
    return min(orbit(key))


def equivalent_up_to_relabeling(k1: EmbeddingKey, k2: EmbeddingKey) -> bool:
    return canonical(k1) == canonical(k2)


def _fixed_by_edge_transposition(inv: ThetaInvariants) -> bool:
    return any(
        act_on_invariants(inv, a) == inv
        for a in aut_group()
        if not a.swap_vertices and a.is_transposition
    )


def relabel_criterion_equivalent(k1: EmbeddingKey, k2: EmbeddingKey) -> bool:
    """Explicit relabeling criterion: some automorphism matches the invariant
    vectors and either Rot != 0, the v1 signs agree after relabeling, or an
    edge transposition fixes the target vector."""
    for a in aut_group():
        if act_on_invariants(k1.inv, a) != k2.inv:
            continue
        if k2.inv.total_rot != 0:
            return True
        if apply_aut(k1, a).sigma1 == k2.sigma1:
            return True
        if _fixed_by_edge_transposition(k2.inv):
            return True
    return False


@dataclass
class ImageCount:
    orbit_count: int
    criterion_count: int

    @property
    def discrepancy(self) -> bool:
        return self.orbit_count != self.criterion_count


def image_count_report(tb, rot) -> ImageCount:
    keys = keys_for(tb, rot)
    orbit_count = len({canonical(k) for k in keys})
    if not keys:
        criterion = 0
    elif sum(rot) != 0:
        criterion = 1
    else:
        criterion = 1 if _fixed_by_edge_transposition(ThetaInvariants(tb, rot)) else 2
    return ImageCount(orbit_count, criterion)


def count_images(tb, rot) -> int:
    """Number of embeddings over ``(tb, rot)`` up to relabeling, by orbit enumeration."""
    report = image_count_report(tb, rot)
    if report.discrepancy:
        log.warning(
            "image count for tb=%s rot=%s: orbit enumeration gives %d, "
            "transposition criterion gives %d",
            tuple(tb), tuple(rot), report.orbit_count, report.criterion_count,
        )
    return report.orbit_count


def enumerate_admissible(bound: int) -> Iterator[Tuple[Vec3, Vec3]]:
    """Admissible pairs with every tb_i >= -bound, in lexicographic order."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    tbs = range(-bound, 0)
    for tb in itertools.product(tbs, repeat=3):
        ranges = [range(-(-1 - t), (-1 - t) + 1) for t in tb]
        for rot in itertools.product(*ranges):
            if is_admissible(tb, rot):
                yield tb, rot


def parse_vec3(text: str) -> Vec3:
    parts = [p.strip().replace("−", "-") for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def key_record(key: EmbeddingKey) -> dict:
    rec = key.to_json()
    rec["canonical"] = canonical(key).to_json()
    return rec


__all__ = [
    "AutElement", "Admissibility", "EmbeddingKey", "IDENTITY", "ImageCount",
    "InadmissibleError", "PHI", "PHI_V", "ThetaInvariants", "act_on_invariants",
    "apply_aut", "aut_group", "canonical", "count_embeddings", "count_images",
    "enumerate_admissible", "equivalent_up_to_relabeling", "image_count_report",
    "is_admissible", "key_record", "keys_for", "orbit", "parse_vec3",
    "relabel_criterion_equivalent", "tb_from_tw",
]
