"""Y-pairs, the gauge-invariant ideal lattice, and derived systems.

A Y-pair (V, V') has V positively invariant, V' ⊆ Y and V' ∪ phi(V∩Delta) = V.
These parametrize the gauge-invariant ideals; (∅,∅) is the zero ideal and
(X, Y) the whole algebra.  Derived systems realize quotients and ideals as
partial dynamical systems again; points of the complemented-kernel system
X^Y = phi(Delta) ⊔ Y are tagged "im:x" / "rel:x" so the two summands never
collide, and point_origin maps them back to X.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dynsys import PartialDynSys, canon, is_positively_invariant, validate
from .errors import NotAYPair, SpecialCaseViolated


@dataclass(frozen=True)
class YPair:
    V: tuple[str, ...]
    Vprime: tuple[str, ...]

    @staticmethod
    def make(v, vprime) -> "YPair":
        return YPair(canon(v), canon(vprime))

    def leq(self, other: "YPair") -> bool:
        return set(self.V) <= set(other.V) and set(self.Vprime) <= set(other.Vprime)


@dataclass(frozen=True)
class ZeroSystem:
    """Sentinel for a derived system with empty point set (the zero algebra)."""


ZERO = ZeroSystem()


@dataclass(frozen=True)
class DerivedSystem:
    kind: str  # quotient | ideal_general | ideal_special | complemented_kernel
    sys: PartialDynSys | ZeroSystem
    point_origin: tuple[tuple[str, str], ...]  # derived label -> origin label in X

    @property
    def origin_map(self) -> dict[str, str]:
        return dict(self.point_origin)

    @property
    def is_zero(self) -> bool:
        return isinstance(self.sys, ZeroSystem)


@dataclass(frozen=True)
class IdealLattice:
    nodes: tuple[YPair, ...]
    hasse_edges: tuple[tuple[int, int], ...]  # (lower, upper) indices into nodes


def is_Y_pair(sys: PartialDynSys, v, vprime) -> bool:
    v, vprime = set(v), set(vprime)
    if not v <= sys.point_set or not vprime <= sys.point_set:
        return False
    return (is_positively_invariant(sys, v)
            and vprime <= sys.relative_set_set
            and vprime | sys.image(v) == v)


def _subsets(items: tuple[str, ...]):
    for k in range(len(items) + 1):
        yield from combinations(items, k)


def enumerate_Y_pairs(sys: PartialDynSys) -> IdealLattice:
    """All Y-pairs, canonically ordered, with lattice order and Hasse edges.

    V runs over positively invariant sets; V' = (V \\ phi(V∩Delta)) ∪ S over
    S ⊆ V ∩ Y ∩ phi(V∩Delta), admissible iff V \\ phi(V∩Delta) ⊆ Y.
    """
    y_set = sys.relative_set_set
    pairs: list[YPair] = []
    for v in _subsets(sys.points):
        v_set = set(v)
        if not is_positively_invariant(sys, v_set):
            continue
        img = sys.image(v_set)
        forced = v_set - img
        if not forced <= y_set:
            continue
        free_part = canon(v_set & y_set & img)
        for s in _subsets(free_part):
            pairs.append(YPair.make(v_set, forced | set(s)))
    nodes = tuple(sorted(pairs, key=lambda p: (p.V, p.Vprime)))
    edges = []
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if i == j or not a.leq(b):
                continue
            if any(k not in (i, j) and a.leq(c) and c.leq(b)
                   for k, c in enumerate(nodes)):
                continue
            edges.append((i, j))
    return IdealLattice(nodes, tuple(sorted(edges)))


def _require_pair(sys: PartialDynSys, p: YPair) -> None:
    if not is_Y_pair(sys, p.V, p.Vprime):
        raise NotAYPair(f"({p.V}, {p.Vprime}) is not a Y-pair of the system")


def quotient_system(sys: PartialDynSys, p: YPair) -> DerivedSystem:
    """The system (V, phi|_{Delta∩V}; V') of the quotient by the ideal of p."""
    _require_pair(sys, p)
    if not p.V:
        return DerivedSystem("quotient", ZERO, ())
    v_set = set(p.V)
    dom = canon(v_set & sys.domain_set)
    phi = {x: sys.phi_map[x] for x in dom}
    sub = PartialDynSys.make(p.V, dom, phi, p.Vprime)
    validate(sub)
    return DerivedSystem("quotient", sub, tuple((x, x) for x in p.V))


def complemented_kernel_system(sys: PartialDynSys) -> DerivedSystem:
    """(X^Y, phi^Y): points phi(Delta) ⊔ Y, map into the first summand,
    relative set X^Y \\ phi^Y(Delta^Y)."""
    img = sys.image()
    y_set = sys.relative_set_set
    points = [f"im:{x}" for x in img] + [f"rel:{x}" for x in y_set]
    origin = [(f"im:{x}", x) for x in img] + [(f"rel:{x}", x) for x in y_set]
    dom = [f"im:{x}" for x in img & sys.domain_set] + \
          [f"rel:{x}" for x in y_set & sys.domain_set]
    phi = {d: f"im:{sys.phi_map[d.split(':', 1)[1]]}" for d in dom}
    rel = set(points) - set(phi.values())
    sub = PartialDynSys.make(points, dom, phi, rel)
    validate(sub)
    return DerivedSystem("complemented_kernel", sub, tuple(sorted(origin)))


def _restrict_to_complement(ck: PartialDynSys, w: set[str]) -> tuple:
    """Restriction of ck to U = points \\ W for a positively invariant W."""
    u = ck.point_set - w
    dom = canon(x for x in ck.domain if ck.phi_map[x] not in w)
    phi = {x: ck.phi_map[x] for x in dom}
    rel = u - set(phi.values())
    return canon(u), dom, phi, canon(rel)


def ideal_system_general(sys: PartialDynSys, p: YPair) -> DerivedSystem:
    """Restriction of (X^Y, phi^Y) to the complement of (V,V')^Y = (phi(Delta)∩V) ⊔ V'."""
    _require_pair(sys, p)
    ck = complemented_kernel_system(sys)
    assert isinstance(ck.sys, PartialDynSys)
    w = {f"im:{x}" for x in sys.image() & set(p.V)} | {f"rel:{x}" for x in p.Vprime}
    u, dom, phi, rel = _restrict_to_complement(ck.sys, w)
    if not u:
        return DerivedSystem("ideal_general", ZERO, ())
    sub = PartialDynSys.make(u, dom, phi, rel)
    validate(sub)
    origin = tuple((x, o) for x, o in ck.point_origin if x in set(u))
    return DerivedSystem("ideal_general", sub, origin)


def ideal_system_special(sys: PartialDynSys, p: YPair) -> DerivedSystem:
    """For V' = V∩Y: the restricted system (X\\V, phi|_{Delta \\ phi^{-1}(V)}; (V∪Y)∩(X\\V))."""
    _require_pair(sys, p)
    if set(p.Vprime) != set(p.V) & sys.relative_set_set:
        raise SpecialCaseViolated("special ideal route requires V' = V ∩ Y")
    v_set = set(p.V)
    u = sys.point_set - v_set
    if not u:
        return DerivedSystem("ideal_special", ZERO, ())
    dom = canon(x for x in sys.domain if sys.phi_map[x] not in v_set)
    phi = {x: sys.phi_map[x] for x in dom}
    rel = (v_set | sys.relative_set_set) & u
    sub = PartialDynSys.make(u, dom, phi, rel)
    validate(sub)
    return DerivedSystem("ideal_special", sub, tuple((x, x) for x in canon(u)))
