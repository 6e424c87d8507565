"""Finite partial dynamical systems (X, phi, Delta, Y) and their freeness predicates.

Points are string labels; the canonical order everywhere is lexicographic.
X carries the discrete topology, so every subset is clopen and "empty
interior" means empty.  All values are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DanglingReference, EmptySystem, RelativeSetTooSmall


def canon(labels: Iterable[str]) -> tuple[str, ...]:
    """Sorted, deduplicated tuple of labels."""
    return tuple(sorted(set(labels)))


@dataclass(frozen=True)
class PartialDynSys:
    """A finite partial dynamical system.

    points   -- the space X
    domain   -- Delta, the subset on which the map is defined
    phi      -- the map Delta -> X, stored as sorted (x, phi(x)) pairs
    relative_set -- the closed set Y with Y ∪ phi(Delta) = X
    """

    points: tuple[str, ...]
    domain: tuple[str, ...]
    phi: tuple[tuple[str, str], ...]
    relative_set: tuple[str, ...]

    @staticmethod
    def make(points: Iterable[str], domain: Iterable[str],
             phi: Mapping[str, str], relative_set: Iterable[str]) -> "PartialDynSys":
        sys = PartialDynSys(
            points=canon(points),
            domain=canon(domain),
            phi=tuple(sorted(phi.items())),
            relative_set=canon(relative_set),
        )
        validate(sys)
        return sys

    @property
    def phi_map(self) -> dict[str, str]:
        return dict(self.phi)

    @property
    def point_set(self) -> frozenset[str]:
        return frozenset(self.points)

    @property
    def domain_set(self) -> frozenset[str]:
        return frozenset(self.domain)

    @property
    def relative_set_set(self) -> frozenset[str]:
        return frozenset(self.relative_set)

    def image(self, subset: Iterable[str] | None = None) -> frozenset[str]:
        """phi(S ∩ Delta); with no argument, phi(Delta)."""
        phi = self.phi_map
        dom = self.domain_set if subset is None else self.domain_set & set(subset)
        return frozenset(phi[x] for x in dom)

    def preimage(self, subset: Iterable[str]) -> frozenset[str]:
        """phi^{-1}(S) ⊆ Delta."""
        target = set(subset)
        return frozenset(x for x, y in self.phi if y in target)


@dataclass(frozen=True)
class Orbit:
    """Forward orbit of a point: iterates of phi while defined.

    terminal_kind is "exits_domain" when iteration halts, or "enters_cycle"
    with the cycle rotated to start at its lexicographically least point.
    """

    start: str
    path: tuple[str, ...]
    terminal_kind: str
    cycle: tuple[str, ...] = field(default=())


def validate(sys: PartialDynSys) -> None:
    """Check all structural invariants; raise a ValidationError subclass otherwise."""
    if not sys.points:
        raise EmptySystem("the point set X is empty")
    pts = sys.point_set
    for x in sys.domain:
        if x not in pts:
            raise DanglingReference(f"domain point {x!r} not in X")
    for x in sys.relative_set:
        if x not in pts:
            raise DanglingReference(f"relative-set point {x!r} not in X")
    phi = sys.phi_map
    if canon(phi) != sys.domain:
        raise DanglingReference("phi must be defined exactly on the domain")
    for x, y in sys.phi:
        if y not in pts:
            raise DanglingReference(f"phi({x!r}) = {y!r} not in X")
    if sys.relative_set_set | sys.image() != pts:
        raise RelativeSetTooSmall(
            "Y ∪ phi(Delta) must equal X; missing "
            f"{sorted(pts - (sys.relative_set_set | sys.image()))}")


def orbit(sys: PartialDynSys, start: str) -> Orbit:
    """Forward phi-iterates of start until the domain is left or a cycle is entered."""
    phi = sys.phi_map
    path = [start]
    seen = {start: 0}
    x = start
    while x in phi:
        x = phi[x]
        if x in seen:
            cycle = tuple(path[seen[x]:])
            k = cycle.index(min(cycle))
            return Orbit(start, tuple(path), "enters_cycle", cycle[k:] + cycle[:k])
        seen[x] = len(path)
        path.append(x)
    return Orbit(start, tuple(path), "exits_domain")


def periodic_points(sys: PartialDynSys) -> list[tuple[str, int]]:
    """All x with phi^n(x) = x for some n >= 1, with minimal period n."""
    phi = sys.phi_map
    out = []
    for x in sys.points:
        y = x
        for n in range(1, len(sys.points) + 1):
            if y not in phi:
                break
            y = phi[y]
            if y == x:
                out.append((x, n))
                break
    return out


def cycles(sys: PartialDynSys) -> list[tuple[str, ...]]:
    """The phi-cycles, each rotated to start at its least point, sorted."""
    per = {x for x, _ in periodic_points(sys)}
    phi = sys.phi_map
    out = []
    while per:
        x = min(per)
        cyc = [x]
        y = phi[x]
        while y != x:
            cyc.append(y)
            y = phi[y]
        per -= set(cyc)
        out.append(tuple(cyc))
    return sorted(out)


def is_topologically_free(sys: PartialDynSys) -> bool:
    """No periodic points: in a finite discrete space any non-empty set of
    periodic points has non-empty interior."""
    return not periodic_points(sys)


def is_free(sys: PartialDynSys) -> bool:
    """Identical to topological freeness for finite discrete X."""
    return is_topologically_free(sys)


def entrances(sys: PartialDynSys, cyc: tuple[str, ...]) -> list[str]:
    """Points y in Delta with y ∉ cycle and phi(y) in cycle."""
    cyc_set = set(cyc)
    return [y for y, z in sys.phi if y not in cyc_set and z in cyc_set]


def is_topologically_free_outside(sys: PartialDynSys) -> tuple[bool, list[tuple[str, ...]]]:
    """True iff every periodic orbit meets Y or has an entrance.

    Returns the verdict and the list of offending orbits (empty when true).
    """
    y_set = sys.relative_set_set
    bad = [cyc for cyc in cycles(sys)
           if not (set(cyc) & y_set) and not entrances(sys, cyc)]
    return (not bad, bad)


def is_positively_invariant(sys: PartialDynSys, subset: Iterable[str]) -> bool:
    """phi(V ∩ Delta) ⊆ V."""
    v = set(subset)
    return sys.image(v) <= v


def positive_invariant_closure(sys: PartialDynSys, subset: Iterable[str]) -> tuple[str, ...]:
    """Smallest positively invariant V containing the given set (forward saturation)."""
    v = set(subset)
    frontier = set(v)
    phi = sys.phi_map
    while frontier:
        nxt = {phi[x] for x in frontier if x in phi} - v
        v |= nxt
        frontier = nxt
    return canon(v)
