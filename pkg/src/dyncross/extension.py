"""The reversible Y-extension as a backward-path space.

Points of the extension are backward phi-orbits (x0, x1, ...) with
phi(x_n) = x_{n-1}: finite ones terminate in Y (the level-N set X_N), the
infinite ones form X_inf.  For finite X every infinite backward orbit is
purely periodic: any repeated coordinate is a periodic point, and once a
coordinate lies on a cycle the whole sequence does (phi maps cycles into
themselves).  The branching witness search below is therefore expected to
come back empty; it is kept as an independent check rather than an axiom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dynsys import (PartialDynSys, cycles, entrances, is_free,
                     is_topologically_free_outside)
from .errors import OutsideDomain, TransferMismatch


@dataclass(frozen=True)
class PathPoint:
    """A point of the extension space.

    kind "finite": coords = (x0, ..., xN) with xN in Y.
    kind "eventually_periodic": preperiod · cycle^inf, cycle primitive and the
    preperiod as short as possible, so equality is structural.
    """

    kind: str
    coords: tuple[str, ...] = ()
    preperiod: tuple[str, ...] = ()
    cycle: tuple[str, ...] = ()

    @staticmethod
    def finite(coords) -> "PathPoint":
        return PathPoint("finite", coords=tuple(coords))

    @staticmethod
    def periodic(preperiod, cycle) -> "PathPoint":
        pre, cyc = list(preperiod), list(cycle)
        # primitive period
        k = len(cyc)
        for p in range(1, k):
            if k % p == 0 and cyc == cyc[p:] + cyc[:p]:
                cyc = cyc[:p]
                break
        # absorb a preperiod tail that already lies on the cycle
        while pre and pre[-1] == cyc[-1]:
            pre.pop()
            cyc = [cyc[-1]] + cyc[:-1]
        return PathPoint("eventually_periodic",
                         preperiod=tuple(pre), cycle=tuple(cyc))

    def coordinate(self, n: int) -> str:
        """The n-th entry of the (possibly infinite) coordinate sequence."""
        if self.kind == "finite":
            if n >= len(self.coords):
                raise IndexError(n)
            return self.coords[n]
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.cycle[(n - len(self.preperiod)) % len(self.cycle)]

    def to_json(self) -> dict:
        if self.kind == "finite":
            return {"kind": "finite", "coords": list(self.coords)}
        return {"kind": "eventually_periodic",
                "preperiod": list(self.preperiod), "cycle": list(self.cycle)}


@dataclass(frozen=True)
class ExtensionSystem:
    base: PartialDynSys
    depth: int
    levels: tuple[tuple[PathPoint, ...], ...]  # X_0, ..., X_depth
    infinite_kind: str  # empty | finite | infinite
    infinite_points: tuple[PathPoint, ...] = ()
    branching_witness: tuple[str, ...] = field(default=())


def level_points(sys: PartialDynSys, n: int) -> list[PathPoint]:
    """X_n = paths (phi^n(y), ..., phi(y), y) over y in Y with phi^j(y) in Delta
    for 0 <= j <= n-1."""
    phi = sys.phi_map
    out = []
    for y in sys.relative_set:
        coords = [y]
        x = y
        ok = True
        for _ in range(n):
            if x not in phi:
                ok = False
                break
            x = phi[x]
            coords.append(x)
        if ok:
            out.append(PathPoint.finite(reversed(coords)))
    return sorted(out, key=lambda p: p.coords)


def _branching_witness(sys: PartialDynSys) -> tuple[str, ...] | None:
    """A point on an infinite backward orbit with two backward continuations
    that both extend to infinite orbits, if one exists (it cannot, for finite X)."""
    # greatest fixed point: x is extendable iff some Delta-preimage of x is
    extendable = set(sys.points)
    while True:
        nxt = {sys.phi_map[z] for z in sys.domain if z in extendable}
        nxt &= extendable
        if nxt == extendable:
            break
        extendable = nxt
    for x in sorted(extendable):
        pre = [z for z in sys.domain
               if sys.phi_map[z] == x and z in extendable]
        if len(pre) >= 2:
            return (x, pre[0], pre[1])
    return None


def build_extension(sys: PartialDynSys, depth: int | None = None) -> ExtensionSystem:
    """Enumerate X_0..X_depth and classify the infinite part.

    Default depth 2·|X| suffices for all periodicity and isolation decisions.
    """
    if depth is None:
        depth = 2 * len(sys.points)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    levels = tuple(tuple(level_points(sys, n)) for n in range(depth + 1))
    cycs = cycles(sys)
    if not cycs:
        return ExtensionSystem(sys, depth, levels, "empty")
    witness = _branching_witness(sys)
    if witness is not None:
        return ExtensionSystem(sys, depth, levels, "infinite",
                               branching_witness=witness)
    pts = []
    for cyc in cycs:
        # backward reading of the cycle: phi(x_{n+1}) = x_n
        back = (cyc[0],) + tuple(reversed(cyc[1:]))
        for i in range(len(back)):
            pts.append(PathPoint.periodic((), back[i:] + back[:i]))
    pts = sorted(set(pts), key=lambda p: (p.cycle, p.preperiod))
    return ExtensionSystem(sys, depth, levels, "finite", tuple(pts))


def extension_map(pt: PathPoint, sys: PartialDynSys) -> PathPoint:
    """The extended map: prepend phi(x0); defined only when x0 is in Delta."""
    x0 = pt.coordinate(0)
    if x0 not in sys.domain_set:
        raise OutsideDomain(f"first coordinate {x0!r} is outside the domain")
    y = sys.phi_map[x0]
    if pt.kind == "finite":
        return PathPoint.finite((y,) + pt.coords)
    return PathPoint.periodic((y,) + pt.preperiod, pt.cycle)


def extension_periodic_points(sys: PartialDynSys) -> list[PathPoint]:
    """One purely periodic path point per phi-cycle (minimal rotation)."""
    out = []
    for cyc in cycles(sys):
        back = (cyc[0],) + tuple(reversed(cyc[1:]))
        k = back.index(min(back))
        out.append(PathPoint.periodic((), back[k:] + back[:k]))
    return sorted(out, key=lambda p: p.cycle)


def _can_reach_relative_set(sys: PartialDynSys, start: str) -> bool:
    """Is there a backward path from start that terminates in Y?"""
    seen = {start}
    stack = [start]
    y_set = sys.relative_set_set
    while stack:
        x = stack.pop()
        if x in y_set:
            return True
        for z in sys.domain:
            if sys.phi_map[z] == x and z not in seen:
                seen.add(z)
                stack.append(z)
    return False


def extension_point_isolated(sys: PartialDynSys, pt: PathPoint) -> bool:
    """Is a purely periodic path point isolated in the extension space?

    Two independent routes are computed and compared:
    (a) bounded prefix search for another extension point sharing a prefix of
        length |X|·|cycle| + |X| (the pigeonhole bound);
    (b) the orbit criterion: isolated iff the cycle neither meets Y nor has
        an entrance.
    """
    if pt.kind != "eventually_periodic" or pt.preperiod:
        raise ValueError("isolation is decided for purely periodic points only")
    cyc = pt.cycle
    bound = len(sys.points) * len(cyc) + len(sys.points)
    by_search = True
    for n in range(bound + 1):
        x = pt.coordinate(n)
        if x in sys.relative_set_set:
            # the truncation (x0..xn) is a valid finite point sharing the prefix
            by_search = False
            break
        nxt = pt.coordinate(n + 1)
        divergent = [z for z in sys.domain
                     if sys.phi_map[z] == x and z != nxt
                     and (_can_reach_relative_set(sys, z) or _on_cycle(sys, z))]
        if divergent:
            by_search = False
            break
    forward_cycle = (cyc[0],) + tuple(reversed(cyc[1:]))
    by_criterion = (not (set(cyc) & sys.relative_set_set)
                    and not entrances(sys, forward_cycle))
    if by_search != by_criterion:
        raise TransferMismatch(
            f"isolation routes disagree on cycle {cyc}: "
            f"prefix search {by_search}, orbit criterion {by_criterion}")
    return by_search


def _on_cycle(sys: PartialDynSys, x: str) -> bool:
    return any(x in cyc for cyc in cycles(sys))


@dataclass(frozen=True)
class FreenessTransferReport:
    base_topologically_free_outside: bool
    extension_topologically_free: bool
    base_free: bool
    extension_free: bool
    counterexamples: tuple[tuple[str, ...], ...]


def check_freeness_transfer(sys: PartialDynSys) -> FreenessTransferReport:
    """Verify both directions of the freeness transfer between the base
    system and its extension; a mismatch signals a bug."""
    a, bad = is_topologically_free_outside(sys)
    periodic = extension_periodic_points(sys)
    b = all(not extension_point_isolated(sys, pt) for pt in periodic)
    c = is_free(sys)
    d = not periodic
    if a != b:
        raise TransferMismatch(
            f"topological freeness outside Y ({a}) vs extension ({b})")
    if c != d:
        raise TransferMismatch(f"freeness ({c}) vs extension freeness ({d})")
    return FreenessTransferReport(a, b, c, d, tuple(bad))
