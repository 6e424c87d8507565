"""Shared corpora and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import combinations, product

from dyncross.dynsys import PartialDynSys
from dyncross.ktheory import IntMatrix, KZeroField

LABELS = "abcdefgh"


def subsets(items):
    for k in range(len(items) + 1):
        yield from combinations(items, k)


def all_systems(max_n: int, full_relative_only: bool = False):
    """Every system with |X| <= max_n: all domains, maps and valid relative sets.

    With full_relative_only, Y is fixed to X \\ phi(Delta).
    """
    for n in range(1, max_n + 1):
        pts = tuple(LABELS[:n])
        for dom in subsets(pts):
            for values in product(pts, repeat=len(dom)):
                phi = dict(zip(dom, values))
                img = set(phi.values())
                base_y = set(pts) - img
                if full_relative_only:
                    yield PartialDynSys.make(pts, dom, phi, base_y)
                    continue
                for extra in subsets(tuple(sorted(img))):
                    yield PartialDynSys.make(pts, dom, phi, base_y | set(extra))


def random_system(rng: random.Random, max_n: int = 8) -> PartialDynSys:
    n = rng.randint(1, max_n)
    pts = list(LABELS[:n])
    dom = [x for x in pts if rng.random() < 0.6]
    phi = {x: rng.choice(pts) for x in dom}
    img = set(phi.values())
    y = (set(pts) - img) | {x for x in img if rng.random() < 0.4}
    return PartialDynSys.make(pts, dom, phi, y)


def random_field(rng: random.Random, sys: PartialDynSys, max_rank: int = 2,
                 max_entry: int = 3) -> KZeroField:
    r = rng.randint(1, max_rank)
    mats = {x: IntMatrix.make([[rng.randint(-max_entry, max_entry)
                                for _ in range(r)] for _ in range(r)])
            for x in sys.domain}
    return KZeroField.make(r, mats)


def random_matrix(rng: random.Random, max_dim: int = 10,
                  max_entry: int = 9) -> IntMatrix:
    m, n = rng.randint(0, max_dim), rng.randint(0, max_dim)
    return IntMatrix.make([[rng.randint(-max_entry, max_entry)
                            for _ in range(n)] for _ in range(m)], m, n)


def brute_force_Y_pairs(sys: PartialDynSys):
    """All (V, V') over the full 4^|X| search space, filtered by the definition."""
    phi = sys.phi_map
    y_set = sys.relative_set_set
    dom = sys.domain_set
    out = []
    for v in subsets(sys.points):
        v_set = set(v)
        img = {phi[x] for x in v_set & dom}
        if not img <= v_set:
            continue
        for vp in subsets(sys.points):
            vp_set = set(vp)
            if vp_set <= y_set and vp_set | img == v_set:
                out.append((tuple(sorted(v_set)), tuple(sorted(vp_set))))
    return sorted(out)


def hermite_rank(a: IntMatrix) -> int:
    """Rank via integer row echelon (Euclidean row reduction only)."""
    m = [list(row) for row in a.entries]
    rows, cols = a.rows, a.cols
    rank = 0
    for col in range(cols):
        pivot = None
        for i in range(rank, rows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, rows):
            while m[i][col]:
                q = m[rank][col] // m[i][col] if m[i][col] else 0
                m[rank] = [x - q * y for x, y in zip(m[rank], m[i])]
                m[rank], m[i] = m[i], m[rank]
        rank += 1
    return rank


def brute_periodic_points(sys: PartialDynSys):
    """Direct iteration over every start point and every period up to |X|."""
    phi = sys.phi_map
    out = []
    for x in sys.points:
        for n in range(1, len(sys.points) + 1):
            y = x
            ok = True
            for _ in range(n):
                if y not in phi:
                    ok = False
                    break
                y = phi[y]
            if ok and y == x:
                out.append((x, n))
                break
    return out


def chain_system(n: int) -> PartialDynSys:
    """The minimal chain: X = {1..n}, phi(i) = i-1 on Delta = {2..n}, Y = {n}."""
    pts = [str(i) for i in range(1, n + 1)]
    return PartialDynSys.make(
        pts, pts[1:], {str(i): str(i - 1) for i in range(2, n + 1)}, [str(n)])


def chain_field(m_tuple) -> KZeroField:
    return KZeroField.make(1, {str(i + 2): IntMatrix.make([[m]])
                               for i, m in enumerate(m_tuple)})
