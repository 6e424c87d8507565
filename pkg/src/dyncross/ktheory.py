"""Exact integer linear algebra and K-groups of the crossed product.

K0 is the cokernel and K1 the kernel of the block integer matrix of the
homomorphism delta: C0(X\\Y, G) -> C0(X, G), G = Z^r, with one r x r block
K0(alpha_x) per domain point.  Two conventions for the off-domain rows are
implemented:

  transfer -- delta(f)(x) = f(x) for x outside Delta (the matrix of
              inclusion minus transported composition); the default.
  literal  -- delta(f)(x) = 0 for x outside Delta.

The two genuinely disagree (already on the two-point chain) and every report
names the variant used.  All arithmetic is exact over Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .dynsys import PartialDynSys
from .errors import DyncrossError, MissingMatrix, RouteMismatch
from .ypairs import (DerivedSystem, YPair, ZeroSystem, ideal_system_general,
                     ideal_system_special, quotient_system)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]  # dense, row-major

    @staticmethod
    def make(data: Sequence[Sequence[int]], rows: int | None = None,
             cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(v) for v in row) for row in data)
        r = len(data) if rows is None else rows
        c = (len(data[0]) if data else 0) if cols is None else cols
        if len(data) != r or any(len(row) != c for row in data):
            raise ValueError("inconsistent matrix dimensions")
        return IntMatrix(r, c, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n))
                                     for i in range(n)))

    @staticmethod
    def zeros(r: int, c: int) -> "IntMatrix":
        return IntMatrix(r, c, tuple((0,) * c for _ in range(r)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group Z^free_rank ⊕ ⊕ Z/d_i in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")
        if any(self.torsion[i + 1] % self.torsion[i]
               for i in range(len(self.torsion) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def pretty(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


TRIVIAL_GROUP = FinAbGroup(0)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, u) with g = gcd(a, b) > 0 and s*a + u*b = g.

    When a already divides b the identity transform (s, u) = (±1, 0) is
    returned; the Smith elimination loop relies on this for termination.
    """
    if a and b % a == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    if b and a % b == 0:
        return (abs(b), 0, 1 if b > 0 else -1)
    old_r, r = a, b
    old_s, s = 1, 0
    old_u, u = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_u, u = u, old_u - q * u
    if old_r < 0:
        old_r, old_s, old_u = -old_r, -old_s, -old_u
    return (old_r, old_s, old_u)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """U·a·V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.

    Pivot choice: smallest absolute value, ties broken by (row, col) index,
    so the decomposition is deterministic.
    """
    m, n = a.rows, a.cols
    M = [list(row) for row in a.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c * row_j
        M[i] = [x + c * y for x, y in zip(M[i], M[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]

    def neg_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    def gcd_rows(t, i):
        # replace (row_t, row_i) by a unimodular combination putting
        # gcd(M[t][t], M[i][t]) at (t, t) and 0 at (i, t); a single
        # extended-gcd transform per entry keeps coefficient growth tame
        a_, b_ = M[t][t], M[i][t]
        g, s, u = _ext_gcd(a_, b_)
        p, q = a_ // g, b_ // g
        M[t], M[i] = ([s * x + u * y for x, y in zip(M[t], M[i])],
                      [-q * x + p * y for x, y in zip(M[t], M[i])])
        U[t], U[i] = ([s * x + u * y for x, y in zip(U[t], U[i])],
                      [-q * x + p * y for x, y in zip(U[t], U[i])])

    def gcd_cols(t, j):
        a_, b_ = M[t][t], M[t][j]
        g, s, u = _ext_gcd(a_, b_)
        p, q = a_ // g, b_ // g
        for row in (*M, *V):
            x, y = row[t], row[j]
            row[t], row[j] = s * x + u * y, -q * x + p * y

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(M[i][j])
                if v and (pivot is None or v < pivot[0]):
                    pivot = (v, i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        while True:
            for i in range(t + 1, m):
                if M[i][t]:
                    gcd_rows(t, i)
            if not any(M[t][j] for j in range(t + 1, n)):
                break
            # column mixing may disturb column t, except when the pivot
            # already divides the whole of row t; hence this terminates
            for j in range(t + 1, n):
                if M[t][j]:
                    gcd_cols(t, j)
            if not any(M[i][t] for i in range(t + 1, m)):
                break
        if M[t][t] < 0:
            neg_row(t)
        # enforce d_t | every remaining entry
        violation = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                          if M[i][j] % M[t][t]), None)
        if violation is not None:
            add_row(t, violation[0], 1)
            continue
        t += 1
    return SmithDecomposition(
        IntMatrix.make(M, m, n), IntMatrix.make(U, m, m), IntMatrix.make(V, n, n))


def _diagonal_invariants(M: list[list[int]], m: int, n: int) -> list[int]:
    """Nonzero Smith invariant factors of M (destructive, no transforms).

    Used on the hot path where the unimodular U, V are not needed; picks
    the first nonzero pivot instead of the smallest, which does not change
    the invariant factors once divisibility is enforced.
    """
    t = 0
    out = []
    while t < min(m, n):
        pivot = next(((i, j) for i in range(t, m) for j in range(t, n)
                      if M[i][j]), None)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            M[pi], M[t] = M[t], M[pi]
        if pj != t:
            for row in M:
                row[pj], row[t] = row[t], row[pj]
        while True:
            Mt = M[t]
            a = Mt[t]
            for i in range(t + 1, m):
                b = M[i][t]
                if b:
                    if b % a == 0:
                        q = b // a
                        M[i] = [x - q * y for x, y in zip(M[i], Mt)]
                    else:
                        g, s, u = _ext_gcd(a, b)
                        p, q = a // g, b // g
                        Mi = M[i]
                        M[t] = [s * x + u * y for x, y in zip(Mt, Mi)]
                        M[i] = [-q * x + p * y for x, y in zip(Mt, Mi)]
                        Mt = M[t]
                        a = g
            clean = True
            a = M[t][t]
            for j in range(t + 1, n):
                b = M[t][j]
                if b:
                    if b % a == 0:
                        q = b // a
                        for row in M:
                            row[j] -= q * row[t]
                    else:
                        g, s, u = _ext_gcd(a, b)
                        p, q = a // g, b // g
                        for row in M:
                            x, y = row[t], row[j]
                            row[t], row[j] = s * x + u * y, -q * x + p * y
                        a = g
                        clean = False
            if clean or not any(M[i][t] for i in range(t + 1, m)):
                break
        d = abs(M[t][t])
        violation = next((i for i in range(t + 1, m)
                          for j in range(t + 1, n) if M[i][j] % d), None)
        if violation is not None:
            M[t] = [x + y for x, y in zip(M[t], M[violation])]
            continue
        out.append(d)
        t += 1
    return out


def rank(a: IntMatrix) -> int:
    return len(_diagonal_invariants([list(r) for r in a.entries],
                                    a.rows, a.cols))


def cokernel(a: IntMatrix) -> FinAbGroup:
    """Z^rows / image(a) in invariant-factor form."""
    diag = _diagonal_invariants([list(r) for r in a.entries], a.rows, a.cols)
    return FinAbGroup(a.rows - len(diag), tuple(d for d in diag if d >= 2))


def kernel_rank(a: IntMatrix) -> int:
    """Kernels of integer matrices are free of rank cols - rank."""
    return a.cols - rank(a)


@dataclass(frozen=True)
class KZeroField:
    """Rank r of G = K0(D) = Z^r and one r x r matrix K0(alpha_x) per domain point."""

    rank: int
    matrices: tuple[tuple[str, IntMatrix], ...]

    @staticmethod
    def make(rank: int, matrices: Mapping[str, IntMatrix]) -> "KZeroField":
        for x, mat in matrices.items():
            if mat.rows != rank or mat.cols != rank:
                raise ValueError(f"matrix at {x!r} is not {rank}x{rank}")
        return KZeroField(rank, tuple(sorted(matrices.items())))

    @property
    def matrix_map(self) -> dict[str, IntMatrix]:
        return dict(self.matrices)

    def matrix_at(self, x: str) -> IntMatrix:
        m = self.matrix_map.get(x)
        if m is None:
            raise MissingMatrix(f"no K0 matrix for domain point {x!r}")
        return m


def field_for_derived(field: KZeroField, derived: DerivedSystem) -> KZeroField:
    """Transport the field along point_origin onto a derived system's domain."""
    if derived.is_zero:
        return KZeroField.make(field.rank, {})
    origin = derived.origin_map
    assert isinstance(derived.sys, PartialDynSys)
    return KZeroField.make(field.rank, {
        x: field.matrix_at(origin[x]) for x in derived.sys.domain})


def _delta_rows(sys: PartialDynSys, field: KZeroField,
                variant: str) -> tuple[list[list[int]], int, int]:
    """Raw row-major entries of the delta matrix (hot path, no IntMatrix)."""
    if variant not in ("transfer", "literal"):
        raise ValueError(f"unknown delta variant {variant!r}")
    r = field.rank
    relative = sys.relative_set_set
    cols_pts = [x for x in sys.points if x not in relative]
    col_of = {x: i for i, x in enumerate(cols_pts)}
    row_of = {x: i for i, x in enumerate(sys.points)}
    nrows, ncols = r * len(sys.points), r * len(cols_pts)
    out = [[0] * ncols for _ in range(nrows)]
    domain = sys.domain_set
    phi = sys.phi_map
    mats = field.matrix_map
    for z in sys.points:
        in_domain = z in domain
        if (in_domain or variant == "transfer") and z in col_of:
            ro, co = r * row_of[z], r * col_of[z]
            for i in range(r):
                out[ro + i][co + i] += 1
        if in_domain:
            x = phi[z]
            if x in col_of:
                mat = mats.get(z)
                if mat is None:
                    raise MissingMatrix(f"no K0 matrix for domain point {z!r}")
                ro, co = r * row_of[z], r * col_of[x]
                for i in range(r):
                    row = out[ro + i]
                    ent = mat.entries[i]
                    for j in range(r):
                        row[co + j] -= ent[j]
        if in_domain and z not in mats:
            raise MissingMatrix(f"no K0 matrix for domain point {z!r}")
    return out, nrows, ncols


def delta_matrix(sys: PartialDynSys, field: KZeroField,
                 variant: str = "transfer") -> IntMatrix:
    """The block matrix of delta: row blocks over X, column blocks over X\\Y."""
    rows, nrows, ncols = _delta_rows(sys, field, variant)
    return IntMatrix.make(rows, nrows, ncols)


def k_groups(sys: PartialDynSys | ZeroSystem, field: KZeroField,
             variant: str = "transfer") -> tuple[FinAbGroup, FinAbGroup]:
    """(K0, K1) = (cokernel, kernel) of the delta matrix; K1 is torsion free."""
    if isinstance(sys, ZeroSystem):
        return (TRIVIAL_GROUP, TRIVIAL_GROUP)
    rows, nrows, ncols = _delta_rows(sys, field, variant)
    diag = _diagonal_invariants(rows, nrows, ncols)
    rk = len(diag)
    k0 = FinAbGroup(nrows - rk, tuple(d for d in diag if d >= 2))
    return (k0, FinAbGroup(ncols - rk))


def k_groups_of_quotient(sys: PartialDynSys, field: KZeroField, p: YPair,
                         variant: str = "transfer") -> tuple[FinAbGroup, FinAbGroup]:
    derived = quotient_system(sys, p)
    return k_groups(derived.sys, field_for_derived(field, derived), variant)


def k_groups_of_ideal(sys: PartialDynSys, field: KZeroField, p: YPair,
                      variant: str = "transfer") -> tuple[FinAbGroup, FinAbGroup]:
    """K-groups of the ideal of p via the complemented-kernel restriction.

    When V' = V ∩ Y the independent restricted-system route is computed as
    well and the two results must agree; RouteMismatch is a genuine bug.
    The cross-check only applies to the transfer convention: the literal
    one is not an isomorphism invariant, and the two routes genuinely give
    different literal groups already on two points with Y = X.
    """
    general = ideal_system_general(sys, p)
    result = k_groups(general.sys, field_for_derived(field, general), variant)
    if (variant == "transfer"
            and set(p.Vprime) == set(p.V) & sys.relative_set_set):
        special = ideal_system_special(sys, p)
        other = k_groups(special.sys, field_for_derived(field, special), variant)
        if other != result:
            raise RouteMismatch(
                f"ideal K-groups disagree for pair ({p.V}, {p.Vprime}): "
                f"general {result} vs special {other}")
    return result


def euler_characteristic(sys: PartialDynSys, field: KZeroField,
                         variant: str = "transfer") -> int:
    """free_rank(K0) - free_rank(K1); equals r·|Y| by rank-nullity."""
    k0, k1 = k_groups(sys, field, variant)
    chi = k0.free_rank - k1.free_rank
    expected = field.rank * len(sys.relative_set)
    if chi != expected:
        raise DyncrossError(f"euler characteristic {chi} != r|Y| = {expected}")
    return chi
