"""Exact integer-lattice algebra for character-group computations.

Sublattices of Z^n are kept in row Hermite normal form, so two lattices
are equal exactly when their stored bases are equal.  Everything here is
plain Python integers; nothing is ever rounded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import InconsistentDiagram, NotFreeQuotient

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# small integer matrix helpers


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in range(len(a))]
    for i, row in enumerate(a):
        target = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    target[j] += x * brow[j]
    return out


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
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
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _shape(a: Sequence[Sequence[int]], ncols: int | None) -> tuple[int, int]:
    rows = len(a)
    if ncols is None:
        ncols = len(a[0]) if rows else 0
    return rows, ncols


# ---------------------------------------------------------------------------
# Smith normal form


def _round_div(a: int, b: int) -> int:
    """Nearest-integer quotient; keeps remainders at most |b|/2."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


@dataclass(frozen=True)
class SnfResult:
    """``left @ A @ right`` equals the diagonal matrix built from ``diag``."""

    left: tuple[tuple[int, ...], ...]
    diag: tuple[int, ...]
    right: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    def diagonal_matrix(self) -> Matrix:
        m, n = self.shape
        out = zeros(m, n)
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return out

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d)


def snf(a: Sequence[Sequence[int]], ncols: int | None = None) -> SnfResult:
    """Smith normal form with unimodular transforms.

    ``ncols`` is only needed for matrices with zero rows.
    """
    m, n = _shape(a, ncols)
    A = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (A, U):
            rd, rs = M[dst], M[src]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        # pivot: smallest nonzero entry of the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # move the smallest entry of row t / column t onto the diagonal
            i_min = min((i for i in range(t, m) if A[i][t]), key=lambda i: abs(A[i][t]))
            j_min = min((j for j in range(t, n) if A[t][j]), key=lambda j: abs(A[t][j]))
            if abs(A[i_min][t]) <= abs(A[t][j_min]):
                swap_rows(t, i_min)
            else:
                swap_cols(t, j_min)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -_round_div(A[i][t], p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -_round_div(A[t][j], p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            # divisibility of the trailing block by the pivot
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            for M in (A, U):
                M[t] = [-x for x in M[t]]
    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SnfResult(
        left=tuple(map(tuple, U)),
        diag=diag,
        right=tuple(map(tuple, V)),
        shape=(m, n),
    )


def unimodular_inverse(u: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix via SNF (exact)."""
    n = len(u)
    res = snf(u, n)
    if any(d != 1 for d in res.diag):
        raise ValueError("matrix is not unimodular")
    # left @ u @ right = I  =>  u^{-1} = right @ left
    return mat_mul(res.right, res.left)


# ---------------------------------------------------------------------------
# Hermite normal form (rows)


def hnf_rows(vectors: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Row-style HNF basis of the lattice spanned by ``vectors`` in Z^n.

    Pivots are positive, entries above each pivot lie in [0, pivot), and
    zero rows are dropped.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        rows = rest
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        c = next(k for k, x in enumerate(row) if x)
        for j in range(i):
            q = out[j][c] // row[c]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], row)]
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------------------
# lattices and maps


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^rank, stored by its HNF basis."""

    rank: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.rank:
                raise ValueError(f"basis vector {v} does not have length {self.rank}")
        if len(self.basis) > self.rank:
            raise ValueError("more basis vectors than the ambient rank")

    @classmethod
    def span(cls, vectors: Sequence[Sequence[int]], rank: int | None = None) -> "Lattice":
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if rank is None:
            if not vectors:
                raise ValueError("ambient rank needed for an empty generating set")
            rank = len(vectors[0])
        return cls(rank, hnf_rows(vectors, rank))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, tuple(map(tuple, identity(n))))

    @property
    def dim(self) -> int:
        """Rank of the sublattice itself."""
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        v = list(map(int, v))
        for row in self.basis:
            c = next(k for k, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def contains_lattice(self, other: "Lattice") -> bool:
        return other.rank == self.rank and all(v in self for v in other.basis)

    def to_json(self) -> dict:
        return {"ambient_rank": self.rank, "basis": matrix_to_json(self.basis)}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        return cls.span(matrix_from_json(data["basis"]), int(data["ambient_rank"]))


@dataclass(frozen=True)
class LatticeMap:
    """Z^source -> Z^target given by a target x source integer matrix."""

    source_rank: int
    target_rank: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matrix) != self.target_rank or any(len(r) != self.source_rank for r in self.matrix):
            raise ValueError("matrix shape does not match (target_rank, source_rank)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], source_rank: int | None = None) -> "LatticeMap":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if source_rank is None:
            source_rank = len(rows[0]) if rows else 0
        return cls(source_rank, len(rows), rows)

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls.from_rows(identity(n), n)

    @classmethod
    def zero(cls, source_rank: int, target_rank: int) -> "LatticeMap":
        return cls.from_rows(zeros(target_rank, source_rank), source_rank)

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(mat_vec(self.matrix, v))

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        """``self`` after ``inner``."""
        if inner.target_rank != self.source_rank:
            raise ValueError("ranks do not compose")
        if not self.source_rank or not self.target_rank:
            return LatticeMap.zero(inner.source_rank, self.target_rank)
        return LatticeMap.from_rows(mat_mul(self.matrix, inner.matrix), inner.source_rank)

    def image(self) -> Lattice:
        return Lattice.span(transpose(self.matrix, self.source_rank) if self.matrix else [], self.target_rank)

    def snf(self) -> SnfResult:
        return snf(self.matrix, self.source_rank)

    def to_json(self) -> dict:
        return {
            "source_rank": self.source_rank,
            "target_rank": self.target_rank,
            "matrix": matrix_to_json(self.matrix),
        }

    @classmethod
    def from_json(cls, data) -> "LatticeMap":
        if isinstance(data, list):
            return cls.from_rows(matrix_from_json(data))
        rows = matrix_from_json(data["matrix"])
        return cls(int(data["source_rank"]), int(data["target_rank"]), tuple(map(tuple, rows)))


def matrix_to_json(m: Sequence[Sequence[int]]) -> list[list[str]]:
    return [[str(int(x)) for x in row] for row in m]


def matrix_from_json(data) -> Matrix:
    if isinstance(data, str):
        data = json.loads(data)
    return [[int(x) for x in row] for row in data]


# ---------------------------------------------------------------------------
# operations


def saturate(lat: Lattice) -> Lattice:
    """Torsion closure {v : n v in lat for some n != 0} of ``lat`` in Z^rank."""
    if not lat.basis:
        return lat
    res = snf(lat.basis, lat.rank)
    # basis = left^{-1} D right^{-1}, so its rational row space is spanned by
    # the first k rows of right^{-1}, which sit inside a unimodular matrix.
    rinv = unimodular_inverse(res.right)
    return Lattice.span(rinv[: res.rank], lat.rank)


def saturation_index(lat: Lattice) -> int:
    """[saturate(lat) : lat], the product of the invariant factors."""
    if not lat.basis:
        return 1
    return prod(snf(lat.basis, lat.rank).invariant_factors)


def is_direct_summand(lat: Lattice) -> bool:
    sat = saturate(lat)
    return sat.contains_lattice(lat) and lat.contains_lattice(sat)


def pushout_torsion_free(p: LatticeMap, q: LatticeMap) -> tuple[Lattice, LatticeMap, LatticeMap]:
    """Free part of the pushout of ``M <-p- X -q-> C``.

    Returns ``(M1, f, g)`` with ``f: M -> M1`` and ``g: C -> M1`` such that
    ``f p = g q``; M1 is (M + C) / {p(x) - q(x)} with torsion discarded.
    """
    if p.source_rank != q.source_rank:
        raise ValueError("p and q must share a source")
    m, c, x = p.target_rank, q.target_rank, p.source_rank
    relations = [list(r) for r in p.matrix] + [[-v for v in r] for r in q.matrix]
    res = snf(relations, x)
    r = res.rank
    proj = [list(row) for row in res.left[r:]]
    for i, row in enumerate(proj):
        lead = next((v for v in row if v), 0)
        if lead < 0:
            proj[i] = [-v for v in row]
    k = m + c - r
    f = LatticeMap.from_rows([row[:m] for row in proj], m) if k else LatticeMap.zero(m, 0)
    g = LatticeMap.from_rows([row[m:] for row in proj], c) if k else LatticeMap.zero(c, 0)
    if f.compose(p).matrix != g.compose(q).matrix:  # pragma: no cover - guarded by SNF algebra
        raise AssertionError("pushout square does not commute")
    return Lattice.full(k), f, g


@dataclass(frozen=True)
class FreeQuotient:
    """B = incl(A) + section(Q) with ``projection . section = id_Q``."""

    projection: LatticeMap
    section: LatticeMap
    image_basis: tuple[tuple[int, ...], ...]


def free_quotient(incl: LatticeMap) -> FreeQuotient:
    res = incl.snf()
    if any(d not in (0, 1) for d in res.diag):
        bad = [d for d in res.diag if d not in (0, 1)]
        raise NotFreeQuotient(f"cokernel has torsion (invariant factors {bad})")
    r = res.rank
    b = incl.target_rank
    uinv = unimodular_inverse(res.left)
    proj = LatticeMap.from_rows([list(row) for row in res.left[r:]], b) if b - r else LatticeMap.zero(b, 0)
    sect_cols = [[uinv[i][j] for j in range(r, b)] for i in range(b)]
    section = LatticeMap.from_rows(sect_cols, b - r) if b else LatticeMap.zero(b - r, 0)
    image_basis = tuple(tuple(uinv[i][j] for i in range(b)) for j in range(r))
    return FreeQuotient(proj, section, image_basis)


def split_free_quotient(incl: LatticeMap) -> LatticeMap:
    """A section s: B/A -> B of the projection, for torsion-free B/A."""
    return free_quotient(incl).section


def lift_torus_map(
    restriction: LatticeMap,
    target_extension: LatticeMap,
    center: LatticeMap | None = None,
) -> LatticeMap:
    """Extend ``restriction: X(T) -> X(C)`` along ``target_extension: X(T) -> X(T')``.

    ``target_extension`` must be injective with free cokernel X(Z).  The
    returned ``psi: X(T') -> X(C)`` satisfies ``psi . target_extension =
    restriction``; on the split-off complement it agrees with ``center``
    (a map X(Z) -> X(C), zero when omitted).
    """
    if restriction.source_rank != target_extension.source_rank:
        raise InconsistentDiagram("restriction and extension have different sources")
    res = target_extension.snf()
    if any(d not in (0, 1) for d in res.diag):
        raise NotFreeQuotient("cokernel of the extension has torsion")
    a = target_extension.source_rank
    b = target_extension.target_rank
    r = res.rank
    if r != a:
        raise InconsistentDiagram("target extension is not injective")
    q = b - r
    if center is None:
        center = LatticeMap.zero(q, restriction.target_rank)
    if center.source_rank != q or center.target_rank != restriction.target_rank:
        raise InconsistentDiagram("center map has the wrong shape")
    # z = ext(a) + section(y):  a = right[:, :r] left[:r] z,  y = left[r:] z
    coord_a = mat_mul([list(row[:r]) for row in res.right], [list(row) for row in res.left[:r]])
    coord_q = [list(row) for row in res.left[r:]]
    psi = [[0] * b for _ in range(restriction.target_rank)]
    if a:
        part = mat_mul(restriction.matrix, coord_a)
        psi = [[x + y for x, y in zip(u, v)] for u, v in zip(psi, part)]
    if q:
        part = mat_mul(center.matrix, coord_q)
        psi = [[x + y for x, y in zip(u, v)] for u, v in zip(psi, part)]
    lift = LatticeMap.from_rows(psi, b) if psi else LatticeMap.zero(b, 0)
    if lift.compose(target_extension).matrix != restriction.matrix:
        raise InconsistentDiagram("no lift makes the square commute")
    if q and lift.compose(free_quotient(target_extension).section).matrix != center.matrix:
        raise InconsistentDiagram("lift disagrees with the prescribed center map")
    return lift


def cokernel_invariants(f: LatticeMap) -> tuple[int, ...]:
    """Torsion invariants followed by zeros for the free rank of coker f."""
    res = f.snf()
    tors = tuple(d for d in res.invariant_factors if d != 1)
    return tors + (0,) * (f.target_rank - res.rank)


def gcd_vector(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
