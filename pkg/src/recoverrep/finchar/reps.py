"""Matrix representations and the constructions built from them.

A ``MatrixRep`` keeps one exact matrix per group element.  Images are
expanded from generator images once, at construction, and every
construction re-verifies the homomorphism property on all
(element, generator) pairs, which implies it on all pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from ..errors import (
    BadParameters,
    DimMismatch,
    GroupMismatch,
    NotAHomomorphism,
    NotAutomorphism,
    NotEqualOnSubgroup,
    NotNormal,
)
from . import matrices as mx
from .characters import (
    ClassFunction,
    LinearCharacter,
    conj,
    induced_class_function,
    inner_product,
    irreducible_characters,
    linear_characters,
    local_index,
)
from .cyclotomic import Cyclotomic, totient
from .groups import FiniteGroup, heisenberg_group

ALL_PAIRS_LIMIT = 200


class MatrixRep:
    """A homomorphism from a finite group to GL_n over a cyclotomic field."""

    def __init__(self, group: FiniteGroup, images: Sequence, name: str = "rep", check: bool = True):
        if len(images) != group.order:
            raise ValueError(f"need {group.order} images, got {len(images)}")
        images = tuple(mx.freeze(m) for m in images)
        n = len(images[0])
        for m in images:
            if len(m) != n or any(len(r) != n for r in m):
                raise DimMismatch("representation matrices must all be square of one size")
        self.group = group
        self.dim = n
        self.images = images
        self.name = name
        if check:
            self.verify()
        self._character = ClassFunction(group, [mx.trace(images[g]) for g in group.class_reps])

    @classmethod
    def from_generators(
        cls, group: FiniteGroup, gen_images: Sequence | Mapping, name: str = "rep"
    ) -> "MatrixRep":
        """Expand images along the Cayley graph, then verify every relation."""
        if isinstance(gen_images, Mapping):
            imgs = {group.element(k): mx.freeze(v) for k, v in gen_images.items()}
        else:
            if len(gen_images) != len(group.generators):
                raise ValueError(f"{group.name} has {len(group.generators)} generators")
            imgs = {g: mx.freeze(v) for g, v in zip(group.generators, gen_images)}
        missing = [group.generator_names[i] for i, g in enumerate(group.generators) if g not in imgs]
        if missing:
            raise ValueError(f"missing images for generators {missing}")
        n = len(next(iter(imgs.values()))) if imgs else 1
        images: list = [None] * group.order
        images[group.identity] = mx.identity(n)
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in group.generators:
                    y = group.table[x][s]
                    if images[y] is None:
                        images[y] = mx.mul(images[x], imgs[s])
                        nxt.append(y)
            frontier = nxt
        rep = cls(group, images, name=name)
        for s, m in imgs.items():
            if not mx.equal(rep.images[s], m):
                raise NotAHomomorphism(f"image of {group.labels[s]} is inconsistent with the relations")
        return rep

    # checks --------------------------------------------------------------------

    def verify(self) -> None:
        g, im = self.group, self.images
        if not mx.equal(im[g.identity], mx.identity(self.dim)):
            raise NotAHomomorphism("identity does not map to the identity matrix")
        for x in range(g.order):
            for s in g.generators:
                if not mx.equal(im[g.table[x][s]], mx.mul(im[x], im[s])):
                    raise NotAHomomorphism(
                        f"rho({g.labels[x]} * {g.labels[s]}) != rho({g.labels[x]}) rho({g.labels[s]})"
                    )

    def verify_all_pairs(self) -> int:
        """Check rho(xy) = rho(x) rho(y) for every pair; returns the number of pairs."""
        g, im = self.group, self.images
        for x in range(g.order):
            for y in range(g.order):
                if not mx.equal(im[g.table[x][y]], mx.mul(im[x], im[y])):
                    raise NotAHomomorphism(f"fails at ({g.labels[x]}, {g.labels[y]})")
        return g.order ** 2

    # access ----------------------------------------------------------------------

    def __call__(self, g: int):
        return self.images[g]

    def character(self) -> ClassFunction:
        return self._character

    def is_irreducible(self) -> bool:
        return self._character.norm() == 1

    def generator_images(self) -> dict[str, mx.Matrix]:
        return {name: self.images[g] for name, g in zip(self.group.generator_names, self.group.generators)}

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "dim": self.dim,
            "generators": {k: mx.format_matrix(v) for k, v in self.generator_images().items()},
        }

    def __repr__(self):
        return f"MatrixRep({self.name} of {self.group.name}, dim={self.dim})"

    # constructions -----------------------------------------------------------------

    def restrict(self, sub: FiniteGroup) -> "MatrixRep":
        if sub.parent is not self.group:
            raise GroupMismatch(f"{sub.name} is not a subgroup of {self.group.name}")
        return MatrixRep(sub, [self.images[p] for p in sub.embedding], f"{self.name}|{sub.name}")

    def twist(self, eta: LinearCharacter) -> "MatrixRep":
        if eta.group is not self.group:
            raise GroupMismatch("twisting character lives on another group")
        return MatrixRep(
            self.group,
            [mx.scale(eta(g), m) for g, m in enumerate(self.images)],
            f"{self.name}*eta",
        )

    def tensor(self, other: "MatrixRep") -> "MatrixRep":
        _same_group(self, other)
        return MatrixRep(self.group, [mx.kron(a, b) for a, b in zip(self.images, other.images)],
                         f"{self.name}(x){other.name}")

    def direct_sum(self, other: "MatrixRep") -> "MatrixRep":
        _same_group(self, other)
        return MatrixRep(self.group, [mx.block_diagonal([a, b]) for a, b in zip(self.images, other.images)],
                         f"{self.name}+{other.name}")

    def conjugate_by(self, d: Sequence[Sequence]) -> "MatrixRep":
        """g -> D rho(g) D^-1."""
        d = mx.freeze(d)
        dinv = mx.inverse(d)
        return MatrixRep(self.group, [mx.mul(mx.mul(d, m), dinv) for m in self.images], f"D{self.name}D^-1")


def _same_group(a: MatrixRep, b: MatrixRep) -> None:
    if a.group is not b.group:
        raise GroupMismatch(f"representations of {a.group.name} and {b.group.name}")


def _as_character(x) -> ClassFunction:
    return x.character() if isinstance(x, MatrixRep) else x


# ---------------------------------------------------------------------------
# standard representations


def trivial_rep(group: FiniteGroup) -> MatrixRep:
    return MatrixRep(group, [((1,),)] * group.order, "triv", check=False)


def linear_rep(eta: LinearCharacter) -> MatrixRep:
    return MatrixRep(eta.group, [((eta(g),),) for g in range(eta.group.order)], "lin")


def regular_rep(group: FiniteGroup) -> MatrixRep:
    n = group.order
    images = []
    for g in range(n):
        row = group.table[g]
        m = [[0] * n for _ in range(n)]
        for x in range(n):
            m[row[x]][x] = 1
        images.append(m)
    return MatrixRep(group, images, "reg")


def _require_points(group: FiniteGroup):
    if group.permutations is None:
        raise ValueError(f"{group.name} has no permutation action (use sym:n, alt:n, dihedral:n or cyclic:n)")
    return group.permutations


def permutation_rep(group: FiniteGroup) -> MatrixRep:
    perms = _require_points(group)
    n = len(perms[0])
    images = []
    for p in perms:
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[p[i]][i] = 1
        images.append(m)
    return MatrixRep(group, images, "perm")


def standard_rep(group: FiniteGroup) -> MatrixRep:
    """The permutation action on the sum-zero hyperplane, in the basis e_i - e_n."""
    perms = _require_points(group)
    n = len(perms[0])
    if n < 2:
        raise ValueError("standard representation needs at least two points")
    images = []
    for p in perms:
        m = [[0] * (n - 1) for _ in range(n - 1)]
        for i in range(n - 1):
            # a sum-zero vector is determined by its first n-1 coordinates
            a, b = p[i], p[n - 1]
            if a < n - 1:
                m[a][i] += 1
            if b < n - 1:
                m[b][i] -= 1
        images.append(m)
    return MatrixRep(group, images, "std")


def sign_rep(group: FiniteGroup) -> MatrixRep:
    from .groups import _sign

    perms = _require_points(group)
    return MatrixRep(group, [((_sign(p),),) for p in perms], "sign")


def heisenberg_rep(n: int, a: int, group: FiniteGroup | None = None) -> MatrixRep:
    """rho_a: A e_i = xi^((i-1)a) e_i, B e_i = e_(i+1), C = xi^a, xi = exp(2 pi i/n)."""
    if gcd(a, n) != 1:
        raise BadParameters(f"a = {a} is not coprime to n = {n}")
    if group is None:
        group = heisenberg_group(n)
    elif group.name != f"heisenberg:{n}":
        raise GroupMismatch(f"{group.name} is not heisenberg:{n}")
    xi = [Cyclotomic.zeta(n, k) for k in range(n)]
    img_a = mx.diagonal([xi[(i * a) % n] for i in range(n)])
    img_b = mx.freeze([[int(i == (j + 1) % n) for j in range(n)] for i in range(n)])
    img_c = mx.scalar(xi[a % n], n)
    return MatrixRep.from_generators(group, {"A": img_a, "B": img_b, "C": img_c}, name=f"rho_{a % n}")


def verify_heisenberg_relations(group: FiniteGroup) -> dict[str, bool]:
    """A^n = B^n = C^n = 1, AC = CA, BC = CB, AB = CBA."""
    n = round(group.order ** (1 / 3))
    e = group.identity
    A, B, C = (group.element(x) for x in "ABC")
    w = group.word
    return {
        "A^n=1": group.power(A, n) == e,
        "B^n=1": group.power(B, n) == e,
        "C^n=1": group.power(C, n) == e,
        "AC=CA": w("AC") == w("CA"),
        "BC=CB": w("BC") == w("CB"),
        "AB=CBA": w("AB") == w("CBA"),
        "order=n^3": group.order == n ** 3,
    }


# ---------------------------------------------------------------------------
# character comparisons


def character(rep: MatrixRep) -> ClassFunction:
    return rep.character()


def kth_power_equal(chi1, chi2, k: int) -> bool:
    """chi1(g)^k == chi2(g)^k on every class."""
    chi1, chi2 = _as_character(chi1), _as_character(chi2)
    if chi1.group is not chi2.group:
        raise GroupMismatch("characters live on different groups")
    if k < 1:
        raise ValueError("k must be a positive integer")
    for a, b in zip(chi1.values, chi2.values):
        if a ** k != b ** k:
            return False
    for a, b in zip(chi1.values, chi2.values):
        if a and b:
            ratio = Cyclotomic.coerce(a) / Cyclotomic.coerce(b)
            if ratio ** k != 1:
                raise AssertionError("equal k-th powers whose ratio is not a k-th root of unity")
    return True


def twist_search(rep1, rep2) -> LinearCharacter | None:
    """A linear character eta with chi2 = chi1 * eta, or None after trying all of G/[G,G]."""
    chi1, chi2 = _as_character(rep1), _as_character(rep2)
    if chi1.group is not chi2.group:
        raise GroupMismatch("representations live on different groups")
    if chi1.degree != chi2.degree:
        raise DimMismatch(f"dimensions {chi1.degree} and {chi2.degree} differ")
    for eta in linear_characters(chi1.group):
        if chi1 * eta.class_function() == chi2:
            return eta
    return None


def commutant_dimension(rep: MatrixRep) -> int:
    """dim of {X : X rho(s) = rho(s) X for all generators s}, over the field of definition."""
    gens = [rep(s) for s in rep.group.generators]
    m = 1
    for img in gens:
        for row in img:
            for x in row:
                if isinstance(x, Cyclotomic):
                    m = lcm(m, x.m)
    phi = totient(m)
    n = rep.dim
    basis = [Cyclotomic.zeta(m, b) if m > 1 else 1 for b in range(phi)]
    columns = []
    for p in range(n):
        for q in range(n):
            for zb in basis:
                col = []
                for img in gens:
                    for i in range(n):
                        for j in range(n):
                            # (zb E_pq img - img zb E_pq)_ij
                            v = 0
                            if i == p and img[q][j]:
                                v = v + zb * img[q][j]
                            if j == q and img[i][p]:
                                v = v - img[i][p] * zb
                            col.extend(_coords(v, m))
                columns.append(col)
    rank = _rank_columns(columns)
    return (n * n * phi - rank) // phi


def _coords(v, m: int) -> list:
    if isinstance(v, Cyclotomic):
        v = v.lift(lcm(v.m, m)) if v.m != m else v
        return list(v.coeffs)
    return [v] + [0] * (totient(m) - 1)


def _rank_columns(columns: list[list]) -> int:
    rows = [list(map(Fraction, c)) for c in columns]  # rank is transpose invariant
    rank = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        piv = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# subgroups, conjugation, Clifford theory


def subgroup_of(group: FiniteGroup, elems: Iterable[int] | FiniteGroup, name: str | None = None) -> FiniteGroup:
    """The (cached) subgroup object for a set of parent elements."""
    if isinstance(elems, FiniteGroup):
        if elems.parent is not group:
            raise GroupMismatch(f"{elems.name} is not a subgroup of {group.name}")
        return elems
    key = frozenset(elems)
    return group.cached(("subgroup", key), lambda: group.subgroup(key, name))


def conjugate_class_function(eta: ClassFunction, g: int) -> ClassFunction:
    """(g . eta)(n) = eta(g^-1 n g) for eta on a normal subgroup."""
    sub = eta.group
    parent = sub.parent
    local = local_index(sub)
    ginv = parent.inverses[g]
    return ClassFunction(sub, [eta(local[parent.conj(ginv, sub.embedding[n])]) for n in sub.class_reps])


def quotient_group(group: FiniteGroup, normal: FiniteGroup) -> tuple[FiniteGroup, list[int], list[int]]:
    """(G/N, coset representatives, coset index of each element)."""
    reps, index = group.left_cosets(normal.embedding)
    table = [[index[group.table[a][b]] for b in reps] for a in reps]
    labels = [f"{group.labels[r]}N" if r != group.identity else "N" for r in reps]
    return FiniteGroup(table, labels, name=f"{group.name}/{normal.name}"), reps, index


@dataclass(frozen=True)
class CliffordDecomposition:
    subgroup: FiniteGroup
    constituents: tuple[ClassFunction, ...]
    multiplicities: tuple[int, ...]
    quotient: FiniteGroup
    coset_reps: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def multiplicity_one(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    def fixed_sets(self) -> dict[int, frozenset[int]]:
        return fixed_sets(self.action)

    def summary(self) -> dict:
        sub = self.subgroup
        return {
            "subgroup_order": sub.order,
            "constituents": [
                {"degree": int(c.degree), "multiplicity": m, "values": [str(v) for v in c.values]}
                for c, m in zip(self.constituents, self.multiplicities)
            ],
            "multiplicity_one": self.multiplicity_one,
            "action": {self.quotient.labels[phi]: list(p) for phi, p in enumerate(self.action)},
            "fixed_sets": {self.quotient.labels[phi]: sorted(s) for phi, s in self.fixed_sets().items()},
        }


def clifford_decompose(rep, normal: Iterable[int] | FiniteGroup) -> CliffordDecomposition:
    """Isotypic decomposition of rep|N and the permutation action of G/N on it."""
    chi = _as_character(rep)
    group = chi.group
    sub = subgroup_of(group, normal)
    if not group.is_normal(sub.embedding):
        raise NotNormal(f"{sub.name} is not normal in {group.name}")
    res = chi.restrict(sub)
    constituents, mults = [], []
    for eta in irreducible_characters(sub):
        c = inner_product(res, eta)
        if c:
            if c.denominator != 1 or c < 0:
                raise ValueError("restriction is not a character")
            constituents.append(eta)
            mults.append(int(c))
    if sum(m * int(e.degree) for e, m in zip(constituents, mults)) != chi.degree:
        raise AssertionError("constituent dimensions do not add up")
    quotient, reps, _ = quotient_group(group, sub)
    action = []
    for g in reps:
        perm = []
        for eta in constituents:
            moved = conjugate_class_function(eta, g)
            j = next((j for j, x in enumerate(constituents) if x == moved), None)
            if j is None:
                raise AssertionError("conjugation left the set of constituents")
            perm.append(j)
        action.append(tuple(perm))
    for a in range(quotient.order):
        for b in range(quotient.order):
            ab = quotient.table[a][b]
            if action[ab] != tuple(action[a][i] for i in action[b]):
                raise AssertionError("G/N action on constituents is not a homomorphism")
    for phi, perm in enumerate(action):
        for i, j in enumerate(perm):
            if mults[i] != mults[j]:
                raise AssertionError("conjugate constituents have different multiplicities")
    return CliffordDecomposition(sub, tuple(constituents), tuple(mults), quotient, tuple(reps), tuple(action))


def fixed_sets(action) -> dict[int, frozenset[int]]:
    """phi -> {i : phi(i) = i} for a permutation action given as a list of tuples."""
    if isinstance(action, CliffordDecomposition):
        action = action.action
    return {phi: frozenset(i for i, j in enumerate(perm) if i == j) for phi, perm in enumerate(action)}


def compare_fixed_sets(d1: CliffordDecomposition, d2: CliffordDecomposition) -> dict:
    """Match the constituent sets up to a linear character of N, then compare S_1 and S_2.

    Returns ``{"aligned", "twist", "mapping", "equal"}`` where ``mapping[j]``
    is the index in ``d1`` of constituent ``j`` of ``d2`` times ``twist``.
    """
    if d1.subgroup is not d2.subgroup:
        raise GroupMismatch("decompositions are over different subgroups")
    if d1.coset_reps != d2.coset_reps:
        raise AssertionError("coset representatives differ")
    for chi in linear_characters(d1.subgroup):
        cf = chi.class_function()
        mapping = []
        for eta in d2.constituents:
            moved = eta * cf
            j = next((j for j, x in enumerate(d1.constituents) if x == moved), None)
            if j is None:
                break
            mapping.append(j)
        if len(mapping) == len(d2.constituents) and sorted(mapping) == list(range(len(d1.constituents))):
            s1, s2 = d1.fixed_sets(), d2.fixed_sets()
            equal = all(s1[phi] == frozenset(mapping[i] for i in s2[phi]) for phi in s1)
            return {"aligned": True, "twist": chi, "mapping": mapping, "equal": equal}
    return {"aligned": False, "twist": None, "mapping": None, "equal": False}


# ---------------------------------------------------------------------------
# induction


def induce(rep: MatrixRep, check: bool = True) -> MatrixRep:
    """Block-monomial induced representation from a subgroup to its parent.

    With left coset representatives t_i, g t_j = t_i h places rho(h) in
    block (i, j).  The result's character is checked against the
    Frobenius formula.
    """
    sub = rep.group
    group = sub.parent
    if group is None:
        raise GroupMismatch(f"{sub.name} is not a subgroup")
    local = local_index(sub)
    reps, index = group.left_cosets(sub.embedding)
    k, d = len(reps), rep.dim
    t, inv = group.table, group.inverses
    images = []
    for g in range(group.order):
        m = [[0] * (k * d) for _ in range(k * d)]
        for j, tj in enumerate(reps):
            x = t[g][tj]
            i = index[x]
            h = local[t[inv[reps[i]]][x]]
            block = rep(h)
            for a in range(d):
                for b in range(d):
                    m[i * d + a][j * d + b] = block[a][b]
        images.append(m)
    out = MatrixRep(group, images, f"Ind({rep.name})", check=check)
    if out.character() != induced_class_function(sub, rep.character()):
        raise AssertionError("induced representation disagrees with the Frobenius formula")
    return out


# ---------------------------------------------------------------------------
# pre-Asai (twisted tensor) representations


def check_automorphism(group: FiniteGroup, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(x) for x in alpha)
    if sorted(alpha) != list(range(group.order)):
        raise NotAutomorphism("map is not a bijection of the group")
    if alpha[group.identity] != group.identity:
        raise NotAutomorphism("map does not fix the identity")
    t = group.table
    for a in range(group.order):
        for s in group.generators:
            if alpha[t[a][s]] != t[alpha[a]][alpha[s]]:
                raise NotAutomorphism(f"map is not multiplicative at ({group.labels[a]}, {group.labels[s]})")
    return alpha


def conjugation_automorphisms(group: FiniteGroup, normal: FiniteGroup, lifts: Sequence[int]) -> list[tuple[int, ...]]:
    """sigma -> g sigma g^-1 on N, one map per lift g."""
    if not group.is_normal(normal.embedding):
        raise NotNormal(f"{normal.name} is not normal in {group.name}")
    local = local_index(normal)
    return [tuple(local[group.conj(g, p)] for p in normal.embedding) for g in lifts]


def asai_character(chi: ClassFunction, automorphisms: Sequence[Sequence[int]]) -> ClassFunction:
    """sigma -> product over alpha of chi(alpha(sigma))."""
    group = chi.group

    def value(sigma):
        out = 1
        for alpha in automorphisms:
            out = out * chi(alpha[sigma])
        return out

    return ClassFunction.from_function(group, value)


def pre_asai(rep: MatrixRep, automorphisms: Sequence[Sequence[int]]) -> MatrixRep:
    """sigma -> tensor product over alpha of rho(alpha(sigma))."""
    group = rep.group
    autos = [check_automorphism(group, a) for a in automorphisms]
    if not autos:
        raise ValueError("need at least one automorphism")
    images = []
    for sigma in range(group.order):
        m = rep(autos[0][sigma])
        for alpha in autos[1:]:
            m = mx.kron(m, rep(alpha[sigma]))
        images.append(m)
    out = MatrixRep(group, images, f"As({rep.name})")
    if out.character() != asai_character(rep.character(), autos):
        raise AssertionError("pre-Asai character disagrees with the product formula")
    return out


# ---------------------------------------------------------------------------
# the twist cocycle


@dataclass(frozen=True)
class TwistCocycle:
    values: tuple[mx.Matrix, ...]
    subgroup: FiniteGroup
    pairs_checked: int
    all_scalar: bool
    all_diagonal: bool

    def __call__(self, g: int) -> mx.Matrix:
        return self.values[g]


def twist_cocycle(rep1: MatrixRep, rep2: MatrixRep, normal: Iterable[int] | FiniteGroup) -> TwistCocycle:
    """T(s) = rho1(s)^-1 rho2(s) for reps agreeing on a normal subgroup N.

    Verifies T(st) = rho1(t)^-1 T(s) rho1(t) T(t) for all pairs when
    |G| <= 200 (for t running over generators above that, which implies
    the rest by induction on word length), and that each T(s) commutes
    with rho1(N).
    """
    _same_group(rep1, rep2)
    if rep1.dim != rep2.dim:
        raise DimMismatch(f"dimensions {rep1.dim} and {rep2.dim} differ")
    group = rep1.group
    sub = subgroup_of(group, normal)
    if not group.is_normal(sub.embedding):
        raise NotNormal(f"{sub.name} is not normal in {group.name}")
    for p in sub.embedding:
        if not mx.equal(rep1(p), rep2(p)):
            raise NotEqualOnSubgroup(f"representations differ at {group.labels[p]}")
    inv, t = group.inverses, group.table
    values = tuple(mx.mul(rep1(inv[s]), rep2(s)) for s in range(group.order))
    taus = range(group.order) if group.order <= ALL_PAIRS_LIMIT else group.generators
    pairs = 0
    for s in range(group.order):
        for tau in taus:
            rhs = mx.mul(mx.mul(rep1(inv[tau]), values[s]), mx.mul(rep1(tau), values[tau]))
            if not mx.equal(values[t[s][tau]], rhs):
                raise AssertionError("cocycle identity fails")
            pairs += 1
    for s in range(group.order):
        for n in sub.generators:
            r = rep1(sub.embedding[n])
            if not mx.equal(mx.mul(values[s], r), mx.mul(r, values[s])):
                raise AssertionError("cocycle value is not in the commutant of rho(N)")
    return TwistCocycle(
        values,
        sub,
        pairs,
        all(mx.is_scalar(v) for v in values),
        all(mx.is_diagonal(v) for v in values),
    )


# ---------------------------------------------------------------------------
# invariance and extension of linear characters


@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    quotient_cyclic: bool
    extension: LinearCharacter | None


def invariant_character_check(chi: LinearCharacter) -> InvarianceResult:
    """Is chi on a normal subgroup H fixed by conjugation from G = H.parent?

    When it is and G/H is cyclic, an extension to G is built by choosing a
    root of chi(g^d) for a generator g of G/H and verified.
    """
    sub = chi.group
    group = sub.parent
    if group is None:
        raise GroupMismatch(f"{sub.name} is not a subgroup")
    if not group.is_normal(sub.embedding):
        raise NotNormal(f"{sub.name} is not normal in {group.name}")
    local = local_index(sub)
    quotient, reps, index = quotient_group(group, sub)
    invariant = all(
        chi.exps[local[group.conj(group.inverses[g], p)]] == chi.exps[h]
        for g in reps
        for h, p in enumerate(sub.embedding)
    )
    d = quotient.order
    gen = next((q for q in range(d) if quotient.element_order(q) == d), None)
    cyclic = gen is not None
    if not (invariant and cyclic):
        return InvarianceResult(invariant, cyclic, None)
    g = reps[gen]
    e = chi.modulus
    k = chi.exps[local[group.power(g, d)]]
    big = e * d
    # coset of g^j -> j, and x = h g^j with h = x g^-j
    j_of = {}
    ginv_pow = []
    for j in range(d):
        j_of[index[group.power(g, j)]] = j
        ginv_pow.append(group.power(g, -j))
    exps = []
    for x in range(group.order):
        j = j_of[index[x]]
        h = local[group.table[x][ginv_pow[j]]]
        exps.append(d * chi.exps[h] + k * j)
    ext = LinearCharacter(group, big, exps)
    ext.verify()
    if ext.restrict(sub) != chi:
        raise AssertionError("extension does not restrict to the character")
    return InvarianceResult(True, True, ext)


def is_unitary_character(chi: ClassFunction) -> bool:
    """|chi(g)| <= chi(1) on every class (a cheap sanity check for genuine characters)."""
    deg = float(chi.degree)
    return all(abs(complex(v)) <= deg + 1e-9 for v in chi.values)


__all__ = [
    "MatrixRep",
    "CliffordDecomposition",
    "TwistCocycle",
    "InvarianceResult",
    "character",
    "kth_power_equal",
    "twist_search",
    "commutant_dimension",
    "clifford_decompose",
    "fixed_sets",
    "compare_fixed_sets",
    "induce",
    "pre_asai",
    "asai_character",
    "conjugation_automorphisms",
    "check_automorphism",
    "twist_cocycle",
    "invariant_character_check",
    "heisenberg_rep",
    "verify_heisenberg_relations",
    "trivial_rep",
    "regular_rep",
    "permutation_rep",
    "standard_rep",
    "sign_rep",
    "linear_rep",
    "subgroup_of",
    "quotient_group",
    "conjugate_class_function",
    "conj",
]
