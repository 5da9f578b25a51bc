"""Irreducible modules of the rank <= 2 simple Lie algebras A1, A2 and C2.

Highest weights are given in fundamental-weight coordinates (Dynkin
labels).  Weight multisets are returned in *orthogonal* coordinates
(``AlgebraData.to_lex``), chosen so that every positive root is
lexicographically positive; the lexicographic maximum of an irreducible
module is then its highest weight, and tensor products can be split by
repeatedly peeling off the lex-max.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DimensionOverflow
from .weights import WeightMultiset, adjoint, convolve, dual

DEFAULT_DIM_CAP = 5000


def _inverse(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class AlgebraData:
    name: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]          # row i = simple root i in Dynkin labels
    root_lengths: tuple[Fraction, ...]           # (alpha_i, alpha_i) / 2, up to scale
    positive_root_coeffs: tuple[tuple[int, ...], ...]  # in simple-root coordinates
    to_lex: tuple[tuple[int, ...], ...]          # labels (row vector) @ to_lex = lex coordinates
    form: tuple[tuple[int, ...], ...] = field(init=False)
    simple_roots: tuple[tuple[int, ...], ...] = field(init=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(init=False)
    rho: tuple[int, ...] = field(init=False)
    fundamental_weights: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        r = self.rank
        inv = _inverse(self.cartan)
        # (omega_i, alpha_j) = delta_ij d_j  =>  form = cartan^{-1} diag(d)
        raw = [[inv[i][j] * self.root_lengths[j] for j in range(r)] for i in range(r)]
        scale = lcm(*(x.denominator for row in raw for x in row))
        form = tuple(tuple(int(x * scale) for x in row) for row in raw)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "simple_roots", tuple(tuple(row) for row in self.cartan))
        pos = tuple(
            tuple(sum(c * self.cartan[i][j] for i, c in enumerate(coeffs)) for j in range(r))
            for coeffs in self.positive_root_coeffs
        )
        object.__setattr__(self, "positive_roots", pos)
        object.__setattr__(self, "rho", (1,) * r)
        object.__setattr__(self, "fundamental_weights", tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))
        object.__setattr__(self, "_cartan_inv", inv)
        object.__setattr__(self, "_lex_inv", _inverse(self.to_lex))

    def inner(self, u: Sequence[int], v: Sequence[int]) -> int:
        f = self.form
        return sum(u[i] * f[i][j] * v[j] for i in range(self.rank) for j in range(self.rank))

    def cartan_from_form(self) -> list[list[Fraction]]:
        """a_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j), rebuilt from the stored form."""
        s = self.simple_roots
        return [[Fraction(2 * self.inner(s[i], s[j]), self.inner(s[j], s[j])) for j in range(self.rank)]
                for i in range(self.rank)]

    def root_coordinates(self, mu: Sequence[int]) -> list[Fraction]:
        """Coordinates of a label vector in the simple-root basis."""
        inv = self._cartan_inv
        return [sum(mu[i] * inv[i][j] for i in range(self.rank)) for j in range(self.rank)]

    def reflect(self, mu: Sequence[int], i: int) -> tuple[int, ...]:
        a = self.simple_roots[i]
        return tuple(x - mu[i] * y for x, y in zip(mu, a))

    def dominant_conjugate(self, mu: Sequence[int]) -> tuple[int, ...]:
        mu = tuple(mu)
        while True:
            i = next((k for k, x in enumerate(mu) if x < 0), None)
            if i is None:
                return mu
            mu = self.reflect(mu, i)

    def labels_to_lex(self, mu: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(mu[i] * self.to_lex[i][j] for i in range(self.rank)) for j in range(self.rank))

    def lex_to_labels(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [sum(v[i] * self._lex_inv[i][j] for i in range(self.rank)) for j in range(self.rank)]
        if any(x.denominator != 1 for x in out):
            raise ValueError(f"{tuple(v)} is not in the weight lattice")
        return tuple(int(x) for x in out)


A1 = AlgebraData(
    name="A1", rank=1, cartan=((2,),), root_lengths=(Fraction(1),),
    positive_root_coeffs=((1,),), to_lex=((1,),),
)
A2 = AlgebraData(
    name="A2", rank=2, cartan=((2, -1), (-1, 2)), root_lengths=(Fraction(1), Fraction(1)),
    positive_root_coeffs=((1, 0), (0, 1), (1, 1)),
    # omega_1 -> e1, omega_2 -> e1 + e2, written modulo (1,1,1) as (x1-x3, x2-x3)
    to_lex=((1, 0), (1, 1)),
)
C2 = AlgebraData(
    name="C2", rank=2, cartan=((2, -1), (-2, 2)), root_lengths=(Fraction(1, 2), Fraction(1)),
    # alpha_1 short, alpha_2 long
    positive_root_coeffs=((1, 0), (0, 1), (1, 1), (2, 1)),
    # omega_1 -> e1, omega_2 -> e1 + e2
    to_lex=((1, 0), (1, 1)),
)
ALGEBRAS = {a.name: a for a in (A1, A2, C2)}


def get_algebra(name: str | AlgebraData) -> AlgebraData:
    if isinstance(name, AlgebraData):
        return name
    try:
        return ALGEBRAS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {sorted(ALGEBRAS)}") from None


@dataclass(frozen=True, order=True)
class HighestWeight:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(x) for x in self.coeffs))
        if any(x < 0 for x in self.coeffs):
            raise ValueError(f"{self.coeffs} is not dominant")

    @classmethod
    def of(cls, *coeffs) -> "HighestWeight":
        if len(coeffs) == 1 and not isinstance(coeffs[0], int):
            coeffs = tuple(coeffs[0])
        return cls(tuple(coeffs))

    def __repr__(self):
        return f"HW{self.coeffs}"


def _hw(alg: AlgebraData, hw) -> HighestWeight:
    if not isinstance(hw, HighestWeight):
        hw = HighestWeight(tuple(hw) if not isinstance(hw, int) else (hw,))
    if len(hw.coeffs) != alg.rank:
        raise ValueError(f"{alg.name} highest weights have {alg.rank} coordinates")
    return hw


def weyl_dim(alg: AlgebraData | str, hw) -> int:
    alg = get_algebra(alg)
    lam = _hw(alg, hw).coeffs
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for a in alg.positive_roots:
        num *= Fraction(alg.inner(shifted, a), alg.inner(alg.rho, a))
    assert num.denominator == 1
    return int(num)


def _weight_labels(alg: AlgebraData, lam: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Freudenthal multiplicities of V(lam), keyed by Dynkin labels."""

    def is_weight(mu):
        c = alg.root_coordinates(tuple(a - b for a, b in zip(lam, alg.dominant_conjugate(mu))))
        return all(x.denominator == 1 and x >= 0 for x in c)

    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for a in alg.simple_roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu not in seen and is_weight(nu):
                seen.add(nu)
                queue.append(nu)

    def depth(mu):
        return sum(alg.root_coordinates(tuple(a - b for a, b in zip(lam, mu))))

    order = sorted(seen, key=depth)
    rho = alg.rho
    lam_rho = tuple(x + y for x, y in zip(lam, rho))
    top = alg.inner(lam_rho, lam_rho)
    mult: dict[tuple[int, ...], int] = {lam: 1}
    for mu in order[1:]:
        dom = alg.dominant_conjugate(mu)
        if dom != mu:
            mult[mu] = mult[dom]
            continue
        acc = 0
        for a in alg.positive_roots:
            j = 1
            while True:
                nu = tuple(x + j * y for x, y in zip(mu, a))
                if nu not in seen:
                    break
                acc += mult[nu] * alg.inner(nu, a)
                j += 1
        mu_rho = tuple(x + y for x, y in zip(mu, rho))
        m = Fraction(2 * acc, top - alg.inner(mu_rho, mu_rho))
        assert m.denominator == 1, "Freudenthal recursion produced a non-integer"
        mult[mu] = int(m)
    return {mu: m for mu, m in mult.items() if m}


_IRR_CACHE: dict[tuple[str, tuple[int, ...]], WeightMultiset] = {}


def irr_weights(alg: AlgebraData | str, hw, cap: int = DEFAULT_DIM_CAP) -> WeightMultiset:
    """Weights of the irreducible module V(hw), in lexicographic coordinates."""
    alg = get_algebra(alg)
    lam = _hw(alg, hw).coeffs
    dim = weyl_dim(alg, lam)
    if dim > cap:
        raise DimensionOverflow(f"dim V{lam} = {dim} exceeds the cap {cap}")
    key = (alg.name, lam)
    if key not in _IRR_CACHE:
        labels = _weight_labels(alg, lam)
        _IRR_CACHE[key] = WeightMultiset(alg.rank, {alg.labels_to_lex(mu): m for mu, m in labels.items()})
    return _IRR_CACHE[key]


def dual_highest_weight(alg: AlgebraData | str, hw) -> HighestWeight:
    """Highest weight of V(hw)*, i.e. -w0(hw)."""
    alg = get_algebra(alg)
    return HighestWeight(alg.lex_to_labels(dual(irr_weights(alg, hw)).max()))


def decompose_weights(alg: AlgebraData | str, weights: WeightMultiset, cap: int = DEFAULT_DIM_CAP) -> Counter:
    """Split a module's weight multiset into irreducible highest weights."""
    alg = get_algebra(alg)
    rest = weights
    out: Counter = Counter()
    while len(rest):
        labels = alg.lex_to_labels(rest.max())
        if any(x < 0 for x in labels):
            raise ArithmeticError(f"lex-max {rest.max()} is not dominant; the input is not a module")
        piece = irr_weights(alg, labels, cap)
        if not rest.contains(piece):
            raise ArithmeticError(f"V{labels} does not fit inside the remaining weights")
        rest = rest - piece
        out[HighestWeight(labels)] += 1
    return out


def tensor_decompose(alg: AlgebraData | str, h1, h2, cap: int = DEFAULT_DIM_CAP) -> Counter:
    """Multiplicities of the irreducible summands of V(h1) (x) V(h2)."""
    alg = get_algebra(alg)
    d = weyl_dim(alg, h1) * weyl_dim(alg, h2)
    if d > cap:
        raise DimensionOverflow(f"product dimension {d} exceeds the cap {cap}")
    product = convolve(irr_weights(alg, h1, cap), irr_weights(alg, h2, cap))
    out = decompose_weights(alg, product, cap)
    assert sum(weyl_dim(alg, h) * m for h, m in out.items()) == d
    return out


def dominant_weights(alg: AlgebraData | str, bound: int, include_zero: bool = True) -> list[HighestWeight]:
    alg = get_algebra(alg)
    out = [HighestWeight(c) for c in itertools.product(range(bound + 1), repeat=alg.rank)]
    if not include_zero:
        out = [h for h in out if any(h.coeffs)]
    return out


def check_unique_factorization(
    alg: AlgebraData | str, bound: int, max_factors: int, cap: int = DEFAULT_DIM_CAP
) -> dict:
    """Search for two different factor lists with the same tensor product.

    Every multiset of 1..max_factors nontrivial irreducibles with highest
    weight coordinates <= bound is expanded to its product weight multiset;
    coinciding products with different factors are reported.
    """
    alg = get_algebra(alg)
    hws = dominant_weights(alg, bound, include_zero=False)
    products: dict[WeightMultiset, list[tuple[HighestWeight, ...]]] = {}
    count = 0
    for size in range(1, max_factors + 1):
        for factors in itertools.combinations_with_replacement(hws, size):
            w = irr_weights(alg, factors[0], cap)
            for h in factors[1:]:
                w = convolve(w, irr_weights(alg, h, cap))
            products.setdefault(w, []).append(factors)
            count += 1
    counterexamples = sorted(
        [[list(map(_coeff_list, f)) for f in sorted(group)] for group in products.values() if len(group) > 1]
    )
    return {
        "algebra": alg.name,
        "bound": bound,
        "max_factors": max_factors,
        "tuples_checked": count,
        "pairs_checked": count * (count - 1) // 2,
        "counterexamples": counterexamples,
    }


def _coeff_list(h: HighestWeight) -> list[int]:
    return list(h.coeffs)


def adjoint_fibre(alg: AlgebraData | str, hw, bound: int, cap: int = DEFAULT_DIM_CAP) -> list[HighestWeight]:
    """All W with coordinates <= bound and Ad(W) = Ad(V(hw)) as weight multisets."""
    alg = get_algebra(alg)
    target = adjoint(irr_weights(alg, hw, cap))
    out = []
    for h in dominant_weights(alg, bound):
        w = irr_weights(alg, h, cap)
        if len(w) ** 2 == len(target) and adjoint(w) == target:
            out.append(h)
    return sorted(out)


def product_group_adjoint_counterexample() -> dict:
    """A2 x A2 with V = std (x) std and W = std (x) std*.

    Ad(V) and Ad(W) agree although V is isomorphic neither to W nor to W*.
    """
    std = irr_weights(A2, (1, 0))
    std_dual = irr_weights(A2, (0, 1))

    def outer(a: WeightMultiset, b: WeightMultiset) -> WeightMultiset:
        out: Counter = Counter()
        for u, m in a.items():
            for v, n in b.items():
                out[u + v] += m * n
        return WeightMultiset(a.rank + b.rank, out)

    v = outer(std, std)
    w = outer(std, std_dual)
    return {
        "ad_equal": adjoint(v) == adjoint(w),
        "v_iso_w": v == w,
        "v_iso_w_dual": v == dual(w),
        "v_iso_v": v == v,
        "v_dual_dual_iso_v": dual(dual(v)) == v,
        "V": v.to_json(),
        "W": w.to_json(),
    }
