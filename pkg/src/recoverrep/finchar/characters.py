"""Class functions, linear characters and character tables.

Values are exact: plain integers/fractions where possible and
``Cyclotomic`` otherwise.  Inner products are computed in the cyclotomic
field and must come out rational.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Mapping, Sequence

from ..errors import GroupMismatch, IncompleteCharacterTable, NonRationalResult, NotAHomomorphism
from .cyclotomic import Cyclotomic
from .groups import FiniteGroup


def conj(x):
    return x.conjugate() if isinstance(x, Cyclotomic) else x


def _clean(x):
    """Collapse rational cyclotomics to Fraction/int so tables print simply."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        x = x.coeffs[0]
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _galois(x, k: int, m: int):
    if isinstance(x, Cyclotomic):
        return x.lift(lcm(x.m, m)).galois(k) if gcd(k, lcm(x.m, m)) == 1 else None
    return x


def local_index(sub: FiniteGroup) -> dict[int, int]:
    """parent element -> subgroup element."""
    if sub.embedding is None:
        raise GroupMismatch(f"{sub.name} is not a subgroup of another group")
    return sub.cached("local", lambda: {p: i for i, p in enumerate(sub.embedding)})


class ClassFunction:
    """A function on a group, constant on conjugacy classes."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence):
        if len(values) != len(group.classes):
            raise ValueError(f"expected {len(group.classes)} class values, got {len(values)}")
        self.group = group
        self.values = tuple(_clean(v) for v in values)

    @classmethod
    def from_function(cls, group: FiniteGroup, f: Callable[[int], object]) -> "ClassFunction":
        return cls(group, [f(r) for r in group.class_reps])

    @classmethod
    def constant(cls, group: FiniteGroup, c) -> "ClassFunction":
        return cls(group, [c] * len(group.classes))

    @classmethod
    def regular(cls, group: FiniteGroup) -> "ClassFunction":
        return cls(group, [group.order] + [0] * (len(group.classes) - 1))

    def __call__(self, g: int):
        return self.values[self.group.class_of[g]]

    @property
    def degree(self):
        return self.values[0]

    def _same(self, other: "ClassFunction") -> None:
        if not isinstance(other, ClassFunction) or other.group is not self.group:
            raise GroupMismatch("class functions live on different groups")

    def __add__(self, other):
        self._same(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._same(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._same(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [other * a for a in self.values])

    __rmul__ = __mul__

    def scaled_down(self, d) -> "ClassFunction":
        return ClassFunction(self.group, [Cyclotomic.coerce(a) / d if isinstance(a, Cyclotomic) else Fraction(a) / d
                                          for a in self.values])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [conj(a) for a in self.values])

    def galois(self, k: int) -> "ClassFunction | None":
        m = self.group.exponent
        vals = [_galois(a, k, m) for a in self.values]
        if any(v is None for v in vals):
            return None
        return ClassFunction(self.group, vals)

    def power(self, k: int) -> "ClassFunction":
        return ClassFunction(self.group, [a ** k for a in self.values])

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.values)

    def restrict(self, sub: FiniteGroup) -> "ClassFunction":
        if sub.parent is not self.group:
            raise GroupMismatch(f"{sub.name} is not a subgroup of {self.group.name}")
        return ClassFunction(sub, [self(sub.embedding[r]) for r in sub.class_reps])

    def norm(self) -> Fraction:
        return inner_product(self, self)

    def is_irreducible_character(self) -> bool:
        deg = self.degree
        return self.norm() == 1 and not isinstance(deg, Cyclotomic) and deg > 0

    def to_json(self) -> dict:
        return {
            "classes": [self.group.labels[r] for r in self.group.class_reps],
            "values": [str(v) for v in self.values],
        }

    def __repr__(self):
        return f"ClassFunction({self.group.name}, [{', '.join(map(str, self.values))}])"


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    """(1/|G|) sum over x of f(x) conj(g(x)), required to be rational."""
    f._same(g)
    total = 0
    for size, a, b in zip(f.group.class_sizes, f.values, g.values):
        if a and b:
            total = total + size * a * conj(b)
    if isinstance(total, Cyclotomic):
        if not total.is_rational():
            raise NonRationalResult(f"inner product {total} is not rational")
        total = total.coeffs[0]
    return Fraction(total) / f.group.order


# ---------------------------------------------------------------------------
# linear characters


class LinearCharacter:
    """A homomorphism G -> roots of unity, g -> zeta_e^exps[g].

    Stored in lowest terms: ``modulus`` is the order of the character, so
    two equal characters have identical data and can be hashed.
    """

    __slots__ = ("group", "modulus", "exps")

    def __init__(self, group: FiniteGroup, modulus: int, exps: Sequence[int]):
        exps = [int(x) % modulus for x in exps]
        g = modulus
        for x in exps:
            g = gcd(g, x)
        self.group = group
        self.modulus = modulus // g
        self.exps = tuple(x // g for x in exps)

    @classmethod
    def trivial(cls, group: FiniteGroup) -> "LinearCharacter":
        return cls(group, 1, [0] * group.order)

    @classmethod
    def from_images(cls, group: FiniteGroup, modulus: int, images: Mapping[int, int]) -> "LinearCharacter":
        """Extend g -> zeta_modulus^images[g] from a generating set, checking consistency."""
        exps: list[int | None] = [None] * group.order
        exps[group.identity] = 0
        gens = list(images)
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = group.table[x][s]
                    val = (exps[x] + images[s]) % modulus
                    if exps[y] is None:
                        exps[y] = val
                        nxt.append(y)
                    elif exps[y] != val:
                        raise NotAHomomorphism("character values are inconsistent with the group law")
            frontier = nxt
        if any(e is None for e in exps):
            raise ValueError("the given elements do not generate the group")
        chi = cls(group, modulus, exps)
        chi.verify()
        return chi

    def verify(self) -> None:
        t, e, m = self.group.table, self.exps, self.modulus
        for a in range(self.group.order):
            for s in self.group.generators:
                if e[t[a][s]] != (e[a] + e[s]) % m:
                    raise NotAHomomorphism("linear character is not multiplicative")

    def value(self, g: int):
        k = self.exps[g]
        if self.modulus <= 2:
            return -1 if k else 1
        return Cyclotomic.zeta(self.modulus, k)

    __call__ = value

    def class_function(self) -> ClassFunction:
        return ClassFunction.from_function(self.group, self.value)

    def is_trivial(self) -> bool:
        return self.modulus == 1

    def __mul__(self, other: "LinearCharacter") -> "LinearCharacter":
        if other.group is not self.group:
            raise GroupMismatch("characters live on different groups")
        m = lcm(self.modulus, other.modulus)
        a, b = m // self.modulus, m // other.modulus
        return LinearCharacter(self.group, m, [a * x + b * y for x, y in zip(self.exps, other.exps)])

    def inverse(self) -> "LinearCharacter":
        return LinearCharacter(self.group, self.modulus, [-x for x in self.exps])

    def restrict(self, sub: FiniteGroup) -> "LinearCharacter":
        if sub.parent is not self.group:
            raise GroupMismatch(f"{sub.name} is not a subgroup of {self.group.name}")
        return LinearCharacter(sub, self.modulus, [self.exps[p] for p in sub.embedding])

    def __eq__(self, other):
        if not isinstance(other, LinearCharacter):
            return NotImplemented
        return self.group is other.group and self.modulus == other.modulus and self.exps == other.exps

    def __hash__(self):
        return hash((id(self.group), self.modulus, self.exps))

    def describe(self) -> str:
        parts = [f"{name} -> zeta_{self.modulus}^{self.exps[g]}" for name, g in
                 zip(self.group.generator_names, self.group.generators)]
        return "trivial" if self.is_trivial() else ", ".join(parts)

    def __repr__(self):
        return f"LinearCharacter({self.group.name}: {self.describe()})"


def linear_characters(group: FiniteGroup) -> list[LinearCharacter]:
    """All characters of G/[G,G], trivial first, built by extending along cyclic steps."""
    return group.cached("linear", lambda: _linear_characters(group))


def _linear_characters(group: FiniteGroup) -> list[LinearCharacter]:
    t = group.table
    reps, coset = group.left_cosets(group.derived)
    q = len(reps)
    # abelian quotient: multiply representatives
    qmul = [[coset[t[reps[a]][reps[b]]] for b in range(q)] for a in range(q)]
    qid = coset[group.identity]

    def qorder(a):
        k, y = 1, a
        while y != qid:
            y = qmul[y][a]
            k += 1
        return k

    expo = lcm(*(qorder(a) for a in range(q))) if q else 1
    # characters on a growing subgroup K, as dicts element -> exponent mod expo
    chars: list[dict[int, int]] = [{qid: 0}]
    span = [qid]
    for g in range(q):
        if g in chars[0]:
            continue
        d, y = 1, g
        while y not in chars[0]:
            y = qmul[y][g]
            d += 1
        # y = g^d lies in K
        new_span = []
        powers = [qid]
        for _ in range(d - 1):
            powers.append(qmul[powers[-1]][g])
        for j, gj in enumerate(powers):
            for k in span:
                new_span.append((k, j, qmul[k][gj]))
        new_chars = []
        for chi in chars:
            c = chi[y]
            assert c % d == 0
            for tshift in range(d):
                x = c // d + tshift * expo // d
                ext = {elem: (chi[k] + j * x) % expo for k, j, elem in new_span}
                new_chars.append(ext)
        chars = new_chars
        span = [elem for _, _, elem in new_span]
    out = [LinearCharacter(group, expo, [chi[coset[a]] for a in range(group.order)]) for chi in chars]
    out.sort(key=lambda c: (c.modulus, c.exps))
    for c in out:
        c.verify()
    if len(set(out)) != q:
        raise AssertionError("linear characters are not distinct")
    return out


# ---------------------------------------------------------------------------
# induction and the character table


def induced_class_function(sub: FiniteGroup, psi: ClassFunction) -> ClassFunction:
    """Frobenius formula: Ind(psi)(g) = |C_G(g)|/|H| * sum of psi over H meeting class(g)."""
    parent = sub.parent
    if parent is None or psi.group is not sub:
        raise GroupMismatch("induction needs a class function on a subgroup")
    acc = [0] * len(parent.classes)
    for h in range(sub.order):
        v = psi(h)
        if v:
            c = parent.class_of[sub.embedding[h]]
            acc[c] = acc[c] + v
    vals = []
    for c, a in enumerate(acc):
        factor = Fraction(parent.order, parent.class_sizes[c] * sub.order)
        vals.append(a * factor if a else 0)
    return ClassFunction(parent, vals)


def irreducible_characters(group: FiniteGroup) -> list[ClassFunction]:
    """The complete character table: linear characters first, then by degree.

    Burnside's method: central characters are the common eigenvectors of
    the class-multiplication matrices, found numerically from one random
    combination of them.  Each value chi(g) is then made exact by rounding
    the eigenvalue multiplicities of g (a Fourier transform over the
    powers of g) to integers.  The exact table is checked for
    orthonormality, sum of squared degrees = |G| and nonnegative integral
    tensor-product multiplicities; any numerical trouble surfaces as
    IncompleteCharacterTable rather than a wrong table.
    """
    return group.cached("irr", lambda: _irreducible_characters(group))


def _irreducible_characters(group: FiniteGroup) -> list[ClassFunction]:
    linear = [lam.class_function() for lam in linear_characters(group)]
    nclasses = len(group.classes)
    if len(linear) == nclasses:
        irr = linear
    else:
        approx = _burnside_numeric(group)
        irr = list(linear)
        for vals in approx:
            chi = _exact_from_numeric(group, vals)
            if chi is None:
                raise IncompleteCharacterTable(f"could not round a character of {group.name} exactly")
            if _as_int(chi.degree) > 1:
                irr.append(chi)
        rest = irr[len(linear):]
        rest.sort(key=lambda chi: (_as_int(chi.degree), [_approx_key(v) for v in chi.values]))
        irr = irr[: len(linear)] + rest
    _verify_table(group, irr)
    return irr


def _class_structure_constants(group: FiniteGroup):
    """a[k][i][j] = #{(x, y) : x in K_i, y in K_j, x y = g_k}."""
    import numpy as np

    n = len(group.classes)
    t, inv, cls = group.table, group.inverses, group.class_of
    a = np.zeros((n, n, n))
    for k, g in enumerate(group.class_reps):
        for x in range(group.order):
            y = t[inv[x]][g]
            a[k, cls[x], cls[y]] += 1
    return a


def _burnside_numeric(group: FiniteGroup):
    import numpy as np

    n = len(group.classes)
    a = _class_structure_constants(group)
    # M_i[j][k] = a[k][i][j]; random combination separates all central characters
    rng = np.random.default_rng(12345)
    coeffs = rng.standard_normal(n)
    m = np.einsum("i,kij->jk", coeffs, a)
    _, vecs = np.linalg.eig(m)
    sizes = np.array(group.class_sizes, dtype=float)
    out = []
    for v in vecs.T:
        omega = v / v[0]
        deg2 = group.order / float(np.sum(np.abs(omega) ** 2 / sizes))
        deg = np.sqrt(deg2)
        out.append(deg * omega / sizes)
    return out


def _exact_from_numeric(group: FiniteGroup, vals) -> ClassFunction | None:
    import cmath

    exact = []
    for g in group.class_reps:
        o = group.element_order(g)
        powers = [vals[group.class_of[group.power(g, j)]] for j in range(o)]
        mults = []
        for k in range(o):
            s = sum(powers[j] * cmath.exp(-2j * cmath.pi * j * k / o) for j in range(o)) / o
            r = round(s.real)
            if abs(s - r) > 1e-6 or r < 0:
                return None
            mults.append(r)
        if o == 1:
            exact.append(mults[0])
        else:
            exact.append(Cyclotomic.from_exponents(o, {k: c for k, c in enumerate(mults) if c}))
    return ClassFunction(group, exact)


def _approx_key(v) -> tuple[float, float]:
    z = complex(v)
    return (round(z.real, 9), round(z.imag, 9))


def _verify_table(group: FiniteGroup, irr: list[ClassFunction]) -> None:
    n = len(group.classes)
    if len(irr) != n:
        raise IncompleteCharacterTable(f"found {len(irr)} of {n} irreducible characters of {group.name}")
    for i, a in enumerate(irr):
        for j, b in enumerate(irr[: i + 1]):
            if inner_product(a, b) != int(i == j):
                raise IncompleteCharacterTable(f"characters {i} and {j} of {group.name} are not orthonormal")
    if sum(_as_int(chi.degree) ** 2 for chi in irr) != group.order:
        raise IncompleteCharacterTable("squared degrees do not sum to the group order")
    if n <= 20:
        for i, a in enumerate(irr):
            for b in irr[i:]:
                ab = a * b
                for c in irr:
                    x = inner_product(ab, c)
                    if x < 0 or x.denominator != 1:
                        raise IncompleteCharacterTable("tensor product multiplicities are not natural numbers")


def _positive(x) -> bool:
    if isinstance(x, Cyclotomic):
        x = x.to_rational()
    return x > 0


def _as_int(x) -> int:
    if isinstance(x, Cyclotomic):
        x = x.to_rational()
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator


def character_table(group: FiniteGroup) -> dict:
    irr = irreducible_characters(group)
    return {
        "group": group.name,
        "classes": [group.labels[r] for r in group.class_reps],
        "class_sizes": list(group.class_sizes),
        "characters": [[str(v) for v in chi.values] for chi in irr],
    }
