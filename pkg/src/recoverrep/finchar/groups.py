"""Finite groups stored by multiplication table.

Elements are the integers ``0 .. N-1``; ``table[a][b]`` is the index of
``a*b``.  Everything derived from the table (classes, centre, derived
subgroup) is computed once at construction, by orbit and closure
computations over the generators rather than over all pairs.
"""
from __future__ import annotations

import itertools
import json
import random
import threading
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Sequence

from ..errors import BadParameters, GroupTooLarge, NotNormal

MAX_ORDER = 2187
EXHAUSTIVE_ASSOCIATIVITY = 64


class FiniteGroup:
    """A group given by its Cayley table.

    ``parent`` and ``embedding`` are set for subgroups: element ``i`` of
    the subgroup is element ``embedding[i]`` of ``parent``.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        generators: Sequence[int] | None = None,
        generator_names: Sequence[str] | None = None,
        name: str = "G",
        parent: "FiniteGroup | None" = None,
        embedding: Sequence[int] | None = None,
    ):
        n = len(table)
        if n == 0:
            raise ValueError("a group has at least one element")
        if n > MAX_ORDER:
            raise GroupTooLarge(f"order {n} exceeds the supported maximum {MAX_ORDER}")
        table = tuple(tuple(int(x) for x in row) for row in table)
        full = tuple(range(n))
        for row in table:
            if len(row) != n or tuple(sorted(row)) != full:
                raise ValueError("multiplication table rows must be permutations of the elements")
        for j in range(n):
            if sorted(table[i][j] for i in range(n)) != list(full):
                raise ValueError("multiplication table columns must be permutations of the elements")
        ident = next((e for e in range(n) if table[e] == full), None)
        if ident is None or any(table[a][ident] != a for a in range(n)):
            raise ValueError("multiplication table has no two-sided identity")
        self.order = n
        self.table = table
        self.identity = ident
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per element required")
        self.inverses = tuple(table[a].index(ident) for a in range(n))
        self._check_associative()
        if generators is None:
            generators = self._greedy_generators()
        self.generators = tuple(int(g) for g in generators)
        if len(self.generate(self.generators)) != n:
            raise ValueError("the given generators do not generate the group")
        if generator_names is None:
            generator_names = [self.labels[g] for g in self.generators]
        self.generator_names = tuple(generator_names)
        self.parent = parent
        # point action for groups built from permutations (enables perm/std/sign reps)
        self.permutations: tuple[tuple[int, ...], ...] | None = None
        self.embedding = tuple(embedding) if embedding is not None else None
        # lazily computed tables, filled once under the lock (see ``cached``)
        self._cache: dict = {}
        self._lock = threading.RLock()

        self.classes = self._conjugacy_classes()
        class_of = [0] * n
        for ci, cls in enumerate(self.classes):
            for x in cls:
                class_of[x] = ci
        self.class_of = tuple(class_of)
        self.class_sizes = tuple(len(c) for c in self.classes)
        self.center = frozenset(
            z for z in range(n) if all(table[z][s] == table[s][z] for s in self.generators)
        )
        comms = [self.commutator(s, t) for s in self.generators for t in self.generators]
        self.derived = self.normal_closure(comms)

    # construction helpers ----------------------------------------------------

    @classmethod
    def from_rule(
        cls,
        elements: Sequence[Hashable],
        mul: Callable,
        generators: Sequence[Hashable] | None = None,
        generator_names: Sequence[str] | None = None,
        labels: Callable[[Hashable], str] = str,
        name: str = "G",
    ) -> "FiniteGroup":
        if len(elements) > MAX_ORDER:
            raise GroupTooLarge(f"order {len(elements)} exceeds the supported maximum {MAX_ORDER}")
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[mul(a, b)] for b in elements] for a in elements]
        gens = None if generators is None else [index[g] for g in generators]
        return cls(table, [labels(e) for e in elements], gens, generator_names, name)

    def _check_associative(self) -> None:
        t = self.table
        n = self.order
        if n <= EXHAUSTIVE_ASSOCIATIVITY:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(n)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"multiplication is not associative at ({a}, {b}, {c})")

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = self.generate(gens)
        return gens

    # element arithmetic -------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elems: Iterable[int]) -> int:
        out = self.identity
        for e in elems:
            out = self.table[out][e]
        return out

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverses[g]]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b."""
        inv = self.inverses
        return self.product((inv[a], inv[b], a, b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def cached(self, key: Hashable, factory: Callable[[], object]):
        """Compute-once storage; concurrent callers all receive the same object."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = factory()
            return self._cache[key]

    def _element_orders(self) -> tuple[int, ...]:
        orders = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = self.table[y][x]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, a: int) -> int:
        return self.cached("orders", self._element_orders)[a]

    @property
    def exponent(self) -> int:
        return lcm(*(self.element_order(a) for a in range(self.order)))

    def element(self, key) -> int:
        """Accept an index or a label."""
        if isinstance(key, int):
            if not 0 <= key < self.order:
                raise ValueError(f"element index {key} out of range")
            return key
        if key in self.generator_names:
            return self.generators[self.generator_names.index(key)]
        if key in self.labels:
            return self.labels.index(key)
        raise ValueError(f"unknown element {key!r}")

    def word(self, letters: str) -> int:
        """Product of generator names, e.g. ``"ABA"``; single-letter names only."""
        return self.product(self.element(ch) for ch in letters)

    # subgroups ---------------------------------------------------------------

    def generate(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.table[x]
                for s in gens:
                    y = row[s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def normal_closure(self, elems: Iterable[int]) -> frozenset[int]:
        gens = list(dict.fromkeys(elems))
        while True:
            span = self.generate(gens)
            extra = []
            for h in gens:
                for s in self.generators:
                    c = self.conj(s, h)
                    if c not in span and c not in extra:
                        extra.append(c)
            if not extra:
                return span
            gens += extra

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return self.identity in s and all(self.table[a][b] in s for a in s for b in s)

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = frozenset(elems)
        if not self.is_subgroup(s):
            return False
        return all(self.conj(g, h) in s for h in s for g in self.generators)

    def require_normal(self, elems: Iterable[int]) -> frozenset[int]:
        s = frozenset(elems)
        if not self.is_normal(s):
            raise NotNormal("the given subset is not a normal subgroup")
        return s

    def left_cosets(self, elems: Iterable[int]) -> tuple[list[int], list[int]]:
        """Return (representatives, coset index of each element) for cosets gH.

        The representative of each coset is its least element index.
        """
        h = sorted(set(elems))
        index = [-1] * self.order
        reps: list[int] = []
        for g in range(self.order):
            if index[g] < 0:
                ci = len(reps)
                reps.append(g)
                for x in h:
                    index[self.table[g][x]] = ci
        return reps, index

    def subgroup(self, elems: Iterable[int], name: str | None = None) -> "FiniteGroup":
        emb = sorted(set(elems))
        if not self.is_subgroup(emb):
            raise ValueError("the given elements do not form a subgroup")
        local = {g: i for i, g in enumerate(emb)}
        table = [[local[self.table[a][b]] for b in emb] for a in emb]
        return FiniteGroup(
            table,
            [self.labels[g] for g in emb],
            None,
            None,
            name or f"{self.name}_sub{len(emb)}",
            parent=self,
            embedding=emb,
        )

    def root(self) -> "FiniteGroup":
        return self if self.parent is None else self.parent

    # classes -------------------------------------------------------------------

    def _conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        classes = []
        for x in [self.identity] + [g for g in range(self.order) if g != self.identity]:
            if seen[x]:
                continue
            orbit = [x]
            seen[x] = True
            i = 0
            while i < len(orbit):
                y = orbit[i]
                i += 1
                for s in self.generators:
                    z = self.conj(s, y)
                    if not seen[z]:
                        seen[z] = True
                        orbit.append(z)
            classes.append(tuple(sorted(orbit)))
        return tuple(classes)

    @property
    def class_reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    def centralizer_order(self, x: int) -> int:
        return self.order // self.class_sizes[self.class_of[x]]

    def is_abelian(self) -> bool:
        return len(self.classes) == self.order

    # serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "table": [list(r) for r in self.table],
            "labels": list(self.labels),
            "generators": list(self.generators),
            "generator_names": list(self.generator_names),
        }

    @classmethod
    def from_json(cls, data) -> "FiniteGroup":
        if isinstance(data, str):
            data = json.loads(data)
        unknown = set(data) - {"name", "order", "table", "labels", "generators", "generator_names", "identity"}
        if unknown:
            raise ValueError(f"unknown group keys: {sorted(unknown)}")
        g = cls(
            data["table"],
            data.get("labels"),
            data.get("generators"),
            data.get("generator_names"),
            data.get("name", "G"),
        )
        if "order" in data and int(data["order"]) != g.order:
            raise ValueError("declared order does not match the table")
        if "identity" in data and int(data["identity"]) != g.identity:
            raise ValueError("declared identity does not match the table")
        return g

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


# ---------------------------------------------------------------------------
# presets


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameters("cyclic group order must be positive")
    g = FiniteGroup.from_rule(
        list(range(n)), lambda a, b: (a + b) % n, [1 % n], ["g"],
        labels=lambda k: f"g^{k}", name=f"cyclic:{n}",
    )
    g.permutations = tuple(tuple((i + k) % n for i in range(n)) for k in range(n))
    return g


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, elements r^k s^f."""
    if n < 1:
        raise BadParameters("dihedral group needs n >= 1")
    elems = [(k, f) for f in range(2) for k in range(n)]

    def mul(a, b):
        k1, f1 = a
        k2, f2 = b
        return ((k1 + (-k2 if f1 else k2)) % n, (f1 + f2) % 2)

    def label(e):
        k, f = e
        return f"r^{k}" + (" s" if f else "")

    g = FiniteGroup.from_rule(elems, mul, [(1 % n, 0), (0, 1)], ["r", "s"], label, f"dihedral:{n}")
    # r^k s^f acts on the vertices Z/n by i -> k + (-1)^f i
    g.permutations = tuple(tuple((k + (-i if f else i)) % n for i in range(n)) for k, f in elems)
    return g


def _cycle_label(p: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "()"


def _sign(p: tuple[int, ...]) -> int:
    s = 1
    seen = set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _compose(p, q):
    # (p q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameters("symmetric group needs n >= 1")
    size = 1
    for i in range(2, n + 1):
        size *= i
    if size > MAX_ORDER:
        raise GroupTooLarge(f"sym:{n} has order {size} > {MAX_ORDER}")
    elems = list(itertools.permutations(range(n)))
    gens = None
    if n >= 2:
        gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    g = FiniteGroup.from_rule(elems, _compose, gens, None, _cycle_label, f"sym:{n}")
    g.permutations = tuple(elems)
    return g


def alternating_group(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameters("alternating group needs n >= 1")
    size = 1
    for i in range(2, n + 1):
        size *= i
    if size // 2 > MAX_ORDER:
        raise GroupTooLarge(f"alt:{n} is too large")
    elems = [p for p in itertools.permutations(range(n)) if _sign(p) == 1]
    g = FiniteGroup.from_rule(elems, _compose, None, None, _cycle_label, f"alt:{n}")
    g.permutations = tuple(elems)
    return g


_QUAT = {
    # unit products among 1, i, j, k as (sign, unit)
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion_group() -> FiniteGroup:
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(a, b):
        sign, unit = _QUAT[(a[1], b[1])]
        return (a[0] * b[0] * sign, unit)

    def label(e):
        return ("" if e[0] == 1 else "-") + e[1]

    return FiniteGroup.from_rule(elems, mul, [(1, "i"), (1, "j")], ["i", "j"], label, "quaternion")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def heisenberg_group(n: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/n, n an odd prime.

    Elements are triples (x, y, z) with
    (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y').
    Generators A = (1,0,0), B = (0,1,0), C = (0,0,1) satisfy
    A^n = B^n = C^n = 1, C central and AB = CBA.
    """
    if not (_is_prime(n) and n % 2):
        raise BadParameters(f"n = {n} is not an odd prime")
    if n ** 3 > MAX_ORDER:
        raise GroupTooLarge(f"heisenberg:{n} has order {n ** 3} > {MAX_ORDER}")
    elems = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]

    def mul(a, b):
        return ((a[0] + b[0]) % n, (a[1] + b[1]) % n, (a[2] + b[2] + a[0] * b[1]) % n)

    def label(e):
        # (x, y, z) = A^x B^y C^(z - xy)
        x, y, z = e
        w = (z - x * y) % n
        parts = [f"{g}^{k}" for g, k in (("A", x), ("B", y), ("C", w)) if k]
        return " ".join(parts) or "1"

    return FiniteGroup.from_rule(
        elems, mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], ["A", "B", "C"], label, f"heisenberg:{n}"
    )


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    if g.order * h.order > MAX_ORDER:
        raise GroupTooLarge("direct product is too large")
    elems = [(a, b) for a in range(g.order) for b in range(h.order)]
    gens = [(s, h.identity) for s in g.generators] + [(g.identity, t) for t in h.generators]
    names = [f"{n}_1" for n in g.generator_names] + [f"{n}_2" for n in h.generator_names]
    return FiniteGroup.from_rule(
        elems,
        lambda a, b: (g.table[a[0]][b[0]], h.table[a[1]][b[1]]),
        gens,
        names,
        lambda e: f"({g.labels[e[0]]}, {h.labels[e[1]]})",
        f"{g.name}x{h.name}",
    )


PRESETS = {
    "heisenberg": heisenberg_group,
    "sym": symmetric_group,
    "alt": alternating_group,
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
}


def group_from_name(spec: str) -> FiniteGroup:
    """Build a preset from ``family:n`` (or ``quaternion``)."""
    spec = spec.strip()
    if spec in ("quaternion", "quaternion:8", "q8"):
        return quaternion_group()
    family, _, arg = spec.partition(":")
    if family not in PRESETS or not arg:
        raise ValueError(f"unknown group preset {spec!r}; expected one of "
                         f"{', '.join(k + ':n' for k in PRESETS)}, quaternion")
    try:
        n = int(arg)
    except ValueError:
        raise ValueError(f"group parameter {arg!r} is not an integer") from None
    return PRESETS[family](n)


def coprime(a: int, n: int) -> bool:
    return gcd(a, n) == 1
