"""Weight multisets in Z^r and their functorial images.

Weights are integer vectors compared lexicographically, coordinate by
coordinate.  The order is total and translation invariant, which is all
the recovery inductions below rely on.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (
    EmptyMultiset,
    KTooLarge,
    NotASymPower,
    NotATensorPower,
    NotDivisible,
    RankMismatch,
)

Weight = tuple[int, ...]


class WeightMultiset:
    """Finite multiset of integer vectors of a fixed length ``rank``.

    Immutable; equality and hashing are multiset equality.
    """

    __slots__ = ("rank", "_counts", "_key")

    def __init__(self, rank: int, entries: Mapping[Sequence[int], int] | Iterable[Sequence[int]] = ()):
        if rank < 1:
            raise ValueError("rank must be positive")
        counts: Counter = Counter()
        if isinstance(entries, Mapping):
            for w, mult in entries.items():
                counts[tuple(int(x) for x in w)] += int(mult)
        else:
            for w in entries:
                counts[tuple(int(x) for x in w)] += 1
        for w, mult in counts.items():
            if len(w) != rank:
                raise ValueError(f"weight {w} does not have length {rank}")
            if mult < 0:
                raise ValueError(f"negative multiplicity for {w}")
        self.rank = rank
        self._counts = {w: m for w, m in counts.items() if m}
        self._key = tuple(sorted(self._counts.items()))

    @classmethod
    def from_list(cls, weights: Sequence[Sequence[int]], rank: int | None = None) -> "WeightMultiset":
        weights = [tuple(w) for w in weights]
        if rank is None:
            if not weights:
                raise EmptyMultiset("cannot infer the rank of an empty list")
            rank = len(weights[0])
        return cls(rank, weights)

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "WeightMultiset":
        """Rank-one shorthand: ``from_ints([1, -1])``."""
        return cls(1, [(v,) for v in values])

    # multiset protocol -----------------------------------------------------

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __iter__(self):
        for w, m in self._key:
            for _ in range(m):
                yield w

    def items(self):
        return iter(self._key)

    def multiplicity(self, w: Sequence[int]) -> int:
        return self._counts.get(tuple(w), 0)

    def support(self) -> list[Weight]:
        return [w for w, _ in self._key]

    def counter(self) -> Counter:
        return Counter(self._counts)

    def __eq__(self, other):
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.rank == other.rank and self._key == other._key

    def __hash__(self):
        return hash((self.rank, self._key))

    def __repr__(self):
        parts = []
        for w, m in sorted(self._key, reverse=True):
            label = str(w[0]) if self.rank == 1 else str(w)
            parts.append(label if m == 1 else f"{label}x{m}")
        return f"WeightMultiset(rank={self.rank}, {{{', '.join(parts)}}})"

    def sorted_weights(self, descending: bool = True) -> list[Weight]:
        return sorted(self, reverse=descending)

    def max(self) -> Weight:
        """Lexicographic maximum."""
        if not self._counts:
            raise EmptyMultiset("empty multiset has no maximum")
        return self._key[-1][0]

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        _same_rank(self, other)
        return WeightMultiset(self.rank, self.counter() + other.counter())

    def __sub__(self, other: "WeightMultiset") -> "WeightMultiset":
        """Multiset difference; raises ValueError if ``other`` is not contained."""
        _same_rank(self, other)
        out = self.counter()
        for w, m in other.items():
            if out[w] < m:
                raise ValueError(f"{w} occurs {m} times in the subtrahend but only {out[w]} times")
            out[w] -= m
        return WeightMultiset(self.rank, out)

    def contains(self, other: "WeightMultiset") -> bool:
        return all(self._counts.get(w, 0) >= m for w, m in other.items())

    def shift(self, v: Sequence[int]) -> "WeightMultiset":
        return WeightMultiset(self.rank, {_add(w, v): m for w, m in self.items()})

    def transform(self, matrix: Sequence[Sequence[int]]) -> "WeightMultiset":
        """Apply an integer linear map, acting on row vectors: ``w -> w @ matrix``."""
        new_rank = len(matrix[0])
        out: Counter = Counter()
        for w, m in self.items():
            out[tuple(sum(w[i] * matrix[i][j] for i in range(self.rank)) for j in range(new_rank))] += m
        return WeightMultiset(new_rank, out)

    # serialization ---------------------------------------------------------

    def to_text(self) -> str:
        """One line per distinct weight: ``mult c1 ... cr``."""
        return "\n".join(" ".join(map(str, (m, *w))) for w, m in sorted(self._key, reverse=True))

    @classmethod
    def from_text(cls, text: str) -> "WeightMultiset":
        rows = []
        for line in text.replace("\\n", "\n").splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([int(x) for x in line.replace(",", " ").split()])
        if not rows:
            raise EmptyMultiset("no weights in input")
        rank = len(rows[0]) - 1
        if rank < 1 or any(len(r) != rank + 1 for r in rows):
            raise ValueError("every line must read 'mult c1 ... cr' with a common r")
        counts: Counter = Counter()
        for r in rows:
            counts[tuple(r[1:])] += r[0]
        return cls(rank, counts)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "weights": [{"mult": m, "coords": list(w)} for w, m in sorted(self._key, reverse=True)],
        }

    @classmethod
    def from_json(cls, data) -> "WeightMultiset":
        if isinstance(data, str):
            data = json.loads(data)
        counts: Counter = Counter()
        for entry in data["weights"]:
            counts[tuple(entry["coords"])] += int(entry["mult"])
        return cls(int(data["rank"]), counts)


def _add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def _same_rank(a: WeightMultiset, b: WeightMultiset) -> None:
    if a.rank != b.rank:
        raise RankMismatch(f"ranks {a.rank} and {b.rank} differ")


def _require_nonempty(w: WeightMultiset) -> None:
    if not len(w):
        raise EmptyMultiset("operation needs a nonempty multiset")


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError("k must be a positive integer")


def lex_max(w: WeightMultiset) -> Weight:
    return w.max()


# ---------------------------------------------------------------------------
# forward constructions


def convolve(a: WeightMultiset, b: WeightMultiset) -> WeightMultiset:
    """Weights of a tensor product: all sums, multiplicities multiplied."""
    _same_rank(a, b)
    out: Counter = Counter()
    for u, m in a.items():
        for v, n in b.items():
            out[_add(u, v)] += m * n
    return WeightMultiset(a.rank, out)


def tensor_power(w: WeightMultiset, k: int) -> WeightMultiset:
    _check_k(k)
    _require_nonempty(w)
    out = w
    for _ in range(k - 1):
        out = convolve(out, w)
    return out


def sym_power(w: WeightMultiset, k: int) -> WeightMultiset:
    """Sums over k-element multisubsets of the n weights (as basis vectors)."""
    _check_k(k)
    _require_nonempty(w)
    basis = list(w)
    zero = (0,) * w.rank
    out: Counter = Counter()
    for combo in itertools.combinations_with_replacement(range(len(basis)), k):
        s = zero
        for i in combo:
            s = _add(s, basis[i])
        out[s] += 1
    return WeightMultiset(w.rank, out)


def ext_power(w: WeightMultiset, k: int) -> WeightMultiset:
    """Sums over k-element subsets of the n weights (as basis vectors)."""
    _check_k(k)
    _require_nonempty(w)
    basis = list(w)
    if k > len(basis):
        raise KTooLarge(f"k={k} exceeds the dimension {len(basis)}")
    zero = (0,) * w.rank
    out: Counter = Counter()
    for combo in itertools.combinations(range(len(basis)), k):
        s = zero
        for i in combo:
            s = _add(s, basis[i])
        out[s] += 1
    return WeightMultiset(w.rank, out)


def dual(w: WeightMultiset) -> WeightMultiset:
    return WeightMultiset(w.rank, {tuple(-x for x in v): m for v, m in w.items()})


def adjoint(w: WeightMultiset) -> WeightMultiset:
    """Weights of End(V) = V* (x) V: all differences."""
    _require_nonempty(w)
    return convolve(w, dual(w))


def multiset_equal(a: WeightMultiset, b: WeightMultiset) -> bool:
    _same_rank(a, b)
    return a == b


# ---------------------------------------------------------------------------
# inverse problems


def _divide(top: Weight, k: int) -> Weight:
    if any(x % k for x in top):
        raise NotDivisible(f"highest weight {top} is not divisible by {k}")
    return tuple(x // k for x in top)


def _sym_count_to_n(size: int, k: int) -> int | None:
    n = 1
    while True:
        c = comb(n + k - 1, k)
        if c == size:
            return n
        if c > size:
            return None
        n += 1


def _int_root(size: int, k: int) -> int | None:
    n = round(size ** (1.0 / k)) if size else 0
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and cand ** k == size:
            return cand
    return None


def _peel(target: WeightMultiset, k: int, n: int, forward, error) -> WeightMultiset:
    """Shared induction for symmetric and tensor powers.

    The highest weight of ``target`` is k times the highest weight.  Once
    the weights ``recovered`` are known, every weight of ``forward(recovered)``
    is accounted for; the highest remaining weight is (k-1)*top + next.
    One weight is recovered per round so repeated weights are handled by
    recomputing the accounted part from scratch.
    """
    top = _divide(target.max(), k)
    recovered = [top]
    shift = tuple((k - 1) * x for x in top)
    while len(recovered) < n:
        known = forward(WeightMultiset(target.rank, recovered), k)
        if not target.contains(known):
            raise error("partial reconstruction is not contained in the input")
        rest = target - known
        if not len(rest):
            raise error("input exhausted before all weights were recovered")
        nxt = tuple(x - s for x, s in zip(rest.max(), shift))
        if nxt > top:
            raise error("recovered weight exceeds the highest weight")
        recovered.append(nxt)
    result = WeightMultiset(target.rank, recovered)
    if forward(result, k) != target:
        raise error("recovered weights do not reproduce the input")
    return result


def recover_from_sym(s: WeightMultiset, k: int, n: int | None = None) -> WeightMultiset:
    """The unique W with ``sym_power(W, k) == s``."""
    _check_k(k)
    _require_nonempty(s)
    size = len(s)
    if n is None:
        n = _sym_count_to_n(size, k)
        if n is None:
            raise NotASymPower(f"{size} is not C(n+{k}-1, {k}) for any n")
    elif comb(n + k - 1, k) != size:
        raise NotASymPower(f"expected C({n}+{k}-1, {k}) = {comb(n + k - 1, k)} weights, got {size}")
    return _peel(s, k, n, sym_power, NotASymPower)


def recover_from_tensor(t: WeightMultiset, k: int, n: int | None = None) -> WeightMultiset:
    """The unique W with ``tensor_power(W, k) == t``."""
    _check_k(k)
    _require_nonempty(t)
    size = len(t)
    if n is None:
        n = _int_root(size, k)
        if n is None:
            raise NotATensorPower(f"{size} is not a perfect {k}-th power")
    elif n ** k != size:
        raise NotATensorPower(f"expected {n}^{k} = {n ** k} weights, got {size}")
    return _peel(t, k, n, tensor_power, NotATensorPower)


SL3_STANDARD = WeightMultiset(2, [(1, 0), (0, 1), (-1, -1)])
