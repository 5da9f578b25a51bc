"""Small dense matrices over exact scalars (int, Fraction, Cyclotomic).

Matrices are tuples of row tuples.  Zero entries are skipped in products,
which keeps monomial matrices (the common case here) cheap.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic, parse_cyclotomic

Matrix = tuple[tuple, ...]


def freeze(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def diagonal(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def scalar(c, n: int) -> Matrix:
    return diagonal([c] * n)


def mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = [0] * p
        for t in range(k):
            x = a[i][t]
            if not x:
                continue
            bt = b[t]
            for j in range(p):
                y = bt[j]
                if y:
                    row[j] = row[j] + x * y
        out.append(tuple(row))
    return tuple(out)


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x if x else 0 for x in row) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def equal(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(len(r) == len(s) and all(x == y for x, y in zip(r, s)) for r, s in zip(a, b))


def is_zero(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def trace(a: Matrix):
    total = 0
    for i in range(len(a)):
        if a[i][i]:
            total = a[i][i] + total
    return total


def is_diagonal(a: Matrix) -> bool:
    return all(not a[i][j] for i in range(len(a)) for j in range(len(a)) if i != j)


def is_scalar(a: Matrix) -> bool:
    return is_diagonal(a) and all(a[i][i] == a[0][0] for i in range(len(a)))


def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y if x and y else 0 for x in ra for y in rb))
    return tuple(rows)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return freeze(out)


def _field_div(x, y):
    if isinstance(x, Cyclotomic) or isinstance(y, Cyclotomic):
        return Cyclotomic.coerce(x) * Cyclotomic.coerce(y).inverse()
    return Fraction(x) / Fraction(y)


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the scalar field; ZeroDivisionError if singular."""
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [_field_div(x, piv) if x else 0 for x in aug[c]]
        for r in range(n):
            f = aug[r][c]
            if r != c and f:
                aug[r] = [x - f * y if y else x for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(_simplify(x) for x in row[n:]) for row in aug)


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def parse_matrix(rows: Sequence[Sequence], conductor: int) -> Matrix:
    """Entries may be numbers or cyclotomic literals such as ``"1 + 2*z^3"``."""
    out = []
    for row in rows:
        parsed = []
        for x in row:
            if isinstance(x, (int, Fraction)):
                parsed.append(x)
            else:
                z = parse_cyclotomic(str(x), conductor)
                # keep rationals as plain numbers: products stay cheap
                parsed.append(z.coeffs[0] if z.is_rational() else z)
        out.append(parsed)
    n = len(out)
    if any(len(r) != n for r in out):
        raise ValueError("representation matrices must be square")
    return freeze(out)


def format_scalar(x) -> str:
    if isinstance(x, Cyclotomic):
        if x.is_rational():
            return str(x.coeffs[0])
        return str(x)
    return str(x)


def format_matrix(a: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in a]
