"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored by its coefficients in the power basis
1, z, ..., z^(phi(m)-1) of Q(zeta_m), i.e. reduced modulo the m-th
cyclotomic polynomial, so equality at a fixed conductor is coefficient
equality.  Elements of different conductors are compared and combined
after lifting both to the lcm.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    # x^m - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse power-basis coordinates of z^j for j in [0, m)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by z, then reduce the z^deg term with the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class Cyclotomic:
    """An element of Q(zeta_m) with ``zeta_m = exp(2 pi i / m)``."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable):
        coeffs = tuple(_norm(c) for c in coeffs)
        if len(coeffs) != totient(m):
            raise ValueError(f"Q(zeta_{m}) elements need {totient(m)} coefficients")
        self.m = m
        self.coeffs = coeffs

    # constructors ------------------------------------------------------------

    @classmethod
    def from_exponents(cls, m: int, terms: Mapping[int, object] | Iterable[tuple[int, object]]) -> "Cyclotomic":
        """sum of c * z^j over the given (j, c) pairs."""
        table = _reduction_table(m)
        acc = [0] * totient(m)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for j, c in items:
            if c:
                for i, v in table[j % m]:
                    acc[i] += c * v
        return cls(m, acc)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclotomic":
        return cls.from_exponents(m, {k % m: 1})

    @classmethod
    def rational(cls, q, m: int = 1) -> "Cyclotomic":
        return cls(m, [q] + [0] * (totient(m) - 1))

    @classmethod
    def coerce(cls, x, m: int = 1) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, Rational):
            return cls.rational(x, m)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # structure ---------------------------------------------------------------

    def lift(self, big: int) -> "Cyclotomic":
        if big == self.m:
            return self
        if big % self.m:
            raise ValueError(f"cannot lift conductor {self.m} to {big}")
        step = big // self.m
        return Cyclotomic.from_exponents(big, ((i * step, c) for i, c in enumerate(self.coeffs)))

    def _common(self, other):
        if isinstance(other, Cyclotomic):
            if other.m == self.m:
                return self, other
            big = lcm(self.m, other.m)
            return self.lift(big), other.lift(big)
        if isinstance(other, Rational):
            return self, Cyclotomic.rational(other, self.m)
        return None, None

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def conjugate(self) -> "Cyclotomic":
        m = self.m
        full = {}
        for i, c in enumerate(self.coeffs):
            if c:
                full[(-i) % m] = c
        return Cyclotomic.from_exponents(m, full)

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_m -> zeta_m^k (k coprime to m)."""
        if gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.m}")
        return Cyclotomic.from_exponents(self.m, {(i * k) % self.m: c for i, c in enumerate(self.coeffs) if c})

    def __complex__(self) -> complex:
        import cmath

        return sum(complex(c) * cmath.exp(2j * cmath.pi * i / self.m) for i, c in enumerate(self.coeffs))

    def abs2(self) -> Fraction:
        """z * conj(z) as a rational; raises ValueError if it is not rational."""
        return (self * self.conjugate()).to_rational()

    # arithmetic ----------------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses conductors; no stable hash

    def __neg__(self):
        return Cyclotomic(self.m, (-c for c in self.coeffs))

    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.m, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.m, (x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if other == 1:
                return self
            return Cyclotomic(self.m, (c * other for c in self.coeffs))
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        m = a.m
        table = _reduction_table(m)
        acc = [0] * len(a.coeffs)
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in bnz:
                xy = x * y
                for k, v in table[(i + j) % m]:
                    acc[k] += xy * v
        return Cyclotomic(m, acc)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.rational(Fraction(1) / Fraction(self.coeffs[0]), self.m)
        # solve (multiplication by self) x = 1 over Q
        n = len(self.coeffs)
        cols = []
        for j in range(n):
            basis = Cyclotomic(self.m, [int(i == j) for i in range(n)])
            cols.append((self * basis).coeffs)
        aug = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if aug[r][c])
            aug[c], aug[p] = aug[p], aug[c]
            piv = aug[c][c]
            aug[c] = [x / piv for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Cyclotomic(self.m, (row[-1] for row in aug))

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return Cyclotomic(self.m, (Fraction(c) / other for c in self.coeffs))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other, self.m) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # text ------------------------------------------------------------------------

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            terms.append(str(c) if i == 0 else f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Cyclotomic({self.m}, {self})"


_TERM = re.compile(r"^(?P<coef>[+-]?\s*(\d+(/\d+)?)?)\s*\*?\s*(?P<z>z(\^\s*(?P<exp>\d+))?)?$")


def parse_cyclotomic(text: str, m: int) -> Cyclotomic:
    """Parse literals like ``"1/2 + 3*z^2 - z"`` in Q(zeta_m)."""
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    s = s.replace("-", "+-")
    terms: dict[int, Fraction] = {}
    for tok in filter(None, s.split("+")):
        match = _TERM.match(tok)
        if not match or (not match.group("z") and match.group("coef") in ("", "-")):
            raise ValueError(f"cannot parse term {tok!r}")
        coef_txt = match.group("coef")
        if coef_txt in ("", "+"):
            coef = Fraction(1)
        elif coef_txt == "-":
            coef = Fraction(-1)
        else:
            coef = Fraction(coef_txt)
        exp = 0
        if match.group("z"):
            exp = int(match.group("exp") or 1)
        terms[exp % m] = terms.get(exp % m, Fraction(0)) + coef
    return Cyclotomic.from_exponents(m, terms)


def root_of_unity_exponent(z, max_order: int | None = None) -> tuple[int, int] | None:
    """Return (k, n) with z = zeta_n^k for the least such n, or None."""
    z = Cyclotomic.coerce(z)
    base = lcm(z.m, 2)
    limit = max_order or base
    for n in range(1, limit + 1):
        if base % n and max_order is None:
            continue
        big = lcm(base, n)
        zz = z.lift(big)
        for k in range(n):
            if gcd(k, n) == 1 or n == 1:
                if Cyclotomic.zeta(big, k * (big // n)) == zz:
                    return k % n if n > 1 else 0, n
    return None
