"""Exact arithmetic in cyclotomic fields.

A value is a rational polynomial in a primitive root of unity, kept
reduced modulo the corresponding cyclotomic polynomial, so equality and
rationality tests are decidable.  Binary operations promote both sides
to the least common root order first.  Plain ints and Fractions mix
freely with these values.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import cache
from math import gcd

Rational = (int, Fraction)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and any(num):
        while num and not num[-1]:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num.pop()
    while num and not num[-1]:
        num.pop()
    return quot, num


@cache
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in _divisors(n):
        if d == n:
            continue
        quot, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
        assert not rem
        num = quot
    return tuple(num)


def _reduce(coeffs: dict[int, Fraction], order: int) -> tuple[Fraction, ...]:
    """Reduce an exponent dict first mod x^order - 1, then mod Phi_order."""
    dense = [Fraction(0)] * order
    for e, c in coeffs.items():
        dense[e % order] += c
    phi = list(cyclotomic_polynomial(order))
    _, rem = _poly_divmod(dense, phi)
    rem += [Fraction(0)] * (len(phi) - 1 - len(rem))
    return tuple(rem)


class Cyclotomic:
    """An element of the order-n cyclotomic field in reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[int, Fraction]):
        self.order = order
        self.coeffs = _reduce(
            {e: Fraction(c) for e, c in coeffs.items()}, order
        )

    @classmethod
    def root(cls, order: int, exponent: int = 1) -> "Cyclotomic":
        return cls(order, {exponent: Fraction(1)})

    @classmethod
    def from_triples(cls, triples) -> "Cyclotomic":
        """Sum of (root order, exponent, rational coefficient) terms."""
        order = 1
        for root_order, _, _ in triples:
            order = order * root_order // gcd(order, root_order)
        acc: dict[int, Fraction] = {}
        for root_order, exponent, coeff in triples:
            step = order // root_order
            key = (exponent * step) % order
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        return cls(order, acc)

    def _promoted(self, order: int) -> tuple[Fraction, ...]:
        if order == self.order:
            return self.coeffs
        step = order // self.order
        acc: dict[int, Fraction] = {}
        for e, c in enumerate(self.coeffs):
            if c:
                acc[e * step] = c
        return _reduce(acc, order)

    def _pair(self, other):
        if isinstance(other, Rational):
            other = Cyclotomic(1, {0: Fraction(other)})
        if not isinstance(other, Cyclotomic):
            return None
        order = self.order * other.order // gcd(self.order, other.order)
        return order, self._promoted(order), other._promoted(order)

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        order, a, b = pair
        return Cyclotomic(order, {e: x + y for e, (x, y) in enumerate(zip(a, b))})

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, {e: -c for e, c in enumerate(self.coeffs)})

    def __sub__(self, other):
        if isinstance(other, Rational):
            return self + (-Fraction(other))
        if isinstance(other, Cyclotomic):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        order, a, b = pair
        acc: dict[int, Fraction] = {}
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    acc[i + j] = acc.get(i + j, Fraction(0)) + x * y
        return Cyclotomic(order, acc)

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclotomic":
        acc: dict[int, Fraction] = {}
        for e, c in enumerate(self.coeffs):
            if c:
                acc[(-e) % self.order] = acc.get((-e) % self.order, Fraction(0)) + c
        return Cyclotomic(self.order, acc)

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self!r}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Rational):
            return self.is_rational() and self.as_fraction() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        order, a, b = self._pair(other)
        return a == b

    def __complex__(self) -> complex:
        root = cmath.exp(2j * cmath.pi / self.order)
        return complex(sum(float(c) * root**e for e, c in enumerate(self.coeffs)))

    def __repr__(self):
        terms = [f"{c}*z{self.order}^{e}" for e, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def conjugate_value(v):
    """Complex conjugate for mixed rational/cyclotomic values."""
    if isinstance(v, Rational):
        return v
    return v.conjugate()


def value_as_fraction(v) -> Fraction:
    """Coerce a necessarily-rational value to Fraction, or fail loudly."""
    if isinstance(v, Rational):
        return Fraction(v)
    return v.as_fraction()


def value_as_complex(v) -> complex:
    if isinstance(v, Rational):
        return complex(Fraction(v))
    return complex(v)
