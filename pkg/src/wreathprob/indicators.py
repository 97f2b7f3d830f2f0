"""Partial permutations and normalized conjugacy-class indicators.

A partial permutation is a bijection of a finite support inside the
ambient point set, stored as a sorted tuple of (point, image) pairs.
The indicator attached to a tuple of row lengths is the sum over all
injective fillings of those rows by points, each filling contributing
the partial permutation whose cycles are the filled rows (length-one
rows pin fixed points into the support).

Products of indicators expand again in indicators with coefficients not
depending on the number of points; the coefficients are extracted once
at the smallest sufficient point count and cached.  On top of this sit
the conversions between indicators and free cumulants in both
directions, obtained by exact interpolation over small diagrams.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from functools import cache

from .diagrams import free_cumulants, profile_moment
from .partitions import dimension, falling, indicator_scalar, partitions_of

PartialPerm = tuple[tuple[int, int], ...]


def compose(p1: PartialPerm, p2: PartialPerm) -> PartialPerm:
    """Natural product: apply p2 first, then p1, on the union support."""
    m1 = dict(p1)
    m2 = dict(p2)
    support = sorted(m1.keys() | m2.keys())
    out = []
    for a in support:
        b = m2.get(a, a)
        out.append((a, m1.get(b, b)))
    return tuple(out)


def compose_disjoint(p1: PartialPerm, p2: PartialPerm) -> PartialPerm | None:
    """Product that vanishes (None) unless the supports are disjoint."""
    m1 = dict(p1)
    m2 = dict(p2)
    if m1.keys() & m2.keys():
        return None
    return tuple(sorted(p1 + p2))


def cycle_type(pp: PartialPerm) -> tuple[int, ...]:
    """Cycle lengths on the support, fixed points included, descending."""
    mapping = dict(pp)
    seen: set[int] = set()
    lengths = []
    for start in mapping:
        if start in seen:
            continue
        length = 0
        point = start
        while point not in seen:
            seen.add(point)
            point = mapping[point]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def multiplicity_constant(rows: tuple[int, ...]) -> int:
    """Fillings per partial permutation of the given type."""
    mult: dict[int, int] = {}
    prod = 1
    for r in rows:
        mult[r] = mult.get(r, 0) + 1
        prod *= r
    for m in mult.values():
        prod *= math.factorial(m)
    return prod


def expand_indicator(rows: tuple[int, ...], q: int) -> Counter:
    """The indicator on q points as a multiset of partial permutations."""
    size = sum(rows)
    out: Counter = Counter()
    if size > q:
        return out
    for points in itertools.permutations(range(q), size):
        pairs = []
        offset = 0
        for length in rows:
            cyc = points[offset : offset + length]
            for i in range(length):
                pairs.append((cyc[i], cyc[(i + 1) % length]))
            offset += length
        out[tuple(sorted(pairs))] += 1
    return out


@cache
def product_coefficients(mu: tuple[int, ...], nu: tuple[int, ...]) -> dict:
    """Expansion of the natural product of two indicators in indicators.

    Extracted at the smallest point count where nothing truncates; the
    test suite re-checks the same identity at larger point counts.
    """
    mu = tuple(sorted(mu, reverse=True))
    nu = tuple(sorted(nu, reverse=True))
    q0 = sum(mu) + sum(nu)
    left = expand_indicator(mu, q0)
    right = expand_indicator(nu, q0)
    totals: Counter = Counter()
    for p1, c1 in left.items():
        for p2, c2 in right.items():
            totals[cycle_type(compose(p1, p2))] += c1 * c2
    out = {}
    for rho, total in sorted(totals.items()):
        coeff = Fraction(total, falling(q0, sum(rho)))
        if coeff:
            out[rho] = coeff
    return out


class IndicatorSum:
    """Formal rational combination of indicators, closed under products."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for rows, coeff in terms.items():
                key = tuple(sorted(rows, reverse=True))
                val = self.terms.get(key, Fraction(0)) + Fraction(coeff)
                if val:
                    self.terms[key] = val
                elif key in self.terms:
                    del self.terms[key]

    @classmethod
    def indicator(cls, rows: tuple[int, ...]) -> "IndicatorSum":
        return cls({tuple(rows): Fraction(1)})

    @classmethod
    def one(cls) -> "IndicatorSum":
        return cls({(): Fraction(1)})

    def __eq__(self, other) -> bool:
        return isinstance(other, IndicatorSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "IndicatorSum") -> "IndicatorSum":
        out = dict(self.terms)
        for rows, coeff in other.terms.items():
            out[rows] = out.get(rows, Fraction(0)) + coeff
        return IndicatorSum(out)

    def __sub__(self, other: "IndicatorSum") -> "IndicatorSum":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "IndicatorSum":
        return IndicatorSum({rows: Fraction(scalar) * c for rows, c in self.terms.items()})

    def __mul__(self, other) -> "IndicatorSum":
        if not isinstance(other, IndicatorSum):
            return self.__rmul__(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for mu, c1 in self.terms.items():
            for nu, c2 in other.terms.items():
                for rho, g in product_coefficients(mu, nu).items():
                    out[rho] = out.get(rho, Fraction(0)) + c1 * c2 * g
        return IndicatorSum(out)

    def disjoint(self, other: "IndicatorSum") -> "IndicatorSum":
        """Disjoint product: supports forced apart, rows simply concatenate."""
        out: dict[tuple[int, ...], Fraction] = {}
        for mu, c1 in self.terms.items():
            for nu, c2 in other.terms.items():
                rho = tuple(sorted(mu + nu, reverse=True))
                out[rho] = out.get(rho, Fraction(0)) + c1 * c2
        return IndicatorSum(out)

    def scalar_on(self, lam: tuple[int, ...]) -> Fraction:
        """Evaluate as the scalar acting on the irreducible of shape lam."""
        return sum(
            (c * indicator_scalar(lam, rows) for rows, c in self.terms.items()),
            start=Fraction(0),
        )

    def __repr__(self):
        if not self.terms:
            return "IndicatorSum(0)"
        bits = [f"{c}*S{list(rows)}" for rows, c in sorted(self.terms.items())]
        return "IndicatorSum(" + " + ".join(bits) + ")"


def _solve_unique(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Exact solve of a (possibly overdetermined) system; must be consistent
    with a unique solution."""
    rows = [list(r) + [v] for r, v in zip(matrix, rhs)]
    ncols = len(matrix[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [v / lead for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    if rank < ncols:
        raise ValueError("interpolation system is underdetermined")
    for i in range(rank, len(rows)):
        if rows[i][-1]:
            raise ValueError("interpolation system is inconsistent")
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        solution[col] = rows[r][-1]
    return solution


def _monomials_up_to_weight(max_weight: int) -> list[tuple[int, ...]]:
    """Multisets of cumulant indices >= 2, graded by total index weight."""
    out = [()]
    for w in range(2, max_weight + 1):
        out.extend(
            lam
            for lam in partitions_of(w)
            if all(part >= 2 for part in lam)
        )
    return out


def interpolate_in_free_cumulants(values, max_weight: int, max_size: int) -> dict:
    """Express a diagram functional exactly in free-cumulant monomials.

    ``values`` maps a diagram to a Fraction; the fit runs over all
    diagrams of size at most ``max_size`` and demands a unique exact
    solution among monomials of weight at most ``max_weight``.
    """
    monomials = _monomials_up_to_weight(max_weight)
    diagrams = [lam for n in range(max_size + 1) for lam in partitions_of(n)]
    matrix = []
    rhs = []
    for lam in diagrams:
        cumulants = free_cumulants(lam, max(max_weight, 2))
        row = []
        for mono in monomials:
            prod = Fraction(1)
            for idx in mono:
                prod *= cumulants[idx - 1]
            row.append(prod)
        matrix.append(row)
        rhs.append(Fraction(values(lam)))
    solution = _solve_unique(matrix, rhs)
    return {m: c for m, c in zip(monomials, solution) if c}


@cache
def indicator_in_free_cumulants(l: int) -> dict:
    """The one-row indicator of length l as a free-cumulant polynomial."""
    if l == 0:
        return {(): Fraction(1)}
    return interpolate_in_free_cumulants(
        lambda lam: indicator_scalar(lam, (l,)), l + 1, l + 2
    )


@cache
def profile_moment_in_free_cumulants(k: int) -> dict:
    """The k-th profile power sum as a free-cumulant polynomial."""
    return interpolate_in_free_cumulants(
        lambda lam: profile_moment(lam, k), k, k + 2
    )


@cache
def free_cumulant_as_indicators(n: int) -> IndicatorSum:
    """Free cumulant R_n written back as a combination of indicators."""
    if n == 1:
        return IndicatorSum()
    expansion = indicator_in_free_cumulants(n - 1)
    assert expansion.get((n,)) == 1, "leading Kerov term must be R_(l+1)"
    out = IndicatorSum.indicator((n - 1,))
    for mono, coeff in expansion.items():
        if mono == (n,):
            continue
        prod = IndicatorSum.one()
        for idx in mono:
            prod = prod * free_cumulant_as_indicators(idx)
        out = out - coeff * prod
    return out


@cache
def profile_moment_as_indicators(k: int) -> IndicatorSum:
    """The k-th profile power sum as a combination of indicators."""
    out = IndicatorSum()
    for mono, coeff in profile_moment_in_free_cumulants(k).items():
        prod = IndicatorSum.one()
        for idx in mono:
            prod = prod * free_cumulant_as_indicators(idx)
        out = out + coeff * prod
    return out
