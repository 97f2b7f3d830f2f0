"""Independent reference implementations used only by the test suite.

Everything here is deliberately written from different first principles
than the library (pentagonal-number recurrences, branching rules,
permutation modules, seminormal matrices) so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cache


# ---------------------------------------------------------------- partitions


@cache
def partition_count_pentagonal(n: int) -> int:
    """p(n) via Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * (partition_count_pentagonal(n - g1) + partition_count_pentagonal(n - g2))
        k += 1
    return total


def removable_corners(lam: tuple[int, ...]) -> list[int]:
    return [
        i
        for i in range(len(lam))
        if i == len(lam) - 1 or lam[i] > lam[i + 1]
    ]


@cache
def dimension_branching(lam: tuple[int, ...]) -> int:
    """Standard tableau count via the branching rule, no hook lengths."""
    if sum(lam) == 0:
        return 1
    total = 0
    for i in removable_corners(lam):
        if lam[i] == 1:
            smaller = lam[:i]
        else:
            smaller = lam[:i] + (lam[i] - 1,) + lam[i + 1 :]
        total += dimension_branching(smaller)
    return total


# ------------------------------------------------- permutation-module route


def _cycle_multiplicities(mu: tuple[int, ...]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in mu:
        out[part] = out.get(part, 0) + 1
    return out


@cache
def permutation_module_character(nu: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Character of the Young permutation module M^nu at cycle type mu.

    Counts ordered assignments of the cycles of a type-mu permutation to
    blocks of sizes nu, each block's cycle lengths summing to its size.
    """
    if sum(nu) != sum(mu):
        raise ValueError("size mismatch")
    lengths = sorted(_cycle_multiplicities(mu).items())

    def assign(slot: int, remaining: tuple[tuple[int, int], ...]) -> int:
        if slot == len(nu):
            return 1 if all(m == 0 for _, m in remaining) else 0
        target = nu[slot]
        total = 0
        # choose how many cycles of each length go into this slot
        choices = [range(m + 1) for _, m in remaining]
        for take in itertools.product(*choices):
            if sum(t * length for t, (length, _) in zip(take, remaining)) != target:
                continue
            ways = 1
            for t, (_, m) in zip(take, remaining):
                ways *= math.comb(m, t)
            rest = tuple(
                (length, m - t) for t, (length, m) in zip(take, remaining)
            )
            total += ways * assign(slot + 1, rest)
        return total

    return assign(0, tuple(lengths))


def _all_partitions(n: int, max_part: int | None = None):
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in _all_partitions(n - first, first):
            yield (first,) + rest


@cache
def symmetric_character_table(n: int) -> dict[tuple, dict[tuple, int]]:
    """Full character table of the degree-n symmetric group, by Gram-Schmidt.

    Permutation-module characters are orthogonalized in lex-descending
    order (which refines dominance), peeling off previously found
    irreducibles; the leading term has coefficient one, so the result is
    exactly the irreducible character table.
    """
    shapes = list(_all_partitions(n))
    classes = shapes
    weights = {
        mu: Fraction(math.factorial(n), _centralizer_order(mu)) for mu in classes
    }
    norm = Fraction(1, math.factorial(n))

    def inner(a: dict, b: dict) -> Fraction:
        return norm * sum(weights[mu] * a[mu] * b[mu] for mu in classes)

    table: dict[tuple, dict[tuple, int]] = {}
    for nu in shapes:  # lex-descending: dominating shapes come first
        psi = {mu: Fraction(permutation_module_character(nu, mu)) for mu in classes}
        for lam, chi in table.items():
            coeff = inner(psi, chi)
            if coeff:
                psi = {mu: psi[mu] - coeff * chi[mu] for mu in classes}
        assert inner(psi, psi) == 1, f"Gram-Schmidt residue not irreducible at {nu}"
        table[nu] = {mu: int(psi[mu]) for mu in classes}
        assert all(v.denominator == 1 for v in psi.values())
    return table


def _centralizer_order(mu: tuple[int, ...]) -> int:
    z = 1
    for length, m in _cycle_multiplicities(mu).items():
        z *= length**m * math.factorial(m)
    return z


# -------------------------------------------------------- seminormal route


@cache
def standard_tableaux(lam: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All standard Young tableaux of the given shape, as row tuples."""
    n = sum(lam)
    if n == 0:
        return ((),)
    out = []
    for i in removable_corners(lam):
        if lam[i] == 1:
            smaller = lam[:i]
        else:
            smaller = lam[:i] + (lam[i] - 1,) + lam[i + 1 :]
        for t in standard_tableaux(smaller):
            rows = [list(r) for r in t]
            while len(rows) <= i:
                rows.append([])
            rows[i].append(n)
            out.append(tuple(tuple(r) for r in rows))
    return tuple(sorted(out))


def _letter_position(t, letter: int) -> tuple[int, int]:
    for i, row in enumerate(t):
        for j, entry in enumerate(row):
            if entry == letter:
                return i, j
    raise ValueError(f"{letter} not in tableau")


def _swap_letters(t, a: int, b: int):
    return tuple(
        tuple(b if e == a else a if e == b else e for e in row) for row in t
    )


@cache
def seminormal_generator(lam: tuple[int, ...], m: int):
    """Matrix of the adjacent transposition (m, m+1) in seminormal form."""
    basis = standard_tableaux(lam)
    index = {t: k for k, t in enumerate(basis)}
    size = len(basis)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for col, t in enumerate(basis):
        (ri, ci) = _letter_position(t, m)
        (rj, cj) = _letter_position(t, m + 1)
        axial = (cj - rj) - (ci - ri)
        if axial == 1 and ri == rj:
            mat[col][col] = Fraction(1)
        elif axial == -1 and ci == cj:
            mat[col][col] = Fraction(-1)
        else:
            other = index[_swap_letters(t, m, m + 1)]
            mat[col][col] = Fraction(1, axial)
            if axial > 0:
                mat[other][col] = Fraction(1)
            else:
                mat[other][col] = 1 - Fraction(1, axial**2)
    return tuple(tuple(row) for row in mat)


def matrix_multiply(a, b):
    size = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size))
        for i in range(size)
    )


def identity_matrix(size: int):
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(size))
        for i in range(size)
    )


def seminormal_image(lam: tuple[int, ...], perm: tuple[int, ...]):
    """Matrix of a permutation (one-line, 0-indexed) in seminormal form."""
    word = []
    line = list(perm)
    # bubble sort records an adjacent-transposition word for the inverse
    changed = True
    while changed:
        changed = False
        for i in range(len(line) - 1):
            if line[i] > line[i + 1]:
                line[i], line[i + 1] = line[i + 1], line[i]
                word.append(i + 1)  # letters are 1-based
                changed = True
    # perm = product of the recorded transpositions in reverse order
    mat = identity_matrix(len(standard_tableaux(lam)))
    for m in reversed(word):
        mat = matrix_multiply(seminormal_generator(lam, m), mat)
    return mat


def matrix_trace(mat) -> Fraction:
    return sum(mat[i][i] for i in range(len(mat)))


# ------------------------------------------------------------ set partitions


def set_partitions_rgs(n: int):
    """All set partitions of range(n) via restricted growth strings."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, maxval: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(maxval + 1)]
            for pos, b in enumerate(rgs):
                blocks[b].append(pos)
            yield tuple(tuple(b) for b in blocks)
            return
        for v in range(maxval + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxval, v))

    yield from rec(1, 0)


def is_noncrossing(blocks) -> bool:
    for b1, b2 in itertools.combinations(blocks, 2):
        for a, c in itertools.combinations(sorted(b1), 2):
            inside = any(a < b < c for b in b2)
            outside = any(b < a or b > c for b in b2)
            if inside and outside:
                return False
    return True


def noncrossing_partitions(n: int):
    return [p for p in set_partitions_rgs(n) if is_noncrossing(p)]
