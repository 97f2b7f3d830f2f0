"""Cyclotomic arithmetic: reduction, promotion, conjugation."""

import cmath
from fractions import Fraction

import pytest

from wreathprob.cyclotomics import (
    Cyclotomic,
    conjugate_value,
    cyclotomic_polynomial,
    value_as_fraction,
)


def test_cyclotomic_polynomials_frozen():
    f = Fraction
    assert cyclotomic_polynomial(1) == (f(-1), f(1))
    assert cyclotomic_polynomial(2) == (f(1), f(1))
    assert cyclotomic_polynomial(3) == (f(1), f(1), f(1))
    assert cyclotomic_polynomial(4) == (f(1), f(0), f(1))
    assert cyclotomic_polynomial(6) == (f(1), f(-1), f(1))
    assert cyclotomic_polynomial(12) == (f(1), f(0), f(-1), f(0), f(1))


def test_root_relations():
    z3 = Cyclotomic.root(3)
    assert z3 * z3 + z3 + 1 == 0
    z4 = Cyclotomic.root(4)
    assert z4 * z4 == -1
    z6 = Cyclotomic.root(6)
    assert z6 * z6 * z6 == -1
    assert Cyclotomic.root(2) == -1
    assert Cyclotomic.root(1) == 1


def test_promotion_identifies_equal_values_across_orders():
    assert Cyclotomic.root(6, 3) == Cyclotomic.root(2)
    assert Cyclotomic.root(6, 2) == Cyclotomic.root(3)
    assert Cyclotomic.root(12, 4) == Cyclotomic.root(3)
    assert Cyclotomic.root(4) != Cyclotomic.root(3)


def test_mixed_arithmetic_with_rationals():
    z5 = Cyclotomic.root(5)
    total = z5 + z5 * z5 + z5 * z5 * z5 + z5 * z5 * z5 * z5
    assert total == -1
    assert (1 + total) == 0
    assert value_as_fraction(total + Fraction(3, 2)) == Fraction(1, 2)
    assert 2 * z5 - z5 - z5 == 0


def test_conjugation_and_modulus():
    for order in (3, 4, 5, 7, 12):
        for exp in range(order):
            z = Cyclotomic.root(order, exp)
            assert z * conjugate_value(z) == 1
    z7 = Cyclotomic.root(7)
    real_part = z7 + z7.conjugate()
    assert real_part.is_real()
    assert not real_part.is_rational()
    assert not z7.is_real()


def test_rationality_detection():
    z3 = Cyclotomic.root(3)
    assert not z3.is_rational()
    with pytest.raises(ValueError):
        z3.as_fraction()
    assert value_as_fraction(Fraction(2, 3)) == Fraction(2, 3)
    assert value_as_fraction(5) == 5


def test_from_triples():
    v = Cyclotomic.from_triples([(3, 1, 1), (3, 2, 1)])
    assert v == -1
    w = Cyclotomic.from_triples([(4, 1, 2), (1, 0, 3)])
    assert w == 3 + 2 * Cyclotomic.root(4)
    assert Cyclotomic.from_triples([(1, 0, Fraction(1, 2))]) == Fraction(1, 2)


def test_numeric_embedding_agrees():
    z12 = Cyclotomic.root(12)
    value = 2 * z12 + z12 * z12 - 3
    expected = 2 * cmath.exp(2j * cmath.pi / 12) + cmath.exp(4j * cmath.pi / 12) - 3
    assert abs(complex(value) - expected) < 1e-12
