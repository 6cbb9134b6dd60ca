"""Rational factorization: Yun + Zassenhaus, rational roots."""

from __future__ import annotations

import random

import pytest

from torsiongate.errors import DegreeCapExceeded
from torsiongate.factorq import (factor_over_Q, is_irreducible_over_Q, is_prime,
                                 rational_roots, squarefree_decomposition, verify_factorization)
from torsiongate.polyq import PolyQ, QQ, cyclotomic_poly


def P(*coeffs):
    return PolyQ(coeffs)


def test_factor_x3_minus_1():
    assert factor_over_Q(P(-1, 0, 0, 1)) == [(P(-1, 1), 1), (P(1, 1, 1), 1)]


def test_factor_x3_minus_2_irreducible():
    assert factor_over_Q(P(-2, 0, 0, 1)) == [(P(-2, 0, 0, 1), 1)]


def test_factor_division_polynomial_instance():
    # 3x^4 + 12x = 3 * x * (x^3 + 4); x^3 + 4 has no rational root and is
    # irreducible (2-adic Eisenstein-style: the factorization must confirm)
    f = P(0, 12, 0, 0, 3)
    fac = factor_over_Q(f)
    assert fac == [(P(0, 1), 1), (P(4, 0, 0, 1), 1)]
    assert verify_factorization(f, fac)


def test_factor_reconstructs_random_products():
    irreducibles = [P(1, 1), P(-2, 0, 1), P(1, 0, 1), P(1, 1, 1), P(-2, 0, 0, 1),
                    P(2, 0, 1), P(-1, 1), P(1, -1, 1), P(3, 1), P(-3, 0, 1)]
    rng = random.Random(31)
    for _ in range(100):
        f = PolyQ((rng.choice([1, 2, 3, -1]),))
        for _ in range(rng.randint(1, 4)):
            f = f * rng.choice(irreducibles) ** rng.randint(1, 2)
        fac = factor_over_Q(f)
        assert verify_factorization(f, fac)
        for g, _ in fac:
            assert is_irreducible_over_Q(g)


def test_squarefree_decomposition():
    f = P(1, 1) ** 3 * P(-2, 0, 1)
    parts = squarefree_decomposition(f)
    assert parts == [(P(-2, 0, 1), 1), (P(1, 1), 3)]


def test_rational_roots_examples():
    assert rational_roots(P(0, -1, 0, 1)) == {QQ(-1), QQ(0), QQ(1)}
    assert rational_roots(P(-2, 0, 0, 1)) == set()
    assert rational_roots(P(-1, -1, 2)) == {QQ(1), QQ(-1, 2)}


def test_degree_cap_refusal():
    with pytest.raises(DegreeCapExceeded):
        factor_over_Q(PolyQ.monomial(129) - PolyQ.one())


def test_cyclotomic_factor_of_xn_minus_1():
    f = PolyQ.monomial(20) - PolyQ.one()
    fac = factor_over_Q(f)
    assert verify_factorization(f, fac)
    assert sorted(g.degree for g, _ in fac) == sorted(
        cyclotomic_poly(d).degree for d in (1, 2, 4, 5, 10, 20))


def test_is_prime_small():
    assert [p for p in range(2, 30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(561) and is_prime(2 ** 31 - 1)
