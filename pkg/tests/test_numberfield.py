"""Number fields: arithmetic, Trager factorization, composita, square roots."""

from __future__ import annotations

import random

import pytest

from torsiongate.errors import DegreeCapExceeded, ReduciblePolynomialError
from torsiongate.numberfield import (Embedding, NumberField, PolyNF, QQ_FIELD, compositum,
                                     extend_by_factor, extension_degree, factor_over_nf,
                                     field_automorphisms, is_galois_over_Q, is_square,
                                     minimal_polynomial, nf_create, roots_in_field,
                                     roots_of_nf_poly, splitting_field)
from torsiongate.polyq import PolyQ, QQ, cyclotomic_poly


def P(*coeffs):
    return PolyQ(coeffs)


QI = nf_create(P(1, 0, 1), "Q(i)")
CBRT2 = nf_create(P(-2, 0, 0, 1), "Q(2^(1/3))")
SQRT5 = nf_create(P(-5, 0, 1), "Q(sqrt5)")


# ----- construction -----

def test_create_degree_one_collapses_to_Q():
    assert nf_create(P(-1, 1)) is QQ_FIELD
    assert QQ_FIELD.degree == 1


def test_create_rejects_reducible():
    with pytest.raises(ReduciblePolynomialError):
        nf_create(P(0, -1, 1))  # x^2 - x


def test_create_rejects_non_monic():
    with pytest.raises(ValueError):
        nf_create(P(1, 0, 2))


def test_degree_cap_enforced():
    with pytest.raises(DegreeCapExceeded):
        nf_create(cyclotomic_poly(71), degree_cap=64)  # degree 70


# ----- element arithmetic -----

def test_invert_examples():
    i = QI.gen
    assert (QI.one + i).inv() == (QI.one - i) * QQ(1, 2)
    assert QQ_FIELD.from_rational(QQ(3, 2)).inv() == QQ_FIELD.from_rational(QQ(2, 3))
    th = CBRT2.gen
    assert th.inv() == th * th * QQ(1, 2)


def test_invert_random_elements():
    rng = random.Random(17)
    fields = [QI, CBRT2, SQRT5,
              nf_create(P(1, 1, 1, 1, 1), "Q(zeta5)"),
              nf_create(P(-2, 0, 0, 0, 0, 0, 1), "Q(2^(1/6))")]
    done = 0
    while done < 100:
        K = rng.choice(fields)
        e = K.element([QQ(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(K.degree)])
        if e.is_zero:
            continue
        assert e * e.inv() == K.one
        done += 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        QI.zero.inv()


# ----- minimal polynomials -----

def test_minimal_polynomial_examples():
    assert minimal_polynomial(CBRT2.gen) == P(-2, 0, 0, 1)
    assert minimal_polynomial(QI.from_rational(QQ(1, 2))) == P(QQ(-1, 2), 1)
    assert minimal_polynomial(CBRT2.gen ** 2) == P(-4, 0, 0, 1)


def test_minimal_polynomial_invariants():
    rng = random.Random(3)
    for K in (QI, CBRT2, SQRT5):
        for _ in range(5):
            a = K.element([rng.randint(-4, 4) for _ in range(K.degree)])
            mp = minimal_polynomial(a)
            assert K.degree % mp.degree == 0
            acc = K.zero
            for c in reversed(mp.coeffs):
                acc = acc * a + K.from_rational(c)
            assert acc.is_zero


# ----- factorization over fields -----

def test_factor_x2_plus_1_over_Qi():
    f = PolyNF.from_polyq(QI, P(1, 0, 1))
    factors = factor_over_nf(f)
    assert [g.degree for g, _ in factors] == [1, 1]
    prod = PolyNF.one(QI)
    for g, m in factors:
        prod = prod * g ** m
    assert prod == f


def test_factor_x3_minus_2_over_its_field():
    f = PolyNF.from_polyq(CBRT2, P(-2, 0, 0, 1))
    factors = factor_over_nf(f)
    assert sorted(g.degree for g, _ in factors) == [1, 2]
    quad = [g for g, _ in factors if g.degree == 2][0]
    assert not roots_of_nf_poly(quad)  # claimed irreducible: no roots in the field


def test_factor_phi5_over_sqrt5():
    f = PolyNF.from_polyq(SQRT5, cyclotomic_poly(5))
    assert sorted(g.degree for g, _ in factor_over_nf(f)) == [2, 2]


# ----- roots in fields -----

def test_roots_in_field_examples():
    roots = roots_in_field(P(-2, 0, 0, 1), CBRT2)
    assert roots == {CBRT2.gen}
    K = nf_create(P(-2, 0, 1))
    assert roots_in_field(P(-2, 0, 1), K) == {K.gen, -K.gen}
    assert {r.as_fraction() for r in roots_in_field(P(0, -1, 0, 1), QQ_FIELD)} == {-1, 0, 1}


def test_roots_evaluate_to_zero():
    f = P(-2, 0, 1) * P(1, 1) * P(1, 0, 1)
    for K in (QI, nf_create(P(-2, 0, 1))):
        for r in roots_in_field(f, K):
            acc = K.zero
            for c in reversed(f.coeffs):
                acc = acc * r + K.from_rational(c)
            assert acc.is_zero


# ----- squares -----

def test_is_square_examples():
    w = is_square(QI.from_rational(-4))
    assert w is not None and w * w == QI.from_rational(-4)
    assert is_square(QQ_FIELD.from_rational(2)) is None
    w5 = is_square(SQRT5.from_rational(5))
    assert w5 is not None and w5 * w5 == SQRT5.from_rational(5)
    assert is_square(QI.zero) == QI.zero


def test_is_square_random_roundtrip():
    rng = random.Random(41)
    K = nf_create(P(3, 0, 1, 1), "cubic")
    for _ in range(15):
        e = K.element([rng.randint(-5, 5) for _ in range(3)])
        if e.is_zero:
            continue
        w = is_square(e * e)
        assert w is not None and w * w == e * e


# ----- composita -----

def test_compositum_qi_sqrt2():
    L, emb, root = compositum(QI, P(-2, 0, 1))
    assert L.defining_poly == P(9, 0, -2, 0, 1)
    assert root * root == L.from_rational(2)
    # the embedding must send i to a square root of -1
    img = emb.apply(QI.gen)
    assert img * img == L.from_rational(-1)


def test_compositum_trivial_and_cyclotomic():
    L, _, root = compositum(QQ_FIELD, P(1, 1, 1))
    assert L.degree == 2
    acc = root * root + root + L.one
    assert acc.is_zero
    L2, _, _ = compositum(SQRT5, cyclotomic_poly(5))
    assert L2.degree == 4


def test_compositum_root_minpoly_divides_input():
    L, emb, root = compositum(QI, P(-3, 0, 1))
    mp = minimal_polynomial(root)
    assert (P(-3, 0, 1) % mp).is_zero


def test_extension_degree():
    assert extension_degree(Embedding.from_rationals(QI)) == 2
    assert extension_degree(Embedding.identity(CBRT2)) == 1
    L, emb, _ = compositum(SQRT5, cyclotomic_poly(5))
    assert extension_degree(emb) == 2


# ----- splitting fields and automorphisms -----

def test_splitting_field_x3_minus_2():
    N, roots = splitting_field(P(-2, 0, 0, 1))
    assert N.degree == 6 and len(roots) == 3
    for r in roots:
        assert (r ** 3).is_rational_value and (r ** 3).as_fraction() == 2


def test_galois_recognition():
    assert not is_galois_over_Q(CBRT2)
    assert is_galois_over_Q(nf_create(P(-1, -3, 0, 1)))
    assert is_galois_over_Q(QI)
    assert len(field_automorphisms(QI)) == 2
