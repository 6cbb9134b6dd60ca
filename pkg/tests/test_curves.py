"""Curves: models, group law, division polynomials, torsion, reduction."""

from __future__ import annotations

import random

import pytest

from torsiongate.curves import (Curve, CurvePoint, add, count_points, division_poly,
                                ell_power_torsion, frobenius_trace, mul_scalar, point_order,
                                reduce_curve, reduced_short_model, saturate,
                                to_short_weierstrass, torsion_bound, torsion_subgroup)
from torsiongate.errors import BadReductionError, SingularCurveError
from torsiongate.numberfield import Embedding, QQ_FIELD, nf_create, roots_in_field
from torsiongate.polyq import PolyQ, QQ, cyclotomic_poly

Q = QQ_FIELD
E_X3P1 = Curve(Q, [0, 0, 0, 0, 1])     # y^2 = x^3 + 1
E_X3MX = Curve(Q, [0, 0, 0, -1, 0])    # y^2 = x^3 - x
E_11A1 = Curve(Q, [0, -1, 1, -10, -20])


# ----- models -----

def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        Curve(Q, [0, 0, 0, 0, 0])  # y^2 = x^3


def test_short_model_idempotent_on_short_curves():
    sm = to_short_weierstrass(E_X3P1)
    assert sm.short_curve == E_X3P1


def test_short_model_of_11a1_golden():
    # standard substitution with u = 6: A = -27 c4, B = -54 c6
    sm = to_short_weierstrass(E_11A1)
    s = sm.short_curve
    assert s.a4.as_fraction() == -13392
    assert s.a6.as_fraction() == -1080432
    assert s.j_invariant() == E_11A1.j_invariant()
    # the point transform respects the group structure
    P = E_11A1.point(5, 5)
    Ps = sm.to_short(P)
    assert Ps.on_curve()
    assert sm.from_short(Ps) == P


def test_reduced_model_is_isomorphic():
    for E in (E_11A1, Curve(Q, [0, 0, 1, -1, 0]), E_X3MX):
        rm = reduced_short_model(E)
        assert rm.short_curve.j_invariant() == E.j_invariant()


# ----- group law -----

def test_add_examples():
    P = E_X3P1.point(2, 3)
    Qp = E_X3P1.point(0, 1)
    assert add(P, Qp) == E_X3P1.point(-1, 0)
    assert add(P, E_X3P1.infinity) == P
    assert add(E_X3P1.point(0, 1), E_X3P1.point(0, -1)).is_infinity


def test_mul_scalar_examples():
    P = E_X3P1.point(2, 3)
    assert mul_scalar(2, P) == E_X3P1.point(0, 1)
    assert mul_scalar(0, P).is_infinity
    assert mul_scalar(6, P).is_infinity
    assert point_order(P) == 6


def _torsion_points(curve) -> list:
    data = torsion_subgroup(curve)
    return [P for P in data.group_elements() if not P.is_infinity]


def test_group_law_associativity_and_commutativity():
    pts = _torsion_points(E_X3P1) + _torsion_points(E_X3MX) + _torsion_points(E_11A1)
    rng = random.Random(2)
    for _ in range(50):
        P, Qp, R = (rng.choice(pts) for _ in range(3))
        if P.curve != Qp.curve or Qp.curve != R.curve:
            continue
        assert add(add(P, Qp), R) == add(P, add(Qp, R))
    for _ in range(100):
        P, Qp = (rng.choice(pts) for _ in range(2))
        if P.curve != Qp.curve:
            continue
        assert add(P, Qp) == add(Qp, P)


def test_neg_and_inverse_law():
    for P in _torsion_points(E_11A1):
        assert add(P, -P).is_infinity


def test_mul_matches_repeated_addition():
    pts = _torsion_points(E_X3P1) + _torsion_points(E_X3MX)
    rng = random.Random(9)
    for _ in range(40):
        P = rng.choice(pts)
        acc = P.curve.infinity
        for n in range(21):
            assert mul_scalar(n, P) == acc
            acc = add(acc, P)


# ----- division polynomials -----

def test_division_poly_cubic_generic():
    # psi_3 = 3x^4 + 6ax^2 + 12bx - a^2
    E = Curve(Q, [0, 0, 0, -1, 2])
    f = division_poly(3, E)
    assert f.to_polyq() == PolyQ([-1, 24, -6, 0, 3])
    assert division_poly(3, E_X3P1).to_polyq() == PolyQ([0, 12, 0, 0, 3])


def test_division_poly_even_convention():
    # even n carries the 2-torsion cubic as a factor; n = 2 is the cubic itself
    assert division_poly(2, E_X3MX).to_polyq() == PolyQ([0, -1, 0, 1])


def test_division_poly_degrees():
    for n in (3, 5, 7, 9):
        assert division_poly(n, E_X3P1).degree == (n * n - 1) // 2


def test_division_poly_vanishing_iff_killed():
    # both directions on every torsion point of a few curves, n <= 9
    for E in (E_X3P1, E_X3MX, E_11A1, Curve(Q, [1, -1, 1, -3, 3])):
        rm = reduced_short_model(E)
        short = rm.short_curve
        pts = [rm.to_short(P) for P in _torsion_points(E)]
        for P in pts:
            for n in range(1, 10):
                psi = division_poly(n, short)
                vanishes = psi.evaluate(P.x).is_zero
                killed = mul_scalar(n, P).is_infinity
                assert vanishes == killed, (n, P)


# ----- counting and bounds -----

def test_count_points_examples():
    assert count_points(reduce_curve(E_X3P1, 5)) == 6
    assert count_points(reduce_curve(E_X3P1, 7)) == 12


def test_frobenius_traces():
    assert frobenius_trace(E_X3P1, 5) == 0
    assert frobenius_trace(E_X3P1, 7) == -4
    for p in (5, 7, 13, 17):  # 11 is the conductor: bad reduction
        assert abs(frobenius_trace(E_11A1, p)) <= 2 * int(p ** 0.5) + 1


def test_bad_reduction_rejected():
    with pytest.raises(BadReductionError):
        reduce_curve(E_11A1, 11)


def test_torsion_bound_examples():
    assert torsion_bound(E_X3P1) == 6
    assert torsion_bound(E_X3MX) % 4 == 0
    for E in (E_X3P1, E_X3MX, E_11A1):
        t = torsion_subgroup(E)
        assert torsion_bound(E) % t.order == 0


# ----- torsion -----

def test_ell_power_torsion_examples():
    ident = Embedding.identity(Q)
    t3 = ell_power_torsion(E_X3P1, ident, 3, 1)
    assert t3.structure() == "Z/3"
    t2 = ell_power_torsion(E_X3MX, ident, 2, 1)
    assert t2.structure() == "Z/2 + Z/2"
    t2b = ell_power_torsion(Curve(Q, [0, 0, 0, 0, -2]), ident, 2, 1)
    assert t2b.order == 1


def test_torsion_subgroup_examples():
    t = torsion_subgroup(E_X3P1)
    assert t.structure() == "Z/6"
    gen = t.generators[0]
    assert gen.x.as_fraction() == 2 and abs(gen.y.as_fraction()) == 3
    assert torsion_subgroup(E_X3MX).structure() == "Z/2 + Z/2"
    t4 = torsion_subgroup(Curve(Q, [0, 0, 0, 0, 4]))
    assert t4.structure() == "Z/3"
    assert {abs(P.y.as_fraction()) for P in t4.generators} == {2}
    assert torsion_subgroup(Curve(Q, [0, 0, 0, 0, -2])).order == 1


def test_torsion_growth_over_extensions():
    Ki = nf_create(PolyQ([1, 0, 1]), "Q(i)")
    t = torsion_subgroup(E_X3MX, Embedding.from_rationals(Ki))
    assert t.structure() == "Z/2 + Z/4"
    K3 = nf_create(PolyQ([1, 1, 1]), "Q(zeta3)")
    t2 = torsion_subgroup(Curve(Q, [0, 0, 0, 0, 16]), Embedding.from_rationals(K3))
    assert t2.structure() == "Z/3 + Z/3"


def test_weil_pairing_constraint():
    # full level-m structure forces zeta_m into the field
    cases = [
        (E_X3MX, QQ_FIELD, 2),
        (Curve(Q, [0, 0, 0, 0, 16]), nf_create(PolyQ([1, 1, 1])), 3),
    ]
    for curve, L, m in cases:
        emb = Embedding.from_rationals(L) if L.degree > 1 else Embedding.identity(Q)
        t = torsion_subgroup(curve, emb)
        assert t.invariant_m % m == 0
        assert roots_in_field(cyclotomic_poly(m), L), "zeta_m missing despite full level"


def test_base_torsion_embeds_monotonically():
    K = nf_create(PolyQ([-2, 0, 0, 1]))
    emb = Embedding.from_rationals(K)
    for ainv in ([0, 0, 0, 0, 1], [0, -1, 1, -10, -20], [1, 0, 1, 4, -6]):
        E = Curve(Q, ainv)
        assert torsion_subgroup(E, emb).order % torsion_subgroup(E).order == 0


# ----- saturation -----

def test_saturate_identity_case():
    sat = saturate(E_X3MX, 2, 0)
    assert sat.sat_field is Q
    assert len(sat.points) == 2  # the two generators of E(Q)[2^inf]


def test_saturate_full_four_torsion():
    sat = saturate(E_X3MX, 2, 1)
    # T_1 = E[4]: field of definition has degree 4 and every generator
    # halves into E(Q)
    assert sat.sat_field.degree == 4
    for P in sat.points:
        twoP = mul_scalar(2, P)
        assert twoP.is_infinity or (twoP.x.is_rational_value and twoP.y.is_rational_value)
    from torsiongate.curves import _group_closure
    assert len(_group_closure(sat.points, sat.points[0].curve)) == 16
