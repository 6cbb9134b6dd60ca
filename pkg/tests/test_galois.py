"""Galois-side computations: cyclotomic images, cubic groups, Dedekind
patterns, mod-ell representation images."""

from __future__ import annotations

import pytest

from torsiongate.curves import Curve
from torsiongate.galois import (cubic_galois_group, cyclotomic_character_image,
                                dedekind_patterns, default_dedekind_primes,
                                is_galois_prime_degree, mod_ell_image)
from torsiongate.groups import MatGroup, det_image, mat_order
from torsiongate.numberfield import PolyNF, QQ_FIELD, nf_create
from torsiongate.polyq import PolyQ

Q = QQ_FIELD


def P(*coeffs):
    return PolyQ(coeffs)


# ----- cyclotomic character images -----

def test_cyc_image_over_Q():
    img = cyclotomic_character_image(Q, 13)
    assert img.order == 12 and not img.is_pm1
    for ell in (2, 3, 5, 7, 11, 13, 17, 19):
        expected = 1 if ell == 2 else ell - 1
        assert cyclotomic_character_image(Q, ell).order == expected


def test_cyc_image_trivial_over_zeta3():
    K = nf_create(P(1, 1, 1), "Q(zeta3)")
    img = cyclotomic_character_image(K, 3)
    assert img.order == 1 and img.is_trivial


def test_cyc_image_pm1_over_sqrt5():
    K = nf_create(P(-5, 0, 1), "Q(sqrt5)")
    img = cyclotomic_character_image(K, 5)
    assert img.order == 2 and img.is_pm1


# ----- cubic Galois groups -----

def test_cubic_galois_verdicts():
    assert cubic_galois_group(PolyNF.from_polyq(Q, P(-2, 0, 0, 1))).kind == "S3"
    verdict = cubic_galois_group(PolyNF.from_polyq(Q, P(-1, -3, 0, 1)))
    assert verdict.kind == "cyclic_C3"
    w = verdict.evidence["square_root"]
    assert (w * w).as_fraction() == 81
    assert cubic_galois_group(PolyNF.from_polyq(Q, P(0, -1, 0, 1))).kind == "reducible"


def test_cubic_galois_rejects_wrong_degree():
    with pytest.raises(ValueError):
        cubic_galois_group(PolyNF.from_polyq(Q, P(1, 0, 1)))


def test_prime_degree_galois_recognition():
    assert not is_galois_prime_degree(nf_create(P(-2, 0, 0, 1)))
    assert is_galois_prime_degree(nf_create(P(-1, -3, 0, 1)))
    assert is_galois_prime_degree(nf_create(P(-2, 0, 1)))
    assert not is_galois_prime_degree(nf_create(P(-1, -1, 0, 0, 0, 1)))


def test_cubic_verdict_agrees_with_prime_degree_test():
    for coeffs in ((-2, 0, 0, 1), (1, 1, 0, 1), (-1, -3, 0, 1), (2, 3, 0, 1)):
        poly = P(*coeffs)
        verdict = cubic_galois_group(PolyNF.from_polyq(Q, poly))
        if verdict.kind == "reducible":
            continue
        galois = is_galois_prime_degree(nf_create(poly))
        assert (verdict.kind == "S3") == (not galois)


# ----- Dedekind patterns -----

def test_dedekind_patterns_examples():
    # x^3 - 2 mod 7: 2 is not a cube mod 7, so the polynomial is irreducible
    pats = dict(dedekind_patterns(P(-2, 0, 0, 1), [5, 7, 31]))
    assert pats[7] == (3,)
    assert pats[5] == (2, 1)
    assert pats[31] == (1, 1, 1)
    pats2 = dict(dedekind_patterns(P(1, 0, 1), [5, 7]))
    assert pats2[5] == (1, 1)
    assert pats2[7] == (2,)


def test_dedekind_skips_ramified_primes():
    # disc(x^3 - 2) = -108 = -2^2 27: primes 2, 3 are skipped
    pats = dedekind_patterns(P(-2, 0, 0, 1), [2, 3, 5])
    assert [p for p, _ in pats] == [5]


def test_dedekind_split_pattern_on_galois_cubic():
    # cyclic cubic: every unramified prime is inert-free: patterns are
    # (1,1,1) or (3), and the split pattern must occur among the first 25
    pats = dedekind_patterns(P(-1, -3, 0, 1), default_dedekind_primes(P(-1, -3, 0, 1)))
    types = {t for _, t in pats}
    assert types <= {(1, 1, 1), (3,)}
    assert (1, 1, 1) in types


# ----- mod-ell images -----

def test_mod2_images():
    assert mod_ell_image(Curve(Q, [0, 0, 0, -1, 0]), 2).order == 1
    im = mod_ell_image(Curve(Q, [0, 0, 0, 0, -2]), 2)
    assert im.order == 6  # full GL2(F2)
    im3 = mod_ell_image(Curve(Q, [0, 0, 0, -3, -1]), 2)
    assert im3.order == 3
    orders = sorted(mat_order(m, 2) for m in im3.elements)
    assert orders == [1, 3, 3]


def test_mod2_image_isomorphic_to_cubic_galois_group():
    cases = [([0, 0, 0, -1, 0], "reducible", 1), ([0, 0, 0, 0, -2], "S3", 6),
             ([0, 0, 0, -3, -1], "cyclic_C3", 3)]
    for ainv, kind, order in cases:
        E = Curve(Q, ainv)
        cubic = PolyNF.from_polyq(Q, PolyQ([a if isinstance(a, int) else a for a in
                                            [E.a6.as_fraction(), E.a4.as_fraction(), 0, 1]]))
        assert cubic_galois_group(cubic).kind == kind
        assert mod_ell_image(E, 2).order == order


def test_mod3_image_full_for_generic_curve():
    im = mod_ell_image(Curve(Q, [0, 0, 0, 0, -2]), 3)
    assert det_image(im) == (1, 2)
    assert im.order % 3 == 0 or im.order in (4, 8)


def test_weil_det_matches_cyc_order_small_sample():
    for ainv in ([0, 0, 0, -1, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 16]):
        E = Curve(Q, ainv)
        for ell in (2, 3):
            im = mod_ell_image(E, ell)
            assert len(det_image(im)) == cyclotomic_character_image(Q, ell).order


def test_mod_ell_image_rejects_large_ell():
    with pytest.raises(ValueError):
        mod_ell_image(Curve(Q, [0, 0, 0, -1, 0]), 5)
