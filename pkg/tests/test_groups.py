"""Matrix and permutation groups: closures, criteria, classification."""

from __future__ import annotations

import pytest

from torsiongate.errors import EnumerationCapExceeded
from torsiongate.groups import (MatGroup, PermGroup, borel_group, borel_normality_criterion,
                                cartan_structures, certify_Sn, classify_subgroup,
                                commutator_subgroup, det_image, enumerate_subgroups,
                                gl2_group, is_normal, mat_inv, mat_mul,
                                no_abelian_subextension_criterion, normal_subgroup_orders_sn,
                                perm_from_cycles, U_MATRIX)


def test_closures():
    assert MatGroup(5, [(1, 1, 0, 1)]).order == 5
    s3 = PermGroup(3, [perm_from_cycles(3, [[0, 1]]), perm_from_cycles(3, [[0, 1, 2]])])
    assert s3.order == 6
    assert MatGroup(7, []).order == 1


def test_commutator_subgroups():
    s3 = PermGroup.symmetric(3)
    a3 = commutator_subgroup(s3)
    assert a3.order == 3
    g3 = gl2_group(3)
    assert g3.order == 48
    sl2 = commutator_subgroup(g3)
    assert sl2.order == 24
    abelian = MatGroup(5, [(2, 0, 0, 1)])
    assert commutator_subgroup(abelian).order == 1


def test_commutator_is_normal_with_abelian_quotient():
    for G in (PermGroup.symmetric(4), gl2_group(3), borel_group(5)):
        Gp = commutator_subgroup(G)
        assert is_normal(Gp, G)
        # quotient abelian: all commutators of coset representatives inside G'
        mulg = (lambda x, y: mat_mul(x, y, G.ell)) if isinstance(G, MatGroup) else None
        if isinstance(G, MatGroup):
            inv = lambda x: mat_inv(x, G.ell)
            for g in G.generators:
                for h in G.generators:
                    comm = mulg(mulg(g, h), mulg(inv(g), inv(h)))
                    assert comm in Gp.elements


def test_is_normal_examples():
    s3 = PermGroup.symmetric(3)
    assert is_normal(PermGroup.alternating(3), s3)
    assert not is_normal(PermGroup(3, [perm_from_cycles(3, [[0, 1]])]), s3)
    g3 = gl2_group(3)
    center = MatGroup(3, [(2, 0, 0, 2)])
    assert is_normal(center, g3)


def test_is_normal_requires_containment():
    with pytest.raises(ValueError):
        is_normal(PermGroup.symmetric(3), PermGroup.alternating(3))


def test_borel_criterion_examples():
    B3 = borel_group(3)
    assert borel_normality_criterion(MatGroup(3, [U_MATRIX]), B3)
    assert borel_normality_criterion(MatGroup(3, [(2, 0, 0, 2)]), B3)
    H = MatGroup(3, [(2, 0, 0, 1)])
    assert not borel_normality_criterion(H, B3)
    # the witness: conjugating diag(2,1) by U lands outside H
    conj = mat_mul(mat_mul(U_MATRIX, (2, 0, 0, 1), 3), mat_inv(U_MATRIX, 3), 3)
    assert conj == (2, 2, 0, 1) and conj not in H.elements
    assert not is_normal(H, B3)


def test_borel_criterion_preconditions():
    B3 = borel_group(3)
    with pytest.raises(ValueError):
        borel_normality_criterion(MatGroup(3, [(2, 0, 0, 2)]), gl2_group(3))
    difficult = MatGroup(3, [(2, 0, 0, 2)])  # ell does not divide |G|
    with pytest.raises(ValueError):
        borel_normality_criterion(difficult, difficult)


def test_classification_examples():
    assert classify_subgroup(gl2_group(5)) == {"A"}
    assert classify_subgroup(MatGroup(5, [(1, 1, 0, 1)])) == {"B"}
    diag = MatGroup(5, [(2, 0, 0, 1), (1, 0, 0, 2)])
    assert "C" in classify_subgroup(diag)
    # GL2(F3) has projective image S4, so both A and D apply
    assert classify_subgroup(gl2_group(3)) == {"A", "D"}


def test_cartan_structures_orders():
    cs3 = cartan_structures(3)
    assert cs3["split"].order == 4 and cs3["split_normalizer"].order == 8
    assert cs3["nonsplit"].order == 8 and cs3["nonsplit_normalizer"].order == 16
    cs5 = cartan_structures(5)
    assert cs5["split_normalizer"].order == 32
    for key in ("split", "nonsplit"):
        assert cs5[key].is_abelian()
        assert is_normal(cs5[key], cs5[key + "_normalizer"])


def test_det_image_examples():
    assert det_image(MatGroup(5, [(1, 1, 0, 1)])) == (1,)
    assert det_image(gl2_group(5)) == (1, 2, 3, 4)


def test_no_abelian_subextension_criterion():
    s3 = PermGroup.symmetric(3)
    t = PermGroup(3, [perm_from_cycles(3, [[0, 1]])])
    assert no_abelian_subextension_criterion(s3, t)
    assert not no_abelian_subextension_criterion(s3, PermGroup.alternating(3))
    s5 = PermGroup.symmetric(5)
    t5 = PermGroup(5, [perm_from_cycles(5, [[0, 1]])])
    assert no_abelian_subextension_criterion(s5, t5)


def test_enumerate_subgroups():
    s3 = PermGroup.symmetric(3)
    assert len(enumerate_subgroups(s3)) == 6
    c4 = MatGroup(5, [(0, 1, 4, 0)])
    assert c4.order == 4
    assert len(enumerate_subgroups(c4)) == 3
    gl2f2_like = enumerate_subgroups(gl2_group(2))
    assert len(gl2f2_like) == 6  # GL2(F2) is S3


def test_enumerate_subgroups_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_subgroups(PermGroup.symmetric(7), cap=1000)


def test_lagrange_on_enumerated_subgroups():
    G = borel_group(3)
    for H in enumerate_subgroups(G):
        assert G.order % H.order == 0


def test_certify_sn():
    assert certify_Sn([(5,), (3, 1, 1), (2, 1, 1, 1)], 5)
    assert certify_Sn([(5,), (3, 1, 1), (3, 2)], 5)
    assert not certify_Sn([(5,)], 5)
    assert not certify_Sn([(4,)], 4)
    with pytest.raises(ValueError):
        certify_Sn([(4,)], 4, strict=True)


def test_sn_normal_subgroup_orders():
    assert normal_subgroup_orders_sn(5) == {1, 60, 120}
    assert normal_subgroup_orders_sn(6) == {1, 360, 720}
