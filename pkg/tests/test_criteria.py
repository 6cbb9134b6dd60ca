"""Growth criteria: clause gating, verification, membership scans, suites."""

from __future__ import annotations

import pytest

from torsiongate.criteria import (cor_overQ, cor_overQmu, growth_structure_check,
                                  lemma21_suite, najman_check, thm_Sn_hypothesis,
                                  thm_Tk_check, thm_nongal_p, verify_verdict)
from torsiongate.curves import Curve, TorsionData, torsion_subgroup
from torsiongate.numberfield import Embedding, QQ_FIELD, nf_create
from torsiongate.polyq import PolyQ

Q = QQ_FIELD
E_11A1 = Curve(Q, [0, -1, 1, -10, -20])
E_37A1 = Curve(Q, [0, 0, 1, -1, 0])
E_X3MX = Curve(Q, [0, 0, 0, -1, 0])
CBRT2 = nf_create(PolyQ([-2, 0, 0, 1]), "Q(2^(1/3))")
CUBIC2 = nf_create(PolyQ([1, 1, 0, 1]), "x3+x+1")
CYCLIC3 = nf_create(PolyQ([-1, -3, 0, 1]), "x3-3x-1")
QUINTIC = nf_create(PolyQ([-1, -1, 0, 0, 0, 1]), "x5-x-1")


# ----- clause selection -----

def test_clause_a_with_rational_5_torsion():
    v = thm_nongal_p(E_11A1, CBRT2, 5)
    assert v.applicable and v.result_id == "thm_nonGal_p_a"
    assert v.conclusion["claim"] == "ell_primary_equal"
    assert v.witnesses["base_ell_order"] == 5
    r = verify_verdict(v)
    assert r.agrees and r.brute_force["base_invariants"] == [1, 5]


def test_clause_b_at_13():
    v = thm_nongal_p(E_11A1, CBRT2, 13)
    assert v.applicable and v.result_id == "thm_nonGal_p_b"
    assert v.witnesses["cyc_order"] == 12
    assert verify_verdict(v).agrees


def test_clause_c_over_quintic():
    v = thm_nongal_p(E_37A1, QUINTIC, 2)
    assert v.applicable and v.result_id == "thm_nonGal_p_c"
    assert verify_verdict(v).agrees


def test_gap_ell2_p3_not_covered():
    v = thm_nongal_p(E_11A1, CBRT2, 2)
    assert not v.applicable
    assert "outside every clause" in v.reason


def test_pm1_image_blocks_clause_b():
    # over Q the mod-3 cyclotomic image is exactly {+-1}
    v = thm_nongal_p(E_11A1, CBRT2, 3)
    assert not v.applicable and "+-1" in v.reason


def test_galois_extension_rejected():
    v = thm_nongal_p(E_11A1, CYCLIC3, 5)
    assert not v.applicable and "Galois" in v.reason


def test_ell_equal_p_gate_for_quintic():
    v = thm_nongal_p(E_11A1, QUINTIC, 5)
    assert not v.applicable and "ell != p" in v.reason


def test_verify_rejects_non_applicable():
    v = thm_nongal_p(E_11A1, CBRT2, 2)
    with pytest.raises(ValueError):
        verify_verdict(v)


def test_hypothesis_witnesses_recompute():
    # clause-(a) instances must carry a nontrivial rational ell-part that
    # can be recomputed from scratch
    v = thm_nongal_p(E_11A1, CBRT2, 5)
    from torsiongate.curves import ell_power_torsion
    again = ell_power_torsion(E_11A1, Embedding.identity(Q), 5, 1)
    assert again.order == v.witnesses["base_ell_order"]


# ----- refined membership over non-Galois cubics -----

def test_najman_accepts_computed_group():
    t = torsion_subgroup(E_11A1, Embedding.from_rationals(CBRT2))
    assert najman_check(t)


def test_najman_rejects_excluded_structures():
    fake13 = TorsionData(Curve(CBRT2, [0, 0, 0, 0, 1]), 1, 13, [], check=False)
    assert not najman_check(fake13)
    fake2x14 = TorsionData(Curve(CBRT2, [0, 0, 0, 0, 1]), 2, 14, [], check=False)
    assert not najman_check(fake2x14)
    ok9 = TorsionData(Curve(CBRT2, [0, 0, 0, 0, 1]), 1, 9, [], check=False)
    assert najman_check(ok9)


def test_najman_requires_non_galois_cubic():
    t = torsion_subgroup(E_11A1, Embedding.from_rationals(CYCLIC3))
    with pytest.raises(ValueError):
        najman_check(t)


# ----- corollaries -----

def test_cor_overQ_examples():
    assert cor_overQ(E_11A1, CBRT2, 7).applicable
    assert not cor_overQ(E_11A1, CBRT2, 3).applicable
    v = cor_overQ(E_37A1, QUINTIC, 5)
    assert not v.applicable  # ell = p = 5 with trivial E(Q)[5]
    v11 = cor_overQ(E_11A1, QUINTIC, 5)
    assert v11.applicable  # ell = p but E(Q)[5] is nontrivial


def test_cor_overQmu_symbolic():
    assert cor_overQmu(7, 3).applicable
    assert cor_overQmu(7, 3).witnesses["cyc_order"] == 1
    assert not cor_overQmu(5, 5).applicable
    assert cor_overQmu(5, 5, ell_torsion_nontrivial=True).applicable
    assert not cor_overQmu(3, 7).applicable


# ----- saturation lemma suite -----

def test_lemma21_r0_vacuous():
    for res in lemma21_suite(E_X3MX, 2, 0):
        assert res["status"] == "pass"


def test_lemma21_desk_check():
    results = {r["part"]: r for r in lemma21_suite(E_X3MX, 2, 1)}
    assert results["a"]["status"] == "pass"
    assert results["c"]["status"] == "pass"
    assert results["d"]["status"] == "pass"
    assert results["e"]["status"] == "not_applicable"  # needs r>=2, ell>=3 or level 4


# ----- growth structure -----

def test_growth_check_requires_growth():
    with pytest.raises(ValueError):
        growth_structure_check(E_11A1, CBRT2, 5)  # no growth there


def test_growth_check_quadratic_case():
    Ki = nf_create(PolyQ([1, 0, 1]), "Q(i)")
    res = growth_structure_check(E_X3MX, Ki, 2)
    assert res["status"] == "pass" and res["case"] == "i"


# ----- saturation theorem gates -----

def test_tk_gate_small_prime_power():
    assert thm_Tk_check(E_X3MX, 2, 1, 0)["status"] == "rejected"


def test_tk_gate_needs_full_level():
    E16 = Curve(Q, [0, 0, 0, 0, 16])
    assert thm_Tk_check(E16, 3, 1, 0)["status"] == "rejected"


def test_tk_identity_case_over_zeta3():
    K3 = nf_create(PolyQ([1, 1, 1]), "Q(zeta3)")
    E16z = Curve(K3, [0, 0, 0, 0, 16])
    assert thm_Tk_check(E16z, 3, 1, 0)["status"] == "pass"


# ----- group-side sweeps (sampled; the exhaustive runs live in acceptance) -----

def test_totality_sampled_at_5():
    from torsiongate.criteria import gl2_totality_report
    rep = gl2_totality_report(5, sample=500)
    assert rep["cases_checked"] == 500 and not rep["failures"]


def test_prop42_vacuous_at_3():
    from torsiongate.criteria import prop42_report
    rep = prop42_report(3, 5)
    assert not rep["failures"]  # |GL2(F3)| = 48 admits no index-5 subgroup


def test_groupside_suite_consolidates():
    from torsiongate.criteria import groupside_suite
    rep = groupside_suite([3])
    assert rep["total_failures"] == 0
    assert {r["lemma"] for r in rep["reports"]} >= {"borel_normality", "gl2_case_totality"}


# ----- symmetric-group hypothesis -----

def test_sn_hypothesis_certified():
    v = thm_Sn_hypothesis(PolyQ([-1, -1, 0, 0, 0, 1]), 5)
    assert v.applicable
    sk = v.witnesses["skeleton"]
    assert sk["commutator_criterion"] and sk["normal_trichotomy"]
    assert sk["normal_subgroup_orders"] == [1, 60, 120]


def test_sn_hypothesis_not_certified_for_reducible():
    v = thm_Sn_hypothesis(PolyQ([-1, 0, 0, 0, 0, 1]), 5)
    assert not v.applicable


def test_sn_hypothesis_degree_gate():
    with pytest.raises(ValueError):
        thm_Sn_hypothesis(PolyQ([-2, 0, 0, 0, 1]), 4)
