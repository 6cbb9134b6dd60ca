"""torsiongate: exact-arithmetic torsion-growth criteria for elliptic curves
over number fields, with brute-force verification oracles.

The library decides when the ell-primary torsion of an elliptic curve cannot
grow under a base change to a non-Galois extension of prime degree, certifies
the hypotheses (Galois types, cyclotomic character images, symmetric-group
certificates), and independently verifies every applicable conclusion with a
division-polynomial torsion search over the extension field.
"""

from .curves import (Curve, CurvePoint, ReducedCurve, Saturation, TorsionData, add,
                     count_points, division_poly, ell_power_torsion, frobenius_trace,
                     mul_scalar, point_order, reduce_curve, reduced_short_model, saturate,
                     to_short_weierstrass, torsion_bound, torsion_subgroup)
from .criteria import (Verdict, VerificationReport, cor_overQ, cor_overQmu,
                       groupside_suite, growth_structure_check, lemma21_suite, najman_check,
                       thm_Sn_hypothesis, thm_Tk_check, thm_nongal_p, verify_verdict)
from .errors import (BadReductionError, DegreeCapExceeded, EnumerationCapExceeded,
                     ReduciblePolynomialError, SingularCurveError, SpecError, TorsionGateError)
from .factorq import factor_over_Q, is_irreducible_over_Q, rational_roots, squarefree_decomposition
from .galois import (CycImage, GaloisVerdict, cubic_galois_group, cyclotomic_character_image,
                     dedekind_patterns, default_dedekind_primes, is_galois_prime_degree,
                     mod_ell_image)
from .groups import (MatGroup, PermGroup, borel_normality_criterion, cartan_structures,
                     certify_Sn, classify_subgroup, commutator_subgroup, det_image,
                     enumerate_subgroups, is_normal, no_abelian_subextension_criterion)
from .numberfield import (Embedding, FieldElement, NumberField, PolyNF, QQ_FIELD, compositum,
                          extension_degree, factor_over_nf, is_square, minimal_polynomial,
                          nf_create, roots_in_field, splitting_field)
from .polyq import PolyQ, cyclotomic_poly, poly_discriminant, poly_gcd, poly_resultant

__version__ = "0.1.0"

nf_invert = FieldElement.inv
