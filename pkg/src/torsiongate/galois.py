"""Field-side Galois computations.

The mod-ell cyclotomic image of a field K is the subgroup of (Z/ell)^x of
order [K(zeta_ell):K]; since the ambient group is cyclic the order determines
the subgroup, so the image is represented by its order plus derived flags.

Mod-ell Galois images of elliptic curves (ell in {2, 3}) are computed
honestly: build the full splitting field N of the ell-torsion as a
compositum tower, fix a basis of E[ell] by explicit group-law arithmetic in
N, then sample Frobenius elements by reducing N modulo auxiliary primes; the
action of x -> x^p on the reduced points is an exact matrix in the chosen
basis, and sampling stops when the generated subgroup reaches order [N:Q].
"""

from __future__ import annotations

from typing import Optional, Sequence

from .curves import Curve, add, reduced_short_model, _min_degree_factor_mod_p
from .errors import BadReductionError
from .factorq import factor_over_Q, is_irreducible_over_Q, is_prime, primes_from
from .groups import Mat, MatGroup
from .modp import GF
from .numberfield import (DEFAULT_FIELD_DEGREE_CAP, Embedding, FieldElement, NumberField, PolyNF,
                          QQ_FIELD, extend_by_factor, factor_over_nf, is_square, roots_in_field,
                          splitting_field)
from .polyq import QQ, PolyQ, cyclotomic_poly


class CycImage:
    """Image of the mod-ell cyclotomic character of a number field, i.e. the
    subgroup of (Z/ell)^x of order [K(zeta_ell):K]."""

    __slots__ = ("ell", "order", "is_pm1", "is_trivial")

    def __init__(self, ell: int, order: int):
        if ell >= 3 and (ell - 1) % order != 0:
            raise ValueError("image order must divide ell - 1")
        self.ell = ell
        self.order = order
        self.is_pm1 = order == 2
        self.is_trivial = order == 1

    def __repr__(self) -> str:
        return f"CycImage(ell={self.ell}, order={self.order})"


def cyclotomic_character_image(K: NumberField, ell: int) -> CycImage:
    """Order = degree of any irreducible factor of Phi_ell over K (they all
    share one degree because the extension is abelian)."""
    if ell < 2:
        raise ValueError("ell must be a prime >= 2")
    if ell == 2:
        return CycImage(2, 1)
    phi = cyclotomic_poly(ell)
    if K.degree == 1:
        factors = factor_over_Q(phi)
        degrees = {g.degree for g, _ in factors}
    else:
        factors_nf = factor_over_nf(PolyNF.from_polyq(K, phi))
        degrees = {g.degree for g, _ in factors_nf}
    if len(degrees) != 1:
        raise RuntimeError("cyclotomic factors of unequal degree: abelian property violated")
    return CycImage(ell, degrees.pop())


class GaloisVerdict:
    """Outcome of a Galois-group decision, with recomputable evidence."""

    __slots__ = ("kind", "evidence")

    KINDS = ("cyclic_C3", "S3", "reducible", "galois", "non_galois", "certified_Sn", "unknown")

    def __init__(self, kind: str, evidence: Optional[dict] = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown verdict kind {kind!r}")
        self.kind = kind
        self.evidence = dict(evidence or {})

    def __repr__(self) -> str:
        return f"GaloisVerdict({self.kind})"


def _cubic_discriminant(f: PolyNF) -> FieldElement:
    # monic x^3 + a x^2 + b x + c
    K = f.field
    a, b, c = f.coeff(2), f.coeff(1), f.coeff(0)
    return (18 * a * b * c - 4 * (a ** 3) * c + (a * b) ** 2 - 4 * (b ** 3) - 27 * (c * c))


def cubic_galois_group(f: PolyNF) -> GaloisVerdict:
    """Galois group of a monic cubic over its coefficient field: reducible,
    C3 (square discriminant) or S3 (nonsquare discriminant)."""
    if f.degree != 3 or not f.is_monic():
        raise ValueError("need a monic cubic")
    factors = factor_over_nf(f)
    linear = [g for g, _ in factors if g.degree == 1]
    if linear:
        root = -linear[0].coeff(0)
        return GaloisVerdict("reducible", {"root": root})
    disc = _cubic_discriminant(f)
    w = is_square(disc)
    if w is None:
        return GaloisVerdict("S3", {"discriminant": disc, "square": False})
    return GaloisVerdict("cyclic_C3", {"discriminant": disc, "square_root": w})


def is_galois_prime_degree(L: NumberField, g: Optional[PolyQ] = None) -> bool:
    """For L = Q[x]/(g) with g irreducible of prime degree: L/Q is Galois
    iff g splits completely in L."""
    g = g or L.defining_poly
    if not is_prime(g.degree):
        raise ValueError("degree must be prime")
    if not is_irreducible_over_Q(g):
        raise ValueError("polynomial must be irreducible")
    if g.degree == 2:
        return True
    return len(roots_in_field(g, L)) == g.degree


# ---------------------------------------------------------------------------
# Dedekind factorization patterns
# ---------------------------------------------------------------------------


def dedekind_patterns(f: PolyQ, primes: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """(p, cycle type) for each usable prime: the partition of deg f by the
    degrees of the irreducible factors of f mod p.  Primes dividing the
    discriminant or leading coefficient are skipped."""
    from .modp import fp_factor_degrees, fp_strip
    from .polyq import poly_discriminant

    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    disc = poly_discriminant(f) if f.degree >= 2 else QQ(1)
    out: list[tuple[int, tuple[int, ...]]] = []
    for p in primes:
        ints, den = f.clear_denominators()
        if den % p == 0 or ints[-1] % p == 0:
            continue
        if int(disc.numerator) % p == 0 or int(disc.denominator) % p == 0:
            continue
        inv = pow(ints[-1], -1, p)
        fp = fp_strip([c * inv % p for c in ints])
        degrees = fp_factor_degrees(fp, p)
        out.append((p, tuple(sorted(degrees, reverse=True))))
    return out


def default_dedekind_primes(f: PolyQ, count: int = 25) -> list[int]:
    """The first `count` primes coprime to disc(f) and lc(f)."""
    from .polyq import poly_discriminant

    disc = poly_discriminant(f) if f.degree >= 2 else QQ(1)
    ints, den = f.clear_denominators()
    lead = ints[-1]
    out: list[int] = []
    for p in primes_from(2):
        if den % p == 0 or lead % p == 0:
            continue
        if int(disc.numerator) % p == 0 or int(disc.denominator) % p == 0:
            continue
        out.append(p)
        if len(out) >= count:
            return out
    return out



# ---------------------------------------------------------------------------
# mod-ell Galois images for ell in {2, 3}
# ---------------------------------------------------------------------------


class _QuadCtx:
    """The algebra M[y]/(y^2 - c0) with elements as pairs (u, v) = u + v*y.

    c0 = None means no quadratic step was needed (all y-coordinates already
    lie in M); the v component is then identically zero.
    """

    __slots__ = ("M", "c0")

    def __init__(self, M: NumberField, c0: Optional[FieldElement]):
        self.M = M
        self.c0 = c0

    def const(self, u: FieldElement):
        return (u, self.M.zero)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        u1, v1 = a
        u2, v2 = b
        if self.c0 is None:
            return (u1 * u2, self.M.zero)
        return (u1 * u2 + v1 * v2 * self.c0, u1 * v2 + v1 * u2)

    @property
    def degree_over_Q(self) -> int:
        return self.M.degree * (2 if self.c0 is not None else 1)


def _ell_torsion_splitting_data(curve: Curve, ell: int, degree_cap: int):
    """(ctx, points) with ctx the (at most quadratic) extension of the
    x-coordinate splitting field M and points the full list of nontrivial
    ell-torsion points as ((x_u, x_v), (y_u, y_v)) pairs over ctx.

    All x-coordinates lie in M; if some y-coordinate is missing from M the
    first nonsquare right-hand side c0 defines y0 = sqrt(c0), and every other
    y is y0 * sqrt(c_i / c0) with the square root back in M (the subgroup of
    the Galois group fixing all x-coordinates is generated by -1).
    """
    sm = reduced_short_model(curve)
    short = sm.short_curve
    a, b = short.a4.as_fraction(), short.a6.as_fraction()
    f_poly = PolyQ([b, a, 0, 1])
    if ell == 2:
        xpart = f_poly
    else:
        from .curves import _psi_xpart_rational
        xpart = _psi_xpart_rational(a, b, 3)
    M, xroots = splitting_field(xpart, degree_cap=degree_cap)
    shortM = short.base_change(Embedding.from_rationals(M)) if M.degree > 1 else short
    xroots = sorted(xroots, key=lambda t: t.sort_key())
    if ell == 2:
        ctx = _QuadCtx(M, None)
        points = [((r, M.zero), (M.zero, M.zero)) for r in xroots]
        return ctx, points
    rhs_vals = [shortM.rhs(r) for r in xroots]
    witnesses = [is_square(c) for c in rhs_vals]
    if all(w is not None for w in witnesses):
        ctx = _QuadCtx(M, None)
        points = []
        for r, w in zip(xroots, witnesses):
            points.append(((r, M.zero), (w, M.zero)))
            points.append(((r, M.zero), (-w, M.zero)))
        return ctx, points
    i0 = next(i for i, w in enumerate(witnesses) if w is None)
    c0 = rhs_vals[i0]
    ctx = _QuadCtx(M, c0)
    points = []
    for i, (r, c, w) in enumerate(zip(xroots, rhs_vals, witnesses)):
        if i == i0:
            y = (M.zero, M.one)  # y0 itself
        elif w is not None:
            y = (w, M.zero)
        else:
            ratio = is_square(c / c0)
            if ratio is None:
                raise RuntimeError("c_i/c_0 must be a square in the x-splitting field")
            y = (M.zero, ratio)  # ratio * y0
        points.append(((r, M.zero), y))
        points.append(((r, M.zero), ctx.neg(y)))
    return ctx, points


def _chord_sum_match(ctx: _QuadCtx, P, Q, candidates):
    """P + Q identified among known points by cross-multiplied chord
    equations (no inversions): with s = y2 - y1, d = x2 - x1, the sum
    (x3, y3) satisfies s^2 = (x3 + x1 + x2) d^2 and
    y3 d = s (x1 - x3) - y1 d."""
    x1, y1 = P
    x2, y2 = Q
    s = ctx.sub(y2, y1)
    d = ctx.sub(x2, x1)
    if d == ctx.const(ctx.M.zero):
        raise ValueError("chord matcher needs distinct x-coordinates")
    s2 = ctx.mul(s, s)
    d2 = ctx.mul(d, d)
    for R in candidates:
        x3, y3 = R
        if s2 != ctx.mul(ctx.add(x3, ctx.add(x1, x2)), d2):
            continue
        lhs = ctx.mul(y3, d)
        rhs = ctx.sub(ctx.mul(s, ctx.sub(x1, x3)), ctx.mul(y1, d))
        if lhs == rhs:
            return R
    raise RuntimeError("chord sum not found among candidate points")


def _label_basis(ctx: _QuadCtx, points: list, ell: int) -> dict:
    """Basis (P, Q) of E[ell] plus labels aP + bQ for every point, using
    inversion-free comparisons in the quadratic context."""

    def key(pt):
        (xu, xv), (yu, yv) = pt
        return (xu.sort_key(), xv.sort_key(), yu.sort_key(), yv.sort_key())

    pts = sorted(points, key=key)
    table: dict = {}
    if ell == 2:
        P, Q, R = pts
        table[(1, 0)], table[(0, 1)], table[(1, 1)] = P, Q, R
        return table
    P = pts[0]
    negP = next(R for R in pts if R[0] == P[0] and R != P)
    Q = next(R for R in pts if R[0] != P[0])
    negQ = next(R for R in pts if R[0] == Q[0] and R != Q)
    rest = [R for R in pts if R[0] != P[0] and R[0] != Q[0]]
    S = _chord_sum_match(ctx, P, Q, rest)
    D = _chord_sum_match(ctx, P, negQ, rest)
    table[(1, 0)], table[(2, 0)] = P, negP
    table[(0, 1)], table[(0, 2)] = Q, negQ
    table[(1, 1)] = S
    table[(2, 2)] = next(R for R in rest if R[0] == S[0] and R != S)
    table[(1, 2)] = D
    table[(2, 1)] = next(R for R in rest if R[0] == D[0] and R != D)
    if len(set(map(key, table.values()))) != len(points):
        raise RuntimeError("basis labeling did not reproduce the torsion points")
    return table


def _f2_mul(F: GF, c0bar, a, b):
    u1, v1 = a
    u2, v2 = b
    return (F.add(F.mul(u1, u2), F.mul(F.mul(v1, v2), c0bar)),
            F.add(F.mul(u1, v2), F.mul(v1, u2)))


def _f2_pow(F: GF, c0bar, a, n: int):
    result = (F.one, F.zero)
    base = a
    while n:
        if n & 1:
            result = _f2_mul(F, c0bar, result, base)
        base = _f2_mul(F, c0bar, base, base)
        n >>= 1
    return result


def mod_ell_image(curve: Curve, ell: int,
                  degree_cap: int = DEFAULT_FIELD_DEGREE_CAP,
                  prime_cap: int = 20000) -> MatGroup:
    """Image of Gal(Q(E[ell])/Q) in GL2(F_ell), ell in {2, 3}, with respect
    to a constructed basis (P, Q) of E[ell].

    Convention: the matrix of sigma has first column the coordinates of
    sigma(P) and second column those of sigma(Q), so coordinate vectors
    transform as v -> M v.  Frobenius elements are sampled by reduction at
    auxiliary primes until the generated subgroup has order [Q(E[ell]):Q].
    """
    if ell not in (2, 3):
        raise ValueError("mod_ell_image is implemented for ell in {2, 3}")
    if curve.field.degree != 1:
        raise ValueError("mod_ell_image expects a curve over Q")
    ctx, points = _ell_torsion_splitting_data(curve, ell, degree_cap)
    n = ctx.degree_over_Q
    if n == 1:
        return MatGroup(ell, [])
    table = _label_basis(ctx, points, ell)
    labels = list(table.keys())
    M_field = ctx.M
    m_M = M_field.defining_poly
    disc_curve = curve.discriminant().as_fraction()

    gens: list[Mat] = []
    group = MatGroup(ell, [])
    for p in primes_from(5):
        if p > prime_cap:
            raise RuntimeError("Frobenius sampling exhausted its prime budget")
        if p == ell:
            continue
        if int(disc_curve.numerator) % p == 0 or int(disc_curve.denominator) % p == 0:
            continue
        g = _min_degree_factor_mod_p(m_M, p)
        if g is None:
            continue
        F = GF(p, g)
        t = F.gen()

        def embed(elt: FieldElement):
            acc = F.zero
            for cc in reversed(elt.coords):
                if int(cc.denominator) % p == 0:
                    raise BadReductionError("denominator hit")
                acc = F.add(F.mul(acc, t), F.from_fraction(int(cc.numerator), int(cc.denominator)))
            return acc

        try:
            if ctx.c0 is None:
                reduced = {lab: (embed(x[0]), embed(y[0]))
                           for lab, (x, y) in table.items()}
                frob = lambda val: (F.frobenius(val[0]), F.frobenius(val[1]))
            else:
                c0bar = embed(ctx.c0)
                if c0bar == F.zero:
                    continue
                if F.is_square(c0bar):
                    r0 = F.sqrt(c0bar)
                    reduced = {lab: (F.add(embed(x[0]), F.mul(embed(x[1]), r0)),
                                     F.add(embed(y[0]), F.mul(embed(y[1]), r0)))
                               for lab, (x, y) in table.items()}
                    frob = lambda val: (F.frobenius(val[0]), F.frobenius(val[1]))
                else:
                    reduced = {lab: ((embed(x[0]), embed(x[1])),
                                     (embed(y[0]), embed(y[1])))
                               for lab, (x, y) in table.items()}
                    frob = lambda val: (_f2_pow(F, c0bar, val[0], p),
                                        _f2_pow(F, c0bar, val[1], p))
        except BadReductionError:
            continue
        if len(set(reduced.values())) != len(labels):
            continue  # torsion did not inject; skip this prime
        lookup = {v: lab for lab, v in reduced.items()}
        frob_map: dict[tuple[int, int], tuple[int, int]] = {}
        ok = True
        for lab, val in reduced.items():
            img = frob(val)
            if img not in lookup:
                ok = False
                break
            frob_map[lab] = lookup[img]
        if not ok:
            continue
        a, c = frob_map[(1, 0)]
        b, d = frob_map[(0, 1)]
        Mt = (a, b, c, d)
        for (al, bl), (ai, bi) in frob_map.items():
            if ((Mt[0] * al + Mt[1] * bl) % ell, (Mt[2] * al + Mt[3] * bl) % ell) != (ai, bi):
                raise RuntimeError("Frobenius action is not linear: labeling bug")
        if Mt not in group.elements:
            gens.append(Mt)
            group = MatGroup(ell, gens)
        if group.order == n:
            return group
    raise RuntimeError("unreachable")
