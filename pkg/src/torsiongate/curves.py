"""Elliptic curves over number fields.

Long Weierstrass models with the chord-tangent group law, division
polynomials on the short model, naive point counting over small residue
fields, torsion bounds by good reduction, exact l-power torsion search via
division polynomials, and the saturation construction (points whose l^k
multiple is rational over the base).

The torsion search factors division polynomials over Q whenever the curve
coefficients are rational and only lifts factors of degree dividing [L:Q] to
the big field; that keeps Trager norms at degree |factor| * [L:Q] instead of
deg(psi) * [L:Q].
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd as _int_gcd, isqrt
from typing import Iterable, Optional, Sequence

from .errors import BadReductionError, DegreeCapExceeded, SingularCurveError
from .factorq import is_prime, primes_from
from .modp import GF
from .numberfield import (DEFAULT_FIELD_DEGREE_CAP, Embedding, FieldElement, NumberField, PolyNF,
                          QQ_FIELD, extend_by_factor, is_square, roots_in_field, roots_of_nf_poly)
from .polyq import QQ, PolyQ

import random


class Curve:
    """Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
    over a number field; must be nonsingular."""

    __slots__ = ("field", "a1", "a2", "a3", "a4", "a6")

    def __init__(self, field: NumberField, a_invariants: Sequence):
        if len(a_invariants) != 5:
            raise ValueError("need exactly [a1, a2, a3, a4, a6]")
        vals = []
        for a in a_invariants:
            if isinstance(a, FieldElement):
                if a.field != field:
                    raise ValueError("coefficient in the wrong field")
                vals.append(a)
            else:
                vals.append(field.from_rational(a))
        object.__setattr__(self, "field", field)
        for name, v in zip(("a1", "a2", "a3", "a4", "a6"), vals):
            object.__setattr__(self, name, v)
        if self.discriminant().is_zero:
            raise SingularCurveError("discriminant vanishes")

    def __setattr__(self, name, value):
        raise AttributeError("Curve is immutable")

    # ----- invariants -----

    def b_invariants(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self) -> tuple[FieldElement, FieldElement]:
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
        return c4, c6

    def discriminant(self) -> FieldElement:
        b2, b4, b6, b8 = self.b_invariants()
        return (-(b2 * b2) * b8 - 8 * (b4 ** 3) - 27 * (b6 * b6) + 9 * b2 * b4 * b6)

    def j_invariant(self) -> FieldElement:
        c4, _ = self.c_invariants()
        return (c4 ** 3) / self.discriminant()

    @property
    def is_short(self) -> bool:
        return self.a1.is_zero and self.a2.is_zero and self.a3.is_zero

    def rhs(self, x: FieldElement) -> FieldElement:
        """x^3 + a2 x^2 + a4 x + a6 (the full RHS of the long equation)."""
        return ((x + self.a2) * x + self.a4) * x + self.a6

    # ----- points -----

    @property
    def infinity(self) -> CurvePoint:
        return CurvePoint(self, None, None)

    def point(self, x, y) -> CurvePoint:
        xe = x if isinstance(x, FieldElement) else self.field.from_rational(x)
        ye = y if isinstance(y, FieldElement) else self.field.from_rational(y)
        P = CurvePoint(self, xe, ye)
        if not P.on_curve():
            raise ValueError(f"({xe.lift()}, {ye.lift()}) is not on the curve")
        return P

    def base_change(self, emb: Embedding) -> Curve:
        if emb.source != self.field:
            raise ValueError("embedding source must be the curve base field")
        if emb.is_identity:
            return self
        return Curve(emb.target, [emb.apply(a) for a in (self.a1, self.a2, self.a3, self.a4, self.a6)])

    def has_rational_model(self) -> bool:
        return all(a.is_rational_value for a in (self.a1, self.a2, self.a3, self.a4, self.a6))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Curve) and self.field == other.field
                and all(getattr(self, n) == getattr(other, n) for n in ("a1", "a2", "a3", "a4", "a6")))

    def __hash__(self) -> int:
        return hash((self.field, self.a1, self.a2, self.a3, self.a4, self.a6))

    def __repr__(self) -> str:
        names = ("a1", "a2", "a3", "a4", "a6")
        vals = ", ".join(str(getattr(self, n).lift()) for n in names)
        return f"Curve([{vals}] over {self.field.label})"


class CurvePoint:
    """Affine point or the point at infinity on a fixed curve."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: Curve, x: Optional[FieldElement], y: Optional[FieldElement]):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("CurvePoint is immutable")

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def on_curve(self) -> bool:
        if self.is_infinity:
            return True
        c = self.curve
        lhs = self.y * self.y + c.a1 * self.x * self.y + c.a3 * self.y
        return lhs == c.rhs(self.x)

    def __neg__(self) -> CurvePoint:
        if self.is_infinity:
            return self
        c = self.curve
        return CurvePoint(c, self.x, -self.y - c.a1 * self.x - c.a3)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.curve != other.curve:
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self.is_infinity:
            return hash((self.curve, "oo"))
        return hash((self.curve, self.x, self.y))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(oo)"
        return f"Point({self.x.lift()}, {self.y.lift()})"


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-tangent addition on the long Weierstrass model."""
    if P.curve != Q.curve:
        raise ValueError("points on different curves cannot be added")
    c = P.curve
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x and Q.y == (-P).y:
        return c.infinity
    if P == Q:
        num = 3 * P.x * P.x + 2 * c.a2 * P.x + c.a4 - c.a1 * P.y
        den = 2 * P.y + c.a1 * P.x + c.a3
    else:
        num = Q.y - P.y
        den = Q.x - P.x
    lam = num / den
    nu = P.y - lam * P.x
    x3 = lam * lam + c.a1 * lam - c.a2 - P.x - Q.x
    y3 = -(lam + c.a1) * x3 - nu - c.a3
    return CurvePoint(c, x3, y3)


def mul_scalar(n: int, P: CurvePoint) -> CurvePoint:
    """[n]P by double-and-add; [0]P = infinity, [-n]P = -[n]P."""
    if n < 0:
        return mul_scalar(-n, -P)
    result = P.curve.infinity
    base = P
    while n:
        if n & 1:
            result = add(result, base)
        base = add(base, base)
        n >>= 1
    return result


def point_order(P: CurvePoint, cap: int = 400) -> int:
    acc = P
    for n in range(1, cap + 1):
        if acc.is_infinity:
            return n
        acc = add(acc, P)
    raise ValueError(f"point order exceeds {cap}; not torsion at this scale")


# ---------------------------------------------------------------------------
# short model and the transform between models
# ---------------------------------------------------------------------------


class WeierstrassIso:
    """Isomorphism between Weierstrass models: x = u^2 x' + r,
    y = u^3 y' + s u^2 x' + t, mapping `source` points to `target` points."""

    __slots__ = ("source", "target", "u", "r", "s", "t")

    def __init__(self, source: Curve, target: Curve, u, r, s, t):
        K = source.field
        self.source = source
        self.target = target
        self.u = u if isinstance(u, FieldElement) else K.from_rational(u)
        self.r = r if isinstance(r, FieldElement) else K.from_rational(r)
        self.s = s if isinstance(s, FieldElement) else K.from_rational(s)
        self.t = t if isinstance(t, FieldElement) else K.from_rational(t)

    @property
    def is_identity(self) -> bool:
        return self.u == 1 and self.r.is_zero and self.s.is_zero and self.t.is_zero

    def forward(self, P: CurvePoint) -> CurvePoint:
        if P.curve != self.source:
            raise ValueError("point not on the source model")
        if P.is_infinity:
            return self.target.infinity
        u2 = self.u * self.u
        x2 = (P.x - self.r) / u2
        y2 = (P.y - self.s * (P.x - self.r) - self.t) / (u2 * self.u)
        return CurvePoint(self.target, x2, y2)

    def backward(self, P: CurvePoint) -> CurvePoint:
        if P.curve != self.target:
            raise ValueError("point not on the target model")
        if P.is_infinity:
            return self.source.infinity
        u2 = self.u * self.u
        x = u2 * P.x + self.r
        y = u2 * self.u * P.y + self.s * u2 * P.x + self.t
        return CurvePoint(self.source, x, y)

    def compose(self, other: WeierstrassIso) -> WeierstrassIso:
        """other after self: source -> other.target (requires
        self.target == other.source)."""
        if other.source != self.target:
            raise ValueError("isomorphisms do not compose")
        u = self.u * other.u
        r = self.u * self.u * other.r + self.r
        s = self.u * other.s + self.s
        t = self.u ** 3 * other.t + self.s * self.u * self.u * other.r + self.t
        return WeierstrassIso(self.source, other.target, u, r, s, t)

    def __repr__(self) -> str:
        return f"WeierstrassIso(u={self.u.lift()}, r={self.r.lift()})"


class ShortModelMap:
    """Long model and its short model plus the point transform, kept as the
    public face of to_short_weierstrass."""

    __slots__ = ("long_curve", "short_curve", "iso")

    def __init__(self, iso: WeierstrassIso):
        object.__setattr__(self, "iso", iso)
        object.__setattr__(self, "long_curve", iso.source)
        object.__setattr__(self, "short_curve", iso.target)

    def __setattr__(self, name, value):
        raise AttributeError("ShortModelMap is immutable")

    def to_short(self, P: CurvePoint) -> CurvePoint:
        return self.iso.forward(P)

    def from_short(self, P: CurvePoint) -> CurvePoint:
        return self.iso.backward(P)


def _identity_iso(c: Curve) -> WeierstrassIso:
    return WeierstrassIso(c, c, 1, 0, 0, 0)


@lru_cache(maxsize=None)
def to_short_weierstrass(c: Curve) -> ShortModelMap:
    """Short model y^2 = x^3 + Ax + B (A = -27c4, B = -54c6) plus the point
    transform; a curve that is already short maps to itself."""
    if c.is_short:
        return ShortModelMap(_identity_iso(c))
    c4, c6 = c.c_invariants()
    short = Curve(c.field, [0, 0, 0, -27 * c4, -54 * c6])
    b2 = c.a1 * c.a1 + 4 * c.a2
    sixth = QQ(1, 6)
    r = -b2 * QQ(1, 12)
    s = -c.a1 * QQ(1, 2)
    t = c.a1 * b2 * QQ(1, 24) - c.a3 * QQ(1, 2)
    iso = WeierstrassIso(c, short, sixth, r, s, t)
    return ShortModelMap(iso)


def _valuation(x, q: int) -> int:
    if x == 0:
        return 10 ** 9
    v = 0
    n = int(x.numerator)
    while n % q == 0:
        n //= q
        v += 1
    if v:
        return v
    d = int(x.denominator)
    while d % q == 0:
        d //= q
        v -= 1
    return v


def _minimize_short_pair(A, B):
    """A rational w minimizing the height of (A/w^4, B/w^6): per prime q in
    the support, pick the exponent that best balances the two valuations."""
    support: set[int] = set()
    for v in (A, B):
        for part in (abs(int(v.numerator)), int(v.denominator)):
            q = 2
            while q * q <= part and q < 1000:
                if part % q == 0:
                    support.add(q)
                    while part % q == 0:
                        part //= q
                q += 1
            if 1 < part < 1000:
                support.add(part)
    w = QQ(1)
    for q in sorted(support):
        targets = []
        if A != 0:
            targets.append(_valuation(A, q) // 4)
        if B != 0:
            targets.append(_valuation(B, q) // 6)
        if not targets:
            continue
        best_e, best_cost = 0, None
        for e in range(min(targets) - 2, max(targets) + 3):
            cost = (abs(_valuation(A, q) - 4 * e) if A != 0 else 0) \
                 + (abs(_valuation(B, q) - 6 * e) if B != 0 else 0)
            if best_cost is None or cost < best_cost:
                best_e, best_cost = e, cost
        if best_e:
            w *= QQ(q) ** best_e
    return w


@lru_cache(maxsize=None)
def reduced_short_model(c: Curve) -> ShortModelMap:
    """Short model with small coefficients: the standard short model twisted
    by a rational w chosen per prime to balance the 4th/6th-power content of
    (A, B).  Everything downstream (division polynomials, torsion towers)
    works on this model; points map back through the iso.  Denominators only
    ever involve primes from the original coefficients, 2 and 3, so reduction
    at p >= 5 is unaffected."""
    base = to_short_weierstrass(c)
    short = base.short_curve
    if not short.has_rational_model():
        return base
    A, B = short.a4.as_fraction(), short.a6.as_fraction()
    w = _minimize_short_pair(A, B)
    if w == 1:
        return base
    A2, B2 = A / w ** 4, B / w ** 6
    target = Curve(short.field, [0, 0, 0, A2, B2])
    twist = WeierstrassIso(short, target, w, 0, 0, 0)
    return ShortModelMap(base.iso.compose(twist))


def curve_from_short_ab(field: NumberField, a, b) -> Curve:
    return Curve(field, [0, 0, 0, a, b])


# ---------------------------------------------------------------------------
# division polynomials (short model only)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _psi_xpart_rational(a, b, n: int) -> PolyQ:
    """P_n for y^2 = x^3 + ax + b over Q, where psi_n = P_n for odd n and
    psi_n = y * P_n for even n (y^2 already substituted by x^3 + ax + b)."""
    if n < 0:
        raise ValueError("division polynomial index must be >= 0")
    f = PolyQ([b, a, 0, 1])
    table: dict[int, PolyQ] = {
        0: PolyQ.zero(),
        1: PolyQ.one(),
        2: PolyQ((2,)),
        3: PolyQ([-a * a, 12 * b, 6 * a, 0, 3]),
        4: PolyQ([-4 * (8 * b * b + a ** 3), -16 * a * b, -20 * a * a, 80 * b, 20 * a, 0, 4]),
    }

    def P(k: int) -> PolyQ:
        if k in table:
            return table[k]
        m = k // 2
        if k % 2 == 1:
            # psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            if m % 2 == 0:
                val = (f * f) * P(m + 2) * P(m) ** 3 - P(m - 1) * P(m + 1) ** 3
            else:
                val = P(m + 2) * P(m) ** 3 - (f * f) * P(m - 1) * P(m + 1) ** 3
        else:
            # psi_{2m} * 2y = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2)
            val = (P(m) * (P(m + 2) * P(m - 1) ** 2 - P(m - 2) * P(m + 1) ** 2)).scale(QQ(1, 2))
        table[k] = val
        return val

    return P(n)


def _psi_xpart_nf(curve: Curve, n: int) -> PolyNF:
    """P_n over the curve field for a short-model curve; rational
    coefficients take the cached PolyQ path."""
    a, b = curve.a4, curve.a6
    if a.is_rational_value and b.is_rational_value:
        return PolyNF.from_polyq(curve.field, _psi_xpart_rational(a.as_fraction(), b.as_fraction(), n))
    K = curve.field
    f = PolyNF(K, [b, a, K.zero, K.one])
    table: dict[int, PolyNF] = {
        0: PolyNF.zero(K),
        1: PolyNF.one(K),
        2: PolyNF(K, [K.from_rational(2)]),
        3: PolyNF(K, [-(a * a), 12 * b, 6 * a, K.zero, K.from_rational(3)]),
        4: PolyNF(K, [-4 * (8 * b * b + a ** 3), -16 * a * b, -20 * (a * a), 80 * b,
                      20 * a, K.zero, K.from_rational(4)]),
    }

    def P(k: int) -> PolyNF:
        if k in table:
            return table[k]
        m = k // 2
        if k % 2 == 1:
            if m % 2 == 0:
                val = (f * f) * P(m + 2) * P(m) ** 3 - P(m - 1) * P(m + 1) ** 3
            else:
                val = P(m + 2) * P(m) ** 3 - (f * f) * P(m - 1) * P(m + 1) ** 3
        else:
            val = (P(m) * (P(m + 2) * P(m - 1) ** 2 - P(m - 2) * P(m + 1) ** 2)) * QQ(1, 2)
        table[k] = val
        return val

    return P(n)


def division_poly(n: int, curve: Curve) -> PolyNF:
    """Polynomial in x whose roots are the x-coordinates of the nontrivial
    points killed by n, on a short-model curve.

    Convention: for odd n this is psi_n itself (leading coefficient n,
    degree (n^2-1)/2); for even n it is (x^3 + ax + b) * (psi_n / (2y)),
    so the 2-torsion cubic appears as an explicit factor.
    """
    if n == 0:
        raise ValueError("division polynomial of index 0")
    if not curve.is_short:
        raise ValueError("division polynomials are defined on the short model")
    xpart = _psi_xpart_nf(curve, n)
    if n % 2 == 1:
        return xpart
    K = curve.field
    f = PolyNF(K, [curve.a6, curve.a4, K.zero, K.one])
    return f * (xpart * QQ(1, 2))


def _mult_by_n_x_polys(curve: Curve, n: int) -> tuple[PolyNF, PolyNF]:
    """(A, B) with x([n]P) = (x*A(x) - B(x)) / A(x) for the short model:
    A = psi_n^2 and B = psi_{n+1} psi_{n-1}, both as pure x-polynomials."""
    K = curve.field
    a, b = curve.a4, curve.a6
    if a.is_rational_value and b.is_rational_value:
        aq, bq = a.as_fraction(), b.as_fraction()
        f = PolyQ([bq, aq, 0, 1])
        Pn = _psi_xpart_rational(aq, bq, n)
        Pn1 = _psi_xpart_rational(aq, bq, n + 1)
        Pn_1 = _psi_xpart_rational(aq, bq, n - 1)
        if n % 2 == 1:
            A, B = Pn * Pn, f * Pn1 * Pn_1
        else:
            A, B = f * Pn * Pn, Pn1 * Pn_1
        return PolyNF.from_polyq(K, A), PolyNF.from_polyq(K, B)
    f = PolyNF(K, [b, a, K.zero, K.one])
    Pn = _psi_xpart_nf(curve, n)
    Pn1 = _psi_xpart_nf(curve, n + 1)
    Pn_1 = _psi_xpart_nf(curve, n - 1)
    if n % 2 == 1:
        return Pn * Pn, f * Pn1 * Pn_1
    return f * Pn * Pn, Pn1 * Pn_1


# ---------------------------------------------------------------------------
# reduction and point counting
# ---------------------------------------------------------------------------


class ReducedCurve:
    """A short-model curve over a small finite field."""

    __slots__ = ("F", "a", "b")

    def __init__(self, F: GF, a, b):
        self.F = F
        self.a = a
        self.b = b
        disc = F.add(F.mul(F.from_int(4), F.pow(a, 3)), F.mul(F.from_int(27), F.mul(b, b)))
        if disc == F.zero:
            raise BadReductionError("reduced curve is singular")


POINT_COUNT_CAP = 20000


def count_points(rc: ReducedCurve) -> int:
    """#E(F_q) including infinity by scanning x; q is capped so the scan
    stays cheap.  The Hasse bound is asserted on the way out."""
    F = rc.F
    q = F.order
    if q > POINT_COUNT_CAP:
        raise ValueError(f"q={q} exceeds naive enumeration cap {POINT_COUNT_CAP}")
    squares: dict = {}
    for z in F.elements():
        squares.setdefault(F.mul(z, z), 0)
        squares[F.mul(z, z)] += 1
    total = 1
    for x in F.elements():
        rhs = F.add(F.mul(F.add(F.mul(x, x), rc.a), x), rc.b)  # x^3 + ax + b
        rhs = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(rc.a, x), rc.b))
        total += squares.get(rhs, 0)
    assert abs(q + 1 - total) <= 2 * isqrt(q) + 1, "Hasse bound violated: counting bug"
    return total


def _min_degree_factor_mod_p(m: PolyQ, p: int) -> list[int] | None:
    """A minimal-degree monic irreducible factor of m mod p, or None when m
    is not squarefree mod p or degenerates."""
    from .modp import fp_distinct_degree, fp_equal_degree_split, fp_is_squarefree, fp_monic, fp_strip
    ints, den = m.clear_denominators()
    if den % p == 0:
        return None
    inv_den = pow(den, -1, p)
    fp = fp_strip([c * inv_den % p for c in ints])
    if len(fp) - 1 != m.degree:
        return None
    if not fp_is_squarefree(fp, p):
        return None
    pieces = fp_distinct_degree(fp_monic(fp, p), p)
    best = min(pieces, key=lambda gd: gd[1])
    g, d = best
    rng = random.Random(p * 7919 + 17)
    split = fp_equal_degree_split(g, d, p, rng)
    return min(split, key=lambda h: (len(h), h))


def reduce_curve(curve: Curve, p: int) -> ReducedCurve:
    """Reduce the short model of a curve at a prime above p of minimal
    residue degree; raises BadReductionError when p is inadmissible."""
    sm = reduced_short_model(curve)
    short = sm.short_curve
    K = short.field
    if K.degree == 1:
        F = GF(p)
        theta_img = F.zero
    else:
        g = _min_degree_factor_mod_p(K.defining_poly, p)
        if g is None:
            raise BadReductionError(f"defining polynomial not squarefree mod {p}")
        F = GF(p, g)
        theta_img = F.gen()

    def embed(elt: FieldElement):
        acc = F.zero
        for c in reversed(elt.coords):
            acc = F.add(F.mul(acc, theta_img), F.from_fraction(int(c.numerator), int(c.denominator)))
        return acc

    a = embed(short.a4)
    b = embed(short.a6)
    return ReducedCurve(F, a, b)


def frobenius_trace(curve: Curve, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for a curve over Q with good reduction at p."""
    if curve.field.degree != 1:
        raise ValueError("frobenius_trace expects a curve over Q")
    rc = reduce_curve(curve, p)
    if rc.F.order != p:
        raise BadReductionError("residue field is not prime")
    return p + 1 - count_points(rc)


def torsion_bound(curve: Curve, emb: Optional[Embedding] = None, num_primes: int = 5) -> int:
    """gcd of #E(F_q) over admissible odd primes p >= 5: p unramified in L
    (p does not divide disc of the defining polynomial), good reduction, and
    q = p^f at most the naive counting cap, f the minimal residue degree.

    The result is a multiple of #E(L)_tors.
    """
    if emb is None:
        emb = Embedding.identity(curve.field)
    if emb.source != curve.field:
        raise ValueError("embedding source must be the curve base field")
    curve_L = curve.base_change(emb)
    counts: list[int] = []
    for p in primes_from(5):
        if p > 1000:
            break
        try:
            rc = reduce_curve(curve_L, p)
        except (BadReductionError, ValueError):
            continue
        if rc.F.order > POINT_COUNT_CAP:
            continue
        counts.append(count_points(rc))
        if len(counts) >= num_primes:
            break
    if len(counts) < num_primes:
        raise BadReductionError(
            f"could not find {num_primes} admissible primes below 1000 for the torsion bound")
    g = 0
    for n in counts:
        g = _int_gcd(g, n)
    return g


# ---------------------------------------------------------------------------
# torsion data
# ---------------------------------------------------------------------------


class TorsionData:
    """E(L)_tors (or one l-primary part) as invariants m | n plus explicit
    generators on the given curve model."""

    __slots__ = ("invariant_m", "invariant_n", "generators", "field", "curve")

    def __init__(self, curve: Curve, invariant_m: int, invariant_n: int,
                 generators: Sequence[CurvePoint], check: bool = True):
        self.curve = curve
        self.field = curve.field
        self.invariant_m = invariant_m
        self.invariant_n = invariant_n
        self.generators = tuple(generators)
        if check:
            self._validate()

    def _validate(self):
        m, n = self.invariant_m, self.invariant_n
        if m < 1 or n < 1 or n % m:
            raise ValueError("invariants must satisfy m | n")
        expected = [o for o in (m, n) if o > 1]
        orders = [point_order(P) for P in self.generators]
        if sorted(orders) != sorted(expected):
            raise ValueError(f"generator orders {orders} do not match invariants ({m}, {n})")
        if len(self.group_elements()) != m * n:
            raise ValueError("generated group has wrong order")

    @property
    def order(self) -> int:
        return self.invariant_m * self.invariant_n

    def group_elements(self) -> set[CurvePoint]:
        pts = {self.curve.infinity}
        for g in self.generators:
            new_pts = set()
            acc = self.curve.infinity
            for _ in range(point_order(g)):
                for q in pts:
                    new_pts.add(add(q, acc))
                acc = add(acc, g)
            pts = new_pts
        return pts

    def structure(self) -> str:
        m, n = self.invariant_m, self.invariant_n
        if n == 1:
            return "trivial"
        if m == 1:
            return f"Z/{n}"
        return f"Z/{m} + Z/{n}"

    def __repr__(self) -> str:
        return f"TorsionData({self.structure()} over {self.field.label})"


def _group_closure(points: Iterable[CurvePoint], curve: Curve) -> set[CurvePoint]:
    elems = {curve.infinity}
    frontier = [p for p in points if not p.is_infinity]
    for p in frontier:
        elems.add(p)
    changed = True
    while changed:
        changed = False
        current = list(elems)
        for a in current:
            for b in frontier:
                s = add(a, b)
                if s not in elems:
                    elems.add(s)
                    changed = True
    return elems


def _structure_from_points(curve: Curve, pts: set[CurvePoint]) -> TorsionData:
    """Invariants and generators for a finite abelian group of curve points
    with at most two generators."""
    if len(pts) == 1:
        return TorsionData(curve, 1, 1, [])
    orders = {P: point_order(P) for P in pts}
    n = max(orders.values())
    B = max(pts, key=lambda P: (orders[P], _point_sort_key(P)))
    m = len(pts) // n
    if m == 1:
        return TorsionData(curve, 1, n, [B])
    sub_b = set()
    acc = curve.infinity
    for _ in range(n):
        sub_b.add(acc)
        acc = add(acc, B)
    for A in sorted(pts, key=_point_sort_key):
        if orders[A] == m:
            inter = {mul_scalar(j, A) for j in range(m)} & sub_b
            if len(inter) == 1:
                return TorsionData(curve, m, n, [A, B])
    raise RuntimeError("failed to split torsion group into two cyclic factors")


def _point_sort_key(P: CurvePoint) -> tuple:
    if P.is_infinity:
        return ((),)
    return (P.x.coords, P.y.coords)


# ---------------------------------------------------------------------------
# l-power torsion search
# ---------------------------------------------------------------------------


def _roots_in_extension(poly: PolyNF, L: NumberField, factor_cap: int) -> set[FieldElement]:
    """Roots in L of a polynomial whose coefficients might be rational."""
    try:
        pq = poly.to_polyq()
    except ValueError:
        pq = None
    if pq is not None:
        return roots_in_field(pq, L, degree_cap=factor_cap)
    if poly.field != L:
        raise ValueError("polynomial must live over L")
    return roots_of_nf_poly(poly, degree_cap=factor_cap)


def _ell_torsion_level1(short: Curve, ell: int, factor_cap: int) -> set[CurvePoint]:
    """All points of E(L)[ell] on a short-model curve over L."""
    L = short.field
    pts = {short.infinity}
    if ell == 2:
        cubic = PolyNF(L, [short.a6, short.a4, L.zero, L.one])
        for x0 in _roots_in_extension(cubic, L, factor_cap):
            pts.add(CurvePoint(short, x0, L.zero))
        return pts
    xpart = _psi_xpart_nf(short, ell)
    for x0 in _roots_in_extension(xpart, L, factor_cap):
        c = short.rhs(x0)
        w = is_square(c)
        if w is not None:
            pts.add(CurvePoint(short, x0, w))
            pts.add(CurvePoint(short, x0, -w))
    return pts


def _divide_point(short: Curve, S: CurvePoint, ell: int, factor_cap: int) -> list[CurvePoint]:
    """All T in E(L) with [ell]T = S, for affine S on a short-model curve."""
    L = short.field
    A, B = _mult_by_n_x_polys(short, ell)
    # numerator of x([ell]T) - x_S:  x*A - B - x_S*A
    target = PolyNF.x(L) * A - B - A * S.x
    out = []
    for x0 in _roots_in_extension(target, L, factor_cap):
        c = short.rhs(x0)
        w = is_square(c)
        if w is None:
            continue
        for y0 in {w, -w}:
            T = CurvePoint(short, x0, y0)
            if mul_scalar(ell, T) == S:
                out.append(T)
    return out


def _direction_reps(current: set[CurvePoint], ell: int, curve: Curve) -> list[CurvePoint]:
    """One representative per F_ell-line of current/(ell*current); dividing
    these detects every possible growth direction."""
    ell_cur = {mul_scalar(ell, P) for P in current}
    cosets: dict[frozenset, CurvePoint] = {}
    for P in sorted(current, key=_point_sort_key):
        if P in ell_cur and P.is_infinity:
            continue
        coset = frozenset(add(P, R) for R in ell_cur)
        if curve.infinity in coset:
            continue  # P lies in ell*current: nothing new in this class
        if coset not in cosets:
            cosets[coset] = P
    # collapse scalar multiples: the line through a coset C is {C, 2C, ...}
    reps: list[CurvePoint] = []
    seen: set[frozenset] = set()
    for coset, P in cosets.items():
        if coset in seen:
            continue
        for j in range(1, ell):
            Q = mul_scalar(j, P)
            seen.add(frozenset(add(Q, R) for R in ell_cur))
        reps.append(P)
    return reps


def ell_power_torsion(curve: Curve, emb: Embedding, ell: int, k: int,
                      order_cap: Optional[int] = None,
                      factor_cap: int = 4 * DEFAULT_FIELD_DEGREE_CAP) -> TorsionData:
    """The full group E(L)[ell^k] for the curve base-changed through emb.

    order_cap, when given, is an upper bound on |E(L)[ell^infinity]| (e.g.
    the ell-part of a reduction bound); the ascent stops early once the cap
    is reached.
    """
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    curve_L = curve.base_change(emb) if emb.source != emb.target else curve
    sm = reduced_short_model(curve_L)
    short = sm.short_curve
    current = _ell_torsion_level1(short, ell, factor_cap)
    level = 1
    while level < k:
        if order_cap is not None and len(current) >= order_cap:
            break
        if len(current) == 1:
            break
        grew = False
        for S in _direction_reps(current, ell, short):
            found = _divide_point(short, S, ell, factor_cap)
            if found:
                current = _group_closure(current | set(found), short)
                grew = True
        if not grew:
            break
        level += 1
    data = _structure_from_points(short, current)
    gens_long = [sm.from_short(P) for P in data.generators]
    return TorsionData(curve_L, data.invariant_m, data.invariant_n, gens_long)


def torsion_subgroup(curve: Curve, emb: Optional[Embedding] = None,
                     factor_cap: int = 4 * DEFAULT_FIELD_DEGREE_CAP) -> TorsionData:
    """Full E(L)_tors: reduction bound first, then one l-power search per
    prime divisor of the bound, assembled by CRT."""
    if emb is None:
        emb = Embedding.identity(curve.field)
    bound = torsion_bound(curve, emb)
    curve_L = curve.base_change(emb) if emb.source != emb.target else curve
    m_total, n_total = 1, 1
    gen_small: Optional[CurvePoint] = None
    gen_big: Optional[CurvePoint] = None
    for ell in _prime_divisors(bound):
        v = 0
        b = bound
        while b % ell == 0:
            b //= ell
            v += 1
        part = ell_power_torsion(curve, emb, ell, k=v, order_cap=ell ** (2 * v),
                                 factor_cap=factor_cap)
        if part.order == 1:
            continue
        m_total *= part.invariant_m
        n_total *= part.invariant_n
        gens = list(part.generators)
        big = max(gens, key=point_order)
        gens.remove(big)
        small = gens[0] if gens else None
        gen_big = big if gen_big is None else add(gen_big, big)
        if small is not None:
            gen_small = small if gen_small is None else add(gen_small, small)
    generators = [g for g in (gen_small, gen_big) if g is not None]
    return TorsionData(curve_L, m_total, n_total, generators)


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# saturation: points whose ell^k multiple is rational over the base
# ---------------------------------------------------------------------------


class Saturation:
    """Generators of T_k = {P in E[ell^infinity] : ell^k P in E(K)} together
    with their field of definition K(T_k)."""

    __slots__ = ("base", "ell", "k", "points", "sat_field", "embedding")

    def __init__(self, base: Curve, ell: int, k: int, points: Sequence[CurvePoint],
                 sat_field: NumberField, embedding: Embedding):
        self.base = base
        self.ell = ell
        self.k = k
        self.points = tuple(points)
        self.sat_field = sat_field
        self.embedding = embedding

    def __repr__(self) -> str:
        return (f"Saturation(ell={self.ell}, k={self.k}, "
                f"{len(self.points)} generators over {self.sat_field.label})")


def _divide_point_extending(short: Curve, S: CurvePoint, ell: int,
                            degree_cap: int) -> tuple[Embedding, CurvePoint]:
    """One T with [ell]T = S, extending the base field when necessary.

    Returns (emb, T): emb maps the old field into T's field (identity when no
    extension was needed), and [ell]T equals the embedded S exactly.
    """
    from .numberfield import factor_over_nf

    L = short.field
    A, B = _mult_by_n_x_polys(short, ell)
    target = (PolyNF.x(L) * A - B - A * S.x).monic()
    factors = sorted((g for g, _ in factor_over_nf(target, degree_cap=4 * degree_cap)),
                     key=lambda g: g.sort_key())
    last_error: Optional[Exception] = None
    for h in factors:
        try:
            L2, emb, x0 = extend_by_factor(L, h, degree_cap=degree_cap)
        except DegreeCapExceeded as exc:
            last_error = exc
            continue
        short2 = short.base_change(emb)
        S2 = CurvePoint(short2, emb.apply(S.x), emb.apply(S.y))
        c = short2.rhs(x0)
        w = is_square(c)
        if w is None:
            quad = PolyNF(L2, [-c, L2.zero, L2.one])
            try:
                L3, emb2, w = extend_by_factor(L2, quad, degree_cap=degree_cap)
            except DegreeCapExceeded as exc:
                last_error = exc
                continue
            emb = emb.compose(emb2)
            short2 = short2.base_change(emb2)
            S2 = CurvePoint(short2, emb2.apply(S2.x), emb2.apply(S2.y))
            x0 = emb2.apply(x0)
        for y0 in (w, -w):
            T = CurvePoint(short2, x0, y0)
            if mul_scalar(ell, T) == S2:
                return emb, T
        raise RuntimeError("division candidate failed the group-law check")
    if last_error is not None:
        raise last_error
    raise RuntimeError("no division preimage found")


class _Tower:
    """A short-model curve over a growing field with tracked points that get
    re-embedded whenever the field grows."""

    def __init__(self, short: Curve):
        self.short = short
        self.from_base = Embedding.identity(short.field)
        self.points: list[CurvePoint] = []

    def grow(self, emb: Embedding):
        if emb.is_identity:
            return
        self.short = self.short.base_change(emb)
        self.from_base = self.from_base.compose(emb)
        self.points = [self.short.infinity if P.is_infinity
                       else CurvePoint(self.short, emb.apply(P.x), emb.apply(P.y))
                       for P in self.points]

    def track(self, P: CurvePoint) -> int:
        self.points.append(P)
        return len(self.points) - 1

    def divide(self, idx: int, ell: int, degree_cap: int):
        emb, T = _divide_point_extending(self.short, self.points[idx], ell, degree_cap)
        self.grow(emb)
        self.points[idx] = CurvePoint(self.short, T.x, T.y)


def _ensure_full_ell_torsion(tower: _Tower, ell: int, degree_cap: int) -> tuple[int, int]:
    """Extend the tower field until E[ell] is fully rational; track and
    return indices of two independent order-ell points."""
    while True:
        pts = _ell_torsion_level1(tower.short, ell, 4 * degree_cap)
        if len(pts) == ell * ell:
            break
        K = tower.short.field
        if ell == 2:
            xpart = PolyNF(K, [tower.short.a6, tower.short.a4, K.zero, K.one])
        else:
            xpart = _psi_xpart_nf(tower.short, ell)
        from .numberfield import factor_over_nf
        factors = [g for g, _ in factor_over_nf(xpart, degree_cap=4 * degree_cap)]
        nonlinear = sorted((g for g in factors if g.degree > 1), key=lambda g: g.sort_key())
        if nonlinear:
            _, emb, _ = extend_by_factor(K, nonlinear[0], degree_cap=degree_cap)
            tower.grow(emb)
            continue
        # all x-coordinates rational over the tower: a y must be missing
        missing = None
        for x0 in sorted(_roots_in_extension(xpart, K, 4 * degree_cap),
                         key=lambda r: r.sort_key()):
            if is_square(tower.short.rhs(x0)) is None:
                missing = x0
                break
        if missing is None:
            raise RuntimeError("level structure bookkeeping failed")
        quad = PolyNF(K, [-tower.short.rhs(missing), K.zero, K.one])
        _, emb, _ = extend_by_factor(K, quad, degree_cap=degree_cap)
        tower.grow(emb)
    U1, U2 = _two_independent(pts, ell, tower.short)
    return tower.track(U1), tower.track(U2)


def _two_independent(pts: set[CurvePoint], ell: int, curve: Curve) -> tuple[CurvePoint, CurvePoint]:
    nontrivial = sorted((P for P in pts if not P.is_infinity), key=_point_sort_key)
    P = nontrivial[0]
    line = {mul_scalar(j, P) for j in range(ell)}
    for Q in nontrivial:
        if Q not in line:
            return P, Q
    raise RuntimeError("full level structure expected but not found")


def saturate(curve: Curve, ell: int, k: int,
             degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> Saturation:
    """Generators of T_k and the field K(T_k).

    T_k is generated by k-fold ell-division lifts of the generators of
    E(K)[ell^infinity] together with a basis of E[ell^k]; each division step
    extends the working field only as far as the new point requires, with a
    degree-cap check between levels.  DegreeCapExceeded propagates with
    context when the tower leaves desk scale (the expected outcome for most
    k >= 1 inputs).
    """
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    if k < 0:
        raise ValueError("k must be >= 0")
    K = curve.field
    identity = Embedding.identity(K)
    sm = reduced_short_model(curve)

    bound = torsion_bound(curve)
    v = 0
    b = bound
    while b % ell == 0:
        b //= ell
        v += 1
    if v == 0:
        base_gens_short: list[CurvePoint] = []
    else:
        data = ell_power_torsion(curve, identity, ell, k=v, order_cap=ell ** (2 * v),
                                 factor_cap=4 * degree_cap)
        base_gens_short = [sm.to_short(P) for P in data.generators]

    if k == 0:
        pts = [sm.from_short(P) for P in base_gens_short]
        return Saturation(curve, ell, 0, pts, K, identity)

    tower = _Tower(sm.short_curve)
    gen_indices = [tower.track(P) for P in base_gens_short]
    for idx in gen_indices:
        for _ in range(k):
            tower.divide(idx, ell, degree_cap)
    u1, u2 = _ensure_full_ell_torsion(tower, ell, degree_cap)
    for idx in (u1, u2):
        for _ in range(k - 1):
            tower.divide(idx, ell, degree_cap)

    sat_field = tower.short.field
    long_L = curve.base_change(tower.from_base)
    sm_L = reduced_short_model(long_L)
    gens = [sm_L.from_short(tower.points[i]) for i in gen_indices + [u1, u2]]
    return Saturation(curve, ell, k, gens, sat_field, tower.from_base)
