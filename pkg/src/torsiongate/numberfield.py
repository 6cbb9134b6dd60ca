"""Absolute number fields Q[theta]/(m), their elements and embeddings.

Every field is absolute over Q; towers are flattened through `compositum`,
which returns the new field together with an explicit embedding of the old
one.  Factorization over a field uses Trager's norm method: shift by a small
multiple of the generator until the resultant norm down to Q is squarefree,
factor the norm with the rational Zassenhaus engine, and pull factors back
with gcds over the field.

Resultants of the shape res_z(m(z), F(x, z)) are computed by specializing x
at enough rational points and interpolating, skipping specializations where
the z-degree drops; with exact rationals this is both simple and fast at the
degrees this package works with.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Optional, Sequence

from .errors import DegreeCapExceeded, ReduciblePolynomialError
from .factorq import factor_over_Q
from .polyq import QQ, RATIONAL_TYPES, Rational, PolyQ, lagrange_interpolate, poly_gcd, poly_resultant

DEFAULT_FIELD_DEGREE_CAP = 64


def sqrt_fraction(c) -> Optional[Rational]:
    """Exact square root of a rational, or None when c is not a square."""
    if c < 0:
        return None
    n, d = int(c.numerator), int(c.denominator)
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return QQ(rn, rd)
    return None


class NumberField:
    """An absolute extension Q[x]/(m) with m monic irreducible."""

    __slots__ = ("defining_poly", "degree", "label")

    def __init__(self, defining_poly: PolyQ, label: str = "", _trusted: bool = False):
        if not defining_poly.is_monic():
            raise ValueError("defining polynomial must be monic")
        if defining_poly.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        if not _trusted and defining_poly.degree > 1:
            factors = factor_over_Q(defining_poly)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ReduciblePolynomialError(str(factors[0][0]))
        object.__setattr__(self, "defining_poly", defining_poly)
        object.__setattr__(self, "degree", defining_poly.degree)
        object.__setattr__(self, "label", label or f"Q[x]/({defining_poly})")

    def __setattr__(self, name, value):
        raise AttributeError("NumberField is immutable")

    # ----- element constructors -----

    def element(self, coords: Iterable) -> FieldElement:
        cs = [c if isinstance(c, RATIONAL_TYPES) else QQ(c) for c in coords]
        if len(cs) > self.degree:
            raise ValueError("coordinate vector longer than field degree")
        cs += [QQ(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def from_rational(self, c) -> FieldElement:
        return self.element([QQ(c)])

    def from_polyq(self, f: PolyQ) -> FieldElement:
        return self.element((f % self.defining_poly).coeffs)

    @property
    def zero(self) -> FieldElement:
        return self.from_rational(0)

    @property
    def one(self) -> FieldElement:
        return self.from_rational(1)

    @property
    def gen(self) -> FieldElement:
        if self.degree == 1:
            # canonical Q: the generator is the root of x, i.e. 0
            return self.from_polyq(PolyQ.x())
        return self.element([0, 1])

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self) -> int:
        return hash(self.defining_poly)

    def __repr__(self) -> str:
        return f"NumberField({self.label}, degree {self.degree})"


QQ_FIELD = NumberField(PolyQ.x(), label="Q")


def nf_create(m: PolyQ, label: str = "", degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> NumberField:
    """Build Q[x]/(m); any monic linear input collapses to the canonical Q."""
    if m.degree > degree_cap:
        raise DegreeCapExceeded(m.degree, degree_cap, "nf_create")
    if m.degree == 1:
        if not m.is_monic():
            raise ValueError("defining polynomial must be monic")
        return QQ_FIELD
    return NumberField(m, label)


class FieldElement:
    """Element of a NumberField in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        if len(coords) != field.degree:
            raise ValueError("coordinate length must equal the field degree")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def lift(self) -> PolyQ:
        return PolyQ(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_rational_value(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Rational:
        if not self.is_rational_value:
            raise ValueError("element is not rational")
        return self.coords[0]

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements live in different fields")
            return other
        return self.field.from_rational(other)

    def __add__(self, other) -> FieldElement:
        o = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other) -> FieldElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> FieldElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> FieldElement:
        o = self._coerce(other)
        prod = self.lift() * o.lift()
        return self.field.from_polyq(prod)

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        """Inverse via the extended Euclid of the lift against the defining
        polynomial."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        if self.field.degree == 1:
            return self.field.from_rational(1 / self.coords[0])
        m = self.field.defining_poly
        r0, r1 = m, self.lift()
        t0, t1 = PolyQ.zero(), PolyQ.one()
        while not r1.is_zero:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        if r0.degree != 0:
            raise ZeroDivisionError("element not invertible; field data corrupted")
        return self.field.from_polyq(t0.scale(1 / r0.constant))

    def __truediv__(self, other) -> FieldElement:
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> FieldElement:
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int,) + RATIONAL_TYPES):
            return self.is_rational_value and self.coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def sort_key(self) -> tuple:
        return self.coords

    def __repr__(self) -> str:
        return f"<{self.lift()} in {self.field.label}>"


class Embedding:
    """A field homomorphism source -> target given by the image of the
    source generator."""

    __slots__ = ("source", "target", "generator_image")

    def __init__(self, source: NumberField, target: NumberField, generator_image: FieldElement):
        if generator_image.field != target:
            raise ValueError("generator image must live in the target field")
        # the defining relation must hold exactly
        if not _eval_polyq_at(source.defining_poly, generator_image).is_zero:
            raise ValueError("generator image is not a root of the source polynomial")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "generator_image", generator_image)

    def __setattr__(self, name, value):
        raise AttributeError("Embedding is immutable")

    @classmethod
    def identity(cls, field: NumberField) -> Embedding:
        return cls(field, field, field.gen)

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.generator_image == self.source.gen

    @classmethod
    def from_rationals(cls, target: NumberField) -> Embedding:
        return cls(QQ_FIELD, target, target.zero)

    def apply(self, elt: FieldElement) -> FieldElement:
        if elt.field != self.source:
            raise ValueError("element does not belong to the embedding source")
        acc = self.target.zero
        for c in reversed(elt.coords):
            acc = acc * self.generator_image + self.target.from_rational(c)
        return acc

    def __call__(self, elt: FieldElement) -> FieldElement:
        return self.apply(elt)

    def compose(self, outer: Embedding) -> Embedding:
        """outer o self : source -> outer.target."""
        if outer.source != self.target:
            raise ValueError("embeddings do not compose")
        return Embedding(self.source, outer.target, outer.apply(self.generator_image))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Embedding) and self.source == other.source
                and self.target == other.target
                and self.generator_image == other.generator_image)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.generator_image))

    def __repr__(self) -> str:
        return f"Embedding({self.source.label} -> {self.target.label})"


def extension_degree(emb: Embedding) -> int:
    n, d = emb.target.degree, emb.source.degree
    if n % d:
        raise ValueError("target degree not divisible by source degree; corrupted embedding")
    return n // d


def _eval_polyq_at(f: PolyQ, x: FieldElement) -> FieldElement:
    acc = x.field.zero
    for c in reversed(f.coeffs):
        acc = acc * x + x.field.from_rational(c)
    return acc


# ---------------------------------------------------------------------------
# polynomials with number-field coefficients
# ---------------------------------------------------------------------------


class PolyNF:
    """Dense univariate polynomial with coefficients in one NumberField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Sequence[FieldElement]):
        cs = list(coeffs)
        for c in cs:
            if c.field != field:
                raise ValueError("all coefficients must live in the same field")
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyNF is immutable")

    @classmethod
    def from_polyq(cls, field: NumberField, f: PolyQ) -> PolyNF:
        return cls(field, [field.from_rational(c) for c in f.coeffs])

    @classmethod
    def from_roots(cls, field: NumberField, roots: Sequence[FieldElement]) -> PolyNF:
        out = cls.one(field)
        for r in roots:
            out = out * cls(field, [-r, field.one])
        return out

    @classmethod
    def zero(cls, field: NumberField) -> PolyNF:
        return cls(field, [])

    @classmethod
    def one(cls, field: NumberField) -> PolyNF:
        return cls(field, [field.one])

    @classmethod
    def x(cls, field: NumberField) -> PolyNF:
        return cls(field, [field.zero, field.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __add__(self, other: PolyNF) -> PolyNF:
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return PolyNF(self.field, a)

    def __neg__(self) -> PolyNF:
        return PolyNF(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: PolyNF) -> PolyNF:
        return self + (-other)

    def __mul__(self, other) -> PolyNF:
        if isinstance(other, FieldElement):
            return PolyNF(self.field, [c * other for c in self.coeffs])
        if isinstance(other, (int,) + RATIONAL_TYPES):
            k = self.field.from_rational(other)
            return PolyNF(self.field, [c * k for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyNF.zero(self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca.is_zero:
                for j, cb in enumerate(b):
                    if not cb.is_zero:
                        out[i + j] = out[i + j] + ca * cb
        return PolyNF(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PolyNF:
        result = PolyNF.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: PolyNF) -> tuple[PolyNF, PolyNF]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        lb_inv = other.leading.inv()
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return PolyNF.zero(self.field), self
        quot = [self.field.zero] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c.is_zero:
                continue
            q = c * lb_inv
            quot[i - db] = q
            for j, bc in enumerate(other.coeffs):
                rem[i - db + j] = rem[i - db + j] - q * bc
        return PolyNF(self.field, quot), PolyNF(self.field, rem)

    def __mod__(self, other: PolyNF) -> PolyNF:
        return self.divmod(other)[1]

    def __floordiv__(self, other: PolyNF) -> PolyNF:
        return self.divmod(other)[0]

    def exact_div(self, other: PolyNF) -> PolyNF:
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def monic(self) -> PolyNF:
        if self.is_zero or self.is_monic():
            return self
        inv = self.leading.inv()
        return PolyNF(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> PolyNF:
        return PolyNF(self.field, [c * i for i, c in enumerate(self.coeffs) if i >= 1])

    def evaluate(self, x: FieldElement) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coefficients(self, emb: Embedding) -> PolyNF:
        return PolyNF(emb.target, [emb.apply(c) for c in self.coeffs])

    def to_polyq(self) -> PolyQ:
        if any(not c.is_rational_value for c in self.coeffs):
            raise ValueError("polynomial has irrational coefficients")
        return PolyQ([c.coords[0] for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyNF) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def sort_key(self) -> tuple:
        return (self.degree, tuple(c.coords for c in self.coeffs))

    def __repr__(self) -> str:
        inner = ", ".join(str(c.lift()) for c in self.coeffs)
        return f"PolyNF[{self.field.label}]([{inner}])"


def nf_poly_gcd(a: PolyNF, b: PolyNF) -> PolyNF:
    """Monic gcd over the field by plain Euclid."""
    fa, fb = a, b
    while not fb.is_zero:
        fa, fb = fb, fa % fb
    return fa.monic() if not fa.is_zero else fa


# ---------------------------------------------------------------------------
# norms by interpolated resultants
# ---------------------------------------------------------------------------


def _coeff_polys_in_z(f: PolyNF) -> list[PolyQ]:
    """Write each coefficient of f (a field element in theta) as the poly of
    its power-basis coordinates, i.e. substitute theta -> z."""
    return [c.lift() for c in f.coeffs]


def _shifted_evaluated(coeff_polys: list[PolyQ], a, s: int) -> PolyQ:
    """F(a, z) where F(x, z) = sum_i c_i(z) (x - s z)^i."""
    base = PolyQ((a, QQ(-s)))  # a - s z, as a polynomial in z
    acc = PolyQ.zero()
    for c in reversed(coeff_polys):
        acc = acc * base + c
    return acc


def norm_of_shift(m: PolyQ, f: PolyNF, s: int) -> PolyQ:
    """res_z(m(z), F(x, z)) with F(x,z) = f(x - s*theta)|_{theta -> z},
    interpolated from rational specializations of x."""
    coeff_polys = _coeff_polys_in_z(f)
    target_points = m.degree * f.degree + 1
    samples: list = []
    zdeg = None
    a = 0
    tried = 0
    while len(samples) < target_points:
        point = QQ(a)
        a = -a if a > 0 else -a + 1  # 0, 1, -1, 2, -2, ...
        tried += 1
        if tried > 8 * target_points:
            raise RuntimeError("resultant interpolation failed to find sample points")
        g = _shifted_evaluated(coeff_polys, point, s)
        if g.is_zero:
            continue
        if zdeg is None:
            zdeg = g.degree
        if g.degree > zdeg:
            # found the true z-degree late; restart collection
            zdeg = g.degree
            samples = []
            a = 0
            continue
        if g.degree < zdeg:
            continue
        samples.append((point, poly_resultant(m, g)))
    return lagrange_interpolate(samples)


# ---------------------------------------------------------------------------
# Trager factorization and friends
# ---------------------------------------------------------------------------


def _squarefree_decomposition_nf(f: PolyNF) -> list[tuple[PolyNF, int]]:
    fm = f.monic()
    if fm.degree < 1:
        return []
    df = fm.derivative()
    a = nf_poly_gcd(fm, df)
    if a.degree == 0:
        return [(fm, 1)]
    b = fm.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out: list[tuple[PolyNF, int]] = []
    i = 1
    while b.degree > 0:
        g = nf_poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def _shift_poly(f: PolyNF, delta: FieldElement) -> PolyNF:
    """f(x + delta) by Horner composition over the field."""
    xplus = PolyNF(f.field, [delta, f.field.one])
    acc = PolyNF.zero(f.field)
    for c in reversed(f.coeffs):
        acc = acc * xplus + PolyNF(f.field, [c])
    return acc


def _factor_squarefree_nf(f: PolyNF, degree_cap: int,
                          quadratic_shortcut: bool = True) -> list[PolyNF]:
    """Irreducible monic factors of a monic squarefree f over its field."""
    K = f.field
    if f.degree <= 1:
        return [f]
    if f.degree == 2 and quadratic_shortcut:
        # quadratics split iff the discriminant is a square: the p-adic
        # square test is far cheaper than a Trager norm over a big field
        b, c = f.coeff(1), f.coeff(0)
        disc = b * b - 4 * c
        w = is_square(disc)
        if w is None:
            return [f]
        half = K.from_rational(QQ(1, 2))
        r1 = (-b + w) * half
        r2 = (-b - w) * half
        out = [PolyNF(K, [-r1, K.one]), PolyNF(K, [-r2, K.one])]
        out.sort(key=lambda h: h.sort_key())
        return out
    theta = K.gen
    m = K.defining_poly
    for s in _shift_candidates():
        norm = norm_of_shift(m, f, s)
        if norm.degree != K.degree * f.degree:
            continue
        if poly_gcd(norm, norm.derivative()).degree == 0:
            break
    else:
        raise RuntimeError("no squarefree Trager shift found")
    norm_factors = factor_over_Q(norm.monic(), degree_cap=degree_cap)
    if len(norm_factors) == 1:
        return [f]
    shifted = _shift_poly(f, theta * QQ(-s))
    out: list[PolyNF] = []
    for nf_factor, _ in norm_factors:
        g = nf_poly_gcd(shifted, PolyNF.from_polyq(K, nf_factor))
        if g.degree > 0:
            out.append(_shift_poly(g, theta * QQ(s)).monic())
    out.sort(key=lambda h: h.sort_key())
    return out


def _shift_candidates():
    yield 0
    k = 1
    while k < 40:
        yield k
        yield -k
        k += 1
    raise RuntimeError("ran out of Trager shifts")


def factor_over_nf(f: PolyNF, degree_cap: int = 4 * DEFAULT_FIELD_DEGREE_CAP) -> list[tuple[PolyNF, int]]:
    """Monic irreducible factors over the coefficient field, with
    multiplicities; f = lc * prod factor^mult."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    K = f.field
    if K.degree == 1:
        return [(PolyNF.from_polyq(K, g), mult)
                for g, mult in factor_over_Q(f.to_polyq(), degree_cap=degree_cap)]
    result: list[tuple[PolyNF, int]] = []
    for part, mult in _squarefree_decomposition_nf(f):
        for g in _factor_squarefree_nf(part, degree_cap):
            result.append((g, mult))
    result.sort(key=lambda fm: fm[0].sort_key())
    return result


def roots_of_nf_poly(f: PolyNF, degree_cap: int = 4 * DEFAULT_FIELD_DEGREE_CAP) -> set[FieldElement]:
    """All roots of f lying in its own coefficient field."""
    roots: set[FieldElement] = set()
    for g, _ in factor_over_nf(f, degree_cap=degree_cap):
        if g.degree == 1:
            roots.add(-g.coeff(0))
    return roots


def roots_in_field(f: PolyQ, L: NumberField,
                   degree_cap: int = 4 * DEFAULT_FIELD_DEGREE_CAP) -> set[FieldElement]:
    """All roots of the rational polynomial f inside L.

    Factor over Q first; only irreducible factors whose degree divides [L:Q]
    can have a root in L, and those are lifted with Trager.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial has every root")
    roots: set[FieldElement] = set()
    for g, _ in factor_over_Q(f):
        if g.degree == 1:
            roots.add(L.from_rational(-g.coeff(0)))
        elif L.degree % g.degree == 0 and g.degree <= L.degree and L.degree > 1:
            roots |= roots_of_nf_poly(PolyNF.from_polyq(L, g), degree_cap=degree_cap)
    return roots


def _sqrt_padic(c: FieldElement, max_primes: int = 60) -> Optional[FieldElement]:
    """Decide squareness of c by residue fields and recover the witness by
    Newton lifting plus rational reconstruction; every candidate is verified
    exactly, and a nonsquare residue anywhere is a proof of nonsquareness.

    Cheap residue evidence is collected first; the (expensive) lift runs only
    after several primes look square, with an escalating precision budget.
    Raises RuntimeError when the prime budget runs out (callers fall back to
    factorization).
    """
    from .modp import GF, fp_distinct_degree, fp_equal_degree_split, fp_is_squarefree, fp_monic, fp_strip
    import random as _random
    from .factorq import primes_from

    K = c.field
    m = K.defining_poly
    m_ints, m_den = m.clear_denominators()
    tried = 0
    square_looking = 0
    candidates: list[tuple] = []
    # (candidate index, doubling budget): later rounds move to other primes,
    # which sidesteps index divisors that poison rational reconstruction
    lift_schedule = {2: (0, 6), 4: (1, 9), 6: (2, 11), 8: (0, 13)}
    for p in primes_from(5):
        if tried >= max_primes:
            raise RuntimeError("p-adic square test exhausted its prime budget")
        if m_den % p == 0:
            continue
        if any(int(v.denominator) % p == 0 for v in c.coords):
            continue
        inv = pow(m_ints[-1], -1, p)
        mbar = fp_strip([v * inv % p for v in m_ints])
        if len(mbar) - 1 != m.degree or not fp_is_squarefree(mbar, p):
            continue
        tried += 1
        rng = _random.Random(p)
        factors: list[list[int]] = []
        for g, d in fp_distinct_degree(fp_monic(mbar, p), p):
            factors.extend(fp_equal_degree_split(g, d, p, rng))
        nonzero_everywhere = True
        for g in factors:
            F = GF(p, g)
            t = F.gen()
            acc = F.zero
            for coef in reversed(c.coords):
                acc = F.add(F.mul(acc, t), F.from_fraction(int(coef.numerator), int(coef.denominator)))
            if acc == F.zero:
                nonzero_everywhere = False
                break
            if not F.is_square(acc):
                return None  # nonsquare in a residue field: proved nonsquare
        if not nonzero_everywhere:
            continue  # c lies in a prime above p; pick a cleaner prime
        square_looking += 1
        if len(candidates) < 3:
            candidates.append((p, factors, mbar))
        plan = lift_schedule.get(square_looking)
        if plan is not None:
            idx, budget = plan
            p0, factors0, mbar0 = candidates[min(idx, len(candidates) - 1)]
            w0 = _crt_sqrt_mod_p(c, factors0, p0)
            if w0 is not None:
                witness = _lift_and_reconstruct(c, w0, mbar0, p0, max_doublings=budget)
                if witness is not None:
                    return witness
        if square_looking >= 10:
            raise RuntimeError("square by every residue test but lift failed")
    raise RuntimeError("p-adic square test exhausted its prime budget")


def _crt_sqrt_mod_p(c: FieldElement, factors: list[list[int]], p: int) -> Optional[list[int]]:
    """A square root of c in the product ring F_p[t]/(m) = prod F_p[t]/(g_i),
    assembled by CRT; None if any local sqrt fails."""
    from .modp import GF, fp_divmod, fp_mul

    residues: list[list[int]] = []
    for g in factors:
        F = GF(p, g)
        t = F.gen()
        acc = F.zero
        for coef in reversed(c.coords):
            acc = F.add(F.mul(acc, t), F.from_fraction(int(coef.numerator), int(coef.denominator)))
        try:
            r = F.sqrt(acc)
        except ValueError:
            return None
        residues.append([int(v) for v in r] if r else [0])
    # CRT over coprime moduli g_i
    modulus = [1]
    result = [0]
    for g, r in zip(factors, residues):
        # solve x = result mod modulus, x = r mod g
        s, t_co = _fp_gcdex_local(modulus, g, p)
        # x = result + modulus * s * (r - result) mod modulus*g
        diff = _fp_sub_local(r, result, p)
        corr = fp_mul(fp_mul(s, diff, p), modulus, p)
        new_mod = fp_mul(modulus, g, p)
        result = fp_divmod(_fp_add_local(result, corr, p), new_mod, p)[1]
        modulus = new_mod
    return result


def _fp_add_local(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_sub_local(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_gcdex_local(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    from .factorq import _fp_gcdex
    return _fp_gcdex(a, b, p)


def _lift_and_reconstruct(c: FieldElement, w0: list[int], mbar: list[int],
                          p: int, max_doublings: int = 12) -> Optional[FieldElement]:
    """Newton-lift w0 (sqrt of c mod p) through p -> p^2 -> p^4 ... and try
    rational reconstruction of the coordinates at each level; candidates are
    verified exactly against w*w == c."""
    K = c.field
    n = K.degree
    m_ints, m_den = K.defining_poly.clear_denominators()
    # monic integer model of m (m is monic with rational coefficients; scale
    # coordinates are handled through the generic ring ops below)
    c_lift = c.lift()

    def ring_mul(u: list[int], v: list[int], mod: int) -> list[int]:
        out = [0] * (len(u) + len(v) - 1)
        for i, cu in enumerate(u):
            if cu:
                for j, cv in enumerate(v):
                    out[i + j] += cu * cv
        lc_inv = pow(m_ints[-1], -1, mod)
        deg_m = len(m_ints) - 1
        for top in range(len(out) - 1, deg_m - 1, -1):
            coef = out[top] % mod
            if coef:
                factor = coef * lc_inv % mod
                for j in range(deg_m):
                    out[top - deg_m + j] -= factor * m_ints[j]
            out[top] = 0
        return [v2 % mod for v2 in out[:deg_m]]

    def c_mod(mod: int) -> list[int]:
        out = []
        for coef in c_lift.coeffs:
            out.append(int(coef.numerator) * pow(int(coef.denominator), -1, mod) % mod)
        out += [0] * (n - len(out))
        return out

    w = [v % p for v in w0] + [0] * (n - len(w0))
    # inverse of 2w mod p, lifted alongside w
    inv2w = _ring_inverse_mod_p(
        [(2 * v) % p for v in w], mbar, p)
    if inv2w is None:
        return None
    inv2w = inv2w + [0] * (n - len(inv2w))
    modulus = p
    for level in range(max_doublings):
        modulus = modulus * modulus
        cm = c_mod(modulus)
        # Newton for the inverse first: i <- i (2 - 2w i)
        two_w = [(2 * v) % modulus for v in w]
        prod = ring_mul(two_w, inv2w, modulus)
        corr = [(-v) % modulus for v in prod]
        corr[0] = (corr[0] + 2) % modulus
        inv2w = ring_mul(inv2w, corr, modulus)
        # Newton for the root: w <- w - (w^2 - c) * inv(2w)
        w_sq = ring_mul(w, w, modulus)
        err = [(a - b) % modulus for a, b in zip(w_sq, cm)]
        delta = ring_mul(err, inv2w, modulus)
        w = [(a - b) % modulus for a, b in zip(w, delta)]
        if level >= 2:  # skip reconstruction attempts at tiny precision
            cand = _rational_reconstruct_vector(w, modulus)
            if cand is not None:
                elt = K.element(cand)
                if elt * elt == c:
                    return elt
    return None


def _ring_inverse_mod_p(u: list[int], mbar: list[int], p: int) -> Optional[list[int]]:
    from .factorq import _fp_gcdex
    try:
        s, _ = _fp_gcdex(u, mbar, p)
    except (ValueError, ZeroDivisionError):
        return None
    return s


def _rational_reconstruct_vector(vec: list[int], modulus: int) -> Optional[list]:
    out = []
    for v in vec:
        r = _rational_reconstruct(v % modulus, modulus)
        if r is None:
            return None
        out.append(r)
    return out


def _rational_reconstruct(a: int, m: int) -> Optional[Rational]:
    """num/den with |num|, den <= sqrt(m/2) and num = a*den mod m."""
    bound = isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if abs(t1) > bound or t1 == 0:
        return None
    if _int_gcd_local(r1, abs(t1)) != 1:
        return None
    return QQ(r1, t1)


def _int_gcd_local(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_square(c: FieldElement) -> Optional[FieldElement]:
    """A witness w with w*w = c, or None; 0 maps to 0.

    Decided by residue fields plus p-adic lifting with exact verification;
    falls back to factoring x^2 - c (Trager) if the prime budget runs out.
    The witness sign is normalized to the smaller coordinate sort key.
    """
    if c.is_zero:
        return c.field.zero
    if c.field.degree == 1:
        r = sqrt_fraction(c.as_fraction())
        return None if r is None else c.field.from_rational(r)
    if c.is_rational_value:
        r = sqrt_fraction(c.as_fraction())
        if r is not None:
            return c.field.from_rational(r)
    try:
        w = _sqrt_padic(c)
    except RuntimeError:
        # factorization fallback, with the quadratic shortcut disabled so the
        # Trager path cannot recurse back into the square test
        K = c.field
        quad = PolyNF(K, [-c, K.zero, K.one])
        factors = _factor_squarefree_nf(quad, 8 * K.degree + 16, quadratic_shortcut=False)
        witnesses = sorted((-g.coeff(0) for g in factors if g.degree == 1),
                           key=lambda w2: w2.sort_key())
        return witnesses[0] if witnesses else None
    if w is None:
        return None
    return min(w, -w, key=lambda v: v.sort_key())


def minimal_polynomial(a: FieldElement) -> PolyQ:
    """Monic minimal polynomial of a over Q by linear algebra on powers."""
    n = a.field.degree
    rows: list[list] = []
    power = a.field.one
    for k in range(n + 1):
        rows.append(list(power.coords))
        dep = _linear_dependence(rows)
        if dep is not None:
            return PolyQ(dep).monic()
        power = power * a
    raise RuntimeError("minimal polynomial search exceeded the field degree")


def _linear_dependence(rows: list[list]) -> Optional[list]:
    """If the last row depends on the previous ones, return combination
    coefficients c with sum c_i row_i = 0 and c_last = 1."""
    k = len(rows) - 1
    if k < 0:
        return None
    n = len(rows[0])
    # solve rows[k] = sum_{i<k} x_i rows[i]
    mat = [[rows[i][j] for i in range(k)] + [rows[k][j]] for j in range(n)]
    piv_cols: list[int] = []
    r = 0
    for col in range(k):
        sel = None
        for i in range(r, n):
            if mat[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(n):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [v - factor * w for v, w in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
    # consistency: rows below rank must have zero rhs
    for i in range(r, n):
        if mat[i][k] != 0:
            return None
    sol = [QQ(0)] * k
    for row_idx, col in enumerate(piv_cols):
        sol[col] = mat[row_idx][k]
    return [-v for v in sol] + [QQ(1)]


# ---------------------------------------------------------------------------
# compositum and primitive-element towers
# ---------------------------------------------------------------------------


def _tower_mul(u: list[FieldElement], v: list[FieldElement],
               h: PolyNF, K: NumberField) -> list[FieldElement]:
    """Product in K[alpha] = K[x]/(h) with h monic; operands are coefficient
    lists over K of length < deg h."""
    d = h.degree
    out = [K.zero] * (len(u) + len(v) - 1)
    for i, cu in enumerate(u):
        if not cu.is_zero:
            for j, cv in enumerate(v):
                if not cv.is_zero:
                    out[i + j] = out[i + j] + cu * cv
    for top in range(len(out) - 1, d - 1, -1):
        c = out[top]
        if not c.is_zero:
            out[top] = K.zero
            for j in range(d):
                out[top - d + j] = out[top - d + j] - c * h.coeff(j)
    out = out[:d] + [K.zero] * max(0, d - len(out))
    return out[:d]


def _solve_exact(rows: list[list], rhs: list) -> Optional[list]:
    """Solve (rows)^T x = rhs... exactly; returns None when singular.
    `rows[k]` is the coordinate vector of the k-th basis candidate, so the
    system matrix has rows[k] as its k-th COLUMN."""
    n = len(rows)
    mat = [[rows[k][i] for k in range(n)] + [rhs[i]] for i in range(n)]
    for col in range(n):
        sel = None
        for r in range(col, n):
            if mat[r][col] != 0:
                sel = r
                break
        if sel is None:
            return None
        mat[col], mat[sel] = mat[sel], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[i][n] for i in range(n)]


def extend_by_factor(K: NumberField, h: PolyNF,
                     degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> tuple[NumberField, Embedding, FieldElement]:
    """Adjoin a root of a monic irreducible h in K[x]: returns (L, K -> L,
    root of h in L) with L absolute of degree [K:Q] * deg h.

    The absolute polynomial of gamma = alpha + s*theta comes from the
    interpolated resultant norm; theta is then expressed in powers of gamma
    by exact linear algebra over the relative tower K[x]/(h), which avoids
    any gcd computation over the big field.
    """
    if not h.is_monic():
        raise ValueError("factor must be monic")
    n, d = K.degree, h.degree
    if d == 1:
        return K, Embedding.identity(K), -h.coeff(0)
    if n == 1:
        L = NumberField(h.to_polyq(), _trusted=True)
        if L.degree > degree_cap:
            raise DegreeCapExceeded(L.degree, degree_cap, "extend_by_factor")
        return L, Embedding.from_rationals(L), L.gen
    if n * d > degree_cap:
        raise DegreeCapExceeded(n * d, degree_cap, "extend_by_factor")
    m = K.defining_poly
    nd = n * d
    theta = K.gen
    for s in _shift_candidates():
        if s == 0:
            continue
        M = norm_of_shift(m, h, s).monic()
        if M.degree != nd:
            continue
        # powers of gamma = alpha + s*theta in the tower basis theta^i alpha^j
        gamma = [theta * QQ(s), K.one]
        power: list[FieldElement] = [K.one]
        rows: list[list] = []
        for _ in range(nd):
            padded = list(power) + [K.zero] * (d - len(power))
            rows.append([c for elt in padded for c in elt.coords])
            power = _tower_mul(power, gamma, h, K)
        rhs = [QQ(0)] * nd
        rhs[1] = QQ(1)  # coordinates of theta: i=1, j=0
        sol = _solve_exact(rows, rhs)
        if sol is None:
            continue  # gamma not primitive for this shift
        L = NumberField(M, _trusted=True)
        theta_img = L.element(sol)
        emb = Embedding(K, L, theta_img)
        root = L.gen - theta_img * QQ(s)
        return L, emb, root
    raise RuntimeError("no separating shift found")


def _pick_factor(factors: list[tuple[PolyNF, int]]) -> PolyNF:
    # deterministic tie-break: smallest (degree, coefficient sequence)
    return min((g for g, _ in factors), key=lambda g: g.sort_key())


def compositum(K: NumberField, g: PolyQ,
               degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> tuple[NumberField, Embedding, FieldElement]:
    """A field containing K and a root of g, together with the embedding and
    the adjoined root; [L:K] is the degree of the chosen irreducible factor
    of g over K."""
    if g.is_zero or g.degree < 1:
        raise ValueError("need a nonconstant polynomial to adjoin")
    gK = PolyNF.from_polyq(K, g).monic()
    factors = factor_over_nf(gK, degree_cap=max(4 * degree_cap, K.degree * g.degree))
    h = _pick_factor(factors)
    return extend_by_factor(K, h, degree_cap=degree_cap)


def splitting_field(f: PolyQ, degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> tuple[NumberField, list[FieldElement]]:
    """Smallest field containing every root of f, plus all the roots.

    Roots accumulate through repeated compositum steps; the returned list has
    one entry per distinct root of f.
    """
    work = f.monic()
    field = QQ_FIELD
    roots: list[FieldElement] = []
    remaining = PolyNF.from_polyq(field, work)
    while True:
        factors = [g for g, _ in factor_over_nf(remaining, degree_cap=4 * degree_cap)]
        linear = [h for h in factors if h.degree == 1]
        nonlinear = [h for h in factors if h.degree > 1]
        for h in linear:
            r = -h.coeff(0)
            if r not in roots:
                roots.append(r)
        if not nonlinear:
            return field, roots
        h = min(nonlinear, key=lambda q: q.sort_key())
        field2, emb, new_root = extend_by_factor(field, h, degree_cap=degree_cap)
        roots = [emb.apply(r) for r in roots] + [new_root]
        rest = PolyNF.one(field2)
        mapped = PolyNF.from_polyq(field2, work)
        for r in roots:
            mapped = mapped.exact_div(PolyNF(field2, [-r, field2.one]))
        field = field2
        remaining = mapped
        if remaining.degree == 0:
            return field, roots


def field_automorphisms(L: NumberField,
                        degree_cap: int = DEFAULT_FIELD_DEGREE_CAP) -> list[Embedding]:
    """All automorphisms of L over Q, i.e. one embedding per root of the
    defining polynomial inside L; L/Q is Galois exactly when there are
    [L:Q] of them."""
    if L.degree == 1:
        return [Embedding.identity(L)]
    roots = roots_in_field(L.defining_poly, L, degree_cap=4 * degree_cap)
    return [Embedding(L, L, r) for r in sorted(roots, key=lambda r: r.sort_key())]


def is_galois_over_Q(L: NumberField) -> bool:
    return len(field_automorphisms(L)) == L.degree
