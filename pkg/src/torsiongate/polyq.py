"""Univariate polynomial algebra over Q with exact big-rational coefficients.

Coefficients are stored in ascending degree order as `fractions.Fraction`
values, so canonical form (reduced fraction, positive denominator) is
guaranteed by construction.  All operations are pure and every value is
immutable, which makes the whole module safe to use from parallel workers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence, Union

try:  # GMP-backed rationals cut big-integer gcd cost by an order of magnitude
    from gmpy2 import mpq as QQ
    RATIONAL_TYPES: tuple = (Fraction, type(QQ()))
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction
    RATIONAL_TYPES = (Fraction,)

Rational = Fraction  # annotation alias; runtime values may be gmpy2.mpq

Coeffable = Union[int, str, Fraction]


def _frac(value) -> Rational:
    if isinstance(value, RATIONAL_TYPES):
        return value
    return QQ(value)


class PolyQ:
    """Dense univariate polynomial over Q.

    The zero polynomial has an empty coefficient tuple and degree -1; any
    nonzero polynomial stores a trailing (leading) coefficient that is
    nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeffable] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # values are frozen after __init__
        raise AttributeError("PolyQ is immutable")

    # ----- constructors -----

    @classmethod
    def zero(cls) -> PolyQ:
        return cls(())

    @classmethod
    def one(cls) -> PolyQ:
        return cls((1,))

    @classmethod
    def x(cls) -> PolyQ:
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: Coeffable = 1) -> PolyQ:
        c = _frac(coeff)
        if c == 0:
            return cls(())
        return cls((0,) * degree + (c,))

    @classmethod
    def from_roots(cls, roots: Sequence[Coeffable]) -> PolyQ:
        out = cls.one()
        for r in roots:
            out = out * cls((-_frac(r), 1))
        return out

    # ----- basic structure -----

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Rational:
        if not self.coeffs:
            return QQ(0)
        return self.coeffs[-1]

    @property
    def constant(self) -> Rational:
        if not self.coeffs:
            return QQ(0)
        return self.coeffs[0]

    def coeff(self, i: int) -> Rational:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return QQ(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # ----- arithmetic -----

    def __add__(self, other: PolyQ) -> PolyQ:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    def __neg__(self) -> PolyQ:
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other: PolyQ) -> PolyQ:
        return self + (-other)

    def __mul__(self, other) -> PolyQ:
        if isinstance(other, (int,) + RATIONAL_TYPES):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ(())
        out = [QQ(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb != 0:
                    out[i + j] += ca * cb
        return PolyQ(out)

    __rmul__ = __mul__

    def scale(self, k: Coeffable) -> PolyQ:
        k = _frac(k)
        if k == 0:
            return PolyQ(())
        return PolyQ(tuple(c * k for c in self.coeffs))

    def __pow__(self, n: int) -> PolyQ:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = PolyQ.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: PolyQ) -> tuple[PolyQ, PolyQ]:
        """Exact long division: self = q*other + r with deg r < deg other."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.leading
        if len(rem) - 1 < db:
            return PolyQ(()), self
        quot = [QQ(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lb
            quot[i - db] = q
            for j, bc in enumerate(other.coeffs):
                rem[i - db + j] -= q * bc
        return PolyQ(quot), PolyQ(rem)

    def __floordiv__(self, other: PolyQ) -> PolyQ:
        return self.divmod(other)[0]

    def __mod__(self, other: PolyQ) -> PolyQ:
        return self.divmod(other)[1]

    def exact_div(self, other: PolyQ) -> PolyQ:
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    def divides(self, other: PolyQ) -> bool:
        if self.is_zero:
            return other.is_zero
        return other.divmod(self)[1].is_zero

    # ----- shape helpers -----

    def monic(self) -> PolyQ:
        if self.is_zero or self.leading == 1:
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> PolyQ:
        return PolyQ(tuple(c * i for i, c in enumerate(self.coeffs) if i >= 1))

    def evaluate(self, point: Coeffable) -> Rational:
        x = _frac(point)
        acc = QQ(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: PolyQ) -> PolyQ:
        acc = PolyQ(())
        for c in reversed(self.coeffs):
            acc = acc * inner + PolyQ((c,))
        return acc

    def shift(self, a: Coeffable) -> PolyQ:
        """self(x + a) by Horner composition."""
        return self.compose(PolyQ((_frac(a), 1)))

    def clear_denominators(self) -> tuple[list[int], int]:
        """Return (integer coefficient list ascending, common denominator)."""
        den = 1
        for c in self.coeffs:
            d = int(c.denominator)
            den = den * d // _int_gcd(den, d)
        return [int(c * den) for c in self.coeffs], den

    def content_and_primitive(self) -> tuple[Rational, PolyQ]:
        """Write self = content * primitive with primitive integral, gcd 1,
        positive leading coefficient."""
        if self.is_zero:
            return QQ(0), self
        ints, den = self.clear_denominators()
        g = 0
        for v in ints:
            g = _int_gcd(g, abs(v))
        sign = -1 if ints[-1] < 0 else 1
        g *= sign
        prim = PolyQ([v // g for v in ints])
        return QQ(g, den), prim

    # ----- comparisons and hashing -----

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyQ) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    def __repr__(self) -> str:
        return f"PolyQ({self})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                xi = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    parts.append(xi)
                elif c == -1:
                    parts.append(f"-{xi}")
                else:
                    parts.append(f"{c}*{xi}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# ---------------------------------------------------------------------------
# gcd / resultant / discriminant
# ---------------------------------------------------------------------------


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder of integer polys: lc(b)^(da-db+1) * a mod b, all over Z
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    lb = b[-1]
    rem = list(a)
    for i in range(da, db - 1, -1):
        c = rem[i]
        rem = [v * lb for v in rem]
        for j in range(db + 1):
            rem[i - db + j] -= c * b[j]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def _int_primitive(a: list[int]) -> list[int]:
    g = 0
    for v in a:
        g = _int_gcd(g, abs(v))
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd via a primitive PRS over Z.

    Content is stripped after every pseudo-division step, which keeps the
    intermediate integer coefficients near the size of the inputs instead of
    growing exponentially the way a naive rational Euclid does.
    """
    if a.is_zero and b.is_zero:
        return PolyQ(())
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    fa = _int_primitive(a.clear_denominators()[0])
    fb = _int_primitive(b.clear_denominators()[0])
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        rem = _int_pseudo_rem(fa, fb)
        fa, fb = fb, _int_primitive(rem)
    return PolyQ(fa).monic()


def poly_resultant(a: PolyQ, b: PolyQ) -> Rational:
    """Resultant with the convention res(f,g) = lc(f)^deg g * prod g(alpha_i),
    i.e. res(x-2, x-3) = 2-3 = -1.

    Computed by a remainder sequence instead of a Sylvester determinant; each
    step applies res(f,g) = (-1)^(df*dg) lc(g)^(df-dr) res(g, r) with
    r = f mod g.
    """
    if a.is_zero or b.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    acc = QQ(1)
    f, g = a, b
    while True:
        df, dg = f.degree, g.degree
        if dg == 0:
            return acc * g.constant ** df
        if df == 0:
            return acc * f.constant ** dg
        if df < dg:
            if (df * dg) % 2:
                acc = -acc
            f, g = g, f
            continue
        r = f % g
        if r.is_zero:
            return QQ(0)
        if (df * dg) % 2:
            acc = -acc
        acc *= g.leading ** (df - r.degree)
        f, g = g, r


def poly_discriminant(f: PolyQ) -> Rational:
    """disc(f), normalized so that disc(x^3 + p x + q) = -4p^3 - 27q^2."""
    d = f.degree
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * poly_resultant(f, f.derivative()) / f.leading


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    mu, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            mu = -mu
        p += 1
    if n > 1:
        mu = -mu
    return mu


def cyclotomic_poly(m: int) -> PolyQ:
    """The m-th cyclotomic polynomial, via the Mobius product
    Phi_m = prod_{d | m} (x^(m/d) - 1)^mu(d)."""
    if m < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = PolyQ.one()
    den = PolyQ.one()
    for d in range(1, m + 1):
        if m % d:
            continue
        mu = _mobius(d)
        if mu == 0:
            continue
        factor = PolyQ.monomial(m // d) - PolyQ.one()
        if mu == 1:
            num = num * factor
        else:
            den = den * factor
    return num.exact_div(den)


def euler_phi(n: int) -> int:
    result, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result *= (p - 1) * p ** (e - 1)
        p += 1
    if m > 1:
        result *= m - 1
    return result


def lagrange_interpolate(points: Sequence[tuple[Rational, Rational]]) -> PolyQ:
    """Unique polynomial of degree < len(points) through the given points."""
    out = PolyQ(())
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = PolyQ((yi,))
        den = QQ(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * PolyQ((-xj, 1))
            den *= xi - xj
        out = out + num.scale(1 / den)
    return out
