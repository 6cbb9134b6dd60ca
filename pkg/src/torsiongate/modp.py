"""Small finite fields F_{p^f} and polynomial factorization over them.

Fields are represented as F_p[t]/(g) for a monic irreducible g; elements are
tuples of ints in [0, p) with trailing zeros stripped, so the zero element is
the empty tuple.  Everything here is sized for desk-scale use: q fits in a
machine word times a small extension degree, polynomials stay below a few
hundred coefficients.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from .errors import BadReductionError

Elt = tuple  # field element: tuple of ints, ascending powers of t


def _strip(cs: list[int]) -> Elt:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class GF:
    """The finite field F_{p^f} presented as F_p[t]/(modulus)."""

    __slots__ = ("p", "modulus", "degree", "order")

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        self.p = p
        if modulus is None:
            modulus = (0, 1)  # prime field: F_p[t]/(t)
        mod = [c % p for c in modulus]
        if not mod or mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.order = p ** self.degree

    # ----- construction of elements -----

    @property
    def zero(self) -> Elt:
        return ()

    @property
    def one(self) -> Elt:
        return (1,)

    def gen(self) -> Elt:
        """The class of t (a root of the modulus when f > 1, else 0)."""
        if self.degree == 1:
            return self.reduce([0, 1])
        return (0, 1)

    def from_int(self, n: int) -> Elt:
        return _strip([n % self.p])

    def reduce(self, coeffs: Sequence[int]) -> Elt:
        """Reduce an integer coefficient vector mod (p, modulus)."""
        cs = [c % self.p for c in coeffs]
        f = self.degree
        while len(cs) > f:
            top = cs.pop()
            if top:
                for j in range(f):
                    cs[len(cs) - f + j] = (cs[len(cs) - f + j] - top * self.modulus[j]) % self.p
        return _strip(cs)

    def from_fraction(self, num: int, den: int) -> Elt:
        if den % self.p == 0:
            raise BadReductionError(f"denominator divisible by p={self.p}")
        return self.from_int(num * pow(den, -1, self.p))

    def elements(self) -> Iterator[Elt]:
        p, f = self.p, self.degree
        for idx in range(self.order):
            cs = []
            v = idx
            for _ in range(f):
                cs.append(v % p)
                v //= p
            yield _strip(cs)

    # ----- arithmetic -----

    def add(self, a: Elt, b: Elt) -> Elt:
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return _strip(out)

    def neg(self, a: Elt) -> Elt:
        return tuple((-c) % self.p for c in a)

    def sub(self, a: Elt, b: Elt) -> Elt:
        return self.add(a, self.neg(b))

    def mul(self, a: Elt, b: Elt) -> Elt:
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return self.reduce(out)

    def square(self, a: Elt) -> Elt:
        return self.mul(a, a)

    def inv(self, a: Elt) -> Elt:
        if not a:
            raise ZeroDivisionError("inverse of zero in GF")
        if self.degree == 1:
            return (pow(a[0], -1, self.p),)
        # extended Euclid in F_p[t]
        r0, r1 = list(self.modulus), list(a)
        t0, t1 = [], [1]
        while r1:
            q, r = self._polydivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, self._polysub(t0, self._polymul(q, t1))
        # r0 is a nonzero constant gcd
        c = pow(r0[0], -1, self.p)
        return self.reduce([v * c for v in t0])

    def div(self, a: Elt, b: Elt) -> Elt:
        return self.mul(a, self.inv(b))

    def pow(self, a: Elt, n: int) -> Elt:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a: Elt) -> Elt:
        return self.pow(a, self.p)

    def is_square(self, a: Elt) -> bool:
        if not a:
            return True
        if self.order % 2 == 0:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a: Elt) -> Elt:
        """Tonelli-Shanks square root for odd q; raises if a is a nonsquare."""
        if not a:
            return self.zero
        q = self.order
        if q % 2 == 0:
            raise ValueError("sqrt implemented for odd q only")
        if not self.is_square(a):
            raise ValueError("element is not a square")
        if q % 4 == 3:
            return self.pow(a, (q + 1) // 4)
        s, m = q - 1, 0
        while s % 2 == 0:
            s //= 2
            m += 1
        rng = random.Random(0xA5)
        z = None
        while z is None:
            cand = _strip([rng.randrange(self.p) for _ in range(self.degree)])
            if cand and not self.is_square(cand):
                z = cand
        c = self.pow(z, s)
        t = self.pow(a, s)
        r = self.pow(a, (s + 1) // 2)
        while t != self.one:
            i, acc = 0, t
            while acc != self.one:
                acc = self.mul(acc, acc)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self.mul(b, b)
            m = i
            c = self.mul(b, b)
            t = self.mul(t, c)
            r = self.mul(r, b)
        return r

    # internal F_p[t] helpers used by inv()

    def _polydivmod(self, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
        p = self.p
        binv = pow(b[-1], -1, p)
        rem = list(a)
        quot = [0] * max(len(rem) - len(b) + 1, 0)
        for i in range(len(rem) - 1, len(b) - 2, -1):
            c = rem[i]
            if c:
                q = c * binv % p
                quot[i - (len(b) - 1)] = q
                for j, bc in enumerate(b):
                    rem[i - (len(b) - 1) + j] = (rem[i - (len(b) - 1) + j] - q * bc) % p
        while rem and rem[-1] == 0:
            rem.pop()
        return quot, rem

    def _polymul(self, a: list[int], b: list[int]) -> list[int]:
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] = (out[i + j] + ca * cb) % self.p
        while out and out[-1] == 0:
            out.pop()
        return out

    def _polysub(self, a: list[int], b: list[int]) -> list[int]:
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = (out[i] - c) % self.p
        while out and out[-1] == 0:
            out.pop()
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"


# ---------------------------------------------------------------------------
# polynomials over a GF: plain lists of field elements, ascending degree
# ---------------------------------------------------------------------------


def fq_strip(f: list[Elt]) -> list[Elt]:
    while f and not f[-1]:
        f.pop()
    return f


def fq_degree(f: Sequence[Elt]) -> int:
    return len(f) - 1


def fq_mul(F: GF, a: Sequence[Elt], b: Sequence[Elt]) -> list[Elt]:
    if not a or not b:
        return []
    out: list[Elt] = [F.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = F.add(out[i + j], F.mul(ca, cb))
    return fq_strip(out)


def fq_add(F: GF, a: Sequence[Elt], b: Sequence[Elt]) -> list[Elt]:
    out = list(a) + [F.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return fq_strip(out)


def fq_neg(F: GF, a: Sequence[Elt]) -> list[Elt]:
    return [F.neg(c) for c in a]


def fq_sub(F: GF, a: Sequence[Elt], b: Sequence[Elt]) -> list[Elt]:
    return fq_add(F, a, fq_neg(F, b))


def fq_divmod(F: GF, a: Sequence[Elt], b: Sequence[Elt]) -> tuple[list[Elt], list[Elt]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero over GF")
    binv = F.inv(b[-1])
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], fq_strip(rem)
    quot: list[Elt] = [F.zero] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            q = F.mul(c, binv)
            quot[i - db] = q
            for j, bc in enumerate(b):
                rem[i - db + j] = F.sub(rem[i - db + j], F.mul(q, bc))
    return fq_strip(quot), fq_strip(rem)


def fq_mod(F: GF, a: Sequence[Elt], b: Sequence[Elt]) -> list[Elt]:
    return fq_divmod(F, a, b)[1]


def fq_monic(F: GF, a: Sequence[Elt]) -> list[Elt]:
    if not a or a[-1] == F.one:
        return list(a)
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def fq_gcd(F: GF, a: Sequence[Elt], b: Sequence[Elt]) -> list[Elt]:
    fa, fb = list(a), list(b)
    while fb:
        fa, fb = fb, fq_mod(F, fa, fb)
    return fq_monic(F, fa)


def fq_pow_mod(F: GF, base: Sequence[Elt], n: int, mod: Sequence[Elt]) -> list[Elt]:
    result = [F.one]
    b = fq_mod(F, base, mod)
    while n:
        if n & 1:
            result = fq_mod(F, fq_mul(F, result, b), mod)
        b = fq_mod(F, fq_mul(F, b, b), mod)
        n >>= 1
    return result


def fq_deriv(F: GF, a: Sequence[Elt]) -> list[Elt]:
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], F.from_int(i)))
    return fq_strip(out)


def fq_eval(F: GF, a: Sequence[Elt], x: Elt) -> Elt:
    acc = F.zero
    for c in reversed(list(a)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def fq_is_squarefree(F: GF, a: Sequence[Elt]) -> bool:
    d = fq_deriv(F, a)
    if not d:
        return fq_degree(a) <= 0
    return fq_degree(fq_gcd(F, a, d)) == 0


def fq_from_int_poly(F: GF, coeffs: Sequence[int]) -> list[Elt]:
    return fq_strip([F.from_int(c) for c in coeffs])


# ----- factorization: distinct-degree then Cantor-Zassenhaus -----


def fq_distinct_degree(F: GF, f: Sequence[Elt]) -> list[tuple[list[Elt], int]]:
    """Split a monic squarefree f into products of same-degree irreducibles.

    Returns [(g, d)] where g is the product of all irreducible factors of f
    of degree exactly d.
    """
    work = fq_monic(F, f)
    out: list[tuple[list[Elt], int]] = []
    xq = [F.zero, F.one]  # running x^(q^d) mod work
    d = 0
    while fq_degree(work) > 0:
        d += 1
        if 2 * d > fq_degree(work):
            out.append((work, fq_degree(work)))
            break
        xq = fq_pow_mod(F, xq, F.order, work)
        g = fq_gcd(F, fq_sub(F, xq, [F.zero, F.one]), work)
        if fq_degree(g) > 0:
            out.append((g, d))
            work = fq_divmod(F, work, g)[0]
            xq = fq_mod(F, xq, work)
    return out


def fq_equal_degree_split(F: GF, f: Sequence[Elt], d: int, rng: random.Random) -> list[list[Elt]]:
    """Cantor-Zassenhaus for odd q: f monic squarefree, all factors degree d."""
    n = fq_degree(f)
    if n == d:
        return [fq_monic(F, f)]
    if F.order % 2 == 0:
        raise ValueError("equal-degree splitting implemented for odd q only")
    exponent = (F.order ** d - 1) // 2
    while True:
        a = [F.reduce([rng.randrange(F.p) for _ in range(F.degree)]) for _ in range(n)]
        a = fq_strip(a)
        if fq_degree(a) < 1:
            continue
        g = fq_gcd(F, a, f)
        if 0 < fq_degree(g) < n:
            part = g
        else:
            b = fq_pow_mod(F, a, exponent, f)
            part = fq_gcd(F, fq_sub(F, b, [F.one]), f)
            if not (0 < fq_degree(part) < n):
                continue
        rest = fq_divmod(F, f, part)[0]
        return fq_equal_degree_split(F, part, d, rng) + fq_equal_degree_split(F, rest, d, rng)


def fq_factor_squarefree(F: GF, f: Sequence[Elt], seed: int = 0) -> list[list[Elt]]:
    """All monic irreducible factors of a monic squarefree f over F.

    Deterministic for a fixed seed: the equal-degree stage draws from a local
    Random instance.
    """
    rng = random.Random(seed ^ 0x5EED)
    factors: list[list[Elt]] = []
    for g, d in fq_distinct_degree(F, f):
        factors.extend(fq_equal_degree_split(F, g, d, rng))
    factors.sort(key=lambda h: (fq_degree(h), h))
    return factors


def fq_factor_degrees(F: GF, f: Sequence[Elt]) -> list[int]:
    """Degrees of the irreducible factors of a monic squarefree f, sorted."""
    degrees: list[int] = []
    for g, d in fq_distinct_degree(F, f):
        degrees.extend([d] * (fq_degree(g) // d))
    return sorted(degrees)


# ---------------------------------------------------------------------------
# fast prime-field specialization: polynomials as plain int lists mod p
# ---------------------------------------------------------------------------


def fp_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return fp_strip([c % p for c in out])


def fp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    binv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], fp_strip(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            q = c * binv % p
            quot[i - db] = q
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - q * b[j]) % p
    return fp_strip(quot), fp_strip(rem)


def fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return fp_divmod(a, b, p)[1]


def fp_monic(a: Sequence[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    fa, fb = list(a), list(b)
    while fb:
        fa, fb = fb, fp_mod(fa, fb, p)
    return fp_monic(fa, p)


def fp_pow_mod(base: Sequence[int], n: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = fp_mod(base, mod, p)
    while n:
        if n & 1:
            result = fp_mod(fp_mul(result, b, p), mod, p)
        b = fp_mod(fp_mul(b, b, p), mod, p)
        n >>= 1
    return result


def fp_deriv(a: Sequence[int], p: int) -> list[int]:
    return fp_strip([a[i] * i % p for i in range(1, len(a))])


def fp_is_squarefree(a: Sequence[int], p: int) -> bool:
    d = fp_deriv(a, p)
    if not d:
        return len(a) - 1 <= 0
    return len(fp_gcd(a, d, p)) == 1


def fp_distinct_degree(f: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    work = fp_monic(f, p)
    out: list[tuple[list[int], int]] = []
    xq = [0, 1]
    d = 0
    while len(work) - 1 > 0:
        d += 1
        if 2 * d > len(work) - 1:
            out.append((work, len(work) - 1))
            break
        xq = fp_pow_mod(xq, p, work, p)
        g = fp_gcd(_fp_sub_xq_x(xq, p), work, p)
        if len(g) - 1 > 0:
            out.append((g, d))
            work = fp_divmod(work, g, p)[0]
            xq = fp_mod(xq, work, p)
    return out


def _fp_sub_xq_x(xq: Sequence[int], p: int) -> list[int]:
    out = list(xq) + [0] * max(0, 2 - len(xq))
    out[1] = (out[1] - 1) % p
    return fp_strip(out)


def fp_equal_degree_split(f: Sequence[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [fp_monic(f, p)]
    if p == 2:
        raise ValueError("equal-degree splitting implemented for odd p only")
    exponent = (p ** d - 1) // 2
    while True:
        a = fp_strip([rng.randrange(p) for _ in range(n)])
        if len(a) - 1 < 1:
            continue
        g = fp_gcd(a, f, p)
        if 0 < len(g) - 1 < n:
            part = g
        else:
            b = fp_pow_mod(a, exponent, f, p)
            bm1 = list(b)
            if bm1:
                bm1[0] = (bm1[0] - 1) % p
            else:
                bm1 = [p - 1]
            part = fp_gcd(fp_strip(bm1), f, p)
            if not (0 < len(part) - 1 < n):
                continue
        rest = fp_divmod(f, part, p)[0]
        return fp_equal_degree_split(part, d, p, rng) + fp_equal_degree_split(rest, d, p, rng)


def fp_factor_squarefree(f: Sequence[int], p: int, seed: int = 0) -> list[list[int]]:
    """Monic irreducible factors of a monic squarefree f mod p (odd p),
    deterministic for a fixed seed."""
    rng = random.Random(seed ^ 0x5EED)
    factors: list[list[int]] = []
    for g, d in fp_distinct_degree(f, p):
        factors.extend(fp_equal_degree_split(g, d, p, rng))
    factors.sort(key=lambda h: (len(h), h))
    return factors


def fp_factor_degrees(f: Sequence[int], p: int) -> list[int]:
    """Degrees of irreducible factors of a monic squarefree f mod p, sorted;
    works for every p including 2 (no splitting required)."""
    degrees: list[int] = []
    for g, d in fp_distinct_degree(f, p):
        degrees.extend([d] * ((len(g) - 1) // d))
    return sorted(degrees)
