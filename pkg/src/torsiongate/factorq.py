"""Factorization of univariate polynomials over Q.

Pipeline: Yun squarefree decomposition, then for each squarefree part a
Zassenhaus factorization of its primitive integer model: factor mod a sized
prime chosen among several candidates (fewest modular factors wins), lift the
modular factorization with quadratic multifactor Hensel steps past the
Mignotte bound, and recombine subsets of lifted factors.  Degree is capped
(default 128) because the search phase is exponential in the number of
modular factors in the worst case; division polynomials at the sizes this
package needs stay comfortably inside the cap.
"""

from __future__ import annotations

import zlib
from functools import lru_cache
from math import ceil, gcd as _int_gcd, isqrt, log, log2

from .errors import DegreeCapExceeded
from .modp import fp_factor_squarefree, fp_is_squarefree, fp_strip
from .polyq import Rational, PolyQ, poly_gcd

DEFAULT_FACTOR_DEGREE_CAP = 128

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit input and reliable
    far beyond with the extended witness set."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int):
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending int lists)
# ---------------------------------------------------------------------------


def _zstrip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _zstrip(out)


def _zadd(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return _zstrip(out)


def _zsub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _zstrip(out)


def _ztrunc(a: list[int], m: int) -> list[int]:
    # symmetric residues in (-m/2, m/2]
    out = []
    half = m // 2
    for c in a:
        v = c % m
        if v > half:
            v -= m
        out.append(v)
    return _zstrip(out)


def _zdivmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    # exact integer division by a monic b
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _zstrip(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            quot[i - db] = c
            for j, bc in enumerate(b):
                rem[i - db + j] -= c * bc
    return _zstrip(quot), _zstrip(rem)


def _zprimitive(a: list[int]) -> list[int]:
    g = 0
    for v in a:
        g = _int_gcd(g, abs(v))
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def _zl1(a: list[int]) -> int:
    return sum(abs(c) for c in a)


def _zmax(a: list[int]) -> int:
    return max(abs(c) for c in a) if a else 0


# ---------------------------------------------------------------------------
# mod-p ext gcd (int lists mod p), needed to seed Hensel lifting
# ---------------------------------------------------------------------------


def _fp_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    binv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _fp_strip(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            q = c * binv % p
            quot[i - db] = q
            for j, bc in enumerate(b):
                rem[i - db + j] = (rem[i - db + j] - q * bc) % p
    return _fp_strip(quot), _fp_strip(rem)


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_strip(out)


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _fp_strip(out)


def _fp_gcdex(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Return (s, t) with s*a + t*b = 1 mod p; a, b must be coprime mod p."""
    r0, r1 = _fp_strip([c % p for c in a]), _fp_strip([c % p for c in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _fp_sub(s0, _fp_mul(q, s1, p), p)
        t0, t1 = t1, _fp_sub(t0, _fp_mul(q, t1, p), p)
    if len(r0) != 1:
        raise ValueError("inputs not coprime mod p")
    inv = pow(r0[0], -1, p)
    return _fp_strip([c * inv % p for c in s0]), _fp_strip([c * inv % p for c in t0])


# ---------------------------------------------------------------------------
# Hensel lifting
# ---------------------------------------------------------------------------


def _hensel_step(m: int, f: list[int], g: list[int], h: list[int],
                 s: list[int], t: list[int]) -> tuple[list[int], list[int], list[int], list[int]]:
    """One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) with h
    monic, produce the same data mod m**2."""
    M = m * m
    e = _ztrunc(_zsub(f, _zmul(g, h)), M)
    q, r = _zdivmod_monic(_zmul(s, e), h)
    q, r = _ztrunc(q, M), _ztrunc(r, M)
    u = _zadd(_zmul(t, e), _zmul(q, g))
    G = _ztrunc(_zadd(g, u), M)
    H = _ztrunc(_zadd(h, r), M)
    u = _zadd(_zmul(s, G), _zmul(t, H))
    b = _ztrunc(_zsub(u, [1]), M)
    c, d = _zdivmod_monic(_zmul(s, b), H)
    c, d = _ztrunc(c, M), _ztrunc(d, M)
    u = _zadd(_zmul(t, b), _zmul(c, G))
    S = _ztrunc(_zsub(s, d), M)
    T = _ztrunc(_zsub(t, u), M)
    return G, H, S, T


def _hensel_lift(p: int, f: list[int], f_list: list[list[int]], l: int) -> list[list[int]]:
    """Lift monic pairwise-coprime factors of f mod p to factors mod p**l.

    f = lc(f) * prod(f_list) mod p is required; the result is a list of monic
    integer polynomials F_i with f = lc(f) * prod(F_i) mod p**l and
    F_i = f_i mod p.
    """
    r = len(f_list)
    lc = f[-1]
    pl = p ** l
    if r == 1:
        inv = pow(lc % pl, -1, pl)
        return [_ztrunc([c * inv for c in f], pl)]
    m = p
    k = r // 2
    d = int(ceil(log2(l)))
    g = [lc % p]
    for fi in f_list[:k]:
        g = _fp_mul(g, fi, p)
    h = [1]
    for fi in f_list[k:]:
        h = _fp_mul(h, fi, p)
    s, t = _fp_gcdex(g, h, p)
    g, h = _ztrunc(g, p), _ztrunc(h, p)
    s, t = _ztrunc(s, p), _ztrunc(t, p)
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, f_list[:k], l) + _hensel_lift(p, h, f_list[k:], l)


# ---------------------------------------------------------------------------
# Zassenhaus over Z
# ---------------------------------------------------------------------------


def _factor_mod_p(f: list[int], p: int, seed: int) -> list[list[int]] | None:
    """Monic irreducible factors of f mod p, or None if f is not squarefree
    mod p (or degenerates)."""
    fp = fp_strip([c % p for c in f])
    if len(fp) - 1 != len(f) - 1:
        return None  # leading coefficient vanished
    if not fp_is_squarefree(fp, p):
        return None
    return fp_factor_squarefree(fp_monic_local(fp, p), p, seed=seed)


def fp_monic_local(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _subsets(indices: list[int], size: int):
    # lexicographic fixed-size subsets
    n = len(indices)
    if size > n:
        return
    idx = list(range(size))
    while True:
        yield tuple(indices[i] for i in idx)
        for i in reversed(range(size)):
            if idx[i] != i + n - size:
                break
        else:
            return
        idx[i] += 1
        for j in range(i + 1, size):
            idx[j] = idx[j - 1] + 1


def _test_divides_constant(fc: int, q: int, pl: int) -> bool:
    if q > pl // 2:
        q -= pl
    if q == 0:
        return True
    return fc % q == 0


def zassenhaus(f: list[int]) -> list[list[int]]:
    """Irreducible factors over Z of a primitive squarefree integer poly with
    positive leading coefficient.  Factors come back primitive, not monic.

    Before lifting, factor-degree patterns modulo several primes are
    intersected (as subset-sum bitmasks); any true rational factor must have
    a degree realizable modulo every good prime, which both certifies
    irreducibility cheaply and prunes the recombination search.
    """
    n = len(f) - 1
    if n == 1:
        return [f]
    seed = zlib.crc32(repr(f).encode())
    fc = f[0]
    A = _zmax(f)
    b = f[-1]
    B = (isqrt(n + 1) + 1) * (1 << n) * A * abs(b)
    candidates: list[tuple[int, list[list[int]]]] = []
    possible_degrees = (1 << (n + 1)) - 1  # bitmask, bit d = "degree d possible"
    for p in primes_from(3):
        if b % p == 0:
            continue
        factors = _factor_mod_p(f, p, seed)
        if factors is None:
            continue
        if len(factors) == 1:
            return [f]  # irreducible: one modular factor already proves it
        mask = 1
        for fac in factors:
            mask |= mask << (len(fac) - 1)
        possible_degrees &= mask
        if possible_degrees & ((1 << n) - 2) == 0:
            return [f]  # no proper factor degree survives the intersection
        candidates.append((p, factors))
        if len(factors) <= 3 or len(candidates) >= 8:
            break
    p, modular = min(candidates, key=lambda c: len(c[1]))
    l = int(ceil(log(2 * B + 1, p)))
    lifted = _hensel_lift(p, f, modular, l)
    pl = p ** l

    remaining = list(range(len(lifted)))
    factors: list[list[int]] = []
    s = 1
    while 2 * s <= len(remaining):
        found = False
        for S in _subsets(remaining, s):
            deg_S = sum(len(lifted[i]) - 1 for i in S)
            if not (possible_degrees >> deg_S) & 1:
                continue
            if b == 1:
                q = 1
                for i in S:
                    q = q * lifted[i][0] % pl
                if not _test_divides_constant(fc, q, pl):
                    continue
                G = [1]
                for i in S:
                    G = _zmul(G, lifted[i])
                G = _ztrunc(G, pl)
            else:
                G = [b]
                for i in S:
                    G = _zmul(G, lifted[i])
                G = _ztrunc(G, pl)
                Gp = _zprimitive(G)
                if Gp and fc != 0 and Gp[0] != 0 and fc % Gp[0] != 0:
                    continue
            H = [b]
            for i in remaining:
                if i not in S:
                    H = _zmul(H, lifted[i])
            H = _ztrunc(H, pl)
            if _zl1(G) * _zl1(H) <= B:
                G = _zprimitive(G)
                H = _zprimitive(H)
                factors.append(G)
                f = H
                fc = f[0]
                b = f[-1]
                remaining = [i for i in remaining if i not in S]
                found = True
                break
        if not found:
            s += 1
    factors.append(f)
    return factors


# ---------------------------------------------------------------------------
# public surface over Q
# ---------------------------------------------------------------------------


def squarefree_decomposition(f: PolyQ) -> list[tuple[PolyQ, int]]:
    """Yun's algorithm: f = lc * prod g_i^i with the g_i monic, squarefree,
    pairwise coprime.  Only parts with positive degree are returned."""
    if f.is_zero:
        raise ValueError("cannot decompose the zero polynomial")
    fm = f.monic()
    if fm.degree < 1:
        return []
    df = fm.derivative()
    a = poly_gcd(fm, df)
    if a.degree == 0:
        return [(fm, 1)]
    b = fm.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out: list[tuple[PolyQ, int]] = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(f: PolyQ) -> PolyQ:
    out = PolyQ.one()
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


@lru_cache(maxsize=None)
def _factor_squarefree_monic(part: PolyQ) -> tuple[PolyQ, ...]:
    prim = _zprimitive(part.clear_denominators()[0])
    return tuple(sorted((PolyQ(g).monic() for g in zassenhaus(prim)),
                        key=lambda h: h.sort_key()))


def factor_over_Q(f: PolyQ, degree_cap: int = DEFAULT_FACTOR_DEGREE_CAP) -> list[tuple[PolyQ, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree,
    coefficients); f = lc(f) * prod factor^mult exactly."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > degree_cap:
        raise DegreeCapExceeded(f.degree, degree_cap, "factor_over_Q")
    result: list[tuple[PolyQ, int]] = []
    for part, mult in squarefree_decomposition(f):
        for g in _factor_squarefree_monic(part):
            result.append((g, mult))
    result.sort(key=lambda fm: fm[0].sort_key())
    return result


def is_irreducible_over_Q(f: PolyQ, degree_cap: int = DEFAULT_FACTOR_DEGREE_CAP) -> bool:
    if f.degree < 1:
        return False
    factors = factor_over_Q(f, degree_cap)
    return len(factors) == 1 and factors[0][1] == 1


def rational_roots(f: PolyQ) -> set[Rational]:
    """All roots of f in Q, found as the linear factors of its factorization."""
    if f.is_zero:
        raise ValueError("the zero polynomial has every root")
    roots: set[Rational] = set()
    for g, _ in factor_over_Q(f):
        if g.degree == 1:
            roots.add(-g.coeff(0))
    return roots


def verify_factorization(f: PolyQ, factors: list[tuple[PolyQ, int]]) -> bool:
    prod = PolyQ((f.leading,))
    for g, m in factors:
        prod = prod * g ** m
    return prod == f
