"""Finite matrix groups over F_ell and permutation groups.

Matrices are 4-tuples (a, b, c, d) of residues mod ell; permutations are
tuples of images of 0..n-1.  Groups carry their generators plus the fully
enumerated closure, which keeps every structural question (normality,
commutators, subgroup sweeps) a matter of finite set arithmetic.

Subgroup classification follows the standard dichotomy for subgroups of
GL2(F_ell): full determinant preimages, Borel (common eigenline plus order
divisible by ell), normalizers of split/nonsplit Cartans (a preserved pair
of lines over F_ell or F_ell^2), and exceptional projective images A4, S4,
A5 recognized by element-order statistics.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import EnumerationCapExceeded
from .modp import GF

Mat = tuple  # (a, b, c, d) row-major
Perm = tuple

ENUMERATION_CAP = 10 ** 6


# ---------------------------------------------------------------------------
# matrix primitives
# ---------------------------------------------------------------------------


def mat_mul(m1: Mat, m2: Mat, ell: int) -> Mat:
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return ((a1 * a2 + b1 * c2) % ell, (a1 * b2 + b1 * d2) % ell,
            (c1 * a2 + d1 * c2) % ell, (c1 * b2 + d1 * d2) % ell)


def mat_det(m: Mat, ell: int) -> int:
    a, b, c, d = m
    return (a * d - b * c) % ell


def mat_inv(m: Mat, ell: int) -> Mat:
    a, b, c, d = m
    det_inv = pow(mat_det(m, ell), -1, ell)
    return (d * det_inv % ell, -b * det_inv % ell, -c * det_inv % ell, a * det_inv % ell)


IDENTITY: Mat = (1, 0, 0, 1)
U_MATRIX: Mat = (1, 1, 0, 1)


def gl2(ell: int, a: int, b: int, c: int, d: int) -> Mat:
    m = (a % ell, b % ell, c % ell, d % ell)
    if mat_det(m, ell) == 0:
        raise ValueError(f"matrix {m} is singular mod {ell}")
    return m


def mat_order(m: Mat, ell: int) -> int:
    acc = m
    for k in range(1, ell ** 4 + 1):
        if acc == IDENTITY:
            return k
        acc = mat_mul(acc, m, ell)
    raise RuntimeError("order computation ran away")


def mat_closure(gens: Iterable[Mat], ell: int, cap: int = ENUMERATION_CAP) -> frozenset:
    elems = {IDENTITY}
    gen_list = [g for g in gens]
    for g in gen_list:
        if mat_det(g, ell) == 0:
            raise ValueError("generator is singular")
    frontier = list(gen_list)
    elems.update(frontier)
    while frontier:
        new = []
        for x in frontier:
            for g in gen_list:
                y = mat_mul(x, g, ell)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
                    if len(elems) > cap:
                        raise EnumerationCapExceeded(f"closure exceeded {cap} elements")
        frontier = new
    return frozenset(elems)


class MatGroup:
    """A subgroup of GL2(F_ell) as generators plus enumerated closure."""

    __slots__ = ("ell", "generators", "elements")

    def __init__(self, ell: int, generators: Sequence[Mat], elements: Optional[frozenset] = None,
                 cap: int = ENUMERATION_CAP):
        gens = tuple(gl2(ell, *g) for g in generators)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "generators", gens)
        if elements is None:
            elements = mat_closure(gens, ell, cap)
        object.__setattr__(self, "elements", frozenset(elements))

    def __setattr__(self, name, value):
        raise AttributeError("MatGroup is immutable")

    @classmethod
    def from_elements(cls, ell: int, elements: Iterable[Mat]) -> MatGroup:
        elems = frozenset(elements)
        gens = _find_generators_mat(elems, ell)
        return cls(ell, gens, elements=elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m: Mat) -> bool:
        return m in self.elements

    def is_subgroup_of(self, other: MatGroup) -> bool:
        return self.ell == other.ell and self.elements <= other.elements

    def conjugate(self, t: Mat) -> MatGroup:
        ti = mat_inv(t, self.ell)
        elems = frozenset(mat_mul(mat_mul(t, m, self.ell), ti, self.ell) for m in self.elements)
        return MatGroup.from_elements(self.ell, elems)

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(self.elements)
        return all(mat_mul(g, h, self.ell) == mat_mul(h, g, self.ell)
                   for g in gens for h in gens)

    def element_orders(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for m in self.elements:
            o = mat_order(m, self.ell)
            counts[o] = counts.get(o, 0) + 1
        return counts

    def __eq__(self, other) -> bool:
        return isinstance(other, MatGroup) and self.ell == other.ell and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.ell, self.elements))

    def __repr__(self) -> str:
        return f"MatGroup(ell={self.ell}, order={self.order})"


def _find_generators_mat(elems: frozenset, ell: int) -> list[Mat]:
    gens: list[Mat] = []
    have = {IDENTITY}
    for m in sorted(elems):
        if m not in have:
            gens.append(m)
            have = set(mat_closure(gens, ell))
            if len(have) == len(elems):
                break
    return gens


def gl2_group(ell: int) -> MatGroup:
    """All of GL2(F_ell); generated by a diagonal of a primitive root and the
    standard unipotent plus the antidiagonal swap."""
    g = _primitive_root(ell)
    gens = [gl2(ell, g, 0, 0, 1), gl2(ell, 1, 1, 0, 1), gl2(ell, 0, 1, -1, 0)]
    return MatGroup(ell, gens)


def sl2_order(ell: int) -> int:
    return ell * (ell - 1) * (ell + 1)


def gl2_order(ell: int) -> int:
    return (ell * ell - 1) * (ell * ell - ell)


def borel_group(ell: int) -> MatGroup:
    """The full upper-triangular subgroup."""
    elems = [(a, b, 0, d) for a in range(1, ell) for d in range(1, ell) for b in range(ell)]
    return MatGroup.from_elements(ell, elems)


def _primitive_root(ell: int) -> int:
    if ell == 2:
        return 1
    order = ell - 1
    factors = set()
    m, p = order, 2
    while p * p <= m:
        if m % p == 0:
            factors.add(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        factors.add(m)
    for g in range(2, ell):
        if all(pow(g, order // q, ell) != 1 for q in factors):
            return g
    raise RuntimeError("no primitive root found")


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def perm_mul(p: Perm, q: Perm) -> Perm:
    # (p*q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Perm:
    out = list(range(n))
    for cyc in cycles:
        for i, v in enumerate(cyc):
            out[cyc[i]] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


def cycle_type(p: Perm) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parts.append(length)
    return tuple(sorted(parts, reverse=True))


def perm_closure(gens: Iterable[Perm], n: int, cap: int = ENUMERATION_CAP) -> frozenset:
    ident = perm_identity(n)
    elems = {ident}
    gen_list = list(gens)
    frontier = list(gen_list)
    elems.update(frontier)
    while frontier:
        new = []
        for x in frontier:
            for g in gen_list:
                y = perm_mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
                    if len(elems) > cap:
                        raise EnumerationCapExceeded(f"closure exceeded {cap} elements")
        frontier = new
    return frozenset(elems)


class PermGroup:
    """A subgroup of S_n as generators plus enumerated closure."""

    __slots__ = ("n", "generators", "elements")

    def __init__(self, n: int, generators: Sequence[Perm], elements: Optional[frozenset] = None,
                 cap: int = ENUMERATION_CAP):
        gens = tuple(tuple(g) for g in generators)
        for g in gens:
            if sorted(g) != list(range(n)):
                raise ValueError(f"{g} is not a permutation of 0..{n - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", gens)
        if elements is None:
            elements = perm_closure(gens, n, cap)
        object.__setattr__(self, "elements", frozenset(elements))

    def __setattr__(self, name, value):
        raise AttributeError("PermGroup is immutable")

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        if n == 1:
            return cls(1, [])
        gens = [perm_from_cycles(n, [[0, 1]]), perm_from_cycles(n, [list(range(n))])]
        return cls(n, gens)

    @classmethod
    def alternating(cls, n: int) -> PermGroup:
        if n <= 2:
            return cls(n, [])
        gens = [perm_from_cycles(n, [[i, i + 1, i + 2]]) for i in range(n - 2)]
        return cls(n, gens)

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Perm]) -> PermGroup:
        elems = frozenset(elements)
        gens: list[Perm] = []
        have = {perm_identity(n)}
        for p in sorted(elems):
            if p not in have:
                gens.append(p)
                have = set(perm_closure(gens, n))
                if len(have) == len(elems):
                    break
        return cls(n, gens, elements=elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.n == other.n and self.elements <= other.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))

    def __repr__(self) -> str:
        return f"PermGroup(n={self.n}, order={self.order})"


# ---------------------------------------------------------------------------
# shared group-theoretic operations
# ---------------------------------------------------------------------------


def _mul_of(G) -> tuple:
    if isinstance(G, MatGroup):
        ell = G.ell
        return (lambda x, y: mat_mul(x, y, ell)), (lambda x: mat_inv(x, ell)), IDENTITY
    return perm_mul, perm_inv, perm_identity(G.n)


def _wrap_like(G, elements: frozenset):
    if isinstance(G, MatGroup):
        return MatGroup.from_elements(G.ell, elements)
    return PermGroup.from_elements(G.n, elements)


def normal_closure(seed: Iterable, G) -> frozenset:
    """Smallest subgroup containing the seed that is stable under conjugation
    by the generators of G."""
    mul, inv, ident = _mul_of(G)
    gens_G = list(G.generators)
    elems = {ident}
    frontier = [s for s in seed if s != ident]
    elems.update(frontier)
    seed_gens = list(frontier)
    while frontier:
        new = []
        for x in frontier:
            for g in seed_gens:
                y = mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
            for g in gens_G:
                y = mul(mul(g, x), inv(g))
                if y not in elems:
                    elems.add(y)
                    new.append(y)
                    seed_gens.append(y)
        frontier = new
    return frozenset(elems)


def commutator_subgroup(G):
    """G' as the normal closure of the commutators of the generators."""
    mul, inv, ident = _mul_of(G)
    gens = list(G.generators) or list(G.elements)
    comms = set()
    for g in gens:
        for h in gens:
            comms.add(mul(mul(g, h), mul(inv(g), inv(h))))
    comms.discard(ident)
    return _wrap_like(G, normal_closure(comms, G))


def is_normal(H, G) -> bool:
    """Brute-force normality of H in G via conjugation by the generators."""
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    mul, inv, _ = _mul_of(G)
    gens = G.generators or tuple(G.elements)
    for g in gens:
        gi = inv(g)
        for h in H.elements:
            if mul(mul(g, h), gi) not in H.elements:
                return False
    return True


def set_product(A: Iterable, B: Iterable, mul) -> frozenset:
    return frozenset(mul(a, b) for a in A for b in B)


def no_abelian_subextension_criterion(G, H) -> bool:
    """True iff G'H = G as a set product (H and G of matching flavor)."""
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    mul, _, _ = _mul_of(G)
    Gp = commutator_subgroup(G)
    prod = set_product(Gp.elements, H.elements, mul)
    return prod == G.elements


def enumerate_subgroups(G, cap: int = 1000) -> list:
    """Every subgroup of G, as enumerated groups, deduplicated.

    Bottom-up: all cyclic subgroups, then joins with cyclic subgroups to a
    fixed point.  Requires |G| <= cap.
    """
    if G.order > cap:
        raise EnumerationCapExceeded(f"group order {G.order} exceeds subgroup-enumeration cap {cap}")
    mul, inv, ident = _mul_of(G)
    cyclics: set[frozenset] = set()
    for x in G.elements:
        cyc = {ident}
        acc = x
        while acc != ident:
            cyc.add(acc)
            acc = mul(acc, x)
        cyclics.add(frozenset(cyc))
    known: set[frozenset] = set(cyclics)
    frontier = list(cyclics)
    cyc_list = list(cyclics)
    while frontier:
        new: list[frozenset] = []
        for A in frontier:
            for C in cyc_list:
                if C <= A:
                    continue
                join = _subgroup_join(A, C, mul, G)
                if join not in known:
                    known.add(join)
                    new.append(join)
        frontier = new
    return [_wrap_like(G, elems) for elems in sorted(known, key=lambda s: (len(s), sorted(s)))]


def _subgroup_join(A: frozenset, B: frozenset, mul, G) -> frozenset:
    elems = set(A) | set(B)
    gens = list(elems)
    frontier = list(elems)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
        if len(elems) > G.order:
            raise RuntimeError("join exceeded the ambient group; inputs not subgroups")
    return frozenset(elems)


# ---------------------------------------------------------------------------
# Borel / Cartan structure over F_ell
# ---------------------------------------------------------------------------


def is_upper_triangular_group(G: MatGroup) -> bool:
    return all(m[2] == 0 for m in G.elements)


def borel_normality_criterion(H: MatGroup, G: MatGroup) -> bool:
    """For G upper-triangular with ell | |G| and H <= G: H is normal in G
    iff U = (1 1; 0 1) lies in H, or every element of H has equal diagonal
    entries."""
    if not is_upper_triangular_group(G):
        raise ValueError("G must be upper-triangular")
    if G.order % G.ell != 0:
        raise ValueError("criterion requires ell | |G|")
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    if U_MATRIX in H.elements:
        return True
    return all(m[0] == m[3] for m in H.elements)


def _p1_points(F: GF) -> list:
    """P1 over the field: slopes plus the point at infinity (None)."""
    return [None] + list(F.elements())


def _moebius_image(m: Mat, s, F: GF):
    """Image of the line of slope s under the matrix: column vector (x, y)
    with slope y/x maps by (x, y) -> (a x + b y, c x + d y)."""
    a, b, c, d = (F.from_int(v) for v in m)
    if s is None:  # vector (0, 1)
        x, y = b, d
    else:
        x, y = F.add(a, F.mul(b, s)), F.add(c, F.mul(d, s))
    if x == F.zero:
        return None
    return F.mul(y, F.inv(x))


def common_eigenline_exists(H: MatGroup) -> bool:
    F = GF(H.ell)
    gens = H.generators or tuple(H.elements)
    for s in _p1_points(F):
        if all(_moebius_image(m, s, F) == s for m in gens):
            return True
    return False


def preserves_line_pair(H: MatGroup, nonsplit: bool) -> bool:
    """A pair of distinct lines (over F_ell, or a conjugate pair over
    F_ell^2 for the nonsplit case) mapped to itself by every generator."""
    ell = H.ell
    gens = H.generators or tuple(H.elements)
    if not nonsplit:
        F = GF(ell)
        pts = _p1_points(F)
        for s1, s2 in combinations(pts, 2):
            ok = True
            for m in gens:
                im = {_moebius_image(m, s1, F), _moebius_image(m, s2, F)}
                if im != {s1, s2}:
                    ok = False
                    break
            if ok:
                return True
        return False
    eps = _nonresidue(ell)
    F2 = GF(ell, [-eps % ell, 0, 1])  # F_ell[t]/(t^2 - eps)
    seen = set()
    for a in range(ell):
        for b in range(1, ell):
            t = F2.reduce([a, b])
            tbar = F2.frobenius(t)
            key = frozenset((t, tbar))
            if key in seen:
                continue
            seen.add(key)
            ok = True
            for m in gens:
                im = {_moebius_image(m, t, F2), _moebius_image(m, tbar, F2)}
                if im != {t, tbar}:
                    ok = False
                    break
            if ok:
                return True
    return False


def _nonresidue(ell: int) -> int:
    for e in range(2, ell):
        if pow(e, (ell - 1) // 2, ell) == ell - 1:
            return e
    raise ValueError("no quadratic nonresidue found (is ell an odd prime?)")


def cartan_structures(ell: int) -> dict:
    """Split and nonsplit Cartan subgroups and their normalizers as element
    sets; sizes (l-1)^2 / 2(l-1)^2 and l^2-1 / 2(l^2-1)."""
    if ell > 13:
        raise ValueError("cartan_structures is sized for ell <= 13")
    split = [(a, 0, 0, d) for a in range(1, ell) for d in range(1, ell)]
    split_norm = split + [(0, b, c, 0) for b in range(1, ell) for c in range(1, ell)]
    eps = _nonresidue(ell)
    nonsplit = []
    for a in range(ell):
        for b in range(ell):
            if a == 0 and b == 0:
                continue
            nonsplit.append((a, b * eps % ell, b, a))
    conj = (1, 0, 0, ell - 1)
    nonsplit_norm = nonsplit + [mat_mul(conj, m, ell) for m in nonsplit]
    return {
        "split": MatGroup.from_elements(ell, split),
        "split_normalizer": MatGroup.from_elements(ell, split_norm),
        "nonsplit": MatGroup.from_elements(ell, nonsplit),
        "nonsplit_normalizer": MatGroup.from_elements(ell, nonsplit_norm),
    }


def det_image(H: MatGroup) -> tuple[int, ...]:
    """The set {det h : h in H} as a sorted tuple; a subgroup of (Z/ell)^x."""
    return tuple(sorted({mat_det(m, H.ell) for m in H.elements}))


def projective_order_stats(H: MatGroup) -> tuple[int, dict[int, int]]:
    """Order of H/(H n scalars) and the multiset of projective element
    orders."""
    ell = H.ell
    scalars = {(a, 0, 0, a) for a in range(1, ell)} & set(H.elements)
    proj_order = H.order // len(scalars)
    counts: dict[int, int] = {}
    seen_classes = set()
    for m in H.elements:
        cls = frozenset(mat_mul((a, 0, 0, a), m, ell) for a in range(1, ell)
                        if (a, 0, 0, a) in scalars)
        if cls in seen_classes:
            continue
        seen_classes.add(cls)
        k = 1
        acc = m
        while not _is_scalar(acc):
            acc = mat_mul(acc, m, ell)
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return proj_order, counts


def _is_scalar(m: Mat) -> bool:
    return m[1] == 0 and m[2] == 0 and m[0] == m[3]


_EXCEPTIONAL_STATS = {
    ("A4", 12): {1: 1, 2: 3, 3: 8},
    ("S4", 24): {1: 1, 2: 9, 3: 8, 4: 6},
    ("A5", 60): {1: 1, 2: 15, 3: 20, 5: 24},
}


def exceptional_projective_image(H: MatGroup) -> Optional[str]:
    """A4 / S4 / A5 detection from the projective order filter plus exact
    element-order statistics."""
    proj_order, counts = projective_order_stats(H)
    if proj_order not in (12, 24, 60):
        return None
    for (name, order), stats in _EXCEPTIONAL_STATS.items():
        if proj_order == order and counts == stats:
            return name
    return None


def classify_subgroup(H: MatGroup) -> set[str]:
    """All structure cases the subgroup satisfies; nonempty for every
    subgroup of GL2(F_ell).

    A: H is the full preimage of its determinant image (contains SL2);
    B: H fixes a line and ell divides |H| (Borel with unipotents);
    C: H normalizes a Cartan (preserves a pair of lines, split or nonsplit);
    D: projective image isomorphic to A4, S4 or A5.
    """
    ell = H.ell
    labels: set[str] = set()
    dets = det_image(H)
    if H.order == len(dets) * sl2_order(ell):
        labels.add("A")
    has_line = common_eigenline_exists(H)
    if has_line and H.order % ell == 0:
        labels.add("B")
    if H.order % ell != 0:
        # order prime to ell: Cartan-normalizer cases are decided by
        # preserved line pairs over F_ell or F_ell^2
        if preserves_line_pair(H, nonsplit=False) or preserves_line_pair(H, nonsplit=True):
            labels.add("C")
    if exceptional_projective_image(H) is not None:
        labels.add("D")
    return labels


# ---------------------------------------------------------------------------
# S_n certification from factorization patterns
# ---------------------------------------------------------------------------


def certify_Sn(cycle_types: Iterable[tuple[int, ...]], n: int, strict: bool = False) -> bool:
    """One-sided S_n certificate from observed Frobenius cycle types.

    Requires an n-cycle (transitivity on top of irreducibility), a p-cycle
    for a prime p with n/2 < p < n, and a type with exactly one even part,
    equal to 2, and all other parts odd (some power is a transposition).
    False means "not certified", never "not S_n".
    """
    if n < 5:
        if strict:
            raise ValueError("certification criterion needs n >= 5")
        return False
    types = {tuple(sorted(t, reverse=True)) for t in cycle_types}
    has_n_cycle = (n,) in types
    has_p_cycle = False
    for t in types:
        parts = [x for x in t if x > 1]
        if len(parts) == 1 and is_prime_int(parts[0]) and 2 * parts[0] > n and parts[0] < n:
            has_p_cycle = True
    has_transposition_power = False
    for t in types:
        evens = [x for x in t if x % 2 == 0]
        if evens == [2]:
            has_transposition_power = True
    return has_n_cycle and has_p_cycle and has_transposition_power


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def cycle_type_representatives(n: int) -> list[Perm]:
    """One permutation per partition of n (as a cycle type)."""
    reps = []
    for part in _partitions(n):
        cycles = []
        start = 0
        for length in part:
            cycles.append(list(range(start, start + length)))
            start += length
        reps.append(perm_from_cycles(n, cycles))
    return reps


def _partitions(n: int, cap: Optional[int] = None):
    if n == 0:
        yield ()
        return
    cap = cap or n
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def conjugacy_class(rep: Perm, G: PermGroup) -> frozenset:
    """Orbit of rep under conjugation by the generators of G."""
    cls = {rep}
    frontier = [rep]
    while frontier:
        new = []
        for x in frontier:
            for g in G.generators:
                y = perm_mul(perm_mul(g, x), perm_inv(g))
                if y not in cls:
                    cls.add(y)
                    new.append(y)
        frontier = new
    return frozenset(cls)


def normal_closure_of_class(rep: Perm, G: PermGroup) -> frozenset:
    """The subgroup generated by the full conjugacy class of rep.

    A conjugation-closed generating set yields a normal subgroup, so this is
    the normal closure of rep in G.  Generators are accumulated greedily:
    walk the class (seeded shuffle) and adjoin any member not yet generated;
    a handful of members always suffices, keeping the BFS fan-out small even
    for S_8."""
    import random as _random

    cls = sorted(conjugacy_class(rep, G))
    rng = _random.Random(G.n * 1009 + len(cls))
    rng.shuffle(cls)
    gens: list[Perm] = []
    elems: frozenset = frozenset({perm_identity(G.n)})
    for c in cls:
        if c not in elems:
            gens.append(c)
            elems = perm_closure(gens, G.n)
    return elems


def normal_subgroup_orders_sn(n: int) -> set[int]:
    """Orders of all normal subgroups of S_n, verified by computing the
    normal closure of one representative per nontrivial conjugacy class.

    Every nontrivial normal subgroup contains a full class, hence contains
    one of these closures; together with {1} this determines the lattice.
    """
    sn = PermGroup.symmetric(n)
    orders = {1, sn.order}
    for rep in cycle_type_representatives(n):
        if rep == perm_identity(n):
            continue
        orders.add(len(normal_closure_of_class(rep, sn)))
    return orders
