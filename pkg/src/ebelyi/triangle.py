"""Euclidean reflection-free triangle data and covering invariants.

Each case carries three affine rotations delta_a, delta_b, delta_c of
the plane (z -> u z + t with u a root of unity), satisfying "apply a,
then b, then c is the identity", plus two words in the letters whose
affine values are independent translations spanning the tessellation
lattice.  Sheets of a cover are tracked through the homomorphism that
replaces each letter by the matching permutation.

From a triple this module extracts the translation sublattice fixing
sheet 1, its index N, the residual rotation order r, and a normalized
triple whose rotation center sits at a vertex the formulas can use.
"""

from math import gcd

from .errors import NonIntegral, UnsupportedCase
from .algebra.fields import Cyc, QQ
from .triples import (
    Triple,
    conjugate,
    cycle_of,
    cycles,
    inverse,
    then,
    transposition,
    word_perm,
)


class Affine:
    """z -> u z + t with exact coefficients."""

    __slots__ = ("u", "t")

    def __init__(self, u, t):
        self.u = u
        self.t = t

    def __call__(self, z):
        return self.u * z + self.t

    def after(self, other):
        """self composed after other: z -> self(other(z))."""
        return Affine(self.u * other.u, self.u * other.t + self.t)

    def __eq__(self, other):
        return self.u == other.u and self.t == other.t

    def __repr__(self):
        return "Affine(%r, %r)" % (self.u, self.t)


def word_affine(word, case):
    """Affine value of a word, rightmost letter applied first."""
    acc = Affine(Cyc(case.kind, 1), Cyc(case.kind, 0))
    for letter in word:
        acc = acc.after(case.delta[letter])
    return acc


class CaseData:
    __slots__ = ("orders", "kind", "delta", "vertex", "omega_words", "w1", "w2", "unit_k")

    def __init__(self, orders, kind, delta, vertex, omega_words, unit_k):
        self.orders = orders
        self.kind = kind
        self.delta = delta
        self.vertex = vertex
        self.omega_words = omega_words
        w1 = word_affine(omega_words[0], self)
        w2 = word_affine(omega_words[1], self)
        if not (w1.u == Cyc(kind, 1) and w2.u == Cyc(kind, 1)):
            raise AssertionError("lattice words are not translations")
        self.w1 = w1.t
        self.w2 = w2.t
        if self.w2 != Cyc.j(kind) ** unit_k * self.w1:
            raise AssertionError("second period is not the expected unit multiple")
        self.unit_k = unit_k


def _build_cases():
    w = Cyc.j("w")
    i = Cyc.j("i")
    out = {}

    # orders (3,3,3): vertices 0, 1, w; all rotations by a third turn
    rot3 = w * w
    out[(3, 3, 3)] = CaseData(
        (3, 3, 3),
        "w",
        {
            "a": Affine(rot3, w + 1),
            "b": Affine(rot3, 2 - w),
            "c": Affine(rot3, Cyc("w", 0)),
        },
        {"a": w, "b": Cyc("w", 1), "c": Cyc("w", 0)},
        ("acc", "bcc"),
        5,
    )

    # orders (2,3,6): vertices (1+w)/2, 1, 0
    out[(2, 3, 6)] = CaseData(
        (2, 3, 6),
        "w",
        {
            "a": Affine(Cyc("w", -1), 1 + w),
            "b": Affine(rot3, 2 - w),
            "c": Affine(w, Cyc("w", 0)),
        },
        {"a": (1 + w) * QQ(1, 2), "b": Cyc("w", 1), "c": Cyc("w", 0)},
        ("accc", "bcccc"),
        5,
    )

    # orders (2,4,4): vertices (1+i)/2, 1, 0
    out[(2, 4, 4)] = CaseData(
        (2, 4, 4),
        "i",
        {
            "a": Affine(Cyc("i", -1), 1 + i),
            "b": Affine(i, 1 - i),
            "c": Affine(i, Cyc("i", 0)),
        },
        {"a": (1 + i) * QQ(1, 2), "b": Cyc("i", 1), "c": Cyc("i", 0)},
        ("acc", "bccc"),
        3,
    )
    return out


CASE_DATA = _build_cases()


# ---------------------------------------------------------------------
# the sheet-1 translation lattice


def sheet_lattice(triple):
    """Hermite-form basis of the sublattice of integer pairs (b1, b2)
    whose translation b1*w1 + b2*w2 fixes sheet 1: rows (n1, n2) and
    (0, m2) with n1, m2 > 0 and 0 <= n2 < m2."""
    case = CASE_DATA[triple.case]
    pi1 = word_perm(case.omega_words[0], *triple.perms)
    pi2 = word_perm(case.omega_words[1], *triple.perms)
    l1 = len(cycle_of(pi1, 0))
    l2 = len(cycle_of(pi2, 0))
    inv2 = inverse(pi2)
    gens = []
    powers1 = {}
    p = 0
    for b1 in range(l1 + 1):
        powers1[b1] = p
        p = pi1[p]
    p = 0
    powers2 = {}
    for b2 in range(l2 + 1):
        powers2[b2] = p
        p = inv2[p]
    for b1 in range(l1 + 1):
        for b2 in range(l2 + 1):
            if powers1[b1] == powers2[b2]:
                gens.append((b1, b2))
    return _hnf2(gens)


def _hnf2(gens):
    rows = [g for g in gens if g != (0, 0)]
    # sweep first column to a single row by gcd steps
    lead = None
    seconds = []
    for r in rows:
        if r[0] == 0:
            seconds.append(r[1])
            continue
        if lead is None:
            lead = r
            continue
        a, b = lead, r
        while b[0]:
            q = a[0] // b[0]
            a, b = b, (a[0] - q * b[0], a[1] - q * b[1])
        lead = a
        if b[1]:
            seconds.append(b[1])
    if lead is None or not seconds:
        raise NonIntegral("sheet lattice is degenerate")
    m2 = 0
    for s in seconds:
        m2 = gcd(m2, s)
    n1, n2 = lead
    if n1 < 0:
        n1, n2 = -n1, -n2
    n2 %= m2
    return n1, n2, m2


class CoverData:
    """Combinatorial covering invariants of a triple."""

    __slots__ = ("triple", "case", "n1", "n2", "m2", "N", "r", "genus")

    def __init__(self, triple):
        self.triple = triple
        self.case = CASE_DATA[triple.case]
        self.n1, self.n2, self.m2 = sheet_lattice(triple)
        self.N = self.n1 * self.m2
        c = triple.case[2]
        num = c * self.N
        if num % triple.d:
            raise NonIntegral(
                "rotation order c*N/d = %d*%d/%d is not an integer" % (c, self.N, triple.d)
            )
        self.r = num // triple.d
        self.genus = triple.genus()
        if (self.genus == 1) != (self.r == 1):
            raise AssertionError("genus and residual rotation disagree")


# ---------------------------------------------------------------------
# origin normalization

_ROLES = ("c", "b", "a")
_ROLE_INDEX = {"a": 0, "b": 1, "c": 2}


def _eligible_cycles(sigma, role_order, r):
    """Cycles of sigma whose point's rotation stabilizer has order
    exactly r: length role_order // r."""
    if role_order % r:
        return []
    want = role_order // r
    return [c for c in cycles(sigma) if len(c) == want]


class Normalized:
    """A triple conjugated and relabeled so that the distinguished
    rotation center is usable: origin_role names the vertex whose
    rotation generates the residual r, role_map sends each current
    role letter to the role it had in the input (for matching fibers
    back to the input passport)."""

    __slots__ = ("triple", "cover", "origin_role", "role_map", "moved_point")

    def __init__(self, triple, cover, origin_role, role_map, moved_point):
        self.triple = triple
        self.cover = cover
        self.origin_role = origin_role
        self.role_map = role_map
        self.moved_point = moved_point


def normalize(triple):
    """Pick the rotation-center role, move sheet 1 into an eligible
    cycle, and relabel roles so the center is the c vertex whenever the
    case allows it."""
    cover = CoverData(triple)
    r = cover.r
    if r == 1:
        return Normalized(triple, cover, None, {"a": "a", "b": "b", "c": "c"}, 0)
    sigmas = {"a": triple.a, "b": triple.b, "c": triple.c}
    orders = dict(zip("abc", triple.case))
    for role in _ROLES:
        elig = _eligible_cycles(sigmas[role], orders[role], r)
        if not elig:
            continue
        i = min(min(c) for c in elig)
        if i:
            t = transposition(triple.d, 0, i)
            work = triple.conjugated(t)
        else:
            work = triple
        relabeled, role_map = _move_role_to_c(work, role)
        cover2 = CoverData(relabeled)
        if (cover2.N, cover2.r) != (cover.N, cover.r):
            raise AssertionError("relabeling changed covering invariants")
        origin = role if role_map is None else "c"
        if role_map is None:
            role_map = {"a": "a", "b": "b", "c": "c"}
        return Normalized(relabeled, cover2, origin, role_map, i)
    raise UnsupportedCase(
        "no vertex admits a rotation center of order %d" % r
    )


def _move_role_to_c(triple, role):
    """Relabel so the given role becomes c when the case permits:
    cyclic shifts for (3,3,3), the braid swap of b and c for (2,4,4).
    Returns (new_triple, role_map) with role_map None when no move is
    available (the (2,3,6) distinct-order cases and the a role of
    (2,4,4))."""
    if role == "c":
        return triple, {"a": "a", "b": "b", "c": "c"}
    sa, sb, sc = triple.perms
    if triple.case == (3, 3, 3):
        if role == "b":
            # (c, a, b): apply-order product sc sa sb = 1 by cyclicity,
            # and the old b lands in the c slot
            return Triple(sc, sa, sb, triple.case), {"a": "c", "b": "a", "c": "b"}
        return Triple(sb, sc, sa, triple.case), {"a": "b", "b": "c", "c": "a"}
    if triple.case == (2, 4, 4) and role == "b":
        # braid: apply b, then c, then b backwards; slot c takes b
        newb = then(then(sb, sc), inverse(sb))
        return Triple(sa, newb, sb, triple.case), {"a": "a", "b": "c", "c": "b"}
    return triple, None
