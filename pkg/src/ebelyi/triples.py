"""Permutation triples and their combinatorial invariants.

Permutations are tuples of 0-based images: p[x] is where x goes.  A
product written left to right means "apply the left factor first",
matching the exponent convention x^(pq) = (x^p)^q.  Words over the
letters a, b, c are evaluated as function composition instead: the
rightmost letter acts first.  Both conventions are exercised by the
tests against a worked degree-4 cover.
"""

from itertools import permutations as _all_perms
from math import gcd

from .errors import DegreeMismatch, InputError, NotEuclidean, NotTransitive, RelationViolated

CASES = ((2, 3, 6), (3, 3, 3), (2, 4, 4))


def identity(d):
    return tuple(range(d))


def then(p, q):
    """Apply p, then q."""
    return tuple(q[p[x]] for x in range(len(p)))


def inverse(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def conjugate(p, t):
    """t^-1 p t under the apply-left-first product."""
    return then(then(inverse(t), p), t)


def transposition(d, i, j):
    out = list(range(d))
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def cycles(p):
    """Cycle decomposition, each cycle starting at its least point,
    cycles sorted by their least point.  Includes fixed points."""
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        x = p[s]
        while x != s:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p):
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def order(p):
    o = 1
    for c in cycles(p):
        o = o * len(c) // gcd(o, len(c))
    return o


def is_transitive(ps, d):
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in ps:
            y = p[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == d


def cycle_of(p, x):
    """The cycle of p through x, as a tuple starting at x."""
    cyc = [x]
    y = p[x]
    while y != x:
        cyc.append(y)
        y = p[y]
    return tuple(cyc)


def word_perm(word, sa, sb, sc):
    """Permutation of a word over {a, b, c}: rightmost letter first."""
    gens = {"a": sa, "b": sb, "c": sc}
    acc = identity(len(sa))
    for letter in word:
        acc = then(gens[letter], acc)
    return acc


# ---------------------------------------------------------------------
# parsing and printing


def parse_perm(text, d=None):
    """Cycle notation with 1-based points: "(1 2 3)(4 5)"; commas also
    separate points.  "id" or "()" is the identity.  d, when given,
    fixes the degree (otherwise the largest point seen)."""
    s = text.strip()
    if not s or s in ("id", "()", "e", "1"):
        if d is None:
            raise InputError("cannot infer degree of the identity; pass --degree")
        return identity(d)
    if not s.startswith("("):
        raise InputError("expected cycle notation, got %r" % text)
    groups = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "(":
            if depth:
                raise InputError("nested parenthesis in %r" % text)
            depth = 1
            cur = ""
        elif ch == ")":
            if not depth:
                raise InputError("unbalanced parenthesis in %r" % text)
            depth = 0
            pts = [t for t in cur.replace(",", " ").split() if t]
            if pts:
                groups.append([int(t) for t in pts])
        elif depth:
            cur += ch
        elif not ch.isspace():
            raise InputError("unexpected %r outside cycles in %r" % (ch, text))
    if depth:
        raise InputError("unbalanced parenthesis in %r" % text)
    top = max((max(g) for g in groups), default=0)
    if d is None:
        d = top
    if top > d:
        raise DegreeMismatch("point %d exceeds degree %d" % (top, d))
    out = list(range(d))
    touched = set()
    for g in groups:
        for pt in g:
            if pt < 1:
                raise InputError("points are 1-based, got %d" % pt)
            if pt - 1 in touched:
                raise InputError("point %d repeated" % pt)
            touched.add(pt - 1)
        for k, pt in enumerate(g):
            out[pt - 1] = g[(k + 1) % len(g)] - 1
    return tuple(out)


def format_perm(p):
    parts = ["(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) if parts else "id"


# ---------------------------------------------------------------------
# validated triples


class Triple:
    """A validated transitive triple with a declared Euclidean case.

    The case letters bound the vertex rotation orders: each sigma's
    order must divide the matching letter, and applying sigma_a, then
    sigma_b, then sigma_c must be the identity.
    """

    __slots__ = ("a", "b", "c", "case", "d")

    def __init__(self, sa, sb, sc, case):
        d = len(sa)
        if len(sb) != d or len(sc) != d:
            raise DegreeMismatch("permutations act on different point counts")
        if case not in CASES:
            raise NotEuclidean("case %r is not one of %s" % (case, CASES))
        for s, o in zip((sa, sb, sc), case):
            if o % order(s):
                raise NotEuclidean(
                    "order %d does not divide the declared %d" % (order(s), o)
                )
        if then(then(sa, sb), sc) != identity(d):
            raise RelationViolated("applying the three permutations in order is not the identity")
        if not is_transitive((sa, sb, sc), d):
            raise NotTransitive("the triple does not act transitively")
        self.a, self.b, self.c, self.case, self.d = sa, sb, sc, case, d

    @property
    def perms(self):
        return (self.a, self.b, self.c)

    def passport(self):
        return tuple(cycle_type(s) for s in self.perms)

    def genus(self):
        # 2g - 2 = -2d + sum over all cycles of (length - 1)
        num = 2 - 2 * self.d + sum(self.d - len(cycles(s)) for s in self.perms)
        if num % 2:
            raise RelationViolated("odd total ramification")
        return num // 2

    def conjugated(self, t):
        return Triple(*(conjugate(s, t) for s in self.perms), self.case)

    def key(self):
        return (self.case, self.a, self.b, self.c)

    def __eq__(self, other):
        return isinstance(other, Triple) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Triple(%s, %s, %s; case=%s)" % (
            format_perm(self.a),
            format_perm(self.b),
            format_perm(self.c),
            "(%d,%d,%d)" % self.case,
        )


def infer_case(sa, sb, sc):
    """Declared case from actual orders: exact written-order match
    first, then a unique componentwise-divisor match."""
    orders = tuple(order(s) for s in (sa, sb, sc))
    if orders in CASES:
        return orders
    fits = [c for c in CASES if all(x % y == 0 for x, y in zip(c, orders))]
    if len(fits) == 1:
        return fits[0]
    if not fits:
        raise NotEuclidean("orders %s fit no Euclidean case in written order" % (orders,))
    raise NotEuclidean(
        "orders %s fit several cases %s; declare one explicitly" % (orders, fits)
    )


def make_triple(sa, sb, sc, case=None):
    if case is None:
        case = infer_case(sa, sb, sc)
    return Triple(sa, sb, sc, case)


# ---------------------------------------------------------------------
# canonical labels and enumeration


def canonical_key(sa, sb, sc):
    """Least relabeling of the triple over all breadth-first labelings
    started from each point; invariant of simultaneous conjugation."""
    d = len(sa)
    best = None
    for start in range(d):
        lab = {start: 0}
        seq = [start]
        head = 0
        while head < len(seq):
            x = seq[head]
            head += 1
            for p in (sa, sb, sc):
                y = p[x]
                if y not in lab:
                    lab[y] = len(seq)
                    seq.append(y)
        if len(seq) < d:
            raise NotTransitive("canonical labeling needs a transitive action")
        key = tuple(
            tuple(lab[p[x]] for x in seq) for p in (sa, sb, sc)
        )
        if best is None or key < best:
            best = key
    return best


def class_representatives(d, target):
    """One permutation per cycle type of S_d whose order divides target."""
    def parts(n, m):
        if n == 0:
            yield ()
            return
        for k in range(min(n, m), 0, -1):
            if target % k == 0:
                for rest in parts(n - k, k):
                    yield (k,) + rest

    out = []
    for typ in parts(d, d):
        p = []
        base = 0
        for L in typ:
            p.extend(list(range(base + 1, base + L)) + [base])
            base += L
        out.append(tuple(p))
    return out


def perms_of_order_dividing(d, target):
    for p in _all_perms(range(d)):
        if target % order(p) == 0:
            yield p


def enumerate_triples(case, d):
    """All transitive triples of the case at degree d, one per
    simultaneous-conjugacy class, sorted by canonical key."""
    a, b, c = case
    found = {}
    for sa in class_representatives(d, a):
        for sb in perms_of_order_dividing(d, b):
            sc = inverse(then(sa, sb))
            if c % order(sc):
                continue
            if not is_transitive((sa, sb, sc), d):
                continue
            key = canonical_key(sa, sb, sc)
            if key not in found:
                found[key] = Triple(key[0], key[1], key[2], case)
    return [found[k] for k in sorted(found)]
