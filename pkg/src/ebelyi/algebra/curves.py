"""Elliptic curves y^2 = x^3 + A x + B over the exact coefficient types.

Points are None (infinity) or (x, y) pairs whose components live in any
of the exact domains (Cyc, Ext, Quad over either).  The group law only
divides, so it works verbatim over a quotient ring; a zero-divisor hit
propagates as ZeroDivisor and the caller splits the modulus.

The torsion table construction at the bottom is the numeric-to-exact
bridge: x-coordinates of the full N-torsion of one of the two standard
CM curves are produced as exact elements of a quotient ring K[t]/(g),
where g is recognized from a Galois-stable product of Weierstrass
values and certified by exact division into the division polynomial.
"""

from mpmath import mp

from ..errors import RecognitionFailed, SquareDiscriminant, ZeroDivisor
from .fields import QQ, Cyc, Quad, Tower, split_tower
from .poly import Poly


class Curve:
    """y^2 = x^3 + A x + B with A, B in a common exact domain."""

    __slots__ = ("A", "B", "_dp")

    def __init__(self, A, B):
        self.A = A
        self.B = B
        self._dp = {}

    @property
    def one(self):
        return self.A * 0 + 1

    def f_at(self, x):
        return x * x * x + self.A * x + self.B

    def f_poly(self):
        one = self.one
        return Poly([self.B, self.A, one * 0, one], one)

    def discriminant(self):
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def is_on(self, P):
        if P is None:
            return True
        x, y = P
        return (y * y - self.f_at(x)).is_zero()

    def map_coeffs(self, fn):
        return Curve(fn(self.A), fn(self.B))

    def __eq__(self, other):
        return isinstance(other, Curve) and self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return "Curve(y^2 = x^3 + (%r) x + (%r))" % (self.A, self.B)

    # -- group law -----------------------------------------------------

    def neg(self, P):
        if P is None:
            return None
        return (P[0], -P[1])

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if (y1 + y2).is_zero():
                return None
            lam = (3 * x1 * x1 + self.A) / (y1 + y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return (x3, y3)

    def mul(self, P, n):
        if n < 0:
            return self.mul(self.neg(P), -n)
        R = None
        Q = P
        while n:
            if n & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            n >>= 1
        return R

    # -- division polynomials -------------------------------------------

    def _pair(self, n):
        """The n-th division polynomial as (P, e) meaning P(x) * y^e,
        e in {0, 1}; y^2 is reduced to f(x)."""
        if n in self._dp:
            return self._dp[n]
        one = self.one
        x = Poly.x(one)
        A, B = self.A, self.B
        f = self.f_poly()

        def mk(p, e):
            self._dp[n] = (p, e)
            return self._dp[n]

        if n == 0:
            return mk(Poly([], one), 0)
        if n == 1:
            return mk(Poly([one], one), 0)
        if n == 2:
            return mk(Poly([one * 2], one), 1)
        if n == 3:
            return mk(
                3 * x**4 + (6 * A) * x**2 + (12 * B) * x + Poly([-(A * A)], one), 0
            )
        if n == 4:
            inner = (
                x**6
                + (5 * A) * x**4
                + (20 * B) * x**3
                + (-5 * A * A) * x**2
                + (-4 * A * B) * x
                + Poly([-8 * B * B - A * A * A], one)
            )
            return mk(inner.scale(one * 4), 1)

        def pmul(u, v):
            p, e = u
            q, d = v
            r = p * q
            t = e + d
            if t >= 2:
                r = r * f
                t -= 2
            return (r, t)

        def psub(u, v):
            if u[1] != v[1]:
                raise AssertionError("parity mismatch in division polynomials")
            return (u[0] - v[0], u[1])

        m, rem = divmod(n, 2)
        if rem:
            out = psub(
                pmul(self._pair(m + 2), pmul(self._pair(m), pmul(self._pair(m), self._pair(m)))),
                pmul(self._pair(m - 1), pmul(self._pair(m + 1), pmul(self._pair(m + 1), self._pair(m + 1)))),
            )
            return mk(*out)
        s = psub(
            pmul(self._pair(m + 2), pmul(self._pair(m - 1), self._pair(m - 1))),
            pmul(self._pair(m - 2), pmul(self._pair(m + 1), self._pair(m + 1))),
        )
        prod = pmul(self._pair(m), s)
        if prod[1] != 0:
            raise AssertionError("even division polynomial has odd parity")
        q, r = divmod(prod[0], f)
        if not r.is_zero():
            raise AssertionError("division polynomial recursion not divisible by f")
        return mk(q.scale(one / 2), 1)

    def x_division_poly(self, n):
        """Monic polynomial whose roots are the x-coordinates of the
        nonzero n-torsion."""
        p, e = self._pair(n)
        if e:
            p = p * self.f_poly()
        return p.monic()

    def primitive_division_poly(self, n):
        """Monic polynomial vanishing exactly on x-coordinates of
        points of exact (group) order n."""
        h = self.x_division_poly(n)
        for d in range(2, n):
            if n % d == 0:
                g = h.gcd(self.x_division_poly(d))
                if g.degree > 0:
                    h = (h // g).monic()
        return h

    def mult_by_n_x(self, n):
        """The x-coordinate map of multiplication by n, as a pair of
        polynomials (num, den)."""
        if n == 1:
            one = self.one
            return Poly.x(one), Poly([one], one)
        pn, en = self._pair(n)
        pm, _ = self._pair(n - 1)
        pp, _ = self._pair(n + 1)
        x = Poly.x(self.one)
        f = self.f_poly()
        prod = pm * pp
        if en:  # n even: psi_n carries a factor y, neighbors do not
            den = pn * pn * f
            num = x * den - prod
        else:  # n odd: the neighbor product carries y^2 = f
            den = pn * pn
            num = x * den - prod * f
        return num, den


# ---------------------------------------------------------------------
# the unit action of the multiplier ring


def unit_action(kind, P, scal):
    """Image of P under the curve automorphism matching z -> j z on the
    uniformizing lattice: x -> j^-2 x, y -> j^-3 y.  scal embeds Cyc
    scalars into the point's coordinate domain."""
    if P is None:
        return None
    j = Cyc.j(kind)
    x, y = P
    return (scal(j ** (-2)) * x, scal(j ** (-3)) * y)


def module_mul(curve, kind, P, a, b, scal):
    """[a + b j] P on a curve with the unit action."""
    return curve.add(curve.mul(P, a), curve.mul(unit_action(kind, P, scal), b))


# ---------------------------------------------------------------------
# standard models: the two CM curves and their tessellation lattices


def model_curve(kind):
    """The fixed curve uniformized by the tessellation lattice: kind
    'i' gives y^2 = x^3 - x, kind 'w' gives y^2 = x^3 + 1."""
    if kind == "i":
        return Curve(Cyc("i", -1), Cyc("i", 0))
    if kind == "w":
        return Curve(Cyc("w", 0), Cyc("w", 1))
    raise ValueError("no standard curve for kind %r" % (kind,))


def model_w1(kind):
    """Generator of the tessellation translation lattice as a module
    over the multiplier ring."""
    return Cyc(kind, 1, 1)  # 1 + i or 1 + zeta6


def model_lattice(kind):
    from ..analytic import ScaledLattice

    w1 = model_w1(kind)
    return ScaledLattice(w1, Cyc.j(kind) * w1, ("fit", "square" if kind == "i" else "hex"))


def two_torsion_x(kind):
    """Exact x-coordinates of the 2-torsion of the standard curve."""
    if kind == "i":
        return [Cyc("i", 0), Cyc("i", 1), Cyc("i", -1)]
    w = Cyc.j("w")
    return [Cyc("w", -1), w, 1 - w]


# ---------------------------------------------------------------------
# exact torsion tables


class TorsionTable:
    """x-coordinates of the full N-torsion of the standard curve of the
    given kind, as exact elements of tower (None marks infinity), keyed
    by module coordinates (a, b) meaning [a + b j] P0 for the canonical
    generator P0 with x(P0) = tower.theta()."""

    def __init__(self, kind, N, tower, x, prec):
        self.kind = kind
        self.N = N
        self.tower = tower
        self.x = x
        self.prec = prec
        self.curve = model_curve(kind)

    def entry(self, a, b):
        return self.x[(a % self.N, b % self.N)]

    def split(self, factor, prec):
        """Table over the shrunken tower after a zero-divisor hit."""
        from .fields import retower

        t2 = split_tower(self.tower, factor, prec)
        x2 = {}
        for k, v in self.x.items():
            x2[k] = None if v is None else retower(self.tower, t2, v)
        return TorsionTable(self.kind, self.N, t2, x2, prec)


_TORSION_CACHE = {}


def unit_classes(kind, N):
    """Sorted representatives of (units of Z[j]/N) modulo sign."""
    if kind == "i":
        norm = lambda a, b: a * a + b * b
    else:
        norm = lambda a, b: a * a + a * b + b * b
    from math import gcd

    seen = set()
    reps = []
    for a in range(N):
        for b in range(N):
            if gcd(norm(a, b), N) != 1 or (a, b) in seen:
                continue
            seen.add((a, b))
            seen.add(((-a) % N, (-b) % N))
            reps.append((a, b))
    return reps


def torsion_table(kind, N, start_prec=128):
    """Cached exact N-torsion table for the standard curve."""
    key = (kind, N)
    if key in _TORSION_CACHE:
        return _TORSION_CACHE[key]
    from ..analytic import precision_ladder

    table = precision_ladder(lambda p: _build_torsion(kind, N, p), start=start_prec)
    _TORSION_CACHE[key] = table
    return table


def update_torsion_cache(table):
    _TORSION_CACHE[(table.kind, table.N)] = table


def _build_torsion(kind, N, prec):
    from ..analytic import recognize_cyc

    curve = model_curve(kind)
    if N == 1:
        return TorsionTable(kind, N, Tower(kind), {(0, 0): None}, prec)

    reps = unit_classes(kind, N)
    w1 = model_w1(kind)
    lat = model_lattice(kind)
    work = prec + 32
    xs = []
    for a, b in reps:
        z = Cyc(kind, a, b) * w1 * QQ(1, N)
        pt = lat.point(z, work)
        if pt is None:
            raise RecognitionFailed("unit multiple landed on the lattice")
        xs.append(pt[0])
    with mp.workprec(work):
        coeffs = [mp.mpc(1)]
        for xv in xs:
            nxt = [mp.mpc(0)] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k] -= c * xv
                nxt[k + 1] += c
            coeffs = nxt
    # coefficients are rational over the base field with denominators
    # dividing a power of N (the division polynomial is not monic)
    g = [recognize_cyc(c, kind, prec) for c in coeffs]
    one = Cyc(kind, 1)
    gpoly = Poly(g, one)
    # certify: g divides the x-polynomial of exact order N points
    h = curve.primitive_division_poly(N)
    if not (h % gpoly).is_zero():
        raise RecognitionFailed("recognized product does not divide the division polynomial")
    theta_hat = xs[reps.index((1, 0))]
    # the unit-class product is Galois-stable but need not be
    # irreducible; a quotient by it when the generator already lies in
    # the base field is a product ring shedding zero divisors later
    tower = None
    x0 = None
    try:
        cand = recognize_cyc(theta_hat, kind, prec)
    except RecognitionFailed:
        cand = None
    if cand is not None:
        acc = Cyc(kind, 0)
        for c in reversed(g):
            acc = acc * cand + c
        if acc.is_zero():
            tower = Tower(kind)
            x0 = cand
    if tower is None:
        tower = Tower(kind, g, theta_hat, work)

    while True:
        try:
            x_entries = _torsion_entries(kind, N, curve, tower, x0)
            return TorsionTable(kind, N, tower, x_entries, prec)
        except ZeroDivisor as zd:
            tower = split_tower(tower, zd.factor, work)


def _torsion_entries(kind, N, curve, tower, x0=None):
    cl = curve.map_coeffs(tower.coerce)
    x0 = tower.theta() if x0 is None else tower.coerce(x0)
    disc = cl.f_at(x0)
    try:
        return _entries_with_y(kind, N, cl, tower, x0, Quad.root(disc), lambda c: Quad.const(disc, tower.coerce(c)))
    except SquareDiscriminant as sd:
        return _entries_with_y(kind, N, cl, tower, x0, sd.root, tower.coerce)


def _entries_with_y(kind, N, curve, tower, x0, y0, scal):
    if isinstance(y0, Quad):
        P0 = (Quad.const(y0.disc, x0), y0)
    else:
        P0 = (x0, y0)
    jP0 = unit_action(kind, P0, scal)
    out = {}
    col = None
    for b in range(N):
        row = col
        for a in range(N):
            if row is None:
                if (a, b) != (0, 0):
                    raise RecognitionFailed(
                        "torsion generator collapsed at (%d, %d)" % (a, b)
                    )
                out[(a, b)] = None
            else:
                xv = row[0]
                if isinstance(xv, Quad):
                    xv = xv.plain()
                out[(a, b)] = xv
            row = curve.add(row, P0)
        col = curve.add(col, jP0)
    return out
