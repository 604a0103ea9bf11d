"""Exact arithmetic in Q, Q(i), Q(zeta6), and one designated extension.

The base fields are the three fields that can contain the multiplier
ring of a plane tessellation by triangles: Q itself, Q(i) with
i^2 = -1, and Q(zeta6) with zeta6^2 = zeta6 - 1.  A Tower optionally
extends the base by one root theta of a monic squarefree polynomial g.
The quotient K[t]/(g) is used as if it were a field; when g happens to
be reducible an inversion can hit a zero divisor, which surfaces as a
ZeroDivisor exception carrying a proper factor of g so that the caller
can shrink the modulus to the factor its designated root satisfies and
retry.  This lazy splitting keeps every downstream computation exact
without a general number-field factorization routine.

Elements never mix towers: coerce first via Tower.coerce.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

from mpmath import mp

from ..errors import RecognitionFailed, SquareDiscriminant, ZeroDivisor

_Q_ZERO = QQ(0)
_Q_ONE = QQ(1)

# j^2 = JSQ[kind][0] + JSQ[kind][1]*j
_JSQ = {"Q": (_Q_ZERO, _Q_ZERO), "i": (QQ(-1), _Q_ZERO), "w": (QQ(-1), _Q_ONE)}

# order of j in the unit group
_JORDER = {"Q": 1, "i": 4, "w": 6}


_QTYPE = type(_Q_ZERO)


def _as_q(x):
    if type(x) is _QTYPE:
        return x
    if isinstance(x, (int, Fraction)):
        return QQ(x)
    raise TypeError("expected a rational, got %r" % (x,))


def _raw(kind, a, b):
    # internal fast constructor: a, b must already be exact rationals
    # and b must be zero when kind is "Q"
    c = Cyc.__new__(Cyc)
    c.kind = kind
    c.a = a
    c.b = b
    return c


class Cyc:
    """Element a + b*j of Q, Q(i) (j = i) or Q(zeta6) (j = zeta6)."""

    __slots__ = ("kind", "a", "b")

    def __init__(self, kind, a, b=0):
        if kind not in _JSQ:
            raise ValueError("unknown base field %r" % (kind,))
        self.kind = kind
        self.a = _as_q(a)
        self.b = _as_q(b)
        if kind == "Q" and self.b:
            raise ValueError("nonzero imaginary part in Q")

    @staticmethod
    def j(kind):
        return Cyc(kind, 0, 1)

    def same(self, a, b=0):
        """New element of the same field."""
        return Cyc(self.kind, a, b)

    def is_zero(self):
        return not self.a and not self.b

    def is_rational(self):
        return not self.b

    def rational(self):
        if self.b:
            raise ValueError("not rational: %r" % (self,))
        return self.a

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.kind != self.kind:
                if other.kind == "Q":
                    return Cyc(self.kind, other.a)
                return None
            return other
        if isinstance(other, int) or type(other) is _QTYPE or isinstance(other, Fraction):
            return Cyc(self.kind, other)
        return None

    def __add__(self, other):
        if type(other) is Cyc and other.kind == self.kind:
            return _raw(self.kind, self.a + other.a, self.b + other.b)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _raw(self.kind, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.kind, -self.a, -self.b)

    def __sub__(self, other):
        if type(other) is Cyc and other.kind == self.kind:
            return _raw(self.kind, self.a - other.a, self.b - other.b)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _raw(self.kind, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _raw(self.kind, o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        if type(other) is Cyc and other.kind == self.kind:
            o = other
        else:
            o = self._coerce(other)
            if o is None:
                return NotImplemented
        k = self.kind
        if k == "w":
            bb = self.b * o.b
            return _raw(k, self.a * o.a - bb, self.a * o.b + self.b * o.a + bb)
        if k == "i":
            return _raw(k, self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a)
        return _raw(k, self.a * o.a, _Q_ZERO)

    __rmul__ = __mul__

    def conj(self):
        """The nontrivial automorphism (identity on Q)."""
        if self.kind == "i":
            return _raw("i", self.a, -self.b)
        if self.kind == "w":
            return _raw("w", self.a + self.b, -self.b)
        return self

    def norm(self):
        return (self * self.conj()).a

    def inv(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in %s" % self.kind)
        c = self.conj()
        s = _Q_ONE / n
        return _raw(self.kind, c.a * s, c.b * s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = Cyc(self.kind, 1)
        p = self
        while n:
            if n & 1:
                r = r * p
            p = p * p
            n >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.kind, self.a, self.b))

    def embed(self, prec):
        """Complex value under the embedding that puts j in the upper
        half plane."""
        with mp.workprec(prec):
            re = mp.mpf(int(self.a.numerator)) / mp.mpf(int(self.a.denominator))
            im = mp.mpf(int(self.b.numerator)) / mp.mpf(int(self.b.denominator))
            if self.kind == "i":
                return mp.mpc(re, im)
            if self.kind == "w":
                # zeta6 = 1/2 + (sqrt 3 / 2) i
                return mp.mpc(re + im / 2, im * mp.sqrt(3) / 2)
            return mp.mpc(re)

    def __repr__(self):
        gen = {"Q": "", "i": "i", "w": "w"}[self.kind]
        if not self.b:
            return str(self.a)
        if not self.a:
            return "%s*%s" % (self.b, gen)
        return "%s%s%s*%s" % (self.a, "+" if self.b > 0 else "-", abs(self.b), gen)


def j_order(kind):
    """Order of the distinguished root of unity j."""
    return _JORDER[kind]


# ---------------------------------------------------------------------
# list-based polynomial helpers over any field-like elements
#
# Little-endian coefficient lists with no trailing zeros; [] is zero.
# Elements must support +, -, *, is_zero, inv.  These back the quotient
# ring reduction, resultants and the subfield linear algebra; the
# public Poly class wraps the same conventions.


def p_trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


def p_add(f, g):
    out = []
    for k in range(max(len(f), len(g))):
        if k < len(f) and k < len(g):
            out.append(f[k] + g[k])
        elif k < len(f):
            out.append(f[k])
        else:
            out.append(g[k])
    return p_trim(out)


def p_neg(f):
    return [-c for c in f]


def p_sub(f, g):
    return p_add(f, p_neg(g))


def p_mul(f, g):
    if not f or not g:
        return []
    zero = f[0] * 0
    out = [zero] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        if ci.is_zero():
            continue
        for k, dk in enumerate(g):
            out[i + k] = out[i + k] + ci * dk
    return p_trim(out)


def p_scale(f, s):
    return p_trim([c * s for c in f])


def p_divmod(f, g):
    """Quotient and remainder; the leading coefficient of g must be
    invertible (over a quotient ring its inv may raise ZeroDivisor)."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = g[-1].inv()
    terms = []
    r = p_trim(f)
    dg = len(g) - 1
    while r and len(r) - 1 >= dg:
        c = r[-1] * inv_lc
        d = len(r) - 1 - dg
        terms.append((d, c))
        for k in range(len(g)):
            r[d + k] = r[d + k] - c * g[k]
        r = p_trim(r)
    if not terms:
        return [], r
    qv = [g[0] * 0] * (terms[0][0] + 1)
    for d, c in terms:
        qv[d] = c
    return p_trim(qv), r


def p_monic(f):
    if not f:
        return []
    return p_scale(f, f[-1].inv())


def p_gcd(f, g):
    """Monic gcd by the Euclidean algorithm."""
    a, b = p_trim(f), p_trim(g)
    while b:
        a, b = b, p_divmod(a, b)[1]
    return p_monic(a)


def p_ext_gcd(f, g):
    """(d, u, v) with u*f + v*g = d, d the monic gcd."""
    f, g = p_trim(f), p_trim(g)
    some = f or g
    if not some:
        raise ZeroDivisionError("gcd of zero polynomials")
    one = [some[0] * 0 + 1]
    r0, r1 = f, g
    s0, s1 = one, []
    t0, t1 = [], one
    while r1:
        q, r = p_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1))
        t0, t1 = t1, p_sub(t0, p_mul(q, t1))
    lc_inv = r0[-1].inv()
    return p_scale(r0, lc_inv), p_scale(s0, lc_inv), p_scale(t0, lc_inv)


def p_deriv(f):
    return p_trim([f[k] * k for k in range(1, len(f))])


def p_eval(f, x):
    if not f:
        return x * 0
    acc = f[-1]
    for c in reversed(f[:-1]):
        acc = acc * x + c
    return acc


def p_resultant(f, g):
    """Resultant of two nonzero polynomials over a field."""
    f, g = p_trim(f), p_trim(g)
    if not f or not g:
        raise ValueError("resultant needs nonzero polynomials")
    one = f[0] * 0 + 1
    res = one
    a, b = f, g
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        r = p_divmod(a, b)[1]
        if not r:
            return b[0] * 0
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res = res * b[-1] ** (da - dr)
        a, b = b, r


def p_squarefree(f):
    """f divided by gcd(f, f'), made monic."""
    f = p_trim(f)
    if len(f) <= 2:
        return p_monic(f)
    g = p_gcd(f, p_deriv(f))
    if len(g) == 1:
        return p_monic(f)
    return p_monic(p_divmod(f, g)[0])


def p_interp(points):
    """Lagrange interpolation through [(x, y), ...] with field entries."""
    out = []
    for k, (xk, yk) in enumerate(points):
        if yk.is_zero():
            continue
        num = [yk]
        den = yk * 0 + 1
        one = yk * 0 + 1
        for m, (xm, _) in enumerate(points):
            if m == k:
                continue
            num = p_mul(num, [-xm, one])
            den = den * (xk - xm)
        out = p_add(out, p_scale(num, den.inv()))
    return out


# ---------------------------------------------------------------------


class Tower:
    """A base field K (by kind) plus at most one extension K[t]/(g).

    g is monic and squarefree with Cyc coefficients; theta is a chosen
    complex root of g that pins down the embedding.  A trivial tower
    has modulus None and its elements are plain Cyc; a degree-1 modulus
    is allowed (it shows up when a modulus splits down to linear) and
    behaves like the base field with one-entry vectors.
    """

    def __init__(self, kind, modulus=None, theta_approx=None, theta_prec=0):
        self.kind = kind
        if modulus is not None:
            modulus = tuple(modulus)
            if len(modulus) < 2 or modulus[-1] != Cyc(kind, 1):
                raise ValueError("modulus must be monic of positive degree")
            if theta_approx is None:
                raise ValueError("an extension needs a designated root")
        self.modulus = modulus
        self._theta_cache = {}
        if theta_approx is not None:
            # convert at the claimed precision, not the ambient one,
            # or the seed silently drops to 53 bits
            with mp.workprec(max(theta_prec, mp.prec) + 16):
                self._theta_cache[theta_prec] = mp.mpc(theta_approx)

    @property
    def degree(self):
        return 1 if self.modulus is None else len(self.modulus) - 1

    def is_trivial(self):
        return self.modulus is None

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def j(self):
        return self.coerce(Cyc.j(self.kind))

    def theta(self):
        if self.modulus is None:
            raise ValueError("trivial tower has no generator")
        n = self.degree
        if n == 1:
            return self.coerce(-self.modulus[0])
        vec = [Cyc(self.kind, 0)] * n
        vec[1] = Cyc(self.kind, 1)
        return Ext(self, tuple(vec))

    def coerce(self, x):
        if isinstance(x, Ext):
            if x.tower is not self:
                raise TypeError("element of a different tower")
            return x
        if isinstance(x, Cyc):
            if x.kind != self.kind:
                if x.kind == "Q":
                    x = Cyc(self.kind, x.a)
                else:
                    raise TypeError("cannot coerce %s into %s" % (x.kind, self.kind))
        else:
            x = Cyc(self.kind, x)
        if self.modulus is None:
            return x
        vec = [x] + [Cyc(self.kind, 0)] * (self.degree - 1)
        return Ext(self, tuple(vec))

    def from_vector(self, lst):
        """Element with the given coefficient vector over the base."""
        if self.modulus is None:
            (c,) = list(lst) or [Cyc(self.kind, 0)]
            return c
        n = self.degree
        vec = list(lst) + [Cyc(self.kind, 0)] * n
        return Ext(self, tuple(vec[:n]))

    def as_vector(self, x):
        """Coefficient vector of x over the base field, length degree."""
        x = self.coerce(x)
        if isinstance(x, Cyc):
            return [x]
        return list(x.vec)

    # -- numeric embedding --------------------------------------------

    def theta_at(self, prec):
        """The designated root of the modulus to prec bits, by Newton
        refinement of the stored approximation."""
        if self.modulus is None:
            raise ValueError("trivial tower has no generator")
        hit = [p for p in self._theta_cache if p >= prec]
        if hit:
            return self._theta_cache[max(hit)]
        x = self._theta_cache[max(self._theta_cache)]
        work = prec + 32
        with mp.workprec(work):
            g = [c.embed(work) for c in self.modulus]
            dg = [k * g[k] for k in range(1, len(g))]
            x = mp.mpc(x)
            for _ in range(200):
                dfx = _horner(dg, x)
                if dfx == 0:
                    raise RecognitionFailed("derivative vanished at designated root")
                step = _horner(g, x) / dfx
                x = x - step
                if abs(step) < mp.mpf(2) ** (-prec - 8) * (1 + abs(x)):
                    break
            else:
                raise RecognitionFailed("root refinement did not converge")
        self._theta_cache[prec] = x
        return x

    def embed(self, x, prec):
        x = self.coerce(x)
        if isinstance(x, Cyc):
            return x.embed(prec)
        work = prec + 16
        with mp.workprec(work):
            th = self.theta_at(work)
            return _horner([c.embed(work) for c in x.vec], th)

    # -- exact linear algebra over the base field ----------------------

    def solve_linear(self, columns, target):
        """Solve sum_k c_k columns[k] = target for base-field c_k.
        Returns a list of Cyc or None if inconsistent; free variables
        are set to zero."""
        n = self.degree
        mat = [self.as_vector(col) for col in columns]
        rhs = self.as_vector(target)
        ncols = len(mat)
        rows = [[mat[k][i] for k in range(ncols)] + [rhs[i]] for i in range(n)]
        piv_cols = []
        r = 0
        for c in range(ncols):
            pr = next((rr for rr in range(r, len(rows)) if not rows[rr][c].is_zero()), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = rows[r][c].inv()
            rows[r] = [v * inv for v in rows[r]]
            for rr in range(len(rows)):
                if rr != r and not rows[rr][c].is_zero():
                    f = rows[rr][c]
                    rows[rr] = [v - f * w for v, w in zip(rows[rr], rows[r])]
            piv_cols.append(c)
            r += 1
            if r == len(rows):
                break
        for rr in range(r, len(rows)):
            if not rows[rr][ncols].is_zero():
                return None
        sol = [Cyc(self.kind, 0)] * ncols
        for k, c in enumerate(piv_cols):
            sol[c] = rows[k][ncols]
        return sol

    def element_minpoly(self, x):
        """Monic minimal polynomial of x over the base field."""
        x = self.coerce(x)
        if isinstance(x, Cyc):
            return [-x, Cyc(self.kind, 1)]
        powers = [self.one()]
        while True:
            target = powers[-1] * x
            sol = self.solve_linear(powers, target)
            if sol is not None:
                return p_trim([-c for c in sol] + [Cyc(self.kind, 1)])
            if len(powers) > self.degree:
                raise RecognitionFailed("no annihilator up to tower degree")
            powers.append(target)

    def __repr__(self):
        if self.modulus is None:
            return "Tower(%s)" % self.kind
        return "Tower(%s, deg %d)" % (self.kind, self.degree)


def _horner(coeffs, x):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class Ext:
    """Element of K[t]/(g), stored as a reduced coefficient tuple."""

    __slots__ = ("tower", "vec")

    def __init__(self, tower, vec):
        self.tower = tower
        self.vec = vec

    def _coerce(self, other):
        if isinstance(other, Ext):
            if other.tower is not self.tower:
                raise TypeError("elements of different towers")
            return other
        if isinstance(other, (int, Cyc)) or type(other) is _QTYPE or isinstance(other, Fraction):
            return self.tower.coerce(other)
        return None

    def is_zero(self):
        return all(c.is_zero() for c in self.vec)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext(self.tower, tuple(a + b for a, b in zip(self.vec, o.vec)))

    __radd__ = __add__

    def __neg__(self):
        return Ext(self.tower, tuple(-a for a in self.vec))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext(self.tower, tuple(a - b for a, b in zip(self.vec, o.vec)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = p_mul(p_trim(self.vec), p_trim(o.vec))
        rem = p_divmod(prod, list(self.tower.modulus))[1]
        return self.tower.from_vector(rem)

    __rmul__ = __mul__

    def inv(self):
        """Inverse modulo g; raises ZeroDivisor with a proper monic
        factor of g when gcd(self, g) is nonconstant."""
        f = p_trim(self.vec)
        if not f:
            raise ZeroDivisionError("division by zero in quotient ring")
        g = list(self.tower.modulus)
        d, u, _ = p_ext_gcd(f, g)
        if len(d) != 1:
            raise ZeroDivisor(d)
        s = d[0].inv()
        return self.tower.from_vector(p_divmod(p_scale(u, s), g)[1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = self.tower.one()
        p = self
        while n:
            if n & 1:
                r = r * p
            p = p * p
            n >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.vec == o.vec

    def __hash__(self):
        return hash((id(self.tower), self.vec))

    def embed(self, prec):
        return self.tower.embed(self, prec)

    def is_constant(self):
        return all(c.is_zero() for c in self.vec[1:])

    def constant(self):
        """The Cyc value of a constant element; raises if nonconstant."""
        if not self.is_constant():
            raise ValueError("element is not in the base field")
        return self.vec[0]

    def __repr__(self):
        return "Ext(%s)" % (list(self.vec),)


class Quad:
    """Element c0 + c1*s of R[s]/(s^2 - disc) over a ring R.

    The square root s tracks a curve point's y-coordinate when only its
    square is known exactly.  If the norm of an element to be inverted
    vanishes, disc is a perfect square in R and SquareDiscriminant
    reports one root so the caller can redo the work in R itself.
    """

    __slots__ = ("disc", "c0", "c1")

    def __init__(self, disc, c0, c1):
        self.disc = disc
        self.c0 = c0
        self.c1 = c1

    @staticmethod
    def const(disc, value):
        return Quad(disc, value, value * 0)

    @staticmethod
    def root(disc):
        return Quad(disc, disc * 0, disc * 0 + 1)

    def is_zero(self):
        return self.c0.is_zero() and self.c1.is_zero()

    def _coerce(self, other):
        if isinstance(other, Quad):
            return other
        return Quad.const(self.disc, self.c0 * 0 + other)

    def __add__(self, other):
        o = self._coerce(other)
        return Quad(self.disc, self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return Quad(self.disc, -self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Quad(
            self.disc,
            self.c0 * o.c0 + self.c1 * o.c1 * self.disc,
            self.c0 * o.c1 + self.c1 * o.c0,
        )

    __rmul__ = __mul__

    def inv(self):
        n = self.c0 * self.c0 - self.c1 * self.c1 * self.disc
        if n.is_zero():
            # c0^2 = c1^2 disc with self nonzero, so (c0/c1)^2 = disc
            raise SquareDiscriminant(self.c0 * self.c1.inv())
        ni = n.inv()
        return Quad(self.disc, self.c0 * ni, -self.c1 * ni)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = Quad.const(self.disc, self.c0 * 0 + 1)
        p = self
        while n:
            if n & 1:
                r = r * p
            p = p * p
            n >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        return self.c0 == o.c0 and self.c1 == o.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def plain(self):
        """The R-value of an element with no square-root part."""
        if not self.c1.is_zero():
            raise ValueError("element has a square-root component")
        return self.c0

    def __repr__(self):
        return "Quad(%r + %r s)" % (self.c0, self.c1)


# ---------------------------------------------------------------------
# modulus splitting and adjoining a further algebraic number


def split_tower(tower, factor, prec=128):
    """Replace a reducible modulus by whichever of factor, modulus/factor
    the designated root satisfies."""
    fac = p_monic(list(factor))
    cof = p_monic(p_divmod(list(tower.modulus), fac)[0])
    th = tower.theta_at(prec)
    with mp.workprec(prec):
        v_fac = abs(_horner([c.embed(prec) for c in fac], th))
        v_cof = abs(_horner([c.embed(prec) for c in cof], th))
    g = fac if v_fac < v_cof else cof
    return Tower(tower.kind, g, th, prec)


def retower(old, new, x):
    """Carry x from a tower to a refinement whose modulus divides the
    old one (the designated root is shared, so coefficient vectors
    transfer by reduction)."""
    vec = p_trim(old.as_vector(x))
    if new.is_trivial():
        if len(vec) > 1:
            raise ValueError("nonconstant element cannot enter a trivial tower")
        return new.coerce(vec[0] if vec else 0)
    return new.from_vector(p_divmod(vec, list(new.modulus))[1])


def adjoin_root(tower, poly, approx, prec):
    """Extend tower by a root of poly (coefficients in tower, root
    designated by a complex approximation).

    Returns (new_tower, lift, root) where lift maps old tower elements
    into the new tower and root is the adjoined number.  The new
    modulus is squarefree but possibly reducible; downstream zero
    divisors split it lazily.  Degree-1 results collapse back to the
    original tower.
    """
    k = tower.kind

    # the designated root may already lie in the current field; an
    # extension built anyway is a product ring with the root smeared
    # across components, so try recognition first and certify exactly
    from ..analytic import recognize_in_tower

    try:
        r = recognize_in_tower(approx, tower, prec)
    except RecognitionFailed:
        r = None
    if r is not None:
        acc = tower.coerce(0)
        for c in reversed(poly):
            acc = acc * r + tower.coerce(c)
        if acc.is_zero():
            return tower, (lambda e: e), r

    if tower.is_trivial():
        f = p_monic(p_squarefree([tower.coerce(c) for c in poly]))
        if len(f) == 2:
            root = -f[0]
            return tower, (lambda e: e), root
        t2 = Tower(k, f, approx, prec)
        return t2, (lambda e, _t2=t2: _t2.coerce(e)), t2.theta()

    g = list(tower.modulus)
    n = len(g) - 1
    fvec = [tower.as_vector(c) for c in poly]
    df = len(poly) - 1
    th_hat = tower.theta_at(prec)

    for c_try in range(1, 33):
        # H(v, t): clear the substitution u -> (v - t)/c_try from
        # poly's lift to K[t][u]; bivariate dict {(deg_t, deg_v): Cyc}
        H = {}
        for i, rep in enumerate(fvec):
            scale = Cyc(k, c_try) ** (df - i)
            for (dt1, dv), coeff in _vt_pow(i, k).items():
                for dt2, rc in enumerate(rep):
                    if rc.is_zero():
                        continue
                    key = (dt1 + dt2, dv)
                    H[key] = H.get(key, Cyc(k, 0)) + coeff * rc * scale
        degt = max(dt for (dt, _) in H)
        degv = max(dv for (_, dv) in H)
        with mp.workprec(prec):
            nu_hat = th_hat + c_try * mp.mpc(approx)
        # resultant in t, by interpolation in v
        bound = n * max(degv, 1)
        samples = []
        for v0 in range(bound + 1):
            v0c = Cyc(k, v0)
            hv = [Cyc(k, 0)] * (degt + 1)
            for (dt, dv), coeff in H.items():
                hv[dt] = hv[dt] + coeff * v0c**dv
            hv = p_trim(hv)
            r = p_resultant(g, hv) if hv else Cyc(k, 0)
            samples.append((v0c, r))
        G = p_interp(samples)
        if len(G) != bound + 1:
            continue  # degree drop: bad sample alignment, try next c
        Gs = p_squarefree(p_monic(G))
        if len(Gs) < 2:
            continue
        dGs = p_deriv(Gs)
        with mp.workprec(prec):
            val = abs(_horner([cc.embed(prec) for cc in Gs], nu_hat))
            der = abs(_horner([cc.embed(prec) for cc in dGs], nu_hat))
            if not (val < mp.mpf(2) ** (-prec // 3) and der > mp.mpf(2) ** (-prec // 3)):
                continue
        t2 = Tower(k, Gs, nu_hat, prec)
        ok, out = _finish_adjoin(t2, g, H, degt, poly, tower, c_try, prec)
        while not ok and isinstance(out, tuple) and out and out[0] == "split":
            t2 = split_tower(t2, out[1], prec)
            ok, out = _finish_adjoin(t2, g, H, degt, poly, tower, c_try, prec)
        if ok:
            return out
    raise RecognitionFailed("no primitive element found for the extension")


def _finish_adjoin(t2, g, H, degt, poly, tower, c_try, prec):
    """Inside the candidate tower t2, express the old generator and the
    new root; certify both.  Returns (True, result) or (False, reason)."""
    k = t2.kind
    nu = t2.theta()
    g2 = [t2.coerce(cc) for cc in g]
    hnu = []
    for dt in range(degt + 1):
        acc = t2.zero()
        for (dtt, dv), coeff in H.items():
            if dtt == dt:
                acc = acc + t2.coerce(coeff) * nu**dv
        hnu.append(acc)
    hnu = p_trim(hnu)
    if not hnu:
        return False, ("degenerate",)
    try:
        d = p_gcd(g2, hnu)
    except ZeroDivisor as zd:
        return False, ("split", zd.factor)
    if len(d) != 2:
        return False, ("nonlinear gcd",)
    theta_expr = -d[0]
    try:
        root_expr = (nu - theta_expr) / t2.coerce(Cyc(k, c_try))
    except ZeroDivisor as zd:
        return False, ("split", zd.factor)

    def lift(e, _t2=t2, _te=theta_expr, _tw=tower):
        acc = _t2.zero()
        for coeff in reversed(_tw.as_vector(e)):
            acc = acc * _te + _t2.coerce(coeff)
        return acc

    if not p_eval(g2, theta_expr).is_zero():
        return False, ("old generator fails its equation",)
    img = t2.zero()
    for coeff in reversed(list(poly)):
        img = img * root_expr + lift(coeff)
    if not img.is_zero():
        return False, ("new root fails its equation",)
    return True, (t2, lift, root_expr)


def _vt_pow(i, kind):
    """(v - t)^i as {(deg_t, deg_v): Cyc}."""
    out = {(0, 0): Cyc(kind, 1)}
    for _ in range(i):
        nxt = {}
        for (dt, dv), c in out.items():
            for key, mult in (((dt, dv + 1), c), ((dt + 1, dv), -c)):
                nxt[key] = nxt.get(key, Cyc(kind, 0)) + mult
        out = nxt
    return out
