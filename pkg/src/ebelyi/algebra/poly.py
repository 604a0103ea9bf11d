"""Dense univariate polynomials over the exact coefficient types.

Coefficients must be homogeneous (all from the same field or quotient
ring) and support +, -, *, inv, is_zero.  The zero polynomial has an
empty coefficient tuple, so every constructor needs a sample element;
most call sites build polynomials through a Ring helper bound to a
tower.
"""

from .fields import (
    p_add,
    p_deriv,
    p_divmod,
    p_eval,
    p_gcd,
    p_interp,
    p_monic,
    p_mul,
    p_resultant,
    p_scale,
    p_squarefree,
    p_sub,
    p_trim,
)


class Poly:
    """Polynomial with little-endian coefficient tuple and a sample
    element `one` fixing the coefficient domain."""

    __slots__ = ("coeffs", "one")

    def __init__(self, coeffs, one):
        self.coeffs = tuple(p_trim(list(coeffs)))
        self.one = one

    @staticmethod
    def const(value, one=None):
        one = value * 0 + 1 if one is None else one
        return Poly([value], one)

    @staticmethod
    def x(one):
        return Poly([one * 0, one], one)

    # -- basic structure ----------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        if not self.coeffs:
            return self.one * 0
        if len(self.coeffs) > 1:
            raise ValueError("not a constant polynomial")
        return self.coeffs[0]

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.one * 0

    def _wrap(self, lst):
        return Poly(lst, self.one)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([self.one * 0 + other], self.one)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(p_add(list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        return self._wrap(p_sub(list(self.coeffs), list(o.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return self._wrap(p_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n):
        r = self._wrap([self.one])
        p = self
        while n:
            if n & 1:
                r = r * p
            p = p * p
            n >>= 1
        return r

    def __divmod__(self, other):
        o = self._coerce(other)
        q, r = p_divmod(list(self.coeffs), list(o.coeffs))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, s):
        return self._wrap(p_scale(list(self.coeffs), s))

    def monic(self):
        return self._wrap(p_monic(list(self.coeffs)))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- calculus and composition ---------------------------------------

    def deriv(self):
        return self._wrap(p_deriv(list(self.coeffs)))

    def eval(self, x):
        return p_eval(list(self.coeffs), x)

    def compose(self, other):
        """self(other) by Horner; other may be a Poly or any ring
        element with the usual operators."""
        acc = other._wrap([]) if isinstance(other, Poly) else other * 0
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map_coeffs(self, fn, one):
        """Poly over a new domain, applying fn to every coefficient."""
        return Poly([fn(c) for c in self.coeffs], one)

    # -- gcd land --------------------------------------------------------

    def gcd(self, other):
        o = self._coerce(other)
        return self._wrap(p_gcd(list(self.coeffs), list(o.coeffs)))

    def squarefree_part(self):
        return self._wrap(p_squarefree(list(self.coeffs)))

    def resultant(self, other):
        o = self._coerce(other)
        return p_resultant(list(self.coeffs), list(o.coeffs))

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (factor, multiplicity) with the
        factors monic, squarefree, pairwise coprime, and the product of
        factor^multiplicity equal to self made monic."""
        f = self.monic()
        if f.degree < 1:
            return []
        out = []
        df = f.deriv()
        a = f.gcd(df)
        b = (f // a).monic()
        c = (df // a) - b.deriv()
        m = 1
        while b.degree > 0:
            d = b.gcd(c)
            if d.degree > 0:
                out.append((d.monic(), m))
            b2 = (b // d).monic()
            c = ((c // d) - b2.deriv())
            b = b2
            m += 1
        return out

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                terms.append("%r" % (c,))
            elif k == 1:
                terms.append("(%r)*x" % (c,))
            else:
                terms.append("(%r)*x^%d" % (c, k))
        return " + ".join(terms)


def interp(points, one):
    """Lagrange interpolation; points are (x, y) pairs of ring elements."""
    return Poly(p_interp(points), one)
