"""Rational functions and curve function fields over the exact domains.

RatFunc is a reduced fraction of Polys.  CurveFunc is a + b*y on a
fixed curve, reduced through y^2 = f(x); it is a field whenever the
coefficients form one, and inversion surfaces ZeroDivisor over a
quotient ring so callers can split the modulus.  Morphism bundles the
two coordinate functions of a map between curves and provides point
application, pullback of functions, and composition.
"""

from .algebra.poly import Poly


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = Poly([num.one], num.one)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lc = den.lc().inv()
            num = num.scale(lc)
            den = den.scale(lc)
        self.num = num
        self.den = den

    @staticmethod
    def x(one):
        return RatFunc(Poly.x(one), reduce=False)

    @staticmethod
    def const(value, one):
        return RatFunc(Poly([one * 0 + value], one), reduce=False)

    @property
    def one(self):
        return self.num.one if not self.num.is_zero() else self.den.one

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        one = self.den.one
        return (one * 0) if self.num.is_zero() else self.num[0] / self.den[0]

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, reduce=False)
        return RatFunc(Poly([self.den.one * 0 + other], self.den.one), reduce=False)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = RatFunc(Poly([self.one], self.one), reduce=False)
        p = self
        while n:
            if n & 1:
                r = r * p
            p = p * p
            n >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def deriv(self):
        return RatFunc(
            self.num.deriv() * self.den - self.num * self.den.deriv(),
            self.den * self.den,
        )

    def eval(self, v):
        """Horner evaluation at any element with field arithmetic."""
        return self.num.eval(v) / self.den.eval(v)

    def map_coeffs(self, fn, one):
        return RatFunc(self.num.map_coeffs(fn, one), self.den.map_coeffs(fn, one))

    def scale(self, s):
        return RatFunc(self.num.scale(s), self.den)

    def __repr__(self):
        return "(%r) / (%r)" % (self.num, self.den)


class CurveFunc:
    """a(x) + b(x) y on a fixed curve."""

    __slots__ = ("curve", "a", "b")

    def __init__(self, curve, a, b):
        self.curve = curve
        self.a = a
        self.b = b

    @staticmethod
    def xgen(curve):
        one = curve.one
        return CurveFunc(curve, RatFunc.x(one), RatFunc.const(0, one))

    @staticmethod
    def ygen(curve):
        one = curve.one
        return CurveFunc(curve, RatFunc.const(0, one), RatFunc.const(1, one))

    @staticmethod
    def lift(curve, rat):
        one = curve.one
        if not isinstance(rat, RatFunc):
            rat = RatFunc.const(rat, one)
        return CurveFunc(curve, rat, RatFunc.const(0, one))

    def _coerce(self, other):
        if isinstance(other, CurveFunc):
            if other.curve != self.curve:
                raise TypeError("functions on different curves")
            return other
        return CurveFunc.lift(self.curve, other)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self):
        return self.b.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        return CurveFunc(self.curve, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CurveFunc(self.curve, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _f(self):
        return RatFunc(self.curve.f_poly(), reduce=False)

    def __mul__(self, other):
        o = self._coerce(other)
        f = self._f()
        return CurveFunc(
            self.curve,
            self.a * o.a + self.b * o.b * f,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inv(self):
        f = self._f()
        norm = self.a * self.a - self.b * self.b * f
        if norm.is_zero():
            raise ZeroDivisionError("inverse of a zero function on the curve")
        ninv = norm.inv()
        return CurveFunc(self.curve, self.a * ninv, -(self.b * ninv))

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = CurveFunc.lift(self.curve, 1)
        p = self
        while n:
            if n & 1:
                r = r * p
            p = p * p
            n >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        return (self.a - o.a).is_zero() and (self.b - o.b).is_zero()

    def eval(self, P):
        if P is None:
            raise ZeroDivisionError("evaluation at infinity")
        x0, y0 = P
        return self.a.eval(x0) + self.b.eval(x0) * y0

    def __repr__(self):
        return "CurveFunc(%r + (%r) y)" % (self.a, self.b)


class Morphism:
    """A map between curves given by its coordinate functions on the
    source: P -> (U(P), V(P))."""

    __slots__ = ("source", "target", "U", "V")

    def __init__(self, source, target, U, V):
        self.source = source
        self.target = target
        self.U = U
        self.V = V

    @staticmethod
    def identity(curve):
        return Morphism(curve, curve, CurveFunc.xgen(curve), CurveFunc.ygen(curve))

    def negated(self):
        """Composition with negation on the target."""
        return Morphism(self.source, self.target, self.U, -self.V)

    def apply(self, P):
        """Image of an exact point; poles map to infinity."""
        if P is None:
            raise ValueError("apply needs a finite point; handle infinity separately")
        try:
            return (self.U.eval(P), self.V.eval(P))
        except ZeroDivisionError:
            return None

    def pullback(self, h):
        """h on the target composed with this map: a CurveFunc on the
        source, for h given as CurveFunc on the target (or RatFunc in
        the target x-coordinate)."""
        if isinstance(h, RatFunc):
            return h.eval(self.U)
        return h.a.eval(self.U) + h.b.eval(self.U) * self.V

    def compose(self, inner):
        """self after inner."""
        if inner.target != self.source:
            raise TypeError("composition of maps with mismatched curves")
        return Morphism(
            inner.source,
            self.target,
            inner.pullback(self.U),
            inner.pullback(self.V),
        )

    def check(self):
        """The coordinate functions satisfy the target equation."""
        f = self.target.f_poly()
        lhs = self.V * self.V
        rhs = RatFunc(f, reduce=False).eval(self.U)
        return (lhs - rhs).is_zero()


def translation_map(curve, T):
    """P -> P + T as a Morphism of the curve to itself."""
    if T is None:
        return Morphism.identity(curve)
    xT, yT = T
    x = CurveFunc.xgen(curve)
    y = CurveFunc.ygen(curve)
    lam = (CurveFunc.lift(curve, yT) - y) / (CurveFunc.lift(curve, xT) - x)
    U = lam * lam - x - xT
    V = lam * (x - U) - y
    return Morphism(curve, curve, U, V)


def isogeny_morphism(source, target, xmap, wmap):
    """(x, y) -> (xmap(x), y * wmap(x)) as a Morphism."""
    U = CurveFunc.lift(source, xmap)
    V = CurveFunc(source, RatFunc.const(0, source.one), wmap)
    return Morphism(source, target, U, V)
