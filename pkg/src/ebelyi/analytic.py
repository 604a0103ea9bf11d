"""Arbitrary-precision lattice functions and numeric-to-exact bridges.

Everything here is numerical but certified elsewhere: the exact layers
only ever consume values produced here after an exact verification
(division of one exact polynomial by another, an exact linear solve, or
a residual check at doubled precision).  Lattices are given by a basis
embedded in C; series are run on a Gauss-reduced basis so the nome
satisfies |q| <= exp(-pi*sqrt(3)) and a few dozen terms give hundreds
of bits.
"""

from fractions import Fraction

from mpmath import mp

from .algebra.fields import QQ, Cyc
from .errors import RecognitionFailed

DEFAULT_PREC = 128
MAX_PREC = 1 << 14


def precision_ladder(fn, start=DEFAULT_PREC, limit=MAX_PREC):
    """Run fn(prec) with doubling precision until it stops raising
    RecognitionFailed (and friends that subclass it)."""
    prec = start
    last = None
    while prec <= limit:
        try:
            return fn(prec)
        except RecognitionFailed as exc:
            last = exc
            prec *= 2
    raise RecognitionFailed("gave up at %d bits: %s" % (prec // 2, last))


# ---------------------------------------------------------------------
# lattice reduction and Eisenstein series


def reduce_basis(W1, W2):
    """Gauss-reduced basis of the lattice Z W1 + Z W2, as (V1, V2) with
    tau = V2/V1 satisfying |Re tau| <= 1/2, |tau| >= 1, Im tau > 0."""
    V1, V2 = mp.mpc(W1), mp.mpc(W2)
    if abs(V1) > abs(V2):
        V1, V2 = V2, V1
    for _ in range(10000):
        t = V2 / V1
        n = mp.floor(t.real + mp.mpf(1) / 2)
        V2 = V2 - n * V1
        if abs(V2) < abs(V1):
            V1, V2 = V2, V1
        else:
            break
    if (V2 / V1).imag < 0:
        V2 = -V2
    return V1, V2


def _eisenstein(q, prec):
    """E4(tau), E6(tau) from the Lambert series in q = exp(2 pi i tau)."""
    tol = mp.mpf(2) ** (-prec - 16)
    e4 = mp.mpc(1)
    e6 = mp.mpc(1)
    qn = mp.mpc(1)
    n = 0
    while True:
        n += 1
        qn = qn * q
        if n > 4 and abs(qn) * n**5 * 600 < tol:
            break
        g = qn / (1 - qn)
        e4 += 240 * n**3 * g
        e6 -= 504 * n**5 * g
    return e4, e6


def lattice_invariants(W1, W2, prec):
    """g2, g3 of the lattice Z W1 + Z W2."""
    work = prec + 32
    with mp.workprec(work):
        V1, V2 = reduce_basis(W1, W2)
        tau = V2 / V1
        q = mp.exp(2j * mp.pi * tau)
        e4, e6 = _eisenstein(q, work)
        pi4 = mp.pi**4
        g2 = (4 * pi4 / 3) * e4 / V1**4
        g3 = (8 * pi4 * mp.pi**2 / 27) * e6 / V1**6
        return +g2, +g3


# ---------------------------------------------------------------------
# Weierstrass functions by q-series


def wp_series(W1, W2, z, prec):
    """(p(z), p'(z)) for the lattice Z W1 + Z W2, or None when z is a
    lattice point."""
    work = prec + 32
    with mp.workprec(work):
        V1, V2 = reduce_basis(W1, W2)
        tau = V2 / V1
        zp = mp.mpc(z) / V1
        # z = (s + t tau) V1; center both coordinates on [-1/2, 1/2)
        t = zp.imag / tau.imag
        s = zp.real - t * tau.real
        s -= mp.floor(s + mp.mpf(1) / 2)
        t -= mp.floor(t + mp.mpf(1) / 2)
        if abs(s) + abs(t) < mp.mpf(2) ** (-work // 2):
            return None
        zr = s + t * tau
        q = mp.exp(2j * mp.pi * tau)
        u = mp.exp(2j * mp.pi * zr)
        tol = mp.mpf(2) ** (-work - 8)

        def frac2(w):
            d = 1 - w
            return w / (d * d)

        def frac3(w):
            d = 1 - w
            return w * (1 + w) / (d * d * d)

        X = mp.mpf(1) / 12 + frac2(u)
        Y = frac3(u)
        qn = mp.mpc(1)
        n = 0
        uinv = 1 / u
        while True:
            n += 1
            qn = qn * q
            tX = frac2(qn * u) + frac2(qn * uinv) - 2 * frac2(qn)
            tY = frac3(qn * u) - frac3(qn * uinv)
            X += tX
            Y += tY
            if abs(qn) * 8 * max(abs(u), abs(uinv)) < tol * max(mp.mpf(1), abs(X)):
                break
            if n > 4 * work:
                raise RecognitionFailed("series did not converge")
        two_pi_i = 2j * mp.pi
        p = two_pi_i**2 * X / V1**2
        pp = two_pi_i**3 * Y / V1**3
        return +p, +pp


# ---------------------------------------------------------------------
# scaled lattices: exact basis plus a complex scale


class ScaledLattice:
    """Lattice with exact Cyc basis (w1, w2) and a scale mu so that the
    curve of C/(mu L) has the requested invariants.

    mode is one of
      ("fit", "square")   mu = (g2/4)^(1/4), target y^2 = x^3 - x
      ("fit", "hex")      mu = (g3/-4)^(1/6), target y^2 = x^3 + 1
      ("ratio", parent, r) mu = parent.mu * r for an exact rational r

    Evaluation takes points z in unscaled coordinates (the geometry of
    the tessellation) and returns coordinates on the scaled curve:
    X = mu^-2 p(z; L), Y = mu^-3 p'(z; L)/2.
    """

    def __init__(self, w1, w2, mode):
        self.w1 = w1
        self.w2 = w2
        self.mode = mode
        self._mu_cache = {}

    def basis_at(self, prec):
        return self.w1.embed(prec), self.w2.embed(prec)

    def mu(self, prec):
        hit = [p for p in self._mu_cache if p >= prec]
        if hit:
            return self._mu_cache[max(hit)]
        work = prec + 32
        if self.mode[0] == "ratio":
            parent, r = self.mode[1], self.mode[2]
            with mp.workprec(work):
                val = parent.mu(work) * mp.mpf(int(r.numerator)) / mp.mpf(int(r.denominator))
        else:
            W1, W2 = self.basis_at(work)
            g2, g3 = lattice_invariants(W1, W2, work)
            with mp.workprec(work):
                ratio, k = ((g2 / 4), 4) if self.mode[1] == "square" else ((g3 / -4), 6)
                # the ratio is real for every lattice with an exact basis
                # in K; snap it so the root branch cannot flip with the
                # working precision
                if abs(ratio.imag) > mp.mpf(2) ** (-work // 2) * abs(ratio):
                    raise RecognitionFailed("lattice ratio is not real")
                r = ratio.real
                val = abs(r) ** (mp.mpf(1) / k)
                if r < 0:
                    val = val * mp.exp(1j * mp.pi / k)
        self._mu_cache[prec] = val
        return val

    def invariants(self, prec):
        """(g2, g3) of the scaled lattice mu L; equals (-4A, -4B) for
        the curve y^2 = x^3 + A x + B it uniformizes."""
        work = prec + 32
        W1, W2 = self.basis_at(work)
        g2, g3 = lattice_invariants(W1, W2, work)
        with mp.workprec(work):
            m = self.mu(work)
            return +(g2 / m**4), +(g3 / m**6)

    def point(self, z, prec):
        """(X, Y) on the scaled curve for z in unscaled coordinates
        (exact Cyc or complex); None for the point at infinity."""
        work = prec + 32
        if isinstance(z, Cyc):
            z = z.embed(work)
        W1, W2 = self.basis_at(work)
        vals = wp_series(W1, W2, z, work)
        if vals is None:
            return None
        p, pp = vals
        with mp.workprec(work):
            m = self.mu(work)
            return +(p / m**2), +(pp / (2 * m**3))


# ---------------------------------------------------------------------
# integer relation finding (textbook LLL) and recognition


def _nint_frac(q):
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


def _lll(rows):
    """LLL-reduce integer rows (delta = 3/4), returned as new lists."""
    b = [list(map(int, r)) for r in rows]
    n = len(b)

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        B = [Fraction(0)] * n
        star = []
        for i in range(n):
            si = [Fraction(x) for x in b[i]]
            for k in range(i):
                if B[k] == 0:
                    continue
                mu[i][k] = sum(Fraction(x) * y for x, y in zip(b[i], star[k])) / B[k]
                si = [a - mu[i][k] * c for a, c in zip(si, star[k])]
            star.append(si)
            B[i] = sum(x * x for x in si)
        return mu, B

    mu, B = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            r = _nint_frac(mu[k][j])
            if r:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                for l in range(j):
                    mu[k][l] -= r * mu[j][l]
                mu[k][j] -= r
        if B[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, B = gso()
            k = max(k - 1, 1)
    return b


def find_int_relation(values, prec):
    """Small integers c (not all zero) with sum c_m values_m ~ 0, or
    None; values are complex at working precision prec."""
    m = len(values)
    scale = mp.mpf(2) ** (prec - 8)
    rows = []
    for k, v in enumerate(values):
        row = [0] * m + [int(mp.nint(scale * v.real)), int(mp.nint(scale * v.imag))]
        row[k] = 1
        rows.append(row)
    red = _lll(rows)
    best = None
    for row in red:
        c = row[:m]
        if not any(c):
            continue
        err = mp.mpf(abs(row[m])) + mp.mpf(abs(row[m + 1]))
        size = max(abs(x) for x in c)
        if err < mp.mpf(2) ** (prec // 2) and size < mp.mpf(2) ** (prec // 4):
            if best is None or size < best[1]:
                best = (c, size)
    return best[0] if best else None


def recognize_rational(x, prec):
    """Exact rational from a real approximation, by continued
    fractions with a residual and height check."""
    with mp.workprec(prec + 16):
        x = mp.mpf(x)
        h_bound = mp.mpf(2) ** (prec // 3)
        p0, q0, p1, q1 = 1, 0, int(mp.floor(x)), 1
        frac = x - mp.floor(x)
        for _ in range(prec):
            cand = QQ(p1, q1)
            err = abs(x - mp.mpf(int(cand.numerator)) / mp.mpf(int(cand.denominator)))
            if err < mp.mpf(2) ** (-(2 * prec) // 3) and abs(q1) < h_bound:
                return cand
            if frac == 0:
                break
            a = mp.floor(1 / frac)
            frac = 1 / frac - a
            a = int(a)
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            if q1 > h_bound:
                break
    raise RecognitionFailed("no small rational matches %s" % mp.nstr(mp.mpf(x), 20))


def recognize_cyc(value, kind, prec):
    """Exact Cyc element from a complex approximation."""
    with mp.workprec(prec + 16):
        v = mp.mpc(value)
        if kind == "Q":
            if abs(v.imag) > mp.mpf(2) ** (-prec // 2):
                raise RecognitionFailed("value is not real")
            return Cyc("Q", recognize_rational(v.real, prec))
        if kind == "i":
            a = recognize_rational(v.real, prec)
            b = recognize_rational(v.imag, prec)
            cand = Cyc("i", a, b)
        else:
            b = recognize_rational(v.imag * 2 / mp.sqrt(3), prec)
            a = recognize_rational(v.real - mp.mpf(int(b.numerator)) / mp.mpf(int(b.denominator)) / 2, prec)
            cand = Cyc("w", a, b)
        if abs(cand.embed(prec + 16) - v) > mp.mpf(2) ** (-prec // 2):
            raise RecognitionFailed("candidate does not match")
        return cand


def recognize_algint(value, kind, prec):
    """Nearest algebraic integer of the base field, with residual check;
    the fast path for quantities known to be integral."""
    with mp.workprec(prec + 16):
        v = mp.mpc(value)
        if kind == "i":
            a, b = mp.nint(v.real), mp.nint(v.imag)
        elif kind == "w":
            b = mp.nint(v.imag * 2 / mp.sqrt(3))
            a = mp.nint(v.real - b / 2)
        else:
            a, b = mp.nint(v.real), 0
            if abs(v.imag) > mp.mpf(2) ** (-prec // 2):
                raise RecognitionFailed("value is not real")
        cand = Cyc(kind, int(a), int(b))
        if abs(cand.embed(prec + 16) - v) > mp.mpf(2) ** (-prec // 2):
            raise RecognitionFailed("value is not integral at this precision")
        return cand


def recognize_in_tower(value, tower, prec):
    """Element of the tower matching a complex approximation, found by
    integer relation among 1, j, theta, j theta, ...; exactness must be
    certified by the caller (every call site has an exact identity to
    check).  Raises RecognitionFailed when no relation is found."""
    gens = []
    basis = []
    d = tower.degree
    with mp.workprec(prec + 16):
        jv = Cyc.j(tower.kind).embed(prec) if tower.kind != "Q" else None
        th = tower.theta_at(prec) if not tower.is_trivial() else None
        for k in range(d):
            pk = th**k if k else mp.mpc(1)
            gens.append(pk)
            basis.append((k, 0))
            if jv is not None:
                gens.append(jv * pk)
                basis.append((k, 1))
        rel = find_int_relation(gens + [mp.mpc(value)], prec)
    if rel is None or rel[-1] == 0:
        raise RecognitionFailed("no integer relation for tower element")
    den = -rel[-1]
    vec = [Cyc(tower.kind, 0)] * d
    for (k, part), c in zip(basis, rel[:-1]):
        q = QQ(c, den)
        vec[k] = vec[k] + (Cyc(tower.kind, 0, q) if part else Cyc(tower.kind, q))
    out = tower.from_vector(vec)
    with mp.workprec(prec + 16):
        if abs(tower.embed(out, prec) - mp.mpc(value)) > mp.mpf(2) ** (-prec // 3):
            raise RecognitionFailed("relation does not match the value")
    return out
