"""The exact isogeny pair attached to a sheet lattice.

The quotient-by-translations map (written psihat here) goes from the
standard curve to the smaller-lattice curve; its kernel consists of the
N cosets of the sheet lattice inside its 1/N multiple.  Those cosets
are looked up in the cached torsion table, the kernel polynomial is
rewritten over the smallest subfield containing its coefficients, the
quotient curve and x-map come from the classical kernel-polynomial
formulas, and the degree-N map psi going the other way is recovered
exactly from the identity psi o psihat = [N].
"""

from .errors import NotAKernel, RecognitionFailed, VerificationFailure, ZeroDivisor
from .algebra.fields import Cyc, Tower, p_divmod, p_gcd, p_trim, retower, split_tower
from .algebra.poly import Poly
from .algebra.curves import (
    Curve,
    model_curve,
    torsion_table,
    update_torsion_cache,
)
from .funcfield import CurveFunc, Morphism, RatFunc, isogeny_morphism


def kernel_module_keys(case, n1, n2, m2):
    """Torsion-table keys of the kernel cosets (t1*eta1 + t2*eta2)/N,
    rewritten as multiplier-ring multiples of the generator w1/N."""
    N = n1 * m2
    jk = Cyc.j(case.kind) ** case.unit_k
    ja, jb = _int_coords(jk)
    keys = set()
    for t1 in range(m2):
        for t2 in range(n1):
            c1 = t1 * n1
            c2 = t1 * n2 + t2 * m2
            keys.add(((c1 + c2 * ja) % N, (c2 * jb) % N))
    if len(keys) != N:
        raise AssertionError("kernel cosets are not distinct in the torsion module")
    return keys


def _int_coords(c):
    if c.a != int(c.a) or c.b != int(c.b):
        raise AssertionError("unit power has non-integer coordinates")
    return int(c.a), int(c.b)


# ---------------------------------------------------------------------
# subfield detection


class Subfield:
    """A subring K[theta'] of a quotient ring L, with exact maps both
    ways: express rewrites an element of L in the subfield (or fails),
    promote embeds a subfield element back into L."""

    __slots__ = ("L", "tower", "powers")

    def __init__(self, L, tower, powers):
        self.L = L
        self.tower = tower
        self.powers = powers  # theta'^k as elements of L

    def one(self):
        return self.tower.coerce(1)

    def express(self, value):
        if self.tower.is_trivial():
            vec = p_trim(self.L.as_vector(value))
            if len(vec) > 1:
                raise RecognitionFailed("value does not lie in the base field")
            return vec[0] if vec else Cyc(self.L.kind, 0)
        sol = self.L.solve_linear(self.powers, value)
        if sol is None:
            raise RecognitionFailed("value does not lie in the detected subfield")
        return self.tower.from_vector(sol)

    def promote(self, value):
        if self.tower.is_trivial():
            return self.L.coerce(value)
        acc = self.L.coerce(0)
        for c, p in zip(self.tower.as_vector(value), self.powers):
            acc = acc + p * c
        return acc


def detect_subfield(L, values, prec):
    """Smallest K[theta'] <= L containing every given value; theta' is
    searched among the values and small integer combinations of them."""
    vecs = [p_trim(L.as_vector(v)) for v in values]
    if all(len(v) <= 1 for v in vecs):
        return Subfield(L, Tower(L.kind), [L.one()])

    nontrivial = [v for v, vec in zip(values, vecs) if len(vec) > 1]

    def candidates():
        for v in nontrivial:
            yield v
        n = len(nontrivial)
        for i in range(n):
            for k in range(i + 1, n):
                yield nontrivial[i] + nontrivial[k]
                yield nontrivial[i] - nontrivial[k]
        for c in (2, 3, 5, 7):
            acc = L.coerce(0)
            for k, v in enumerate(nontrivial):
                acc = acc + v * (c**k)
            yield acc

    for cand in candidates():
        minpoly = L.element_minpoly(cand)
        deg = len(minpoly) - 1
        if deg < 2:
            continue
        powers = [L.one()]
        for _ in range(deg - 1):
            powers.append(powers[-1] * cand)
        if any(L.solve_linear(powers, v) is None for v in values):
            continue
        tower = Tower(L.kind, minpoly, L.embed(cand, prec), prec)
        return Subfield(L, tower, powers)
    raise RecognitionFailed("no primitive element found for the coefficient field")


# ---------------------------------------------------------------------
# the quotient-curve construction


def quotient_by_kernel(curve, p, N):
    """Image curve and x-map of the isogeny whose kernel is cut out by
    the monic squarefree polynomial p of distinct kernel x-values.
    Returns (image, xmap, wmap); the point map is (xmap(x), y*wmap(x))."""
    one = curve.one
    f = curve.f_poly()
    p2t = p.gcd(f)
    ppair = (p // p2t).monic()
    D = p2t * ppair * ppair
    n = D.degree
    if n != N - 1:
        raise NotAKernel("kernel polynomial spans degree %d, expected %d" % (n, N - 1))
    A, B = curve.A, curve.B
    zero = one * 0

    def elem(k):
        if k > n:
            return zero
        v = D[n - k]
        return -v if k % 2 else v

    p1 = elem(1)
    p2 = elem(1) * p1 - 2 * elem(2)
    p3 = elem(1) * p2 - elem(2) * p1 + 3 * elem(3)
    t = 3 * p2 + (N - 1) * A
    w = 5 * p3 + 3 * A * p1 + 2 * (N - 1) * B
    image = Curve(A - 5 * t, B - 7 * w)
    Dp = D.deriv()
    x = Poly.x(one)
    h1 = ((3 * x * x + A) * Dp) % D
    h2 = ((2 * f) * Dp) % D
    xmap = RatFunc(x) + RatFunc(h1, D) - RatFunc(h2, D).deriv()
    if (xmap.num.degree, xmap.den.degree) != (N, N - 1):
        raise NotAKernel(
            "x-map degrees are off: %d/%d" % (xmap.num.degree, xmap.den.degree)
        )
    return image, xmap, xmap.deriv()


def mult_by_n_map(curve, n):
    """Multiplication by n as a Morphism from the curve to itself."""
    num, den = curve.mult_by_n_x(n)
    mx = RatFunc(num, den)
    return isogeny_morphism(curve, curve, mx, mx.deriv().scale(curve.one / n))


# ---------------------------------------------------------------------
# exact linear solve for the reverse map


def solve_poly_combination(cols, rhs):
    """Coefficients c_k with sum c_k cols[k] = rhs, or None.  The system
    is overdetermined; every row is checked, which certifies the output."""
    zero = cols[0].one * 0
    nrows = max([c.degree for c in cols] + [rhs.degree]) + 1
    ncols = len(cols)
    rows = [[cols[k][r] for k in range(ncols)] + [rhs[r]] for r in range(nrows)]
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                fac = rows[i][c]
                rows[i] = [v - fac * w for v, w in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    sol = [zero] * ncols
    for k, c in enumerate(piv):
        sol[c] = rows[k][ncols]
    acc = Poly([], cols[0].one)
    for k in range(ncols):
        acc = acc + cols[k].scale(sol[k])
    if not (acc - rhs).is_zero():
        return None
    return sol


# ---------------------------------------------------------------------
# assembly


class IsogenyData:
    """Everything downstream needs: the two curves over the coefficient
    field, psi (small lattice -> standard), psihat (standard -> small),
    the torsion table, and the subfield maps."""

    __slots__ = (
        "N",
        "table",
        "sub",
        "E_delta",
        "E_gamma",
        "psihat",
        "psi",
        "kernel_keys",
        "kernel_poly",
        "_nchecked",
    )

    def __init__(self, **kw):
        self._nchecked = False
        for k, v in kw.items():
            setattr(self, k, v)

    @property
    def tower(self):
        return self.sub.tower

    def verify_mult_identity(self):
        """Independent symbolic check that psi o psihat equals
        multiplication by N; memoized since the pair is per-lattice."""
        if self._nchecked:
            return True
        comp = self.psi.compose(self.psihat)
        mN = mult_by_n_map(self.E_delta, self.N)
        if not ((comp.U - mN.U).is_zero() and (comp.V - mN.V).is_zero()):
            raise VerificationFailure(
                "composite differs from multiplication by %d" % self.N
            )
        self._nchecked = True
        return True


_ISOGENY_CACHE = {}


def build_isogeny(norm, prec=128):
    cover = norm.cover
    case = cover.case
    kind = case.kind
    N = cover.N
    cache_key = (kind, case.unit_k, cover.n1, cover.n2, cover.m2, prec)
    hit = _ISOGENY_CACHE.get(cache_key)
    if hit is not None:
        return hit

    if N == 1:
        tower = Tower(kind)
        E = model_curve(kind).map_coeffs(tower.coerce)
        ident = Morphism.identity(E)
        data = IsogenyData(
            N=1,
            table=torsion_table(kind, 1),
            sub=Subfield(tower, tower, [tower.coerce(1)]),
            E_delta=E,
            E_gamma=E,
            psihat=ident,
            psi=ident,
            kernel_keys={(0, 0)},
            kernel_poly=Poly([tower.coerce(1)], tower.coerce(1)),
        )
        _ISOGENY_CACHE[cache_key] = data
        return data

    table = torsion_table(kind, N)
    while True:
        try:
            data = _assemble(norm, table, prec)
            _ISOGENY_CACHE[cache_key] = data
            return data
        except ZeroDivisor as zd:
            fac = list(zd.factor)
            if not _divides_modulus(table.tower, fac):
                raise
            table = table.split(fac, prec)
            update_torsion_cache(table)


def _divides_modulus(tower, fac):
    if tower.is_trivial() or len(fac) > tower.degree + 1:
        return False
    return not p_trim(p_divmod(list(tower.modulus), fac)[1])


def shrink_isogeny(iso, factor, prec=128):
    """The same isogeny data carried onto the modulus factor holding
    the designated root, after a zero-divisor hit over its ring."""
    old = iso.tower
    new = split_tower(old, factor, prec)

    def conv(e):
        return retower(old, new, e)

    one = new.coerce(1)

    def rfun(r):
        return RatFunc(
            r.num.map_coeffs(conv, one), r.den.map_coeffs(conv, one), reduce=False
        )

    E_delta = iso.E_delta.map_coeffs(conv)
    E_gamma = iso.E_gamma.map_coeffs(conv)

    def morph(m, src, dst):
        return Morphism(
            src,
            dst,
            CurveFunc(src, rfun(m.U.a), rfun(m.U.b)),
            CurveFunc(src, rfun(m.V.a), rfun(m.V.b)),
        )

    return IsogenyData(
        N=iso.N,
        table=iso.table,
        sub=Subfield(iso.sub.L, new, iso.sub.powers[: new.degree]),
        E_delta=E_delta,
        E_gamma=E_gamma,
        psihat=morph(iso.psihat, E_delta, E_gamma),
        psi=morph(iso.psi, E_gamma, E_delta),
        kernel_keys=iso.kernel_keys,
        kernel_poly=iso.kernel_poly.map_coeffs(conv, one),
    )


def _assemble(norm, table, prec):
    cover = norm.cover
    case = cover.case
    N = cover.N
    L = table.tower

    keys = kernel_module_keys(case, cover.n1, cover.n2, cover.m2)
    kernel_xs = []
    for key in sorted(keys):
        if key == (0, 0):
            continue
        v = table.x[key]
        if v is None:
            raise AssertionError("nonzero kernel coset maps to infinity")
        if not any(v == u for u in kernel_xs):
            kernel_xs.append(v)

    Lone = L.coerce(1)
    pL = Poly([Lone], Lone)
    for xv in kernel_xs:
        pL = pL * Poly([-xv, Lone], Lone)

    sub = detect_subfield(L, list(pL.coeffs[:-1]), prec + 32)
    try:
        kone = sub.one()
        p = Poly([sub.express(c) for c in pL.coeffs[:-1]] + [kone], kone)
        E_delta = model_curve(case.kind).map_coeffs(sub.tower.coerce)
        if not (E_delta.x_division_poly(N) % p).is_zero():
            raise RecognitionFailed(
                "kernel polynomial does not divide the torsion polynomial"
            )
        E_gamma, xmap, wmap = quotient_by_kernel(E_delta, p, N)
        psihat = isogeny_morphism(E_delta, E_gamma, xmap, wmap)
        psi = _reverse_map(table, keys, sub, E_delta, E_gamma, xmap, N)
    except ZeroDivisor as zd:
        fac = list(zd.factor)
        if sub.tower.is_trivial() or not _divides_modulus(sub.tower, fac):
            raise
        # translate the subfield factor into a factor of L's modulus so
        # the retry loop can shrink the torsion table
        theta = sub.powers[1]
        gL = L.coerce(0)
        for c in reversed(fac):
            gL = gL * theta + c
        facL = p_gcd(L.as_vector(gL), list(L.modulus))
        if len(facL) < 2 or len(facL) > L.degree:
            raise
        raise ZeroDivisor(facL) from zd
    return IsogenyData(
        N=N,
        table=table,
        sub=sub,
        E_delta=E_delta,
        E_gamma=E_gamma,
        psihat=psihat,
        psi=psi,
        kernel_keys=keys,
        kernel_poly=p,
    )


def _reverse_map(table, kernel_keys, sub, E_delta, E_gamma, xmap, N):
    """The map psi with psi o psihat = [N], solved exactly from that
    identity; its kernel polynomial is the image of the full N-torsion."""
    L = table.tower
    Lone = L.coerce(1)
    xmap_L = xmap.map_coeffs(sub.promote, Lone)
    dual_xs = []
    for key in sorted(table.x):
        if key in kernel_keys:
            continue
        val = xmap_L.eval(table.x[key])
        if not any(val == u for u in dual_xs):
            dual_xs.append(val)
    pdL = Poly([Lone], Lone)
    for xv in dual_xs:
        pdL = pdL * Poly([-xv, Lone], Lone)
    kone = sub.one()
    pdual = Poly([sub.express(c) for c in pdL.coeffs[:-1]] + [kone], kone)

    fg = E_gamma.f_poly()
    p2t = pdual.gcd(fg)
    ppair = (pdual // p2t).monic()
    B = p2t * ppair * ppair
    if B.degree != N - 1:
        raise NotAKernel(
            "reverse kernel polynomial spans degree %d, expected %d"
            % (B.degree, N - 1)
        )

    nN, dN = E_delta.mult_by_n_x(N)
    U, V = xmap.num, xmap.den
    one_poly = Poly([kone], kone)
    Upow, Vpow = [one_poly], [one_poly]
    for _ in range(N):
        Upow.append(Upow[-1] * U)
        Vpow.append(Vpow[-1] * V)
    cols = [Upow[k] * Vpow[N - k] * dN for k in range(N + 1)]
    Bcomp = Poly([], kone)
    for k in range(B.degree + 1):
        Bcomp = Bcomp + (Upow[k] * Vpow[N - 1 - k]).scale(B[k])
    rhs = nN * Vpow[1] * Bcomp
    sol = solve_poly_combination(cols, rhs)
    if sol is None:
        raise NotAKernel("no degree-N numerator satisfies the multiplication identity")
    A = Poly(sol, kone)
    if A.degree != N:
        raise NotAKernel("solved numerator has degree %d, expected %d" % (A.degree, N))
    if A.gcd(B).degree != 0:
        raise NotAKernel("solved map is not reduced")
    psi_x = RatFunc(A, B)
    psi_w = psi_x.deriv().scale(kone / N)
    return isogeny_morphism(E_gamma, E_delta, psi_x, psi_w)
